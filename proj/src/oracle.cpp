#include "pecok/oracle.hpp"

#include "pecok/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace pecok {
namespace {

void enumerate(std::vector<int>& rgs, std::size_t pos, int used, int k, std::size_t& count,
               const std::function<void(std::span<const int>)>& visit) {
  const std::size_t n = rgs.size();
  if (pos == n) {
    if (used == k) {
      ++count;
      visit(rgs);
    }
    return;
  }
  // Not enough positions left to open the remaining blocks.
  if (static_cast<std::size_t>(k - used) > n - pos) return;
  const int top = std::min(used, k - 1);
  for (int label = 0; label <= top; ++label) {
    rgs[pos] = label;
    enumerate(rgs, pos + 1, std::max(used, label + 1), k, count, visit);
  }
}

}  // namespace

std::size_t for_each_partition(std::size_t n, int k, const std::function<void(std::span<const int>)>& visit) {
  if (k < 1 || static_cast<std::size_t>(k) > n) return 0;
  std::vector<int> rgs(n, 0);
  std::size_t count = 0;
  rgs[0] = 0;
  enumerate(rgs, 1, 1, k, count, visit);
  return count;
}

OracleSolution exact_kmeans_gram(const SymMatrix& a, int k) {
  const auto n = static_cast<std::size_t>(a.rows());
  if (a.rows() != a.cols()) throw InputError("oracle input must be square");
  if (n > kOracleMaxPoints) {
    throw ParameterError("exhaustive oracle limited to n <= " + std::to_string(kOracleMaxPoints) + ", got " +
                         std::to_string(n));
  }
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw ParameterError("number of groups K=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
  const auto uk = static_cast<std::size_t>(k);
  std::vector<double> block_sum(uk);
  std::vector<double> block_size(uk);
  double best = -std::numeric_limits<double>::infinity();
  std::vector<int> best_labels;
  for_each_partition(n, k, [&](std::span<const int> labels) {
    std::fill(block_sum.begin(), block_sum.end(), 0.0);
    std::fill(block_size.begin(), block_size.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto li = static_cast<std::size_t>(labels[i]);
      block_size[li] += 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (labels[j] == labels[i]) block_sum[li] += a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
    }
    double obj = 0.0;
    for (std::size_t c = 0; c < uk; ++c) obj += block_sum[c] / block_size[c];
    if (obj > best) {
      best = obj;
      best_labels.assign(labels.begin(), labels.end());
    }
  });
  return {LabelPartition(std::move(best_labels)), best};
}

PopulationMatrices population_matrices(const ClusterGroundTruth& truth) {
  truth.validate();
  const auto n = static_cast<Eigen::Index>(truth.partition.n());
  Eigen::MatrixXd nu(n, static_cast<Eigen::Index>(truth.p));
  for (Eigen::Index a = 0; a < n; ++a) nu.row(a) = truth.point_mean(static_cast<std::size_t>(a)).transpose();
  PopulationMatrices out;
  out.signal = nu * nu.transpose();
  out.signal = 0.5 * (out.signal + out.signal.transpose());
  out.bias = SymMatrix::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    out.bias(a, a) = truth.covariances[static_cast<std::size_t>(a)].nuclear_norm(truth.p);
  }
  return out;
}

HeteroscedasticInstance heteroscedastic_instance(std::size_t m, double delta2, double gamma_plus,
                                                 double gamma_minus) {
  if (m < 2) throw ParameterError("group size m must be at least 2");
  if (!(delta2 > 0.0)) throw ParameterError("squared separation must be positive");
  if (!(gamma_plus >= gamma_minus) || !(gamma_minus >= 0.0)) {
    throw ParameterError("need gamma_plus >= gamma_minus >= 0");
  }
  const std::size_t n = 3 * m;
  std::vector<int> labels(n);
  for (std::size_t a = 0; a < n; ++a) labels[a] = static_cast<int>(a / m);

  HeteroscedasticInstance inst;
  inst.truth.partition = LabelPartition(labels);
  inst.truth.p = 3;
  inst.truth.delta = 0.0;
  const double side = std::sqrt(delta2 / 2.0);
  for (int k = 0; k < 3; ++k) {
    Eigen::VectorXd mu = Eigen::VectorXd::Zero(3);
    mu(k) = side;
    inst.truth.means.push_back(mu);
  }
  // Rank-one diagonal covariances keep tr Sigma_a exactly equal to gamma.
  for (std::size_t a = 0; a < n; ++a) {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(3);
    d(0) = a < m ? gamma_plus : gamma_minus;
    inst.truth.covariances.push_back(Covariance::diagonal(d));
  }
  inst.population = population_matrices(inst.truth);
  // Lambda = (Delta^2 / 2) 1{a ~ b}; rebuild it from the partition so that
  // it does not inherit rounding from sqrt(Delta^2 / 2)^2.
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      inst.population.signal(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          labels[a] == labels[b] ? delta2 / 2.0 : 0.0;
    }
  }
  inst.b_star = characteristic_matrix(inst.truth.partition);

  std::vector<int> split(n);
  const std::size_t half = m / 2;
  for (std::size_t a = 0; a < n; ++a) split[a] = a < half ? 0 : (a < m ? 1 : 2);
  inst.merge_split_partition = LabelPartition(split);
  inst.merge_split = characteristic_matrix(inst.merge_split_partition);
  return inst;
}

}  // namespace pecok
