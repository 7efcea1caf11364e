#include "pecok/baselines.hpp"

#include "pecok/errors.hpp"
#include "pecok/estimators.hpp"
#include "pecok/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace pecok {
namespace {

constexpr int kMaxLloydIterations = 300;

void check_k(Eigen::Index n, int k) {
  if (k < 1 || k > n) {
    throw ParameterError("number of groups K=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
}

Eigen::MatrixXd kmeanspp_seed(const DataMatrix& x, int k, Rng& rng) {
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd centers(k, x.cols());
  centers.row(0) = x.row(static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n))));
  Eigen::VectorXd d2(n);
  for (Eigen::Index a = 0; a < n; ++a) d2(a) = (x.row(a) - centers.row(0)).squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    Eigen::Index pick = n - 1;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      for (Eigen::Index a = 0; a < n; ++a) {
        acc += d2(a);
        if (acc > target) {
          pick = a;
          break;
        }
      }
    } else {
      pick = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
    }
    centers.row(c) = x.row(pick);
    for (Eigen::Index a = 0; a < n; ++a) d2(a) = std::min(d2(a), (x.row(a) - centers.row(c)).squaredNorm());
  }
  return centers;
}

struct LloydRun {
  std::vector<int> labels;
  Eigen::MatrixXd centers;
  double inertia = 0.0;
  int iterations = 0;
  std::vector<double> trace;
};

LloydRun lloyd(const DataMatrix& x, Eigen::MatrixXd centers) {
  const Eigen::Index n = x.rows();
  const auto k = static_cast<int>(centers.rows());
  LloydRun run;
  run.labels.assign(static_cast<std::size_t>(n), -1);
  std::vector<double> dist(static_cast<std::size_t>(n));
  for (int it = 1; it <= kMaxLloydIterations; ++it) {
    bool changed = false;
    for (Eigen::Index a = 0; a < n; ++a) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        const double d = (x.row(a) - centers.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      auto& l = run.labels[static_cast<std::size_t>(a)];
      if (l != best) changed = true;
      l = best;
      dist[static_cast<std::size_t>(a)] = best_d;
    }
    // Re-seed empty clusters at the point farthest from its center, taken
    // from a cluster that can spare it.
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (int l : run.labels) ++counts[static_cast<std::size_t>(l)];
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) continue;
      Eigen::Index far = -1;
      for (Eigen::Index a = 0; a < n; ++a) {
        const auto ua = static_cast<std::size_t>(a);
        if (counts[static_cast<std::size_t>(run.labels[ua])] < 2) continue;
        if (far < 0 || dist[ua] > dist[static_cast<std::size_t>(far)]) far = a;
      }
      const auto uf = static_cast<std::size_t>(far);
      --counts[static_cast<std::size_t>(run.labels[uf])];
      run.labels[uf] = c;
      counts[static_cast<std::size_t>(c)] = 1;
      centers.row(c) = x.row(far);
      dist[uf] = 0.0;
      changed = true;
    }
    run.inertia = std::accumulate(dist.begin(), dist.end(), 0.0);
    run.trace.push_back(run.inertia);
    run.iterations = it;
    if (!changed) break;

    centers.setZero();
    for (Eigen::Index a = 0; a < n; ++a) centers.row(run.labels[static_cast<std::size_t>(a)]) += x.row(a);
    for (int c = 0; c < k; ++c) centers.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
  }
  run.centers = std::move(centers);
  return run;
}

}  // namespace

KmeansResult kmeans(const DataMatrix& x, int k, int restarts, std::uint64_t seed) {
  validate_data(x);
  check_k(x.rows(), k);
  if (restarts < 1) throw ParameterError("kmeans needs at least one restart");
  LloydRun best;
  std::size_t best_restart = 0;
  for (int r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(r)}));
    LloydRun run = lloyd(x, kmeanspp_seed(x, k, rng));
    if (r == 0 || run.inertia < best.inertia) {
      best = std::move(run);
      best_restart = static_cast<std::size_t>(r);
    }
  }
  KmeansResult out;
  out.partition = LabelPartition(std::move(best.labels));
  out.centers = std::move(best.centers);
  out.inertia = best.inertia;
  out.iterations = best.iterations;
  out.inertia_trace = std::move(best.trace);
  out.restart = best_restart;
  return out;
}

WardResult ward_linkage(const DataMatrix& x, int k) {
  validate_data(x);
  const Eigen::Index n = x.rows();
  check_k(n, k);
  const auto un = static_cast<std::size_t>(n);

  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = (x.row(i) - x.row(j)).squaredNorm();
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  std::vector<double> size(un, 1.0);
  std::vector<bool> active(un, true);
  std::vector<std::size_t> cluster_of(un);
  std::iota(cluster_of.begin(), cluster_of.end(), 0);

  WardResult out;
  for (Eigen::Index step = 0; step < n - k; ++step) {
    Eigen::Index bi = -1, bj = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!active[static_cast<std::size_t>(i)]) continue;
      for (Eigen::Index j = i + 1; j < n; ++j) {
        if (!active[static_cast<std::size_t>(j)]) continue;
        if (d(i, j) < best) {
          best = d(i, j);
          bi = i;
          bj = j;
        }
      }
    }
    out.heights.push_back(best);
    const double ni = size[static_cast<std::size_t>(bi)];
    const double nj = size[static_cast<std::size_t>(bj)];
    for (Eigen::Index c = 0; c < n; ++c) {
      if (!active[static_cast<std::size_t>(c)] || c == bi || c == bj) continue;
      const double nc = size[static_cast<std::size_t>(c)];
      const double v = ((ni + nc) * d(bi, c) + (nj + nc) * d(bj, c) - nc * d(bi, bj)) / (ni + nj + nc);
      d(bi, c) = v;
      d(c, bi) = v;
    }
    size[static_cast<std::size_t>(bi)] = ni + nj;
    active[static_cast<std::size_t>(bj)] = false;
    for (auto& c : cluster_of) {
      if (c == static_cast<std::size_t>(bj)) c = static_cast<std::size_t>(bi);
    }
  }
  std::vector<int> raw(cluster_of.begin(), cluster_of.end());
  out.partition = LabelPartition::canonical(raw);
  return out;
}

LabelPartition ward(const DataMatrix& x, int k) { return ward_linkage(x, k).partition; }

Eigen::MatrixXd spectral_embedding(const SymMatrix& m, int k, Embedding embedding) {
  check_k(m.rows(), k);
  Eigen::SelfAdjointEigenSolver<SymMatrix> eig(0.5 * (m + m.transpose()));
  if (eig.info() != Eigen::Success) throw NumericalError("eigendecomposition failed in spectral embedding");
  const Eigen::Index n = m.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  // Eigenvalues come ascending; prefer larger |lambda|, then larger lambda.
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    const double ai = std::abs(eig.eigenvalues()(i)), aj = std::abs(eig.eigenvalues()(j));
    if (ai != aj) return ai > aj;
    return i > j;
  });
  Eigen::MatrixXd out(n, k);
  for (int c = 0; c < k; ++c) {
    const Eigen::Index idx = order[static_cast<std::size_t>(c)];
    const double scale = embedding == Embedding::kScaled ? std::sqrt(std::abs(eig.eigenvalues()(idx))) : 1.0;
    out.col(c) = eig.eigenvectors().col(idx) * scale;
  }
  return out;
}

LabelPartition lowrank_cluster(const SymMatrix& gram, int k, std::uint64_t seed, Embedding embedding) {
  if (gram.rows() != gram.cols()) throw InputError("Gram matrix must be square");
  const Eigen::MatrixXd rows = spectral_embedding(gram, k, embedding);
  return kmeans(rows, k, 10, seed).partition;
}

}  // namespace pecok
