#include "pecok/errors.hpp"
#include "pecok/oracle.hpp"
#include "pecok/rounding.hpp"
#include "pecok/sdp_solver.hpp"
#include "support.hpp"

#include <doctest.h>

#include <optional>

using namespace pecok;

namespace {

double inner(const SymMatrix& a, const SymMatrix& b) { return (a.array() * b.array()).sum(); }

/// Generic least-squares projection of vec(M) onto {C vec(B) = d}, where
/// the rows of C encode symmetry, row sums and optionally the trace.
SymMatrix dense_affine_projection(const SymMatrix& m, std::optional<double> trace) {
  const Eigen::Index n = m.rows();
  const Eigen::Index nn = n * n;
  auto idx = [n](Eigen::Index i, Eigen::Index j) { return i * n + j; };
  std::vector<Eigen::RowVectorXd> rows;
  std::vector<double> rhs;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(nn);
      r(idx(i, j)) = 1.0;
      r(idx(j, i)) = -1.0;
      rows.push_back(r);
      rhs.push_back(0.0);
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(nn);
    for (Eigen::Index j = 0; j < n; ++j) r(idx(i, j)) = 1.0;
    rows.push_back(r);
    rhs.push_back(1.0);
  }
  if (trace) {
    Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(nn);
    for (Eigen::Index i = 0; i < n; ++i) r(idx(i, i)) = 1.0;
    rows.push_back(r);
    rhs.push_back(*trace);
  }
  Eigen::MatrixXd c(static_cast<Eigen::Index>(rows.size()), nn);
  Eigen::VectorXd d(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    c.row(static_cast<Eigen::Index>(r)) = rows[r];
    d(static_cast<Eigen::Index>(r)) = rhs[r];
  }
  Eigen::VectorXd v(nn);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) v(idx(i, j)) = m(i, j);
  }
  // v - C^T (C C^T)^+ (C v - d), with a rank-revealing solve since the
  // symmetry and row-sum rows are not independent of each other.
  const Eigen::MatrixXd cct = c * c.transpose();
  const Eigen::VectorXd lambda = cct.completeOrthogonalDecomposition().solve(c * v - d);
  const Eigen::VectorXd proj = v - c.transpose() * lambda;
  SymMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = proj(idx(i, j));
  }
  return out;
}

/// Two groups of three with far-apart means and small homoscedastic bias.
struct PopulationInstance {
  LabelPartition truth;
  SymMatrix a;
};

PopulationInstance separated_population(double eps) {
  ClusterGroundTruth t;
  t.partition = LabelPartition({0, 1, 0, 1, 1, 0});
  t.p = 2;
  Eigen::VectorXd m0(2), m1(2);
  m0 << 3.0, 0.0;
  m1 << 0.0, 3.0;
  t.means = {m0, m1};
  Eigen::VectorXd d(2);
  d << eps, 0.0;
  t.covariances.assign(6, Covariance::diagonal(d));
  const auto pop = population_matrices(t);
  return {t.partition, pop.signal + pop.bias};
}

}  // namespace

TEST_CASE("project_psd examples") {
  SymMatrix d(2, 2);
  d << 2, 0, 0, -1;
  SymMatrix expected(2, 2);
  expected << 2, 0, 0, 0;
  CHECK((project_psd(d) - expected).cwiseAbs().maxCoeff() < 1e-14);

  SymMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK((project_psd(swap) - SymMatrix::Constant(2, 2, 0.5)).cwiseAbs().maxCoeff() < 1e-14);

  const SymMatrix r = testing::random_symmetric(6, 4);
  const SymMatrix psd = r * r.transpose();
  CHECK((project_psd(psd) - psd).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("project_affine fixed points and constraint satisfaction") {
  const SymMatrix b = characteristic_matrix(LabelPartition({0, 0, 1, 2, 1}));
  CHECK((project_affine(b, 3.0) - b).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((project_affine(b, std::nullopt) - b).cwiseAbs().maxCoeff() < 1e-12);

  const SymMatrix once = project_affine(SymMatrix::Zero(3, 3), 2.0);
  CHECK((once.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-12);
  CHECK(once.trace() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK((project_affine(once, 2.0) - once).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("project_affine agrees with a dense least-squares projection") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const SymMatrix m = testing::random_symmetric(6, s);
    for (std::optional<double> trace : {std::optional<double>(2.0), std::optional<double>()}) {
      const SymMatrix fast = project_affine(m, trace);
      const SymMatrix slow = dense_affine_projection(m, trace);
      CHECK((fast - slow).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("feasibility report") {
  const auto f = feasibility_report(characteristic_matrix(LabelPartition({0, 1, 1})), 2);
  CHECK(f.worst() < 1e-12);
  SymMatrix bad(2, 2);
  bad << 1.5, -0.5, -0.5, 1.5;
  const auto g = feasibility_report(bad, 1);
  CHECK(g.max_negative_entry == doctest::Approx(0.5));
  CHECK(g.trace_deviation == doctest::Approx(2.0));
  CHECK(g.max_row_sum_deviation == doctest::Approx(0.0));
}

TEST_CASE("solve_fixed_k recovers B* on a separated population instance") {
  const auto inst = separated_population(0.1);
  const auto res = solve_fixed_k(inst.a, 2);
  CHECK(res.converged);
  const SymMatrix b_star = characteristic_matrix(inst.truth);
  CHECK((res.solution - b_star).cwiseAbs().maxCoeff() < 1e-3);
  const auto oracle = exact_kmeans_gram(inst.a, 2);
  CHECK(LabelPartition::canonical(oracle.partition.labels()) == LabelPartition::canonical(inst.truth.labels()));
  CHECK(round_fixed_k(res.solution, 2).integrality_gap < 1e-3);
}

TEST_CASE("solve_fixed_k with a zero objective returns a feasible point") {
  for (int k : {1, 2, 4}) {
    const auto res = solve_fixed_k(SymMatrix::Zero(7, 7), k);
    CHECK(res.feasibility.worst() <= 1e-4);
    CHECK(res.objective == doctest::Approx(0.0));
  }
}

TEST_CASE("heteroscedastic bias moves the optimum away from B*") {
  const auto inst = heteroscedastic_instance(4, 1.0, 10.0, 1.0);
  const SymMatrix biased = inst.population.signal + inst.population.bias;
  CHECK(inner(inst.b_star, inst.population.bias) == doctest::Approx(10.0 + 2.0));
  CHECK(inner(inst.merge_split, inst.population.bias) == doctest::Approx(20.0 + 1.0));
  CHECK(inner(inst.merge_split, biased) > inner(inst.b_star, biased));
  const auto res = solve_fixed_k(biased, 3);
  CHECK((res.solution - inst.b_star).cwiseAbs().maxCoeff() > 0.1);
  CHECK(res.objective >= inner(inst.merge_split, biased) - 1e-3);
}

TEST_CASE("relaxation dominates the combinatorial optimum") {
  for (std::uint64_t s = 0; s < 8; ++s) {
    const Eigen::Index n = 5 + static_cast<Eigen::Index>(s % 4);
    const int k = 2 + static_cast<int>(s % 2);
    const SymMatrix a = testing::random_symmetric(n, 300 + s);
    const auto oracle = exact_kmeans_gram(a, k);
    const auto res = solve_fixed_k(a, k);
    CHECK(res.objective >= oracle.objective - 1e-4 * a.norm());
  }
}

TEST_CASE("solve_fixed_k is permutation equivariant") {
  const SymMatrix a = testing::random_symmetric(8, 12);
  const Eigen::MatrixXd perm = testing::random_permutation(8, 3);
  AdmmSettings tight;
  tight.eps_abs = 1e-9;
  tight.eps_rel = 1e-9;
  tight.max_iters = 20000;
  const auto base = solve_fixed_k(a, 3, tight);
  const auto moved = solve_fixed_k(perm * a * perm.transpose(), 3, tight);
  CHECK((moved.solution - perm * base.solution * perm.transpose()).cwiseAbs().maxCoeff() < 1e-4);
}

TEST_CASE("solve_fixed_k argmax is scale invariant") {
  const auto inst = separated_population(0.2);
  const auto base = solve_fixed_k(inst.a, 2);
  for (double c : {0.01, 7.0, 1000.0}) {
    const auto scaled = solve_fixed_k(c * inst.a, 2);
    CHECK((scaled.solution - base.solution).cwiseAbs().maxCoeff() < 1e-3);
  }
}

TEST_CASE("solver input validation") {
  CHECK_THROWS_AS(solve_fixed_k(SymMatrix::Identity(4, 4), 0), ParameterError);
  CHECK_THROWS_AS(solve_fixed_k(SymMatrix::Identity(4, 4), 5), ParameterError);
  SymMatrix asym = SymMatrix::Identity(3, 3);
  asym(0, 1) = 1.0;
  CHECK_THROWS_AS(solve_fixed_k(asym, 2), InputError);
  CHECK_THROWS_AS(solve_adaptive(asym, 1.0), InputError);
  CHECK_THROWS_AS(solve_adaptive(SymMatrix::Identity(3, 3), -1.0), ParameterError);
  AdmmSettings bad;
  bad.max_iters = 0;
  CHECK_THROWS_AS(solve_fixed_k(SymMatrix::Identity(3, 3), 2, bad), ParameterError);
  bad = {};
  bad.penalty = -1.0;
  CHECK_THROWS_AS(solve_fixed_k(SymMatrix::Identity(3, 3), 2, bad), ParameterError);
}

TEST_CASE("iteration cap is honoured") {
  AdmmSettings s;
  s.max_iters = 5;
  const auto res = solve_fixed_k(testing::random_symmetric(10, 1), 3, s);
  CHECK(res.iterations == 5);
  CHECK_FALSE(res.converged);
  CHECK(res.primal_residual >= 0.0);
  CHECK(res.dual_residual >= 0.0);
}

TEST_CASE("adaptive solver on a separated population instance") {
  // Three groups of three at pairwise distance Delta = 3 (no bias). Merging
  // two groups gains exactly m Delta^2 / 2 in <Lambda, B> and lowers the
  // trace by one, so kappa = m Delta^2 / 2 ties B* with merged solutions and
  // any kappa strictly below it (and above zero noise) isolates B*.
  const auto inst = heteroscedastic_instance(3, 9.0, 0.0, 0.0);
  const SymMatrix& lambda = inst.population.signal;
  const double boundary = 3.0 * 9.0 / 2.0;
  const SymMatrix all = SymMatrix::Constant(9, 9, 1.0 / 9.0);
  CHECK(inner(lambda, inst.b_star) - boundary * 3.0 == doctest::Approx(inner(lambda, all) - boundary * 1.0));

  const auto res = solve_adaptive(lambda, boundary / 2.0);
  CHECK((res.solution - inst.b_star).cwiseAbs().maxCoeff() < 1e-3);
  const auto rounded = round_adaptive(res.solution);
  CHECK(rounded.k_hat == 3);
  CHECK(LabelPartition::canonical(rounded.partition.labels()) == inst.truth.partition);
}

TEST_CASE("large kappa drives the trace to its minimum") {
  const auto inst = separated_population(0.1);
  const double kappa = inst.a.norm() * 6.0 * 10.0;
  const auto res = solve_adaptive(inst.a, kappa);
  CHECK(res.solution.trace() == doctest::Approx(1.0).epsilon(1e-3));
  CHECK((res.solution - SymMatrix::Constant(6, 6, 1.0 / 6.0)).cwiseAbs().maxCoeff() < 1e-3);
}

TEST_CASE("adaptive optimum with kappa = 0 matches the best fixed-K optimum") {
  DataMatrix x(6, 2);
  x << 0, 0, 0, 0, 0, 0, 4, 1, 4, 1, 4, 1;
  const SymMatrix gram = x * x.transpose();
  AdmmSettings tight;
  tight.eps_abs = 1e-9;
  tight.eps_rel = 1e-9;
  tight.max_iters = 20000;
  double best = -1e300;
  for (int k = 1; k <= 6; ++k) best = std::max(best, solve_fixed_k(gram, k, tight).objective);
  const auto adaptive = solve_adaptive(gram, 0.0, tight);
  CHECK(adaptive.objective == doctest::Approx(best).epsilon(1e-4));
}
