#include "pecok/errors.hpp"
#include "pecok/simulate.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace pecok;

TEST_CASE("make_truth geometry") {
  const auto t = make_truth(30, 50, 3, 16.0, {1.0, 0.1, 0.1}, 7);
  t.validate();
  CHECK(t.partition.k() == 3);
  CHECK(t.partition.group_sizes() == std::vector<std::size_t>{10, 10, 10});
  CHECK(separation(t) == doctest::Approx(4.0));
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) CHECK((t.means[i] - t.means[j]).norm() == doctest::Approx(4.0));
  }
  const auto s = spread_summary(t);
  CHECK(s.sigma2 == doctest::Approx(1.0));
  CHECK(separation(t) * separation(t) / s.sigma2 == doctest::Approx(16.0));
  CHECK(t.covariances[static_cast<std::size_t>(t.partition.groups()[1][0])].entry(0) == doctest::Approx(0.01));
  CHECK(discriminating_capacity(t) == kInfiniteCapacity);
  CHECK(kappa_reference(t) == doctest::Approx(10.0 * 16.0 / 2.0));
}

TEST_CASE("kappa reference example") {
  const auto t = make_truth(30, 10, 3, 9.0, {1.0, 1.0, 1.0}, 1);
  CHECK(kappa_reference(t) == doctest::Approx(45.0));
}

TEST_CASE("make_truth validation") {
  CHECK_THROWS_AS(make_truth(31, 10, 3, 1.0, {1, 1, 1}, 0), ParameterError);
  CHECK_THROWS_AS(make_truth(30, 2, 3, 1.0, {1, 1, 1}, 0), ParameterError);
  CHECK_THROWS_AS(make_truth(30, 10, 3, 0.0, {1, 1, 1}, 0), ParameterError);
  CHECK_THROWS_AS(make_truth(30, 10, 3, 1.0, {1, 1}, 0), ParameterError);
}

TEST_CASE("sampling without noise returns the means") {
  auto t = make_truth(6, 4, 2, 4.0, {1.0, 1.0}, 3);
  t.covariances.assign(6, Covariance::isotropic(0.0));
  const DataMatrix x = sample(t, 11);
  for (std::size_t a = 0; a < 6; ++a) {
    CHECK((x.row(static_cast<Eigen::Index>(a)).transpose() - t.point_mean(a)).norm() == 0.0);
  }
}

TEST_CASE("sample moments follow the model") {
  const auto t = make_truth(10000, 3, 2, 4.0, {0.5, 1.0}, 5);
  const DataMatrix x = sample(t, 8);
  for (int g = 0; g < 2; ++g) {
    const auto members = t.partition.groups()[static_cast<std::size_t>(g)];
    Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(3);
    for (auto a : members) mean += x.row(static_cast<Eigen::Index>(a));
    mean /= static_cast<double>(members.size());
    double var = 0.0;
    for (auto a : members) var += (x.row(static_cast<Eigen::Index>(a)) - mean).squaredNorm();
    var /= 3.0 * static_cast<double>(members.size() - 1);
    const double sigma2 = t.covariances[members[0]].entry(0);
    CHECK((mean.transpose() - t.means[static_cast<std::size_t>(g)]).norm() < 6.0 * std::sqrt(3.0 * sigma2 / 5000.0));
    CHECK(std::abs(var - sigma2) < 0.05 * sigma2);
  }
}

TEST_CASE("grids and defaults") {
  const auto s1 = ScenarioConfig::defaults(Scenario::kS1);
  s1.validate();
  CHECK(s1.points().size() == s1.snr_grid.size());
  auto s2 = ScenarioConfig::defaults(Scenario::kS2);
  s2.validate();
  for (const auto& pt : s2.points()) CHECK(pt.p <= s2.p_cap);
  const auto r = geometric_sigma_ratios(3);
  CHECK(r[0] == doctest::Approx(0.1));
  CHECK(r[1] == doctest::Approx(std::sqrt(0.1)));
  CHECK(r[2] == doctest::Approx(1.0));
  CHECK(parse_scenario("S2") == Scenario::kS2);
  CHECK_THROWS_AS(parse_scenario("s3"), ParameterError);
  for (auto m : {Method::kPecok, Method::kPecokAdaptive, Method::kSdp, Method::kKmeans, Method::kWard, Method::kLowrank}) {
    CHECK(parse_method(to_string(m)) == m);
  }
  CHECK_THROWS_AS(parse_method("spectral"), ParameterError);
  auto bad = s1;
  bad.replications = 0;
  CHECK_THROWS_AS(bad.validate(), ParameterError);
  bad = s1;
  bad.n = 31;
  CHECK_THROWS_AS(bad.validate(), ParameterError);
}

TEST_CASE("quantiles and summaries") {
  CHECK(quantile({3, 1, 2}, 0.5) == doctest::Approx(2.0));
  CHECK(quantile({1, 2, 3, 4}, 0.25) == doctest::Approx(1.75));
  std::vector<TrialRecord> recs(4);
  for (int i = 0; i < 4; ++i) {
    recs[static_cast<std::size_t>(i)].rep = i;
    recs[static_cast<std::size_t>(i)].split_join = i;
    recs[static_cast<std::size_t>(i)].exact = i == 0;
  }
  recs[3].failed = true;
  const auto rows = summarize(recs);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].trials == 4);
  CHECK(rows[0].failures == 1);
  CHECK(rows[0].median == doctest::Approx(1.0));
}

namespace {

ScenarioConfig small_config() {
  ScenarioConfig c;
  c.scenario = Scenario::kCustom;
  c.n = 12;
  c.k = 3;
  c.p = 20;
  c.snr_grid = {30.0};
  c.p_grid = {20};
  c.sigma_ratios = {1.0, 1.0, 1.0};
  c.replications = 2;
  c.seed = 42;
  c.record_timing = false;
  return c;
}

}  // namespace

TEST_CASE("sweeps replay deterministically across thread counts") {
  const std::vector<Method> methods{Method::kPecok, Method::kKmeans, Method::kLowrank};
  auto c = small_config();
  const auto a = run_scenario(c, methods);
  c.jobs = 3;
  const auto b = run_scenario(c, methods);
  REQUIRE(a.size() == 6);
  REQUIRE(b.size() == a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].method == b[i].method);
    CHECK(a[i].rep == b[i].rep);
    CHECK(a[i].split_join == b[i].split_join);
    CHECK(a[i].iterations == b[i].iterations);
    CHECK(a[i].runtime_ms == 0.0);
  }
}

TEST_CASE("every method recovers at very high SNR") {
  auto c = small_config();
  c.snr_grid = {1e6};
  const auto recs =
      run_scenario(c, {Method::kPecok, Method::kSdp, Method::kKmeans, Method::kWard, Method::kLowrank});
  for (const auto& r : recs) {
    CHECK_MESSAGE(r.exact, std::string(to_string(r.method)));
    CHECK_FALSE(r.failed);
  }
}

TEST_CASE("adaptive method at the reference penalty returns a valid partition") {
  // The reference penalty m Delta^2 / 2 is exactly the gain of merging two
  // groups, so B* and merged solutions tie in the population objective.
  auto c = small_config();
  c.snr_grid = {1e6};
  for (const auto& r : run_scenario(c, {Method::kPecokAdaptive})) {
    CHECK_FALSE(r.failed);
    CHECK(r.k_hat >= 1);
    CHECK(r.k_hat <= 3);
  }
}

TEST_CASE("recovery improves with SNR") {
  auto c = small_config();
  c.n = 18;
  c.p = 100;
  c.p_grid = {100};
  c.snr_grid = {1.0, 40.0};
  c.replications = 4;
  const auto rows = summarize(run_scenario(c, {Method::kPecok}));
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].median <= rows[0].median);
}

TEST_CASE("trial failures are recorded rather than thrown") {
  auto c = small_config();
  c.n = 4;
  c.k = 2;
  c.sigma_ratios = {1.0, 1.0};
  const auto recs = run_scenario(c, {Method::kPecok, Method::kKmeans});
  REQUIRE(recs.size() == 4);
  CHECK(recs[0].failed);
  CHECK(recs[0].error.find("insufficient") != std::string::npos);
  CHECK_FALSE(recs[1].failed);
}
