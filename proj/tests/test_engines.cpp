#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "seqmeta/classical.hpp"
#include "seqmeta/engines.hpp"

using namespace seqmeta;

namespace {

StudyRecord rec(std::string id, std::int64_t seq, double est, double se, std::optional<std::string> label = {},
                std::string group = "") {
  return StudyRecord{std::move(id), seq, std::move(group), est, se, std::move(label)};
}

ModelConfig re_config(double prior_mean, double prior_sd, double tau, ModelKind model = ModelKind::RandomEffects) {
  ModelConfig c;
  c.model = model;
  c.prior = GaussianBelief(prior_mean, prior_sd);
  c.schedule = BeliefSchedule({}, TauFixed{tau});
  return c;
}

const GaussianBelief& gaussian(const Belief& b) { return std::get<GaussianBelief>(b); }

}  // namespace

TEST_CASE("conjugate update examples") {
  const auto a = conjugate_update(GaussianBelief(0, 1), 1.0, 1.0);
  CHECK(a.mean() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(a.sd() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));

  const GaussianBelief prior(0.3, 0.7);
  const auto b = conjugate_update(prior, 5.0, 1e12);
  CHECK(std::abs(b.mean() - prior.mean()) < 1e-9);
  CHECK(std::abs(b.sd() - prior.sd()) < 1e-9);

  const auto c = conjugate_update(GaussianBelief(0, 1e3), 2.0, 1.0);
  CHECK(std::abs(c.mean() - 2.0) < 1e-5);
  CHECK(std::abs(c.sd() - 1.0) < 1e-5);

  CHECK_THROWS_AS(conjugate_update(prior, 1.0, 0.0), Error);
}

TEST_CASE("effective observation variance") {
  CHECK(effective_obs_variance(rec("a", 1, 0, 0.1), 0.0) == doctest::Approx(0.01));
  CHECK(effective_obs_variance(rec("a", 1, 0, 0.1), 0.3) == doctest::Approx(0.10));
}

TEST_CASE("fixed-effect trace with a near-flat prior") {
  const auto seq = validate_sequence({rec("a", 1, 1.0, 1.0), rec("b", 2, 3.0, 1.0)});
  const auto out = run_engine(seq, re_config(0.0, 1e6, 0.0, ModelKind::FixedEffect));
  REQUIRE(out.steps.size() == 3);
  const auto& last = gaussian(out.steps.back());
  CHECK(std::abs(last.mean() - 2.0) < 1e-6);
  CHECK(std::abs(last.sd() - std::sqrt(0.5)) < 1e-6);
}

TEST_CASE("fixed-effect model ignores a configured tau") {
  const auto seq = validate_sequence({rec("a", 1, 1.0, 0.5), rec("b", 2, -1.0, 0.5)});
  const auto fe = run_engine(seq, re_config(0.0, 1.0, 0.7, ModelKind::FixedEffect));
  const auto zero = run_engine(seq, re_config(0.0, 1.0, 0.0, ModelKind::RandomEffects));
  CHECK(gaussian(fe.steps.back()) == gaussian(zero.steps.back()));
}

TEST_CASE("grouped records form one update step") {
  const auto seq = validate_sequence({rec("a", 1, 1.0, 0.5), rec("b1", 2, 2.0, 0.5, {}, "b"),
                                      rec("b2", 3, 0.0, 0.4, {}, "b"), rec("c", 4, 1.5, 0.3)});
  const auto out = run_engine(seq, re_config(0.0, 2.0, 0.1));
  REQUIRE(out.steps.size() == 4);
  const auto pooled = oracle::precision_pool(0.0, 4.0, {1.0, 2.0, 0.0}, {0.26, 0.26, 0.17});
  CHECK(gaussian(out.steps[2]).mean() == doctest::Approx(pooled.mean).epsilon(1e-12));
  CHECK(gaussian(out.steps[2]).sd() == doctest::Approx(pooled.sd).epsilon(1e-12));
}

TEST_CASE("sequential fold equals batch precision pooling, sd shrinks under FE") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> est(-2, 2), se(0.05, 1.5), tau(0, 0.5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 20);
    const double t = tau(rng);
    std::vector<StudyRecord> records;
    std::vector<double> ys, vars;
    for (int i = 0; i < n; ++i) {
      records.push_back(rec("s" + std::to_string(i), i + 1, est(rng), se(rng)));
      ys.push_back(records.back().estimate);
      vars.push_back(records.back().std_error * records.back().std_error + t * t);
    }
    const auto seq = validate_sequence(records);
    const auto out = run_engine(seq, re_config(0.2, 1.3, t));
    const auto pooled = oracle::precision_pool(0.2, 1.69, ys, vars);
    CHECK(gaussian(out.steps.back()).mean() == doctest::Approx(pooled.mean).epsilon(1e-10));
    CHECK(gaussian(out.steps.back()).sd() == doctest::Approx(pooled.sd).epsilon(1e-10));

    const auto fe = run_engine(seq, re_config(0.2, 1.3, 0.0, ModelKind::FixedEffect));
    for (std::size_t s = 1; s < fe.steps.size(); ++s) CHECK(gaussian(fe.steps[s]).sd() < gaussian(fe.steps[s - 1]).sd());
  }
}

TEST_CASE("random-effects final posterior is order invariant") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> est(-1, 1), se(0.1, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<StudyRecord> records;
    for (int i = 0; i < 7; ++i) records.push_back(rec("s" + std::to_string(i), i + 1, est(rng), se(rng)));
    const auto base = gaussian(run_engine(validate_sequence(records), re_config(0, 1, 0.2)).steps.back());
    std::vector<std::int64_t> order{1, 2, 3, 4, 5, 6, 7};
    std::shuffle(order.begin(), order.end(), rng);
    for (int i = 0; i < 7; ++i) records[static_cast<std::size_t>(i)].seq_index = order[static_cast<std::size_t>(i)];
    const auto perm = gaussian(run_engine(validate_sequence(records), re_config(0, 1, 0.2)).steps.back());
    CHECK(std::abs(base.mean() - perm.mean()) < 1e-8);
    CHECK(std::abs(base.sd() - perm.sd()) < 1e-8);
  }
}

TEST_CASE("Kalman update matches a 2001x2001 grid posterior") {
  const BeliefSchedule schedule({{1, "A", 1.0}}, TauFixed{0.0});
  const std::vector<StudyRecord> group{rec("a", 1, 2.0, 1.0, "A")};
  const auto state = kalman_labeled_update(JointGaussianState::from_prior(GaussianBelief(0, 1)), group, 0.0, schedule);
  const auto theta = state.theta_marginal();
  CHECK(std::abs(theta.mean() - 2.0 / 3.0) < 1e-6);
  CHECK(std::abs(theta.variance() - 2.0 / 3.0) < 1e-6);

  const auto grid = oracle::labeled_grid_posterior(0.0, 1.0, {1.0}, {{2.0, 1.0, 0}}, 2001, 10.0, 1);
  CHECK(std::abs(theta.mean() - grid.mean) < 1e-6);
  CHECK(std::abs(theta.sd() - grid.sd) < 1e-6);
}

TEST_CASE("kappa limits of the labeled update") {
  const GaussianBelief prior(0.4, 0.8);
  const auto start = JointGaussianState::from_prior(prior);
  const std::vector<StudyRecord> group{rec("a", 1, 1.7, 0.3, "A")};
  const double tau = 0.1;

  auto theta_after = [&](double kappa) {
    return kalman_labeled_update(start, group, tau, BeliefSchedule({{1, "A", kappa}}, TauFixed{tau})).theta_marginal();
  };

  const auto tight = theta_after(1e-8);
  const auto conj = conjugate_update(prior, 1.7, 0.3 * 0.3 + tau * tau);
  CHECK(std::abs(tight.mean() - conj.mean()) < 1e-6);
  CHECK(std::abs(tight.sd() - conj.sd()) < 1e-6);

  const auto loose = theta_after(1e6);
  CHECK(std::abs(loose.mean() - prior.mean()) < 1e-4);
  CHECK(std::abs(loose.sd() - prior.sd()) < 1e-4);
  const auto looser = theta_after(1e8);
  CHECK(std::abs(loose.mean() - looser.mean()) < 1e-6);
  CHECK(std::abs(loose.sd() - looser.sd()) < 1e-6);
}

TEST_CASE("covariance stays positive definite over 1000 random updates") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> est(-3, 3), se(0.01, 2.0), kap(1e-4, 10.0);
  const std::vector<std::string> labels{"A", "B", "C", "D"};
  std::vector<KappaEntry> entries;
  for (const auto& l : labels) entries.push_back({1, l, kap(rng)});
  const BeliefSchedule schedule(entries, TauFixed{0.05});
  auto state = JointGaussianState::from_prior(GaussianBelief(0, 2));
  for (int i = 0; i < 1000; ++i) {
    const std::vector<StudyRecord> group{rec("s" + std::to_string(i), i + 1, est(rng), se(rng), labels[rng() % 4])};
    REQUIRE_NOTHROW(state = kalman_labeled_update(state, group, 0.05, schedule));
    Eigen::LLT<Eigen::MatrixXd> llt(state.cov);
    REQUIRE(llt.info() == Eigen::Success);
    const double asym = (state.cov - state.cov.transpose()).cwiseAbs().maxCoeff();
    REQUIRE(asym <= 1e-10 * state.cov.cwiseAbs().maxCoeff());
    REQUIRE(state.mean.size() == static_cast<Eigen::Index>(1 + state.label_order.size()));
  }
}

TEST_CASE("sequential Kalman fold equals the batch posterior") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> est(-1, 1), se(0.05, 1.0), kap(0.01, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const BeliefSchedule schedule({{1, "A", kap(rng)}, {1, "B", kap(rng)}, {1, "C", kap(rng)}}, TauFixed{0.1});
    std::vector<StudyRecord> records;
    for (int i = 0; i < 5; ++i)
      records.push_back(rec("s" + std::to_string(i), i + 1, est(rng), se(rng), std::string(1, char('A' + rng() % 3))));
    const auto seq = validate_sequence(records);
    ModelConfig c = re_config(0.1, 0.9, 0.1, ModelKind::LabeledRandomEffects);
    c.schedule = schedule;
    const auto out = run_engine(seq, c);
    const auto batch = batch_labeled_posterior(c.prior, seq.records(), 0.1, schedule, 5).theta_marginal();
    CHECK(std::abs(gaussian(out.steps.back()).mean() - batch.mean()) < 1e-8);
    CHECK(std::abs(gaussian(out.steps.back()).sd() - batch.sd()) < 1e-8);
  }
}

TEST_CASE("labeled model errors") {
  ModelConfig c = re_config(0, 1, 0.0, ModelKind::LabeledRandomEffects);
  c.schedule = BeliefSchedule({{1, "A", 0.5}}, TauFixed{0.0});
  const auto unlabeled = validate_sequence({rec("a", 1, 0.1, 0.2)});
  try {
    run_engine(unlabeled, c);
    FAIL("expected UnlabeledRecord");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnlabeledRecord);
  }
  const auto unknown = validate_sequence({rec("a", 1, 0.1, 0.2, "Z")});
  try {
    run_engine(unknown, c);
    FAIL("expected LabelUnknownAtTime");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LabelUnknownAtTime);
  }
}

TEST_CASE("time-varying schedule recomputes under current beliefs") {
  const auto seq = validate_sequence({rec("a", 1, 1.0, 0.1, "old"), rec("b", 2, 1.1, 0.1, "old"),
                                      rec("c", 3, 0.0, 0.1, "new"), rec("d", 4, 0.1, 0.1, "new")});
  ModelConfig c = re_config(0, 1, 0.01, ModelKind::LabeledRandomEffects);
  c.schedule = BeliefSchedule({{1, "old", 1e-4}, {3, "old", 1.0}, {3, "new", 1e-4}}, TauFixed{0.01});
  const auto out = run_engine(seq, c);
  REQUIRE(out.steps.size() == 5);
  // At step 3 the old method is doubted, so the earlier evidence is discounted.
  CHECK(gaussian(out.steps[3]).sd() > gaussian(out.steps[2]).sd());
  for (std::size_t t = 1; t < out.steps.size(); ++t) {
    const auto at = batch_labeled_posterior(c.prior, seq.prefix_groups(t), 0.01, c.schedule,
                                            seq.group(t - 1).front().seq_index)
                        .theta_marginal();
    CHECK(gaussian(out.steps[t]).mean() == doctest::Approx(at.mean()).epsilon(1e-12));
  }
  // Before the switch the schedule behaves like the static trusted one.
  ModelConfig trusted = c;
  trusted.schedule = BeliefSchedule({{1, "old", 1e-4}}, TauFixed{0.01});
  const auto pre = run_engine(validate_sequence({rec("a", 1, 1.0, 0.1, "old"), rec("b", 2, 1.1, 0.1, "old")}), trusted);
  CHECK(gaussian(out.steps[2]).mean() == doctest::Approx(gaussian(pre.steps[2]).mean()).epsilon(1e-10));
}

TEST_CASE("grid posterior with a vanishing half-normal scale matches tau = 0") {
  const std::vector<StudyRecord> one{rec("a", 1, 0.8, 0.3)};
  const GaussianBelief prior(0, 1);
  const auto g = grid_posterior(one, prior, TauHalfNormal{1e-6}, 512);
  const auto c = conjugate_update(prior, 0.8, 0.09);
  CHECK(std::abs(g.mean() - c.mean()) < 2 * g.step());
  CHECK(std::abs(g.sd() - c.sd()) < 2 * g.step());
}

TEST_CASE("plug-in grid posterior with homogeneous data matches FE") {
  std::vector<StudyRecord> five;
  for (int i = 0; i < 5; ++i) five.push_back(rec("s" + std::to_string(i), i + 1, 1.0, 1.0));
  const GaussianBelief prior(0, 10);
  const auto g = grid_posterior(five, prior, TauPlugInDL{}, 1024);
  const auto fe = oracle::precision_pool(0, 100, {1, 1, 1, 1, 1}, {1, 1, 1, 1, 1});
  CHECK(std::abs(g.mean() - fe.mean) < 1e-6);
  CHECK(std::abs(g.sd() - fe.sd) < 1e-6);
}

TEST_CASE("half-normal grid posterior against a 2-D quadrature oracle") {
  const std::vector<StudyRecord> three{rec("a", 1, -1.0, 0.1), rec("b", 2, 0.0, 0.1), rec("c", 3, 1.0, 0.1)};
  const GaussianBelief prior(0, 10);
  const auto g = grid_posterior(three, prior, TauHalfNormal{1.0}, 512);
  const auto fe = oracle::precision_pool(0, 100, {-1, 0, 1}, {0.01, 0.01, 0.01});
  CHECK(g.sd() > fe.sd);

  const auto ref = oracle::halfnormal_grid_posterior(0, 10, 1.0, {-1, 0, 1}, {0.1, 0.1, 0.1}, 3.0, g.lo(), g.hi(),
                                                     4 * 512, 4 * 512);
  CHECK(std::abs(g.mean() - ref.mean) < 1e-3);
  CHECK(std::abs(g.sd() - ref.sd) < 1e-3 * ref.sd);
}

TEST_CASE("grid trace runs through the dispatcher") {
  const auto seq = validate_sequence({rec("a", 1, 0.3, 0.2), rec("b", 2, 0.5, 0.2), rec("c", 3, 0.1, 0.3)});
  ModelConfig c = re_config(0, 1, 0.0);
  c.schedule = BeliefSchedule({}, TauHalfNormal{0.5});
  const auto out = run_engine(seq, c);
  REQUIRE(out.steps.size() == 4);
  CHECK(std::holds_alternative<GaussianBelief>(out.steps[0]));
  for (std::size_t t = 1; t < 4; ++t) CHECK(std::holds_alternative<GridBelief>(out.steps[t]));
}

TEST_CASE("plug-in trace re-estimates tau per prefix") {
  const auto seq = validate_sequence({rec("a", 1, -1.0, 0.1), rec("b", 2, 1.0, 0.1), rec("c", 3, 0.0, 0.1)});
  ModelConfig c = re_config(0, 1e6, 0.0);
  c.schedule = BeliefSchedule({}, TauPlugInDL{});
  const auto out = run_engine(seq, c);
  REQUIRE(out.tau_used.size() == 4);
  CHECK(out.tau_used[1] == 0.0);
  CHECK(out.tau_used[2] == doctest::Approx(std::sqrt(1.99)).epsilon(1e-12));
  const auto prefix = re_estimate(seq.prefix_groups(2));
  CHECK(mean(out.steps[2]) == doctest::Approx(prefix.estimate).epsilon(1e-9));
}

TEST_CASE("grid belief normalization and accessors") {
  const auto g = rasterize(GaussianBelief(1.0, 0.5), 512);
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) integral += 0.5 * g.step() * (g.density()[i] + g.density()[i + 1]);
  CHECK(std::abs(integral - 1.0) < 1e-6);
  CHECK(std::abs(g.cdf().back() - 1.0) < 1e-12);
  CHECK(std::abs(g.mean() - 1.0) < 1e-6);
  CHECK(std::abs(g.sd() - 0.5) < 1e-4);
  CHECK(std::abs(g.quantile(0.5) - 1.0) < 1e-6);
  for (double d : g.density()) CHECK(d >= 0.0);
  CHECK_THROWS_AS(GridBelief::from_log_density(0, 1, std::vector<double>(32, 0.0)), Error);
  CHECK_THROWS_AS(GridBelief::from_log_density(1, 0, std::vector<double>(64, 0.0)), Error);
}

TEST_CASE("degenerate grid density underflows") {
  std::vector<double> logd(128, -1e6);
  logd[5] = 0.0;
  try {
    GridBelief::from_log_density(0, 1, logd);
    FAIL("expected GridUnderflow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GridUnderflow);
  }
}

TEST_CASE("credible intervals") {
  const auto [lo, hi] = credible_interval(GaussianBelief(0, 1), 0.95);
  CHECK(std::abs(lo + 1.959964) < 1e-5);
  CHECK(std::abs(hi - 1.959964) < 1e-5);
  const auto [lo2, hi2] = credible_interval(GaussianBelief(2, 0.5), 0.95);
  CHECK(std::abs(lo2 - 1.020018) < 1e-5);
  CHECK(std::abs(hi2 - 2.979982) < 1e-5);
  const auto [glo, ghi] = credible_interval(rasterize(GaussianBelief(0, 1), -8, 8, 512), 0.95);
  CHECK(std::abs(glo + 1.959964) < 0.01);
  CHECK(std::abs(ghi - 1.959964) < 0.01);
}
