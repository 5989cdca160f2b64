#include <doctest.h>

#include <cmath>
#include <random>

#include "hbloc/localizer.hpp"
#include "hbloc/rng.hpp"

using namespace hbloc;

namespace {

CompiledScenario scenario1() {
  static const CompiledScenario sc = compile(Scenario::preset("scenario1"));
  return sc;
}

}  // namespace

TEST_CASE("measure is exact without noise") {
  const CompiledScenario sc = scenario1();
  const FocusedBeam beam = direction_beam(sc.direction_cb.at(4, 8), sc.cfg.tx_power_w, sc.cfg.k());
  const RxGroundTruth rx = RxGroundTruth::polar(deg_to_rad(-3.0), 2.0);
  std::mt19937_64 rng(1);
  const double expected = received_power(power_density(beam, rx.cartesian()), sc.rx_aperture);
  CHECK(measure(beam, rx, sc.rx_aperture, NoiseModel::none(), rng) == expected);
}

TEST_CASE("awgn measurement statistics") {
  const CompiledScenario sc = scenario1();
  const double pn = 1e-9;
  std::mt19937_64 rng(17);
  const int n = 200000;

  SUBCASE("zero signal gives exponential noise with mean P_n") {
    // A beam pointed far away delivers effectively zero power at the RX.
    const FocusedBeam beam =
        direction_beam(sc.direction_cb.at(10, 1), sc.cfg.tx_power_w, sc.cfg.k());
    const RxGroundTruth rx = RxGroundTruth::polar(deg_to_rad(24.0), 4.0);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += measure(beam, rx, sc.rx_aperture, NoiseModel::awgn(pn), rng);
    CHECK(sum / n == doctest::Approx(pn).epsilon(0.02));
  }

  SUBCASE("sample mean approaches P_r + P_n") {
    const FocusedBeam beam =
        direction_beam(sc.direction_cb.at(4, 8), sc.cfg.tx_power_w, sc.cfg.k());
    const RxGroundTruth rx = RxGroundTruth::polar(deg_to_rad(-4.0), 2.0);
    const double p_r = received_power(power_density(beam, rx.cartesian()), sc.rx_aperture);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += measure(beam, rx, sc.rx_aperture, NoiseModel::awgn(pn), rng);
    CHECK(sum / n == doctest::Approx(p_r + pn).epsilon(0.02));
  }
}

TEST_CASE("phase1 recovers a beam-center RX exactly (noiseless)") {
  const CompiledScenario sc = scenario1();
  const DirectionCodeword& cw = sc.direction_cb.at(10, 560);
  const RxGroundTruth rx = RxGroundTruth::polar(cw.steer_rad, 3.0);
  std::mt19937_64 rng(2);
  SearchTrace trace;
  const Phase1Result res = phase1(sc, rx, SearchMode::measured, rng, trace);
  CHECK(res.final_index == 560);
  CHECK(res.theta_hat == cw.steer_rad);
}

TEST_CASE("ideal phase1 containment bound") {
  const CompiledScenario sc = scenario1();
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> theta_dist(-sc.cfg.theta_max, sc.cfg.theta_max);
  std::uniform_real_distribution<double> d_dist(sc.cfg.d_min, sc.cfg.d0);
  const double h = cell_halfwidth(sc.direction_cb.depth());
  for (int i = 0; i < 300; ++i) {
    const RxGroundTruth rx = RxGroundTruth::polar(theta_dist(rng), d_dist(rng));
    SearchTrace trace;
    const Phase1Result res = phase1(sc, rx, SearchMode::ideal, rng, trace);
    CHECK(std::abs(std::sin(res.theta_hat) - std::sin(rx.theta)) <= h + 1e-12);
  }
}

TEST_CASE("phase2 recovers a focal-center RX exactly (noiseless, broadside)") {
  const CompiledScenario sc = scenario1();
  const FocusCodeword& cw = sc.focus_cb.at(6, 32);
  const RxGroundTruth rx = RxGroundTruth::polar(0.0, cw.d_f);
  std::mt19937_64 rng(3);
  SearchTrace trace;
  const Phase2Result res = phase2(sc, 0.0, rx, SearchMode::measured, rng, trace);
  CHECK(res.final_index == 32);
  CHECK(res.d_hat == cw.d_f);
}

TEST_CASE("ideal phase2 picks the nearest focal center") {
  const CompiledScenario sc = scenario1();
  const double half_spacing = sc.cfg.d0 / (1 << (sc.focus_cb.depth() + 1));
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> d_dist(sc.cfg.d_min, sc.cfg.d0);
  for (int i = 0; i < 300; ++i) {
    const RxGroundTruth rx = RxGroundTruth::polar(0.0, d_dist(rng));
    SearchTrace trace;
    const Phase2Result res = phase2(sc, 0.0, rx, SearchMode::ideal, rng, trace);
    CHECK(std::abs(res.d_hat - rx.distance) <= half_spacing + 1e-12);
  }
}

TEST_CASE("localize at an exact codeword intersection") {
  const CompiledScenario sc = scenario1();
  const DirectionCodeword& dir = sc.direction_cb.at(10, 513);
  const FocusCodeword& foc = sc.focus_cb.at(6, 32);
  const RxGroundTruth rx = RxGroundTruth::polar(dir.steer_rad, foc.d_f);
  std::mt19937_64 rng(5);
  const LocalizeResult ideal = localize(sc, rx, SearchMode::ideal, rng);
  CHECK(ideal.estimate.error <= 1e-12);
  const LocalizeResult measured = localize(sc, rx, SearchMode::measured, rng);
  CHECK(measured.estimate.error <= 1e-9);
}

TEST_CASE("localize rejects an RX outside the area") {
  const CompiledScenario sc = scenario1();
  std::mt19937_64 rng(6);
  CHECK_THROWS_AS(localize(sc, RxGroundTruth::polar(0.0, 6.0), SearchMode::ideal, rng),
                  ConfigError);
  CHECK_THROWS_AS(localize(sc, RxGroundTruth::polar(deg_to_rad(40.0), 2.0), SearchMode::ideal, rng),
                  ConfigError);
}

TEST_CASE("pilot budget for scenario 1") {
  const CompiledScenario sc = scenario1();
  std::mt19937_64 rng(7);
  const LocalizeResult res =
      localize(sc, RxGroundTruth::polar(deg_to_rad(10.0), 2.0), SearchMode::measured, rng);
  // 8 entry beams + 2 per remaining direction level + 2 per focus level
  CHECK(res.trace.pilot_count() == 8 + 2 * (10 - 4) + 2 * 6);
  CHECK(res.trace.pilot_count() < pilot_counts(10).exhaustive + pilot_counts(6).exhaustive);
}

TEST_CASE("descent narrows the search cell at every step") {
  const CompiledScenario sc = scenario1();
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> theta_dist(-sc.cfg.theta_max, sc.cfg.theta_max);
  std::uniform_real_distribution<double> d_dist(sc.cfg.d_min, sc.cfg.d0);
  for (int trial = 0; trial < 50; ++trial) {
    const RxGroundTruth rx = RxGroundTruth::polar(theta_dist(rng), d_dist(rng));
    const LocalizeResult res = localize(sc, rx, SearchMode::measured, rng);
    const SearchStep* prev = nullptr;
    for (const SearchStep& step : res.trace.steps) {
      if (prev != nullptr && prev->phase == step.phase) {
        if (step.phase == 1) {
          const double ph = cell_halfwidth(prev->level);
          const double ch = cell_halfwidth(step.level);
          const double pu = sc.direction_cb.at(prev->level, prev->chosen).u_center;
          const double cu = sc.direction_cb.at(step.level, step.chosen).u_center;
          CHECK(cu - ch >= pu - ph - 1e-12);
          CHECK(cu + ch <= pu + ph + 1e-12);
        } else {
          const double pw = sc.cfg.d0 / (1 << prev->level) / 2.0;
          const double cw = sc.cfg.d0 / (1 << step.level) / 2.0;
          const double pd = sc.focus_cb.at(prev->level, prev->chosen).d_f;
          const double cd = sc.focus_cb.at(step.level, step.chosen).d_f;
          CHECK(cd - cw >= pd - pw - 1e-12);
          CHECK(cd + cw <= pd + pw + 1e-12);
        }
      }
      prev = &step;
    }
  }
}

TEST_CASE("noise-free runs are deterministic") {
  const CompiledScenario sc = scenario1();
  const RxGroundTruth rx = RxGroundTruth::polar(deg_to_rad(-7.0), 3.3);
  std::mt19937_64 rng_a(9), rng_b(9);
  const LocalizeResult a = localize(sc, rx, SearchMode::measured, rng_a);
  const LocalizeResult b = localize(sc, rx, SearchMode::measured, rng_b);
  CHECK(a.estimate.error == b.estimate.error);
  REQUIRE(a.trace.steps.size() == b.trace.steps.size());
  for (std::size_t i = 0; i < a.trace.steps.size(); ++i) {
    CHECK(a.trace.steps[i].chosen == b.trace.steps[i].chosen);
    CHECK(a.trace.steps[i].powers_w == b.trace.steps[i].powers_w);
  }
}

TEST_CASE("ideal-mode error obeys the geometric bound") {
  const CompiledScenario sc = scenario1();
  const double du = cell_halfwidth(sc.direction_cb.depth());
  const double r_max = sc.resolution();
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> theta_dist(-sc.cfg.theta_max, sc.cfg.theta_max);
  std::uniform_real_distribution<double> d_dist(sc.cfg.d_min, sc.cfg.d0);
  for (int i = 0; i < 500; ++i) {
    const RxGroundTruth rx = RxGroundTruth::polar(theta_dist(rng), d_dist(rng));
    const LocalizeResult res = localize(sc, rx, SearchMode::ideal, rng);
    const double u = std::sin(rx.theta);
    const double lo = std::asin(std::max(-1.0, u - du));
    const double hi = std::asin(std::min(1.0, u + du));
    const double dtheta = std::max(std::abs(hi - rx.theta), std::abs(lo - rx.theta));
    const double bound = std::hypot(rx.distance * dtheta, r_max);
    CHECK(res.estimate.error <= bound * 1.05 + 1e-9);
  }
}

TEST_CASE("success probability degrades monotonically with noise") {
  const CompiledScenario base = scenario1();
  const double resolution = base.resolution();
  std::vector<double> success;
  for (double dbm : {-120.0, -70.0, -30.0, 10.0}) {
    Scenario cfg = base.cfg;
    cfg.noise = NoiseModel::awgn_dbm(dbm);
    const CompiledScenario sc = compile(cfg);
    int ok = 0;
    const int n = 2000;
    for (int i = 0; i < n; ++i) {
      std::mt19937_64 rng = derive_rng(77, static_cast<std::uint64_t>(i));
      std::uniform_real_distribution<double> theta_dist(-sc.cfg.theta_max, sc.cfg.theta_max);
      std::uniform_real_distribution<double> d_dist(sc.cfg.d_min, sc.cfg.d0);
      const RxGroundTruth rx = RxGroundTruth::polar(theta_dist(rng), d_dist(rng));
      if (is_success(localize(sc, rx, SearchMode::measured, rng).estimate.error, resolution)) ++ok;
    }
    success.push_back(static_cast<double>(ok) / n);
  }
  // allow sampling slack of ~1 sigma at n=2000
  for (std::size_t i = 1; i < success.size(); ++i) CHECK(success[i] <= success[i - 1] + 0.02);
}

TEST_CASE("is_success boundary is inclusive") {
  CHECK(is_success(0.0, 0.0469));
  CHECK(is_success(0.0469, 0.0469));
  CHECK_FALSE(is_success(0.05, 0.0469));
}
