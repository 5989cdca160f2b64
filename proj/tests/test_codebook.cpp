#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

#include "hbloc/codebook.hpp"

using namespace hbloc;

namespace {
constexpr double kCarrier = 150e9;
ArrayGeometry geom_for_depth(int depth) {
  return ArrayGeometry::half_wavelength(1 << depth, kCarrier);
}
}  // namespace

TEST_CASE("bfr level 1 beams at +-30 degrees") {
  const DirectionCodebook cb = build_bfr(geom_for_depth(10), 10);
  CHECK(cb.at(1, 1).u_center == doctest::Approx(-0.5));
  CHECK(cb.at(1, 2).u_center == doctest::Approx(0.5));
  CHECK(rad_to_deg(cb.at(1, 1).steer_rad) == doctest::Approx(-30.0));
  CHECK(rad_to_deg(cb.at(1, 2).steer_rad) == doctest::Approx(30.0));
}

TEST_CASE("bfr level-9 footprint") {
  const DirectionCodebook cb = build_bfr(geom_for_depth(10), 10);
  CHECK(cb.at(9, 1).w == doctest::Approx(0.25582).epsilon(1e-4));
}

TEST_CASE("bfr levels tile sine-space without gaps") {
  const DirectionCodebook cb = build_bfr(geom_for_depth(6), 6);
  for (int l = 1; l <= 6; ++l) {
    CHECK(static_cast<int>(cb.levels[l - 1].size()) == (1 << l));
    const double h = cell_halfwidth(l);
    double total = 0.0;
    double prev_edge = -1.0;
    for (const auto& cw : cb.levels[l - 1]) {
      CHECK(cw.u_center - h == doctest::Approx(prev_edge).epsilon(1e-12));
      prev_edge = cw.u_center + h;
      total += 2.0 * h;
    }
    CHECK(prev_edge == doctest::Approx(1.0));
    CHECK(total == doctest::Approx(2.0));
  }
}

TEST_CASE("bfr rejects non power-of-two arrays") {
  ArrayGeometry geom = geom_for_depth(4);
  geom.n_elements = 12;
  CHECK_THROWS_AS(build_bfr(geom, 4), ConfigError);
}

TEST_CASE("rbfr freezes footprints above the freeze level") {
  const DirectionCodebook bfr = build_bfr(geom_for_depth(10), 10);
  const DirectionCodebook rbfr = build_rbfr(bfr, 7);
  CHECK(rbfr.at(7, 1).w == doctest::Approx(0.063956).epsilon(1e-4));
  CHECK(rbfr.at(10, 1).w == doctest::Approx(rbfr.at(7, 1).w));
  CHECK(rayleigh_length(rbfr.at(10, 1).w, bfr.geom.k()) == doctest::Approx(6.43).epsilon(1e-2));
  for (int l = 1; l <= 7; ++l)
    for (std::size_t i = 0; i < rbfr.levels[l - 1].size(); ++i) {
      CHECK(rbfr.levels[l - 1][i].w == bfr.levels[l - 1][i].w);
      CHECK(rbfr.levels[l - 1][i].u_center == bfr.levels[l - 1][i].u_center);
    }
  // freezing at the top changes nothing
  const DirectionCodebook same = build_rbfr(bfr, 10);
  for (int l = 1; l <= 10; ++l)
    for (std::size_t i = 0; i < same.levels[l - 1].size(); ++i)
      CHECK(same.levels[l - 1][i].w == bfr.levels[l - 1][i].w);
  CHECK_THROWS_AS(build_rbfr(bfr, 0), ConfigError);
  CHECK_THROWS_AS(build_rbfr(bfr, 11), ConfigError);
}

TEST_CASE("bfc focal distances and radii per level") {
  const double k = wavenumber_rad_m(kCarrier);
  const FocusCodebook cb = build_bfc(5.0, 0.3, 6, k);
  CHECK(cb.at(1, 1).d_f == doctest::Approx(1.25));
  CHECK(cb.at(1, 2).d_f == doctest::Approx(3.75));
  CHECK(cb.at(1, 1).r_max == doctest::Approx(1.5));
  CHECK(cb.at(6, 1).r_max == doctest::Approx(0.046875));

  // one extra level at d0=10 recovers the d0=5 resolution
  const FocusCodebook wide = build_bfc(10.0, 0.3, 7, k);
  CHECK(wide.at(7, 1).r_max == doctest::Approx(cb.at(6, 1).r_max));
}

TEST_CASE("bfc codewords reproduce their ellipse through the forward formulas") {
  const double k = wavenumber_rad_m(kCarrier);
  const FocusCodebook cb = build_bfc(5.0, 0.3, 6, k);
  for (const auto& row : cb.levels)
    for (const auto& cw : row) {
      const double z_r = rayleigh_length(cw.wx, k);
      CHECK(focal_distance(cw.f0, z_r) == doctest::Approx(cw.d_f).epsilon(1e-9));
      CHECK(focal_major_radius(cw.f0, z_r) == doctest::Approx(cw.r_max).epsilon(1e-9));
    }
}

TEST_CASE("alpha=0.25 makes adjacent ellipses tangent") {
  const FocusCodebook cb = build_bfc(5.0, 0.25, 4, wavenumber_rad_m(kCarrier));
  for (const auto& row : cb.levels)
    for (std::size_t i = 0; i + 1 < row.size(); ++i)
      CHECK(row[i].d_f + row[i].r_max == doctest::Approx(row[i + 1].d_f - row[i + 1].r_max));
}

TEST_CASE("bfc coverage and bounded overlap across alpha range") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> alpha_dist(0.25, 0.5);
  std::uniform_real_distribution<double> d0_dist(1.0, 20.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double alpha = alpha_dist(rng);
    const double d0 = d0_dist(rng);
    const FocusCodebook cb = build_bfc(d0, alpha, 6, wavenumber_rad_m(kCarrier));
    for (const auto& row : cb.levels) {
      // no interior gaps
      for (std::size_t i = 0; i + 1 < row.size(); ++i)
        CHECK(row[i].d_f + row[i].r_max >= row[i + 1].d_f - row[i + 1].r_max - 1e-12);
      // no point interior to more than two intervals
      for (std::size_t i = 0; i + 2 < row.size(); ++i)
        CHECK(row[i].d_f + row[i].r_max <= row[i + 2].d_f - row[i + 2].r_max + 1e-12);
    }
  }
}

TEST_CASE("children occupy exactly the parent's cell") {
  CHECK(children(1) == std::pair<int, int>{1, 2});
  CHECK(children(3) == std::pair<int, int>{5, 6});
  CHECK_THROWS_AS(children(0), ConfigError);

  const DirectionCodebook cb = build_bfr(geom_for_depth(8), 8);
  for (int l = 1; l < 8; ++l) {
    const double h = cell_halfwidth(l);
    const double hc = cell_halfwidth(l + 1);
    for (const auto& cw : cb.levels[l - 1]) {
      const auto [lo, hi] = children(cw.index);
      CHECK(lo >= 1);
      CHECK(hi <= (1 << (l + 1)));
      const auto& left = cb.at(l + 1, lo);
      const auto& right = cb.at(l + 1, hi);
      CHECK(left.u_center == doctest::Approx(cw.u_center - h / 2.0).epsilon(1e-12));
      CHECK(right.u_center == doctest::Approx(cw.u_center + h / 2.0).epsilon(1e-12));
      CHECK(left.u_center - hc == doctest::Approx(cw.u_center - h).epsilon(1e-12));
      CHECK(right.u_center + hc == doctest::Approx(cw.u_center + h).epsilon(1e-12));
    }
  }
}

TEST_CASE("bfc children halve the parent's distance interval") {
  const FocusCodebook cb = build_bfc(5.0, 0.3, 6, wavenumber_rad_m(kCarrier));
  for (int l = 1; l < 6; ++l) {
    const double quarter = (5.0 / (1 << l)) / 4.0;
    for (const auto& cw : cb.levels[l - 1]) {
      const auto [lo, hi] = children(cw.index);
      CHECK(cb.at(l + 1, lo).d_f == doctest::Approx(cw.d_f - quarter).epsilon(1e-12));
      CHECK(cb.at(l + 1, hi).d_f == doctest::Approx(cw.d_f + quarter).epsilon(1e-12));
    }
  }
}

TEST_CASE("entry codewords") {
  const DirectionCodebook cb = build_bfr(geom_for_depth(10), 10);
  const auto ids = entry_codewords(cb, 4, deg_to_rad(25.0));
  CHECK(ids == std::vector<int>{5, 6, 7, 8, 9, 10, 11, 12});
  CHECK(entry_codewords(cb, 1, deg_to_rad(25.0)) == std::vector<int>{1, 2});
  CHECK(entry_codewords(cb, 3, deg_to_rad(89.9)).size() == 8);
}

TEST_CASE("pilot counts") {
  const PilotCounts k10 = pilot_counts(10);
  CHECK(k10.exhaustive == 1024);
  CHECK(k10.binary_tree == 20);
  CHECK(pilot_counts(1).exhaustive == 2);
  CHECK(pilot_counts(1).binary_tree == 2);
  CHECK(pilot_counts(6).exhaustive == 64);
  CHECK(pilot_counts(6).binary_tree == 12);
}

TEST_CASE("bfc json dump matches the golden file") {
  const FocusCodebook cb = build_bfc(5.0, 0.3, 3, wavenumber_rad_m(kCarrier));
  const nlohmann::json dump = cb.to_json();

  std::ifstream in(std::string(HBLOC_TEST_DIR) + "/golden/bfc_d0_5_alpha_0.3_l3.json");
  REQUIRE(in.good());
  nlohmann::json golden;
  in >> golden;

  CHECK(dump.at("kind") == golden.at("kind"));
  CHECK(dump.at("params").at("d0_m") == golden.at("params").at("d0_m"));
  CHECK(dump.at("params").at("alpha") == golden.at("params").at("alpha"));
  REQUIRE(dump.at("levels").size() == golden.at("levels").size());
  for (std::size_t l = 0; l < golden.at("levels").size(); ++l) {
    const auto& grow = golden.at("levels")[l];
    const auto& drow = dump.at("levels")[l];
    REQUIRE(drow.size() == grow.size());
    for (std::size_t i = 0; i < grow.size(); ++i) {
      CHECK(drow[i].at("level") == grow[i].at("level"));
      CHECK(drow[i].at("index") == grow[i].at("index"));
      for (const char* field : {"d_f", "r_max", "f_0", "w_x"})
        CHECK(drow[i].at(field).get<double>() ==
              doctest::Approx(grow[i].at(field).get<double>()).epsilon(1e-12));
    }
  }
}

TEST_CASE("direction json dump has the fixed field names") {
  const DirectionCodebook cb = build_rbfr(build_bfr(geom_for_depth(3), 3), 2);
  const nlohmann::json dump = cb.to_json();
  CHECK(dump.at("kind") == "rbfr");
  CHECK(dump.at("params").at("freeze_level") == 2);
  const auto& cw = dump.at("levels")[0][0];
  for (const char* field : {"level", "index", "u_c", "theta_c", "w"}) CHECK(cw.contains(field));
}
