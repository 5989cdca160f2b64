#include "hbloc/codebook.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace hbloc {

int ArrayGeometry::depth() const {
  if (n_elements < 2 || (n_elements & (n_elements - 1)) != 0)
    throw ConfigError("array size must be a power of two >= 2");
  int l = 0;
  for (int n = n_elements; n > 1; n >>= 1) ++l;
  return l;
}

ArrayGeometry ArrayGeometry::half_wavelength(int n_elements, double carrier_hz) {
  const double pitch = wavelength_m(carrier_hz) / 2.0;
  ArrayGeometry geom{n_elements, pitch, pitch, carrier_hz};
  geom.depth();  // validate
  return geom;
}

std::string to_string(CodebookKind kind) {
  switch (kind) {
    case CodebookKind::bfr: return "bfr";
    case CodebookKind::rbfr: return "rbfr";
    case CodebookKind::bfc: return "bfc";
  }
  throw ConfigError("unknown codebook kind");
}

CodebookKind codebook_kind_from_string(const std::string& name) {
  if (name == "bfr") return CodebookKind::bfr;
  if (name == "rbfr") return CodebookKind::rbfr;
  if (name == "bfc") return CodebookKind::bfc;
  throw ConfigError("unknown codebook kind: " + name);
}

const DirectionCodeword& DirectionCodebook::at(int level, int index) const {
  if (level < 1 || level > depth()) throw ConfigError("codebook level out of range");
  const auto& row = levels[static_cast<std::size_t>(level - 1)];
  if (index < 1 || index > static_cast<int>(row.size()))
    throw ConfigError("codeword index out of range");
  return row[static_cast<std::size_t>(index - 1)];
}

const FocusCodeword& FocusCodebook::at(int level, int index) const {
  if (level < 1 || level > depth()) throw ConfigError("codebook level out of range");
  const auto& row = levels[static_cast<std::size_t>(level - 1)];
  if (index < 1 || index > static_cast<int>(row.size()))
    throw ConfigError("codeword index out of range");
  return row[static_cast<std::size_t>(index - 1)];
}

double FocusCodebook::resolution() const {
  if (levels.empty()) throw ConfigError("empty focus codebook");
  return levels.back().front().r_max;
}

double cell_halfwidth(int level) { return std::ldexp(1.0, -level); }

DirectionCodebook build_bfr(const ArrayGeometry& geom, int depth) {
  if (depth != geom.depth())
    throw ConfigError("direction codebook depth must equal log2(array size)");

  DirectionCodebook cb;
  cb.kind = CodebookKind::bfr;
  cb.geom = geom;
  cb.levels.resize(static_cast<std::size_t>(depth));
  for (int l = 1; l <= depth; ++l) {
    // Sub-aperture of 2^l elements: footprint half the sub-aperture extent.
    const double w = std::ldexp(1.0, l - 1) * geom.dx;
    const int count = 1 << l;
    auto& row = cb.levels[static_cast<std::size_t>(l - 1)];
    row.reserve(static_cast<std::size_t>(count));
    for (int i = 1; i <= count; ++i) {
      const double u = -1.0 + (2.0 * i - 1.0) / count;
      row.push_back(DirectionCodeword{l, i, u, std::asin(u), w});
    }
  }
  return cb;
}

DirectionCodebook build_rbfr(const DirectionCodebook& bfr, int freeze_level) {
  if (freeze_level < 1 || freeze_level > bfr.depth())
    throw ConfigError("R-bfr freeze level out of range");

  DirectionCodebook cb = bfr;
  cb.kind = CodebookKind::rbfr;
  cb.freeze_level = freeze_level;
  const double frozen_w = bfr.at(freeze_level, 1).w;
  for (int l = freeze_level + 1; l <= cb.depth(); ++l)
    for (auto& cw : cb.levels[static_cast<std::size_t>(l - 1)]) cw.w = frozen_w;
  return cb;
}

FocusCodebook build_bfc(double d0, double alpha, int depth, double k) {
  if (!(d0 > 0.0) || !(alpha > 0.0) || !(k > 0.0) || depth < 1)
    throw ConfigError("build_bfc: invalid parameters");

  FocusCodebook cb;
  cb.d0 = d0;
  cb.alpha = alpha;
  cb.k = k;
  cb.levels.resize(static_cast<std::size_t>(depth));
  const double df11 = d0 / 4.0;
  for (int l = 1; l <= depth; ++l) {
    const double scale = df11 / std::ldexp(1.0, l - 1);
    const double r_max = alpha * d0 / std::ldexp(1.0, l - 1);
    const int count = 1 << l;
    auto& row = cb.levels[static_cast<std::size_t>(l - 1)];
    row.reserve(static_cast<std::size_t>(count));
    for (int i = 1; i <= count; ++i) {
      const double d_f = scale * (2.0 * i - 1.0);
      const FocusDesign design = invert_focus(d_f, r_max, k);
      row.push_back(FocusCodeword{l, i, d_f, r_max, design.f0, design.wx});
    }
  }
  return cb;
}

std::pair<int, int> children(int index) {
  if (index < 1) throw ConfigError("codeword index must be >= 1");
  return {2 * index - 1, 2 * index};
}

std::vector<int> entry_codewords(const DirectionCodebook& cb, int entry_level, double theta_max) {
  if (entry_level < 1 || entry_level > cb.depth())
    throw ConfigError("entry level out of range");
  if (!(theta_max > 0.0)) throw ConfigError("theta_max must be positive");

  const double u_max = std::sin(theta_max);
  const double h = cell_halfwidth(entry_level);
  std::vector<int> out;
  for (const auto& cw : cb.levels[static_cast<std::size_t>(entry_level - 1)])
    if (cw.u_center - h <= u_max && cw.u_center + h >= -u_max) out.push_back(cw.index);
  return out;
}

PilotCounts pilot_counts(int levels) {
  if (levels < 1) throw ConfigError("pilot_counts: levels must be >= 1");
  return PilotCounts{std::int64_t{1} << levels, 2 * static_cast<std::int64_t>(levels)};
}

nlohmann::json DirectionCodebook::to_json() const {
  nlohmann::json params = {
      {"n_elements", geom.n_elements},
      {"dx_m", geom.dx},
      {"dy_m", geom.dy},
      {"carrier_hz", geom.carrier_hz},
  };
  if (kind == CodebookKind::rbfr) params["freeze_level"] = freeze_level;

  nlohmann::json level_arrays = nlohmann::json::array();
  for (const auto& row : levels) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& cw : row)
      arr.push_back({{"level", cw.level},
                     {"index", cw.index},
                     {"u_c", cw.u_center},
                     {"theta_c", cw.steer_rad},
                     {"w", cw.w}});
    level_arrays.push_back(std::move(arr));
  }
  return {{"kind", to_string(kind)}, {"params", params}, {"levels", level_arrays}};
}

nlohmann::json FocusCodebook::to_json() const {
  nlohmann::json level_arrays = nlohmann::json::array();
  for (const auto& row : levels) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& cw : row)
      arr.push_back({{"level", cw.level},
                     {"index", cw.index},
                     {"d_f", cw.d_f},
                     {"r_max", cw.r_max},
                     {"f_0", cw.f0},
                     {"w_x", cw.wx}});
    level_arrays.push_back(std::move(arr));
  }
  return {{"kind", "bfc"},
          {"params", {{"d0_m", d0}, {"alpha", alpha}, {"wavenumber_rad_m", k}}},
          {"levels", level_arrays}};
}

}  // namespace hbloc
