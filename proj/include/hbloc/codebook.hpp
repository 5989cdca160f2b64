#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hbloc/beam_model.hpp"

namespace hbloc {

/// Uniform linear/planar array along x. N must be a power of two so the
/// binary-tree codebook depth is log2(N).
struct ArrayGeometry {
  int n_elements;     // along x
  double dx;          // element pitch along x (m)
  double dy;          // element pitch along y (m)
  double carrier_hz;

  double lambda() const { return wavelength_m(carrier_hz); }
  double k() const { return wavenumber_rad_m(carrier_hz); }
  int depth() const;  // log2(n_elements); throws ConfigError if not a power of two

  static ArrayGeometry half_wavelength(int n_elements, double carrier_hz);
};

enum class CodebookKind { bfr, rbfr, bfc };

std::string to_string(CodebookKind kind);
CodebookKind codebook_kind_from_string(const std::string& name);

/// One beam-forming direction: beam centers live on a uniform sine-space grid,
/// level l splits (-1, 1) into 2^l cells.
struct DirectionCodeword {
  int level;       // 1-based
  int index;       // 1-based within level
  double u_center; // sin of steering angle
  double steer_rad;
  double w;        // footprint radius used to form this beam (m)
};

/// One beam-focusing codeword: a focal cell along the range axis plus the
/// (f0, wx) design that realizes it.
struct FocusCodeword {
  int level;
  int index;
  double d_f;
  double r_max;
  double f0;
  double wx;
};

struct DirectionCodebook {
  CodebookKind kind = CodebookKind::bfr;
  ArrayGeometry geom{};
  int freeze_level = 0;  // 0 for plain Bfr; R-bfr freezes footprints above this level
  std::vector<std::vector<DirectionCodeword>> levels;  // levels[l-1] holds 2^l entries

  int depth() const { return static_cast<int>(levels.size()); }
  const DirectionCodeword& at(int level, int index) const;
  nlohmann::json to_json() const;
};

struct FocusCodebook {
  double d0 = 0.0;
  double alpha = 0.0;
  double k = 0.0;
  std::vector<std::vector<FocusCodeword>> levels;

  int depth() const { return static_cast<int>(levels.size()); }
  const FocusCodeword& at(int level, int index) const;
  /// Ranging resolution of the deepest level, r_max(L_r).
  double resolution() const;
  nlohmann::json to_json() const;
};

/// Sine-space half-width of a level-l cell, 2^-l.
double cell_halfwidth(int level);

DirectionCodebook build_bfr(const ArrayGeometry& geom, int depth);
DirectionCodebook build_rbfr(const DirectionCodebook& bfr, int freeze_level);
FocusCodebook build_bfc(double d0, double alpha, int depth, double k);

/// Child codeword indices in the next level: [2i-1, 2i].
std::pair<int, int> children(int index);

/// Indices at entry_level whose sine-space cell intersects [-sin(theta_max), sin(theta_max)].
std::vector<int> entry_codewords(const DirectionCodebook& cb, int entry_level, double theta_max);

struct PilotCounts {
  std::int64_t exhaustive;
  std::int64_t binary_tree;
};

/// Pilot cost of a K-level search: full last-level sweep vs tree descent.
PilotCounts pilot_counts(int levels);

}  // namespace hbloc
