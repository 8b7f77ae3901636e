#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qce/states.hpp"

namespace qce {

/// Rectangular (alpha, p) grid of output conditional entropies for the
/// pure-entangled-state family sent through id (x) qubit depolarizing.
/// Values are stored row-major with alpha slowest.
struct SweepGrid {
  std::size_t alpha_steps = 0;
  std::size_t p_steps = 0;
  double p_from = 0;
  double p_to = 1;
  std::vector<double> cond_entropy;  // alpha_steps * p_steps

  double alpha_at(std::size_t i) const;
  double p_at(std::size_t j) const;
  double at(std::size_t i, std::size_t j) const { return cond_entropy[i * p_steps + j]; }
};

/// Defaults match the published contour resolution: 181 alpha x 101 p.
SweepGrid sweep_alpha_p(std::size_t alpha_steps = 181, std::size_t p_steps = 101,
                        double p_from = 0.0, double p_to = 1.0);

/// CSV with header alpha,p,cond_entropy; 12 significant digits; final newline.
void write_sweep_csv(const SweepGrid& grid, std::ostream& os);

struct TetraSample {
  BellDiagonalParams params;
  double s_before = 0;
  double s_after = 0;
};

/// Conditional entropy of sampled Bell-diagonal states before and after
/// id (x) depolarizing(2, p). Deterministic per seed.
std::vector<TetraSample> bell_tetra_sweep(double p, std::size_t samples, std::uint64_t seed);

/// CSV with header c1,c2,c3,S_before,S_after.
void write_tetra_csv(const std::vector<TetraSample>& rows, std::ostream& os);

/// Shared numeric formatting for CSV output: %.12g with -0 canonicalized.
std::string format_csv_value(double v);

}  // namespace qce
