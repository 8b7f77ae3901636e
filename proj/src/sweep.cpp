#include "qce/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <thread>

#include "qce/channels.hpp"
#include "qce/entropy.hpp"

namespace qce {

namespace {

// Deterministic parallel map: results land by index regardless of scheduling.
void parallel_for_index(std::size_t n, const std::function<void(std::size_t)>& body) {
  unsigned workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = std::min<unsigned>(workers, 8);
  if (n < 256 || workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      for (std::size_t i = begin; i < end; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

double SweepGrid::alpha_at(std::size_t i) const {
  return M_PI * static_cast<double>(i) / static_cast<double>(alpha_steps - 1);
}

double SweepGrid::p_at(std::size_t j) const {
  return p_from + (p_to - p_from) * static_cast<double>(j) / static_cast<double>(p_steps - 1);
}

SweepGrid sweep_alpha_p(std::size_t alpha_steps, std::size_t p_steps, double p_from, double p_to) {
  if (alpha_steps < 2 || p_steps < 2) throw ValidationError("sweep needs at least 2 steps per axis");
  if (p_from < 0 || p_to > 1 || p_from >= p_to) throw ValidationError("invalid p range");

  SweepGrid grid;
  grid.alpha_steps = alpha_steps;
  grid.p_steps = p_steps;
  grid.p_from = p_from;
  grid.p_to = p_to;
  grid.cond_entropy.assign(alpha_steps * p_steps, 0.0);

  parallel_for_index(alpha_steps * p_steps, [&](std::size_t cell) {
    const std::size_t i = cell / p_steps;
    const std::size_t j = cell % p_steps;
    const DensityOperator in = alpha_state(grid.alpha_at(i));
    const DensityOperator out = apply_to_B(depolarizing(2, grid.p_at(j)), in);
    grid.cond_entropy[cell] = conditional_entropy(out, 1);
  });
  return grid;
}

std::string format_csv_value(double v) {
  if (v == 0.0) v = 0.0;  // flatten -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_sweep_csv(const SweepGrid& grid, std::ostream& os) {
  os << "alpha,p,cond_entropy\n";
  for (std::size_t i = 0; i < grid.alpha_steps; ++i)
    for (std::size_t j = 0; j < grid.p_steps; ++j)
      os << format_csv_value(grid.alpha_at(i)) << ',' << format_csv_value(grid.p_at(j)) << ','
         << format_csv_value(grid.at(i, j)) << '\n';
}

std::vector<TetraSample> bell_tetra_sweep(double p, std::size_t samples, std::uint64_t seed) {
  if (p < 0 || p > 1) throw ValidationError("mixing parameter must lie in [0, 1]");
  const auto params = sample_tetrahedron(samples, seed);
  const KrausChannel channel = depolarizing(2, p);

  std::vector<TetraSample> rows(samples);
  parallel_for_index(samples, [&](std::size_t i) {
    const DensityOperator rho = bell_diagonal(params[i]);
    rows[i].params = params[i];
    rows[i].s_before = conditional_entropy(rho, 1);
    rows[i].s_after = conditional_entropy(apply_to_B(channel, rho), 1);
  });
  return rows;
}

void write_tetra_csv(const std::vector<TetraSample>& rows, std::ostream& os) {
  os << "c1,c2,c3,S_before,S_after\n";
  for (const auto& r : rows)
    os << format_csv_value(r.params.c1) << ',' << format_csv_value(r.params.c2) << ','
       << format_csv_value(r.params.c3) << ',' << format_csv_value(r.s_before) << ','
       << format_csv_value(r.s_after) << '\n';
}

}  // namespace qce
