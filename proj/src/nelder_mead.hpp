#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <functional>
#include <vector>

namespace qce::detail {

struct SimplexResult {
  Eigen::VectorXd x;
  double value = 0;
  int iterations = 0;
};

/// Plain Nelder-Mead downhill simplex with standard coefficients.
/// Stops when the simplex value spread falls below ftol or max_iter is hit.
inline SimplexResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                                 const Eigen::VectorXd& x0, double initial_step, int max_iter,
                                 double ftol) {
  const int n = static_cast<int>(x0.size());
  std::vector<Eigen::VectorXd> pts(static_cast<std::size_t>(n) + 1, x0);
  for (int i = 0; i < n; ++i) pts[static_cast<std::size_t>(i) + 1](i) += initial_step;

  std::vector<double> vals(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = f(pts[i]);

  auto order = [&] {
    std::vector<std::size_t> idx(pts.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    std::vector<Eigen::VectorXd> p2;
    std::vector<double> v2;
    for (std::size_t i : idx) {
      p2.push_back(pts[i]);
      v2.push_back(vals[i]);
    }
    pts.swap(p2);
    vals.swap(v2);
  };

  int iter = 0;
  for (; iter < max_iter; ++iter) {
    order();
    if (vals.back() - vals.front() < ftol) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) centroid += pts[i];
    centroid /= static_cast<double>(n);

    const Eigen::VectorXd reflected = centroid + (centroid - pts.back());
    const double fr = f(reflected);
    if (fr < vals.front()) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - pts.back());
      const double fe = f(expanded);
      if (fe < fr) {
        pts.back() = expanded;
        vals.back() = fe;
      } else {
        pts.back() = reflected;
        vals.back() = fr;
      }
      continue;
    }
    if (fr < vals[vals.size() - 2]) {
      pts.back() = reflected;
      vals.back() = fr;
      continue;
    }
    const Eigen::VectorXd contracted = centroid + 0.5 * (pts.back() - centroid);
    const double fc = f(contracted);
    if (fc < vals.back()) {
      pts.back() = contracted;
      vals.back() = fc;
      continue;
    }
    // shrink toward the best vertex
    for (std::size_t i = 1; i < pts.size(); ++i) {
      pts[i] = pts[0] + 0.5 * (pts[i] - pts[0]);
      vals[i] = f(pts[i]);
    }
  }
  order();
  return SimplexResult{pts.front(), vals.front(), iter};
}

}  // namespace qce::detail
