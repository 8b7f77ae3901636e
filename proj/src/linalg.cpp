#include "qce/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <numeric>

namespace qce {

std::size_t DimSpec::product() const {
  std::size_t p = 1;
  for (std::size_t d : dims) p *= d;
  return p;
}

void DimSpec::check_matches(std::size_t n) const {
  if (dims.empty()) throw DimensionError("DimSpec is empty");
  for (std::size_t d : dims)
    if (d == 0) throw DimensionError("DimSpec contains a zero dimension");
  if (product() != n)
    throw DimensionError("DimSpec product " + std::to_string(product()) +
                         " does not match matrix dimension " + std::to_string(n));
}

CMatrix identity_matrix(std::size_t n) { return CMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)); }

CMatrix dagger(const CMatrix& m) { return m.adjoint(); }

bool all_finite(const CMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

double hermiticity_defect(const CMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("hermiticity defect of a non-square matrix");
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

namespace {

// Row-major strides: index = sum_k i_k * stride_k, first subsystem slowest.
std::vector<std::size_t> strides_of(const DimSpec& dims) {
  std::vector<std::size_t> s(dims.size());
  std::size_t acc = 1;
  for (std::size_t k = dims.size(); k-- > 0;) {
    s[k] = acc;
    acc *= dims[k];
  }
  return s;
}

}  // namespace

CMatrix partial_trace(const CMatrix& m, const DimSpec& dims, const std::vector<std::size_t>& keep) {
  if (m.rows() != m.cols()) throw DimensionError("partial trace of a non-square matrix");
  dims.check_matches(static_cast<std::size_t>(m.rows()));
  if (keep.empty()) throw DimensionError("partial trace must keep at least one subsystem");
  for (std::size_t k = 0; k < keep.size(); ++k) {
    if (keep[k] >= dims.size()) throw DimensionError("partial trace keep index out of range");
    if (k > 0 && keep[k] <= keep[k - 1])
      throw DimensionError("partial trace keep indices must be strictly increasing");
  }

  std::vector<std::size_t> traced;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (!std::binary_search(keep.begin(), keep.end(), k)) traced.push_back(k);

  const auto stride = strides_of(dims);
  std::size_t keep_dim = 1, traced_dim = 1;
  for (std::size_t k : keep) keep_dim *= dims[k];
  for (std::size_t k : traced) traced_dim *= dims[k];

  // Offsets contributed by each composite kept (resp. traced) index.
  auto offsets = [&](const std::vector<std::size_t>& subs, std::size_t total) {
    std::vector<std::size_t> off(total, 0);
    for (std::size_t x = 0; x < total; ++x) {
      std::size_t rem = x;
      for (std::size_t k = subs.size(); k-- > 0;) {
        off[x] += (rem % dims[subs[k]]) * stride[subs[k]];
        rem /= dims[subs[k]];
      }
    }
    return off;
  };
  const auto keep_off = offsets(keep, keep_dim);
  const auto traced_off = offsets(traced, traced_dim);

  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(keep_dim), static_cast<Eigen::Index>(keep_dim));
  for (std::size_t r = 0; r < keep_dim; ++r)
    for (std::size_t c = 0; c < keep_dim; ++c) {
      cxd acc{0.0, 0.0};
      for (std::size_t t = 0; t < traced_dim; ++t)
        acc += m(static_cast<Eigen::Index>(keep_off[r] + traced_off[t]),
                 static_cast<Eigen::Index>(keep_off[c] + traced_off[t]));
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
    }
  return out;
}

CMatrix partial_transpose(const CMatrix& m, const DimSpec& dims, std::size_t part) {
  if (m.rows() != m.cols()) throw DimensionError("partial transpose of a non-square matrix");
  dims.check_matches(static_cast<std::size_t>(m.rows()));
  if (part >= dims.size()) throw DimensionError("partial transpose subsystem index out of range");

  const auto stride = strides_of(dims);
  const std::size_t n = static_cast<std::size_t>(m.rows());
  const std::size_t dp = dims[part];
  const std::size_t sp = stride[part];

  CMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ip = (i / sp) % dp;
    const std::size_t ibase = i - ip * sp;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t jp = (j / sp) % dp;
      const std::size_t jbase = j - jp * sp;
      // swap the `part` component between row and column index
      out(static_cast<Eigen::Index>(ibase + jp * sp), static_cast<Eigen::Index>(jbase + ip * sp)) =
          m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

std::vector<double> herm_eigvals(const CMatrix& m, double tol) {
  const double defect = hermiticity_defect(m);
  // inverted comparison so NaN defects are rejected too
  if (!(defect <= tol))
    throw ValidationError("matrix is not Hermitian (defect " + std::to_string(defect) + ")");
  const CMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("Hermitian eigensolver failed to converge");
  const auto& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::reverse(out.begin(), out.end());
  return out;
}

double min_herm_eigenvalue(const CMatrix& m, double tol) {
  auto ev = herm_eigvals(m, tol);
  return ev.back();
}

double trace_norm(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues().sum();
}

double trace_distance(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("trace distance of mismatched matrices");
  return 0.5 * trace_norm(a - b);
}

const CMatrix& pauli_x() {
  static const CMatrix m = [] {
    CMatrix x(2, 2);
    x << 0, 1, 1, 0;
    return x;
  }();
  return m;
}

const CMatrix& pauli_y() {
  static const CMatrix m = [] {
    CMatrix y(2, 2);
    y << cxd(0, 0), cxd(0, -1), cxd(0, 1), cxd(0, 0);
    return y;
  }();
  return m;
}

const CMatrix& pauli_z() {
  static const CMatrix m = [] {
    CMatrix z(2, 2);
    z << 1, 0, 0, -1;
    return z;
  }();
  return m;
}

}  // namespace qce
