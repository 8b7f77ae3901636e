#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <vector>

#include "qce/errors.hpp"

namespace qce {

using cxd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Ordered subsystem dimensions of a composite space, e.g. {2,2} for two qubits.
/// Composite indices are row-major: the first subsystem varies slowest.
struct DimSpec {
  std::vector<std::size_t> dims;

  DimSpec() = default;
  DimSpec(std::initializer_list<std::size_t> d) : dims(d) {}
  explicit DimSpec(std::vector<std::size_t> d) : dims(std::move(d)) {}

  std::size_t size() const { return dims.size(); }
  std::size_t operator[](std::size_t i) const { return dims[i]; }
  std::size_t product() const;
  bool is_bipartite() const { return dims.size() == 2; }

  /// Throws DimensionError unless product() == n and all dims are positive.
  void check_matches(std::size_t n) const;

  bool operator==(const DimSpec& o) const { return dims == o.dims; }
};

CMatrix identity_matrix(std::size_t n);

CMatrix dagger(const CMatrix& m);

/// True iff no entry is NaN or infinite.
bool all_finite(const CMatrix& m);

/// max_ij |m - m^dag|_ij; zero for exactly Hermitian input.
double hermiticity_defect(const CMatrix& m);

/// Kronecker product; dimensions multiply.
CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(const CVector& a, const CVector& b);

/// Trace out every subsystem not listed in `keep` (strictly increasing indices).
/// Result lives on the kept subsystems in their original order.
CMatrix partial_trace(const CMatrix& m, const DimSpec& dims, const std::vector<std::size_t>& keep);

/// Transpose the single subsystem `part`, leaving the others untouched.
CMatrix partial_transpose(const CMatrix& m, const DimSpec& dims, std::size_t part);

/// Eigenvalues of a Hermitian matrix, descending. Input is symmetrized first;
/// throws ValidationError if the hermiticity defect exceeds `tol`.
std::vector<double> herm_eigvals(const CMatrix& m, double tol = 1e-10);

/// Smallest eigenvalue of a Hermitian matrix (same tolerance contract).
double min_herm_eigenvalue(const CMatrix& m, double tol = 1e-10);

/// Sum of singular values.
double trace_norm(const CMatrix& m);

/// 0.5 * ||a - b||_1, the trace distance.
double trace_distance(const CMatrix& a, const CMatrix& b);

// Pauli matrices.
const CMatrix& pauli_x();
const CMatrix& pauli_y();
const CMatrix& pauli_z();

}  // namespace qce
