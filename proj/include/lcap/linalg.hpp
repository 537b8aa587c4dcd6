#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace lcap {

using cplx = std::complex<double>;

// Dense row-major complex matrix. Dimensions here never exceed a few tens,
// so everything is plain loops over a std::vector.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const cplx> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix conj() const;
  cplx trace() const;

  // Largest absolute entry.
  double max_abs() const;
  double frobenius_norm() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cplx scale);

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(cplx scale, ComplexMatrix m);

// ‖A − B‖_max; dimensions must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// ‖M − M†‖_max.
double hermiticity_defect(const ComplexMatrix& m);

/// Kronecker product. Row index of entry A_ij·B_kl is i·rows(B)+k.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

struct Spectrum {
  std::vector<double> eigenvalues;  // descending
  ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Throws NotSquare, NotHermitian (asymmetry above 1e-10) or
/// ConvergenceFailure (100 sweeps without the off-diagonal norm dropping
/// below 1e-14 relative to the Frobenius norm). Eigenvalues come back in
/// descending order; ties keep the order in which Jacobi produced them.
Spectrum hermitian_eigensystem(const ComplexMatrix& m);

// Eigenvalues only; same contract as hermitian_eigensystem.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// Shannon/von Neumann entropy of a probability vector in bits.
/// Entries in [-1e-10, 0) are treated as zero; anything lower throws
/// NegativeProbability. The sum must be 1 within 1e-8 (NotNormalized).
double entropy_bits(std::span<const double> probabilities);

}  // namespace lcap
