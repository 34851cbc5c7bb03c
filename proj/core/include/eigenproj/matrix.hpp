#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace eigenproj {

using Complex = std::complex<double>;

/// Numerical tolerances shared by every stage of the pipeline.
///
/// `eig_cluster_radius` is relative: the absolute radius used when grouping
/// eigenvalues is `eig_cluster_radius * max(1, largest |eigenvalue|)`.
/// `rank_rel_threshold` is relative to the largest singular value.
struct ToleranceConfig {
  double eig_cluster_radius = 1e-8;
  double rank_rel_threshold = 1e-10;
  double verify_tol = 1e-8;

  /// Throws PreconditionError unless all three values are strictly positive
  /// and finite.
  void validate() const;
};

/// Dense square complex matrix stored row-major.
class Matrix {
 public:
  /// n x n zero matrix; n must be positive.
  explicit Matrix(std::size_t n);
  /// Takes ownership of n*n row-major entries; rejects non-finite values.
  Matrix(std::size_t n, std::vector<Complex> entries);
  /// Row-by-row literal, e.g. `Matrix{{0, 1}, {0, 0}}`.
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t n) { return Matrix(n); }
  static Matrix diagonal(std::span<const Complex> diag);
  static Matrix diagonal(std::initializer_list<Complex> diag);

  std::size_t n() const noexcept { return n_; }

  Complex operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }

  std::span<const Complex> entries() const noexcept { return data_; }

  bool all_finite() const noexcept;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(Complex s);
  Matrix& operator/=(Complex s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_;
  std::vector<Complex> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(Matrix a);
Matrix operator*(Matrix a, Complex s);
Matrix operator*(Complex s, Matrix a);
Matrix operator/(Matrix a, Complex s);
Matrix operator*(const Matrix& a, const Matrix& b);

/// Matrix product. Throws DimensionError when sizes differ and
/// NonFiniteError when the product overflows.
Matrix mat_mul(const Matrix& a, const Matrix& b);

/// a^e by repeated squaring; a^0 = I.
Matrix mat_pow(const Matrix& a, std::size_t e);

/// a - shift * I
Matrix shifted(const Matrix& a, Complex shift);

Matrix conjugate_transpose(const Matrix& a);

double frobenius_norm(const Matrix& a);

/// Frobenius norm of a - b.
double frobenius_distance(const Matrix& a, const Matrix& b);

/// Largest entrywise modulus of a - b.
double max_abs_deviation(const Matrix& a, const Matrix& b);

/// Singular value decomposition A = U diag(sigma) V^H by one-sided Jacobi
/// rotations. Only sigma and V are kept; sigma is sorted descending and the
/// columns of V follow the same order.
struct SingularSystem {
  std::vector<double> sigma;
  Matrix v;
};

SingularSystem singular_system(const Matrix& a);

std::vector<double> singular_values(const Matrix& a);

/// Number of singular values above `rank_rel_threshold * max(sigma_max,
/// reference_scale)`. Pass the norm the matrix was computed from (e.g.
/// ||B||_2^k for B^k) as `reference_scale` so that a product that is pure
/// rounding noise counts as rank zero.
std::size_t rank_numeric(const Matrix& a, const ToleranceConfig& cfg = {}, double reference_scale = 0.0);

/// Orthonormal basis of the numerical null space as a list of column
/// vectors (n - rank of them), thresholded like rank_numeric.
std::vector<std::vector<Complex>> null_space(const Matrix& a, const ToleranceConfig& cfg = {},
                                             double reference_scale = 0.0);

/// Orthonormal basis of null(b^k) built one power at a time:
/// null(b^k) = {x : (I - P) b x = 0}, P the orthogonal projector onto
/// null(b^(k-1)). Every step thresholds against max(||b||_2,
/// reference_scale), so b^k is never formed and its small singular values
/// never compete with the rounding of the power. Stops early once the
/// dimension stops growing.
std::vector<std::vector<Complex>> power_null_space(const Matrix& b, std::size_t k, const ToleranceConfig& cfg = {},
                                                   double reference_scale = 0.0);

/// Smallest k with null(b^k) == null(b^(k+1)), from the same chain as
/// power_null_space. Zero when b is numerically nonsingular.
std::size_t nilpotent_index(const Matrix& b, const ToleranceConfig& cfg = {}, double reference_scale = 0.0);

/// Largest singular value.
double spectral_norm(const Matrix& a);

/// Solves a X = b by LU with partial pivoting. Throws SingularMatrixError
/// when a pivot falls below `rank_rel_threshold * max|a_ij|`.
Matrix solve(const Matrix& a, const Matrix& b, const ToleranceConfig& cfg = {});

Matrix inverse(const Matrix& a, const ToleranceConfig& cfg = {});

/// Determinant via LU with partial pivoting; never throws on singularity.
Complex determinant(const Matrix& a);

}  // namespace eigenproj
