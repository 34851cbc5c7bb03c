#include "eigenproj/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "eigenproj/errors.hpp"

namespace eigenproj {

namespace {

void require_same_size(const Matrix& a, const Matrix& b, const char* op) {
  if (a.n() != b.n()) {
    throw DimensionError(std::string(op) + ": dimension mismatch " + std::to_string(a.n()) +
                         " vs " + std::to_string(b.n()));
  }
}

void require_finite(const Matrix& m, const char* op) {
  if (!m.all_finite()) {
    throw NonFiniteError(std::string(op) + ": result has non-finite entries");
  }
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

void ToleranceConfig::validate() const {
  auto ok = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!ok(eig_cluster_radius)) throw PreconditionError("eig_cluster_radius must be positive");
  if (!ok(rank_rel_threshold)) throw PreconditionError("rank_rel_threshold must be positive");
  if (!ok(verify_tol)) throw PreconditionError("verify_tol must be positive");
}

Matrix::Matrix(std::size_t n) : n_(n), data_(n * n) {
  if (n == 0) throw DimensionError("matrix dimension must be positive");
}

Matrix::Matrix(std::size_t n, std::vector<Complex> entries) : n_(n), data_(std::move(entries)) {
  if (n == 0) throw DimensionError("matrix dimension must be positive");
  if (data_.size() != n * n) {
    throw DimensionError("expected " + std::to_string(n * n) + " entries, got " +
                         std::to_string(data_.size()));
  }
  require_finite(*this, "Matrix");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows) : n_(rows.size()) {
  if (n_ == 0) throw DimensionError("matrix dimension must be positive");
  data_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw DimensionError("matrix literal is not square");
    data_.insert(data_.end(), row.begin(), row.end());
  }
  require_finite(*this, "Matrix");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const Complex> diag) {
  Matrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  require_finite(m, "Matrix::diagonal");
  return m;
}

Matrix Matrix::diagonal(std::initializer_list<Complex> diag) {
  return diagonal(std::span<const Complex>(diag.begin(), diag.size()));
}

bool Matrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), finite);
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  require_same_size(*this, rhs, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  require_finite(*this, "operator+");
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  require_same_size(*this, rhs, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  require_finite(*this, "operator-");
  return *this;
}

Matrix& Matrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  require_finite(*this, "operator*");
  return *this;
}

Matrix& Matrix::operator/=(Complex s) {
  for (auto& z : data_) z /= s;
  require_finite(*this, "operator/");
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator-(Matrix a) { return a *= -1.0; }
Matrix operator*(Matrix a, Complex s) { return a *= s; }
Matrix operator*(Complex s, Matrix a) { return a *= s; }
Matrix operator/(Matrix a, Complex s) { return a /= s; }
Matrix operator*(const Matrix& a, const Matrix& b) { return mat_mul(a, b); }

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  require_same_size(a, b, "mat_mul");
  const std::size_t n = a.n();
  Matrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < n; ++l) {
      const Complex ail = a(i, l);
      if (ail == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += ail * b(l, j);
    }
  }
  require_finite(c, "mat_mul");
  return c;
}

Matrix mat_pow(const Matrix& a, std::size_t e) {
  Matrix result = Matrix::identity(a.n());
  if (e == 0) return result;
  Matrix base = a;
  bool first = true;
  while (true) {
    if (e & 1U) {
      result = first ? base : mat_mul(result, base);
      first = false;
    }
    e >>= 1U;
    if (e == 0) break;
    base = mat_mul(base, base);
  }
  return result;
}

Matrix shifted(const Matrix& a, Complex shift) {
  Matrix m = a;
  for (std::size_t i = 0; i < a.n(); ++i) m(i, i) -= shift;
  return m;
}

Matrix conjugate_transpose(const Matrix& a) {
  Matrix t(a.n());
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = 0; j < a.n(); ++j) t(j, i) = std::conj(a(i, j));
  return t;
}

double frobenius_norm(const Matrix& a) {
  // Scaled accumulation so huge-but-finite entries do not overflow.
  double scale = 0.0;
  for (const auto& z : a.entries()) scale = std::max(scale, std::abs(z));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (const auto& z : a.entries()) sum += std::norm(z / scale);
  return scale * std::sqrt(sum);
}

double frobenius_distance(const Matrix& a, const Matrix& b) { return frobenius_norm(a - b); }

double max_abs_deviation(const Matrix& a, const Matrix& b) {
  require_same_size(a, b, "max_abs_deviation");
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

SingularSystem singular_system(const Matrix& a) {
  const std::size_t n = a.n();
  // Work on columns: w[j] is column j of A, v[j] column j of V.
  std::vector<std::vector<Complex>> w(n, std::vector<Complex>(n));
  std::vector<std::vector<Complex>> v(n, std::vector<Complex>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w[j][i] = a(i, j);
    v[i][i] = 1.0;
  }

  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr int max_sweeps = 80;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0;
        double beta = 0.0;
        Complex gamma{};
        for (std::size_t i = 0; i < n; ++i) {
          alpha += std::norm(w[p][i]);
          beta += std::norm(w[q][i]);
          gamma += std::conj(w[p][i]) * w[q][i];
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Complex phase = std::conj(gamma) / g;  // e^{-i arg gamma}
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < n; ++i) {
          const Complex wp = w[p][i];
          const Complex wq = phase * w[q][i];
          w[p][i] = c * wp - s * wq;
          w[q][i] = s * wp + c * wq;
          const Complex vp = v[p][i];
          const Complex vq = phase * v[q][i];
          v[p][i] = c * vp - s * vq;
          v[q][i] = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (const auto& z : w[j]) s += std::norm(z);
    norms[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  SingularSystem out{std::vector<double>(n), Matrix(n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.sigma[c] = norms[order[c]];
    for (std::size_t i = 0; i < n; ++i) out.v(i, c) = v[order[c]][i];
  }
  return out;
}

std::vector<double> singular_values(const Matrix& a) { return singular_system(a).sigma; }

double spectral_norm(const Matrix& a) { return singular_values(a).front(); }

namespace {

std::size_t rank_from_sigma(const std::vector<double>& sigma, const ToleranceConfig& cfg, double reference) {
  if (sigma.empty() || sigma.front() == 0.0) return 0;
  const double cut = cfg.rank_rel_threshold * std::max(sigma.front(), reference);
  return static_cast<std::size_t>(
      std::count_if(sigma.begin(), sigma.end(), [cut](double s) { return s > cut; }));
}

}  // namespace

std::size_t rank_numeric(const Matrix& a, const ToleranceConfig& cfg, double reference_scale) {
  return rank_from_sigma(singular_values(a), cfg, reference_scale);
}

std::vector<std::vector<Complex>> null_space(const Matrix& a, const ToleranceConfig& cfg, double reference_scale) {
  const auto sys = singular_system(a);
  const std::size_t rank = rank_from_sigma(sys.sigma, cfg, reference_scale);
  std::vector<std::vector<Complex>> basis;
  for (std::size_t c = rank; c < a.n(); ++c) {
    std::vector<Complex> col(a.n());
    for (std::size_t i = 0; i < a.n(); ++i) col[i] = sys.v(i, c);
    basis.push_back(std::move(col));
  }
  return basis;
}

namespace {

struct NullChain {
  std::vector<std::vector<Complex>> basis;
  std::size_t powers = 0;  // number of steps that grew the basis
};

NullChain grow_null_chain(const Matrix& b, std::size_t k, const ToleranceConfig& cfg, double reference_scale) {
  const std::size_t n = b.n();
  const double reference = std::max(spectral_norm(b), reference_scale);
  NullChain chain;
  for (std::size_t step = 0; step < k; ++step) {
    // (I - P) b with P the orthogonal projector onto the current basis.
    Matrix m = b;
    for (const auto& q : chain.basis) {
      for (std::size_t j = 0; j < n; ++j) {
        Complex dot{};
        for (std::size_t i = 0; i < n; ++i) dot += std::conj(q[i]) * b(i, j);
        for (std::size_t i = 0; i < n; ++i) m(i, j) -= q[i] * dot;
      }
    }
    auto next = null_space(m, cfg, reference);
    if (next.size() <= chain.basis.size()) break;
    chain.basis = std::move(next);
    ++chain.powers;
  }
  return chain;
}

}  // namespace

std::vector<std::vector<Complex>> power_null_space(const Matrix& b, std::size_t k, const ToleranceConfig& cfg,
                                                   double reference_scale) {
  return grow_null_chain(b, k, cfg, reference_scale).basis;
}

std::size_t nilpotent_index(const Matrix& b, const ToleranceConfig& cfg, double reference_scale) {
  return grow_null_chain(b, b.n(), cfg, reference_scale).powers;
}

namespace {

struct LuFactors {
  Matrix lu;
  std::vector<std::size_t> perm;
  int sign = 1;
  double min_pivot = std::numeric_limits<double>::infinity();
  std::size_t min_pivot_col = 0;
};

LuFactors lu_decompose(const Matrix& a) {
  const std::size_t n = a.n();
  LuFactors f{a, std::vector<std::size_t>(n)};
  std::iota(f.perm.begin(), f.perm.end(), 0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(f.lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(f.lu(i, k)) > best) {
        best = std::abs(f.lu(i, k));
        piv = i;
      }
    }
    if (best < f.min_pivot) {
      f.min_pivot = best;
      f.min_pivot_col = k;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
      f.sign = -f.sign;
    }
    if (best == 0.0) continue;
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex m = f.lu(i, k) / f.lu(k, k);
      f.lu(i, k) = m;
      for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= m * f.lu(k, j);
    }
  }
  return f;
}

}  // namespace

Matrix solve(const Matrix& a, const Matrix& b, const ToleranceConfig& cfg) {
  require_same_size(a, b, "solve");
  const std::size_t n = a.n();
  double amax = 0.0;
  for (const auto& z : a.entries()) amax = std::max(amax, std::abs(z));
  const auto f = lu_decompose(a);
  if (amax == 0.0 || f.min_pivot <= cfg.rank_rel_threshold * amax) {
    throw SingularMatrixError("solve: matrix is numerically singular (pivot " +
                                  std::to_string(f.min_pivot) + " at column " +
                                  std::to_string(f.min_pivot_col) + ")",
                              f.min_pivot);
  }
  Matrix x(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<Complex> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = b(f.perm[i], col);
      for (std::size_t j = 0; j < i; ++j) s -= f.lu(i, j) * y[j];
      y[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
      Complex s = y[i];
      for (std::size_t j = i + 1; j < n; ++j) s -= f.lu(i, j) * x(j, col);
      x(i, col) = s / f.lu(i, i);
    }
  }
  require_finite(x, "solve");
  return x;
}

Matrix inverse(const Matrix& a, const ToleranceConfig& cfg) {
  return solve(a, Matrix::identity(a.n()), cfg);
}

Complex determinant(const Matrix& a) {
  const auto f = lu_decompose(a);
  Complex d = static_cast<double>(f.sign);
  for (std::size_t i = 0; i < a.n(); ++i) d *= f.lu(i, i);
  return d;
}

}  // namespace eigenproj
