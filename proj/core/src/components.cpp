#include "eigenproj/components.hpp"

#include <string>

#include "eigenproj/errors.hpp"

namespace eigenproj {

namespace {

class GrowthGuard {
 public:
  explicit GrowthGuard(const ToleranceConfig& cfg) : limit_(1e12 / cfg.verify_tol) {}

  const Matrix& check(const Matrix& m, const char* what) const {
    const double norm = frobenius_norm(m);
    if (norm > limit_) {
      throw ConditioningError(std::string("conditioning guard: ") + what + " has Frobenius norm " +
                              std::to_string(norm) + " above " + std::to_string(limit_) +
                              "; try the minimal exponent policy or a supplied spectrum");
    }
    return m;
  }

 private:
  double limit_;
};

void require_matches(const Matrix& a, const Spectrum& sp, const char* op) {
  if (sp.source_dim != a.n()) {
    throw PreconditionError(std::string(op) + ": spectrum describes a " + std::to_string(sp.source_dim) +
                            "x" + std::to_string(sp.source_dim) + " matrix, got " + std::to_string(a.n()));
  }
  if (sp.size() == 0) throw PreconditionError(std::string(op) + ": empty spectrum");
}

// acc <- acc * (I - M^p)^q. The base is multiplied in q times rather than
// raised to q first: the running product stays small as eigenspaces are
// annihilated, whereas a separate power is a large intermediate whose
// rounding survives into the final product.
void apply_factor(Matrix& acc, bool& first, const Matrix& m, std::size_t p, std::size_t q,
                  const GrowthGuard& guard) {
  const Matrix mp = guard.check(mat_pow(m, p), "factor power");
  const Matrix base = guard.check(Matrix::identity(m.n()) - mp, "factor base");
  for (std::size_t t = 0; t < q; ++t) {
    acc = first ? base : guard.check(mat_mul(acc, base), "partial product");
    first = false;
  }
}

// prod_{i != k} (I - ((A - lambda_k I)/(lambda_i - lambda_k))^{u_k})^{u_i}
Matrix product_prefix(const Matrix& a, const Spectrum& sp, std::size_t k, const GrowthGuard& guard) {
  const Complex lk = sp.eigenvalues[k];
  const Matrix b = shifted(a, lk);
  Matrix prefix = Matrix::identity(a.n());
  bool first = true;
  for (std::size_t i = 0; i < sp.size(); ++i) {
    if (i == k) continue;
    apply_factor(prefix, first, b / (sp.eigenvalues[i] - lk), sp.exponents[k], sp.exponents[i], guard);
  }
  return prefix;
}

void require_order(const Spectrum& sp, std::size_t k, std::size_t j) {
  if (k >= sp.size()) {
    throw PreconditionError("component: position " + std::to_string(k) + " out of range for " +
                            std::to_string(sp.size()) + " eigenvalues");
  }
  if (j >= sp.indices[k]) {
    throw PreconditionError("component: order " + std::to_string(j) + " not below index " +
                            std::to_string(sp.indices[k]) + " at position " + std::to_string(k));
  }
  if (j > kMaxComponentOrder) {
    throw PreconditionError("component: order " + std::to_string(j) + " exceeds the supported maximum " +
                            std::to_string(kMaxComponentOrder));
  }
}

// Walks j = 0, 1, ... producing prefix * (A - lambda_k I)^j / j!.
class Ladder {
 public:
  Ladder(const Matrix& a, Complex lambda, Matrix prefix)
      : b_(shifted(a, lambda)), power_(Matrix::identity(a.n())), prefix_(std::move(prefix)) {}

  Matrix current(const GrowthGuard& guard) const {
    if (order_ == 0) return prefix_;
    return guard.check(mat_mul(prefix_, power_ / factorial_), "component");
  }

  void advance(const GrowthGuard& guard) {
    ++order_;
    power_ = guard.check(order_ == 1 ? b_ : mat_mul(power_, b_), "ladder power");
    factorial_ *= static_cast<double>(order_);
  }

 private:
  Matrix b_;
  Matrix power_;
  Matrix prefix_;
  std::size_t order_ = 0;
  double factorial_ = 1.0;
};

}  // namespace

Matrix eigenprojection_zero(const Matrix& a, const Spectrum& sp, const ToleranceConfig& cfg) {
  cfg.validate();
  require_matches(a, sp, "eigenprojection_zero");
  const GrowthGuard guard(cfg);
  Matrix z = Matrix::identity(a.n());
  bool first = true;
  for (std::size_t i = 0; i < sp.size(); ++i) {
    const Complex li = sp.eigenvalues[i];
    if (li == Complex{}) continue;
    apply_factor(z, first, a / li, sp.u, sp.exponents[i], guard);
  }
  return z;
}

Matrix component(const Matrix& a, const Spectrum& sp, std::size_t k, std::size_t j, const ToleranceConfig& cfg) {
  cfg.validate();
  require_matches(a, sp, "component");
  require_order(sp, k, j);
  const GrowthGuard guard(cfg);
  Ladder ladder(a, sp.eigenvalues[k], product_prefix(a, sp, k, guard));
  for (std::size_t step = 0; step < j; ++step) ladder.advance(guard);
  return ladder.current(guard);
}

ComponentSet all_components(const Matrix& a, const Spectrum& sp, const ToleranceConfig& cfg) {
  cfg.validate();
  require_matches(a, sp, "all_components");
  const GrowthGuard guard(cfg);
  ComponentSet out{a, sp, {}};
  for (std::size_t k = 0; k < sp.size(); ++k) {
    require_order(sp, k, sp.indices[k] - 1);
    Ladder ladder(a, sp.eigenvalues[k], product_prefix(a, sp, k, guard));
    for (std::size_t j = 0; j < sp.indices[k]; ++j) {
      if (j > 0) ladder.advance(guard);
      out.parts.emplace(ComponentKey{k, j}, ladder.current(guard));
    }
  }
  return out;
}

Matrix lagrange_projector(const Matrix& a, const Spectrum& sp, std::size_t k) {
  require_matches(a, sp, "lagrange_projector");
  if (k >= sp.size()) throw PreconditionError("lagrange_projector: position out of range");
  for (std::size_t i = 0; i < sp.size(); ++i) {
    if (sp.indices[i] != 1) {
      throw PreconditionError("lagrange_projector: eigenvalue at position " + std::to_string(i) + " has index " +
                              std::to_string(sp.indices[i]) + "; the matrix is not diagonalizable");
    }
  }
  const Complex lk = sp.eigenvalues[k];
  Matrix p = Matrix::identity(a.n());
  bool first = true;
  for (std::size_t i = 0; i < sp.size(); ++i) {
    if (i == k) continue;
    Matrix f = shifted(a, sp.eigenvalues[i]) / (lk - sp.eigenvalues[i]);
    p = first ? std::move(f) : mat_mul(p, f);
    first = false;
  }
  return p;
}

}  // namespace eigenproj
