#pragma once

#include <compare>
#include <cstddef>
#include <map>

#include "eigenproj/eigenstructure.hpp"
#include "eigenproj/matrix.hpp"

namespace eigenproj {

/// (eigenvalue position, order) of a component Z_kj. Positions are 0-based
/// and follow the spectrum's canonical ordering.
struct ComponentKey {
  std::size_t k = 0;
  std::size_t j = 0;

  friend auto operator<=>(const ComponentKey&, const ComponentKey&) = default;
};

/// The family {Z_kj : k < s, j < index_k} of a matrix.
struct ComponentSet {
  Matrix source;
  Spectrum spectrum;
  std::map<ComponentKey, Matrix> parts;

  const Matrix& at(std::size_t k, std::size_t j) const { return parts.at({k, j}); }
};

/// Orders above this are rejected before j! loses accuracy.
inline constexpr std::size_t kMaxComponentOrder = 20;

/// Eigenprojection at zero:
///   Z = prod over nonzero lambda_i of (I - (A / lambda_i)^u)^{u_i}
/// Equals I when every eigenvalue is zero and (numerically) the zero matrix
/// when zero is not an eigenvalue.
///
/// Throws ConditioningError when any intermediate Frobenius norm exceeds
/// 1e12 / verify_tol.
Matrix eigenprojection_zero(const Matrix& a, const Spectrum& sp, const ToleranceConfig& cfg = {});

/// Component Z_kj:
///   prod_{i != k} (I - ((A - lambda_k I) / (lambda_i - lambda_k))^{u_k})^{u_i}
///     * (A - lambda_k I)^j / j!
/// with factors taken in ascending position order. For j = 0 this is the
/// eigenprojection at lambda_k.
Matrix component(const Matrix& a, const Spectrum& sp, std::size_t k, std::size_t j,
                 const ToleranceConfig& cfg = {});

/// Every Z_kj, sharing one product prefix per eigenvalue. Bit-identical to
/// calling component() for each key.
ComponentSet all_components(const Matrix& a, const Spectrum& sp, const ToleranceConfig& cfg = {});

/// Lagrange interpolation product prod_{i != k} (A - lambda_i I) / (lambda_k - lambda_i).
/// Only valid when every index is 1.
Matrix lagrange_projector(const Matrix& a, const Spectrum& sp, std::size_t k);

}  // namespace eigenproj
