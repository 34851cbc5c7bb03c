#pragma once

#include <cstddef>
#include <functional>

#include "eigenproj/components.hpp"
#include "eigenproj/eigenstructure.hpp"
#include "eigenproj/matrix.hpp"

namespace eigenproj {

/// f and its derivatives: evaluator(lambda, j) = f^{(j)}(lambda) for
/// j <= max_order.
struct ScalarFunctionJet {
  std::function<Complex(Complex, std::size_t)> evaluator;
  std::size_t max_order = 0;

  static ScalarFunctionJet identity();
  /// f(lambda) = lambda^m
  static ScalarFunctionJet power(std::size_t m);
  static ScalarFunctionJet exp();
};

/// f(A) = sum_k sum_j f^{(j)}(lambda_k) Z_kj. Throws PreconditionError when
/// the jet stops short of the largest order present.
Matrix matrix_function(const ComponentSet& cs, const ScalarFunctionJet& f);

/// A^D = (A + Z)^{-1} (I - Z), Z the eigenprojection at zero.
Matrix drazin_inverse(const Matrix& a, const Spectrum& sp, const ToleranceConfig& cfg = {});

/// Cesaro limit of a row-stochastic matrix: the eigenprojection at 1.
/// The eigenvalue cluster nearest 1 (within 10x the clustering radius) is
/// snapped to exactly 1. Throws NotStochasticError for non-stochastic input
/// or when no eigenvalue is found near 1.
Matrix cesaro_limit(const Matrix& p, const ToleranceConfig& cfg = {});

/// Same, with a caller-supplied spectrum that must contain an eigenvalue
/// within 10x the clustering radius of 1.
Matrix cesaro_limit(const Matrix& p, const Spectrum& sp, const ToleranceConfig& cfg = {});

/// Spectrum used by cesaro_limit, exposed for reporting.
Spectrum stochastic_spectrum(const Matrix& p, const ToleranceConfig& cfg = {});

}  // namespace eigenproj
