#pragma once

#include <cstddef>
#include <vector>

#include "eigenproj/matrix.hpp"

namespace eigenproj {

/// Distinct eigenvalues of a matrix together with everything the component
/// formulas need: algebraic multiplicities, indices (largest Jordan block
/// sizes), the per-eigenvalue exponents u_i >= index_i and the exponent
/// u >= ind A used for the eigenprojection at zero.
///
/// Eigenvalues are ordered by descending modulus, ties broken by ascending
/// argument in (-pi, pi]. Position k in every vector refers to the same
/// eigenvalue.
struct Spectrum {
  std::vector<Complex> eigenvalues;
  std::vector<std::size_t> multiplicities;
  std::vector<std::size_t> indices;
  std::vector<std::size_t> exponents;
  std::size_t ind_a = 0;
  std::size_t u = 1;
  std::size_t source_dim = 0;
  /// Set by the worst-case policy: `indices` and `ind_a` hold the
  /// multiplicity upper bounds rather than computed indices.
  bool indices_are_bounds = false;

  std::size_t size() const noexcept { return eigenvalues.size(); }

  /// Position of the eigenvalue exactly equal to zero, or size() if none.
  std::size_t zero_position() const noexcept;

  /// Checks every structural invariant; throws PreconditionError naming the
  /// first violation. `min_separation` is the required pairwise distance.
  void validate(double min_separation = 0.0) const;
};

/// How analyze() picks u_i and u.
struct ExponentPolicy {
  enum class Kind { minimal, worst_case, explicit_list };

  Kind kind = Kind::minimal;
  /// Only for explicit_list: one exponent per eigenvalue position, plus u.
  std::vector<std::size_t> exponents;
  std::size_t u = 0;

  static ExponentPolicy minimal() { return {}; }
  static ExponentPolicy worst_case() { return {Kind::worst_case, {}, 0}; }
  static ExponentPolicy explicit_list(std::vector<std::size_t> exponents, std::size_t u) {
    return {Kind::explicit_list, std::move(exponents), u};
  }
};

/// All n eigenvalues (with repetition) via Householder reduction to upper
/// Hessenberg form followed by Wilkinson-shifted complex QR iteration.
/// Throws ConvergenceError after 60 * n iterations without deflation.
std::vector<Complex> eigenvalues_raw(const Matrix& a, const ToleranceConfig& cfg = {});

/// Absolute clustering radius for a set of values.
double effective_cluster_radius(std::span<const Complex> values, const ToleranceConfig& cfg);

struct ClusteredValues {
  std::vector<Complex> values;
  std::vector<std::size_t> multiplicities;
};

/// Greedy agglomerative clustering: repeatedly merges the closest pair of
/// clusters whose weighted centroids lie within the radius. Clusters within
/// the radius of zero become exactly zero. Throws ClusteringError when two
/// surviving centroids are closer than twice the radius.
ClusteredValues cluster_spectrum(std::span<const Complex> values, const ToleranceConfig& cfg = {});

/// Sorts (value, multiplicity) pairs into the canonical spectrum order.
/// `tie_tol` is the modulus difference below which two values count as a tie.
void sort_canonical(ClusteredValues& cv, double tie_tol);

/// Smallest k with rank((A - lambda I)^k) == rank((A - lambda I)^{k+1}).
/// Zero means lambda is not an eigenvalue. The ranks are read off the
/// nullity chain of A - lambda I (see power_null_space), thresholded against
/// max(||A - lambda I||_2, ||A||_2).
std::size_t eigen_index(const Matrix& a, Complex lambda, const ToleranceConfig& cfg = {});

/// Computes the spectrum of `a` and fills exponents per `policy`.
/// Under worst_case no rank is ever computed: indices are set to the
/// multiplicities (valid upper bounds) and u = n.
Spectrum analyze(const Matrix& a, const ToleranceConfig& cfg = {},
                 const ExponentPolicy& policy = ExponentPolicy::minimal());

/// Builds a spectrum from known eigenvalues, multiplicities and indices
/// (the user-supplied path). Values are reordered canonically and
/// exponents chosen per `policy`.
Spectrum make_spectrum(std::size_t n, std::vector<Complex> eigenvalues,
                       std::vector<std::size_t> multiplicities, std::vector<std::size_t> indices,
                       const ExponentPolicy& policy = ExponentPolicy::minimal());

/// Spectrum of A - lambda_k I: every eigenvalue moves by -lambda_k, indices
/// are unchanged and u takes the value u_k.
Spectrum shift_spectrum(const Spectrum& sp, std::size_t k);

}  // namespace eigenproj
