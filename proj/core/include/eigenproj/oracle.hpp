#pragma once

#include <cstdint>
#include <vector>

#include "eigenproj/components.hpp"
#include "eigenproj/eigenstructure.hpp"
#include "eigenproj/matrix.hpp"

// Ground truth for the component engine. Nothing here calls into
// components.hpp; the two routes only share the matrix primitives.
namespace eigenproj::oracle {

/// One eigenvalue and the sizes of its Jordan blocks.
struct JordanBlocks {
  Complex eigenvalue;
  std::vector<std::size_t> sizes;
};

/// Constructive description of a test matrix A = S J S^{-1}.
struct JordanSpec {
  std::vector<JordanBlocks> blocks;
  std::uint64_t seed = 0;
  /// Use S = I so A is the Jordan form itself.
  bool identity_similarity = false;
  /// Samples of S with a larger 2-norm condition number are rejected.
  double max_similarity_condition = 1e3;

  std::size_t dimension() const;
  /// Throws PreconditionError on empty specs, zero block sizes or repeated
  /// eigenvalues.
  void validate() const;
};

struct Case {
  Matrix a;
  Matrix similarity;
  ComponentSet truth;
  Spectrum spectrum;
};

/// Builds A = S J S^{-1} with S an integer matrix (entries in [-3, 3],
/// resampled until |det S| >= 1 and cond(S) <= max_similarity_condition)
/// and the exact components
/// Z_kj = S E_kj S^{-1}, E_kj = (J - lambda_k I)^j E_k0 / j!.
Case build_case(const JordanSpec& spec);

/// Second oracle: projects onto each generalized eigenspace
/// null((A - lambda_k I)^{index_k}) along the others using orthonormal
/// bases from the SVD. Throws InconsistentSpectrumError when the bases do
/// not stack into an invertible square matrix.
ComponentSet components_by_nullspace(const Matrix& a, const Spectrum& sp, const ToleranceConfig& cfg = {});

}  // namespace eigenproj::oracle
