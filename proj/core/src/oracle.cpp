#include "eigenproj/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "eigenproj/errors.hpp"

namespace eigenproj::oracle {

namespace {

constexpr int kMaxResamples = 1000;

Matrix random_integer_similarity(std::size_t n, std::uint64_t seed, double max_condition) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
    Matrix s(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s(i, j) = static_cast<double>(entry(rng));
    // det of an integer matrix is an integer; anything below 1/2 is zero.
    if (std::abs(determinant(s)) < 0.5) continue;
    const auto sigma = singular_values(s);
    if (sigma.front() <= max_condition * sigma.back()) return s;
  }
  throw PreconditionError("build_case: no similarity with |det| >= 1 and condition <= " +
                          std::to_string(max_condition) + " after " + std::to_string(kMaxResamples) + " samples");
}

// Restriction of the identity to the rows/columns [first, first + size).
Matrix block_selector(std::size_t n, std::size_t first, std::size_t size) {
  Matrix e(n);
  for (std::size_t i = first; i < first + size; ++i) e(i, i) = 1.0;
  return e;
}

}  // namespace

std::size_t JordanSpec::dimension() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += std::accumulate(b.sizes.begin(), b.sizes.end(), std::size_t{0});
  return n;
}

void JordanSpec::validate() const {
  if (blocks.empty()) throw PreconditionError("JordanSpec: no eigenvalues");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].sizes.empty()) throw PreconditionError("JordanSpec: eigenvalue without blocks");
    for (auto sz : blocks[i].sizes)
      if (sz == 0) throw PreconditionError("JordanSpec: zero block size");
    for (std::size_t j = i + 1; j < blocks.size(); ++j)
      if (blocks[i].eigenvalue == blocks[j].eigenvalue)
        throw PreconditionError("JordanSpec: repeated eigenvalue");
  }
}

Case build_case(const JordanSpec& spec) {
  spec.validate();
  const std::size_t n = spec.dimension();

  // Jordan form, with the diagonal range owned by each eigenvalue.
  Matrix j_form(n);
  std::vector<std::size_t> first(spec.blocks.size());
  std::vector<std::size_t> span_len(spec.blocks.size());
  std::size_t pos = 0;
  for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
    first[b] = pos;
    for (auto size : spec.blocks[b].sizes) {
      for (std::size_t i = 0; i < size; ++i) {
        j_form(pos + i, pos + i) = spec.blocks[b].eigenvalue;
        if (i + 1 < size) j_form(pos + i, pos + i + 1) = 1.0;
      }
      pos += size;
    }
    span_len[b] = pos - first[b];
  }

  const Matrix s = spec.identity_similarity ? Matrix::identity(n) : random_integer_similarity(n, spec.seed, spec.max_similarity_condition);
  const Matrix s_inv = spec.identity_similarity ? Matrix::identity(n) : inverse(s);
  const Matrix a = s * j_form * s_inv;

  std::vector<Complex> values;
  std::vector<std::size_t> mult;
  std::vector<std::size_t> index;
  for (const auto& b : spec.blocks) {
    values.push_back(b.eigenvalue);
    mult.push_back(std::accumulate(b.sizes.begin(), b.sizes.end(), std::size_t{0}));
    index.push_back(*std::max_element(b.sizes.begin(), b.sizes.end()));
  }
  Spectrum sp = make_spectrum(n, values, mult, index);

  ComponentSet truth{a, sp, {}};
  for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
    const auto k = static_cast<std::size_t>(
        std::find(sp.eigenvalues.begin(), sp.eigenvalues.end(), spec.blocks[b].eigenvalue) -
        sp.eigenvalues.begin());
    const Matrix e0 = block_selector(n, first[b], span_len[b]);
    Matrix nil = j_form;
    for (std::size_t i = 0; i < n; ++i) nil(i, i) -= spec.blocks[b].eigenvalue;
    Matrix e = e0;
    double factorial = 1.0;
    for (std::size_t order = 0; order < sp.indices[k]; ++order) {
      if (order > 0) {
        e = nil * e;
        factorial *= static_cast<double>(order);
      }
      truth.parts.emplace(ComponentKey{k, order}, s * (e / factorial) * s_inv);
    }
  }
  return {a, s, std::move(truth), std::move(sp)};
}

ComponentSet components_by_nullspace(const Matrix& a, const Spectrum& sp, const ToleranceConfig& cfg) {
  cfg.validate();
  const std::size_t n = a.n();
  if (sp.source_dim != n) throw PreconditionError("components_by_nullspace: spectrum dimension mismatch");

  Matrix basis(n);
  std::vector<std::size_t> col_begin(sp.size() + 1, 0);
  std::size_t filled = 0;
  const double norm_a = spectral_norm(a);
  for (std::size_t k = 0; k < sp.size(); ++k) {
    const Matrix shift = shifted(a, sp.eigenvalues[k]);
    const auto cols = power_null_space(shift, sp.indices[k], cfg, norm_a);
    if (cols.size() != sp.multiplicities[k] || filled + cols.size() > n) {
      throw InconsistentSpectrumError("components_by_nullspace: generalized eigenspace at position " +
                                      std::to_string(k) + " has dimension " + std::to_string(cols.size()) +
                                      ", expected " + std::to_string(sp.multiplicities[k]));
    }
    for (const auto& col : cols) {
      for (std::size_t i = 0; i < n; ++i) basis(i, filled) = col[i];
      ++filled;
    }
    col_begin[k + 1] = filled;
  }
  if (filled != n) throw InconsistentSpectrumError("components_by_nullspace: bases do not span the space");

  Matrix basis_inv(n);
  try {
    basis_inv = inverse(basis, cfg);
  } catch (const SingularMatrixError& e) {
    throw InconsistentSpectrumError(std::string("components_by_nullspace: stacked basis is singular: ") +
                                    e.what());
  }

  ComponentSet out{a, sp, {}};
  for (std::size_t k = 0; k < sp.size(); ++k) {
    Matrix z0(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Complex sum{};
        for (std::size_t c = col_begin[k]; c < col_begin[k + 1]; ++c) sum += basis(i, c) * basis_inv(c, j);
        z0(i, j) = sum;
      }
    const Matrix b = shifted(a, sp.eigenvalues[k]);
    double factorial = 1.0;
    for (std::size_t order = 0; order < sp.indices[k]; ++order) {
      if (order > 0) factorial *= static_cast<double>(order);
      out.parts.emplace(ComponentKey{k, order}, mat_pow(b, order) * z0 / factorial);
    }
  }
  return out;
}

}  // namespace eigenproj::oracle
