#include <random>

#include "corpus.hpp"
#include "doctest.h"
#include "eigenproj/components.hpp"
#include "eigenproj/errors.hpp"
#include "eigenproj/oracle.hpp"
#include "invariants.hpp"

using namespace eigenproj;
using eigenproj::testing::invariant_residuals;
using eigenproj::testing::jordan_corpus;
using eigenproj::testing::random_unitary;
using eigenproj::testing::relative_error;
using eigenproj::testing::worst_component_error;

namespace {

// Position of `value` in a spectrum; the tests below know their values
// exactly, so equality is safe.
std::size_t position_of(const Spectrum& sp, Complex value) {
  for (std::size_t k = 0; k < sp.size(); ++k)
    if (sp.eigenvalues[k] == value) return k;
  FAIL("eigenvalue missing from spectrum");
  return sp.size();
}

Spectrum simple_spectrum(std::vector<Complex> values) {
  const std::size_t n = values.size();
  return make_spectrum(n, std::move(values), std::vector<std::size_t>(n, 1), std::vector<std::size_t>(n, 1));
}

}  // namespace

TEST_CASE("eigenprojection_zero on closed forms") {
  SUBCASE("zero matrix: empty product") {
    const Spectrum sp = make_spectrum(2, {0}, {2}, {1});
    CHECK(eigenprojection_zero(Matrix::zero(2), sp) == Matrix::identity(2));
  }
  SUBCASE("diag(0, 2) gives I - A/2") {
    const Spectrum sp = simple_spectrum({0, 2});
    CHECK(eigenprojection_zero(Matrix::diagonal({0, 2}), sp) == Matrix::diagonal({1, 0}));
  }
  SUBCASE("nilpotent Jordan block") {
    const Spectrum sp = make_spectrum(2, {0}, {2}, {2});
    CHECK(eigenprojection_zero(Matrix{{0, 1}, {0, 0}}, sp) == Matrix::identity(2));
  }
  SUBCASE("nonsingular input") {
    const Spectrum sp = simple_spectrum({1, 2});
    CHECK(frobenius_norm(eigenprojection_zero(Matrix::diagonal({1, 2}), sp)) == 0.0);
  }
}

TEST_CASE("eigenprojection_zero on S blockdiag(J2(0), [3]) S^-1") {
  const auto c = oracle::build_case({{{0.0, {2}}, {3.0, {1}}}, 42});
  const Matrix z = eigenprojection_zero(c.a, c.spectrum);
  // Truth: S diag(1, 1, 0) S^-1.
  const Matrix want = c.similarity * Matrix::diagonal({1, 1, 0}) * inverse(c.similarity);
  CHECK(relative_error(z, want) <= 1e-8);
  CHECK(relative_error(z, c.truth.at(position_of(c.spectrum, 0.0), 0)) <= 1e-8);
}

TEST_CASE("component on closed forms") {
  SUBCASE("identity: single eigenvalue") {
    const Spectrum sp = make_spectrum(2, {1}, {2}, {1});
    CHECK(component(Matrix::identity(2), sp, 0, 0) == Matrix::identity(2));
  }
  SUBCASE("[[2, 1], [0, 3]] at 2 is (A - 3I)/(2 - 3)") {
    const Matrix a{{2, 1}, {0, 3}};
    const Spectrum sp = simple_spectrum({2, 3});
    const Matrix z = component(a, sp, position_of(sp, 2.0), 0);
    CHECK(frobenius_distance(z, Matrix{{1, -1}, {0, 0}}) <= 1e-15);
    const auto nb = oracle::components_by_nullspace(a, sp);
    CHECK(frobenius_distance(z, nb.at(position_of(sp, 2.0), 0)) <= 1e-12);
  }
  SUBCASE("blockdiag(J2(2), [5])") {
    const Matrix a{{2, 1, 0}, {0, 2, 0}, {0, 0, 5}};
    const Spectrum sp = make_spectrum(3, {2, 5}, {2, 1}, {2, 1});
    const std::size_t k2 = position_of(sp, 2.0);
    const std::size_t k5 = position_of(sp, 5.0);
    CHECK(frobenius_distance(component(a, sp, k2, 0), Matrix::diagonal({1, 1, 0})) <= 1e-14);
    CHECK(frobenius_distance(component(a, sp, k2, 1), Matrix{{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}) <= 1e-14);
    CHECK(frobenius_distance(component(a, sp, k5, 0), Matrix::diagonal({0, 0, 1})) <= 1e-14);
  }
}

TEST_CASE("component rejects bad positions and orders") {
  const Matrix a{{2, 1, 0}, {0, 2, 0}, {0, 0, 5}};
  const Spectrum sp = make_spectrum(3, {2, 5}, {2, 1}, {2, 1});
  CHECK_THROWS_AS(component(a, sp, 2, 0), PreconditionError);
  CHECK_THROWS_AS(component(a, sp, position_of(sp, 5.0), 1), PreconditionError);
  CHECK_THROWS_AS(component(a, sp, position_of(sp, 2.0), 2), PreconditionError);
  CHECK_THROWS_AS(component(Matrix::identity(2), sp, 0, 0), PreconditionError);
  CHECK_THROWS_AS(eigenprojection_zero(Matrix::identity(2), sp), PreconditionError);
  CHECK_THROWS_AS(all_components(Matrix::identity(2), sp), PreconditionError);
}

TEST_CASE("orders above the factorial cap are rejected") {
  const std::size_t n = kMaxComponentOrder + 2;
  Matrix a(n);
  for (std::size_t i = 0; i + 1 < n; ++i) a(i, i + 1) = 1.0;
  const Spectrum sp = make_spectrum(n, {0}, {n}, {n});
  CHECK_NOTHROW(component(a, sp, 0, kMaxComponentOrder));
  CHECK_THROWS_AS(component(a, sp, 0, kMaxComponentOrder + 1), PreconditionError);
  CHECK_THROWS_AS(all_components(a, sp), PreconditionError);
}

TEST_CASE("conditioning guard trips on extreme eigenvalue ratios") {
  const Matrix a = Matrix::diagonal({0, 1e-11, 1});
  const Spectrum sp =
      make_spectrum(3, {0, 1e-11, 1}, {1, 1, 1}, {1, 1, 1}, ExponentPolicy::explicit_list({1, 3, 1}, 3));
  CHECK_THROWS_AS(eigenprojection_zero(a, sp), ConditioningError);
  // u = 1 keeps every factor near 1e11, below the 1e20 limit.
  const Spectrum minimal = make_spectrum(3, {0, 1e-11, 1}, {1, 1, 1}, {1, 1, 1});
  CHECK_NOTHROW(eigenprojection_zero(a, minimal));
  // The limit is 1e12 / verify_tol, so a looser verify_tol trips earlier.
  CHECK_THROWS_AS(eigenprojection_zero(a, minimal, {1e-8, 1e-10, 1e4}), ConditioningError);
}

TEST_CASE("all_components on closed forms") {
  SUBCASE("diag(1, 2)") {
    const Spectrum sp = simple_spectrum({1, 2});
    const auto cs = all_components(Matrix::diagonal({1, 2}), sp);
    CHECK(cs.parts.size() == 2);
    CHECK(cs.at(position_of(sp, 1.0), 0) == Matrix::diagonal({1, 0}));
    CHECK(cs.at(position_of(sp, 2.0), 0) == Matrix::diagonal({0, 1}));
  }
  SUBCASE("[[0, 1], [0, 0]]") {
    const Matrix a{{0, 1}, {0, 0}};
    const auto cs = all_components(a, make_spectrum(2, {0}, {2}, {2}));
    CHECK(cs.parts.size() == 2);
    CHECK(cs.at(0, 0) == Matrix::identity(2));
    CHECK(cs.at(0, 1) == a);
  }
  SUBCASE("oracle 6x6 with blocks (1: [2, 1]) and (-2: [3])") {
    const auto c = oracle::build_case({{{1.0, {2, 1}}, {-2.0, {3}}}, 42});
    const auto cs = all_components(c.a, c.spectrum);
    CHECK(cs.parts.size() == 5);
    CHECK(worst_component_error(cs, c.truth) <= 1e-8);
  }
}

TEST_CASE("all_components is bit-identical to component") {
  for (const auto& spec : jordan_corpus(30, 17)) {
    const auto c = oracle::build_case(spec);
    const auto cs = all_components(c.a, c.spectrum);
    for (const auto& [key, z] : cs.parts) CHECK(component(c.a, c.spectrum, key.k, key.j) == z);
  }
}

TEST_CASE("component algebra holds on oracle cases") {
  for (const auto& spec : jordan_corpus(60, 77)) {
    const auto c = oracle::build_case(spec);
    const auto cs = all_components(c.a, c.spectrum);
    const auto r = invariant_residuals(cs);
    CHECK(r.idempotency <= 1e-8);
    CHECK(r.commutation <= 1e-8);
    CHECK(r.resolution <= 1e-8);
    CHECK(r.orthogonality <= 1e-8);
    CHECK(r.annihilation <= 1e-8);
    CHECK(r.ladder <= 1e-8);
    CHECK(r.reconstruction <= 1e-8);
  }
}

TEST_CASE("zero-eigenvalue and shift consistency") {
  for (const auto& spec : jordan_corpus(60, 78)) {
    const auto c = oracle::build_case(spec);
    const Spectrum& sp = c.spectrum;
    const std::size_t z0 = sp.zero_position();
    if (z0 < sp.size()) {
      CHECK(relative_error(eigenprojection_zero(c.a, sp), component(c.a, sp, z0, 0)) <= 1e-8);
    }
    for (std::size_t k = 0; k < sp.size(); ++k) {
      const Matrix via_shift = eigenprojection_zero(shifted(c.a, sp.eigenvalues[k]), shift_spectrum(sp, k));
      CHECK(relative_error(via_shift, component(c.a, sp, k, 0)) <= 1e-8);
    }
  }
}

TEST_CASE("exponent slack does not change the components") {
  for (const auto& spec : jordan_corpus(40, 79)) {
    if (eigenproj::testing::spectral_radius(spec) > 3.0 || eigenproj::testing::magnitude_ratio(spec) > 10.0) continue;
    const auto c = oracle::build_case(spec);
    const Spectrum& sp = c.spectrum;
    const Spectrum worst = make_spectrum(c.a.n(), sp.eigenvalues, sp.multiplicities, sp.indices,
                                         ExponentPolicy::worst_case());
    CHECK(worst_component_error(all_components(c.a, worst), all_components(c.a, sp)) <= 1e-6);
  }
}

TEST_CASE("exponent slack in the eigenprojection at zero") {
  // Exact in floating point for diagonal input: (I - (A/2)^2)^1 = diag(1, 0).
  const Spectrum sp = make_spectrum(2, {0, 2}, {1, 1}, {1, 1}, ExponentPolicy::explicit_list({3, 2}, 2));
  CHECK(eigenprojection_zero(Matrix::diagonal({0, 2}), sp) == Matrix::diagonal({1, 0}));

  const auto c = oracle::build_case({{{0.0, {2}}, {3.0, {1}}}, 42});
  const Spectrum& m = c.spectrum;
  const Spectrum w = make_spectrum(3, m.eigenvalues, m.multiplicities, m.indices, ExponentPolicy::worst_case());
  CHECK(relative_error(eigenprojection_zero(c.a, w), eigenprojection_zero(c.a, m)) <= 1e-6);
}

TEST_CASE("lagrange_projector") {
  SUBCASE("diag(1, 2)") {
    const Spectrum sp = simple_spectrum({1, 2});
    CHECK(lagrange_projector(Matrix::diagonal({1, 2}), sp, position_of(sp, 1.0)) == Matrix::diagonal({1, 0}));
  }
  SUBCASE("symmetric involution") {
    const Matrix a{{0, 1}, {1, 0}};
    const Spectrum sp = simple_spectrum({1, -1});
    const Matrix p = lagrange_projector(a, sp, position_of(sp, 1.0));
    CHECK(frobenius_distance(p, Matrix{{0.5, 0.5}, {0.5, 0.5}}) <= 1e-15);
  }
  SUBCASE("random normal 5x5 agrees with the product formula") {
    std::mt19937_64 rng(61);
    const std::vector<Complex> values{3, {0, 2}, -1.5, {1, -1}, 0.5};
    const Matrix q = random_unitary(5, rng);
    const Matrix a = q * Matrix::diagonal(values) * conjugate_transpose(q);
    const Spectrum sp = simple_spectrum(values);
    for (std::size_t k = 0; k < sp.size(); ++k)
      CHECK(relative_error(lagrange_projector(a, sp, k), component(a, sp, k, 0)) <= 1e-8);
  }
  SUBCASE("defective input is rejected") {
    const Spectrum sp = make_spectrum(2, {0}, {2}, {2});
    CHECK_THROWS_AS(lagrange_projector(Matrix{{0, 1}, {0, 0}}, sp, 0), PreconditionError);
    CHECK_THROWS_AS(lagrange_projector(Matrix::diagonal({1, 2}), simple_spectrum({1, 2}), 2), PreconditionError);
  }
}
