#include <cmath>

#include "corpus.hpp"
#include "doctest.h"
#include "eigenproj/errors.hpp"
#include "eigenproj/oracle.hpp"
#include "invariants.hpp"

using namespace eigenproj;
using eigenproj::testing::invariant_residuals;
using eigenproj::testing::jordan_corpus;
using eigenproj::testing::worst_component_error;

TEST_CASE("1x1 zero case") {
  const auto c = oracle::build_case({{{0.0, {1}}}, 0});
  CHECK(c.a == Matrix{{0}});
  CHECK(c.truth.parts.size() == 1);
  CHECK(c.truth.at(0, 0) == Matrix{{1}});
  CHECK(c.spectrum.ind_a == 1);
}

TEST_CASE("identity similarity returns the Jordan form") {
  const auto c = oracle::build_case({{{2.0, {2}}, {5.0, {1}}}, 0, true});
  CHECK((c.a == Matrix{{2, 1, 0}, {0, 2, 0}, {0, 0, 5}}));
  const Spectrum& sp = c.spectrum;
  REQUIRE(sp.eigenvalues == std::vector<Complex>{5, 2});
  CHECK(c.truth.at(0, 0) == Matrix::diagonal({0, 0, 1}));
  CHECK(c.truth.at(1, 0) == Matrix::diagonal({1, 1, 0}));
  CHECK((c.truth.at(1, 1) == Matrix{{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}));
}

TEST_CASE("6x6 case with seed 42") {
  const auto c = oracle::build_case({{{1.0, {2, 1}}, {-2.0, {3}}}, 42});
  CHECK(c.a.n() == 6);
  CHECK(c.spectrum.eigenvalues == std::vector<Complex>{-2, 1});
  CHECK(c.spectrum.multiplicities == std::vector<std::size_t>{3, 3});
  CHECK(c.spectrum.indices == std::vector<std::size_t>{3, 2});
  CHECK(c.truth.parts.size() == 5);
  CHECK(invariant_residuals(c.truth).worst() <= 1e-10);
}

TEST_CASE("similarity sampling") {
  const auto a = oracle::build_case({{{1.0, {2}}, {0.0, {3}}}, 9});
  const auto b = oracle::build_case({{{1.0, {2}}, {0.0, {3}}}, 9});
  CHECK(a.a == b.a);
  CHECK(a.similarity == b.similarity);
  for (auto z : a.similarity.entries()) {
    CHECK(z.imag() == 0.0);
    CHECK(z.real() == std::round(z.real()));
    CHECK(std::abs(z.real()) <= 3.0);
  }
  CHECK(std::abs(determinant(a.similarity)) >= 1.0 - 1e-9);
  const auto sigma = singular_values(a.similarity);
  CHECK(sigma.front() <= 1e3 * sigma.back());

  oracle::JordanSpec tight{{{1.0, {4}}, {0.0, {4}}}, 9};
  tight.max_similarity_condition = 1.0;
  CHECK_THROWS_AS(oracle::build_case(tight), PreconditionError);
}

TEST_CASE("invalid specs") {
  CHECK_THROWS_AS(oracle::build_case({}), PreconditionError);
  CHECK_THROWS_AS(oracle::build_case({{{1.0, {}}}, 0}), PreconditionError);
  CHECK_THROWS_AS(oracle::build_case({{{1.0, {2, 0}}}, 0}), PreconditionError);
  CHECK_THROWS_AS(oracle::build_case({{{1.0, {1}}, {1.0, {2}}}, 0}), PreconditionError);
}

TEST_CASE("components_by_nullspace on closed forms") {
  SUBCASE("diag(0, 2)") {
    const Spectrum sp = make_spectrum(2, {0, 2}, {1, 1}, {1, 1});
    const auto cs = oracle::components_by_nullspace(Matrix::diagonal({0, 2}), sp);
    CHECK(frobenius_distance(cs.at(sp.zero_position(), 0), Matrix::diagonal({1, 0})) <= 1e-15);
  }
  SUBCASE("nilpotent block") {
    const Matrix a{{0, 1}, {0, 0}};
    const auto cs = oracle::components_by_nullspace(a, make_spectrum(2, {0}, {2}, {2}));
    CHECK(frobenius_distance(cs.at(0, 0), Matrix::identity(2)) <= 1e-15);
    CHECK(frobenius_distance(cs.at(0, 1), a) <= 1e-15);
  }
}

TEST_CASE("components_by_nullspace rejects a wrong spectrum") {
  const Matrix a{{0, 1}, {0, 0}};
  // Index 1 claims null(A) is two-dimensional; it is one-dimensional.
  CHECK_THROWS_AS(oracle::components_by_nullspace(a, make_spectrum(2, {0}, {2}, {1})), InconsistentSpectrumError);
  // 3 is not an eigenvalue of diag(0, 2).
  CHECK_THROWS_AS(oracle::components_by_nullspace(Matrix::diagonal({0, 2}), make_spectrum(2, {0, 3}, {1, 1}, {1, 1})),
                  InconsistentSpectrumError);
  CHECK_THROWS_AS(oracle::components_by_nullspace(Matrix::identity(3), make_spectrum(2, {1}, {2}, {1})),
                  PreconditionError);
}

TEST_CASE("the two oracles agree and the truth is exact") {
  for (const auto& spec : jordan_corpus(80, 31)) {
    const auto c = oracle::build_case(spec);
    CHECK(invariant_residuals(c.truth).worst() <= 1e-10);
    CHECK(worst_component_error(oracle::components_by_nullspace(c.a, c.spectrum), c.truth) <= 1e-8);
  }
}

TEST_CASE("oracle agreement on larger Jordan blocks") {
  for (std::size_t size = 1; size <= 7; ++size) {
    CAPTURE(size);
    const auto c = oracle::build_case({{{{0, 1}, {size}}, {-1.0, {8 - size}}}, 100 + size});
    CHECK(worst_component_error(oracle::components_by_nullspace(c.a, c.spectrum), c.truth) <= 1e-8);
  }
}
