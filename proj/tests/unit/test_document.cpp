#include <charconv>
#include <filesystem>
#include <limits>
#include <string>

#include "doctest.h"
#include "document.hpp"

using namespace eigenproj;
using namespace eigenproj::cli;

namespace {

const std::filesystem::path kData = EIGENPROJ_TEST_DATA;

}  // namespace

TEST_CASE("JSON matrix documents") {
  SUBCASE("row-major complex entries") {
    const auto doc = parse_json_document(R"({"n": 2, "entries": [[1, 2], [3, 0], [0, -1], [4.5, 0]]})");
    CHECK((doc.matrix == Matrix{{{1, 2}, 3}, {{0, -1}, 4.5}}));
    CHECK_FALSE(doc.spectrum.has_value());
  }
  SUBCASE("spectrum block") {
    const auto doc = load_document(kData / "jordan225.json");
    CHECK((doc.matrix == Matrix{{2, 1, 0}, {0, 2, 0}, {0, 0, 5}}));
    REQUIRE(doc.spectrum.has_value());
    REQUIRE(doc.spectrum->size() == 2);
    CHECK((*doc.spectrum)[0].value == Complex{2});
    CHECK((*doc.spectrum)[0].multiplicity == 2);
    CHECK((*doc.spectrum)[0].index == 2);
    CHECK((*doc.spectrum)[1].value == Complex{5});
  }
}

TEST_CASE("JSON syntax errors carry line and column") {
  try {
    load_document(kData / "malformed.json");
    FAIL("expected a DocumentError");
  } catch (const DocumentError& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() > 0);
    const std::string what = e.what();
    CHECK(what.find("malformed.json") != std::string::npos);
    CHECK(what.find("line 4") != std::string::npos);
  }
}

TEST_CASE("JSON structural errors name the location") {
  auto path_of = [](const char* text) {
    try {
      parse_json_document(text);
    } catch (const DocumentError& e) {
      CHECK(e.line() == 0);
      return e.path();
    }
    FAIL("expected a DocumentError");
    return std::string{};
  };
  CHECK(path_of(R"([1, 2])") == "");
  CHECK(path_of(R"({"entries": []})") == "");
  CHECK(path_of(R"({"n": -1, "entries": []})") == "/n");
  CHECK(path_of(R"({"n": 0, "entries": []})") == "/n");
  CHECK(path_of(R"({"n": 2, "entries": [[1, 0], [0, 0], [0, 0]]})") == "/entries");
  CHECK(path_of(R"({"n": 1, "entries": [[1]]})") == "/entries/0");
  CHECK(path_of(R"({"n": 1, "entries": [[1, "x"]]})") == "/entries/0/1");
  CHECK(path_of(R"({"n": 1, "entries": [[1, 0]], "spectrum": {}})") == "/spectrum");
  CHECK(path_of(R"({"n": 1, "entries": [[1, 0]], "spectrum": [{"value": [1, 0]}]})") == "/spectrum/0");
  CHECK(path_of(R"({"n": 2, "entries": [[1, 0], [0, 0], [0, 0], [1, 0]],
                    "spectrum": [{"value": [1, 0], "multiplicity": 1, "index": 1}]})") == "/spectrum");
}

TEST_CASE("CSV matrix documents") {
  SUBCASE("file with a comment line") {
    const auto doc = load_document(kData / "periodic.csv");
    CHECK((doc.matrix == Matrix{{0, 1}, {1, 0}}));
  }
  SUBCASE("whitespace, plus signs and CRLF") {
    const auto doc = parse_csv_document(" 1, +2 ,3,0\r\n0,-1, 4.5 ,0\r\n");
    CHECK((doc.matrix == Matrix{{{1, 2}, 3}, {{0, -1}, 4.5}}));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(parse_csv_document(""), DocumentError);
    CHECK_THROWS_AS(parse_csv_document("# only a comment\n"), DocumentError);
    CHECK_THROWS_AS(parse_csv_document("1,0,2\n"), DocumentError);
    CHECK_THROWS_AS(parse_csv_document("1,0,0,0\n0,0\n"), DocumentError);
    CHECK_THROWS_AS(parse_csv_document("1,0,0,0\n"), DocumentError);
    CHECK_THROWS_AS(parse_csv_document("nan,0\n"), DocumentError);
    try {
      parse_csv_document("1,0,0,0\n0,0,x,0\n");
      FAIL("expected a DocumentError");
    } catch (const DocumentError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() == 3);
    }
  }
}

TEST_CASE("missing files") {
  CHECK_THROWS_AS(load_document(kData / "does_not_exist.json"), DocumentError);
  CHECK_THROWS_AS(load_matrices(kData / "does_not_exist.csv"), DocumentError);
}

TEST_CASE("format_double round-trips") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-2.0) == "-2");
  CHECK(format_double(1e-300) == "1e-300");
  for (double x : {0.1, 1.0 / 3.0, -7.25e-13, 123456789.123, std::numeric_limits<double>::max(),
                   std::numeric_limits<double>::denorm_min()}) {
    const std::string text = format_double(x);
    double back = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), back);
    CHECK(back == x);
  }
}

TEST_CASE("matrix JSON and CSV round-trips are exact") {
  const Matrix m{{{0.1, -1.0 / 3.0}, 2e-17}, {{-5, 0.7}, {1e300, -1e-300}}};
  CHECK(matrix_from_json(parse_json_text(matrix_to_json(m).dump())) == m);
  CHECK(parse_csv_document(matrix_to_csv_rows(m)).matrix == m);
  CHECK(matrix_to_csv_rows(Matrix{{1, 0}, {0, 1}}) == "1,0,0,0\n0,0,1,0\n");
}

TEST_CASE("collect_matrices walks the whole document") {
  const Json j = parse_json_text(R"({
    "command": "components",
    "spectrum": {"eigenvalues": [[1, 0]]},
    "components": [
      {"k": 0, "j": 0, "matrix": {"n": 1, "entries": [[1, 0]]}},
      {"k": 1, "j": 0, "matrix": {"n": 1, "entries": [[0, 2]]}}
    ],
    "projector": {"n": 1, "entries": [[3, 0]]}
  })");
  const auto ms = collect_matrices(j);
  REQUIRE(ms.size() == 3);
  CHECK(ms[0] == Matrix{{1}});
  CHECK(ms[1] == Matrix{{Complex{0, 2}}});
  CHECK(ms[2] == Matrix{{3}});
  CHECK(load_matrices(kData / "periodic.csv").size() == 1);
  CHECK(load_matrices(kData / "jordan225.json").size() == 1);
}
