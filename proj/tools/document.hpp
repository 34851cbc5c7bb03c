#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "eigenproj/errors.hpp"
#include "eigenproj/matrix.hpp"

namespace eigenproj::cli {

using Json = nlohmann::ordered_json;

/// Malformed input. `line` and `column` are 1-based; zero when the problem
/// is structural rather than positional, in which case `path` names the
/// offending JSON location.
class DocumentError : public Error {
 public:
  DocumentError(const std::string& what, std::size_t line, std::size_t column, std::string path = {})
      : Error(what), line_(line), column_(column), path_(std::move(path)) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& path() const noexcept { return path_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string path_;
};

struct SpectrumRecord {
  Complex value;
  std::size_t multiplicity = 0;
  std::size_t index = 0;
};

/// A matrix plus an optional caller-supplied spectrum.
///
/// JSON form:
///   {"n": 2, "entries": [[re, im], ...],            // n*n, row-major
///    "spectrum": [{"value": [re, im], "multiplicity": m, "index": nu}, ...]}
/// CSV form: n rows of 2n columns, re,im alternating; '#' lines ignored.
struct MatrixDocument {
  Matrix matrix;
  std::optional<std::vector<SpectrumRecord>> spectrum;
};

MatrixDocument parse_json_document(std::string_view text);
MatrixDocument parse_csv_document(std::string_view text);

/// Reads a file; `.csv` selects the CSV reader, anything else JSON.
/// Errors name the file.
MatrixDocument load_document(const std::filesystem::path& path);

/// Every matrix in a file: the single matrix of a CSV document, or all
/// {"n", "entries"} objects of a JSON document. Errors name the file.
std::vector<Matrix> load_matrices(const std::filesystem::path& path);

/// Parses text into a JSON value, mapping syntax errors to DocumentError
/// with line and column.
Json parse_json_text(std::string_view text);

std::string read_file(const std::filesystem::path& path);

Json complex_to_json(Complex z);
Json matrix_to_json(const Matrix& m);

/// Reads {"n", "entries"}; `where` prefixes diagnostic paths.
Matrix matrix_from_json(const Json& j, const std::string& where = "");

/// Every {"n", "entries"} object in document order.
std::vector<Matrix> collect_matrices(const Json& j);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

/// n lines of "re,im,re,im,..." for a matrix.
std::string matrix_to_csv_rows(const Matrix& m);

}  // namespace eigenproj::cli
