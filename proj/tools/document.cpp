#include "document.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace eigenproj::cli {

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

[[noreturn]] void fail_at(const std::string& path, const std::string& what) {
  throw DocumentError(what + " at " + (path.empty() ? "/" : path), 0, 0, path);
}

double number_at(const Json& j, const std::string& path) {
  if (!j.is_number()) fail_at(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) fail_at(path, "non-finite number");
  return x;
}

std::size_t count_at(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    fail_at(path, "expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

Complex complex_at(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) fail_at(path, "expected a [re, im] pair");
  return {number_at(j[0], path + "/0"), number_at(j[1], path + "/1")};
}

double parse_csv_field(std::string_view field, std::size_t line, std::size_t column) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) {
    field.remove_suffix(1);
  }
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), x);
  if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(x)) {
    throw DocumentError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                            ": not a finite number: '" + std::string(field) + "'",
                        line, column);
  }
  return x;
}

void collect_into(const Json& j, std::vector<Matrix>& out, const std::string& path) {
  if (j.is_object()) {
    if (j.contains("n") && j.contains("entries")) {
      out.push_back(matrix_from_json(j, path));
      return;
    }
    for (const auto& [key, value] : j.items()) collect_into(value, out, path + "/" + key);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) collect_into(j[i], out, path + "/" + std::to_string(i));
  }
}

}  // namespace

Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw DocumentError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                            ": malformed JSON (" + e.what() + ")",
                        line, column);
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError("cannot open " + path.string(), 0, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json matrix_to_json(const Matrix& m) {
  Json entries = Json::array();
  for (auto z : m.entries()) entries.push_back(complex_to_json(z));
  Json j = Json::object();
  j["n"] = m.n();
  j["entries"] = std::move(entries);
  return j;
}

Matrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) fail_at(where, "expected an object");
  if (!j.contains("n")) fail_at(where, "missing \"n\"");
  if (!j.contains("entries")) fail_at(where, "missing \"entries\"");
  const std::size_t n = count_at(j["n"], where + "/n");
  if (n == 0) fail_at(where + "/n", "dimension must be positive");
  const auto& entries = j["entries"];
  if (!entries.is_array()) fail_at(where + "/entries", "expected an array");
  if (entries.size() != n * n) {
    fail_at(where + "/entries",
            "expected " + std::to_string(n * n) + " entries, found " + std::to_string(entries.size()));
  }
  std::vector<Complex> values;
  values.reserve(n * n);
  for (std::size_t i = 0; i < entries.size(); ++i)
    values.push_back(complex_at(entries[i], where + "/entries/" + std::to_string(i)));
  return Matrix(n, std::move(values));
}

MatrixDocument parse_json_document(std::string_view text) {
  const Json j = parse_json_text(text);
  MatrixDocument doc{matrix_from_json(j), std::nullopt};
  if (j.contains("spectrum")) {
    const auto& sp = j["spectrum"];
    if (!sp.is_array()) fail_at("/spectrum", "expected an array");
    std::vector<SpectrumRecord> records;
    std::size_t total = 0;
    for (std::size_t i = 0; i < sp.size(); ++i) {
      const std::string at = "/spectrum/" + std::to_string(i);
      const auto& r = sp[i];
      if (!r.is_object() || !r.contains("value") || !r.contains("multiplicity") || !r.contains("index")) {
        fail_at(at, "expected {\"value\", \"multiplicity\", \"index\"}");
      }
      SpectrumRecord rec{complex_at(r["value"], at + "/value"), count_at(r["multiplicity"], at + "/multiplicity"),
                         count_at(r["index"], at + "/index")};
      total += rec.multiplicity;
      records.push_back(rec);
    }
    if (total != doc.matrix.n()) {
      fail_at("/spectrum", "multiplicities sum to " + std::to_string(total) + ", expected " +
                               std::to_string(doc.matrix.n()));
    }
    doc.spectrum = std::move(records);
  }
  return doc;
}

MatrixDocument parse_csv_document(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos || line.front() == '#') continue;

    std::vector<double> row;
    std::size_t column = 1;
    while (true) {
      const auto comma = line.find(',');
      row.push_back(parse_csv_field(line.substr(0, comma), line_no, column));
      if (comma == std::string_view::npos) break;
      line.remove_prefix(comma + 1);
      ++column;
    }
    rows.push_back(std::move(row));
    if (rows.back().size() % 2 != 0) {
      throw DocumentError("line " + std::to_string(line_no) + ": odd number of columns; expected re,im pairs",
                          line_no, rows.back().size());
    }
  }
  if (rows.empty()) throw DocumentError("empty CSV document", 1, 1);
  const std::size_t n = rows.size();
  std::vector<Complex> values;
  values.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != 2 * n) {
      throw DocumentError("row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) +
                              " columns, expected " + std::to_string(2 * n),
                          r + 1, rows[r].size());
    }
    for (std::size_t c = 0; c < n; ++c) values.emplace_back(rows[r][2 * c], rows[r][2 * c + 1]);
  }
  return {Matrix(n, std::move(values)), std::nullopt};
}

MatrixDocument load_document(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    if (path.extension() == ".csv") return parse_csv_document(text);
    return parse_json_document(text);
  } catch (const DocumentError& e) {
    throw DocumentError(path.string() + ": " + e.what(), e.line(), e.column(), e.path());
  }
}

std::vector<Matrix> load_matrices(const std::filesystem::path& path) {
  if (path.extension() == ".csv") return {load_document(path).matrix};
  const std::string text = read_file(path);
  try {
    return collect_matrices(parse_json_text(text));
  } catch (const DocumentError& e) {
    throw DocumentError(path.string() + ": " + e.what(), e.line(), e.column(), e.path());
  }
}

std::vector<Matrix> collect_matrices(const Json& j) {
  std::vector<Matrix> out;
  collect_into(j, out, "");
  return out;
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string matrix_to_csv_rows(const Matrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.n(); ++i) {
    for (std::size_t j = 0; j < m.n(); ++j) {
      if (j > 0) out += ',';
      out += format_double(m(i, j).real());
      out += ',';
      out += format_double(m(i, j).imag());
    }
    out += '\n';
  }
  return out;
}

}  // namespace eigenproj::cli
