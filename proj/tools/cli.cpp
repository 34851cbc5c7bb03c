#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "document.hpp"
#include "eigenproj/applications.hpp"
#include "eigenproj/components.hpp"
#include "eigenproj/eigenstructure.hpp"
#include "eigenproj/errors.hpp"
#include "eigenproj/matrix.hpp"

namespace eigenproj::cli {

namespace {

struct Options {
  std::string input;
  std::string against;
  double tol_eig = ToleranceConfig{}.eig_cluster_radius;
  double tol_rank = ToleranceConfig{}.rank_rel_threshold;
  double verify_tol = ToleranceConfig{}.verify_tol;
  std::string exponents = "minimal";
  bool use_given_spectrum = false;
  std::string format = "json";

  ToleranceConfig tolerances() const {
    ToleranceConfig cfg{tol_eig, tol_rank, verify_tol};
    cfg.validate();
    return cfg;
  }

  ExponentPolicy policy() const {
    return exponents == "worst-case" ? ExponentPolicy::worst_case() : ExponentPolicy::minimal();
  }
};

/// Everything a command produces; rendered as JSON or CSV at the end.
struct Report {
  Json doc = Json::object();
  std::vector<std::pair<std::string, Matrix>> matrices;
  std::vector<std::pair<std::string, double>> residuals;
  std::optional<Spectrum> spectrum;
  double verify_tol = 0.0;

  void residual(const std::string& name, double value) { residuals.emplace_back(name, value); }

  bool residuals_ok() const {
    return std::all_of(residuals.begin(), residuals.end(),
                       [this](const auto& r) { return r.second <= verify_tol; });
  }
};

double relative(const Matrix& diff, double scale) { return frobenius_norm(diff) / std::max(1.0, scale); }

Json spectrum_to_json(const Spectrum& sp, bool given) {
  Json values = Json::array();
  for (auto z : sp.eigenvalues) values.push_back(complex_to_json(z));
  Json j = Json::object();
  j["source"] = given ? "given" : "computed";
  j["eigenvalues"] = std::move(values);
  j["multiplicities"] = sp.multiplicities;
  j["indices"] = sp.indices;
  j["indices_are_bounds"] = sp.indices_are_bounds;
  j["exponents"] = sp.exponents;
  j["ind_a"] = sp.ind_a;
  j["u"] = sp.u;
  return j;
}

Spectrum spectrum_for(const MatrixDocument& doc, const Options& opt, const ToleranceConfig& cfg) {
  if (!opt.use_given_spectrum) return analyze(doc.matrix, cfg, opt.policy());
  if (!doc.spectrum) throw PreconditionError("--use-given-spectrum: input has no \"spectrum\" block");
  std::vector<Complex> values;
  std::vector<std::size_t> mult;
  std::vector<std::size_t> index;
  for (const auto& r : *doc.spectrum) {
    values.push_back(r.value);
    mult.push_back(r.multiplicity);
    index.push_back(r.index);
  }
  Spectrum sp = make_spectrum(doc.matrix.n(), values, mult, index, opt.policy());
  sp.validate(2.0 * effective_cluster_radius(sp.eigenvalues, cfg));
  return sp;
}

void projector_residuals(Report& rep, const Matrix& a, const Matrix& z, std::size_t ind_a) {
  const double nz = frobenius_norm(z);
  rep.residual("idempotency", relative(z * z - z, nz * nz));
  rep.residual("commutation", relative(a * z - z * a, frobenius_norm(a) * nz));
  const Matrix ap = mat_pow(a, ind_a);
  rep.residual("annihilation", relative(ap * z, frobenius_norm(ap) * nz));
}

void run_projector(Report& rep, const MatrixDocument& doc, const Spectrum& sp, const ToleranceConfig& cfg) {
  const Matrix z = eigenprojection_zero(doc.matrix, sp, cfg);
  rep.doc["projector"] = matrix_to_json(z);
  rep.matrices.emplace_back("projector", z);
  projector_residuals(rep, doc.matrix, z, sp.ind_a);
}

void run_components(Report& rep, const MatrixDocument& doc, const Spectrum& sp, const ToleranceConfig& cfg) {
  const Matrix& a = doc.matrix;
  const std::size_t n = a.n();
  const ComponentSet cs = all_components(a, sp, cfg);

  Json list = Json::array();
  for (const auto& [key, z] : cs.parts) {
    Json entry = Json::object();
    entry["k"] = key.k;
    entry["j"] = key.j;
    entry["eigenvalue"] = complex_to_json(sp.eigenvalues[key.k]);
    entry["matrix"] = matrix_to_json(z);
    list.push_back(std::move(entry));
    rep.matrices.emplace_back("Z_" + std::to_string(key.k) + "_" + std::to_string(key.j), z);
  }
  rep.doc["components"] = std::move(list);

  const double na = frobenius_norm(a);
  double idem = 0.0;
  double orth = 0.0;
  double comm = 0.0;
  double ladder = 0.0;
  Matrix sum(n);
  double sum_scale = 0.0;
  Matrix rebuilt(n);
  double rebuilt_scale = 0.0;
  for (std::size_t k = 0; k < sp.size(); ++k) {
    const Matrix& zk = cs.at(k, 0);
    const double nzk = frobenius_norm(zk);
    idem = std::max(idem, relative(zk * zk - zk, nzk * nzk));
    for (std::size_t l = 0; l < sp.size(); ++l) {
      if (l == k) continue;
      const Matrix& zl = cs.at(l, 0);
      orth = std::max(orth, relative(zk * zl, nzk * frobenius_norm(zl)));
    }
    sum += zk;
    sum_scale += nzk;
    rebuilt += sp.eigenvalues[k] * zk;
    rebuilt_scale += std::abs(sp.eigenvalues[k]) * nzk;
    if (sp.indices[k] > 1) {
      rebuilt += cs.at(k, 1);
      rebuilt_scale += frobenius_norm(cs.at(k, 1));
    }
    const Matrix b = shifted(a, sp.eigenvalues[k]);
    for (std::size_t j = 0; j < sp.indices[k]; ++j) {
      const Matrix& zkj = cs.at(k, j);
      comm = std::max(comm, relative(a * zkj - zkj * a, na * frobenius_norm(zkj)));
      if (j + 1 < sp.indices[k]) {
        ladder = std::max(ladder, relative(b * zkj - static_cast<double>(j + 1) * cs.at(k, j + 1),
                                           frobenius_norm(b) * frobenius_norm(zkj)));
      }
    }
  }
  const Matrix id = Matrix::identity(n);
  rep.residual("idempotency", idem);
  rep.residual("orthogonality", orth);
  rep.residual("resolution_of_identity", relative(sum - id, sum_scale));
  rep.residual("commutation", comm);
  rep.residual("ladder", ladder);
  rep.residual("reconstruction", relative(rebuilt - a, rebuilt_scale));
}

void run_drazin(Report& rep, const MatrixDocument& doc, const Spectrum& sp, const ToleranceConfig& cfg) {
  const Matrix& a = doc.matrix;
  const Matrix x = drazin_inverse(a, sp, cfg);
  rep.doc["drazin_inverse"] = matrix_to_json(x);
  rep.matrices.emplace_back("drazin_inverse", x);
  const double na = frobenius_norm(a);
  const double nx = frobenius_norm(x);
  const Matrix ak = mat_pow(a, sp.ind_a);
  rep.residual("outer_inverse", relative(x * a * x - x, nx * nx * na));
  rep.residual("commutation", relative(a * x - x * a, na * nx));
  rep.residual("index_power", relative(ak * a * x - ak, frobenius_norm(ak)));
}

void run_cesaro(Report& rep, const MatrixDocument& doc, const Options& opt, const ToleranceConfig& cfg) {
  const Matrix& p = doc.matrix;
  const Spectrum sp = opt.use_given_spectrum ? spectrum_for(doc, opt, cfg) : stochastic_spectrum(p, cfg);
  rep.spectrum = sp;
  const Matrix limit = cesaro_limit(p, sp, cfg);
  rep.doc["limit"] = matrix_to_json(limit);
  rep.matrices.emplace_back("limit", limit);
  const double nl = frobenius_norm(limit);
  const double np = frobenius_norm(p);
  rep.residual("idempotency", relative(limit * limit - limit, nl * nl));
  rep.residual("left_invariance", relative(p * limit - limit, np * nl));
  rep.residual("right_invariance", relative(limit * p - limit, np * nl));
  double row_sum = 0.0;
  for (std::size_t i = 0; i < limit.n(); ++i) {
    Complex s{};
    for (std::size_t j = 0; j < limit.n(); ++j) s += limit(i, j);
    row_sum = std::max(row_sum, std::abs(s - 1.0));
  }
  rep.residual("row_sums", row_sum);
}

int run_verify(const Options& opt, std::ostream& out) {
  const ToleranceConfig cfg = opt.tolerances();
  const auto lhs = load_matrices(opt.input);
  const auto rhs = load_matrices(opt.against);
  if (lhs.empty()) throw PreconditionError("verify: no matrices in " + opt.input);
  if (lhs.size() != rhs.size()) {
    throw PreconditionError("verify: " + std::to_string(lhs.size()) + " matrices in input, " +
                            std::to_string(rhs.size()) + " in reference");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) worst = std::max(worst, max_abs_deviation(lhs[i], rhs[i]));
  const bool pass = worst <= cfg.verify_tol;

  if (opt.format == "csv") {
    out << "# eigenproj verify\n";
    out << "matrices_compared," << lhs.size() << '\n';
    out << "max_deviation," << format_double(worst) << '\n';
    out << "verify_tol," << format_double(cfg.verify_tol) << '\n';
    out << "status," << (pass ? "ok" : "deviation_exceeds_verify_tol") << '\n';
  } else {
    Json j = Json::object();
    j["command"] = "verify";
    j["matrices_compared"] = lhs.size();
    j["max_deviation"] = worst;
    j["verify_tol"] = cfg.verify_tol;
    j["status"] = pass ? "ok" : "deviation_exceeds_verify_tol";
    out << j.dump(2) << '\n';
  }
  return pass ? kOk : kVerificationFailed;
}

void write_csv(const std::string& command, const Report& rep, std::ostream& out) {
  out << "# eigenproj " << command << '\n';
  if (rep.spectrum) {
    const Spectrum& sp = *rep.spectrum;
    out << "# spectrum: k,re,im,multiplicity,index,exponent\n";
    for (std::size_t k = 0; k < sp.size(); ++k) {
      out << "spectrum," << k << ',' << format_double(sp.eigenvalues[k].real()) << ','
          << format_double(sp.eigenvalues[k].imag()) << ',' << sp.multiplicities[k] << ',' << sp.indices[k] << ','
          << sp.exponents[k] << '\n';
    }
  }
  for (const auto& [label, m] : rep.matrices) {
    out << "# matrix: label,n then n rows of re,im pairs\n";
    out << "matrix," << label << ',' << m.n() << '\n';
    out << matrix_to_csv_rows(m);
  }
  if (!rep.residuals.empty()) out << "# residuals: name,value\n";
  for (const auto& [name, value] : rep.residuals) out << "residual," << name << ',' << format_double(value) << '\n';
}

int run_matrix_command(const std::string& command, const Options& opt, std::ostream& out) {
  const ToleranceConfig cfg = opt.tolerances();
  const MatrixDocument doc = load_document(opt.input);

  Report rep;
  rep.verify_tol = cfg.verify_tol;
  if (command == "cesaro") {
    run_cesaro(rep, doc, opt, cfg);
  } else {
    // "spectrum" stops here: no matrices, no residuals.
    rep.spectrum = spectrum_for(doc, opt, cfg);
    if (command == "projector") {
      run_projector(rep, doc, *rep.spectrum, cfg);
    } else if (command == "components") {
      run_components(rep, doc, *rep.spectrum, cfg);
    } else if (command == "drazin") {
      run_drazin(rep, doc, *rep.spectrum, cfg);
    }
  }

  const bool ok = rep.residuals_ok();
  if (opt.format == "csv") {
    write_csv(command, rep, out);
  } else {
    Json j = Json::object();
    j["command"] = command;
    j["n"] = doc.matrix.n();
    j["exponent_policy"] = command == "cesaro" && !opt.use_given_spectrum ? "minimal" : opt.exponents;
    Json tol = Json::object();
    tol["eig_cluster_radius"] = cfg.eig_cluster_radius;
    tol["rank_rel_threshold"] = cfg.rank_rel_threshold;
    tol["verify_tol"] = cfg.verify_tol;
    j["tolerances"] = std::move(tol);
    if (rep.spectrum) j["spectrum"] = spectrum_to_json(*rep.spectrum, opt.use_given_spectrum);
    for (auto& [key, value] : rep.doc.items()) j[key] = value;
    Json res = Json::object();
    for (const auto& [name, value] : rep.residuals) res[name] = value;
    j["residuals"] = std::move(res);
    j["status"] = ok ? "ok" : "residual_exceeds_verify_tol";
    out << j.dump(2) << '\n';
  }
  return ok ? kOk : kVerificationFailed;
}

void add_common_flags(CLI::App* sub, Options& opt) {
  sub->add_option("--input", opt.input, "Matrix document (.json or .csv)")->required();
  sub->add_option("--tol-eig", opt.tol_eig, "Relative eigenvalue clustering radius")->check(CLI::PositiveNumber);
  sub->add_option("--tol-rank", opt.tol_rank, "Relative singular value threshold for rank")
      ->check(CLI::PositiveNumber);
  sub->add_option("--verify-tol", opt.verify_tol, "Tolerance for residual checks")->check(CLI::PositiveNumber);
  sub->add_option("--exponents", opt.exponents, "Exponent policy")
      ->check(CLI::IsMember({"minimal", "worst-case"}));
  sub->add_flag("--use-given-spectrum", opt.use_given_spectrum,
                "Trust the document's spectrum block instead of computing eigenvalues");
  sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral components, eigenprojections and Drazin inverses of dense complex matrices",
               "eigenproj"};
  app.require_subcommand(1);
  Options opt;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"spectrum", "Distinct eigenvalues, multiplicities, indices and exponents"},
      {"projector", "Eigenprojection at eigenvalue zero"},
      {"components", "All spectral components Z_kj"},
      {"drazin", "Drazin inverse"},
      {"cesaro", "Cesaro limit of a row-stochastic matrix"},
      {"verify", "Compare the matrices of two documents entrywise"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common_flags(sub, opt);
    if (name == "verify") {
      sub->add_option("--against", opt.against, "Reference document")->required();
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "eigenproj: " << e.what() << '\n';
    return kPrecondition;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (command == "verify") return run_verify(opt, out);
    return run_matrix_command(command, opt, out);
  } catch (const DocumentError& e) {
    err << "eigenproj: " << e.what() << '\n';
    return kBadInput;
  } catch (const DimensionError& e) {
    err << "eigenproj: " << e.what() << '\n';
    return kBadInput;
  } catch (const PreconditionError& e) {
    err << "eigenproj: precondition violated: " << e.what() << '\n';
    return kPrecondition;
  } catch (const InconsistentSpectrumError& e) {
    err << "eigenproj: precondition violated: " << e.what() << '\n';
    return kPrecondition;
  } catch (const Error& e) {
    // Conditioning guard, non-convergence, overflow, singular solves.
    err << "eigenproj: numerical failure: " << e.what() << '\n';
    return kConditioning;
  }
}

}  // namespace eigenproj::cli
