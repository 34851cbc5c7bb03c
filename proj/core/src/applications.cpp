#include "eigenproj/applications.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eigenproj/errors.hpp"

namespace eigenproj {

ScalarFunctionJet ScalarFunctionJet::identity() {
  return {[](Complex z, std::size_t j) -> Complex {
            if (j == 0) return z;
            return j == 1 ? Complex{1.0} : Complex{};
          },
          kMaxComponentOrder};
}

ScalarFunctionJet ScalarFunctionJet::power(std::size_t m) {
  return {[m](Complex z, std::size_t j) -> Complex {
            if (j > m) return {};
            // m (m-1) ... (m-j+1) z^{m-j}
            double falling = 1.0;
            for (std::size_t i = 0; i < j; ++i) falling *= static_cast<double>(m - i);
            Complex zp = 1.0;
            for (std::size_t i = 0; i < m - j; ++i) zp *= z;
            return falling * zp;
          },
          kMaxComponentOrder};
}

ScalarFunctionJet ScalarFunctionJet::exp() {
  return {[](Complex z, std::size_t) { return std::exp(z); }, kMaxComponentOrder};
}

Matrix matrix_function(const ComponentSet& cs, const ScalarFunctionJet& f) {
  if (!f.evaluator) throw PreconditionError("matrix_function: empty evaluator");
  Matrix result(cs.source.n());
  for (const auto& [key, z] : cs.parts) {
    if (key.j > f.max_order) {
      throw PreconditionError("matrix_function: derivative of order " + std::to_string(key.j) +
                              " required, jet supports up to " + std::to_string(f.max_order));
    }
    result += f.evaluator(cs.spectrum.eigenvalues[key.k], key.j) * z;
  }
  if (!result.all_finite()) throw NonFiniteError("matrix_function: result has non-finite entries");
  return result;
}

Matrix drazin_inverse(const Matrix& a, const Spectrum& sp, const ToleranceConfig& cfg) {
  const Matrix z = eigenprojection_zero(a, sp, cfg);
  const Matrix id = Matrix::identity(a.n());
  return solve(a + z, id - z, cfg);
}

namespace {

void require_stochastic(const Matrix& p, const ToleranceConfig& cfg) {
  for (std::size_t i = 0; i < p.n(); ++i) {
    Complex row{};
    for (std::size_t j = 0; j < p.n(); ++j) {
      const Complex x = p(i, j);
      if (x.real() < -cfg.verify_tol || std::abs(x.imag()) > cfg.verify_tol) {
        throw NotStochasticError("cesaro_limit: entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                 ") is not a nonnegative real");
      }
      row += x;
    }
    if (std::abs(row - 1.0) > cfg.verify_tol) {
      throw NotStochasticError("cesaro_limit: row " + std::to_string(i) + " sums to " +
                               std::to_string(row.real()) + ", not 1");
    }
  }
}

}  // namespace

Spectrum stochastic_spectrum(const Matrix& p, const ToleranceConfig& cfg) {
  cfg.validate();
  require_stochastic(p, cfg);
  const auto raw = eigenvalues_raw(p, cfg);
  auto clustered = cluster_spectrum(raw, cfg);
  const double radius = effective_cluster_radius(raw, cfg);

  std::size_t nearest = 0;
  for (std::size_t i = 1; i < clustered.values.size(); ++i)
    if (std::abs(clustered.values[i] - 1.0) < std::abs(clustered.values[nearest] - 1.0)) nearest = i;
  if (std::abs(clustered.values[nearest] - 1.0) > 10.0 * radius) {
    throw NotStochasticError("cesaro_limit: no eigenvalue within " + std::to_string(10.0 * radius) + " of 1");
  }
  clustered.values[nearest] = 1.0;

  std::vector<std::size_t> indices;
  indices.reserve(clustered.values.size());
  for (std::size_t i = 0; i < clustered.values.size(); ++i) {
    const std::size_t nu = eigen_index(p, clustered.values[i], cfg);
    if (nu == 0) {
      throw InconsistentSpectrumError("cesaro_limit: clustered value at position " + std::to_string(i) +
                                      " is not a numerical eigenvalue");
    }
    indices.push_back(std::min(nu, clustered.multiplicities[i]));
  }
  return make_spectrum(p.n(), clustered.values, clustered.multiplicities, indices);
}

Matrix cesaro_limit(const Matrix& p, const ToleranceConfig& cfg) {
  return cesaro_limit(p, stochastic_spectrum(p, cfg), cfg);
}

Matrix cesaro_limit(const Matrix& p, const Spectrum& sp, const ToleranceConfig& cfg) {
  cfg.validate();
  require_stochastic(p, cfg);
  if (sp.size() == 0) throw PreconditionError("cesaro_limit: empty spectrum");
  std::size_t one = 0;
  for (std::size_t i = 1; i < sp.size(); ++i)
    if (std::abs(sp.eigenvalues[i] - 1.0) < std::abs(sp.eigenvalues[one] - 1.0)) one = i;
  const double radius = effective_cluster_radius(sp.eigenvalues, cfg);
  if (std::abs(sp.eigenvalues[one] - 1.0) > 10.0 * radius) {
    throw NotStochasticError("cesaro_limit: spectrum has no eigenvalue at 1");
  }
  return component(p, sp, one, 0, cfg);
}

}  // namespace eigenproj
