#include "eigenproj/eigenstructure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "eigenproj/errors.hpp"

namespace eigenproj {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Householder reduction to upper Hessenberg form; similarity preserving.
Matrix hessenberg(Matrix h) {
  const std::size_t n = h.n();
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double xnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm += std::norm(h(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    const Complex x0 = h(k + 1, k);
    const Complex phase = std::abs(x0) == 0.0 ? Complex{1.0} : x0 / std::abs(x0);
    const Complex alpha = -phase * xnorm;

    std::vector<Complex> v(n);
    v[k + 1] = x0 - alpha;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = h(i, k);
    double vnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm += std::norm(v[i]);
    if (vnorm == 0.0) continue;
    const double beta = 2.0 / vnorm;

    // H <- (I - beta v v^H) H
    for (std::size_t j = 0; j < n; ++j) {
      Complex s{};
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * h(i, j);
      s *= beta;
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= v[i] * s;
    }
    // H <- H (I - beta v v^H)
    for (std::size_t i = 0; i < n; ++i) {
      Complex s{};
      for (std::size_t j = k + 1; j < n; ++j) s += h(i, j) * v[j];
      s *= beta;
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= s * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
  return h;
}

struct Givens {
  double c;
  Complex s;
};

// Rotation with [c s; -conj(s) c] * [x; y] = [r; 0].
Givens make_givens(Complex x, Complex y) {
  const double ax = std::abs(x);
  const double ay = std::abs(y);
  if (ay == 0.0) return {1.0, 0.0};
  if (ax == 0.0) return {0.0, std::conj(y) / ay};
  const double r = std::hypot(ax, ay);
  return {ax / r, (x / ax) * std::conj(y) / r};
}

Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
  const Complex half_diff = 0.5 * (a - d);
  const Complex disc = std::sqrt(half_diff * half_diff + b * c);
  const Complex mid = 0.5 * (a + d);
  const Complex r1 = mid + disc;
  const Complex r2 = mid - disc;
  return std::abs(r1 - d) < std::abs(r2 - d) ? r1 : r2;
}

double argument(Complex z, double tol) {
  if (std::abs(z.imag()) <= tol) return z.real() < 0.0 ? std::numbers::pi : 0.0;
  return std::arg(z);
}

std::size_t index_of_zero(const Spectrum& sp) {
  const std::size_t z = sp.zero_position();
  return z == sp.size() ? 0 : sp.indices[z];
}

void apply_policy(Spectrum& sp, const ExponentPolicy& policy) {
  const std::size_t s = sp.size();
  switch (policy.kind) {
    case ExponentPolicy::Kind::minimal:
      sp.exponents = sp.indices;
      sp.u = std::max<std::size_t>(sp.ind_a, 1);
      break;
    case ExponentPolicy::Kind::worst_case:
      sp.exponents = sp.multiplicities;
      sp.u = sp.source_dim;
      break;
    case ExponentPolicy::Kind::explicit_list:
      if (policy.exponents.size() != s) {
        throw PreconditionError("explicit exponents: expected " + std::to_string(s) +
                                " values, got " + std::to_string(policy.exponents.size()));
      }
      for (std::size_t i = 0; i < s; ++i) {
        if (policy.exponents[i] < sp.indices[i]) {
          throw PreconditionError("explicit exponents: u_" + std::to_string(i) + " = " +
                                  std::to_string(policy.exponents[i]) + " is below index " +
                                  std::to_string(sp.indices[i]));
        }
      }
      if (policy.u < sp.ind_a) {
        throw PreconditionError("explicit exponents: u = " + std::to_string(policy.u) +
                                " is below ind A = " + std::to_string(sp.ind_a));
      }
      sp.exponents = policy.exponents;
      sp.u = policy.u;
      break;
  }
}

template <typename T>
std::vector<T> permuted(const std::vector<T>& v, const std::vector<std::size_t>& order) {
  std::vector<T> out;
  out.reserve(order.size());
  for (auto i : order) out.push_back(v[i]);
  return out;
}

std::vector<std::size_t> canonical_order(const std::vector<Complex>& values, double tie_tol) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const double mx = std::abs(values[x]);
    const double my = std::abs(values[y]);
    if (std::abs(mx - my) > tie_tol) return mx > my;
    return argument(values[x], tie_tol) < argument(values[y], tie_tol);
  });
  return order;
}

double default_tie_tol(const std::vector<Complex>& values) {
  double scale = 1.0;
  for (auto z : values) scale = std::max(scale, std::abs(z));
  return 1e-12 * scale;
}

}  // namespace

std::size_t Spectrum::zero_position() const noexcept {
  for (std::size_t i = 0; i < eigenvalues.size(); ++i)
    if (eigenvalues[i] == Complex{}) return i;
  return eigenvalues.size();
}

void Spectrum::validate(double min_separation) const {
  const std::size_t s = eigenvalues.size();
  if (s == 0) throw PreconditionError("spectrum: no eigenvalues");
  if (multiplicities.size() != s || indices.size() != s || exponents.size() != s) {
    throw PreconditionError("spectrum: field lengths disagree");
  }
  const std::size_t total = std::accumulate(multiplicities.begin(), multiplicities.end(), std::size_t{0});
  if (total != source_dim) {
    throw PreconditionError("spectrum: multiplicities sum to " + std::to_string(total) +
                            ", expected " + std::to_string(source_dim));
  }
  for (std::size_t i = 0; i < s; ++i) {
    const std::string at = " at position " + std::to_string(i);
    if (!std::isfinite(eigenvalues[i].real()) || !std::isfinite(eigenvalues[i].imag()))
      throw PreconditionError("spectrum: non-finite eigenvalue" + at);
    if (multiplicities[i] == 0) throw PreconditionError("spectrum: zero multiplicity" + at);
    if (indices[i] == 0 || indices[i] > multiplicities[i])
      throw PreconditionError("spectrum: index outside [1, multiplicity]" + at);
    if (exponents[i] < indices[i]) throw PreconditionError("spectrum: exponent below index" + at);
    for (std::size_t j = i + 1; j < s; ++j) {
      if (std::abs(eigenvalues[i] - eigenvalues[j]) <= min_separation) {
        throw PreconditionError("spectrum: eigenvalues at positions " + std::to_string(i) + " and " +
                                std::to_string(j) + " are not distinct");
      }
    }
  }
  if (ind_a != index_of_zero(*this)) throw PreconditionError("spectrum: ind_a disagrees with index of 0");
  if (u < ind_a) throw PreconditionError("spectrum: u is below ind A");
}

std::vector<Complex> eigenvalues_raw(const Matrix& a, const ToleranceConfig& cfg) {
  cfg.validate();
  const std::size_t n = a.n();
  Matrix h = hessenberg(a);
  const double anorm = frobenius_norm(h);
  std::vector<Complex> eig(n);
  if (anorm == 0.0) return eig;

  const std::size_t max_iter = 60 * n;
  std::size_t total_iter = 0;
  std::size_t since_deflation = 0;
  std::size_t hi = n - 1;
  while (true) {
    // Find the start of the unreduced block ending at hi.
    std::size_t lo = hi;
    while (lo > 0) {
      const double sub = std::abs(h(lo, lo - 1));
      double tst = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
      if (tst == 0.0) tst = anorm;
      if (sub <= kEps * tst || sub <= kEps * anorm) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      eig[hi] = h(hi, hi);
      since_deflation = 0;
      if (hi == 0) break;
      --hi;
      continue;
    }
    if (++total_iter > max_iter) {
      throw ConvergenceError("eigenvalues_raw: QR iteration did not converge for a " + std::to_string(n) +
                                 "x" + std::to_string(n) + " matrix after " + std::to_string(total_iter - 1) +
                                 " iterations",
                             total_iter - 1);
    }
    ++since_deflation;

    Complex mu;
    if (since_deflation % 11 == 10) {
      // Exceptional shift to break cycles.
      mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
    } else {
      mu = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
    }

    for (std::size_t i = lo; i <= hi; ++i) h(i, i) -= mu;
    std::vector<Givens> rot;
    rot.reserve(hi - lo);
    for (std::size_t k = lo; k < hi; ++k) {
      const Givens g = make_givens(h(k, k), h(k + 1, k));
      rot.push_back(g);
      for (std::size_t j = k; j <= hi; ++j) {
        const Complex x = h(k, j);
        const Complex y = h(k + 1, j);
        h(k, j) = g.c * x + g.s * y;
        h(k + 1, j) = -std::conj(g.s) * x + g.c * y;
      }
    }
    for (std::size_t k = lo; k < hi; ++k) {
      const Givens& g = rot[k - lo];
      const std::size_t last = std::min(k + 2, hi);
      for (std::size_t i = lo; i <= last; ++i) {
        const Complex x = h(i, k);
        const Complex y = h(i, k + 1);
        h(i, k) = x * g.c + y * std::conj(g.s);
        h(i, k + 1) = -x * g.s + y * g.c;
      }
    }
    for (std::size_t i = lo; i <= hi; ++i) h(i, i) += mu;
  }
  return eig;
}

double effective_cluster_radius(std::span<const Complex> values, const ToleranceConfig& cfg) {
  double scale = 1.0;
  for (auto z : values) scale = std::max(scale, std::abs(z));
  return cfg.eig_cluster_radius * scale;
}

void sort_canonical(ClusteredValues& cv, double tie_tol) {
  const auto order = canonical_order(cv.values, tie_tol);
  cv.values = permuted(cv.values, order);
  cv.multiplicities = permuted(cv.multiplicities, order);
}

ClusteredValues cluster_spectrum(std::span<const Complex> values, const ToleranceConfig& cfg) {
  cfg.validate();
  if (values.empty()) throw PreconditionError("cluster_spectrum: empty value list");
  const double radius = effective_cluster_radius(values, cfg);

  ClusteredValues cv;
  for (auto z : values) {
    cv.values.push_back(z);
    cv.multiplicities.push_back(1);
  }

  while (cv.values.size() > 1) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0;
    std::size_t bj = 0;
    for (std::size_t i = 0; i < cv.values.size(); ++i) {
      for (std::size_t j = i + 1; j < cv.values.size(); ++j) {
        const double d = std::abs(cv.values[i] - cv.values[j]);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    if (best > radius) break;
    const auto wi = static_cast<double>(cv.multiplicities[bi]);
    const auto wj = static_cast<double>(cv.multiplicities[bj]);
    cv.values[bi] = (wi * cv.values[bi] + wj * cv.values[bj]) / (wi + wj);
    cv.multiplicities[bi] += cv.multiplicities[bj];
    cv.values.erase(cv.values.begin() + static_cast<std::ptrdiff_t>(bj));
    cv.multiplicities.erase(cv.multiplicities.begin() + static_cast<std::ptrdiff_t>(bj));
  }

  for (std::size_t i = 0; i < cv.values.size(); ++i) {
    for (std::size_t j = i + 1; j < cv.values.size(); ++j) {
      if (std::abs(cv.values[i] - cv.values[j]) <= 2.0 * radius) {
        throw ClusteringError(
            "cluster_spectrum: eigenvalue clusters closer than twice the radius; choose a different "
            "--tol-eig or supply the spectrum");
      }
    }
  }

  for (auto& z : cv.values)
    if (std::abs(z) <= radius) z = 0.0;

  sort_canonical(cv, radius);
  return cv;
}

std::size_t eigen_index(const Matrix& a, Complex lambda, const ToleranceConfig& cfg) {
  cfg.validate();
  return nilpotent_index(shifted(a, lambda), cfg, spectral_norm(a));
}

Spectrum analyze(const Matrix& a, const ToleranceConfig& cfg, const ExponentPolicy& policy) {
  cfg.validate();
  const auto raw = eigenvalues_raw(a, cfg);
  const auto clustered = cluster_spectrum(raw, cfg);

  Spectrum sp;
  sp.source_dim = a.n();
  sp.eigenvalues = clustered.values;
  sp.multiplicities = clustered.multiplicities;

  if (policy.kind == ExponentPolicy::Kind::worst_case) {
    sp.indices = sp.multiplicities;
    sp.indices_are_bounds = true;
  } else {
    sp.indices.reserve(sp.size());
    for (std::size_t i = 0; i < sp.size(); ++i) {
      const std::size_t nu = eigen_index(a, sp.eigenvalues[i], cfg);
      if (nu == 0) {
        throw InconsistentSpectrumError("analyze: clustered value at position " + std::to_string(i) +
                                        " is not a numerical eigenvalue; loosen --tol-rank or --tol-eig");
      }
      // A rank plateau longer than the multiplicity means the clustering
      // split one eigenvalue; cap at the multiplicity bound.
      sp.indices.push_back(std::min(nu, sp.multiplicities[i]));
    }
  }
  sp.ind_a = index_of_zero(sp);
  apply_policy(sp, policy);
  sp.validate();
  return sp;
}

Spectrum make_spectrum(std::size_t n, std::vector<Complex> eigenvalues, std::vector<std::size_t> multiplicities,
                       std::vector<std::size_t> indices, const ExponentPolicy& policy) {
  if (multiplicities.size() != eigenvalues.size() || indices.size() != eigenvalues.size()) {
    throw PreconditionError("make_spectrum: eigenvalue, multiplicity and index lists differ in length");
  }
  const auto order = canonical_order(eigenvalues, default_tie_tol(eigenvalues));
  Spectrum sp;
  sp.source_dim = n;
  sp.eigenvalues = permuted(eigenvalues, order);
  sp.multiplicities = permuted(multiplicities, order);
  sp.indices = permuted(indices, order);
  sp.exponents = sp.indices;
  sp.ind_a = index_of_zero(sp);
  sp.u = std::max<std::size_t>(sp.ind_a, 1);
  sp.validate();
  apply_policy(sp, policy);
  sp.validate();
  return sp;
}

Spectrum shift_spectrum(const Spectrum& sp, std::size_t k) {
  if (k >= sp.size()) throw PreconditionError("shift_spectrum: position out of range");
  std::vector<Complex> moved;
  moved.reserve(sp.size());
  for (auto z : sp.eigenvalues) moved.push_back(z - sp.eigenvalues[k]);
  const auto order = canonical_order(moved, default_tie_tol(moved));

  Spectrum out;
  out.source_dim = sp.source_dim;
  out.eigenvalues = permuted(moved, order);
  out.multiplicities = permuted(sp.multiplicities, order);
  out.indices = permuted(sp.indices, order);
  out.exponents = permuted(sp.exponents, order);
  out.indices_are_bounds = sp.indices_are_bounds;
  out.ind_a = sp.indices[k];
  out.u = sp.exponents[k];
  out.validate();
  return out;
}

}  // namespace eigenproj
