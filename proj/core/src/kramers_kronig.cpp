#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/dielectric.hpp"
#include "casimir/errors.hpp"

namespace casimir::dielectric {

namespace {

constexpr double kTwoOverPi = 2.0 / constants::pi;

}  // namespace

double drude_kk_below(double cutoff, double xi, const DrudeParams& drude) {
  if (!(cutoff > 0.0) || drude.omega_p == 0.0) return 0.0;
  const double g = drude.gamma;
  if (!(g > 0.0)) throw DomainError("Drude tail needs gamma > 0");
  const double wp2g = drude.omega_p * drude.omega_p * g;

  // ∫_0^L dx / ((x²+γ²)(x²+ξ²)), partial fractions unless ξ ≈ γ.
  double integral = 0.0;
  if (std::abs(xi - g) > 1e-6 * g) {
    integral = (std::atan(cutoff / g) / g - std::atan(cutoff / xi) / xi) / (xi * xi - g * g);
  } else {
    const double L = cutoff;
    integral = L / (2.0 * g * g * (L * L + g * g)) + std::atan(L / g) / (2.0 * g * g * g);
  }
  return kTwoOverPi * wp2g * integral;
}

double kk_transform(const std::function<double(double)>& eps_imag, double xi,
                    const KkOptions& options) {
  if (!(xi > 0.0)) throw DomainError("kk_transform: xi must be > 0");
  if (!(options.omega_lo > 0.0) || !(options.omega_hi > options.omega_lo)) {
    throw DomainError("kk_transform: need 0 < omega_lo < omega_hi");
  }
  if (options.points_per_decade < 2) throw DomainError("kk_transform: points_per_decade < 2");

  const double u_lo = std::log(options.omega_lo);
  const double u_hi = std::log(options.omega_hi);
  const double decades = std::log10(options.omega_hi / options.omega_lo);
  const auto coarse_intervals =
      static_cast<std::size_t>(std::ceil(decades * options.points_per_decade));
  const std::size_t fine_intervals = 2 * coarse_intervals;
  const double h = (u_hi - u_lo) / static_cast<double>(fine_intervals);
  const double xi2 = xi * xi;

  double fine = 0.0;
  double coarse = 0.0;
  for (std::size_t i = 0; i <= fine_intervals; ++i) {
    const double x = std::exp(u_lo + h * static_cast<double>(i));
    const double loss = eps_imag(x);
    if (loss < 0.0 || !std::isfinite(loss)) {
      throw DataQualityError("kk_transform: eps'' must be finite and >= 0");
    }
    // dx = x du, so the integrand in u is x² ε''(x) / (x² + ξ²).
    const double x2 = x * x;
    const double g = x2 * loss / (x2 + xi2);
    const double w = (i == 0 || i == fine_intervals) ? 0.5 : 1.0;
    fine += w * g;
    if (i % 2 == 0) coarse += w * g;
  }
  fine *= h;
  coarse *= 2.0 * h;

  if (std::abs(fine - coarse) > options.rel_tol * std::abs(fine) + 1e-14) {
    throw AccuracyError("kk_transform: refinement changed the integral by " +
                        std::to_string(std::abs(fine - coarse) / std::max(std::abs(fine), 1e-300)) +
                        " (relative) at xi=" + std::to_string(xi));
  }

  double result = 1.0 + kTwoOverPi * fine;
  if (options.low_tail) result += drude_kk_below(options.omega_lo, xi, *options.low_tail);
  return result;
}

double tabulated_eps_imag(const OpticalDataTable& table, const DrudeParams& drude, double omega) {
  const auto samples = table.samples();
  if (omega < table.omega_min()) {
    return drude.omega_p > 0.0 ? drude_loss(omega, drude.omega_p, drude.gamma) : 0.0;
  }
  if (omega > table.omega_max()) return 0.0;

  const auto it = std::lower_bound(
      samples.begin(), samples.end(), omega,
      [](const OpticalSample& s, double w) { return s.omega < w; });
  if (it == samples.begin()) return eps_imag_from_nk(it->n, it->k);
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double t = std::log(omega / lo.omega) / std::log(hi.omega / lo.omega);
  const double e_lo = eps_imag_from_nk(lo.n, lo.k);
  const double e_hi = eps_imag_from_nk(hi.n, hi.k);
  return e_lo + t * (e_hi - e_lo);
}

TabulatedKK build_tabulated_model(const OpticalDataTable& table, const DrudeParams& drude,
                                  const GridOptions& options) {
  if (table.widest_gap_ratio() > 10.0) {
    throw DataQualityError("optical table has a gap wider than one decade (ratio " +
                           std::to_string(table.widest_gap_ratio()) + ")");
  }
  if (!(options.xi_min > 0.0) || !(options.xi_max > options.xi_min)) {
    throw DomainError("grid bounds must satisfy 0 < xi_min < xi_max");
  }

  KkOptions kk = options.kk;
  if (drude.omega_p > 0.0 && table.omega_min() > kk.omega_lo) {
    kk.low_tail = drude;
  } else {
    kk.low_tail.reset();
  }

  const double decades = std::log10(options.xi_max / options.xi_min);
  const auto n = static_cast<std::size_t>(std::ceil(decades * options.points_per_decade)) + 1;
  std::vector<double> xi(n);
  std::vector<double> eps(n);
  const auto loss = [&](double w) { return tabulated_eps_imag(table, drude, w); };
  for (std::size_t i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(n - 1);
    xi[i] = options.xi_min * std::pow(options.xi_max / options.xi_min, f);
    eps[i] = kk_transform(loss, xi[i], kk);
  }

  TabulatedKK model;
  model.grid = std::make_shared<const ImagAxisGrid>(std::move(xi), std::move(eps));
  model.low_tail = drude;
  model.high_tail_omega_p = drude.omega_p;
  return model;
}

}  // namespace casimir::dielectric
