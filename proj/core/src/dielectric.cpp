#include "casimir/dielectric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir::dielectric {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

ImagAxisGrid::ImagAxisGrid(std::vector<double> xi, std::vector<double> eps)
    : xi_(std::move(xi)), eps_(std::move(eps)) {
  if (xi_.size() != eps_.size() || xi_.size() < 2) {
    throw DataQualityError("ImagAxisGrid: need >= 2 samples and equal lengths");
  }
  for (std::size_t i = 0; i < xi_.size(); ++i) {
    if (!(xi_[i] > 0.0) || (i > 0 && !(xi_[i] > xi_[i - 1]))) {
      throw DataQualityError("ImagAxisGrid: xi must be positive and strictly increasing");
    }
    if (!(eps_[i] >= 1.0)) throw DataQualityError("ImagAxisGrid: eps must be >= 1");
  }
}

double ImagAxisGrid::interpolate(double xi) const {
  if (xi < xi_.front() || xi > xi_.back()) {
    throw DomainError("ImagAxisGrid: xi outside grid");
  }
  const auto it = std::lower_bound(xi_.begin(), xi_.end(), xi);
  const auto i = static_cast<std::size_t>(it - xi_.begin());
  if (i == 0) return eps_.front();
  if (xi_[i] == xi) return eps_[i];
  const double t = std::log(xi / xi_[i - 1]) / std::log(xi_[i] / xi_[i - 1]);
  return std::exp(std::log(eps_[i - 1]) + t * (std::log(eps_[i]) - std::log(eps_[i - 1])));
}

double eps_imag_from_nk(double n, double k) {
  if (n < 0.0 || k < 0.0) throw DomainError("eps_imag_from_nk: n and k must be >= 0");
  return 2.0 * n * k;
}

double drude_eps(double xi, double omega_p, double gamma) {
  if (!(xi > 0.0)) throw DomainError("drude_eps: xi must be > 0 (diverges at 0)");
  return 1.0 + omega_p * omega_p / (xi * xi + gamma * xi);
}

double plasma_eps(double xi, double omega_p) {
  if (!(xi > 0.0)) throw DomainError("plasma_eps: xi must be > 0 (diverges at 0)");
  return 1.0 + omega_p * omega_p / (xi * xi);
}

double oscillator_eps(double xi, double n_ref, double omega_uv, int exponent) {
  if (xi < 0.0) throw DomainError("oscillator_eps: xi must be >= 0");
  const double ratio = xi / omega_uv;
  const double damping = exponent == 2 ? ratio * ratio : ratio;
  return 1.0 + (n_ref * n_ref - 1.0) / (1.0 + damping);
}

double water_eps(double xi, const WaterOscillators& p) {
  if (xi < 0.0) throw DomainError("water_eps: xi must be >= 0");
  if (p.terms.empty() && p.debye_strength == 0.0) {
    throw ConfigError("water_eps: empty parameter set");
  }
  double eps = 1.0 + p.debye_strength / (1.0 + p.debye_time * xi);
  for (const auto& t : p.terms) {
    eps += t.strength / (t.omega * t.omega + xi * xi + t.damping * xi);
  }
  return eps;
}

double drude_loss(double omega, double omega_p, double gamma) {
  if (!(omega > 0.0)) throw DomainError("drude_loss: omega must be > 0");
  return omega_p * omega_p * gamma / (omega * (omega * omega + gamma * gamma));
}

double plasma_frequency_from_density(double electrons_per_m3) {
  namespace c = constants;
  if (!(electrons_per_m3 > 0.0)) throw DomainError("electron density must be > 0");
  return std::sqrt(electrons_per_m3 * c::elementary_charge * c::elementary_charge /
                   (c::vacuum_permittivity * c::electron_mass));
}

SingleOscillator make_oscillator(double n_ref, double omega_uv, int exponent,
                                 std::optional<double> plasma_omega_p) {
  if (!(n_ref > 1.0)) throw ConfigError("oscillator: n_ref must be > 1");
  if (!(omega_uv > 0.0)) throw ConfigError("oscillator: omega_uv must be > 0");
  if (exponent != 1 && exponent != 2) throw ConfigError("oscillator: exponent must be 1 or 2");

  SingleOscillator osc{n_ref, omega_uv, exponent, plasma_omega_p, kInf};
  if (!plasma_omega_p) return osc;
  const double wp = *plasma_omega_p;
  if (!(wp > 0.0)) throw ConfigError("oscillator: plasma frequency must be > 0");

  // Switch where the plasma curve meets the oscillator curve from below, and
  // never before ω_p, so ε stays continuous and non-increasing.
  const double s = n_ref * n_ref - 1.0;
  const double wp2 = wp * wp;
  double crossing = kInf;
  if (exponent == 1) {
    // s ξ² - (ω_p²/ω_UV) ξ - ω_p² = 0
    const double b = wp2 / omega_uv;
    crossing = (b + std::sqrt(b * b + 4.0 * s * wp2)) / (2.0 * s);
  } else {
    const double denom = s - wp2 / (omega_uv * omega_uv);
    if (denom > 0.0) crossing = std::sqrt(wp2 / denom);
  }
  osc.plasma_crossover = std::max(wp, crossing);
  return osc;
}

double evaluate(const DielectricModel& model, double xi) {
  if (xi < 0.0 || std::isnan(xi)) throw DomainError("evaluate: xi must be >= 0");
  if (xi == 0.0) return static_permittivity(model);
  return std::visit(
      overloaded{
          [](const Vacuum&) { return 1.0; },
          [](const Constant& m) { return m.value; },
          [xi](const Drude& m) { return drude_eps(xi, m.omega_p, m.gamma); },
          [xi](const Plasma& m) { return plasma_eps(xi, m.omega_p); },
          [xi](const SingleOscillator& m) {
            if (m.plasma_omega_p && xi > m.plasma_crossover) {
              return plasma_eps(xi, *m.plasma_omega_p);
            }
            return oscillator_eps(xi, m.n_ref, m.omega_uv, m.exponent);
          },
          [xi](const WaterOscillators& m) { return water_eps(xi, m); },
          [xi](const TabulatedKK& m) {
            if (xi < m.grid->xi_min()) {
              return drude_eps(xi, m.low_tail.omega_p, m.low_tail.gamma);
            }
            if (xi > m.grid->xi_max()) return plasma_eps(xi, m.high_tail_omega_p);
            return m.grid->interpolate(xi);
          },
      },
      model);
}

double static_permittivity(const DielectricModel& model) {
  return std::visit(
      overloaded{
          [](const Vacuum&) { return 1.0; },
          [](const Constant& m) { return m.value; },
          [](const Drude& m) { return m.omega_p > 0.0 ? kInf : 1.0; },
          [](const Plasma& m) { return m.omega_p > 0.0 ? kInf : 1.0; },
          [](const SingleOscillator& m) { return m.n_ref * m.n_ref; },
          [](const WaterOscillators& m) { return water_eps(0.0, m); },
          [](const TabulatedKK& m) { return m.low_tail.omega_p > 0.0 ? kInf : 1.0; },
      },
      model);
}

double static_xi2_susceptibility(const DielectricModel& model) {
  if (const auto* p = std::get_if<Plasma>(&model)) return p->omega_p * p->omega_p;
  return 0.0;
}

std::string describe(const DielectricModel& model) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const Vacuum&) { os << "vacuum"; },
                 [&](const Constant& m) { os << "constant(" << m.value << ")"; },
                 [&](const Drude& m) { os << "drude(wp=" << m.omega_p << ",gamma=" << m.gamma << ")"; },
                 [&](const Plasma& m) { os << "plasma(wp=" << m.omega_p << ")"; },
                 [&](const SingleOscillator& m) {
                   os << "oscillator(n=" << m.n_ref << ",w_uv=" << m.omega_uv
                      << ",q=" << m.exponent << ")";
                 },
                 [&](const WaterOscillators& m) { os << "water(" << m.terms.size() << " terms)"; },
                 [&](const TabulatedKK& m) {
                   os << "tabulated_kk(" << m.grid->xi().size() << " pts,wp=" << m.low_tail.omega_p
                      << ")";
                 },
             },
             model);
  return os.str();
}

}  // namespace casimir::dielectric
