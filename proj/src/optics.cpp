#include "qkdsim/optics.hpp"

#include <cmath>
#include <stdexcept>

namespace qkdsim {

double canonical_angle(double a) {
  double r = std::fmod(a, kPi);
  if (r < 0.0) r += kPi;
  if (r >= kPi) r = 0.0;  // fmod can land exactly on pi after the add
  return r;
}

bool same_polarization(double a, double b, double tol) {
  double d = std::fabs(canonical_angle(a) - canonical_angle(b));
  return d <= tol || std::fabs(d - kPi) <= tol;
}

CoherentPulse CoherentPulse::at_angle(double amplitude, double angle) {
  return {Complex(amplitude * std::cos(angle), 0.0),
          Complex(amplitude * std::sin(angle), 0.0)};
}

double CoherentPulse::angle() const {
  if (is_vacuum()) return 0.0;
  return canonical_angle(std::atan2(amp_v.real(), amp_h.real()));
}

CoherentPulse rotate(const CoherentPulse& p, double angle) {
  double c = std::cos(angle), s = std::sin(angle);
  return {c * p.amp_h - s * p.amp_v, s * p.amp_h + c * p.amp_v};
}

FockPulse rotate(const FockPulse& p, double angle) {
  return {p.n, canonical_angle(p.pol + angle)};
}

Pulse rotate(const Pulse& p, double angle) {
  return std::visit([&](const auto& v) -> Pulse { return rotate(v, angle); }, p);
}

CoherentPulse attenuate(const CoherentPulse& p, double transmittance_amp) {
  if (!(transmittance_amp >= 0.0 && transmittance_amp <= 1.0))
    throw std::invalid_argument("attenuate: transmittance_amp outside [0, 1]");
  return {p.amp_h * transmittance_amp, p.amp_v * transmittance_amp};
}

std::pair<CoherentPulse, CoherentPulse> beamsplit_coherent(const CoherentPulse& a,
                                                           const CoherentPulse& b,
                                                           double r_amp) {
  double t_amp = std::sqrt(1.0 - r_amp * r_amp);
  CoherentPulse out1{t_amp * a.amp_h + r_amp * b.amp_h,
                     t_amp * a.amp_v + r_amp * b.amp_v};
  CoherentPulse out2{r_amp * a.amp_h - t_amp * b.amp_h,
                     r_amp * a.amp_v - t_amp * b.amp_v};
  return {out1, out2};
}

double click_probability(double mu) { return -std::expm1(-mu); }

bool threshold_detect(const CoherentPulse& p, Rng& rng) {
  return uniform01(rng) < click_probability(p.mu());
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::ZERO: return "ZERO";
    case Outcome::ONE: return "ONE";
    case Outcome::BOTH: return "BOTH";
    case Outcome::NONE: return "NONE";
  }
  return "?";
}

namespace {
Outcome outcome_from_clicks(bool aligned, bool orthogonal) {
  if (aligned && orthogonal) return Outcome::BOTH;
  if (aligned) return Outcome::ZERO;
  if (orthogonal) return Outcome::ONE;
  return Outcome::NONE;
}
}  // namespace

Outcome measure_polarization(const CoherentPulse& p, double basis_angle, Rng& rng) {
  // Components along basis_angle and basis_angle + pi/2.
  CoherentPulse in_basis = rotate(p, -basis_angle);
  double mu_aligned = std::norm(in_basis.amp_h);
  double mu_orth = std::norm(in_basis.amp_v);
  bool click_a = uniform01(rng) < click_probability(mu_aligned);
  bool click_o = uniform01(rng) < click_probability(mu_orth);
  return outcome_from_clicks(click_a, click_o);
}

Outcome measure_polarization(const FockPulse& p, double basis_angle, Rng& rng) {
  double c = std::cos(p.pol - basis_angle);
  double p_aligned = c * c;
  int aligned = 0, orth = 0;
  for (int i = 0; i < p.n; ++i) {
    if (uniform01(rng) < p_aligned)
      ++aligned;
    else
      ++orth;
  }
  return outcome_from_clicks(aligned > 0, orth > 0);
}

Outcome measure_polarization(const Pulse& p, double basis_angle, Rng& rng) {
  return std::visit([&](const auto& v) { return measure_polarization(v, basis_angle, rng); }, p);
}

QndResult qnd_photon_presence(const FockPulse& p, Rng&) { return {p.n, p}; }

QndResult qnd_photon_presence(const CoherentPulse& p, Rng& rng) {
  int n = 0;
  double mu = p.mu();
  if (mu > 0.0) n = std::poisson_distribution<int>(mu)(rng);
  return {n, FockPulse{n, p.angle()}};
}

QndResult qnd_photon_presence(const Pulse& p, Rng& rng) {
  return std::visit([&](const auto& v) { return qnd_photon_presence(v, rng); }, p);
}

}  // namespace qkdsim
