#pragma once

#include <complex>
#include <utility>
#include <variant>

#include "qkdsim/rng.hpp"

namespace qkdsim {

using Complex = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
// Polarization states are pi-periodic; equality is tested mod pi.
constexpr double kAngleTol = 1e-9;

// Canonicalize a polarization angle into [0, pi).
double canonical_angle(double a);
bool same_polarization(double a, double b, double tol = kAngleTol);

// Polarized coherent pulse as a two-component Jones amplitude (H/V) in
// sqrt-photon units. Mean photon number mu = |amp_h|^2 + |amp_v|^2.
struct CoherentPulse {
  Complex amp_h{0.0, 0.0};
  Complex amp_v{0.0, 0.0};

  static CoherentPulse vacuum() { return {}; }
  // (amp_h, amp_v) = (amplitude cos angle, amplitude sin angle).
  static CoherentPulse at_angle(double amplitude, double angle);

  double mu() const { return std::norm(amp_h) + std::norm(amp_v); }
  bool is_vacuum(double tol = 1e-30) const { return mu() <= tol; }
  // Polarization angle in [0, pi); meaningful for linearly polarized pulses,
  // which is the only kind this simulator produces.
  double angle() const;
};

// Photon-number eigenstate at a definite linear polarization.
struct FockPulse {
  int n = 0;
  double pol = 0.0;  // canonical [0, pi)

  static FockPulse vacuum() { return {0, 0.0}; }
};

using Pulse = std::variant<CoherentPulse, FockPulse>;

// Real 2x2 rotation [[cos, -sin], [sin, cos]] applied to the Jones vector.
// Preserves mu exactly.
CoherentPulse rotate(const CoherentPulse& p, double angle);
FockPulse rotate(const FockPulse& p, double angle);
Pulse rotate(const Pulse& p, double angle);

// Both amplitudes scaled by transmittance_amp in [0, 1]; mu scales by its
// square. Throws std::invalid_argument when out of range.
CoherentPulse attenuate(const CoherentPulse& p, double transmittance_amp);

// Lossless two-port beamsplitter with real orthogonal convention
//   out1 = t a + r b,  out2 = r a - t b,   t = sqrt(1 - r^2),
// applied per polarization component. Total mu is conserved.
std::pair<CoherentPulse, CoherentPulse> beamsplit_coherent(const CoherentPulse& a,
                                                           const CoherentPulse& b,
                                                           double r_amp);

// Threshold detector: clicks with probability 1 - exp(-mu).
double click_probability(double mu);
bool threshold_detect(const CoherentPulse& p, Rng& rng);

enum class Outcome { ZERO, ONE, BOTH, NONE };
const char* to_string(Outcome o);

// Polarizing measurement: decompose along basis_angle and basis_angle + pi/2,
// threshold-detect each component independently. ZERO = only the aligned
// detector clicked, ONE = only the orthogonal one.
Outcome measure_polarization(const CoherentPulse& p, double basis_angle, Rng& rng);
// Fock variant: each photon routes to the aligned detector with probability
// cos^2(pol - basis_angle), independently.
Outcome measure_polarization(const FockPulse& p, double basis_angle, Rng& rng);
Outcome measure_polarization(const Pulse& p, double basis_angle, Rng& rng);

// Idealized quantum non-demolition photon presence check. Fock input: the
// photon number is read out without disturbance. Coherent input: a Poisson
// photon number is sampled and the pulse collapses to that Fock count at the
// same polarization.
struct QndResult {
  int count = 0;
  FockPulse state;
};
QndResult qnd_photon_presence(const FockPulse& p, Rng& rng);
QndResult qnd_photon_presence(const CoherentPulse& p, Rng& rng);
QndResult qnd_photon_presence(const Pulse& p, Rng& rng);

}  // namespace qkdsim
