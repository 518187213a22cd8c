#include "qkdsim/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace qkdsim {

double FockModeState::norm_sq() const {
  double s = 0.0;
  for (const auto& [occ, amp] : amplitudes) s += std::norm(amp);
  return s;
}

int FockModeState::total_photons() const {
  int total = -1;
  for (const auto& [occ, amp] : amplitudes) {
    int n = occ[0] + occ[1] + occ[2] + occ[3];
    if (total < 0)
      total = n;
    else if (n != total)
      return -1;
  }
  return total;
}

double hom_coincidence_prob(double delta_pol) {
  double c = std::cos(delta_pol);
  return (1.0 - c * c) / 2.0;
}

namespace {

// Apply a creation operator that is a linear combination of the four output
// modes to every basis vector of the state.
FockModeState apply_creation(const FockModeState& state, const std::array<double, 4>& coeff) {
  FockModeState out;
  for (const auto& [occ, amp] : state.amplitudes) {
    for (int m = 0; m < 4; ++m) {
      if (coeff[m] == 0.0) continue;
      Occupation next = occ;
      ++next[m];
      out.amplitudes[next] += amp * coeff[m] * std::sqrt(static_cast<double>(next[m]));
    }
  }
  return out;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Beamsplitter images of the input-mode creation operators, per polarization:
//   in1 -> t out1 + r out2,  in2 -> r out1 - t out2.
std::array<double, 4> input_mode_image(int mode, double r_amp) {
  double t = std::sqrt(1.0 - r_amp * r_amp);
  switch (mode) {
    case 0: return {t, 0.0, r_amp, 0.0};    // port1 H
    case 1: return {0.0, t, 0.0, r_amp};    // port1 V
    case 2: return {r_amp, 0.0, -t, 0.0};   // port2 H
    default: return {0.0, r_amp, 0.0, -t};  // port2 V
  }
}

}  // namespace

FockModeState beamsplit_fock_state(const FockPulse& a, const FockPulse& b, double r_amp) {
  if (a.n + b.n > kFockNMax)
    throw std::invalid_argument("beamsplit_fock_state: photon total exceeds N_max");
  double t = std::sqrt(1.0 - r_amp * r_amp);
  // Photon of pulse a enters port 1 at pol a.pol, pulse b enters port 2.
  std::array<double, 4> ca = {t * std::cos(a.pol), t * std::sin(a.pol),
                              r_amp * std::cos(a.pol), r_amp * std::sin(a.pol)};
  std::array<double, 4> cb = {r_amp * std::cos(b.pol), r_amp * std::sin(b.pol),
                              -t * std::cos(b.pol), -t * std::sin(b.pol)};
  FockModeState state;
  state.amplitudes[{0, 0, 0, 0}] = 1.0;
  for (int i = 0; i < a.n; ++i) state = apply_creation(state, ca);
  for (int i = 0; i < b.n; ++i) state = apply_creation(state, cb);
  double scale = 1.0 / std::sqrt(factorial(a.n) * factorial(b.n));
  for (auto& [occ, amp] : state.amplitudes) amp *= scale;
  return state;
}

std::map<std::pair<int, int>, double> beamsplit_fock_oracle(const FockPulse& a,
                                                            const FockPulse& b,
                                                            double r_amp) {
  FockModeState state = beamsplit_fock_state(a, b, r_amp);
  std::map<std::pair<int, int>, double> dist;
  for (const auto& [occ, amp] : state.amplitudes)
    dist[{occ[0] + occ[1], occ[2] + occ[3]}] += std::norm(amp);
  return dist;
}

FockModeState apply_beamsplitter(const Occupation& occ, double r_amp) {
  FockModeState state;
  state.amplitudes[{0, 0, 0, 0}] = 1.0;
  double scale = 1.0;
  for (int mode = 0; mode < 4; ++mode) {
    auto image = input_mode_image(mode, r_amp);
    for (int i = 0; i < occ[mode]; ++i) state = apply_creation(state, image);
    scale *= factorial(occ[mode]);
  }
  scale = 1.0 / std::sqrt(scale);
  for (auto& [o, amp] : state.amplitudes) amp *= scale;
  return state;
}

}  // namespace qkdsim
