#pragma once

#include <array>
#include <map>
#include <utility>

#include "qkdsim/optics.hpp"

namespace qkdsim {

// Capacity of the exact multimode interference oracle.
constexpr int kFockNMax = 6;

// Mode ordering: (port1 H, port1 V, port2 H, port2 V).
using Occupation = std::array<int, 4>;

// Small exact Fock-basis state over the 4 output modes of a two-port,
// two-polarization beamsplitter.
struct FockModeState {
  std::map<Occupation, Complex> amplitudes;

  double norm_sq() const;
  int total_photons() const;  // common to all basis vectors; -1 if mixed
};

// Coincidence probability for two single photons on a 50:50 beamsplitter
// whose polarizations differ by delta_pol: (1 - cos^2 delta_pol) / 2.
double hom_coincidence_prob(double delta_pol);

// Exact output state for Fock pulses a (input port 1) and b (input port 2)
// through the beamsplitter out1 = t in1 + r in2, out2 = r in1 - t in2.
// Throws std::invalid_argument when a.n + b.n > kFockNMax.
FockModeState beamsplit_fock_state(const FockPulse& a, const FockPulse& b, double r_amp);

// Output photon-count distribution per port, summed over polarization.
// Keys are (n_port1, n_port2); values sum to 1.
std::map<std::pair<int, int>, double> beamsplit_fock_oracle(const FockPulse& a,
                                                            const FockPulse& b,
                                                            double r_amp);

// Image of one input occupation basis vector under the beamsplitter unitary;
// used to check unitarity of the map on the truncated Fock space.
FockModeState apply_beamsplitter(const Occupation& occ, double r_amp);

}  // namespace qkdsim
