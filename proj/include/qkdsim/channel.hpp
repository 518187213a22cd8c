#pragma once

#include <cmath>
#include <stdexcept>

#include "qkdsim/optics.hpp"

namespace qkdsim {

// One lossy fiber segment with intensity transmittance eta_sq.
struct ChannelSegment {
  double eta_sq = 1.0;

  explicit ChannelSegment(double eta_sq_in = 1.0) : eta_sq(eta_sq_in) {
    if (!(eta_sq >= 0.0 && eta_sq <= 1.0))
      throw std::invalid_argument("ChannelSegment: eta_sq outside [0, 1]");
  }
  double eta_amp() const { return std::sqrt(eta_sq); }
};

// Where an adversary may sit on the optical path. Taps are total: the handler
// either replaces the traffic entirely or passes it through.
enum class TapPosition { AliceToBobFirst, BobToAlice, AliceToBobFinal };

// Coherent pulses attenuate by eta in amplitude; Fock pulses lose each photon
// independently with probability 1 - eta_sq.
CoherentPulse transmit(const CoherentPulse& p, const ChannelSegment& seg, Rng& rng);
FockPulse transmit(const FockPulse& p, const ChannelSegment& seg, Rng& rng);
Pulse transmit(const Pulse& p, const ChannelSegment& seg, Rng& rng);

}  // namespace qkdsim
