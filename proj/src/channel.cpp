#include "qkdsim/channel.hpp"

namespace qkdsim {

CoherentPulse transmit(const CoherentPulse& p, const ChannelSegment& seg, Rng&) {
  return attenuate(p, seg.eta_amp());
}

FockPulse transmit(const FockPulse& p, const ChannelSegment& seg, Rng& rng) {
  int survivors = 0;
  for (int i = 0; i < p.n; ++i)
    if (uniform01(rng) < seg.eta_sq) ++survivors;
  return {survivors, p.pol};
}

Pulse transmit(const Pulse& p, const ChannelSegment& seg, Rng& rng) {
  return std::visit([&](const auto& v) -> Pulse { return transmit(v, seg, rng); }, p);
}

}  // namespace qkdsim
