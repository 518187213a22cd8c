#include "qkdsim/kkkp.hpp"

namespace qkdsim {

const char* to_string(Disposition d) {
  switch (d) {
    case Disposition::KEY: return "KEY";
    case Disposition::DISCARD_NO_CLICK: return "DISCARD_NO_CLICK";
    case Disposition::DISCARD_AMBIGUOUS: return "DISCARD_AMBIGUOUS";
    case Disposition::DISCARD_DELTA_MISMATCH: return "DISCARD_DELTA_MISMATCH";
    case Disposition::TEST: return "TEST";
    case Disposition::INVALID_BLOCKED_VACUUM: return "INVALID_BLOCKED_VACUUM";
  }
  return "?";
}

std::pair<CoherentPulse, CoherentPulse> alice_prepare(double alpha, RoundSecrets& secrets,
                                                      Rng& rng) {
  secrets.theta0 = uniform01(rng) * kPi;
  secrets.theta1 = uniform01(rng) * kPi;
  return {CoherentPulse::at_angle(alpha, secrets.theta0),
          CoherentPulse::at_angle(alpha, secrets.theta1)};
}

std::pair<Pulse, Pulse> bob_shuffle(std::pair<Pulse, Pulse> pulses, double phi, int s0, int s1) {
  return {rotate(pulses.first, phi + s0 * (kPi / 2.0)),
          rotate(pulses.second, phi + s1 * (kPi / 2.0))};
}

EncodeResult alice_encode_block(const std::pair<CoherentPulse, CoherentPulse>& pulses,
                                const RoundSecrets& secrets, EncodingStyle encoding, Rng& rng) {
  int k1 = encoding == EncodingStyle::K3Style ? (secrets.k ^ 1) : secrets.k;
  CoherentPulse p0 = rotate(pulses.first, -secrets.theta0 + secrets.k * (kPi / 2.0));
  CoherentPulse p1 = rotate(pulses.second, -secrets.theta1 + k1 * (kPi / 2.0));
  EncodeResult res;
  if (secrets.b == 0) {
    res.survivor = p0;
    res.blocked_click = threshold_detect(p1, rng);
  } else {
    res.survivor = p1;
    res.blocked_click = threshold_detect(p0, rng);
  }
  return res;
}

int decode_key_bit(int l, int b, int s0, int s1, EncodingStyle encoding) {
  int sb = b == 0 ? s0 : s1;
  int k = l ^ sb;
  if (encoding == EncodingStyle::K3Style) k ^= b;
  return k;
}

void bob_decode(const Pulse& pulse, double phi, int s0, int s1, int b_announced,
                EncodingStyle encoding, RoundTranscript& out, Rng& rng) {
  Pulse aligned = rotate(pulse, -phi);
  out.bob_outcome = measure_polarization(aligned, 0.0, rng);
  switch (out.bob_outcome) {
    case Outcome::ZERO:
      out.l = 0;
      break;
    case Outcome::ONE:
      out.l = 1;
      break;
    case Outcome::BOTH:
      out.disposition = Disposition::DISCARD_AMBIGUOUS;
      return;
    case Outcome::NONE:
      out.disposition = Disposition::DISCARD_NO_CLICK;
      return;
  }
  out.bob_key = decode_key_bit(out.l, b_announced, s0, s1, encoding);
  out.disposition = Disposition::KEY;
}

}  // namespace qkdsim
