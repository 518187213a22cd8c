#pragma once

#include <utility>

#include "qkdsim/channel.hpp"
#include "qkdsim/optics.hpp"

namespace qkdsim {

// Which operator Alice applies in her encoding step. K3Style applies
// k(pi/2) to pulse 0 and (k^1)(pi/2) to pulse 1, which makes the surviving
// angle phi + (s_b ^ k ^ b)(pi/2) [+ b*delta*(pi/4)] and the decoding
// k = l ^ b ^ s_b exact. LiteralW3 applies k(pi/2) to both pulses and pairs
// with the decoding k = l ^ s_b.
enum class EncodingStyle { K3Style, LiteralW3 };

struct ProtocolParams {
  double alpha = 2.83;   // Alice's initial pulse amplitude
  double eta_sq = 0.5;   // per-segment intensity transmittance
  int segments = 3;      // one-way segments before Bob's final detection
  long long rounds = 100000;
  double p_test = 0.5;        // probability Alice tests in W3
  double w7_fraction = 0.25;  // fraction of kept key sampled in W7
  EncodingStyle encoding = EncodingStyle::K3Style;
};

struct RoundSecrets {
  double theta0 = 0.0, theta1 = 0.0;  // Alice's angles
  double phi = 0.0;                   // Bob's angle
  int s0 = 0, s1 = 0;                 // Bob's shuffle bits
  int k = 0;                          // Alice's key bit
  int b = 0;                          // Alice's blocking factor
};

enum class Disposition {
  KEY,
  DISCARD_NO_CLICK,
  DISCARD_AMBIGUOUS,
  DISCARD_DELTA_MISMATCH,  // Protocol W only: Delta != b*delta
  TEST,                    // Protocol W only: Alice consumed the round in W3
  INVALID_BLOCKED_VACUUM,  // Protocol W only: blocked pulse showed no click
};
const char* to_string(Disposition d);

struct RoundTranscript {
  RoundSecrets secrets;
  Outcome bob_outcome = Outcome::NONE;
  Disposition disposition = Disposition::DISCARD_NO_CLICK;
  int l = -1;        // Bob's raw measured value, when single-click
  int bob_key = -1;  // Bob's decoded bit on KEY rounds
  bool blocked_click = false;
};

// K1: two coherent pulses of amplitude alpha at uniform angles theta0, theta1.
std::pair<CoherentPulse, CoherentPulse> alice_prepare(double alpha, RoundSecrets& secrets,
                                                      Rng& rng);

// K2: pulse i rotated by phi + s_i (pi/2).
std::pair<Pulse, Pulse> bob_shuffle(std::pair<Pulse, Pulse> pulses, double phi, int s0, int s1);

// K3: apply the encoding operator, block pulse 1-b (threshold-detecting it),
// return the survivor.
struct EncodeResult {
  CoherentPulse survivor;
  bool blocked_click = false;
};
EncodeResult alice_encode_block(const std::pair<CoherentPulse, CoherentPulse>& pulses,
                                const RoundSecrets& secrets, EncodingStyle encoding, Rng& rng);

// K4: rotate by -phi, measure in the {0, pi/2} basis, decode.
void bob_decode(const Pulse& pulse, double phi, int s0, int s1, int b_announced,
                EncodingStyle encoding, RoundTranscript& out, Rng& rng);

// Decoded bit from the announced values: k = l ^ b ^ s_b (K3Style) or
// k = l ^ s_b (LiteralW3).
int decode_key_bit(int l, int b, int s0, int s1, EncodingStyle encoding);

}  // namespace qkdsim
