#pragma once

#include <vector>

#include "qkdsim/fock.hpp"
#include "qkdsim/kkkp.hpp"

namespace qkdsim {

struct WRoundSecrets : RoundSecrets {
  int delta = 0;       // Bob's quarter-turn bit
  int Delta = 0;       // Bob's unshuffle guess, drawn from {0, delta}
  int omega = 0;       // Alice's test rotation index in {0..3}
  bool is_test = false;
};

enum class ClickPattern { SINGLE_PORT, BOTH_PORTS, NONE };
const char* to_string(ClickPattern p);

struct WTestRecord {
  int omega = 0;
  int s0 = 0, s1 = 0, delta = 0;  // announced by Bob in W6
  ClickPattern pattern = ClickPattern::NONE;
  bool considered = false;  // omega == 2(s0+s1) - delta (mod 4)
};

// W2: pulse 0 rotated by phi + s0(pi/2), pulse 1 by phi + delta(pi/4) + s1(pi/2).
std::pair<Pulse, Pulse> bob_shuffle_w(std::pair<Pulse, Pulse> pulses, double phi, int s0,
                                      int s1, int delta);

// W3 test branch: remove Alice's own angles, rotate pulse 1 by omega(pi/4),
// interfere on a 50:50 beamsplitter, threshold-detect both ports.
// omega is drawn uniformly from {0..3} before the call.
ClickPattern alice_interference_test(const CoherentPulse& p0, const CoherentPulse& p1,
                                     double theta0, double theta1, int omega, Rng& rng);
// Fock variant: samples the exact oracle's output occupation.
ClickPattern alice_interference_test(const FockPulse& p0, const FockPulse& p1, double theta0,
                                     double theta1, int omega, Rng& rng);

bool test_considered(int omega, int s0, int s1, int delta);

// W3 continue branch: same encoding machinery as K3.
// W4: rotate by -phi - Delta(pi/4), measure in the {0, pi/2} basis. Data is
// kept only when Delta == b * delta.
void bob_decode_w(const Pulse& pulse, double phi, int delta, int Delta, int s0, int s1,
                  int b_announced, EncodingStyle encoding, RoundTranscript& out, Rng& rng);

// W6: among considered records, abort iff any BOTH_PORTS occurred.
struct W6Verdict {
  bool abort = false;
  long long considered = 0;
  long long double_clicks = 0;
  bool empty_considered = false;  // vacuous PASS, flagged
};
W6Verdict w6_verdict(const std::vector<WTestRecord>& records);

// W7: sample a fraction of the kept keys and compare. Compared positions are
// consumed and reported so callers can strip them from the final key.
struct W7Result {
  long long compared = 0;
  long long mismatches = 0;
  double mismatch_rate = 0.0;
  std::vector<long long> sampled_indices;
};
W7Result w7_compare(const std::vector<int>& alice_key, const std::vector<int>& bob_key,
                    double sample_fraction, Rng& rng);

}  // namespace qkdsim
