#pragma once

#include <span>
#include <vector>

#include "qkdsim/adversary.hpp"
#include "qkdsim/protocol_w.hpp"

namespace qkdsim {

// One fully played round, honest or attacked. KKKP rounds leave the W-only
// fields at their defaults.
struct RoundRecord {
  long long index = 0;
  WRoundSecrets secrets;
  Outcome bob_outcome = Outcome::NONE;
  Disposition disposition = Disposition::DISCARD_NO_CLICK;
  int l = -1;
  int bob_key = -1;
  bool blocked_click = false;
  ClickPattern test_pattern = ClickPattern::NONE;
  bool test_considered = false;
  // Adversary columns; -1 when no attack ran.
  int eve_conclusive = -1;
  int eve_parity = -1;
  int eve_guess = -1;
};

struct RateWithError {
  double value = 0.0;
  double stderr_ = 0.0;  // binomial sqrt(p(1-p)/n)
  long long n = 0;
};

struct ExperimentStats {
  bool empty = true;
  long long rounds_total = 0;
  long long test_rounds = 0;
  long long key_rounds = 0;
  long long invalid_rounds = 0;
  long long eve_conclusive_rounds = 0;
  long long eve_correct_guesses = 0;
  long long qber_errors = 0;
  long long w6_considered = 0;
  long long w6_double_clicks = 0;
  RateWithError bob_detection_rate;   // clicks among non-test rounds
  RateWithError key_rate;             // KEY dispositions among non-test rounds
  RateWithError qber;                 // mismatches among KEY rounds
  RateWithError eve_knowledge_fraction;  // correct guesses among KEY rounds
  RateWithError conclusive_rate;      // Eve-conclusive among all rounds
  double w7_mismatch_rate = 0.0;      // filled by the engine after W7
  bool abort = false;                 // filled by the engine from the verdicts
};

// Permutation-invariant fold over transcripts.
ExperimentStats aggregate(std::span<const RoundRecord> records);

struct DetectionThresholds {
  double rate_z_score = 5.0;
};

struct VerdictRecord {
  bool rate_anomaly = false;
  double rate_z = 0.0;
  bool w6_abort = false;
  bool w7_abort = false;
  bool abort = false;
};

// Compare the observed detection rate against an honest benchmark and fold in
// the Protocol W verdicts.
VerdictRecord detect_attack(const ExperimentStats& stats, double honest_benchmark,
                            const DetectionThresholds& thresholds, const W6Verdict& w6,
                            const W7Result& w7);

// Closed-form honest detection probability: 1 - exp(-alpha^2 eta_sq^segments).
double honest_detection_rate(double alpha, double eta_sq, int segments);

}  // namespace qkdsim
