#include "qkdsim/analysis.hpp"

#include <cmath>

namespace qkdsim {

namespace {
RateWithError make_rate(long long hits, long long n) {
  RateWithError r;
  r.n = n;
  if (n > 0) {
    r.value = static_cast<double>(hits) / static_cast<double>(n);
    r.stderr_ = std::sqrt(r.value * (1.0 - r.value) / static_cast<double>(n));
  }
  return r;
}
}  // namespace

ExperimentStats aggregate(std::span<const RoundRecord> records) {
  ExperimentStats st;
  if (records.empty()) return st;
  st.empty = false;
  long long detected = 0;
  for (const RoundRecord& r : records) {
    ++st.rounds_total;
    if (r.secrets.is_test) {
      ++st.test_rounds;
      if (r.test_considered) {
        ++st.w6_considered;
        if (r.test_pattern == ClickPattern::BOTH_PORTS) ++st.w6_double_clicks;
      }
      continue;
    }
    if (r.bob_outcome != Outcome::NONE) ++detected;
    if (r.disposition == Disposition::INVALID_BLOCKED_VACUUM) ++st.invalid_rounds;
    if (r.disposition == Disposition::KEY) {
      ++st.key_rounds;
      if (r.bob_key != r.secrets.k) ++st.qber_errors;
      if (r.eve_guess == r.secrets.k) ++st.eve_correct_guesses;
    }
    if (r.eve_conclusive == 1) ++st.eve_conclusive_rounds;
  }
  long long non_test = st.rounds_total - st.test_rounds;
  st.bob_detection_rate = make_rate(detected, non_test);
  st.key_rate = make_rate(st.key_rounds, non_test);
  st.qber = make_rate(st.qber_errors, st.key_rounds);
  st.eve_knowledge_fraction = make_rate(st.eve_correct_guesses, st.key_rounds);
  st.conclusive_rate = make_rate(st.eve_conclusive_rounds, st.rounds_total);
  return st;
}

VerdictRecord detect_attack(const ExperimentStats& stats, double honest_benchmark,
                            const DetectionThresholds& thresholds, const W6Verdict& w6,
                            const W7Result& w7) {
  VerdictRecord v;
  if (stats.bob_detection_rate.n > 0 && honest_benchmark > 0.0 && honest_benchmark < 1.0) {
    double se = std::sqrt(honest_benchmark * (1.0 - honest_benchmark) /
                          static_cast<double>(stats.bob_detection_rate.n));
    v.rate_z = (stats.bob_detection_rate.value - honest_benchmark) / se;
    v.rate_anomaly = std::fabs(v.rate_z) > thresholds.rate_z_score;
  }
  v.w6_abort = w6.abort;
  v.w7_abort = w7.compared > 0 && w7.mismatches > 0;
  v.abort = v.rate_anomaly || v.w6_abort || v.w7_abort;
  return v;
}

double honest_detection_rate(double alpha, double eta_sq, int segments) {
  double mu = alpha * alpha * std::pow(eta_sq, segments);
  return -std::expm1(-mu);
}

}  // namespace qkdsim
