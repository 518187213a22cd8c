#include "qkdsim/protocol_w.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qkdsim {

const char* to_string(ClickPattern p) {
  switch (p) {
    case ClickPattern::SINGLE_PORT: return "SINGLE_PORT";
    case ClickPattern::BOTH_PORTS: return "BOTH_PORTS";
    case ClickPattern::NONE: return "NONE";
  }
  return "?";
}

std::pair<Pulse, Pulse> bob_shuffle_w(std::pair<Pulse, Pulse> pulses, double phi, int s0,
                                      int s1, int delta) {
  return {rotate(pulses.first, phi + s0 * (kPi / 2.0)),
          rotate(pulses.second, phi + delta * (kPi / 4.0) + s1 * (kPi / 2.0))};
}

namespace {
ClickPattern pattern_from_clicks(bool c1, bool c2) {
  if (c1 && c2) return ClickPattern::BOTH_PORTS;
  if (c1 || c2) return ClickPattern::SINGLE_PORT;
  return ClickPattern::NONE;
}
constexpr double kHalfSplit = 0.70710678118654752440;  // 50:50 amplitude
}  // namespace

ClickPattern alice_interference_test(const CoherentPulse& p0, const CoherentPulse& p1,
                                     double theta0, double theta1, int omega, Rng& rng) {
  CoherentPulse a = rotate(p0, -theta0);
  CoherentPulse b = rotate(p1, -theta1 + omega * (kPi / 4.0));
  auto [out1, out2] = beamsplit_coherent(a, b, kHalfSplit);
  return pattern_from_clicks(threshold_detect(out1, rng), threshold_detect(out2, rng));
}

ClickPattern alice_interference_test(const FockPulse& p0, const FockPulse& p1, double theta0,
                                     double theta1, int omega, Rng& rng) {
  FockPulse a = rotate(p0, -theta0);
  FockPulse b = rotate(p1, -theta1 + omega * (kPi / 4.0));
  auto dist = beamsplit_fock_oracle(a, b, kHalfSplit);
  double u = uniform01(rng);
  double acc = 0.0;
  std::pair<int, int> drawn{0, 0};
  for (const auto& [ports, prob] : dist) {
    acc += prob;
    drawn = ports;
    if (u < acc) break;
  }
  return pattern_from_clicks(drawn.first > 0, drawn.second > 0);
}

bool test_considered(int omega, int s0, int s1, int delta) {
  int want = ((2 * (s0 + s1) - delta) % 4 + 4) % 4;
  return omega == want;
}

void bob_decode_w(const Pulse& pulse, double phi, int delta, int Delta, int s0, int s1,
                  int b_announced, EncodingStyle encoding, RoundTranscript& out, Rng& rng) {
  Pulse aligned = rotate(pulse, -phi - Delta * (kPi / 4.0));
  out.bob_outcome = measure_polarization(aligned, 0.0, rng);
  if (Delta != b_announced * delta) {
    out.disposition = Disposition::DISCARD_DELTA_MISMATCH;
    return;
  }
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

W6Verdict w6_verdict(const std::vector<WTestRecord>& records) {
  W6Verdict v;
  for (const auto& rec : records) {
    if (!rec.considered) continue;
    ++v.considered;
    if (rec.pattern == ClickPattern::BOTH_PORTS) ++v.double_clicks;
  }
  v.abort = v.double_clicks > 0;
  v.empty_considered = v.considered == 0;
  return v;
}

W7Result w7_compare(const std::vector<int>& alice_key, const std::vector<int>& bob_key,
                    double sample_fraction, Rng& rng) {
  if (alice_key.size() != bob_key.size())
    throw std::runtime_error("w7_compare: key length mismatch");
  W7Result res;
  auto n = static_cast<long long>(alice_key.size());
  auto m = static_cast<long long>(std::floor(sample_fraction * static_cast<double>(n)));
  std::vector<long long> idx(n);
  std::iota(idx.begin(), idx.end(), 0LL);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(m);
  std::sort(idx.begin(), idx.end());
  for (long long i : idx)
    if (alice_key[static_cast<std::size_t>(i)] != bob_key[static_cast<std::size_t>(i)])
      ++res.mismatches;
  res.compared = m;
  res.mismatch_rate = m > 0 ? static_cast<double>(res.mismatches) / static_cast<double>(m) : 0.0;
  res.sampled_indices = std::move(idx);
  return res;
}

}  // namespace qkdsim
