#include "qkdsim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace qkdsim {

const char* to_string(Protocol p) { return p == Protocol::KKKP ? "kkkp" : "w"; }

namespace {

// The pulse travels A->B, B->A, A->B; the configured number of lossy segments
// is spread over those three passes so the end-to-end intensity transmittance
// is eta_sq^segments.
ChannelSegment leg_segment(const ProtocolParams& p) {
  return ChannelSegment(std::pow(p.eta_sq, p.segments / 3.0));
}

void copy_transcript(const RoundTranscript& tr, RoundRecord& rec) {
  rec.bob_outcome = tr.bob_outcome;
  rec.disposition = tr.disposition;
  rec.l = tr.l;
  rec.bob_key = tr.bob_key;
}

void apply_blocked_vacuum_rule(RoundRecord& rec) {
  if (!rec.blocked_click) {
    rec.disposition = Disposition::INVALID_BLOCKED_VACUUM;
    rec.bob_key = -1;
  }
}

}  // namespace

RoundRecord run_round(const ExperimentConfig& cfg, long long index) {
  const ProtocolParams& pp = cfg.params;
  const bool is_w = cfg.protocol == Protocol::W;
  RoundRecord rec;
  rec.index = index;
  WRoundSecrets& sc = rec.secrets;
  Rng rng = make_stream(cfg.seed, kStreamRound, static_cast<std::uint64_t>(index));

  auto pulses = alice_prepare(pp.alpha, sc, rng);
  sc.phi = uniform01(rng) * kPi;
  sc.s0 = random_bit(rng);
  sc.s1 = random_bit(rng);
  sc.k = random_bit(rng);
  sc.b = random_bit(rng);
  if (is_w) {
    Rng wrng = make_stream(cfg.seed, kStreamWExtra, static_cast<std::uint64_t>(index));
    sc.delta = cfg.w_force_delta_zero ? 0 : random_bit(wrng);
    sc.Delta = random_bit(wrng) * sc.delta;  // uniform on {0, delta}
    sc.omega = static_cast<int>(wrng() & 3ULL);
    sc.is_test = pp.p_test > 0.0 && uniform01(wrng) < pp.p_test;
  }

  if (cfg.attack.variant == AttackVariant::NONE) {
    ChannelSegment leg = leg_segment(pp);
    Pulse p0 = transmit(pulses.first, leg, rng);
    Pulse p1 = transmit(pulses.second, leg, rng);
    auto shuffled = is_w ? bob_shuffle_w({p0, p1}, sc.phi, sc.s0, sc.s1, sc.delta)
                         : bob_shuffle({p0, p1}, sc.phi, sc.s0, sc.s1);
    CoherentPulse a0 = transmit(std::get<CoherentPulse>(shuffled.first), leg, rng);
    CoherentPulse a1 = transmit(std::get<CoherentPulse>(shuffled.second), leg, rng);
    if (is_w && sc.is_test) {
      rec.test_pattern = alice_interference_test(a0, a1, sc.theta0, sc.theta1, sc.omega, rng);
      rec.test_considered = test_considered(sc.omega, sc.s0, sc.s1, sc.delta);
      rec.disposition = Disposition::TEST;
      return rec;
    }
    EncodeResult enc = alice_encode_block({a0, a1}, sc, pp.encoding, rng);
    rec.blocked_click = enc.blocked_click;
    Pulse fin = transmit(enc.survivor, leg, rng);
    RoundTranscript tr;
    if (is_w)
      bob_decode_w(fin, sc.phi, sc.delta, sc.Delta, sc.s0, sc.s1, sc.b, pp.encoding, tr, rng);
    else
      bob_decode(fin, sc.phi, sc.s0, sc.s1, sc.b, pp.encoding, tr, rng);
    copy_transcript(tr, rec);
    if (is_w) apply_blocked_vacuum_rule(rec);
    return rec;
  }

  // Impersonation: Eve sits adjacent to both parties with lossless access and
  // replaces the whole line.
  EveDriver eve(cfg.attack, rng);
  auto to_bob = eve.tap_alice_to_bob(pulses, rng);
  auto shuffled = is_w ? bob_shuffle_w(to_bob, sc.phi, sc.s0, sc.s1, sc.delta)
                       : bob_shuffle(to_bob, sc.phi, sc.s0, sc.s1);
  auto to_alice = eve.tap_bob_to_alice(shuffled, rng);
  rec.eve_conclusive = eve.conclusive() ? 1 : 0;
  rec.eve_parity = eve.parity_result().parity;

  if (is_w && sc.is_test) {
    rec.test_pattern =
        alice_interference_test(to_alice.first, to_alice.second, sc.theta0, sc.theta1, sc.omega, rng);
    rec.test_considered = test_considered(sc.omega, sc.s0, sc.s1, sc.delta);
    rec.disposition = Disposition::TEST;
    return rec;  // nothing returns to Eve; Bob sees vacuum this round
  }

  EncodeResult enc = alice_encode_block(to_alice, sc, pp.encoding, rng);
  rec.blocked_click = enc.blocked_click;
  Pulse fin = eve.tap_alice_to_bob_final(enc.survivor, rng);
  RoundTranscript tr;
  if (is_w)
    bob_decode_w(fin, sc.phi, sc.delta, sc.Delta, sc.s0, sc.s1, sc.b, pp.encoding, tr, rng);
  else
    bob_decode(fin, sc.phi, sc.s0, sc.s1, sc.b, pp.encoding, tr, rng);
  copy_transcript(tr, rec);
  rec.eve_guess = eve.guess_key(sc.b);
  if (is_w) apply_blocked_vacuum_rule(rec);
  return rec;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  ExperimentResult res;
  res.config = cfg;
  res.honest_benchmark =
      honest_detection_rate(cfg.params.alpha, cfg.params.eta_sq, cfg.params.segments);

  if (cfg.tune) {
    auto tuned = tune_gamma(res.honest_benchmark, cfg.attack.r_amp);
    if (!tuned)
      throw std::runtime_error("gamma tuning: target rate unattainable at this reflectivity");
    res.config.attack.gamma = *tuned;
    res.gamma_tuned = true;
  }
  res.closed_form_p_success = p_success(res.config.attack.r_amp, res.config.attack.gamma);
  res.closed_form_p_bob = p_bob(res.config.attack.r_amp, res.config.attack.gamma);

  const long long n = cfg.params.rounds;
  if (n < 1) throw std::invalid_argument("rounds must be >= 1");
  res.records.resize(static_cast<std::size_t>(n));

  auto worker = [&](long long begin, long long end) {
    for (long long i = begin; i < end; ++i)
      res.records[static_cast<std::size_t>(i)] = run_round(res.config, i);
  };
  int threads = cfg.threads > 1 ? cfg.threads : 1;
  if (threads == 1) {
    worker(0, n);
  } else {
    std::vector<std::thread> pool;
    long long chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      long long begin = t * chunk;
      long long end = std::min(n, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  res.stats = aggregate(res.records);
  for (const RoundRecord& r : res.records) {
    if (r.disposition == Disposition::KEY) {
      res.alice_key.push_back(r.secrets.k);
      res.bob_key.push_back(r.bob_key);
    }
  }
  if (cfg.protocol == Protocol::W) {
    std::vector<WTestRecord> trs;
    for (const RoundRecord& r : res.records) {
      if (!r.secrets.is_test) continue;
      trs.push_back({r.secrets.omega, r.secrets.s0, r.secrets.s1, r.secrets.delta,
                     r.test_pattern, r.test_considered});
    }
    res.w6 = w6_verdict(trs);
    Rng w7rng = make_stream(cfg.seed, kStreamW7, 0);
    res.w7 = w7_compare(res.alice_key, res.bob_key, cfg.params.w7_fraction, w7rng);
    res.stats.w7_mismatch_rate = res.w7.mismatch_rate;
  }
  res.verdict = detect_attack(res.stats, res.honest_benchmark, {}, res.w6, res.w7);
  res.stats.abort = res.verdict.abort;
  return res;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& base, const SweepSpec& spec) {
  auto one = [](const std::vector<double>& v, double fallback) {
    return v.empty() ? std::vector<double>{fallback} : v;
  };
  auto gammas = one(spec.gamma, base.attack.gamma);
  auto r2s = one(spec.r2, base.attack.r_amp * base.attack.r_amp);
  auto alphas = one(spec.alpha, base.params.alpha);
  auto eta2s = one(spec.eta2, base.params.eta_sq);

  std::vector<SweepRow> rows;
  std::uint64_t point = 0;
  for (double g : gammas)
    for (double r2 : r2s)
      for (double a : alphas)
        for (double e2 : eta2s) {
          ExperimentConfig cfg = base;
          cfg.attack.gamma = g;
          cfg.attack.r_amp = std::sqrt(r2);
          cfg.params.alpha = a;
          cfg.params.eta_sq = e2;
          cfg.seed = splitmix64(base.seed ^ splitmix64(0x7377656570ULL + point++));
          ExperimentResult r = run_experiment(cfg);
          SweepRow row;
          row.gamma = g;
          row.r2 = r2;
          row.alpha = a;
          row.eta2 = e2;
          row.stats = r.stats;
          row.closed_form_p_success = r.closed_form_p_success;
          row.closed_form_p_bob = r.closed_form_p_bob;
          row.closed_form_honest = r.honest_benchmark;
          rows.push_back(row);
        }
  return rows;
}

}  // namespace qkdsim
