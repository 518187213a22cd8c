#include "qkdsim/adversary.hpp"

#include <cmath>

namespace qkdsim {

const char* to_string(AttackVariant v) {
  switch (v) {
    case AttackVariant::NONE: return "none";
    case AttackVariant::AS_SINGLE_PHOTON: return "as-single-photon";
    case AttackVariant::AS_COHERENT: return "as-coherent";
  }
  return "?";
}

const char* to_string(SuccessModel m) {
  return m == SuccessModel::PAPER_FORMULA ? "paper" : "physical";
}

double AttackConfig::t_amp() const { return std::sqrt(1.0 - r_amp * r_amp); }

ParityResult as_single_photon(const std::pair<Pulse, Pulse>& from_bob, const AttackConfig& cfg,
                              EveState& eve, Rng& rng) {
  ParityResult res;
  QndResult q0 = qnd_photon_presence(from_bob.first, rng);
  QndResult q1 = qnd_photon_presence(from_bob.second, rng);
  if (q0.count == 0 || q1.count == 0) {
    eve.e2 = {q0.state, q1.state};
    eve.parity = kParityInconclusive;
    return res;
  }
  // One photon extracted from each pulse; the rest goes to E2.
  eve.e2 = {FockPulse{q0.count - 1, q0.state.pol}, FockPulse{q1.count - 1, q1.state.pol}};
  FockPulse ph0 = rotate(FockPulse{1, q0.state.pol}, -eve.theta0p + cfg.probe_rot0);
  FockPulse ph1 = rotate(FockPulse{1, q1.state.pol}, -eve.theta1p + cfg.probe_rot1);
  bool parallelism_test = random_bit(rng) == 1;
  if (parallelism_test) ph0 = rotate(ph0, kPi / 2.0);
  bool coincidence = uniform01(rng) < hom_coincidence_prob(ph0.pol - ph1.pol);
  if (coincidence) {
    res.conclusive = true;
    res.parity = parallelism_test ? 0 : 1;
    (parallelism_test ? res.coincidence_par : res.coincidence_orth) = true;
  }
  eve.parity = res.parity;
  return res;
}

ParityResult as_coherent(const std::pair<CoherentPulse, CoherentPulse>& from_bob,
                         const AttackConfig& cfg, EveState& eve, Rng& rng) {
  constexpr double kHalfSplit = 0.70710678118654752440;
  ParityResult res;
  CoherentPulse refl0 = attenuate(from_bob.first, cfg.r_amp);
  CoherentPulse refl1 = attenuate(from_bob.second, cfg.r_amp);
  eve.e2 = {attenuate(from_bob.first, cfg.t_amp()), attenuate(from_bob.second, cfg.t_amp())};

  double branch = cfg.success_model == SuccessModel::PHYSICAL ? kHalfSplit : 1.0;
  CoherentPulse b0 = attenuate(refl0, branch);
  CoherentPulse b1 = attenuate(refl1, branch);

  auto [o1, o2] = beamsplit_coherent(b0, b1, kHalfSplit);
  res.coincidence_orth = threshold_detect(o1, rng) && threshold_detect(o2, rng);
  auto [p1, p2] = beamsplit_coherent(rotate(b0, kPi / 2.0), b1, kHalfSplit);
  res.coincidence_par = threshold_detect(p1, rng) && threshold_detect(p2, rng);

  if (res.coincidence_orth != res.coincidence_par) {
    res.conclusive = true;
    res.parity = res.coincidence_orth ? 1 : 0;
  }
  eve.parity = res.parity;
  return res;
}

double p_success(double r_amp, double gamma) {
  double x = -std::expm1(-r_amp * r_amp * gamma * gamma);
  return x * x;
}

double p_bob(double r_amp, double gamma) {
  double t2 = 1.0 - r_amp * r_amp;
  return p_success(r_amp, gamma) * -std::expm1(-t2 * gamma * gamma);
}

std::optional<double> tune_gamma(double target_rate, double r_amp, double tol) {
  if (target_rate <= 0.0) return 0.0;
  if (!(target_rate < 1.0) || !(r_amp > 0.0 && r_amp < 1.0)) return std::nullopt;
  double lo = 0.0, hi = 1.0;
  while (p_bob(r_amp, hi) < target_rate) {
    hi *= 2.0;
    if (hi > 1e8) return std::nullopt;
  }
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (p_bob(r_amp, mid) < target_rate)
      lo = mid;
    else
      hi = mid;
    if (std::fabs(p_bob(r_amp, mid) - target_rate) <= tol) return mid;
  }
  return 0.5 * (lo + hi);
}

EveDriver::EveDriver(const AttackConfig& cfg, Rng& rng) : cfg_(cfg) {
  state_.theta0p = uniform01(rng) * kPi;
  // The coherent comparison interferes the returning pulses directly, so Eve
  // prepares both at the same angle; the single-photon variant removes her
  // angles first and they may differ.
  state_.theta1p = cfg_.variant == AttackVariant::AS_COHERENT ? state_.theta0p
                                                              : uniform01(rng) * kPi;
  state_.phip = uniform01(rng) * kPi;
  state_.s0p = random_bit(rng);
}

std::pair<Pulse, Pulse> EveDriver::tap_alice_to_bob(
    const std::pair<CoherentPulse, CoherentPulse>& from_alice, Rng&) {
  state_.e1 = from_alice;
  if (cfg_.variant == AttackVariant::AS_SINGLE_PHOTON)
    return {FockPulse{cfg_.eve_fock_n, state_.theta0p}, FockPulse{cfg_.eve_fock_n, state_.theta1p}};
  return {CoherentPulse::at_angle(cfg_.gamma, state_.theta0p),
          CoherentPulse::at_angle(cfg_.gamma, state_.theta1p)};
}

std::pair<CoherentPulse, CoherentPulse> EveDriver::tap_bob_to_alice(
    const std::pair<Pulse, Pulse>& from_bob, Rng& rng) {
  if (cfg_.variant == AttackVariant::AS_COHERENT) {
    result_ = as_coherent({std::get<CoherentPulse>(from_bob.first),
                           std::get<CoherentPulse>(from_bob.second)},
                          cfg_, state_, rng);
  } else {
    result_ = as_single_photon(from_bob, cfg_, state_, rng);
  }
  if (!result_.conclusive)
    return {CoherentPulse::vacuum(), CoherentPulse::vacuum()};
  int s1p = state_.s0p ^ result_.parity;
  return {rotate(state_.e1.first, state_.phip + state_.s0p * (kPi / 2.0)),
          rotate(state_.e1.second, state_.phip + s1p * (kPi / 2.0))};
}

Pulse EveDriver::tap_alice_to_bob_final(const CoherentPulse& survivor, Rng& rng) {
  if (!result_.conclusive) return CoherentPulse::vacuum();
  Outcome o = measure_polarization(rotate(survivor, -state_.phip), 0.0, rng);
  if (o != Outcome::ZERO && o != Outcome::ONE) return CoherentPulse::vacuum();
  state_.lp = o == Outcome::ONE ? 1 : 0;
  state_.learned = state_.lp ^ state_.s0p;
  measured_survivor_ = true;
  return rotate(state_.e2.first, -state_.theta0p + state_.learned * (kPi / 2.0));
}

int EveDriver::guess_key(int b_announced) const {
  if (!result_.conclusive || !measured_survivor_) return -1;
  return result_.parity == 0 ? (state_.learned ^ b_announced) : state_.learned;
}

}  // namespace qkdsim
