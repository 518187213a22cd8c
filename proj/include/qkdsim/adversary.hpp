#pragma once

#include <optional>
#include <utility>

#include "qkdsim/fock.hpp"
#include "qkdsim/optics.hpp"

namespace qkdsim {

enum class AttackVariant { NONE, AS_SINGLE_PHOTON, AS_COHERENT };
enum class SuccessModel { PAPER_FORMULA, PHYSICAL };
const char* to_string(AttackVariant v);
const char* to_string(SuccessModel m);

struct AttackConfig {
  AttackVariant variant = AttackVariant::NONE;
  double gamma = 1.0;   // Eve's pulse amplitude (coherent variant)
  double r_amp = 0.5;   // BS1 amplitude reflectivity; t = sqrt(1 - r^2)
  SuccessModel success_model = SuccessModel::PAPER_FORMULA;
  int eve_fock_n = 2;   // photons per pulse, single-photon variant
  // Extra rotations applied to the extracted photons before the interference
  // test; used to probe Eve's options on a rotation grid.
  double probe_rot0 = 0.0;
  double probe_rot1 = 0.0;

  double t_amp() const;
};

constexpr int kParityInconclusive = -1;

struct ParityResult {
  int parity = kParityInconclusive;  // 0, 1, or inconclusive
  bool conclusive = false;
  bool coincidence_orth = false;  // two-fold click in the orthogonality branch
  bool coincidence_par = false;   // two-fold click in the parallelism branch
};

// Everything Eve holds within one round.
struct EveState {
  std::pair<CoherentPulse, CoherentPulse> e1;  // intercepted from Alice
  std::pair<Pulse, Pulse> e2;                  // stored for forwarding to Bob
  double theta0p = 0.0, theta1p = 0.0, phip = 0.0;
  int s0p = 0;
  int parity = kParityInconclusive;
  int lp = -1;       // Eve's measurement of Alice's survivor
  int learned = -1;  // l' ^ s0': k (parity 1) or k ^ b (parity 0)
};

// Single-photon comparison: QND presence check, one photon
// extracted per pulse, HOM test in a uniformly chosen branch. A coincidence in
// the orthogonality test yields parity 1; with the pi/2 pre-rotation of E0,
// parity 0. Stores the remaining pulses in eve.e2.
ParityResult as_single_photon(const std::pair<Pulse, Pulse>& from_bob, const AttackConfig& cfg,
                              EveState& eve, Rng& rng);

// Coherent comparison: BS1 splits off amplitude r*gamma per
// pulse for measurement and stores the transmitted t*gamma parts in eve.e2.
// Both branch tests run on the split light; a two-fold click in exactly one
// branch is conclusive. PAPER_FORMULA feeds each branch the full reflected
// amplitude (per-port mean r^2 gamma^2 under the matching hypothesis, so the
// conclusive probability is (1 - e^{-r^2 gamma^2})^2); PHYSICAL applies the
// 50:50 split at BS2 first, halving the mean photon number per branch.
ParityResult as_coherent(const std::pair<CoherentPulse, CoherentPulse>& from_bob,
                         const AttackConfig& cfg, EveState& eve, Rng& rng);

// Closed forms.
double p_success(double r_amp, double gamma);  // (1 - e^{-r^2 g^2})^2
double p_bob(double r_amp, double gamma);      // p_success * (1 - e^{-t^2 g^2})

// Solve p_bob(r_amp, gamma) = target_rate by bracketed bisection on the
// monotone map gamma -> p_bob. Empty result if the target is unattainable.
std::optional<double> tune_gamma(double target_rate, double r_amp, double tol = 1e-9);

// Per-round impersonation driver: Eve replaces both ends of the quantum
// channel and passes classical messages through untouched.
class EveDriver {
 public:
  EveDriver(const AttackConfig& cfg, Rng& rng);

  // First A->B pass: store E1, substitute Eve's own pulses toward Bob.
  std::pair<Pulse, Pulse> tap_alice_to_bob(
      const std::pair<CoherentPulse, CoherentPulse>& from_alice, Rng& rng);

  // B->A pass: run subprotocol As. On a conclusive result Eve forwards E1
  // shuffled per the inferred parity; otherwise Alice receives vacuum.
  std::pair<CoherentPulse, CoherentPulse> tap_bob_to_alice(const std::pair<Pulse, Pulse>& from_bob,
                                                           Rng& rng);

  // Final A->B pass: measure Alice's survivor after U_y(-phi'), then forward
  // pulse 0 of E2 rotated by U_y(-theta0' + learned (pi/2)).
  Pulse tap_alice_to_bob_final(const CoherentPulse& survivor, Rng& rng);

  // Eve's key guess once b is announced; -1 when the round failed for her.
  int guess_key(int b_announced) const;

  bool conclusive() const { return result_.conclusive; }
  const ParityResult& parity_result() const { return result_; }
  const EveState& state() const { return state_; }

 private:
  AttackConfig cfg_;
  EveState state_;
  ParityResult result_;
  bool measured_survivor_ = false;
};

}  // namespace qkdsim
