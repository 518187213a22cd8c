#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qkdsim/analysis.hpp"

namespace qkdsim {

enum class Protocol { KKKP, W };
const char* to_string(Protocol p);

struct ExperimentConfig {
  Protocol protocol = Protocol::KKKP;
  ProtocolParams params;
  AttackConfig attack;
  bool tune = false;  // tune Eve's gamma to the honest detection rate
  bool w_force_delta_zero = false;  // pin delta = 0 (KKKP-reduction checks)
  std::uint64_t seed = 1;
  int threads = 1;
};

struct ExperimentResult {
  ExperimentConfig config;  // with the tuned gamma substituted in
  std::vector<RoundRecord> records;
  ExperimentStats stats;
  W6Verdict w6;
  W7Result w7;
  VerdictRecord verdict;
  std::vector<int> alice_key;  // kept key before W7 removal
  std::vector<int> bob_key;
  double honest_benchmark = 0.0;  // closed-form honest detection rate
  double closed_form_p_success = 0.0;
  double closed_form_p_bob = 0.0;
  bool gamma_tuned = false;
};

// Play one round. All randomness comes from streams derived from
// (cfg.seed, index); the W-only draws use a separate stream so a W run with
// delta pinned to 0 and p_test = 0 consumes the shared stream exactly like a
// KKKP run under the same seed.
RoundRecord run_round(const ExperimentConfig& cfg, long long index);

// Run the full experiment; rounds execute on cfg.threads workers, each round
// on its own derived stream, so output is independent of scheduling.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Cross-product parameter sweep.
struct SweepSpec {
  std::vector<double> gamma;
  std::vector<double> r2;
  std::vector<double> alpha;
  std::vector<double> eta2;
};

struct SweepRow {
  double gamma = 0.0, r2 = 0.0, alpha = 0.0, eta2 = 0.0;
  ExperimentStats stats;
  double closed_form_p_success = 0.0;
  double closed_form_p_bob = 0.0;
  double closed_form_honest = 0.0;
};

std::vector<SweepRow> run_sweep(const ExperimentConfig& base, const SweepSpec& spec);

}  // namespace qkdsim
