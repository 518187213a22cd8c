#include "qkdsim/report.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

namespace qkdsim {

namespace {
std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}
}  // namespace

void write_transcript_csv(std::ostream& os, const ExperimentResult& result) {
  os << "round,theta0,theta1,phi,s0,s1,k,b,delta,Delta,omega,is_test,"
        "outcome,disposition,l,bob_key,blocked_click,click_pattern,"
        "considered,eve_conclusive,eve_parity,eve_guess\n";
  for (const RoundRecord& r : result.records) {
    const WRoundSecrets& s = r.secrets;
    os << r.index << ',' << fmt_double(s.theta0) << ',' << fmt_double(s.theta1) << ','
       << fmt_double(s.phi) << ',' << s.s0 << ',' << s.s1 << ',' << s.k << ',' << s.b << ','
       << s.delta << ',' << s.Delta << ',' << s.omega << ',' << (s.is_test ? 1 : 0) << ','
       << to_string(r.bob_outcome) << ',' << to_string(r.disposition) << ',' << r.l << ','
       << r.bob_key << ',' << (r.blocked_click ? 1 : 0) << ',' << to_string(r.test_pattern)
       << ',' << (r.test_considered ? 1 : 0) << ',' << r.eve_conclusive << ',' << r.eve_parity
       << ',' << r.eve_guess << '\n';
  }
}

namespace {
nlohmann::json rate_json(const RateWithError& r) {
  return {{"value", r.value}, {"stderr", r.stderr_}, {"n", r.n}};
}
}  // namespace

nlohmann::json summary_json(const ExperimentResult& result) {
  const ExperimentConfig& cfg = result.config;
  nlohmann::json j;
  j["schema_version"] = 1;
  j["config"] = {
      {"protocol", to_string(cfg.protocol)},
      {"alpha", cfg.params.alpha},
      {"eta2", cfg.params.eta_sq},
      {"segments", cfg.params.segments},
      {"rounds", cfg.params.rounds},
      {"p_test", cfg.params.p_test},
      {"w7_fraction", cfg.params.w7_fraction},
      {"encoding", cfg.params.encoding == EncodingStyle::K3Style ? "k3" : "literal-w3"},
      {"attack", to_string(cfg.attack.variant)},
      {"gamma", cfg.attack.gamma},
      {"r2", cfg.attack.r_amp * cfg.attack.r_amp},
      {"success_model", to_string(cfg.attack.success_model)},
      {"eve_fock_n", cfg.attack.eve_fock_n},
      {"seed", cfg.seed},
      {"gamma_tuned", result.gamma_tuned},
  };
  const ExperimentStats& st = result.stats;
  j["stats"] = {
      {"rounds_total", st.rounds_total},
      {"test_rounds", st.test_rounds},
      {"key_rounds", st.key_rounds},
      {"invalid_rounds", st.invalid_rounds},
      {"bob_detection_rate", rate_json(st.bob_detection_rate)},
      {"key_rate", rate_json(st.key_rate)},
      {"qber", rate_json(st.qber)},
      {"eve_knowledge_fraction", rate_json(st.eve_knowledge_fraction)},
      {"conclusive_rate", rate_json(st.conclusive_rate)},
      {"w6_considered", st.w6_considered},
      {"w6_double_clicks", st.w6_double_clicks},
      {"w7_mismatch_rate", st.w7_mismatch_rate},
  };
  j["closed_form"] = {
      {"honest_detection_rate", result.honest_benchmark},
      {"p_success", result.closed_form_p_success},
      {"p_bob", result.closed_form_p_bob},
  };
  j["verdict"] = {
      {"rate_anomaly", result.verdict.rate_anomaly},
      {"rate_z", result.verdict.rate_z},
      {"w6_abort", result.verdict.w6_abort},
      {"w7_abort", result.verdict.w7_abort},
      {"abort", result.verdict.abort},
  };
  if (cfg.protocol == Protocol::W) {
    j["w6"] = {{"considered", result.w6.considered},
               {"double_clicks", result.w6.double_clicks},
               {"empty_considered", result.w6.empty_considered},
               {"abort", result.w6.abort}};
    j["w7"] = {{"compared", result.w7.compared},
               {"mismatches", result.w7.mismatches},
               {"mismatch_rate", result.w7.mismatch_rate}};
  }
  return j;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "gamma,r2,alpha,eta2,bob_detection_rate,detection_stderr,key_rounds,qber,"
        "eve_knowledge_fraction,conclusive_rate,conclusive_stderr,"
        "p_success_closed,p_bob_closed,honest_closed\n";
  for (const SweepRow& r : rows) {
    os << fmt_double(r.gamma) << ',' << fmt_double(r.r2) << ',' << fmt_double(r.alpha) << ','
       << fmt_double(r.eta2) << ',' << fmt_double(r.stats.bob_detection_rate.value) << ','
       << fmt_double(r.stats.bob_detection_rate.stderr_) << ',' << r.stats.key_rounds << ','
       << fmt_double(r.stats.qber.value) << ',' << fmt_double(r.stats.eve_knowledge_fraction.value)
       << ',' << fmt_double(r.stats.conclusive_rate.value) << ','
       << fmt_double(r.stats.conclusive_rate.stderr_) << ','
       << fmt_double(r.closed_form_p_success) << ',' << fmt_double(r.closed_form_p_bob) << ','
       << fmt_double(r.closed_form_honest) << '\n';
  }
}

std::string summary_table(const ExperimentResult& result) {
  std::ostringstream os;
  const ExperimentStats& st = result.stats;
  char line[160];
  os << "protocol " << to_string(result.config.protocol) << ", attack "
     << to_string(result.config.attack.variant) << ", " << st.rounds_total << " rounds\n";
  std::snprintf(line, sizeof(line), "  bob detection rate   %.4f +/- %.4f (honest closed form %.4f)\n",
                st.bob_detection_rate.value, st.bob_detection_rate.stderr_,
                result.honest_benchmark);
  os << line;
  std::snprintf(line, sizeof(line), "  key rounds           %lld (QBER %.4f)\n",
                st.key_rounds, st.qber.value);
  os << line;
  if (result.config.attack.variant != AttackVariant::NONE) {
    std::snprintf(line, sizeof(line), "  eve conclusive rate  %.4f (closed-form P_success %.4f)\n",
                  st.conclusive_rate.value, result.closed_form_p_success);
    os << line;
    std::snprintf(line, sizeof(line), "  eve knowledge        %.4f, closed-form P_B %.4f%s\n",
                  st.eve_knowledge_fraction.value, result.closed_form_p_bob,
                  result.gamma_tuned ? " (gamma tuned)" : "");
    os << line;
  }
  if (result.config.protocol == Protocol::W) {
    std::snprintf(line, sizeof(line), "  W6: %lld considered, %lld double clicks -> %s%s\n",
                  result.w6.considered, result.w6.double_clicks,
                  result.w6.abort ? "ABORT" : "PASS",
                  result.w6.empty_considered ? " (no considered tests)" : "");
    os << line;
    std::snprintf(line, sizeof(line), "  W7: %lld compared, %lld mismatches -> %s\n",
                  result.w7.compared, result.w7.mismatches,
                  result.verdict.w7_abort ? "ABORT" : "PASS");
    os << line;
  }
  std::snprintf(line, sizeof(line), "  verdict: %s%s\n",
                result.verdict.rate_anomaly ? "RATE_ANOMALY " : "",
                result.verdict.abort ? "ABORT" : (result.verdict.rate_anomaly ? "" : "clean"));
  os << line;
  return os.str();
}

}  // namespace qkdsim
