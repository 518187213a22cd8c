#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qkdsim/report.hpp"

namespace fs = std::filesystem;
using namespace qkdsim;

namespace {

struct CliOptions {
  ExperimentConfig cfg;
  std::string protocol = "kkkp";
  std::string attack = "none";
  std::string success_model = "paper";
  std::string encoding = "k3";
  double r2 = 0.25;
  std::string outdir;
  std::string transcript_name = "transcript.csv";
  std::string summary_name = "summary.json";
  bool no_transcript = false;
  std::string config_file;
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

// Flat key=value file; '#' starts a comment. Every key mirrors a long flag of
// the subcommand. Expanded into "--key=value" tokens placed before the
// explicit flags, so flags override the file.
std::vector<std::string> load_config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line is not key=value: " + line);
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty()) throw std::invalid_argument("config line has an empty key: " + line);
    tokens.push_back("--" + key + "=" + val);
  }
  return tokens;
}

std::vector<std::string> expand_args(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_file;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size())
      config_file = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      config_file = args[i].substr(9);
  }
  if (!config_file.empty()) {
    auto tokens = load_config_tokens(config_file);
    auto pos = std::find_if(args.begin(), args.end(),
                            [](const std::string& a) { return !a.empty() && a[0] != '-'; });
    if (pos != args.end()) ++pos;
    args.insert(pos, tokens.begin(), tokens.end());
  }
  return args;
}

void add_experiment_options(CLI::App* app, CliOptions& opt) {
  app->add_option("--config", opt.config_file, "Flat key=value config file; flags override");
  app->add_option("--protocol", opt.protocol, "Protocol to run")
      ->check(CLI::IsMember({"kkkp", "w"}));
  app->add_option("--alpha", opt.cfg.params.alpha, "Alice's initial pulse amplitude");
  app->add_option("--eta2", opt.cfg.params.eta_sq, "Per-segment intensity transmittance")
      ->check(CLI::Range(0.0, 1.0));
  app->add_option("--segments", opt.cfg.params.segments, "Lossy segments on the three-pass path");
  app->add_option("--rounds", opt.cfg.params.rounds, "Number of protocol rounds")
      ->check(CLI::PositiveNumber);
  app->add_option("--p-test", opt.cfg.params.p_test, "Probability Alice tests in W3")
      ->check(CLI::Range(0.0, 1.0));
  app->add_option("--w7-fraction", opt.cfg.params.w7_fraction, "Kept-key fraction compared in W7")
      ->check(CLI::Range(0.0, 1.0));
  app->add_option("--encoding", opt.encoding, "Alice's W3 operator variant")
      ->check(CLI::IsMember({"k3", "literal-w3"}));
  app->add_option("--attack", opt.attack, "Eve's attack variant")
      ->check(CLI::IsMember({"none", "as-single-photon", "as-coherent"}));
  app->add_option("--gamma", opt.cfg.attack.gamma, "Eve's pulse amplitude");
  app->add_option("--r2", opt.r2, "BS1 intensity reflectivity")->check(CLI::Range(0.0, 1.0));
  app->add_flag("--tune-gamma", opt.cfg.tune, "Tune gamma so P_B matches the honest rate");
  app->add_option("--success-model", opt.success_model, "Coherent-attack branch accounting")
      ->check(CLI::IsMember({"paper", "physical"}));
  app->add_option("--eve-fock-n", opt.cfg.attack.eve_fock_n,
                  "Photons per pulse in the single-photon variant");
  app->add_option("--seed", opt.cfg.seed, "Master RNG seed");
  app->add_option("--threads", opt.cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
  app->add_option("--outdir", opt.outdir, "Output directory (default $QKDSIM_OUTDIR or .)");
  app->add_option("--transcript-csv", opt.transcript_name, "Transcript file name");
  app->add_option("--summary-json", opt.summary_name, "Summary file name");
  app->add_flag("--no-transcript", opt.no_transcript, "Skip the transcript CSV");
  // Config tokens precede explicit flags; keep the last value so flags win.
  for (CLI::Option* o : app->get_options())
    o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

int finalize_config(CliOptions& opt) {
  opt.cfg.protocol = opt.protocol == "w" ? Protocol::W : Protocol::KKKP;
  if (opt.attack == "as-single-photon")
    opt.cfg.attack.variant = AttackVariant::AS_SINGLE_PHOTON;
  else if (opt.attack == "as-coherent")
    opt.cfg.attack.variant = AttackVariant::AS_COHERENT;
  else
    opt.cfg.attack.variant = AttackVariant::NONE;
  opt.cfg.attack.success_model =
      opt.success_model == "physical" ? SuccessModel::PHYSICAL : SuccessModel::PAPER_FORMULA;
  opt.cfg.params.encoding =
      opt.encoding == "literal-w3" ? EncodingStyle::LiteralW3 : EncodingStyle::K3Style;
  opt.cfg.attack.r_amp = std::sqrt(opt.r2);
  if (opt.outdir.empty()) {
    const char* env = std::getenv("QKDSIM_OUTDIR");
    opt.outdir = env ? env : ".";
  }
  return 0;
}

fs::path out_path(const CliOptions& opt, const std::string& name) {
  fs::create_directories(opt.outdir);
  return fs::path(opt.outdir) / name;
}

int cmd_run(CliOptions& opt) {
  finalize_config(opt);
  ExperimentResult result = run_experiment(opt.cfg);
  if (!opt.no_transcript) {
    std::ofstream csv(out_path(opt, opt.transcript_name));
    write_transcript_csv(csv, result);
  }
  {
    std::ofstream js(out_path(opt, opt.summary_name));
    js << summary_json(result).dump(2) << '\n';
  }
  std::cout << summary_table(result);
  return result.verdict.abort ? 3 : 0;
}

int cmd_calibrate(CliOptions& opt) {
  finalize_config(opt);
  opt.cfg.attack.variant = AttackVariant::NONE;
  ExperimentResult result = run_experiment(opt.cfg);
  std::cout << "honest benchmark, " << result.stats.rounds_total << " rounds\n"
            << "  closed form 1-exp(-alpha^2 eta2^segments) = " << result.honest_benchmark << '\n'
            << "  monte carlo detection rate               = "
            << result.stats.bob_detection_rate.value << " +/- "
            << result.stats.bob_detection_rate.stderr_ << '\n';
  return 0;
}

int cmd_sweep(CliOptions& opt, SweepSpec& spec) {
  finalize_config(opt);
  auto rows = run_sweep(opt.cfg, spec);
  std::ofstream csv(out_path(opt, "sweep.csv"));
  write_sweep_csv(csv, rows);
  write_sweep_csv(std::cout, rows);
  return 0;
}

int cmd_oracle(int n, int m, double delta_pol, double r2) {
  FockPulse a{n, 0.0};
  FockPulse b{m, canonical_angle(delta_pol)};
  auto dist = beamsplit_fock_oracle(a, b, std::sqrt(r2));
  std::cout << "|" << n << "> x |" << m << ">, pol difference " << delta_pol << " rad, r^2 = "
            << r2 << "\n";
  double both = 0.0;
  for (const auto& [ports, prob] : dist) {
    std::cout << "  P(" << ports.first << "," << ports.second << ") = " << prob << '\n';
    if (ports.first > 0 && ports.second > 0) both += prob;
  }
  std::cout << "  P(both ports occupied) = " << both << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte-Carlo simulator for the two-pulse blind-polarization QKD protocol, "
               "its beamsplitting impersonation attack, and the hardened variant"};
  app.require_subcommand(1);

  CliOptions run_opt, cal_opt, sweep_opt;
  SweepSpec spec;
  int oracle_n = 1, oracle_m = 1;
  double oracle_delta = 0.0, oracle_r2 = 0.5;

  CLI::App* run = app.add_subcommand("run", "Run a seeded experiment and emit reports");
  add_experiment_options(run, run_opt);

  CLI::App* cal = app.add_subcommand("calibrate", "Honest benchmark: closed form vs Monte Carlo");
  add_experiment_options(cal, cal_opt);

  CLI::App* sweep = app.add_subcommand("sweep", "Cross-product parameter sweep, CSV output");
  add_experiment_options(sweep, sweep_opt);
  sweep->add_option("--gamma-list", spec.gamma, "Gamma grid")->delimiter(',');
  sweep->add_option("--r2-list", spec.r2, "r^2 grid")->delimiter(',');
  sweep->add_option("--alpha-list", spec.alpha, "Alpha grid")->delimiter(',');
  sweep->add_option("--eta2-list", spec.eta2, "eta^2 grid")->delimiter(',');

  CLI::App* oracle = app.add_subcommand("oracle", "Exact Fock beamsplitter distribution");
  oracle->add_option("--n", oracle_n, "Photons in input port 1")->check(CLI::NonNegativeNumber);
  oracle->add_option("--m", oracle_m, "Photons in input port 2")->check(CLI::NonNegativeNumber);
  oracle->add_option("--delta-pol", oracle_delta, "Polarization difference in radians");
  oracle->add_option("--r2", oracle_r2, "Intensity reflectivity")->check(CLI::Range(0.0, 1.0));

  std::vector<std::string> args;
  try {
    args = expand_args(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) return cmd_run(run_opt);
    if (cal->parsed()) return cmd_calibrate(cal_opt);
    if (sweep->parsed()) return cmd_sweep(sweep_opt, spec);
    if (oracle->parsed()) return cmd_oracle(oracle_n, oracle_m, oracle_delta, oracle_r2);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
