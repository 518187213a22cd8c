#include <cmath>

#include "doctest.h"
#include "qkdsim/experiment.hpp"

using namespace qkdsim;

namespace {
// Bob's side of the round as Eve sees it: her pulses rotated by phi + s_i pi/2.
std::pair<Pulse, Pulse> bob_view_fock(int n, double th0, double th1, double phi, int s0, int s1) {
  return {rotate(FockPulse{n, th0}, phi + s0 * (kPi / 2.0)),
          rotate(FockPulse{n, th1}, phi + s1 * (kPi / 2.0))};
}
}  // namespace

TEST_CASE("single-photon comparison: conclusive rate and parity correctness") {
  Rng rng(200);
  AttackConfig cfg;
  cfg.variant = AttackVariant::AS_SINGLE_PHOTON;
  cfg.eve_fock_n = 2;
  const int n = 200000;
  int conclusive = 0;
  for (int i = 0; i < n; ++i) {
    EveState eve;
    eve.theta0p = uniform01(rng) * kPi;
    eve.theta1p = uniform01(rng) * kPi;
    int s0 = random_bit(rng), s1 = random_bit(rng);
    double phi = uniform01(rng) * kPi;
    auto view = bob_view_fock(2, eve.theta0p, eve.theta1p, phi, s0, s1);
    ParityResult res = as_single_photon(view, cfg, eve, rng);
    if (res.conclusive) {
      ++conclusive;
      // A coincidence can only fire in the branch matching the true parity.
      CHECK(res.parity == (s0 ^ s1));
    }
  }
  double rate = static_cast<double>(conclusive) / n;
  double sigma = std::sqrt(0.25 * 0.75 / n);
  CHECK(std::fabs(rate - 0.25) < 4 * sigma);
}

TEST_CASE("single-photon comparison caps at 1/4 even for bright coherent probes") {
  Rng rng(210);
  AttackConfig cfg;
  cfg.variant = AttackVariant::AS_SINGLE_PHOTON;
  const int n = 100000;
  int conclusive = 0;
  for (int i = 0; i < n; ++i) {
    EveState eve;
    eve.theta0p = uniform01(rng) * kPi;
    eve.theta1p = uniform01(rng) * kPi;
    int s0 = random_bit(rng), s1 = random_bit(rng);
    double phi = uniform01(rng) * kPi;
    double g = std::sqrt(2.0);
    std::pair<Pulse, Pulse> view = {
        rotate(CoherentPulse::at_angle(g, eve.theta0p), phi + s0 * (kPi / 2.0)),
        rotate(CoherentPulse::at_angle(g, eve.theta1p), phi + s1 * (kPi / 2.0))};
    ParityResult res = as_single_photon(view, cfg, eve, rng);
    if (res.conclusive) ++conclusive;
  }
  // The single extracted photon per pulse keeps the HOM test bound at 1/4
  // regardless of the source brightness.
  CHECK(static_cast<double>(conclusive) / n < 0.26);
}

TEST_CASE("coherent comparison reproduces the closed-form success rate") {
  Rng rng(220);
  AttackConfig cfg;
  cfg.variant = AttackVariant::AS_COHERENT;
  cfg.r_amp = std::sqrt(0.5);
  cfg.gamma = std::sqrt(2.0);  // r^2 gamma^2 = 1
  const int n = 200000;
  int conclusive = 0;
  for (int i = 0; i < n; ++i) {
    EveState eve;
    eve.theta0p = uniform01(rng) * kPi;
    eve.theta1p = eve.theta0p;
    int s0 = random_bit(rng), s1 = random_bit(rng);
    double phi = uniform01(rng) * kPi;
    std::pair<CoherentPulse, CoherentPulse> view = {
        rotate(CoherentPulse::at_angle(cfg.gamma, eve.theta0p), phi + s0 * (kPi / 2.0)),
        rotate(CoherentPulse::at_angle(cfg.gamma, eve.theta1p), phi + s1 * (kPi / 2.0))};
    ParityResult res = as_coherent(view, cfg, eve, rng);
    if (res.conclusive) {
      ++conclusive;
      CHECK(res.parity == (s0 ^ s1));
    }
  }
  double expect = p_success(cfg.r_amp, cfg.gamma);
  CHECK(expect == doctest::Approx(std::pow(1.0 - std::exp(-1.0), 2)).epsilon(1e-12));
  double sigma = std::sqrt(expect * (1 - expect) / n);
  CHECK(std::fabs(static_cast<double>(conclusive) / n - expect) < 4 * sigma);
}

TEST_CASE("closed forms and gamma tuning") {
  CHECK(p_success(0.5, 2.0) == doctest::Approx(std::pow(-std::expm1(-1.0), 2)).epsilon(1e-12));
  CHECK(p_bob(0.5, 2.0) ==
        doctest::Approx(p_success(0.5, 2.0) * -std::expm1(-3.0)).epsilon(1e-12));

  SUBCASE("p_bob is monotone in gamma") {
    double prev = 0.0;
    for (double g = 0.1; g < 6.0; g += 0.1) {
      double v = p_bob(0.4, g);
      CHECK(v >= prev);
      prev = v;
    }
  }
  SUBCASE("tuning inverts p_bob on a grid") {
    for (double r : {0.2, 0.5, 0.8}) {
      for (double target : {0.1, 0.4, 0.635, 0.9}) {
        auto g = tune_gamma(target, r);
        REQUIRE(g.has_value());
        CHECK(p_bob(r, *g) == doctest::Approx(target).epsilon(1e-7));
      }
    }
  }
  SUBCASE("heavy-tap tuning needs a bright pulse") {
    auto g = tune_gamma(0.635, std::sqrt(0.1));
    REQUIRE(g.has_value());
    double g2 = *g * *g;
    CHECK(g2 > 15.0);
    CHECK(g2 < 17.0);
    CHECK(std::fabs(p_bob(std::sqrt(0.1), *g) - 0.635) <= 1e-9);
  }
  SUBCASE("edge targets") {
    CHECK(tune_gamma(0.0, 0.5).value() == 0.0);
    CHECK(tune_gamma(-0.5, 0.5).value() == 0.0);
    CHECK_FALSE(tune_gamma(1.0, 0.5).has_value());
    CHECK_FALSE(tune_gamma(0.5, 0.0).has_value());
  }
}

TEST_CASE("coherent impersonation against the plain protocol learns every kept bit") {
  ExperimentConfig cfg;
  cfg.params.eta_sq = 1.0;
  cfg.params.p_test = 0.0;
  cfg.params.rounds = 10000;
  cfg.attack.variant = AttackVariant::AS_COHERENT;
  cfg.attack.gamma = 4.0;
  cfg.attack.r_amp = std::sqrt(0.5);
  cfg.seed = 2024;
  ExperimentResult res = run_experiment(cfg);
  CHECK(res.stats.key_rounds > 1000);
  CHECK(res.stats.qber.value == 0.0);
  CHECK(res.stats.eve_knowledge_fraction.value == 1.0);
  CHECK(res.alice_key == res.bob_key);
}

TEST_CASE("single-photon impersonation also decodes cleanly when conclusive") {
  ExperimentConfig cfg;
  cfg.params.eta_sq = 1.0;
  cfg.params.p_test = 0.0;
  cfg.params.rounds = 20000;
  cfg.attack.variant = AttackVariant::AS_SINGLE_PHOTON;
  cfg.attack.eve_fock_n = 2;
  cfg.seed = 2025;
  ExperimentResult res = run_experiment(cfg);
  CHECK(res.stats.qber.value == 0.0);
  CHECK(res.stats.eve_knowledge_fraction.value == 1.0);
  // Bob's detection rate is bounded by the conclusive rate of the HOM test.
  CHECK(res.stats.bob_detection_rate.value < 0.27);
  CHECK(res.stats.conclusive_rate.value ==
        doctest::Approx(0.25).epsilon(0.1));
}
