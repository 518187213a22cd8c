#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "qkdsim/experiment.hpp"

namespace qkdsim {

// Transcript CSV, one record per round. Columns (schema version 1):
//   round,theta0,theta1,phi,s0,s1,k,b,delta,Delta,omega,is_test,
//   outcome,disposition,l,bob_key,blocked_click,click_pattern,
//   considered,eve_conclusive,eve_parity,eve_guess
// KKKP runs leave the W-only columns at their defaults; adversary columns are
// -1 when no attack ran.
void write_transcript_csv(std::ostream& os, const ExperimentResult& result);

// Experiment summary: config echo, aggregate rates with standard errors,
// closed forms, W6/W7 verdicts.
nlohmann::json summary_json(const ExperimentResult& result);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

// Human-readable table printed by the CLI.
std::string summary_table(const ExperimentResult& result);

}  // namespace qkdsim
