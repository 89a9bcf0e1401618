#pragma once

#include <json.hpp>

#include <iosfwd>
#include <string>

#include "rcrt/oracle_sim.hpp"

namespace rcrt {

// All JSON emitted by the CLI uses insertion order and renders integers as
// decimal strings, so values survive any magnitude.
using Json = nlohmann::ordered_json;

Json to_json(const ExtremeStats &st);
Json to_json(const Reconstruction &rec);
Json to_json(const CampaignReport &report);
Json to_json(const SharpnessWitness &w);

// {"n", "a", "n0", "gamma", "q"} for the exact solver.
Json solve_to_json(const CleanInstance &inst);

// {"ref_index" (1-based), "tau4", "q_hat", "n_hat"}.
Json gen_recover_to_json(const GeneralModuliSet &gm, const GeneralRecovery &rec);

// Report serialization with the wall-clock field removed; two campaigns with
// the same config must produce byte-identical fingerprints.
std::string stable_fingerprint(const CampaignReport &report);

void write_csv_header(std::ostream &os);
void write_csv_row(std::ostream &os, const TrialRecord &row);

}  // namespace rcrt
