#pragma once

// File formats: permutations (text or JSON array), oracle configuration,
// LIS results, and the CSV/JSON experiment tables.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "noisylis/adversarial.hpp"
#include "noisylis/approx_sort.hpp"
#include "noisylis/core_model.hpp"
#include "noisylis/experiment.hpp"
#include "noisylis/lis_result.hpp"

namespace noisylis::io {

using nlohmann::json;

enum class PermutationFormat { text, json };

/// Reads one integer per line, or a JSON array when the first non-blank
/// character is '['. Arbitrary distinct integer keys are normalized to ranks.
Permutation read_permutation(std::istream& in);
Permutation read_permutation_file(const std::string& path);
void write_permutation(std::ostream& out, const Permutation& s, PermutationFormat format);

/// {p, seed, mode, tau?}; tau only in threshold mode.
json oracle_to_json(const ComparisonOracle& oracle);
ComparisonOracle oracle_from_json(const json& j);

/// {length, d_used, subseq, flags{subsequence, distant, increasing}}; flags is
/// null when the result was never validated.
json lis_result_to_json(const LisResult& result);

json trial_to_json(const TrialRecord& record);
void write_trial_csv_header(std::ostream& out);
void write_trial_csv_row(std::ostream& out, const TrialRecord& record);
/// Wall-clock sidecar; the only non-reproducible output.
void write_timing_csv(std::ostream& out, const std::vector<TrialRecord>& records);

json sweep_summary_to_json(const SweepConfig& config, const std::vector<CellSummary>& cells);
json timing_summary_to_json(const std::vector<CellSummary>& cells);

/// Header: n,seed,max_disl,total_disl,sorter,p,w,r
void write_dislocation_csv(std::ostream& out, const DislocationCurve& curve);
json dislocation_summary_to_json(const DislocationCurve& curve);

/// Header: trial,seed,member_index,returned_length,truly_increasing,success
void write_failure_csv(std::ostream& out, const FailureStats& stats);
/// {n, p, eta, trials, failures, ci_low, ci_high} plus failure_rate and schema_version.
json failure_summary_to_json(const FailureStats& stats);

/// Shortest decimal form that round-trips (used for p and ratios in CSV).
std::string format_double(double value);

}  // namespace noisylis::io
