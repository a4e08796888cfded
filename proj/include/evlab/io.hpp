#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "evlab/coloured.hpp"
#include "evlab/drift.hpp"
#include "evlab/experiments.hpp"
#include "evlab/kernel.hpp"
#include "evlab/lyapunov.hpp"

namespace evlab {

/// Parses "8,3,4,1" (blocks; empty or "()" for the ground state) or a 0/1 word.
/// A string of only 0/1 characters without commas is read as a word.
Configuration parse_configuration(const std::string& text);

/// JSON experiment description {beta, p, s0_blocks, horizon, cap, replicas, seed, mode}.
struct ExperimentSpec {
  double beta = 0.0;
  double p = 0.5;
  std::vector<std::int64_t> s0_blocks;
  std::int64_t horizon = 1000000;
  std::int64_t cap = 1000000;
  std::int64_t replicas = 10000;
  std::uint64_t seed = 0;
  std::string mode = "tau";
};

ExperimentSpec read_experiment_spec(const std::string& json_text);
std::string write_experiment_spec(const ExperimentSpec& spec);

void write_tau_csv(std::ostream& os, std::span<const TauSample> samples);
void write_growth_csv(std::ostream& os, std::span<const GrowthRun> runs);
void write_drift_csv(std::ostream& os, std::span<const DriftReport> reports);
void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& record);

struct ColouredRow {
  std::int64_t t = 0;
  std::int64_t size = 0;
  std::int64_t chi = 0;
  std::int64_t overlap = -1;  // -1 for the holding state
  bool obstruction = false;
};
ColouredRow coloured_row(std::int64_t t, const ColouredConfiguration& x);
void write_coloured_csv(std::ostream& os, std::span<const ColouredRow> rows);

std::string audit_json(const AuditReport& report);
/// {"successor_blocks": [...], "prob_num": "...", "prob_den": "..."} per entry.
std::string transition_law_json(const TransitionLaw<Rational>& law);
std::string exploratory_json(const ExploratoryReport& report);

}  // namespace evlab
