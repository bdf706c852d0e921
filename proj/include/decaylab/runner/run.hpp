#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "decaylab/energy/functional.hpp"
#include "decaylab/models/admissibility.hpp"
#include "decaylab/runner/config.hpp"

namespace decaylab::runner {

// The admissibility check failed and no override was given.
struct AdmissibilityFailure : std::runtime_error {
  models::AdmissibilityReport report;
  AdmissibilityFailure(const std::string& what, models::AdmissibilityReport r)
      : std::runtime_error(what), report(std::move(r)) {}
};

// trace.csv in memory. Columns: t, l2, hbc, hgamma, ladder_0..ladder_N,
// term_0..term_N, E. ladder_n is |u|_{n theta + level}; l2 includes the mean,
// the Sobolev columns do not.
struct TraceTable {
  int n_max = 0;
  std::vector<double> t, l2, hbc, hgamma, E;
  std::vector<std::vector<double>> ladder, terms;

  std::size_t rows() const { return t.size(); }
  energy::EnergyTrace energy_trace() const;
  // Fills terms and E from the ladder.
  void apply_weights(const energy::WeightSequence& w, double t0);
  std::string to_csv() const;
  static TraceTable from_csv(const std::string& text);
};

struct RunStatus {
  std::string status = "ok";  // ok | blown_up
  std::optional<double> blowup_time;
  double blowup_norm = 0.0;
};

// Level of the functional: 0 for the L2-based rules, beta_c otherwise.
double functional_level(const models::ModelSpec& spec, energy::WeightRule rule);
double default_gamma(const models::ModelSpec& spec, const ExperimentConfig& cfg);
// First observation time with |u|_{beta_c} below the threshold (0 if none set).
double choose_t0(const TraceTable& trace, const ExperimentConfig& cfg);

nlohmann::json admissibility_json(const models::AdmissibilityReport& r);
nlohmann::json exponents_json(const models::ExponentResult& r);

// Verdicts from stored data only.
nlohmann::json compute_verdicts(const ExperimentConfig& cfg, const TraceTable& trace,
                                const energy::WeightSequence& weights, const RunStatus& status);

struct RunResult {
  ExperimentConfig config;
  RunStatus status;
  TraceTable trace;
  energy::WeightSequence weights;
  std::optional<energy::WeightSequence> calibrated;
  nlohmann::json verdicts;
  std::optional<nlohmann::json> mild;
  bool admissibility_overridden = false;
};

struct RunOptions {
  bool override_admissibility = false;
};

// Integrates, measures and judges in memory.
RunResult execute(const ExperimentConfig& cfg, const RunOptions& opt = {});

// Writes config.json, trace.csv, weights.json, verdicts.json, [mild.json],
// plots/*.svg and meta.json (with SHA-256 checksums) into dir.
void write_run_dir(const RunResult& r, const std::filesystem::path& dir);

struct ReportResult {
  nlohmann::json verdicts;  // recomputed
  bool matches_stored = false;
  std::string summary;
};

// Validates a run directory, recomputes its verdicts from trace.csv and
// regenerates the plots. IoError for a missing run or a checksum failure.
ReportResult report(const std::filesystem::path& dir);

std::string sha256_hex(const std::string& data);

}  // namespace decaylab::runner
