#pragma once

#include <cstdint>
#include <functional>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "sgc/pipeline.hpp"
#include "sgc/ssbm.hpp"

namespace sgc {

/// SSBM configuration for sweeps: sizes either fixed or redrawn per trial
/// from the aspect-ratio procedure.
struct SsbmSpec {
  int64_t n = 0;
  int32_t k = 2;
  double p = 0.0;
  double eta = 0.0;
  std::optional<double> rho;
  std::optional<std::vector<int64_t>> sizes;

  SsbmParams materialize(uint64_t sizes_seed) const;
};

struct ExperimentPaths {
  std::string csv;
  std::string json;
  std::string svg;
};

struct GridSpec {
  SsbmSpec ssbm;
  int trials = 20;
  uint64_t seed = 0;
  int threads = 0;       // 0: hardware concurrency
  int max_resample = 10; // attempts per trial before marking it invalid
  std::vector<double> axis_a;  // tau_plus or gamma_plus
  std::vector<double> axis_b;  // tau_minus or gamma_minus
  PipelineConfig base;
  ExperimentPaths out;
};

struct CellStats {
  double mean_ari = 0.0;
  double std_ari = 0.0;
  int valid_trials = 0;
  bool invalid = true;
  std::vector<TrialRecord> trials;
};

struct GridOutcome {
  std::vector<double> axis_a, axis_b;
  std::vector<CellStats> cells;  // cells[ia * axis_b.size() + ib]
  nlohmann::json report;
};

/// ARI heatmap over (tau_plus, tau_minus) for SPONGE_sym. Every cell of a
/// trial sees the identical sampled graph; a trial whose largest component
/// stays below n/2 after max_resample attempts is recorded invalid.
GridOutcome grid_tau(const GridSpec& spec);

/// ARI heatmap over (gamma_plus, gamma_minus) for one of the regularized
/// methods (Lbar_sym_reg or SPONGE_sym_reg, chosen by spec.base.method).
GridOutcome grid_gamma(const GridSpec& spec);

struct CurveSpec {
  SsbmSpec ssbm;  // rho is swept, so its rho/sizes fields are ignored
  std::vector<double> rhos;
  std::vector<Method> methods;
  int trials = 20;
  uint64_t seed = 0;
  int threads = 0;
  int max_resample = 10;
  PipelineConfig base;
  ExperimentPaths out;
};

struct CurveOutcome {
  std::vector<double> rhos;
  std::vector<Method> methods;
  std::vector<CellStats> cells;  // cells[im * rhos.size() + ir]
  nlohmann::json report;
};

/// Mean ARI vs aspect ratio, all methods on the same per-trial graphs.
CurveOutcome rho_curve(const CurveSpec& spec);

struct CompareSpec {
  SsbmSpec ssbm;
  std::vector<Method> methods;
  int trials = 20;
  uint64_t seed = 0;
  int threads = 0;
  int max_resample = 10;
  PipelineConfig base;
  ExperimentPaths out;
};

struct CompareOutcome {
  std::vector<Method> methods;
  std::vector<CellStats> cells;  // one per method
  nlohmann::json report;
};

CompareOutcome compare_methods(const CompareSpec& spec);

/// Seed stream of one (cell, trial) work unit; exposed so any cell can be
/// replayed in isolation, bit for bit.
uint64_t unit_seed(uint64_t master, int64_t cell, int64_t trial);

struct TrialSample {
  bool ok = false;
  int attempts = 0;
  SignedGraph graph;
  Partition truth;
};

/// Sample with the largest-component >= n/2 resampling rule.
TrialSample sample_trial(const SsbmSpec& spec, uint64_t master, int64_t trial,
                         int max_resample);

/// Closed-form vs dense-oracle comparison battery; returns a JSON report
/// with one entry per check and an overall flag.
nlohmann::json theory_check(uint64_t seed, int draws, int64_t n_max);

/// Indexed parallel loop on a small worker pool; results must be written to
/// per-index slots so output is identical for any thread count.
void parallel_for(int64_t count, int threads, const std::function<void(int64_t)>& fn);

}  // namespace sgc
