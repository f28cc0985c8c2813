#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "legcs/solver.hpp"

namespace legcs {

enum class ExperimentKind { Fig1, Quintiles, MSweep, SSweep };

// Batch configuration.  Defaults reproduce the reference runs; `scale`
// multiplies the trial/set counts down (never below 10) for smoke runs.
struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::Fig1;
  std::uint64_t master_seed = 20260809;
  double scale = 1.0;
  int threads = 1;
  double gamma0 = 0.8;
  double success_tol = 1e-4;
  SolverConfig solver;
  std::string out_dir;  // empty: no files, return tables only

  std::vector<int> sparsities;  // defaults per kind
  std::vector<int> m_grid;      // msweep only
  int m = 0;                    // fixed sample count (fig1, quintiles, ssweep)
  int trials = 0;               // fig1 trials per (case, s)
  int n_sets = 0;               // section-5 sample-set count
  int n_groups = 5;
};

ExperimentSpec default_spec(ExperimentKind kind);

struct TrialRecord {
  std::string experiment;
  std::string case_label;
  std::string group;
  int s = 0;
  int m = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  double rel_l2 = 0.0;
  double rel_l1 = 0.0;
  bool success = false;
  int iterations = 0;
  double wall_ms = 0.0;
};

struct SummaryRow {
  std::string case_label;
  std::string group;
  int s = 0;
  int m = 0;
  int count = 0;
  double mean_rel_l2 = 0.0;
  double mean_rel_l1 = 0.0;
  double success_rate = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 0.0;
};

struct SummaryTable {
  std::string experiment;
  bool x_is_m = false;  // panels plot vs m instead of vs s
  std::vector<SummaryRow> rows;
  std::vector<TrialRecord> trials;

  const SummaryRow* find(const std::string& case_label, const std::string& group, int s,
                         int m) const;
};

SummaryTable run_fig1(const ExperimentSpec& spec);
SummaryTable run_quintiles(const ExperimentSpec& spec);
SummaryTable run_msweep(const ExperimentSpec& spec);
SummaryTable run_ssweep(const ExperimentSpec& spec);
SummaryTable run_experiment(const ExperimentSpec& spec);

// TrialRecord CSV:
//   experiment,case,group,s,m,trial,seed,rel_l2,rel_l1,success,iterations,wall_ms
void emit_trials_csv(const SummaryTable& table, std::ostream& os);

// Summary CSV (deterministic bytes):
//   experiment,case,group,s,m,count,mean_rel_l2,mean_rel_l1,success_rate,wilson_lo,wilson_hi
void emit_summary_csv(const SummaryTable& table, std::ostream& os);
SummaryTable read_summary_csv(std::istream& is);

struct PlotStyle {
  int width = 640;
  int height = 420;
  bool log_error = true;
};

// Writes <stem>_error.svg and <stem>_success.svg panels; no-op on an empty
// table.
void emit_svg(const SummaryTable& table, const std::string& path_stem,
              const PlotStyle& style = {});

// Writes summary/trials CSV and the two SVG panels under spec.out_dir.
void write_outputs(const SummaryTable& table, const ExperimentSpec& spec);

// key=value config file ('#' comments); recognized keys override spec fields:
// seed, scale, threads, gamma0, success_tol, max_iters, feas_tol, gap_tol,
// step_scale, m, trials, n_sets, n_groups, sparsities, m_grid, out_dir.
void apply_config_file(ExperimentSpec& spec, const std::string& path);

}  // namespace legcs
