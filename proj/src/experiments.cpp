#include "legcs/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "legcs/basis.hpp"
#include "legcs/measurement.hpp"
#include "legcs/rng.hpp"
#include "legcs/sampling.hpp"
#include "legcs/svg.hpp"

namespace legcs {

namespace {

int scaled(int count, double scale) {
  if (scale >= 1.0) return count;
  return std::max(10, static_cast<int>(std::lround(count * scale)));
}

void run_parallel(int n_tasks, int threads, const std::function<void(int)>& task) {
  threads = std::max(1, threads);
  if (threads == 1) {
    for (int i = 0; i < n_tasks; ++i) task(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n_tasks; i = next.fetch_add(1)) task(i);
    });
  }
  for (auto& th : pool) th.join();
}

TrialRecord solve_trial(const std::string& experiment, const std::string& case_label,
                        const std::string& group, const SensingMatrix& a, int s, int trial,
                        std::uint64_t signal_seed, const ExperimentSpec& spec) {
  const auto t0 = std::chrono::steady_clock::now();
  const SparseSignal c = gen_sparse_signal(a.cols(), s, signal_seed);
  const Observation g = observe(a, c, 0.0, 0);
  const RecoveryResult res = solve_bp(a.entries, g.values, spec.solver);
  const RecoveryMetrics met = recovery_metrics(c, res, spec.success_tol);
  TrialRecord r;
  r.experiment = experiment;
  r.case_label = case_label;
  r.group = group;
  r.s = s;
  r.m = a.rows();
  r.trial = trial;
  r.seed = signal_seed;
  r.rel_l2 = met.rel_l2;
  r.rel_l1 = met.rel_l1;
  r.success = met.success;
  r.iterations = res.iterations;
  r.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

double wilson_lo(double p, int n) {
  if (n == 0) return 0.0;
  const double z = 1.959963984540054;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = p + z2 / (2.0 * n);
  const double hw = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return std::max(0.0, (center - hw) / denom);
}

double wilson_hi(double p, int n) {
  if (n == 0) return 1.0;
  const double z = 1.959963984540054;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = p + z2 / (2.0 * n);
  const double hw = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return std::min(1.0, (center + hw) / denom);
}

// Aggregates trials into rows keyed (case, group, s, m), insertion-ordered by
// the deterministic key ordering.
void summarize(SummaryTable& table) {
  std::map<std::tuple<std::string, std::string, int, int>, std::vector<const TrialRecord*>> cells;
  for (const TrialRecord& t : table.trials)
    cells[{t.case_label, t.group, t.s, t.m}].push_back(&t);
  table.rows.clear();
  for (const auto& [key, list] : cells) {
    SummaryRow row;
    row.case_label = std::get<0>(key);
    row.group = std::get<1>(key);
    row.s = std::get<2>(key);
    row.m = std::get<3>(key);
    row.count = static_cast<int>(list.size());
    double sl2 = 0.0, sl1 = 0.0, succ = 0.0;
    for (const TrialRecord* t : list) {
      sl2 += t->rel_l2;
      sl1 += t->rel_l1;
      succ += t->success ? 1.0 : 0.0;
    }
    row.mean_rel_l2 = sl2 / row.count;
    row.mean_rel_l1 = sl1 / row.count;
    row.success_rate = succ / row.count;
    row.wilson_lo = wilson_lo(row.success_rate, row.count);
    row.wilson_hi = wilson_hi(row.success_rate, row.count);
    table.rows.push_back(row);
  }
}

void sort_trials(SummaryTable& table) {
  std::sort(table.trials.begin(), table.trials.end(), [](const TrialRecord& a, const TrialRecord& b) {
    return std::tie(a.case_label, a.group, a.s, a.m, a.trial) <
           std::tie(b.case_label, b.group, b.s, b.m, b.trial);
  });
}

}  // namespace

ExperimentSpec default_spec(ExperimentKind kind) {
  ExperimentSpec spec;
  spec.kind = kind;
  switch (kind) {
    case ExperimentKind::Fig1:
      spec.m = 100;
      spec.trials = 100;
      spec.sparsities = {5, 10, 15, 20, 25, 30, 35, 40};
      break;
    case ExperimentKind::Quintiles:
      spec.m = 180;
      spec.n_sets = 1000;
      spec.sparsities = {30, 40};
      break;
    case ExperimentKind::MSweep:
      spec.n_sets = 1500;
      spec.sparsities = {14};
      for (int m = 10; m <= 180; m += 10) spec.m_grid.push_back(m);
      break;
    case ExperimentKind::SSweep:
      spec.m = 180;
      spec.n_sets = 1500;
      spec.sparsities = {5, 10, 15, 20, 25, 30, 35, 40, 45, 50, 55, 60};
      break;
  }
  return spec;
}

const SummaryRow* SummaryTable::find(const std::string& case_label, const std::string& group,
                                     int s, int m) const {
  for (const SummaryRow& r : rows)
    if (r.case_label == case_label && r.group == group && r.s == s && r.m == m) return &r;
  return nullptr;
}

SummaryTable run_fig1(const ExperimentSpec& spec_in) {
  ExperimentSpec spec = spec_in;
  if (spec.m == 0) spec.m = 100;
  if (spec.trials == 0) spec.trials = 100;
  if (spec.sparsities.empty()) spec.sparsities = default_spec(ExperimentKind::Fig1).sparsities;
  const int trials = scaled(spec.trials, spec.scale);

  struct Case {
    const char* label;
    int lo, hi;
  };
  const Case cases[] = {{"i", 1, 200}, {"ii", 301, 500}, {"iii", 1801, 2000}};

  struct Task {
    int case_idx, s, trial;
  };
  std::vector<Task> tasks;
  for (int ci = 0; ci < 3; ++ci)
    for (int s : spec.sparsities)
      for (int t = 0; t < trials; ++t) tasks.push_back({ci, s, t});

  SummaryTable table;
  table.experiment = "fig1";
  table.trials.resize(tasks.size());
  const std::uint64_t tag = hash_tag("fig1");
  run_parallel(static_cast<int>(tasks.size()), spec.threads, [&](int i) {
    const Task& tk = tasks[i];
    const Case& cs = cases[tk.case_idx];
    // Fresh sample set per trial, as in the reference protocol.
    const std::uint64_t set_seed =
        derive_seed(spec.master_seed, {tag, hash_tag(cs.label), hash_tag("set"),
                                       (std::uint64_t)tk.s, (std::uint64_t)tk.trial});
    const std::uint64_t sig_seed =
        derive_seed(spec.master_seed, {tag, hash_tag(cs.label), hash_tag("signal"),
                                       (std::uint64_t)tk.s, (std::uint64_t)tk.trial});
    const IndexSet J = make_window_set(cs.lo, cs.hi);
    const SampleSet q = draw_uniform(spec.m, 1, set_seed);
    const SensingMatrix a = assemble(J, q);
    table.trials[i] = solve_trial("fig1", cs.label, "all", a, tk.s, tk.trial, sig_seed, spec);
  });
  sort_trials(table);
  summarize(table);
  return table;
}

namespace {

// Shared engine for the section-5 experiments: draw n_sets uniform sample
// sets of size m, rank them into quintiles by test value, then run one trial
// per (set, sparsity).  Optionally adds a Chebyshev-preconditioned series of
// the same size.
void run_grouped_sets(SummaryTable& table, const ExperimentSpec& spec, const IndexSet& J, int m,
                      const std::vector<int>& sparsities, bool with_chebyshev,
                      const std::string& experiment) {
  const int n_sets = scaled(spec.n_sets, spec.scale);
  const std::uint64_t tag = hash_tag(experiment);

  std::vector<SampleSet> sets(n_sets);
  run_parallel(n_sets, spec.threads, [&](int i) {
    sets[i] = draw_uniform(m, 1, derive_seed(spec.master_seed, {tag, hash_tag("set"),
                                                                (std::uint64_t)m, (std::uint64_t)i}));
    test_value(sets[i], spec.gamma0);
  });
  const auto groups = rank_into_groups(sets, spec.gamma0, spec.n_groups);
  std::vector<std::string> group_of(n_sets);
  for (int gi = 0; gi < static_cast<int>(groups.size()); ++gi)
    for (int idx : groups[gi]) group_of[idx] = "g" + std::to_string(gi + 1);

  struct Task {
    int set_idx, s;
    bool cheb;
  };
  std::vector<Task> tasks;
  for (int i = 0; i < n_sets; ++i)
    for (int s : sparsities) tasks.push_back({i, s, false});
  const int n_cheb = with_chebyshev ? n_sets : 0;
  for (int i = 0; i < n_cheb; ++i)
    for (int s : sparsities) tasks.push_back({i, s, true});

  const std::size_t base = table.trials.size();
  table.trials.resize(base + tasks.size());
  run_parallel(static_cast<int>(tasks.size()), spec.threads, [&](int i) {
    const Task& tk = tasks[i];
    const std::uint64_t sig_seed =
        derive_seed(spec.master_seed, {tag, hash_tag(tk.cheb ? "cheb-signal" : "signal"),
                                       (std::uint64_t)m, (std::uint64_t)tk.set_idx,
                                       (std::uint64_t)tk.s});
    SensingMatrix a;
    std::string group;
    if (tk.cheb) {
      const SampleSet q = draw_chebyshev(
          m, 1, derive_seed(spec.master_seed, {tag, hash_tag("cheb-set"), (std::uint64_t)m,
                                               (std::uint64_t)tk.set_idx}));
      a = assemble_preconditioned(J, q);
      group = "cheb";
    } else {
      a = assemble(J, sets[tk.set_idx]);
      group = group_of[tk.set_idx];
    }
    table.trials[base + i] =
        solve_trial(experiment, "j1-360", group, a, tk.s, tk.set_idx, sig_seed, spec);
  });
}

}  // namespace

SummaryTable run_quintiles(const ExperimentSpec& spec_in) {
  ExperimentSpec spec = spec_in;
  const ExperimentSpec defaults = default_spec(ExperimentKind::Quintiles);
  if (spec.m == 0) spec.m = defaults.m;
  if (spec.n_sets == 0) spec.n_sets = defaults.n_sets;
  if (spec.sparsities.empty()) spec.sparsities = defaults.sparsities;
  SummaryTable table;
  table.experiment = "quintiles";
  const IndexSet J = make_window_set(1, 360);
  run_grouped_sets(table, spec, J, spec.m, spec.sparsities, false, "quintiles");
  sort_trials(table);
  summarize(table);
  return table;
}

SummaryTable run_msweep(const ExperimentSpec& spec_in) {
  ExperimentSpec spec = spec_in;
  const ExperimentSpec defaults = default_spec(ExperimentKind::MSweep);
  if (spec.n_sets == 0) spec.n_sets = defaults.n_sets;
  if (spec.sparsities.empty()) spec.sparsities = defaults.sparsities;
  if (spec.m_grid.empty()) spec.m_grid = defaults.m_grid;
  SummaryTable table;
  table.experiment = "msweep";
  table.x_is_m = true;
  const IndexSet J = make_window_set(1, 360);
  for (int m : spec.m_grid)
    run_grouped_sets(table, spec, J, m, spec.sparsities, true, "msweep");
  sort_trials(table);
  summarize(table);
  return table;
}

SummaryTable run_ssweep(const ExperimentSpec& spec_in) {
  ExperimentSpec spec = spec_in;
  const ExperimentSpec defaults = default_spec(ExperimentKind::SSweep);
  if (spec.m == 0) spec.m = defaults.m;
  if (spec.n_sets == 0) spec.n_sets = defaults.n_sets;
  if (spec.sparsities.empty()) spec.sparsities = defaults.sparsities;
  SummaryTable table;
  table.experiment = "ssweep";
  const IndexSet J = make_window_set(1, 360);
  run_grouped_sets(table, spec, J, spec.m, spec.sparsities, true, "ssweep");
  sort_trials(table);
  summarize(table);
  return table;
}

SummaryTable run_experiment(const ExperimentSpec& spec) {
  SummaryTable table;
  switch (spec.kind) {
    case ExperimentKind::Fig1:
      table = run_fig1(spec);
      break;
    case ExperimentKind::Quintiles:
      table = run_quintiles(spec);
      break;
    case ExperimentKind::MSweep:
      table = run_msweep(spec);
      break;
    case ExperimentKind::SSweep:
      table = run_ssweep(spec);
      break;
  }
  if (!spec.out_dir.empty()) write_outputs(table, spec);
  return table;
}

void emit_trials_csv(const SummaryTable& table, std::ostream& os) {
  os << "experiment,case,group,s,m,trial,seed,rel_l2,rel_l1,success,iterations,wall_ms\n";
  char buf[128];
  for (const TrialRecord& t : table.trials) {
    std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%d,%d,%.3f\n", t.rel_l2, t.rel_l1,
                  t.success ? 1 : 0, t.iterations, t.wall_ms);
    os << t.experiment << ',' << t.case_label << ',' << t.group << ',' << t.s << ',' << t.m << ','
       << t.trial << ',' << t.seed << buf;
  }
}

void emit_summary_csv(const SummaryTable& table, std::ostream& os) {
  os << "experiment,case,group,s,m,count,mean_rel_l2,mean_rel_l1,success_rate,wilson_lo,wilson_hi\n";
  char buf[160];
  for (const SummaryRow& r : table.rows) {
    std::snprintf(buf, sizeof buf, ",%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.count, r.mean_rel_l2,
                  r.mean_rel_l1, r.success_rate, r.wilson_lo, r.wilson_hi);
    os << table.experiment << ',' << r.case_label << ',' << r.group << ',' << r.s << ',' << r.m
       << buf;
  }
}

SummaryTable read_summary_csv(std::istream& is) {
  SummaryTable table;
  std::string line;
  if (!std::getline(is, line) || line.rfind("experiment,case,group", 0) != 0)
    throw std::runtime_error("summary CSV: bad header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string tok;
    SummaryRow r;
    std::getline(row, table.experiment, ',');
    std::getline(row, r.case_label, ',');
    std::getline(row, r.group, ',');
    std::getline(row, tok, ',');
    r.s = std::stoi(tok);
    std::getline(row, tok, ',');
    r.m = std::stoi(tok);
    std::getline(row, tok, ',');
    r.count = std::stoi(tok);
    std::getline(row, tok, ',');
    r.mean_rel_l2 = std::stod(tok);
    std::getline(row, tok, ',');
    r.mean_rel_l1 = std::stod(tok);
    std::getline(row, tok, ',');
    r.success_rate = std::stod(tok);
    std::getline(row, tok, ',');
    r.wilson_lo = std::stod(tok);
    std::getline(row, tok, ',');
    r.wilson_hi = std::stod(tok);
    table.rows.push_back(r);
  }
  table.x_is_m = table.experiment == "msweep";
  return table;
}

void emit_svg(const SummaryTable& table, const std::string& path_stem, const PlotStyle& style) {
  if (table.rows.empty()) return;
  // One series per (case, group); x is s or m.
  std::map<std::string, SvgSeries> err, succ;
  for (const SummaryRow& r : table.rows) {
    const std::string key =
        r.case_label + (r.group == "all" ? "" : std::string("/") + r.group);
    const double x = table.x_is_m ? r.m : r.s;
    auto& e = err[key];
    auto& s = succ[key];
    e.label = s.label = key;
    e.x.push_back(x);
    e.y.push_back(std::max(r.mean_rel_l2, 1e-16));
    s.x.push_back(x);
    s.y.push_back(r.success_rate);
  }
  SvgPlot pe;
  pe.title = table.experiment + ": mean relative l2 error";
  pe.x_label = table.x_is_m ? "m" : "s";
  pe.y_label = "mean rel l2";
  pe.log_y = style.log_error;
  pe.width = style.width;
  pe.height = style.height;
  for (auto& [k, s] : err) pe.series.push_back(std::move(s));
  write_svg(pe, path_stem + "_error.svg");

  SvgPlot ps;
  ps.title = table.experiment + ": success rate";
  ps.x_label = pe.x_label;
  ps.y_label = "success rate";
  ps.width = style.width;
  ps.height = style.height;
  for (auto& [k, s] : succ) ps.series.push_back(std::move(s));
  write_svg(ps, path_stem + "_success.svg");
}

void write_outputs(const SummaryTable& table, const ExperimentSpec& spec) {
  std::filesystem::create_directories(spec.out_dir);
  const std::string stem = spec.out_dir + "/" + table.experiment;
  {
    std::ofstream f(stem + "_summary.csv", std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + stem + "_summary.csv");
    emit_summary_csv(table, f);
  }
  {
    std::ofstream f(stem + "_trials.csv", std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + stem + "_trials.csv");
    emit_trials_csv(table, f);
  }
  emit_svg(table, stem);
}

void apply_config_file(ExperimentSpec& spec, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("config file not found: " + path);
  std::string line;
  auto parse_int_list = [](const std::string& v) {
    std::vector<int> out;
    std::stringstream ss(v);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
  };
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      const auto p = s.find_last_not_of(" \t\r");
      s.resize(p == std::string::npos ? 0 : p + 1);
      return s;
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) continue;
    if (key == "seed") spec.master_seed = std::stoull(val);
    else if (key == "scale") spec.scale = std::stod(val);
    else if (key == "threads") spec.threads = std::stoi(val);
    else if (key == "gamma0") spec.gamma0 = std::stod(val);
    else if (key == "success_tol") spec.success_tol = std::stod(val);
    else if (key == "max_iters") spec.solver.max_iters = std::stoi(val);
    else if (key == "feas_tol") spec.solver.feas_tol = std::stod(val);
    else if (key == "gap_tol") spec.solver.gap_tol = std::stod(val);
    else if (key == "step_scale") spec.solver.step_scale = std::stod(val);
    else if (key == "m") spec.m = std::stoi(val);
    else if (key == "trials") spec.trials = std::stoi(val);
    else if (key == "n_sets") spec.n_sets = std::stoi(val);
    else if (key == "n_groups") spec.n_groups = std::stoi(val);
    else if (key == "sparsities") spec.sparsities = parse_int_list(val);
    else if (key == "m_grid") spec.m_grid = parse_int_list(val);
    else if (key == "out_dir") spec.out_dir = val;
    else
      throw std::runtime_error("config: unknown key '" + key + "' at line " +
                               std::to_string(lineno));
  }
}

}  // namespace legcs
