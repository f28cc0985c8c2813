#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "legcs/experiments.hpp"
#include "legcs/sampling.hpp"
#include "legcs/theory.hpp"

namespace {

struct GlobalOpts {
  std::uint64_t seed = 20260809;
  std::string out_dir = "out";
  double scale = 1.0;
  int threads = 1;
  std::string config;
};

void add_globals(CLI::App* cmd, GlobalOpts& g) {
  cmd->add_option("--seed", g.seed, "master seed");
  cmd->add_option("--out-dir", g.out_dir, "output directory");
  cmd->add_option("--scale", g.scale, "scale trial counts down (min 10 trials)");
  cmd->add_option("--threads", g.threads, "worker threads");
  cmd->add_option("--config", g.config, "key=value config file");
}

legcs::ExperimentSpec make_spec(legcs::ExperimentKind kind, const GlobalOpts& g) {
  legcs::ExperimentSpec spec = legcs::default_spec(kind);
  spec.master_seed = g.seed;
  spec.out_dir = g.out_dir;
  spec.scale = g.scale;
  spec.threads = g.threads;
  if (!g.config.empty()) legcs::apply_config_file(spec, g.config);
  return spec;
}

void print_summary(const legcs::SummaryTable& table) {
  std::printf("%-10s %-6s %4s %4s %6s %12s %9s\n", "case", "group", "s", "m", "count",
              "mean_rel_l2", "success");
  for (const auto& r : table.rows)
    std::printf("%-10s %-6s %4d %4d %6d %12.4g %9.3f\n", r.case_label.c_str(), r.group.c_str(),
                r.s, r.m, r.count, r.mean_rel_l2, r.success_rate);
}

int run_kind(legcs::ExperimentKind kind, const GlobalOpts& g) {
  const legcs::ExperimentSpec spec = make_spec(kind, g);
  const legcs::SummaryTable table = legcs::run_experiment(spec);
  print_summary(table);
  std::printf("outputs written to %s/\n", spec.out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse Legendre recovery toolkit"};
  app.require_subcommand(1);

  GlobalOpts g_fig1, g_quint, g_msweep, g_ssweep, g_lemmas, g_cmplx, g_score;

  auto* fig1 = app.add_subcommand("fig1", "three-window sparsity sweep (m=100, N=200)");
  add_globals(fig1, g_fig1);
  auto* quint = app.add_subcommand("quintiles", "quintile grouping (m=180, N=360, s in {30,40})");
  add_globals(quint, g_quint);
  auto* msweep = app.add_subcommand("msweep", "sample-count sweep with Chebyshev comparison");
  add_globals(msweep, g_msweep);
  auto* ssweep = app.add_subcommand("ssweep", "sparsity sweep at m=180");
  add_globals(ssweep, g_ssweep);

  auto* lemmas = app.add_subcommand("check-lemmas", "Monte Carlo / quadrature lemma validation");
  add_globals(lemmas, g_lemmas);
  int mc_budget = 100000;
  lemmas->add_option("--budget", mc_budget, "MC samples per check");

  auto* cmplx = app.add_subcommand("complexity", "sample-complexity evaluators");
  add_globals(cmplx, g_cmplx);
  legcs::REParams params;
  double theta = 1.0;
  cmplx->add_option("--s", params.s, "sparsity");
  cmplx->add_option("--alpha", params.alpha, "cone parameter (>1)");
  cmplx->add_option("--delta", params.delta, "RE defect in (0,1)");
  cmplx->add_option("--gamma", params.gamma, "failure budget");
  cmplx->add_option("--gamma0", params.gamma0, "preferable-set budget");
  cmplx->add_option("--N", params.N, "expansion size");
  cmplx->add_option("--d", params.d, "dimension");
  cmplx->add_option("--C", params.C, "universal-constant stand-in");
  cmplx->add_option("--theta", theta, "uniform bound for the BOS baseline");

  auto* score = app.add_subcommand("score-sets", "rank externally provided sample-set CSVs");
  add_globals(score, g_score);
  std::vector<std::string> files;
  double gamma0 = 0.8;
  score->add_option("files", files, "sample-set CSV files")->required();
  score->add_option("--gamma0", gamma0, "test-value parameter");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fig1->parsed()) return run_kind(legcs::ExperimentKind::Fig1, g_fig1);
    if (quint->parsed()) return run_kind(legcs::ExperimentKind::Quintiles, g_quint);
    if (msweep->parsed()) return run_kind(legcs::ExperimentKind::MSweep, g_msweep);
    if (ssweep->parsed()) return run_kind(legcs::ExperimentKind::SSweep, g_ssweep);

    if (lemmas->parsed()) {
      legcs::LemmaValidatorConfig cfg;
      cfg.mc_budget = mc_budget;
      cfg.seed = g_lemmas.seed;
      const auto checks = legcs::lemma_validators(cfg);
      std::printf("lemma,lhs,rhs,sigma3,pass,implied_constant\n");
      bool all_pass = true;
      for (const auto& c : checks) {
        std::printf("%s,%.6g,%.6g,%.6g,%d,%s\n", c.id.c_str(), c.lhs, c.rhs, c.sigma3,
                    c.pass ? 1 : 0,
                    c.implied_constant ? std::to_string(*c.implied_constant).c_str() : "");
        all_pass = all_pass && c.pass;
      }
      if (!g_lemmas.out_dir.empty()) {
        std::filesystem::create_directories(g_lemmas.out_dir);
        std::ofstream f(g_lemmas.out_dir + "/lemmas.csv", std::ios::binary);
        f << "lemma,lhs,rhs,sigma3,pass,implied_constant\n";
        for (const auto& c : checks) {
          char buf[256];
          std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g,%d,", c.id.c_str(), c.lhs, c.rhs,
                        c.sigma3, c.pass ? 1 : 0);
          f << buf;
          if (c.implied_constant) {
            std::snprintf(buf, sizeof buf, "%.17g", *c.implied_constant);
            f << buf;
          }
          f << '\n';
        }
      }
      return all_pass ? 0 : 1;
    }

    if (cmplx->parsed()) {
      const double m1 = legcs::complexity_1d(params);
      const double m1p = legcs::complexity_1d(params, true);
      const auto md = legcs::complexity_multi(params);
      const double mb = legcs::complexity_bos(params, theta);
      std::printf("complexity_1d            m >= %.6g\n", m1);
      std::printf("complexity_1d (pref-set) m >= %.6g\n", m1p);
      std::printf("complexity_multi (d=%d)   m >= %.6g  (fixed point: %d iters, residual %.2g)\n",
                  params.d, md.m, md.iterations, md.residual);
      std::printf("complexity_bos (theta=%g) m >= %.6g\n", theta, mb);
      return 0;
    }

    if (score->parsed()) {
      struct Scored {
        std::string file;
        double t;
        bool preferable_1d;
      };
      std::vector<Scored> scored;
      for (const auto& path : files) {
        std::ifstream f(path);
        if (!f) throw std::runtime_error("cannot open " + path);
        legcs::SampleSet q = legcs::read_sample_set_csv(f);
        const auto t = legcs::test_value(q, gamma0);
        scored.push_back(
            {path, t.value, q.dim == 1 && legcs::is_preferable_1d(q, gamma0)});
      }
      std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
      std::printf("rank,file,test_value,preferable_1d\n");
      for (std::size_t i = 0; i < scored.size(); ++i)
        std::printf("%zu,%s,%.10g,%d\n", i + 1, scored[i].file.c_str(), scored[i].t,
                    scored[i].preferable_1d ? 1 : 0);
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
