#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "decaylab/energy/calibrate.hpp"
#include "decaylab/errors.hpp"
#include "decaylab/mild/picard.hpp"
#include "decaylab/models/admissibility.hpp"
#include "decaylab/models/symbol_parser.hpp"
#include "decaylab/runner/initial_data.hpp"
#include "decaylab/runner/run.hpp"

namespace fs = std::filesystem;
using namespace decaylab;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kAdmissibility = 2, kBlowUp = 3, kIo = 4 };

struct Common {
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> nmax;
  bool override_admissibility = false;
};

runner::ExperimentConfig load(const std::string& path, const Common& c) {
  auto cfg = runner::load_config(path);
  if (c.seed) cfg.initial.seed = *c.seed;
  if (c.nmax) cfg.n_max = *c.nmax;
  return cfg;
}

int cmd_run(const std::string& path, const Common& c) {
  const auto cfg = load(path, c);
  runner::RunOptions opt;
  opt.override_admissibility = c.override_admissibility;
  const auto r = runner::execute(cfg, opt);
  const fs::path dir = c.out.empty() ? fs::path("runs") / fs::path(path).stem() : fs::path(c.out);
  runner::write_run_dir(r, dir);
  std::cout << runner::report(dir).summary;
  return r.status.status == "blown_up" ? kBlowUp : kOk;
}

int cmd_report(const std::string& dir) {
  const auto rr = runner::report(dir);
  std::cout << rr.summary;
  return rr.matches_stored ? kOk : kIo;
}

int cmd_check(const std::string& what, std::optional<double> theta, bool as_json) {
  models::ModelSpec spec = [&] {
    if (fs::is_regular_file(what)) {
      std::ifstream in(what);
      try {
        return models::model_from_json(json::parse(in));
      } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed model file: ") + e.what());
      }
    }
    return models::make_model(what);
  }();
  if (theta) spec = spec.with_theta(Rational::approximate(*theta));
  const auto adm = models::check_admissibility(spec);
  const auto ex = models::admissible_exponents(spec);
  const json j{{"model", spec.name},
               {"d", spec.d},
               {"beta_R", spec.beta_R().str()},
               {"beta_S", spec.beta_S().str()},
               {"beta_T", spec.beta_T().str()},
               {"admissibility", runner::admissibility_json(adm)},
               {"exponents", runner::exponents_json(ex)}};
  if (as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "model        " << spec.name << " (d = " << spec.d << ")\n"
              << "degrees      R " << spec.beta_R().str() << ", S " << spec.beta_S().str() << ", T "
              << spec.beta_T().str() << "\n"
              << "theta        " << adm.theta.str() << "\n"
              << "beta_c       " << adm.beta_c.str() << "\n"
              << "theta range  (" << adm.lower_bound.str() << ", " << adm.upper_bound.str() << ")\n"
              << "admissible   " << (adm.functional_ok ? "yes" : "no") << "\n"
              << "mild range   (" << adm.mild_lower.str() << ", " << adm.mild_upper.str() << ") "
              << (adm.mild_ok ? "ok" : "fails") << "\n";
    if (const auto* w = std::get_if<models::ExponentWitness>(&ex))
      std::cout << "witness      delta0 = " << w->delta0.str() << ", delta0' = " << w->delta0p.str()
                << ", gamma = " << w->gamma.str() << ", zeta = " << w->zeta.str() << "\n";
    else {
      const auto& cert = std::get<models::InfeasibilityCertificate>(ex);
      std::cout << "witness      infeasible: " << cert.inequality << " (" << cert.lower.str() << " >= "
                << cert.upper.str() << ")\n";
    }
    if (!adm.note.empty()) std::cout << "note         " << adm.note << "\n";
  }
  return adm.functional_ok ? kOk : kAdmissibility;
}

int cmd_calibrate(const std::string& dir) {
  runner::report(dir);
  const auto cfg = runner::ExperimentConfig::from_json(json::parse(std::ifstream(fs::path(dir) / "config.json")));
  std::ifstream tin(fs::path(dir) / "trace.csv");
  const std::string text((std::istreambuf_iterator<char>(tin)), std::istreambuf_iterator<char>());
  const auto trace = runner::TraceTable::from_csv(text);
  energy::CalibrationOptions co;
  co.t0 = runner::choose_t0(trace, cfg);
  co.tol = 0.5 * cfg.options.monotone_tol;
  const auto w = energy::calibrate_weights(trace.energy_trace(), trace.n_max, co);
  const json j = energy::weights_to_json(w);
  std::ofstream(fs::path(dir) / "calibration.json") << j.dump(2) << "\n";
  for (int n = 0; n <= w.n_max; ++n) std::printf("alpha_%-3d %.9g\n", n, w.values[n]);
  if (w.budget_capped) std::cout << "search budget exhausted for at least one order\n";
  if (!w.violated_orders.empty()) {
    std::cout << "no feasible weight for orders";
    for (int n : w.violated_orders) std::cout << ' ' << n;
    std::cout << "\n";
  }
  return kOk;
}

int cmd_mild(const std::string& path, const Common& c) {
  const auto cfg = load(path, c);
  const auto spec = cfg.build_model();
  const auto adm = models::check_admissibility(spec);
  if (!adm.mild_ok && !c.override_admissibility) {
    std::cerr << "mild construction conditions fail for " << spec.name << "\n";
    return kAdmissibility;
  }
  const auto grid = cfg.build_grid();
  const auto u0 = runner::make_initial(cfg.initial, grid, spec);
  mild::PicardOptions po;
  po.mesh_points = cfg.options.mild_mesh;
  const auto pr = mild::picard_solve(u0, spec, std::min(cfg.options.mild_T, cfg.T), runner::default_gamma(spec, cfg), po);
  const std::string body = pr.report.to_json().dump(2) + "\n";
  if (!c.out.empty()) {
    fs::create_directories(c.out);
    std::ofstream(fs::path(c.out) / "mild.json") << body;
  }
  std::cout << body;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decaylab: energy-functional decay experiments for dissipative PDEs on the torus"};
  app.require_subcommand(1);
  Common common;
  std::string target;
  std::optional<double> theta;
  bool as_json = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out, "Output directory");
    sub->add_option("--seed", common.seed, "Override the initial-data seed");
    sub->add_option("--nmax", common.nmax, "Override the truncation order");
    sub->add_flag("--override-admissibility", common.override_admissibility, "Run even when admissibility fails");
  };
  auto* run = app.add_subcommand("run", "Integrate a configuration and write a run directory");
  run->add_option("config", target, "Configuration file")->required();
  add_common(run);
  auto* rep = app.add_subcommand("report", "Validate a run directory and recompute its verdicts");
  rep->add_option("dir", target, "Run directory")->required();
  auto* chk = app.add_subcommand("check", "Admissibility, critical index and exponent witness");
  chk->add_option("model", target, "Registered model name or model file")->required();
  chk->add_option("--theta", theta, "Dissipation order");
  chk->add_flag("--json", as_json, "Print JSON");
  auto* cal = app.add_subcommand("calibrate", "Calibrate weights on a stored trace");
  cal->add_option("dir", target, "Run directory")->required();
  auto* mil = app.add_subcommand("mild", "Picard iteration for the mild solution of a configuration");
  mil->add_option("config", target, "Configuration file")->required();
  add_common(mil);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(target, common);
    if (*rep) return cmd_report(target);
    if (*chk) return cmd_check(target, theta, as_json);
    if (*cal) return cmd_calibrate(target);
    if (*mil) return cmd_mild(target, common);
  } catch (const runner::AdmissibilityFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kAdmissibility;
  } catch (const SmallnessViolation& e) {
    std::cerr << "error: " << e.what() << " (largest admissible data norm " << e.threshold << ")\n";
    return kAdmissibility;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const BlowUp& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBlowUp;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
