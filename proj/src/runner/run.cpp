#include "decaylab/runner/run.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "decaylab/energy/calibrate.hpp"
#include "decaylab/errors.hpp"
#include "decaylab/mild/picard.hpp"
#include "decaylab/runner/initial_data.hpp"
#include "decaylab/simd/kernels.hpp"
#include "decaylab/spectral/ops.hpp"
#include "decaylab/stepper/integrate.hpp"
#include "plots.hpp"

namespace decaylab::runner {

using nlohmann::json;

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw IoError("trace.csv: malformed number '" + s + "'");
  return v;
}

std::vector<double> constants_for(const WeightConfig& wc, int N) {
  if (wc.C.empty()) return energy::kato_ponce_constants(N, wc.K, wc.p);
  if (static_cast<int>(wc.C.size()) < N) throw ConfigError("weights.C must list C_1..C_N");
  std::vector<double> C(N + 1, 0.0);
  for (int n = 1; n <= N; ++n) C[n] = wc.C[n - 1];
  return C;
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json json_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

energy::EnergyTrace TraceTable::energy_trace() const {
  energy::EnergyTrace tr;
  for (std::size_t i = 0; i < rows(); ++i) {
    energy::EnergyValue v;
    v.ladder.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) v.ladder[n] = ladder[n][i];
    if (!terms.empty() && terms[0].size() == rows()) {
      v.terms.resize(n_max + 1);
      for (int n = 0; n <= n_max; ++n) v.terms[n] = terms[n][i];
      v.total = E[i];
      v.tail = v.total > 0.0 ? v.terms[n_max] / v.total : 0.0;
    }
    tr.push(t[i], std::move(v));
  }
  return tr;
}

void TraceTable::apply_weights(const energy::WeightSequence& w, double t0) {
  if (w.n_max != n_max) throw DimensionError("weights and trace disagree on N_max");
  const energy::EnergyTrace r = energy::reweight(energy_trace(), w, t0);
  terms.assign(n_max + 1, std::vector<double>(rows(), 0.0));
  E.assign(rows(), 0.0);
  for (std::size_t i = 0; i < rows(); ++i) {
    for (int n = 0; n <= n_max; ++n) terms[n][i] = r.values[i].terms[n];
    E[i] = r.values[i].total;
  }
}

std::string TraceTable::to_csv() const {
  std::string s = "t,l2,hbc,hgamma";
  for (int n = 0; n <= n_max; ++n) s += ",ladder_" + std::to_string(n);
  for (int n = 0; n <= n_max; ++n) s += ",term_" + std::to_string(n);
  s += ",E\n";
  const bool weighted = !terms.empty() && E.size() == rows();
  for (std::size_t i = 0; i < rows(); ++i) {
    s += fmt17(t[i]) + ',' + fmt17(l2[i]) + ',' + fmt17(hbc[i]) + ',' + fmt17(hgamma[i]);
    for (int n = 0; n <= n_max; ++n) s += ',' + fmt17(ladder[n][i]);
    for (int n = 0; n <= n_max; ++n) s += ',' + fmt17(weighted ? terms[n][i] : 0.0);
    s += ',' + fmt17(weighted ? E[i] : 0.0) + '\n';
  }
  return s;
}

TraceTable TraceTable::from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw IoError("trace.csv: empty");
  const auto head = split(line, ',');
  if (head.size() < 7 || head[0] != "t" || head[1] != "l2" || head[2] != "hbc" || head[3] != "hgamma" ||
      head.back() != "E" || (head.size() - 5) % 2 != 0)
    throw IoError("trace.csv: unexpected header");
  TraceTable tt;
  tt.n_max = static_cast<int>((head.size() - 5) / 2) - 1;
  for (int n = 0; n <= tt.n_max; ++n)
    if (head[4 + n] != "ladder_" + std::to_string(n) || head[5 + tt.n_max + n] != "term_" + std::to_string(n))
      throw IoError("trace.csv: unexpected header");
  tt.ladder.assign(tt.n_max + 1, {});
  tt.terms.assign(tt.n_max + 1, {});
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != head.size()) throw IoError("trace.csv: ragged row");
    tt.t.push_back(parse_double(f[0]));
    tt.l2.push_back(parse_double(f[1]));
    tt.hbc.push_back(parse_double(f[2]));
    tt.hgamma.push_back(parse_double(f[3]));
    for (int n = 0; n <= tt.n_max; ++n) {
      tt.ladder[n].push_back(parse_double(f[4 + n]));
      tt.terms[n].push_back(parse_double(f[5 + tt.n_max + n]));
    }
    tt.E.push_back(parse_double(f.back()));
  }
  return tt;
}

double functional_level(const models::ModelSpec& spec, energy::WeightRule rule) {
  if (rule == energy::WeightRule::burgers_l2 || rule == energy::WeightRule::general_l2) return 0.0;
  return spec.beta_c().to_double();
}

double default_gamma(const models::ModelSpec& spec, const ExperimentConfig& cfg) {
  if (cfg.options.gamma) return *cfg.options.gamma;
  const auto ex = models::admissible_exponents(spec);
  if (const auto* w = std::get_if<models::ExponentWitness>(&ex)) return w->gamma.to_double();
  return spec.beta_c().to_double() + spec.theta_d() / 2.0;
}

double choose_t0(const TraceTable& trace, const ExperimentConfig& cfg) {
  if (!cfg.options.t0_threshold) return 0.0;
  for (std::size_t i = 0; i < trace.rows(); ++i)
    if (trace.hbc[i] < *cfg.options.t0_threshold) return trace.t[i];
  return trace.rows() ? trace.t.back() : 0.0;
}

json admissibility_json(const models::AdmissibilityReport& r) {
  json lo = json::array(), up = json::array();
  for (const auto& x : r.lower_terms) lo.push_back(x.str());
  for (const auto& x : r.upper_terms) up.push_back(x.str());
  return {{"theta", r.theta.str()},
          {"beta_c", r.beta_c.str()},
          {"lower_terms", lo},
          {"upper_terms", up},
          {"theta_range", {r.lower_bound.str(), r.upper_bound.str()}},
          {"ok", r.functional_ok},
          {"mild_range", {r.mild_lower.str(), r.mild_upper.str()}},
          {"mild_ok", r.mild_ok},
          {"note", r.note}};
}

json exponents_json(const models::ExponentResult& r) {
  if (const auto* w = std::get_if<models::ExponentWitness>(&r))
    return {{"feasible", true},      {"delta0", w->delta0.str()},   {"zeta0", w->zeta0.str()},
            {"delta0p", w->delta0p.str()}, {"zeta0p", w->zeta0p.str()}, {"gamma", w->gamma.str()},
            {"zeta", w->zeta.str()}};
  const auto& c = std::get<models::InfeasibilityCertificate>(r);
  return {{"feasible", false},
          {"violated", c.inequality},
          {"lower", c.lower.str()},
          {"upper", c.upper.str()}};
}

json compute_verdicts(const ExperimentConfig& cfg, const TraceTable& stored, const energy::WeightSequence& weights,
                      const RunStatus& status) {
  const models::ModelSpec spec = cfg.build_model();
  const auto adm = models::check_admissibility(spec);
  const double theta = spec.theta_d(), bc = spec.beta_c().to_double();
  const double gamma = default_gamma(spec, cfg);
  const double t0 = choose_t0(stored, cfg);
  TraceTable tr = stored;
  tr.apply_weights(weights, t0);

  json v;
  v["status"] = status.status;
  v["blowup_time"] = status.blowup_time ? json(*status.blowup_time) : json(nullptr);
  v["model"] = spec.name;
  v["theta"] = spec.theta.str();
  v["beta_c"] = spec.beta_c().str();
  v["level"] = functional_level(spec, cfg.weights.rule);
  v["gamma"] = gamma;
  v["t0"] = t0;
  v["weights_rule"] = energy::to_string(weights.rule);
  v["admissibility"] = admissibility_json(adm);
  v["admissibility_overridden"] = !adm.functional_ok;
  v["exponents"] = exponents_json(models::admissible_exponents(spec));
  if (tr.rows() == 0) {
    v["monotone"] = nullptr;
    return v;
  }

  std::vector<double> ts, es;
  std::size_t first = 0;
  for (std::size_t i = 0; i < tr.rows(); ++i)
    if (tr.t[i] >= t0) {
      if (ts.empty()) first = i;
      ts.push_back(tr.t[i]);
      es.push_back(tr.E[i]);
    }
  const auto mono = energy::monotonicity_report(ts, es, cfg.options.monotone_tol);
  v["monotone"] = mono.monotone();
  v["max_relative_increase"] = mono.max_relative_increase;
  v["first_violation_time"] = mono.first_violation_time ? json(*mono.first_violation_time) : json(nullptr);
  v["E0"] = tr.E[first];

  double tail = 0.0;
  for (std::size_t i = 0; i < tr.rows(); ++i)
    if (tr.E[i] > 0.0) tail = std::max(tail, tr.terms[tr.n_max][i] / tr.E[i]);
  v["tail_max"] = tail;

  const energy::EnergyTrace et = tr.energy_trace();
  json margins = json::object(), fits = json::object();
  for (int n : cfg.options.decay_orders) {
    if (n < 1 || n > tr.n_max) continue;
    double m = 0.0;
    for (std::size_t i = first; i < tr.rows(); ++i)
      if (tr.E[first] > 0.0) m = std::max(m, tr.terms[n][i] / tr.E[first]);
    margins[std::to_string(n)] = json_or_null(m);
    try {
      const auto fit = energy::decay_fit(et, weights, n);
      fits[std::to_string(n)] = json_or_null(fit.fitted_exponent);
    } catch (const DomainError&) {
      fits[std::to_string(n)] = nullptr;
    }
  }
  v["bound_margins"] = margins;
  v["fitted_exponents"] = fits;

  double d0 = 0.0, d0l2 = 0.0;
  const double eg = (gamma - bc) / (2.0 * theta), el = -bc / (2.0 * theta);
  for (std::size_t i = 0; i < tr.rows(); ++i) {
    if (tr.t[i] <= 0.0) continue;
    d0 = std::max(d0, std::pow(tr.t[i], eg) * tr.hgamma[i]);
    d0l2 = std::max(d0l2, std::pow(tr.t[i], el) * tr.l2[i]);
  }
  v["empirical_D0"] = json_or_null(d0);
  v["empirical_D0_l2"] = json_or_null(d0l2);

  if (cfg.options.calibrate) {
    energy::CalibrationOptions co;
    co.t0 = t0;
    co.tol = 0.5 * cfg.options.monotone_tol;
    const auto cal = energy::calibrate_weights(et, tr.n_max, co);
    json ratio = json::array();
    for (int n = 0; n <= tr.n_max; ++n)
      ratio.push_back(json_or_null(weights.values[n] > 0.0 ? cal.values[n] / weights.values[n] : INFINITY));
    v["calibrated"] = {{"values", cal.values},
                       {"budget_capped", cal.budget_capped},
                       {"violated_orders", cal.violated_orders},
                       {"ratio_to_rule", ratio}};
  }
  return v;
}

RunResult execute(const ExperimentConfig& cfg, const RunOptions& opt) {
  RunResult r;
  r.config = cfg;
  const auto spec = std::make_shared<const models::ModelSpec>(cfg.build_model());
  const auto adm = models::check_admissibility(*spec);
  if (!adm.functional_ok) {
    if (!opt.override_admissibility)
      throw AdmissibilityFailure("admissibility fails for " + spec->name + ": theta = " + adm.theta.str() +
                                     " outside (" + adm.lower_bound.str() + ", " + adm.upper_bound.str() + ")",
                                 adm);
    r.admissibility_overridden = true;
  }
  const spectral::Grid grid = cfg.build_grid();
  const int N = cfg.n_max;
  const double theta = spec->theta_d(), bc = spec->beta_c().to_double();
  const double gamma = default_gamma(*spec, cfg);
  const double level = functional_level(*spec, cfg.weights.rule);

  const spectral::SpectralField u0 = make_initial(cfg.initial, grid, *spec);
  const stepper::Etdrk4 scheme(*spec, grid);

  energy::WeightSequence unit;
  unit.n_max = N;
  unit.values.assign(N + 1, 1.0);

  const bool want_mild = cfg.options.mild;
  const double mild_T = std::min(cfg.options.mild_T, cfg.T);
  std::optional<spectral::SpectralField> at_mild;

  TraceTable& tt = r.trace;
  tt.n_max = N;
  tt.ladder.assign(N + 1, {});
  stepper::Observers obs;
  obs.on_observation = [&](const stepper::RunState& s) {
    const spectral::SpectralField fm = spectral::remove_mean(s.field);
    tt.t.push_back(s.t);
    tt.l2.push_back(spectral::l2_norm(s.field));
    tt.hbc.push_back(spectral::sobolev_norm(fm, bc));
    tt.hgamma.push_back(spectral::sobolev_norm(fm, gamma));
    const auto ev = energy::energy_eval(fm, s.t, theta, level, unit);
    for (int n = 0; n <= N; ++n) tt.ladder[n].push_back(ev.ladder[n]);
    if (want_mild && s.t == mild_T) at_mild = s.field;
  };

  stepper::RunState st{spec, u0, 0.0, cfg.dt.dt, 0};
  try {
    stepper::integrate(scheme, st, cfg.T, cfg.dt, cfg.observation_times(), obs);
  } catch (const BlowUp& e) {
    r.status.status = "blown_up";
    r.status.blowup_time = e.t;
    r.status.blowup_norm = e.norm;
  }

  const auto C = constants_for(cfg.weights, N);
  const double t0 = choose_t0(tt, cfg);
  auto sup_weighted = [&](const std::vector<double>& col, double e) {
    double m = 0.0;
    for (std::size_t i = 0; i < tt.rows(); ++i)
      if (tt.t[i] > 0.0) m = std::max(m, std::pow(tt.t[i], e) * col[i]);
    return m;
  };
  switch (cfg.weights.rule) {
    case energy::WeightRule::linear_heat:
      r.weights = energy::weights_linear(N);
      break;
    case energy::WeightRule::burgers_sobolev:
      r.weights = energy::weights_burgers_sobolev(N, C, cfg.weights.Caux,
                                                  cfg.weights.u0_norm.value_or(tt.hbc.empty() ? 0.0 : tt.hbc[0]));
      break;
    case energy::WeightRule::burgers_l2:
      r.weights = energy::weights_burgers_l2(N, C, cfg.weights.D0.value_or(sup_weighted(tt.l2, -bc / (2 * theta))));
      break;
    case energy::WeightRule::general_l2:
      r.weights = energy::weights_general(
          N, C, cfg.weights.D0.value_or(sup_weighted(tt.hgamma, (gamma - bc) / (2 * theta))));
      break;
    case energy::WeightRule::empirical: {
      energy::CalibrationOptions co;
      co.t0 = t0;
      co.tol = 0.5 * cfg.options.monotone_tol;
      r.weights = energy::calibrate_weights(tt.energy_trace(), N, co);
      break;
    }
  }
  tt.apply_weights(r.weights, t0);

  r.verdicts = compute_verdicts(cfg, tt, r.weights, r.status);
  if (r.verdicts.contains("calibrated")) {
    energy::CalibrationOptions co;
    co.t0 = t0;
    co.tol = 0.5 * cfg.options.monotone_tol;
    r.calibrated = energy::calibrate_weights(tt.energy_trace(), N, co);
  }

  if (want_mild) {
    json m;
    if (!(gamma > bc && gamma < bc + 2 * theta)) {
      m = {{"skipped", "gamma outside (beta_c, beta_c + 2 theta)"}};
    } else {
      mild::PicardOptions po;
      po.mesh_points = cfg.options.mild_mesh;
      const auto pr = mild::picard_solve(u0, *spec, mild_T, gamma, po);
      m = pr.report.to_json();
      m["T"] = mild_T;
      if (pr.report.converged && at_mild) {
        const auto& fin = pr.trajectory.fields.back();
        const double ref = spectral::l2_norm(*at_mild);
        m["stepper_relative_error"] = json_or_null(ref > 0 ? spectral::l2_norm(fin - *at_mild) / ref : 0.0);
      } else {
        m["stepper_relative_error"] = nullptr;
      }
    }
    r.mild = m;
    r.verdicts["mild"] = m;
  }
  return r;
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) throw IoError("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (unsigned int i = 0; i < len; ++i) {
    s += hex[md[i] >> 4];
    s += hex[md[i] & 15];
  }
  return s;
}

void write_run_dir(const RunResult& r, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  const std::string started = utc_now();
  std::error_code ec;
  fs::create_directories(dir / "plots", ec);
  if (ec) throw IoError("cannot create run directory " + dir.string() + ": " + ec.message());

  std::vector<std::pair<std::string, std::string>> files{
      {"config.json", r.config.to_json().dump(2) + "\n"},
      {"trace.csv", r.trace.to_csv()},
      {"weights.json", json{{"weights", energy::weights_to_json(r.weights)},
                            {"calibrated", r.calibrated ? energy::weights_to_json(*r.calibrated) : json(nullptr)}}
                           .dump(2) +
                           "\n"},
      {"verdicts.json", r.verdicts.dump(2) + "\n"}};
  if (r.mild) files.emplace_back("mild.json", r.mild->dump(2) + "\n");

  json sums = json::object();
  for (const auto& [name, body] : files) {
    detail::write_file(dir / name, body);
    sums[name] = sha256_hex(body);
  }
  detail::write_plots(r.trace, r.weights, r.config.options.decay_orders, dir / "plots");

  json meta{{"format", "decaylab.run"},
            {"version", 1},
            {"config_sha256", sums["config.json"]},
            {"started_utc", started},
            {"finished_utc", utc_now()},
            {"status", r.status.status},
            {"blowup_time", r.status.blowup_time ? json(*r.status.blowup_time) : json(nullptr)},
            {"admissibility_overridden", r.admissibility_overridden},
            {"kernels", std::string(simd::active().name)},
            {"checksums", sums}};
  detail::write_file(dir / "meta.json", meta.dump(2) + "\n");
}

}  // namespace decaylab::runner
