#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "decaylab/errors.hpp"
#include "decaylab/runner/run.hpp"
#include "decaylab/runner/svg.hpp"
#include "plots.hpp"

namespace decaylab::runner {

using nlohmann::json;

namespace detail {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& p, const std::string& data) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + p.string());
  out << data;
  if (!out) throw IoError("short write to " + p.string());
}

void write_plots(const TraceTable& tr, const energy::WeightSequence& w, const std::vector<int>& orders,
                 const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string());

  std::vector<std::vector<double>> layers;
  std::vector<std::string> labels;
  const int shown = std::min(tr.n_max, 7);
  for (int n = 0; n <= shown; ++n) {
    layers.push_back(tr.terms[n]);
    labels.push_back("n = " + std::to_string(n));
  }
  if (tr.n_max > shown) {
    std::vector<double> rest(tr.rows(), 0.0);
    for (int n = shown + 1; n <= tr.n_max; ++n)
      for (std::size_t i = 0; i < tr.rows(); ++i) rest[i] += tr.terms[n][i];
    layers.push_back(rest);
    labels.push_back("n > " + std::to_string(shown));
  }
  svg::Series total{"E(t)", tr.t, tr.E, false};
  svg::Axes ea{"Energy functional and its terms", "t", "E", false, false};
  write_file(dir / "energy.svg", svg::stacked_plot(ea, tr.t, layers, labels, &total));

  std::vector<svg::Series> ladder;
  const double e0 = tr.rows() ? tr.ladder[0][0] * tr.ladder[0][0] : 0.0;
  for (int n : orders) {
    if (n < 0 || n > tr.n_max) continue;
    svg::Series s{"|u|^2 at n = " + std::to_string(n), tr.t, {}, false};
    for (double x : tr.ladder[n]) s.y.push_back(x * x);
    ladder.push_back(std::move(s));
    svg::Series b{"bound n = " + std::to_string(n), tr.t, {}, true};
    for (double t : tr.t) b.y.push_back(t > 0 ? e0 / (w.values[n] * std::pow(t, n)) : NAN);
    ladder.push_back(std::move(b));
  }
  svg::Axes la{"Ladder norms with t^-n bounds", "t", "squared norm", true, true};
  write_file(dir / "ladder.svg", svg::line_plot(la, ladder));
}

}  // namespace detail

ReportResult report(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir) || !fs::exists(dir / "meta.json")) throw IoError("not a run directory: " + dir.string());
  json meta;
  try {
    meta = json::parse(detail::read_file(dir / "meta.json"));
  } catch (const json::exception& e) {
    throw IoError(std::string("meta.json: ") + e.what());
  }
  if (meta.value("format", "") != "decaylab.run" || !meta.contains("checksums"))
    throw IoError("not a run directory: " + dir.string());

  std::map<std::string, std::string> bodies;
  for (const auto& [name, sum] : meta["checksums"].items()) {
    const std::string body = detail::read_file(dir / name);
    if (sha256_hex(body) != sum.get<std::string>()) throw IoError("checksum mismatch: " + name);
    bodies[name] = body;
  }
  for (const char* need : {"config.json", "trace.csv", "weights.json", "verdicts.json"})
    if (!bodies.count(need)) throw IoError(std::string("run directory lacks ") + need);

  ExperimentConfig cfg;
  energy::WeightSequence weights;
  json stored;
  try {
    cfg = ExperimentConfig::from_json(json::parse(bodies["config.json"]));
    weights = energy::weights_from_json(json::parse(bodies["weights.json"]).at("weights"));
    stored = json::parse(bodies["verdicts.json"]);
  } catch (const json::exception& e) {
    throw IoError(std::string("run files: ") + e.what());
  }
  const TraceTable trace = TraceTable::from_csv(bodies["trace.csv"]);

  RunStatus status;
  status.status = meta.value("status", "ok");
  if (meta.contains("blowup_time") && meta["blowup_time"].is_number())
    status.blowup_time = meta["blowup_time"].get<double>();

  ReportResult rr;
  rr.verdicts = compute_verdicts(cfg, trace, weights, status);
  if (bodies.count("mild.json")) rr.verdicts["mild"] = json::parse(bodies["mild.json"]);
  rr.matches_stored = json::parse(rr.verdicts.dump()) == stored;

  TraceTable weighted = trace;
  weighted.apply_weights(weights, rr.verdicts.value("t0", 0.0));
  detail::write_plots(weighted, weights, cfg.options.decay_orders, dir / "plots");

  std::ostringstream os;
  const auto& v = rr.verdicts;
  os << "run      " << dir.string() << "\n";
  os << "model    " << v["model"].get<std::string>() << "  theta = " << v["theta"].get<std::string>()
     << "  beta_c = " << v["beta_c"].get<std::string>() << "\n";
  os << "status   " << v["status"].get<std::string>();
  if (v["blowup_time"].is_number()) os << " at t = " << v["blowup_time"].get<double>();
  os << "\n";
  os << "admissible " << (v["admissibility"]["ok"].get<bool>() ? "yes" : "no (overridden)") << "\n";
  os << "weights  " << v["weights_rule"].get<std::string>() << "\n";
  if (!v["monotone"].is_null()) {
    os << "monotone " << (v["monotone"].get<bool>() ? "yes" : "no")
       << "  max relative increase = " << v["max_relative_increase"].get<double>() << "\n";
    for (const auto& [n, m] : v["bound_margins"].items())
      os << "  order " << n << "  bound margin = " << (m.is_null() ? std::string("n/a") : std::to_string(m.get<double>()))
         << "\n";
    os << "empirical D0 = " << v["empirical_D0"].dump() << "  (L2: " << v["empirical_D0_l2"].dump() << ")\n";
  }
  if (v.contains("mild")) os << "mild     " << v["mild"].dump() << "\n";
  os << "verdicts " << (rr.matches_stored ? "match verdicts.json" : "DIFFER from verdicts.json") << "\n";
  rr.summary = os.str();
  return rr;
}

}  // namespace decaylab::runner
