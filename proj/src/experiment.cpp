#include "apcl/experiment.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "apcl/diagnostics.hpp"
#include "apcl/errors.hpp"
#include "apcl/fejer.hpp"
#include "apcl/io.hpp"
#include "apcl/parallel.hpp"
#include "json.hpp"

namespace apcl {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Loaded {
  json j;
  std::string text;
  fs::path dir;
};

Loaded load_config(const CmdOptions& opts) {
  if (opts.config_path.empty()) throw ConfigError("missing --config");
  Loaded l;
  l.text = read_text_file(opts.config_path);
  try {
    l.j = json::parse(l.text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  l.dir = fs::path(opts.config_path).parent_path();
  return l;
}

std::string inline_or_file(const Loaded& l, const char* key,
                           const char* file_key) {
  if (l.j.contains(key)) return l.j.at(key).dump();
  if (l.j.contains(file_key)) {
    fs::path p = l.j.at(file_key).get<std::string>();
    if (p.is_relative()) p = l.dir / p;
    return read_text_file(p);
  }
  throw ConfigError(std::string("config: missing '") + key + "' or '" +
                    file_key + "'");
}

bool has_data(const Loaded& l) {
  return l.j.contains("data") || l.j.contains("data_file");
}

TrigPoly load_data(const Loaded& l) {
  return trig_poly_from_json(inline_or_file(l, "data", "data_file"));
}

PiecewiseFlux load_flux(const Loaded& l) {
  std::vector<std::string> warnings;
  PiecewiseFlux phi =
      flux_from_json(inline_or_file(l, "flux", "flux_file"), &warnings);
  for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
  return phi;
}

// Explicit "group" wins; otherwise the data's spectrum group.
FreqGroup load_group(const Loaded& l, const TrigPoly* data) {
  if (l.j.contains("group")) return freq_group_from_json(l.j.at("group").dump());
  if (data) return spectrum_group(*data);
  throw ConfigError("config: needs 'group' or data to derive it from");
}

bool pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::vector<int> parse_grid(const json& j, const char* where) {
  std::vector<int> g;
  if (j.is_number_integer())
    g.push_back(j.get<int>());
  else if (j.is_array())
    for (const auto& e : j) g.push_back(e.get<int>());
  else
    throw ConfigError(std::string(where) + ": integer or integer array");
  for (int n : g)
    if (!pow2(n) || n < 16 || n > 8192)
      throw ConfigError(std::string(where) +
                        ": sizes must be powers of two in [16, 8192]");
  return g;
}

RunConfig run_config_from(const Loaded& l) {
  RunConfig rc;
  rc.grid = parse_grid(l.j.contains("grid") ? l.j.at("grid") : json(1024),
                       "grid");
  rc.cfl = l.j.value("cfl", 0.45);
  if (!(rc.cfl > 0.0 && rc.cfl <= 0.5))
    throw ConfigError("cfl must be in (0, 1/2]");
  rc.T = l.j.value("T", 10.0);
  if (rc.T < 0.0) throw ConfigError("T must be >= 0");
  rc.snapshot_times = l.j.value("snapshots", std::vector<double>{});
  rc.entropy_check = l.j.value("entropy_check", false);
  rc.entropy_levels = l.j.value("entropy_levels", 32);
  return rc;
}

// Collects outputs and their hashes so the manifest can pin the whole run.
struct OutDir {
  fs::path dir;
  std::vector<std::pair<std::string, std::uint64_t>> outputs;

  explicit OutDir(const std::string& d) : dir(d) {
    fs::create_directories(dir);
  }
  void write(const std::string& name, std::string_view text) {
    write_text_file(dir / name, text);
    outputs.emplace_back(name, fnv1a(text));
  }
  void manifest(const std::string& config_text) {
    write_text_file(dir / "manifest.json", manifest_json(config_text, outputs));
  }
};

std::string freq_text(const Frequency& f) {
  std::string s = "[";
  const auto& cs = f.coords();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) s += ", ";
    s += rational_str(cs[i]);
  }
  s += "]";
  return s;
}

json freq_list_json(const std::vector<Frequency>& fs_) {
  json a = json::array();
  for (const Frequency& f : fs_) {
    json c = json::array();
    for (const Rational& q : f.coords()) c.push_back(rational_str(q));
    a.push_back(c);
  }
  return a;
}

}  // namespace

int cmd_spectrum(const CmdOptions& opts) {
  Loaded l = load_config(opts);
  TrigPoly p = load_data(l);
  std::vector<Frequency> spec = p.spectrum();
  FreqGroup g = spectrum_group(p);
  QBasis qb(p.base(), p.dims());
  for (const Frequency& f : spec) qb.extend(f);

  std::cout << "spectrum: " << spec.size() << " lines\n";
  for (const Frequency& f : spec) std::cout << "  " << freq_text(f) << '\n';
  std::cout << "group: rank " << g.rank() << ", denom " << g.denom.get_str()
            << '\n';
  for (const Frequency& f : g.generators())
    std::cout << "  " << freq_text(f) << '\n';
  std::cout << "qbasis: " << qb.size() << " vectors\n";
  for (const Frequency& f : qb.vectors())
    std::cout << "  " << freq_text(f) << '\n';

  OutDir out(opts.out_dir);
  json doc;
  doc["spectrum"] = freq_list_json(spec);
  doc["group"] = json::parse(freq_group_to_json(g));
  doc["qbasis"] = freq_list_json(qb.vectors());
  out.write("spectrum.json", doc.dump(2) + "\n");
  out.manifest(l.text);
  return 0;
}

int cmd_ndcheck(const CmdOptions& opts) {
  Loaded l = load_config(opts);
  PiecewiseFlux phi = load_flux(l);
  TrigPoly data;
  if (has_data(l)) data = load_data(l);
  FreqGroup g = load_group(l, has_data(l) ? &data : nullptr);

  NDReport rep = nd_check(phi, g, phi.lo(), phi.hi());
  if (rep.holds) {
    std::cout << "ND holds\n";
  } else {
    const AffineWitness& w = *rep.witness;
    std::cout << "ND fails: xi = " << freq_text(w.xi) << ", piece " << w.piece
              << ", interval [" << rational_str(w.piece_lo) << ", "
              << rational_str(w.piece_hi) << "], slope " << fmt_g17(w.slope())
              << ", intercept " << fmt_g17(w.intercept()) << '\n';
  }
  OutDir out(opts.out_dir);
  out.write("nd_report.json", nd_report_to_json(rep));
  out.manifest(l.text);
  return rep.holds ? 0 : 2;
}

int cmd_solve(const CmdOptions& opts) {
  Loaded l = load_config(opts);
  TrigPoly p = load_data(l);
  PiecewiseFlux phi = load_flux(l);
  LiftSpec lift = LiftSpec::from_poly(p);
  RunConfig rc = run_config_from(l);

  RunRecord rec = solve(p, lift, phi, rc);
  DecayTrace tr = decay_trace(rec);

  OutDir out(opts.out_dir);
  out.write("decay.csv", decay_trace_csv(tr));
  json runj;
  runj["mean0"] = rec.mean0;
  runj["steps"] = rec.steps;
  runj["D0"] = tr.rows.front().descriptor;
  runj["D_final"] = tr.rows.back().descriptor;
  json snaps = json::array();
  for (std::size_t i = 0; i < rec.snapshots.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "snapshot_%03zu.csv", i);
    out.write(name, snapshot_csv(rec.snapshots[i]));
    snaps.push_back({{"t", rec.snapshots[i].t}, {"file", name}});
  }
  runj["snapshots"] = snaps;
  out.write("run.json", runj.dump(2) + "\n");
  out.write("plot.gp", decay_plot_script("decay.csv"));
  out.manifest(l.text);

  std::cout << "steps=" << rec.steps
            << " D(0)=" << fmt_g17(tr.rows.front().descriptor)
            << " D(T)=" << fmt_g17(tr.rows.back().descriptor) << '\n';
  return 0;
}

int cmd_decay(const CmdOptions& opts) {
  Loaded l = load_config(opts);
  TrigPoly p = load_data(l);
  PiecewiseFlux phi = load_flux(l);
  FreqGroup g = load_group(l, &p);

  DecayOpts dopts;
  dopts.run = run_config_from(l);
  dopts.threshold = l.j.value("threshold", 0.1);
  if (!(dopts.threshold > 0.0))
    throw ConfigError("threshold must be positive");
  dopts.exact_times =
      l.j.value("exact_times", std::vector<double>{0.0, 1.0, 5.0, 10.0});
  dopts.refine_grids =
      parse_grid(l.j.contains("refine_grids") ? l.j.at("refine_grids")
                                              : json::array({256, 512, 1024}),
                 "refine_grids");

  DecayVerdict v = decay_experiment(phi, g, p, dopts);

  OutDir out(opts.out_dir);
  out.write("verdict.json", decay_verdict_to_json(v));
  if (!v.trace.rows.empty()) {
    out.write("decay.csv", decay_trace_csv(v.trace));
    out.write("plot.gp", decay_plot_script("decay.csv"));
  }
  if (!v.refinement.empty()) {
    std::string csv = "n,d_final,ratio\n";
    for (const RefinementRow& r : v.refinement) {
      csv += std::to_string(r.n);
      csv += ',';
      csv += fmt_g17(r.d_final);
      csv += ',';
      csv += fmt_g17(r.ratio);
      csv += '\n';
    }
    out.write("refinement.csv", csv);
  }
  out.manifest(l.text);

  std::cout << "verdict: " << v.verdict;
  if (v.nd.holds && v.d0 > 0.0)
    std::cout << " (D(T)/D(0) = " << fmt_g17(v.d_final / v.d0) << ")";
  else if (!v.nd.holds)
    std::cout << " (exact descriptor max dev = " << fmt_g17(v.exact_max_dev)
              << ")";
  std::cout << '\n';
  return v.nd.holds ? 0 : 2;
}

int cmd_fejer(const CmdOptions& opts) {
  Loaded l = load_config(opts);
  TrigPoly p = load_data(l);
  const int r = l.j.value("order", 2);
  FejerPlan plan = FejerPlan::for_poly(p, r);
  std::string table = fejer_table_to_json(p, plan);
  std::cout << table;
  OutDir out(opts.out_dir);
  out.write("fejer.json", table);
  out.manifest(l.text);
  return 0;
}

int cmd_counterexample(const CmdOptions& opts) {
  Loaded l = load_config(opts);
  PiecewiseFlux phi = load_flux(l);
  TrigPoly data;
  bool with_data = has_data(l);
  if (with_data) data = load_data(l);
  FreqGroup g = load_group(l, with_data ? &data : nullptr);
  if (!with_data) data = TrigPoly(g.base, g.dims);

  DecayOpts dopts;
  dopts.run = run_config_from(l);
  dopts.threshold = l.j.value("threshold", 0.1);
  dopts.exact_times =
      l.j.value("exact_times", std::vector<double>{0.0, 1.0, 5.0, 10.0});
  dopts.refine_grids =
      parse_grid(l.j.contains("refine_grids") ? l.j.at("refine_grids")
                                              : json::array({256, 512, 1024}),
                 "refine_grids");

  DecayVerdict v = decay_experiment(phi, g, data, dopts);
  OutDir out(opts.out_dir);
  if (v.nd.holds) {
    out.write("nd_report.json", nd_report_to_json(v.nd));
    out.manifest(l.text);
    std::cout << "ND holds: no traveling-wave counterexample exists\n";
    return 2;
  }

  out.write("verdict.json", decay_verdict_to_json(v));
  out.write("profile.json", trig_poly_to_json(v.wave->profile));
  out.write("initial.json", trig_poly_to_json(v.wave->initial));
  std::string csv = "n,d_final,ratio\n";
  for (const RefinementRow& r : v.refinement) {
    csv += std::to_string(r.n);
    csv += ',';
    csv += fmt_g17(r.d_final);
    csv += ',';
    csv += fmt_g17(r.ratio);
    csv += '\n';
  }
  out.write("refinement.csv", csv);
  out.manifest(l.text);

  std::cout << "counterexample: xi = " << freq_text(v.nd.witness->xi)
            << ", speed " << fmt_g17(v.wave->speed) << ", D(0) "
            << fmt_g17(v.d0) << ", exact max dev " << fmt_g17(v.exact_max_dev)
            << '\n';
  return 0;
}

}  // namespace apcl
