#include "apcl/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "apcl/errors.hpp"
#include "json.hpp"

namespace apcl {

using nlohmann::json;

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed on " + path.string());
  return std::move(ss).str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError("write failed on " + path.string());
}

std::string fmt_g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string rational_str(const Rational& q) {
  return q.get_num().get_str() +
         (q.get_den() == 1 ? std::string() : "/" + q.get_den().get_str());
}

namespace {

std::string rat_str(const Rational& q) { return rational_str(q); }

json rat_json(const Rational& q) {
  return json::array({q.get_num().get_str(), q.get_den().get_str()});
}

Rational parse_rational(const json& j, const char* where, bool allow_float,
                        std::vector<std::string>* warnings) {
  if (j.is_number_integer())
    return Rational(BigInt(static_cast<long>(j.get<std::int64_t>())));
  if (j.is_string()) {
    try {
      Rational q(j.get<std::string>());
      q.canonicalize();
      return q;
    } catch (const std::invalid_argument&) {
      throw ConfigError(std::string(where) + ": cannot parse rational '" +
                        j.get<std::string>() + "'");
    }
  }
  if (j.is_array() && j.size() == 2) {
    Rational n = parse_rational(j[0], where, false, nullptr);
    Rational d = parse_rational(j[1], where, false, nullptr);
    if (n.get_den() != 1 || d.get_den() != 1)
      throw ConfigError(std::string(where) +
                        ": [num, den] entries must be integers");
    if (d == 0) throw ConfigError(std::string(where) + ": zero denominator");
    return rat(n.get_num(), d.get_num());
  }
  if (j.is_number_float()) {
    if (!allow_float)
      throw ConfigError(std::string(where) +
                        ": expected an exact rational, got a float");
    double x = j.get<double>();
    Rational q = rationalize(x, 1000000);
    if (warnings)
      warnings->push_back(std::string(where) + ": float " + fmt_g17(x) +
                          " rationalized to " + rat_str(q) +
                          " (denominator bound 1e6)");
    return q;
  }
  throw ConfigError(std::string(where) + ": expected a rational value");
}

RealBase::Ptr base_from_json(const json& j) {
  if (!j.contains("base")) return RealBase::unit();
  std::vector<std::string> labels;
  for (const auto& e : j.at("base")) {
    if (e.is_string())
      labels.push_back(e.get<std::string>());
    else
      throw ConfigError("base: entries must be decimal strings");
  }
  return RealBase::create(std::move(labels));
}

Frequency freq_from_json(const json& coords, const RealBase::Ptr& base,
                         int dims, const char* where) {
  const std::size_t need =
      static_cast<std::size_t>(dims) * base->dim();
  if (!coords.is_array() || coords.size() != need)
    throw ConfigError(std::string(where) + ": coords needs " +
                      std::to_string(need) + " entries");
  std::vector<Rational> cs;
  cs.reserve(need);
  for (const auto& e : coords)
    cs.push_back(parse_rational(e, where, false, nullptr));
  return Frequency(base, dims, std::move(cs));
}

json freq_coords_json(const Frequency& f) {
  json a = json::array();
  for (const Rational& q : f.coords()) a.push_back(rat_json(q));
  return a;
}

json nd_report_json_obj(const NDReport& rep) {
  json j;
  j["holds"] = rep.holds;
  if (!rep.witness) {
    j["witness"] = nullptr;
    return j;
  }
  const AffineWitness& w = *rep.witness;
  json wj;
  wj["xi"] = {{"dims", w.xi.dims()},
              {"base", w.xi.base()->labels()},
              {"coords", freq_coords_json(w.xi)}};
  json gc = json::array();
  for (const BigInt& c : w.gen_coeffs) gc.push_back(c.get_str());
  wj["gen_coeffs"] = gc;
  wj["piece"] = w.piece;
  wj["interval"] = json::array({rat_str(w.piece_lo), rat_str(w.piece_hi)});
  json sc = json::array(), ic = json::array();
  for (const Rational& q : w.slope_coords) sc.push_back(rat_str(q));
  for (const Rational& q : w.intercept_coords) ic.push_back(rat_str(q));
  wj["slope_coords"] = sc;
  wj["intercept_coords"] = ic;
  wj["slope"] = w.slope();
  wj["intercept"] = w.intercept();
  j["witness"] = wj;
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

TrigPoly trig_poly_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("trig poly: ") + e.what());
  }
  RealBase::Ptr base = base_from_json(j);
  const int dims = j.value("dims", 1);
  if (dims < 1 || dims > 8)
    throw ConfigError("trig poly: dims must be in [1, 8]");
  TrigPoly p(base, dims);
  for (const auto& term : j.value("terms", json::array())) {
    Frequency lam =
        freq_from_json(term.at("coords"), base, dims, "trig poly term");
    if (term.contains("cos"))
      p.add_cos(lam, term.at("cos").get<double>());
    else if (term.contains("sin"))
      p.add_sin(lam, term.at("sin").get<double>());
    else
      p.add_term(lam, {term.value("re", 0.0), term.value("im", 0.0)});
  }
  p.prune();
  return p;
}

std::string trig_poly_to_json(const TrigPoly& p) {
  json j;
  j["base"] = p.base()->labels();
  j["dims"] = p.dims();
  json terms = json::array();
  for (const auto& [lam, amp] : p.terms()) {
    json t;
    t["coords"] = freq_coords_json(lam);
    t["re"] = amp.real();
    t["im"] = amp.imag();
    terms.push_back(t);
  }
  j["terms"] = terms;
  return dump(j);
}

PiecewiseFlux flux_from_json(const std::string& text,
                             std::vector<std::string>* warnings) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("flux: ") + e.what());
  }
  const int dims = j.value("dims", 1);
  std::vector<Rational> bps;
  for (const auto& e : j.at("breakpoints"))
    bps.push_back(parse_rational(e, "flux breakpoint", true, warnings));
  std::vector<std::vector<PolyQ>> pieces;
  for (const auto& pj : j.at("pieces")) {
    std::vector<PolyQ> comps;
    for (const auto& cj : pj) {
      std::vector<Rational> cs;
      for (const auto& e : cj)
        cs.push_back(parse_rational(e, "flux coefficient", true, warnings));
      comps.push_back(PolyQ{std::move(cs)});
    }
    pieces.push_back(std::move(comps));
  }
  return PiecewiseFlux::make(dims, std::move(bps), std::move(pieces));
}

std::string flux_to_json(const PiecewiseFlux& phi) {
  json j;
  j["dims"] = phi.dims();
  json bps = json::array();
  for (const Rational& b : phi.breakpoints()) bps.push_back(rat_json(b));
  j["breakpoints"] = bps;
  json pieces = json::array();
  for (int k = 0; k < phi.piece_count(); ++k) {
    json comps = json::array();
    for (int c = 0; c < phi.dims(); ++c) {
      json cs = json::array();
      for (const Rational& q : phi.piece(k, c).c) cs.push_back(rat_json(q));
      comps.push_back(cs);
    }
    pieces.push_back(comps);
  }
  j["pieces"] = pieces;
  return dump(j);
}

FreqGroup freq_group_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("group: ") + e.what());
  }
  RealBase::Ptr base = base_from_json(j);
  const int dims = j.value("dims", 1);
  if (dims < 1 || dims > 8) throw ConfigError("group: dims must be in [1, 8]");
  std::vector<Frequency> gens;
  for (const auto& gj : j.value("generators", json::array()))
    gens.push_back(freq_from_json(gj, base, dims, "group generator"));
  if (gens.empty()) gens.push_back(Frequency::zero(base, dims));
  return group_generated(gens);
}

std::string freq_group_to_json(const FreqGroup& g) {
  json j;
  j["base"] = g.base->labels();
  j["dims"] = g.dims;
  j["denom"] = g.denom.get_str();
  j["rank"] = g.rank();
  json rows = json::array();
  for (const auto& row : g.rows) {
    json r = json::array();
    for (const BigInt& e : row) r.push_back(e.get_str());
    rows.push_back(r);
  }
  j["rows"] = rows;
  json gens = json::array();
  for (const Frequency& f : g.generators())
    gens.push_back(freq_coords_json(f));
  j["generators"] = gens;
  return dump(j);
}

std::string nd_report_to_json(const NDReport& rep) {
  return dump(nd_report_json_obj(rep));
}

std::string decay_verdict_to_json(const DecayVerdict& v) {
  json j;
  j["verdict"] = v.verdict;
  j["nd"] = nd_report_json_obj(v.nd);
  j["d0"] = v.d0;
  j["d_final"] = v.d_final;
  j["ratios"] = v.ratios;
  json refine = json::array();
  for (const RefinementRow& r : v.refinement)
    refine.push_back(
        {{"n", r.n}, {"d_final", r.d_final}, {"ratio", r.ratio}});
  j["refinement"] = refine;
  if (!v.exact_times.empty()) {
    j["exact_times"] = v.exact_times;
    j["exact_descriptor"] = v.exact_descriptor;
    j["exact_max_dev"] = v.exact_max_dev;
  }
  if (v.wave) {
    j["wave"] = {{"speed", v.wave->speed},
                 {"mean", v.wave->mean},
                 {"synthesized_profile", v.wave->synthesized_profile}};
  }
  return dump(j);
}

std::string fejer_table_to_json(const TrigPoly& p, const FejerPlan& plan) {
  json j;
  j["order"] = plan.order;
  j["active_basis"] = plan.active();
  json rows = json::array();
  for (const auto& [lam, amp] : p.terms()) {
    FejerWeight w = fejer_weight(plan, lam);
    json r;
    r["coords"] = freq_coords_json(lam);
    r["re"] = amp.real();
    r["im"] = amp.imag();
    r["in_span"] = w.in_span;
    r["representable"] = w.representable;
    if (w.representable) {
      json idx = json::array();
      for (const BigInt& k : w.index) idx.push_back(k.get_str());
      r["index"] = idx;
    } else {
      r["note"] = "outside index range";
    }
    r["weight"] = rat_str(w.weight);
    r["weight_decimal"] = to_double(w.weight);
    rows.push_back(r);
  }
  j["lines"] = rows;
  return dump(j);
}

std::string decay_trace_csv(const DecayTrace& tr) {
  std::string out = "t,D,mass,entropy_residual_max\n";
  for (const StepStats& s : tr.rows) {
    out += fmt_g17(s.t_after);
    out += ',';
    out += fmt_g17(s.descriptor);
    out += ',';
    out += fmt_g17(s.mass);
    out += ',';
    out += fmt_g17(s.entropy_max);
    out += '\n';
  }
  return out;
}

std::string contraction_csv(const ContractionSeries& s) {
  std::string out = "t,dist\n";
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    out += fmt_g17(s.t[i]);
    out += ',';
    out += fmt_g17(s.dist[i]);
    out += '\n';
  }
  return out;
}

std::string snapshot_csv(const CellField& f) {
  const int m = f.m();
  std::string out;
  for (int i = 0; i < m; ++i) {
    out += 'i';
    out += std::to_string(i);
    out += ',';
  }
  out += "v\n";
  std::vector<std::size_t> digits(static_cast<std::size_t>(m), 0);
  for (std::size_t idx = 0; idx < f.v.size(); ++idx) {
    std::size_t rest = idx;
    for (int i = m - 1; i >= 0; --i) {
      std::size_t n = static_cast<std::size_t>(f.shape[static_cast<std::size_t>(i)]);
      digits[static_cast<std::size_t>(i)] = rest % n;
      rest /= n;
    }
    for (int i = 0; i < m; ++i) {
      out += std::to_string(digits[static_cast<std::size_t>(i)]);
      out += ',';
    }
    out += fmt_g17(f.v[idx]);
    out += '\n';
  }
  return out;
}

std::string decay_plot_script(const std::string& csv_name) {
  std::string s;
  s += "set datafile separator ','\n";
  s += "set key autotitle columnhead\n";
  s += "set xlabel 't'\n";
  s += "set ylabel 'D(t)'\n";
  s += "set grid\n";
  s += "plot '" + csv_name + "' using 1:2 with lines title 'D(t)', \\\n";
  s += "     '" + csv_name + "' using 1:3 with lines title 'mass'\n";
  s += "pause -1 'press enter'\n";
  return s;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string manifest_json(
    const std::string& config_text,
    const std::vector<std::pair<std::string, std::uint64_t>>& outputs) {
  json j;
  j["version"] = kVersion;
  try {
    j["config"] = json::parse(config_text);
  } catch (const json::exception&) {
    j["config"] = config_text;
  }
  json outs;
  for (const auto& [name, hash] : outputs) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a:%016llx",
                  static_cast<unsigned long long>(hash));
    outs[name] = buf;
  }
  j["outputs"] = outs;
  return dump(j);
}

}  // namespace apcl
