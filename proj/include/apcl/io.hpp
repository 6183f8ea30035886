#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "apcl/diagnostics.hpp"
#include "apcl/fejer.hpp"
#include "apcl/solver.hpp"

namespace apcl {

inline constexpr const char* kVersion = "apcl 0.1.0";

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

// %.17g: round-trips doubles, stable across reruns.
std::string fmt_g17(double x);

// "n" or "n/d".
std::string rational_str(const Rational& q);

// {"base": [decimals], "dims": n, "terms": [{"coords": [rat...], ...}]}
// where a term carries either {"re", "im"} or the {"cos": a} / {"sin": a}
// shorthand for a conjugate pair.  Rationals are ints, "n/d" strings, or
// [num, den] pairs.
TrigPoly trig_poly_from_json(const std::string& text);
std::string trig_poly_to_json(const TrigPoly& p);

// {"dims": n, "breakpoints": [rat...], "pieces": [[[c0, c1, ...]...]...]}.
// Float coefficients are admitted through rationalization (denominator bound
// 1e6); each conversion appends a warning line.
PiecewiseFlux flux_from_json(const std::string& text,
                             std::vector<std::string>* warnings = nullptr);
std::string flux_to_json(const PiecewiseFlux& phi);

// {"base": [decimals], "dims": n, "generators": [[rat...]...]}.
FreqGroup freq_group_from_json(const std::string& text);
std::string freq_group_to_json(const FreqGroup& g);
std::string nd_report_to_json(const NDReport& rep);
std::string decay_verdict_to_json(const DecayVerdict& v);
// Per spectral line of p: coordinates, summation index, weight (exact and
// decimal), representability flags.
std::string fejer_table_to_json(const TrigPoly& p, const FejerPlan& plan);

std::string decay_trace_csv(const DecayTrace& tr);
std::string contraction_csv(const ContractionSeries& s);
std::string snapshot_csv(const CellField& f);

// gnuplot script plotting D(t) and mass from the trace CSV.
std::string decay_plot_script(const std::string& csv_name);

std::uint64_t fnv1a(std::string_view bytes);

// {"version", "config": <parsed echo>, "outputs": {name: "fnv1a:<hex>"}};
// timestamp-free, so identical runs produce identical manifests.
std::string manifest_json(
    const std::string& config_text,
    const std::vector<std::pair<std::string, std::uint64_t>>& outputs);

}  // namespace apcl
