#pragma once

#include <optional>
#include <string>
#include <vector>

#include "apcl/flux.hpp"
#include "apcl/lattice.hpp"
#include "apcl/solver.hpp"

namespace apcl {

// Decay history of a run: C is the conserved mean, rows carry
// (t, D(t) = cell mean of |v - C|, mass, max entropy residual).
struct DecayTrace {
  double mean = 0.0;
  std::vector<StepStats> rows;
};

DecayTrace decay_trace(const RunRecord& run);

// L1 distance between two solutions advanced in lockstep with a shared dt.
struct ContractionSeries {
  std::vector<double> t;
  std::vector<double> dist;
  // max over steps of dist[k+1] - dist[k]; <= 0 means strictly contracting.
  double max_step_increase = 0.0;
};

ContractionSeries contraction_check(const TrigPoly& pa, const TrigPoly& pb,
                                    const LiftSpec& lift,
                                    const PiecewiseFlux& phi,
                                    const RunConfig& cfg, int steps);

struct RefinementRow {
  int n = 0;
  double d_final = 0.0;
  double ratio = 0.0;  // d_final relative to the exact D(0)
};

struct DecayOpts {
  RunConfig run;
  double threshold = 0.1;  // decay verdict requires D(T) <= threshold * D(0)
  std::vector<double> exact_times{0.0, 1.0, 5.0, 10.0};
  std::vector<int> refine_grids{256, 512, 1024};
};

struct DecayVerdict {
  std::string verdict;  // decay-confirmed | decay-unconfirmed |
                        // no-decay-confirmed | no-decay-unconfirmed
  NDReport nd;
  double d0 = 0.0;
  double d_final = 0.0;
  std::vector<double> ratios;  // D(t)/D(0): per snapshot (holds branch) or
                               // per sampled exact time (fails branch)
  std::vector<RefinementRow> refinement;
  DecayTrace trace;
  std::optional<TravelingWave> wave;
  std::vector<double> exact_times;
  std::vector<double> exact_descriptor;
  double exact_max_dev = 0.0;
};

DecayVerdict decay_experiment(const PiecewiseFlux& phi, const FreqGroup& group,
                              const TrigPoly& p, const DecayOpts& opts);

}  // namespace apcl
