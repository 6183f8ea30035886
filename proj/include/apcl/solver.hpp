#pragma once

#include <functional>
#include <limits>
#include <string>

#include "apcl/flux.hpp"
#include "apcl/lift.hpp"

namespace apcl {

// Finite-volume state on the m-torus: cell averages, row-major, with the
// admissible range [lo, hi] the discrete maximum principle must preserve.
struct CellField {
  std::vector<int> shape;  // m entries; empty for a 0-dimensional lift
  std::vector<double> v;
  double t = 0.0;
  double lo = 0.0, hi = 0.0;

  int m() const { return static_cast<int>(shape.size()); }
  std::size_t cells() const { return v.size(); }
  double mean(int threads = 0) const;
  std::pair<double, double> minmax() const;
};

// The flux transported along the lift directions: psi_j(u) = lambda_j . phi(u)
// with double coefficients, plus derivative tables for exact local wave-speed
// bounds.
struct LiftedFlux {
  double dom_lo = 0.0, dom_hi = 0.0;
  std::vector<PiecewisePolyD> psi;
  std::vector<IntervalMaxTable> speed;  // tables over psi_j'

  static LiftedFlux build(const PiecewiseFlux& phi, const LiftSpec& lift);

  int dirs() const { return static_cast<int>(psi.size()); }
  double psi_eval(int j, double u) const {
    return psi[static_cast<std::size_t>(j)].eval(u);
  }
  // max |psi_j'| over [min(a,b), max(a,b)].
  double wave_speed(int j, double a, double b) const;
};

struct StepStats {
  double t_after = 0.0;
  double mass = 0.0;        // mean of cells
  double descriptor = 0.0;  // mean |v - C| against the run's constant C
  double entropy_max = std::numeric_limits<double>::quiet_NaN();
};

struct RunConfig {
  std::vector<int> grid;  // one entry per lift dimension (or one, replicated)
  double cfl = 0.45;      // must be in (0, 1/2]
  double T = 0.0;         // >= 0; T = 0 emits the initial snapshot only
  std::vector<double> snapshot_times;  // extra snapshots in (0, T)
  bool entropy_check = false;
  int entropy_levels = 32;
  int threads = 0;  // 0: global worker count
  std::string scheme = "rusanov";
  std::function<void(const CellField&, const StepStats&)> observer;
};

// Exact cell averages of p (sinc-factor closed form per mode, integer phase
// arithmetic), bounds [-S, S] with S = max(ess_sup estimate, |cell| max).
CellField lift_initial(const TrigPoly& p, const LiftSpec& lift,
                       std::span<const int> grid);

class Stepper {
 public:
  Stepper(LiftedFlux flux, std::vector<int> shape, double cfl, int threads);

  const LiftedFlux& flux() const { return flux_; }
  // Largest dt honoring the CFL bound for the field's current range;
  // +infinity for a field with zero wave speeds.
  double suggest_dt(const CellField& f) const;
  // One conservative Rusanov update.  CflError when dt violates the bound,
  // RangeError if the result would leave [f.lo, f.hi] (maximum principle).
  CellField step(const CellField& f, double dt) const;
  // The interface flux F_j(u, v); exposed for entropy computations.
  double rusanov(int j, double u, double v) const;

 private:
  LiftedFlux flux_;
  std::vector<int> shape_;
  std::vector<std::size_t> stride_;
  std::size_t cells_ = 1;
  double cfl_ = 0.45;
  int threads_ = 0;
};

// Max over cells of |u_after - k| - |u_before - k| + dt sum_j div Q_j with the
// monotone numerical entropy flux Q_j(u,v) = F_j(u v k, v v k) - F_j(u ^ k, v ^ k).
// Nonpositive (up to roundoff) for accepted monotone steps.
double entropy_residual(const CellField& before, const CellField& after,
                        const Stepper& stepper, double dt, double k);

// One residual per level, in one sweep over the grid. Returns exactly the
// values entropy_residual would give level by level: when k is outside
// [min(u,v), max(u,v)] the clamped arguments collapse, so F(u v k, v v k)
// and F(u ^ k, v ^ k) are the same doubles as F(u,v) and F(k,k), and the
// sweep reuses one interface flux plus a per-level F(k,k) table instead of
// two fresh evaluations per level.
std::vector<double> entropy_residual_multi(const CellField& before,
                                           const CellField& after,
                                           const Stepper& stepper, double dt,
                                           std::span<const double> levels);

struct RunRecord {
  double mean0 = 0.0;  // C: conserved mean of the initial cells
  std::size_t steps = 0;
  std::vector<CellField> snapshots;  // t = 0, requested times, and T
  std::vector<StepStats> trace;      // one row per accepted step
};

RunRecord solve(const TrigPoly& p, const LiftSpec& lift,
                const PiecewiseFlux& phi, const RunConfig& cfg);

// Multilinear interpolation of the cell field at theta(x); exact at centers.
double line_value(const CellField& f, const LiftSpec& lift,
                  std::span<const double> x);
// 1-D ambient convenience over many sample positions.
std::vector<double> restrict_to_line(const CellField& f, const LiftSpec& lift,
                                     std::span<const double> xs);

}  // namespace apcl
