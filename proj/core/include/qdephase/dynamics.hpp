#pragma once

#include <vector>

#include "qdephase/env.hpp"
#include "qdephase/processes.hpp"
#include "qdephase/states.hpp"

namespace qdephase {

/// Parameters of the two-qubit dephasing evolution: coupling lambda,
/// energy splitting omega0, noise process and environment topology.
struct EvolutionParams {
  double lambda = 1.0;
  double omega0 = 1.0;
  ProcessSpec spec;
  EnvTopology env = EnvTopology::Independent;
};

/// x(t) = exp(-4 A lambda^2 beta(t)) with A = 1 (independent) or
/// A = 2 (common). x(0) = 1 exactly; x is non-increasing in t.
double dephasing_factor(const EvolutionParams& p, double t);

/// Analytic evolved density matrix. Populations are untouched; the corner
/// coherences damp by the dephasing factor and rotate by exp(-+ 4 i
/// omega0 t); the inner (c3 - c4) coherence damps only for independent
/// environments and is conserved exactly under a common environment.
TwoQubitDensity evolve(const BellMixture& m, const EvolutionParams& p, double t);

/// Dephasing map in Bloch coordinates at a known factor x:
///   independent: (a1 x, a2 x, a3)
///   common:      (((a1-a2) x + a1+a2)/2, ((a2-a1) x + a1+a2)/2, a3)
BlochDiagonal apply_dephasing(const BlochDiagonal& b, double x, EnvTopology env);

/// Bloch-coordinate evolution; a3 is invariant in both topologies.
BlochDiagonal evolve_bloch(const BlochDiagonal& b, const EvolutionParams& p, double t);

/// negativity_bell_mixture composed with the dephasing factor. Does not
/// depend on omega0; non-increasing in t.
double negativity_at(const BellMixture& m, const EvolutionParams& p, double t);

/// Monte Carlo average of U(t) rho0 U(t)^dagger over n_samples noise
/// realizations; the stochastic oracle for evolve(). Independent
/// environments draw two i.i.d. phases per realization, a common
/// environment one shared phase. Paths are sampled exactly in law on a
/// grid with grid_density steps per unit time and integrated by the
/// trapezoid rule; white noise draws phases directly with variance t.
///
/// Realization i uses rng.substream(i), and partial sums are accumulated
/// in fixed-size index blocks reduced in block order, so the result is
/// identical for every n_threads (0 = hardware concurrency).
TwoQubitDensity mc_evolve(const BellMixture& m, const EvolutionParams& p, double t,
                          int n_samples, int grid_density, const SeededRng& rng,
                          int n_threads = 0);

struct TrajectoryPoint {
  double t = 0.0;
  BlochDiagonal bloch;
  double negativity = 0.0;
};

/// Per-node Bloch coordinates and negativity along the grid.
std::vector<TrajectoryPoint> trajectory(const BellMixture& m,
                                        const EvolutionParams& p,
                                        const TimeGrid& grid);

struct McErrorRow {
  double t = 0.0;
  double max_abs_error = 0.0;
};

/// Shared-path Monte Carlo validation sweep: one set of n_samples paths
/// over [0, t_max], phases accumulated by prefix trapezoid sums, compared
/// element-wise against evolve() at n_rows+1 equally spaced times. The
/// internal grid contains every output time as an exact node and has at
/// least grid_density steps per unit time. Deterministic for every
/// n_threads, like mc_evolve.
std::vector<McErrorRow> mc_validate_curve(const BellMixture& m,
                                          const EvolutionParams& p,
                                          double t_max, int n_rows,
                                          int n_samples, int grid_density,
                                          const SeededRng& rng,
                                          int n_threads = 0);

}  // namespace qdephase
