#ifndef FIVEFIELD_SOLVER1D_HPP
#define FIVEFIELD_SOLVER1D_HPP

#include <string>
#include <vector>

#include "fivefield/hyperbolicity.hpp"

namespace fivefield {

using Vec5 = std::array<double, 5>;

/// Uniform periodic 1D grid on [-length/2, length/2).
struct Grid1D {
    int nx = 0;
    double dx = 0.0;
    std::vector<double> x;
    bool periodic = true;

    static Grid1D uniform(int nx, double length);
};

/// Doubled unknowns of the first-order-in-time reduction: the five
/// Godunov-Boillat variables per cell and their time derivatives.
struct SolverState {
    Grid1D grid;
    std::vector<Vec5> psi;
    std::vector<Vec5> psi_t;
    double t = 0.0;
};

struct PerturbationSpec {
    enum Shape { SINE, PULSE };
    Shape shape = SINE;
    double amplitude = 1e-3;
    int mode = 1;        ///< SINE wavenumber over the domain
    double width = 0.1;  ///< PULSE gaussian width
};

struct RunConfig {
    GasParams params;
    DissipationCoeffs coeffs;
    double n0 = 1.0;
    double theta0 = 1.0;
    PerturbationSpec perturbation;
    int nx = 256;
    double length = 1.0;
    double cfl = 0.5;
    double t_end = 1.0;
    int output_stride = 10;
    /// 4th-difference grid-mode filter strength; 0 disables. Not
    /// load-bearing for stability at cfl <= 0.5.
    double filter_coeff = 1e-3;
    double front_threshold = 1e-9;

    void validate() const;
    ThermoState background() const;
};

/// Raised when the reconstructed state loses positivity or normalization
/// mid-run; carries cell/time diagnostics in the message.
struct SolverAbort : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Initial condition: background plus the configured perturbation in
/// (n, theta) at zero 3-velocity, with psi_t slaved to the ideal-fluid
/// evolution of that profile.
SolverState initial_state(const RunConfig& cfg);

/// Largest stable explicit time step, cfl * dx / v_max with v_max from
/// the characteristic speeds at the background.
double stable_dt(const RunConfig& cfg, const Grid1D& grid);

/// Acceleration of the Godunov-Boillat variables: solves the per-cell
/// 5x5 time-coefficient system for psi_tt given the spatial divergence
/// of the total fluxes and the mixed-derivative terms.
std::vector<Vec5> semi_discrete_rhs(const SolverState& state, const RunConfig& cfg);

/// One explicit 4-stage step of size dt (default: stable_dt).
void step(SolverState& state, const RunConfig& cfg, double dt = 0.0);

/// Conserved cell totals (energy, momentum, particle number), i.e.
/// dx * sum of T^{a0}+DeltaT^{a0} and N^0+DeltaN^0.
struct ConservedTotals {
    double energy = 0.0;
    double momentum = 0.0;
    double particles = 0.0;
};

ConservedTotals conserved_totals(const SolverState& state, const RunConfig& cfg);

struct SeriesPoint {
    double t = 0.0;
    double l2 = 0.0;
    double linf = 0.0;
    double total_e = 0.0;
    double total_p = 0.0;
    double total_n = 0.0;
};

/// L2/Linf norms of psi minus the homogeneous background.
void perturbation_norms(const SolverState& state, const RunConfig& cfg, double& l2, double& linf);

struct DecayResult {
    std::vector<SeriesPoint> series;
    bool decayed = false; ///< final L2 below initial L2
};

DecayResult run_decay(const RunConfig& cfg);

struct FrontSpeedResult {
    bool front_found = false;
    double speed = 0.0;
    std::vector<std::pair<double, double>> track; ///< (t, front position)
};

/// Tracks the rightmost cell whose perturbation exceeds the threshold
/// and fits the front speed over the second half of the run.
FrontSpeedResult run_front_speed(const RunConfig& cfg);

/// Optional full-field snapshot rows (x, psi0..psi4).
std::string snapshot_csv(const SolverState& state);

} // namespace fivefield

#endif
