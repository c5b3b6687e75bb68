#include "fivefield/solver1d.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace fivefield {

namespace {

constexpr double kPi = 3.14159265358979323846;

using M5 = Eigen::Matrix<double, 5, 5>;
using V5 = Eigen::Matrix<double, 5, 1>;

inline int wrap(int i, int n) { return (i % n + n) % n; }

GradientField make_gradient(const Vec5& dt, const Vec5& dx) {
    GradientField g;
    for (int c = 0; c < 5; ++c) {
        g.d[0][c] = dt[c];
        g.d[1][c] = dx[c];
    }
    return g;
}

/// Per-cell reconstruction plus the pieces of the conserved density
/// G(psi, psi_t, dpsi_dx) = c0(psi, dpsi_dx) + l0(psi) psi_t.
struct CellWork {
    FluidState st;
    DerivedCoeffs derived;
    M5 l0;
    V5 c0;
};

Vec5 eval_density(const FluidState& st, const IdealTensors& ideal, const GradientField& g,
                  const DerivedCoeffs& d, const DissipationCoeffs& c, bool include_ideal) {
    const DissipationTensors t = delta_tensors_covariant(st, g, d, c);
    Vec5 out;
    for (int a = 0; a < 4; ++a) out[a] = t.dT[a][0] + (include_ideal ? ideal.T[a][0] : 0.0);
    out[4] = t.dN[0] + (include_ideal ? ideal.N[0] : 0.0);
    return out;
}

Vec5 eval_flux(const FluidState& st, const IdealTensors& ideal, const GradientField& g,
               const DerivedCoeffs& d, const DissipationCoeffs& c) {
    const DissipationTensors t = delta_tensors_covariant(st, g, d, c);
    Vec5 out;
    for (int a = 0; a < 4; ++a) out[a] = t.dT[a][1] + ideal.T[a][1];
    out[4] = t.dN[1] + ideal.N[1];
    return out;
}

CellWork make_cell(const RunConfig& cfg, const Vec5& psi, const Vec5& dpsi_dx, int cell,
                   double t) {
    CellWork w;
    try {
        w.st = state_from_godunov(cfg.params, psi);
        if (!(w.st.thermo.theta > 0.0) || !(w.st.thermo.n > 0.0))
            throw std::domain_error("non-positive theta or n");
        w.derived = derive_coefficients(cfg.params, w.st.thermo, cfg.coeffs);
    } catch (const std::exception& e) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "solver abort at cell %d, t = %.6g: %s", cell, t,
                      e.what());
        throw SolverAbort(buf);
    }
    const IdealTensors ideal = ideal_tensors(w.st);

    const Vec5 zero{};
    for (int c = 0; c < 5; ++c) {
        Vec5 e{};
        e[c] = 1.0;
        const Vec5 col =
            eval_density(w.st, ideal, make_gradient(e, zero), w.derived, cfg.coeffs, false);
        for (int a = 0; a < 5; ++a) w.l0(a, c) = col[a];
    }
    const Vec5 base =
        eval_density(w.st, ideal, make_gradient(zero, dpsi_dx), w.derived, cfg.coeffs, true);
    for (int a = 0; a < 5; ++a) w.c0(a) = base[a];
    return w;
}

std::vector<Vec5> central_dx(const std::vector<Vec5>& u, double dx) {
    const int n = static_cast<int>(u.size());
    std::vector<Vec5> out(u.size());
    for (int i = 0; i < n; ++i) {
        const Vec5& up = u[static_cast<size_t>(wrap(i + 1, n))];
        const Vec5& um = u[static_cast<size_t>(wrap(i - 1, n))];
        for (int c = 0; c < 5; ++c) out[static_cast<size_t>(i)][c] = (up[c] - um[c]) / (2.0 * dx);
    }
    return out;
}

void add_filter(const std::vector<Vec5>& u, double rate, std::vector<Vec5>& rhs) {
    if (rate == 0.0) return;
    const int n = static_cast<int>(u.size());
    for (int i = 0; i < n; ++i) {
        for (int c = 0; c < 5; ++c) {
            const double d4 = u[static_cast<size_t>(wrap(i - 2, n))][c]
                - 4.0 * u[static_cast<size_t>(wrap(i - 1, n))][c] + 6.0 * u[static_cast<size_t>(i)][c]
                - 4.0 * u[static_cast<size_t>(wrap(i + 1, n))][c]
                + u[static_cast<size_t>(wrap(i + 2, n))][c];
            rhs[static_cast<size_t>(i)][c] -= rate * d4 / 16.0;
        }
    }
}

struct PhaseVec {
    std::vector<Vec5> psi;
    std::vector<Vec5> g;
};

/// Core semi-discrete right-hand side in the conservative (psi, G)
/// variables: psi_t is recovered per cell from G, the total fluxes are
/// evaluated pointwise, and dG/dt is their central-difference
/// divergence.
PhaseVec conservative_rhs(const PhaseVec& y, const RunConfig& cfg, const Grid1D& grid,
                          double filter_rate, double t) {
    const int n = grid.nx;
    const std::vector<Vec5> ddx = central_dx(y.psi, grid.dx);
    std::vector<Vec5> psi_t(static_cast<size_t>(n));
    std::vector<Vec5> flux(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const CellWork w = make_cell(cfg, y.psi[static_cast<size_t>(i)],
                                     ddx[static_cast<size_t>(i)], i, t);
        V5 gv;
        for (int a = 0; a < 5; ++a) gv(a) = y.g[static_cast<size_t>(i)][a];
        const V5 pt = w.l0.partialPivLu().solve(gv - w.c0);
        for (int a = 0; a < 5; ++a) psi_t[static_cast<size_t>(i)][a] = pt(a);
        const IdealTensors ideal = ideal_tensors(w.st);
        flux[static_cast<size_t>(i)] =
            eval_flux(w.st, ideal, make_gradient(psi_t[static_cast<size_t>(i)],
                                                 ddx[static_cast<size_t>(i)]),
                      w.derived, cfg.coeffs);
    }
    PhaseVec out;
    out.psi = psi_t;
    out.g.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const Vec5& fp = flux[static_cast<size_t>(wrap(i + 1, n))];
        const Vec5& fm = flux[static_cast<size_t>(wrap(i - 1, n))];
        for (int c = 0; c < 5; ++c)
            out.g[static_cast<size_t>(i)][c] = -(fp[c] - fm[c]) / (2.0 * grid.dx);
    }
    add_filter(y.psi, filter_rate, out.psi);
    add_filter(y.g, filter_rate, out.g);
    return out;
}

std::vector<Vec5> densities_from_state(const SolverState& s, const RunConfig& cfg) {
    const int n = s.grid.nx;
    const std::vector<Vec5> ddx = central_dx(s.psi, s.grid.dx);
    std::vector<Vec5> g(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const CellWork w =
            make_cell(cfg, s.psi[static_cast<size_t>(i)], ddx[static_cast<size_t>(i)], i, s.t);
        V5 pt;
        for (int a = 0; a < 5; ++a) pt(a) = s.psi_t[static_cast<size_t>(i)][a];
        const V5 gv = w.c0 + w.l0 * pt;
        for (int a = 0; a < 5; ++a) g[static_cast<size_t>(i)][a] = gv(a);
    }
    return g;
}

std::vector<Vec5> recover_psi_t(const std::vector<Vec5>& psi, const std::vector<Vec5>& g,
                                const RunConfig& cfg, const Grid1D& grid, double t) {
    const int n = grid.nx;
    const std::vector<Vec5> ddx = central_dx(psi, grid.dx);
    std::vector<Vec5> psi_t(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const CellWork w = make_cell(cfg, psi[static_cast<size_t>(i)],
                                     ddx[static_cast<size_t>(i)], i, t);
        V5 gv;
        for (int a = 0; a < 5; ++a) gv(a) = g[static_cast<size_t>(i)][a];
        const V5 pt = w.l0.partialPivLu().solve(gv - w.c0);
        for (int a = 0; a < 5; ++a) psi_t[static_cast<size_t>(i)][a] = pt(a);
    }
    return psi_t;
}

double background_vmax(const RunConfig& cfg) {
    const FluidState st = make_state(cfg.params, cfg.n0, cfg.theta0);
    const DerivedCoeffs d = derive_coefficients(cfg.params, st.thermo, cfg.coeffs);
    const BTensor b = assemble_b_tensor(st, d, cfg.coeffs);
    const SpeedSpectrum sp = signal_speeds(b, st, {1.0, 0.0, 0.0});
    const double cs =
        std::sqrt(cfg.params.gamma * st.thermo.p / (st.thermo.rho + st.thermo.p));
    return std::max(sp.max_abs(), cs);
}

} // namespace

Grid1D Grid1D::uniform(int nx, double length) {
    if (nx < 16) throw std::invalid_argument("Grid1D: nx must be >= 16");
    if (!(length > 0.0)) throw std::invalid_argument("Grid1D: length must be positive");
    Grid1D g;
    g.nx = nx;
    g.dx = length / nx;
    g.x.resize(static_cast<size_t>(nx));
    for (int i = 0; i < nx; ++i) g.x[static_cast<size_t>(i)] = -0.5 * length + i * g.dx;
    return g;
}

void RunConfig::validate() const {
    params.validate();
    coeffs.validate();
    if (!(n0 > 0.0) || !(theta0 > 0.0))
        throw std::invalid_argument("RunConfig: background n0, theta0 must be positive");
    if (!(cfl > 0.0 && cfl <= 0.9)) throw std::invalid_argument("RunConfig: cfl must be in (0, 0.9]");
    if (!(perturbation.amplitude >= 0.0 && perturbation.amplitude <= 1e-1))
        throw std::invalid_argument("RunConfig: perturbation amplitude must be in [0, 0.1]");
    if (nx < 16) throw std::invalid_argument("RunConfig: nx must be >= 16");
    if (!(length > 0.0)) throw std::invalid_argument("RunConfig: length must be positive");
    if (!(t_end >= 0.0)) throw std::invalid_argument("RunConfig: t_end must be non-negative");
    if (output_stride < 1) throw std::invalid_argument("RunConfig: output_stride must be >= 1");
    if (!(filter_coeff >= 0.0)) throw std::invalid_argument("RunConfig: filter_coeff must be >= 0");
}

ThermoState RunConfig::background() const { return eos_from_n_theta(params, n0, theta0); }

SolverState initial_state(const RunConfig& cfg) {
    cfg.validate();
    SolverState s;
    s.grid = Grid1D::uniform(cfg.nx, cfg.length);
    s.psi.resize(static_cast<size_t>(cfg.nx));
    s.psi_t.resize(static_cast<size_t>(cfg.nx));

    std::vector<double> pres(static_cast<size_t>(cfg.nx));
    std::vector<double> rho_p(static_cast<size_t>(cfg.nx));
    std::vector<double> thetas(static_cast<size_t>(cfg.nx));
    for (int i = 0; i < cfg.nx; ++i) {
        const double x = s.grid.x[static_cast<size_t>(i)];
        double pert = 0.0;
        if (cfg.perturbation.shape == PerturbationSpec::SINE)
            pert = cfg.perturbation.amplitude
                * std::sin(2.0 * kPi * cfg.perturbation.mode * (x + 0.5 * cfg.length)
                           / cfg.length);
        else
            pert = cfg.perturbation.amplitude
                * std::exp(-x * x / (2.0 * cfg.perturbation.width * cfg.perturbation.width));
        const double n = cfg.n0 * (1.0 + pert);
        const double theta = cfg.theta0 * (1.0 + pert);
        const FluidState st = make_state(cfg.params, n, theta);
        s.psi[static_cast<size_t>(i)] = godunov_vars(st);
        pres[static_cast<size_t>(i)] = st.thermo.p;
        rho_p[static_cast<size_t>(i)] = st.thermo.rho + st.thermo.p;
        thetas[static_cast<size_t>(i)] = theta;
    }
    // ideal-fluid initial rates at zero velocity: only the velocity
    // accelerates, u1_dot = -dp/dx / (rho+p)
    for (int i = 0; i < cfg.nx; ++i) {
        const double dpdx = (pres[static_cast<size_t>(wrap(i + 1, cfg.nx))]
                             - pres[static_cast<size_t>(wrap(i - 1, cfg.nx))])
            / (2.0 * s.grid.dx);
        s.psi_t[static_cast<size_t>(i)] = Vec5{};
        s.psi_t[static_cast<size_t>(i)][1] =
            -dpdx / (rho_p[static_cast<size_t>(i)] * thetas[static_cast<size_t>(i)]);
    }
    return s;
}

double stable_dt(const RunConfig& cfg, const Grid1D& grid) {
    return cfg.cfl * grid.dx / background_vmax(cfg);
}

std::vector<Vec5> semi_discrete_rhs(const SolverState& state, const RunConfig& cfg) {
    cfg.validate();
    const int n = state.grid.nx;
    const std::vector<Vec5> ddx = central_dx(state.psi, state.grid.dx);
    const std::vector<Vec5> ddx_t = central_dx(state.psi_t, state.grid.dx);

    std::vector<Vec5> flux(static_cast<size_t>(n));
    std::vector<CellWork> work;
    work.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        work.push_back(make_cell(cfg, state.psi[static_cast<size_t>(i)],
                                 ddx[static_cast<size_t>(i)], i, state.t));
        const CellWork& w = work.back();
        const IdealTensors ideal = ideal_tensors(w.st);
        flux[static_cast<size_t>(i)] =
            eval_flux(w.st, ideal, make_gradient(state.psi_t[static_cast<size_t>(i)],
                                                 ddx[static_cast<size_t>(i)]),
                      w.derived, cfg.coeffs);
    }

    std::vector<Vec5> out(static_cast<size_t>(n));
    const double h = 1e-6;
    for (int i = 0; i < n; ++i) {
        V5 gdot;
        {
            const Vec5& fp = flux[static_cast<size_t>(wrap(i + 1, n))];
            const Vec5& fm = flux[static_cast<size_t>(wrap(i - 1, n))];
            for (int c = 0; c < 5; ++c) gdot(c) = -(fp[c] - fm[c]) / (2.0 * state.grid.dx);
        }
        // time derivative of c0(psi, dpsi_dx) along (psi_t, dpsi_t_dx),
        // central difference in state space
        Vec5 pp, pm, dp, dm;
        for (int c = 0; c < 5; ++c) {
            pp[c] = state.psi[static_cast<size_t>(i)][c] + h * state.psi_t[static_cast<size_t>(i)][c];
            pm[c] = state.psi[static_cast<size_t>(i)][c] - h * state.psi_t[static_cast<size_t>(i)][c];
            dp[c] = ddx[static_cast<size_t>(i)][c] + h * ddx_t[static_cast<size_t>(i)][c];
            dm[c] = ddx[static_cast<size_t>(i)][c] - h * ddx_t[static_cast<size_t>(i)][c];
        }
        const CellWork wp = make_cell(cfg, pp, dp, i, state.t);
        const CellWork wm = make_cell(cfg, pm, dm, i, state.t);
        const V5 dcdt = (wp.c0 - wm.c0) / (2.0 * h);

        const V5 rhs = gdot - dcdt;
        const V5 att = work[static_cast<size_t>(i)].l0.partialPivLu().solve(rhs);
        for (int c = 0; c < 5; ++c) out[static_cast<size_t>(i)][c] = att(c);
    }
    return out;
}

void step(SolverState& state, const RunConfig& cfg, double dt) {
    cfg.validate();
    const double vmax = background_vmax(cfg);
    const double dtv = dt > 0.0 ? dt : cfg.cfl * state.grid.dx / vmax;
    const double filter_rate = cfg.filter_coeff * vmax / state.grid.dx;

    PhaseVec y;
    y.psi = state.psi;
    y.g = densities_from_state(state, cfg);

    auto axpy = [](const PhaseVec& base, double a, const PhaseVec& d) {
        PhaseVec out = base;
        for (size_t i = 0; i < out.psi.size(); ++i)
            for (int c = 0; c < 5; ++c) {
                out.psi[i][c] += a * d.psi[i][c];
                out.g[i][c] += a * d.g[i][c];
            }
        return out;
    };

    const PhaseVec k1 = conservative_rhs(y, cfg, state.grid, filter_rate, state.t);
    const PhaseVec k2 =
        conservative_rhs(axpy(y, 0.5 * dtv, k1), cfg, state.grid, filter_rate, state.t);
    const PhaseVec k3 =
        conservative_rhs(axpy(y, 0.5 * dtv, k2), cfg, state.grid, filter_rate, state.t);
    const PhaseVec k4 = conservative_rhs(axpy(y, dtv, k3), cfg, state.grid, filter_rate, state.t);

    for (size_t i = 0; i < y.psi.size(); ++i)
        for (int c = 0; c < 5; ++c) {
            y.psi[i][c] +=
                dtv / 6.0 * (k1.psi[i][c] + 2.0 * k2.psi[i][c] + 2.0 * k3.psi[i][c] + k4.psi[i][c]);
            y.g[i][c] +=
                dtv / 6.0 * (k1.g[i][c] + 2.0 * k2.g[i][c] + 2.0 * k3.g[i][c] + k4.g[i][c]);
        }

    state.psi = y.psi;
    state.psi_t = recover_psi_t(y.psi, y.g, cfg, state.grid, state.t);
    state.t += dtv;
}

ConservedTotals conserved_totals(const SolverState& state, const RunConfig& cfg) {
    const std::vector<Vec5> g = densities_from_state(state, cfg);
    ConservedTotals tot;
    for (const Vec5& gi : g) {
        tot.energy += gi[0] * state.grid.dx;
        tot.momentum += gi[1] * state.grid.dx;
        tot.particles += gi[4] * state.grid.dx;
    }
    return tot;
}

void perturbation_norms(const SolverState& state, const RunConfig& cfg, double& l2,
                        double& linf) {
    const Vec5 bg = godunov_vars(make_state(cfg.params, cfg.n0, cfg.theta0));
    double acc = 0.0, mx = 0.0;
    for (const Vec5& p : state.psi)
        for (int c = 0; c < 5; ++c) {
            const double d = p[c] - bg[c];
            acc += d * d * state.grid.dx;
            mx = std::max(mx, std::abs(d));
        }
    l2 = std::sqrt(acc);
    linf = mx;
}

namespace {

SeriesPoint sample_point(const SolverState& s, const RunConfig& cfg) {
    SeriesPoint pt;
    pt.t = s.t;
    perturbation_norms(s, cfg, pt.l2, pt.linf);
    const ConservedTotals tot = conserved_totals(s, cfg);
    pt.total_e = tot.energy;
    pt.total_p = tot.momentum;
    pt.total_n = tot.particles;
    return pt;
}

} // namespace

DecayResult run_decay(const RunConfig& cfg) {
    SolverState s = initial_state(cfg);
    const double dt = stable_dt(cfg, s.grid);
    DecayResult res;
    res.series.push_back(sample_point(s, cfg));
    int k = 0;
    while (s.t < cfg.t_end - 1e-12) {
        const double d = std::min(dt, cfg.t_end - s.t);
        step(s, cfg, d);
        ++k;
        if (k % cfg.output_stride == 0 || s.t >= cfg.t_end - 1e-12)
            res.series.push_back(sample_point(s, cfg));
    }
    const double l2_0 = res.series.front().l2;
    const double l2_f = res.series.back().l2;
    res.decayed = (l2_f < l2_0) || (l2_0 == 0.0 && l2_f == 0.0);
    return res;
}

FrontSpeedResult run_front_speed(const RunConfig& cfg) {
    if (cfg.perturbation.shape != PerturbationSpec::PULSE)
        throw std::invalid_argument("run_front_speed: needs a PULSE perturbation");
    SolverState s = initial_state(cfg);
    const double dt = stable_dt(cfg, s.grid);
    const Vec5 bg = godunov_vars(make_state(cfg.params, cfg.n0, cfg.theta0));

    auto front_pos = [&](bool& found) {
        double best = -std::numeric_limits<double>::infinity();
        found = false;
        for (int i = 0; i < s.grid.nx; ++i) {
            double dev = 0.0;
            for (int c = 0; c < 5; ++c)
                dev = std::max(dev, std::abs(s.psi[static_cast<size_t>(i)][c] - bg[c]));
            if (dev > cfg.front_threshold && s.grid.x[static_cast<size_t>(i)] > best) {
                best = s.grid.x[static_cast<size_t>(i)];
                found = true;
            }
        }
        return best;
    };

    FrontSpeedResult res;
    int k = 0;
    while (s.t < cfg.t_end - 1e-12) {
        const double d = std::min(dt, cfg.t_end - s.t);
        step(s, cfg, d);
        ++k;
        if (k % cfg.output_stride == 0) {
            bool found = false;
            const double x = front_pos(found);
            if (found) {
                if (x > 0.5 * cfg.length - 3.0 * s.grid.dx)
                    throw SolverAbort("run_front_speed: pulse reached the boundary before the "
                                      "fit window closed; enlarge the domain");
                res.track.emplace_back(s.t, x);
            }
        }
    }
    // fit the second half of the tracked window
    std::vector<std::pair<double, double>> fitpts;
    for (const auto& p : res.track)
        if (p.first >= 0.5 * cfg.t_end) fitpts.push_back(p);
    if (fitpts.size() < 3) return res;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& p : fitpts) {
        sx += p.first;
        sy += p.second;
        sxx += p.first * p.first;
        sxy += p.first * p.second;
    }
    const double nn = static_cast<double>(fitpts.size());
    const double denom = nn * sxx - sx * sx;
    if (std::abs(denom) < 1e-14) return res;
    res.speed = (nn * sxy - sx * sy) / denom;
    res.front_found = true;
    return res;
}

std::string snapshot_csv(const SolverState& state) {
    std::string out = "x,psi0,psi1,psi2,psi3,psi4\n";
    char buf[256];
    for (int i = 0; i < state.grid.nx; ++i) {
        const Vec5& p = state.psi[static_cast<size_t>(i)];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      state.grid.x[static_cast<size_t>(i)], p[0], p[1], p[2], p[3], p[4]);
        out += buf;
    }
    return out;
}

} // namespace fivefield
