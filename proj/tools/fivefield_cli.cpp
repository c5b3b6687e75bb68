// Command-line front end: configuration-driven verification and
// simulation workflows with CSV / JSON-lines data output.
//
// Exit codes: 0 pass, 1 physics/verification failure, 2 usage or
// validation error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "fivefield/config.hpp"
#include "fivefield/entropy.hpp"
#include "fivefield/solver1d.hpp"

namespace {

using namespace fivefield;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Cell {
    std::string text;
    bool quoted = false;

    Cell(double v) : text(fmt(v)) {}
    Cell(long v) : text(std::to_string(v)) {}
    Cell(int v) : text(std::to_string(v)) {}
    Cell(const char* s) : text(s), quoted(true) {}
    Cell(const std::string& s) : text(s), quoted(true) {}
};

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

struct Output {
    std::string out_dir;
    std::string format; // "csv" or "json-lines"

    void emit(const Table& t) const {
        std::string body;
        if (format == "csv") {
            for (size_t j = 0; j < t.columns.size(); ++j)
                body += (j ? "," : "") + t.columns[j];
            body += "\n";
            for (const auto& row : t.rows) {
                for (size_t j = 0; j < row.size(); ++j)
                    body += (j ? "," : "") + row[j].text;
                body += "\n";
            }
        } else {
            for (const auto& row : t.rows) {
                body += "{";
                for (size_t j = 0; j < row.size(); ++j) {
                    body += (j ? ",\"" : "\"") + t.columns[j] + "\":";
                    body += row[j].quoted ? "\"" + row[j].text + "\"" : row[j].text;
                }
                body += "}\n";
            }
        }
        if (out_dir.empty()) {
            std::cout << "# table " << t.name << "\n" << body;
        } else {
            const std::string ext = format == "csv" ? ".csv" : ".jsonl";
            const std::filesystem::path p = std::filesystem::path(out_dir) / (t.name + ext);
            std::ofstream f(p);
            if (!f) throw std::runtime_error("cannot write " + p.string());
            f << body;
            std::cout << "wrote " << p.string() << "\n";
        }
    }

    void write_text(const std::string& name, const std::string& body) const {
        if (out_dir.empty()) {
            std::cout << "# file " << name << "\n" << body;
        } else {
            const std::filesystem::path p = std::filesystem::path(out_dir) / name;
            std::ofstream f(p);
            if (!f) throw std::runtime_error("cannot write " + p.string());
            f << body;
            std::cout << "wrote " << p.string() << "\n";
        }
    }
};

GasParams load_gas(const Config& cfg) {
    GasParams gp;
    gp.m = cfg.get_double("gas", "m", 1.0);
    gp.gamma = cfg.get_double("gas", "gamma", 4.0 / 3.0);
    gp.s0 = cfg.get_double("gas", "s0", 0.0);
    gp.validate();
    return gp;
}

DissipationCoeffs load_coeffs(const Config& cfg) {
    DissipationCoeffs c;
    c.eta = cfg.get_double("coefficients", "eta");
    c.zeta = cfg.get_double("coefficients", "zeta", 0.0);
    c.chi = cfg.get_double("coefficients", "chi");
    c.mu = cfg.get_double("coefficients", "mu", 0.0);
    return c;
}

ThermoState load_state(const GasParams& gp, const Config& cfg) {
    const double n = cfg.get_double("state", "n", 1.0);
    const double theta = cfg.get_double("state", "theta", 1.0);
    return eos_from_n_theta(gp, n, theta);
}

const std::vector<double> kScales{1e-1, 1e-2, 1e-3, 1e-4};

bool slope_ok(const ResidualFit& f) {
    return f.exact || std::abs(f.slope - 2.0) <= 0.1;
}

int cmd_check(const Config& cfg, const Output& io, unsigned seed) {
    const GasParams gp = load_gas(cfg);
    const DissipationCoeffs c = load_coeffs(cfg);
    c.validate();
    const ThermoState th = load_state(gp, cfg);
    const FluidState st = make_state(gp, th.n, th.theta);
    const long dirs = cfg.get_int("check", "directions", 20);
    cfg.ensure_all_consumed();

    const double cs = chi_star(gp, th, c.eta, c.zeta, c.mu);
    const DerivedCoeffs d = derive_coefficients(gp, th, c);
    if (d.sigma <= 0.0) {
        // transverse characteristic roots turn complex: the symbol is no
        // longer hyperbolic and no speed spectrum exists
        std::cout << "check: eta=" << fmt(c.eta) << " zeta=" << fmt(c.zeta)
                  << " chi=" << fmt(c.chi) << " mu=" << fmt(c.mu) << " at n=" << fmt(th.n)
                  << " theta=" << fmt(th.theta) << "\n"
                  << "derived: sigma=" << fmt(d.sigma) << " zeta_tilde=" << fmt(d.zeta_tilde)
                  << " sigma_tilde=" << fmt(d.sigma_tilde) << "\n"
                  << "chi_star=" << fmt(cs) << "\n"
                  << "status: ACAUSAL (algebraic), hyperbolicity lost (sigma <= 0), speed"
                  << " spectrum unavailable\n"
                  << "result: FAIL\n";
        return 1;
    }
    const CausalityCertificate cert =
        causality_certificate(gp, st, c, static_cast<int>(dirs), seed);

    double time_eig_max = cert.hkm.time_eigs[4];
    double space_eig_min = cert.hkm.space_eigs[0];
    for (double e : cert.hkm.time_eigs) time_eig_max = std::max(time_eig_max, e);
    for (double e : cert.hkm.space_eigs) space_eig_min = std::min(space_eig_min, e);

    std::cout << "check: eta=" << fmt(c.eta) << " zeta=" << fmt(c.zeta) << " chi=" << fmt(c.chi)
              << " mu=" << fmt(c.mu) << " at n=" << fmt(th.n) << " theta=" << fmt(th.theta)
              << "\n"
              << "derived: sigma=" << fmt(cert.derived.sigma)
              << " zeta_tilde=" << fmt(cert.derived.zeta_tilde)
              << " sigma_tilde=" << fmt(cert.derived.sigma_tilde) << "\n"
              << "chi_star=" << fmt(cs) << "\n"
              << "status: " << to_string(cert.algebraic) << " (algebraic), "
              << to_string(cert.spectral) << " (spectral), "
              << (cert.consistent ? "consistent" : "INCONSISTENT") << "\n"
              << "hkm: time eig max " << fmt(time_eig_max) << ", space eig min "
              << fmt(space_eig_min) << ", verdict " << (cert.hkm.verdict() ? "pass" : "fail")
              << "\n"
              << "speeds: max=" << fmt(cert.max_speed) << " min=" << fmt(cert.min_speed)
              << " over " << dirs << " directions\n";

    Table t;
    t.name = "check";
    t.columns = {"quantity", "value"};
    t.rows.push_back({"sigma", cert.derived.sigma});
    t.rows.push_back({"zeta_tilde", cert.derived.zeta_tilde});
    t.rows.push_back({"sigma_tilde", cert.derived.sigma_tilde});
    t.rows.push_back({"zt1", cert.derived.zt1});
    t.rows.push_back({"zt2", cert.derived.zt2});
    t.rows.push_back({"zt3", cert.derived.zt3});
    t.rows.push_back({"chi_star", cs});
    t.rows.push_back({"max_speed", cert.max_speed});
    t.rows.push_back({"min_speed", cert.min_speed});
    t.rows.push_back({"time_eig_max", time_eig_max});
    t.rows.push_back({"space_eig_min", space_eig_min});
    io.emit(t);

    const bool pass =
        cert.hkm.verdict() && cert.algebraic != CausalityStatus::ACAUSAL && cert.consistent;
    std::cout << "result: " << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? 0 : 1;
}

int cmd_equivalence(const Config& cfg, const Output& io, unsigned seed) {
    const GasParams gp = load_gas(cfg);
    const DissipationCoeffs c = load_coeffs(cfg);
    const ThermoState th = load_state(gp, cfg);
    const long samples = cfg.get_int("equivalence", "samples", 200);
    cfg.ensure_all_consumed();

    const DerivedCoeffs d = derive_coefficients(gp, th, c);
    const GeneralAnsatz target = new_theory_ansatz(c, d);
    const GeneralAnsatz chained = run_chain(gp, th, c);
    const double chain_diff = chained.max_abs_diff(target);
    const bool chain_ok = chain_diff <= 1e-10 * (1.0 + std::abs(d.sigma));

    const GeneralAnsatz eck = eckart_ansatz(gp, th, c);
    const GeneralAnsatz lan = landau_ansatz(gp, th, c);

    struct Pair {
        std::string name;
        ResidualFit fit;
        bool expect_second;
    };
    std::vector<Pair> pairs;
    const int ns = static_cast<int>(samples);
    pairs.push_back({"eckart_vs_new",
                     first_order_residual(eck, target, gp, th, kScales, ns, seed), true});
    pairs.push_back({"landau_vs_new",
                     first_order_residual(lan, target, gp, th, kScales, ns, seed), true});
    pairs.push_back({"eckart_vs_landau",
                     first_order_residual(eck, lan, gp, th, kScales, ns, seed), true});
    if (c.mu > 0.0) {
        // control: corrupt the diffusion contribution to the effective bulk
        // term (doubled); the records are then genuinely different at first
        // order and the fit must say so.
        DerivedCoeffs bad = d;
        bad.zeta_tilde += d.zt3;
        bad.sigma += d.zt3;
        bad.sigma_tilde = (bad.sigma + c.chi * th.theta) / th.h;
        pairs.push_back({"control_zt3_doubled",
                         first_order_residual(eck, new_theory_ansatz(c, bad), gp, th, kScales,
                                              ns, seed),
                         false});
    }

    std::cout << "chain identity: max coefficient diff " << fmt(chain_diff) << " ("
              << (chain_ok ? "ok" : "FAIL") << ")\n"
              << "note: the diffusion coefficient mu raises the effective bulk term through a\n"
              << "  positive contribution (gamma-1)^2 (m^2/theta) mu; the control row doubles\n"
              << "  that contribution and first-order equivalence degrades to slope ~1.\n";

    Table ts{"equivalence_slopes", {"pair", "slope", "exact"}, {}};
    Table tr{"equivalence_residuals", {"pair", "eps", "residual"}, {}};
    bool pass = chain_ok;
    for (const Pair& p : pairs) {
        ts.rows.push_back({p.name, p.fit.slope, static_cast<int>(p.fit.exact)});
        for (size_t i = 0; i < p.fit.epsilons.size(); ++i)
            tr.rows.push_back({p.name, p.fit.epsilons[i], p.fit.residuals[i]});
        if (p.expect_second) {
            const bool ok = slope_ok(p.fit);
            std::cout << p.name << ": slope " << fmt(p.fit.slope)
                      << (p.fit.exact ? " (exact)" : "") << " -> " << (ok ? "ok" : "FAIL")
                      << "\n";
            pass = pass && ok;
        } else {
            // informational only: a tiny mu makes the corrupted term fall
            // below the quadratic residual floor, in which case the fit
            // cannot resolve the mismatch
            const bool degraded = !p.fit.exact && p.fit.slope < 1.5;
            std::cout << p.name << ": slope " << fmt(p.fit.slope) << " -> "
                      << (degraded ? "degraded (mismatch detected)"
                                   : "unresolved (perturbation below residual floor)")
                      << "\n";
        }
    }
    io.emit(ts);
    io.emit(tr);
    std::cout << "result: " << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? 0 : 1;
}

int cmd_entropy(const Config& cfg, const Output& io, unsigned seed) {
    const GasParams gp = load_gas(cfg);
    const DissipationCoeffs c = load_coeffs(cfg);
    const ThermoState th = load_state(gp, cfg);
    const double eps = cfg.get_double("entropy", "eps", 1e-3);
    const long samples = cfg.get_int("entropy", "samples", 10000);
    cfg.ensure_all_consumed();

    // classical record: non-negativity and agreement of the contraction
    // with the closed quadratic form
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    double min_q = 0.0, max_disagreement = 0.0;
    const GeneralAnsatz eck = eckart_ansatz(gp, th, c);
    for (long k = 0; k < samples; ++k) {
        RestFrameGradients rg;
        rg.theta_dot = uni(rng);
        rg.psi_dot = uni(rng);
        for (int i = 0; i < 3; ++i) {
            rg.grad_theta[i] = uni(rng);
            rg.grad_psi[i] = uni(rng);
            rg.u_dot[i] = uni(rng);
            for (int j = 0; j < 3; ++j) rg.grad_u[i][j] = uni(rng);
        }
        const EntropyReport closed = eckart_entropy_decomposition(th, rg, c);
        const EntropyReport direct =
            entropy_production(th, rg, ansatz_evaluate_rest(eck, th, rg));
        min_q = std::min(min_q, closed.q);
        max_disagreement = std::max(max_disagreement, std::abs(closed.q - direct.q));
    }
    const bool classical_ok = min_q >= 0.0 && max_disagreement < 1e-10;

    struct Shift {
        std::string name;
        ShiftSpec spec;
    };
    std::vector<Shift> shifts;
    {
        ShiftSpec v;
        v.kind = ShiftSpec::VELOCITY;
        v.delta_velocity = {0.0, -c.chi * th.theta, 0.0};
        shifts.push_back({"velocity", v});
        ShiftSpec t;
        t.kind = ShiftSpec::THERMODYNAMIC;
        t.delta_theta = {0.3, -0.2, 0.1};
        t.delta_psi = {0.1, 0.2, -0.3};
        shifts.push_back({"thermodynamic", t});
        ShiftSpec r;
        r.kind = ShiftSpec::GRADIENT_REEXPRESSION;
        r.flags = REEXPRESS_ALL;
        shifts.push_back({"reexpression", r});
    }
    Table ts{"entropy_shift_slopes", {"shift", "slope", "exact"}, {}};
    bool shifts_ok = true;
    for (const Shift& s : shifts) {
        const ResidualFit fit = delta_q_order(gp, th, eck, s.spec, kScales, 200, seed);
        ts.rows.push_back({s.name, fit.slope, static_cast<int>(fit.exact)});
        const bool ok = slope_ok(fit);
        std::cout << "delta-q " << s.name << ": slope " << fmt(fit.slope)
                  << (fit.exact ? " (exact)" : "") << " -> " << (ok ? "ok" : "FAIL") << "\n";
        shifts_ok = shifts_ok && ok;
    }

    const EntropySignReport rep =
        new_model_entropy_sign(gp, th, c, eps, static_cast<int>(samples), seed);
    const double envelope_k = std::max(0.0, -rep.min_q_over_eps2);
    const bool model_ok = rep.mean_q > 0.0 && rep.min_q >= -1e3 * eps * eps;

    std::cout << "classical record: min q " << fmt(min_q) << ", contraction agreement "
              << fmt(max_disagreement) << " -> " << (classical_ok ? "ok" : "FAIL") << "\n"
              << "proposed model at eps=" << fmt(eps) << ": min q " << fmt(rep.min_q)
              << ", mean q " << fmt(rep.mean_q) << ", envelope constant K " << fmt(envelope_k)
              << " -> " << (model_ok ? "ok" : "FAIL") << "\n";

    Table t{"entropy", {"quantity", "value"}, {}};
    t.rows.push_back({"classical_min_q", min_q});
    t.rows.push_back({"contraction_agreement", max_disagreement});
    t.rows.push_back({"model_eps", rep.eps});
    t.rows.push_back({"model_min_q", rep.min_q});
    t.rows.push_back({"model_mean_q", rep.mean_q});
    t.rows.push_back({"model_envelope_k", envelope_k});
    io.emit(t);
    io.emit(ts);

    const bool pass = classical_ok && shifts_ok && model_ok;
    std::cout << "result: " << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? 0 : 1;
}

RunConfig load_run_config(const Config& cfg, const GasParams& gp, const DissipationCoeffs& c,
                          std::string& scenario, bool& snapshots, double& speed_lo,
                          double& speed_hi) {
    RunConfig rc;
    rc.params = gp;
    rc.coeffs = c;
    rc.n0 = cfg.get_double("state", "n", 1.0);
    rc.theta0 = cfg.get_double("state", "theta", 1.0);
    scenario = cfg.get_string("solver", "scenario", "decay");
    rc.nx = static_cast<int>(cfg.get_int("solver", "nx", 256));
    rc.length = cfg.get_double("solver", "length", 1.0);
    rc.cfl = cfg.get_double("solver", "cfl", 0.4);
    rc.t_end = cfg.get_double("solver", "t_end", 1.0);
    rc.output_stride = static_cast<int>(cfg.get_int("solver", "output_stride", 10));
    rc.filter_coeff = cfg.get_double("solver", "filter_coeff", 1e-3);
    rc.front_threshold = cfg.get_double("solver", "front_threshold", 1e-6);
    rc.perturbation.amplitude = cfg.get_double("solver", "amplitude", 1e-3);
    rc.perturbation.mode = static_cast<int>(cfg.get_int("solver", "mode", 1));
    rc.perturbation.width = cfg.get_double("solver", "width", 0.05);
    rc.perturbation.shape =
        scenario == "front" ? PerturbationSpec::PULSE : PerturbationSpec::SINE;
    snapshots = cfg.get_int("solver", "snapshots", 0) != 0;
    speed_lo = cfg.get_double("solver", "min_speed_bound", 0.0);
    speed_hi = cfg.get_double("solver", "max_speed_bound", 1.02);
    return rc;
}

int cmd_simulate(const Config& cfg, const Output& io, unsigned) {
    const GasParams gp = load_gas(cfg);
    const DissipationCoeffs c = load_coeffs(cfg);
    c.validate();
    std::string scenario;
    bool snapshots = false;
    double speed_lo = 0.0, speed_hi = 1.02;
    RunConfig rc = load_run_config(cfg, gp, c, scenario, snapshots, speed_lo, speed_hi);
    cfg.ensure_all_consumed();
    rc.validate();

    const DerivedCoeffs d = derive_coefficients(gp, rc.background(), c);
    if (causality_status(c, d) == CausalityStatus::ACAUSAL)
        throw std::invalid_argument("simulate: acausal coefficient configuration");

    if (scenario == "decay") {
        SolverState s = initial_state(rc);
        const double dt = stable_dt(rc, s.grid);
        Table t{"series", {"t", "l2", "linf", "total_e", "total_p", "total_n"}, {}};
        auto record = [&](const SolverState& st) {
            double l2, linf;
            perturbation_norms(st, rc, l2, linf);
            const ConservedTotals tot = conserved_totals(st, rc);
            t.rows.push_back({st.t, l2, linf, tot.energy, tot.momentum, tot.particles});
        };
        record(s);
        double l2_0, linf_0;
        perturbation_norms(s, rc, l2_0, linf_0);
        const ConservedTotals tot0 = conserved_totals(s, rc);
        int k = 0;
        try {
            while (s.t < rc.t_end - 1e-12) {
                step(s, rc, std::min(dt, rc.t_end - s.t));
                ++k;
                if (k % rc.output_stride == 0 || s.t >= rc.t_end - 1e-12) record(s);
            }
        } catch (const SolverAbort& e) {
            std::cout << "abort: " << e.what() << "\n";
            io.emit(t);
            io.write_text("last_snapshot.csv", snapshot_csv(s));
            std::cout << "result: FAIL\n";
            return 1;
        }
        io.emit(t);
        if (snapshots) io.write_text("final_snapshot.csv", snapshot_csv(s));
        double l2_f, linf_f;
        perturbation_norms(s, rc, l2_f, linf_f);
        const ConservedTotals tot1 = conserved_totals(s, rc);
        const double scale = std::abs(tot0.energy) + std::abs(tot0.particles);
        const double drift = (std::abs(tot1.energy - tot0.energy)
                              + std::abs(tot1.particles - tot0.particles)) / scale;
        const bool decayed = rc.t_end == 0.0 || l2_f < l2_0 || (l2_0 == 0.0 && l2_f == 0.0);
        std::cout << "decay: l2 " << fmt(l2_0) << " -> " << fmt(l2_f) << ", conservation drift "
                  << fmt(drift) << "\n";
        const bool pass = decayed && drift <= 1e-8;
        std::cout << "result: " << (pass ? "PASS" : "FAIL") << "\n";
        return pass ? 0 : 1;
    }
    if (scenario == "front") {
        FrontSpeedResult res;
        try {
            res = run_front_speed(rc);
        } catch (const SolverAbort& e) {
            std::cout << "abort: " << e.what() << "\n";
            std::cout << "result: FAIL\n";
            return 1;
        }
        Table t{"front_track", {"t", "x_front"}, {}};
        for (const auto& p : res.track) t.rows.push_back({p.first, p.second});
        io.emit(t);
        if (!res.front_found) {
            std::cout << "front: no front found\nresult: FAIL\n";
            return 1;
        }
        const bool pass = res.speed >= speed_lo && res.speed <= speed_hi;
        std::cout << "front: speed " << fmt(res.speed) << " (bounds [" << fmt(speed_lo) << ", "
                  << fmt(speed_hi) << "])\n"
                  << "result: " << (pass ? "PASS" : "FAIL") << "\n";
        return pass ? 0 : 1;
    }
    throw std::invalid_argument("simulate: unknown scenario '" + scenario
                                + "' (expected decay or front)");
}

int cmd_sweep(const Config& cfg, const Output& io, unsigned seed) {
    const GasParams gp = load_gas(cfg);
    const DissipationCoeffs base = load_coeffs(cfg);
    const ThermoState th = load_state(gp, cfg);
    const FluidState st = make_state(gp, th.n, th.theta);
    const double cs = chi_star(gp, th, base.eta, base.zeta, base.mu);
    const double chi_min = cfg.get_double("sweep", "chi_min", 0.2 * cs);
    const double chi_max = cfg.get_double("sweep", "chi_max", 2.0 * cs);
    const long steps = cfg.get_int("sweep", "steps", 10);
    const long dirs = cfg.get_int("sweep", "directions", 20);
    cfg.ensure_all_consumed();
    if (!(chi_min > 0.0) || !(chi_max > chi_min) || steps < 2)
        throw std::invalid_argument("sweep: need 0 < chi_min < chi_max and steps >= 2");

    std::cout << "sweep: chi in [" << fmt(chi_min) << ", " << fmt(chi_max) << "], " << steps
              << " points, chi_star=" << fmt(cs) << "\n";
    Table t{"sweep",
            {"chi", "sigma", "zeta_tilde", "status", "max_speed", "min_speed", "consistent"},
            {}};
    bool pass = true;
    const double tol = 1e-9 * (1.0 + cs);
    for (long k = 0; k < steps; ++k) {
        DissipationCoeffs c = base;
        c.chi = chi_min + (chi_max - chi_min) * static_cast<double>(k)
            / static_cast<double>(steps - 1);
        const DerivedCoeffs d = derive_coefficients(gp, th, c);
        CausalityStatus algebraic;
        bool consistent;
        double max_speed, min_speed;
        if (d.sigma <= 0.0) {
            // beyond loss of hyperbolicity: no real speed spectrum
            algebraic = causality_status(c, d);
            consistent = true;
            max_speed = std::numeric_limits<double>::quiet_NaN();
            min_speed = std::numeric_limits<double>::quiet_NaN();
        } else {
            const CausalityCertificate cert =
                causality_certificate(gp, st, c, static_cast<int>(dirs), seed);
            algebraic = cert.algebraic;
            consistent = cert.consistent;
            max_speed = cert.max_speed;
            min_speed = cert.min_speed;
        }
        t.rows.push_back({c.chi, d.sigma, d.zeta_tilde, to_string(algebraic), max_speed,
                          min_speed, static_cast<int>(consistent)});
        bool row_ok = consistent;
        if (c.chi < cs - tol) row_ok = row_ok && algebraic != CausalityStatus::ACAUSAL;
        if (c.chi > cs + tol) row_ok = row_ok && algebraic == CausalityStatus::ACAUSAL;
        if (!row_ok)
            std::cout << "inconsistent classification at chi=" << fmt(c.chi) << "\n";
        pass = pass && row_ok;
    }
    io.emit(t);
    std::cout << "result: " << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"five-field dissipative relativistic fluid toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string format = "csv";
    unsigned seed = 2022;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "configuration file")->required();
        sub->add_option("--seed", seed, "ensemble seed");
        sub->add_option("--out", out_dir, "output directory for data files");
        sub->add_option("--format", format, "data format")
            ->check(CLI::IsMember({"csv", "json-lines"}));
    };

    CLI::App* c_check = app.add_subcommand("check", "coefficient, definiteness and causality report");
    CLI::App* c_equiv = app.add_subcommand("equivalence", "first-order equivalence residuals");
    CLI::App* c_entropy = app.add_subcommand("entropy", "entropy production checks");
    CLI::App* c_sim = app.add_subcommand("simulate", "1D decay or front-speed run");
    CLI::App* c_sweep = app.add_subcommand("sweep", "chi grid with threshold-crossing table");
    for (CLI::App* sub : {c_check, c_equiv, c_entropy, c_sim, c_sweep}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        const Config cfg = Config::parse_file(config_path);
        const Output io{out_dir, format};
        if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
        if (c_check->parsed()) return cmd_check(cfg, io, seed);
        if (c_equiv->parsed()) return cmd_equivalence(cfg, io, seed);
        if (c_entropy->parsed()) return cmd_entropy(cfg, io, seed);
        if (c_sim->parsed()) return cmd_simulate(cfg, io, seed);
        if (c_sweep->parsed()) return cmd_sweep(cfg, io, seed);
    } catch (const DegenerateDiffusion& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
