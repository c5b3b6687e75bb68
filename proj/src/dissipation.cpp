#include "fivefield/dissipation.hpp"

#include <cmath>
#include <stdexcept>

namespace fivefield {

IdealTensors ideal_tensors(const FluidState& state) {
    state.validate();
    const double rho_p = state.thermo.rho + state.thermo.p;
    IdealTensors t;
    for (int a = 0; a < 4; ++a) {
        t.N[a] = state.thermo.n * state.u4[a];
        for (int b = 0; b < 4; ++b)
            t.T[a][b] = rho_p * state.u4[a] * state.u4[b] + state.thermo.p * metric(a, b);
    }
    return t;
}

std::array<double, 16> GeneralAnsatz::as_array() const {
    return {tau, sigma_c, iota_check, nu, varsigma_check, upsilon,
            omega, zeta_tilde, iota_tilde, eta,
            tau_hat, sigma_hat, iota_hat, nu_hat, varsigma_hat, upsilon_hat};
}

GeneralAnsatz GeneralAnsatz::from_array(const std::array<double, 16>& v) {
    GeneralAnsatz a;
    a.tau = v[0]; a.sigma_c = v[1]; a.iota_check = v[2];
    a.nu = v[3]; a.varsigma_check = v[4]; a.upsilon = v[5];
    a.omega = v[6]; a.zeta_tilde = v[7]; a.iota_tilde = v[8];
    a.eta = v[9];
    a.tau_hat = v[10]; a.sigma_hat = v[11]; a.iota_hat = v[12];
    a.nu_hat = v[13]; a.varsigma_hat = v[14]; a.upsilon_hat = v[15];
    return a;
}

GeneralAnsatz& GeneralAnsatz::operator+=(const GeneralAnsatz& o) {
    auto s = as_array();
    auto t = o.as_array();
    for (int i = 0; i < 16; ++i) s[i] += t[i];
    *this = from_array(s);
    return *this;
}

GeneralAnsatz GeneralAnsatz::operator-(const GeneralAnsatz& o) const {
    auto s = as_array();
    auto t = o.as_array();
    for (int i = 0; i < 16; ++i) s[i] -= t[i];
    return from_array(s);
}

GeneralAnsatz GeneralAnsatz::scaled(double f) const {
    auto s = as_array();
    for (auto& x : s) x *= f;
    return from_array(s);
}

double GeneralAnsatz::max_abs_diff(const GeneralAnsatz& o) const {
    auto s = as_array();
    auto t = o.as_array();
    double m = 0.0;
    for (int i = 0; i < 16; ++i) m = std::max(m, std::abs(s[i] - t[i]));
    return m;
}

GeneralAnsatz new_theory_ansatz(const DissipationCoeffs& c, const DerivedCoeffs& d) {
    GeneralAnsatz a;
    a.nu = c.chi;
    a.tau = -c.chi;
    a.omega = -c.chi;
    a.sigma_c = d.sigma;
    a.varsigma_check = -d.sigma;
    a.zeta_tilde = d.zeta_tilde;
    a.eta = c.eta;
    a.sigma_hat = d.sigma_tilde;
    a.varsigma_hat = -d.sigma_tilde;
    a.upsilon_hat = c.mu;
    a.iota_hat = -c.mu;
    return a;
}

DissipationTensors delta_tensors_covariant(const FluidState& state, const GradientField& g,
                                           const DerivedCoeffs& d, const DissipationCoeffs& c) {
    state.validate();
    const Vec4& u = state.u4;
    const Mat4 pi = projector(u);
    const Vec4 dtheta = g.grad_theta(state);       // d theta / dx^beta
    const Mat4 du = g.grad_u(state);               // du[beta][sigma] = dU^sigma/dx^beta
    const Vec4 dpsi = g.grad_psi();

    double div_u = 0.0;
    for (int b = 0; b < 4; ++b) div_u += du[b][b];
    double theta_dot_u = 0.0, acc_a[4] = {0, 0, 0, 0};
    for (int b = 0; b < 4; ++b) {
        theta_dot_u += u[b] * dtheta[b];
        for (int s = 0; s < 4; ++s) acc_a[s] += u[b] * du[b][s]; // A^s = U^b dU^s/dx^b
    }

    // W[delta][gamma] = dU_gamma/dx^delta (both indices down)
    Mat4 w{};
    for (int dl = 0; dl < 4; ++dl)
        for (int gm = 0; gm < 4; ++gm) w[dl][gm] = lower0(gm, du[dl][gm]);

    DissipationTensors out;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            double shear = 0.0;
            for (int gm = 0; gm < 4; ++gm)
                for (int dl = 0; dl < 4; ++dl) {
                    const double sgd = w[dl][gm] + w[gm][dl]
                                       - (2.0 / 3.0) * metric(gm, dl) * div_u;
                    shear += pi[a][gm] * pi[b][dl] * sgd;
                }
            const double bulk = d.zeta_tilde * pi[a][b] * div_u;
            const double sig = d.sigma * (u[a] * u[b] * div_u
                                          - (acc_a[a] * u[b] + acc_a[b] * u[a]));
            const double heat = c.chi * (u[a] * lower0(b, dtheta[b])
                                         + u[b] * lower0(a, dtheta[a])
                                         - metric(a, b) * theta_dot_u);
            out.dT[a][b] = -(c.eta * shear + bulk + sig + heat);
        }
        const double diffN = c.mu * lower0(a, dpsi[a])
                             + d.sigma_tilde * (u[a] * div_u - acc_a[a]);
        out.dN[a] = -diffN;
    }
    return out;
}

DissipationTensors rest_frame_matrices(const FluidState& state, const RestFrameGradients& rg,
                                       const DerivedCoeffs& d, const DissipationCoeffs& c) {
    if (!state.at_rest(1e-12))
        throw std::domain_error("rest_frame_matrices: state must be at rest");
    const double dv = rg.div_u();
    const Mat3 su = rg.shear();

    DissipationTensors out;
    out.dT[0][0] = -(-c.chi * rg.theta_dot + d.sigma * dv);
    for (int i = 0; i < 3; ++i) {
        const double q = c.chi * rg.grad_theta[i] - d.sigma * rg.u_dot[i];
        out.dT[0][i + 1] = out.dT[i + 1][0] = -q;
        for (int j = 0; j < 3; ++j) {
            double v = c.eta * su[i][j];
            if (i == j) v += d.zeta_tilde * dv - c.chi * rg.theta_dot;
            out.dT[i + 1][j + 1] = -v;
        }
        out.dN[i + 1] = -(c.mu * rg.grad_psi[i] - d.sigma_tilde * rg.u_dot[i]);
    }
    out.dN[0] = -(-c.mu * rg.psi_dot + d.sigma_tilde * dv);
    return out;
}

DissipationTensors ansatz_evaluate(const GeneralAnsatz& a, const FluidState& state,
                                   const GradientField& g) {
    state.validate();
    const Vec4& u = state.u4;
    const Mat4 pi = projector(u);
    const Vec4 dtheta = g.grad_theta(state);
    const Mat4 du = g.grad_u(state);
    const Vec4 dpsi = g.grad_psi();

    double div_u = 0.0;
    for (int b = 0; b < 4; ++b) div_u += du[b][b];
    double theta_dot_u = 0.0, psi_dot_u = 0.0;
    Vec4 accel_lo{}; // A_gamma = U^delta dU_gamma/dx^delta
    for (int b = 0; b < 4; ++b) {
        theta_dot_u += u[b] * dtheta[b];
        psi_dot_u += u[b] * dpsi[b];
        for (int gm = 0; gm < 4; ++gm) accel_lo[gm] += u[b] * lower0(gm, du[b][gm]);
    }

    const double P = a.tau * theta_dot_u + a.sigma_c * div_u + a.iota_check * psi_dot_u;
    const double R = a.omega * theta_dot_u + a.zeta_tilde * div_u + a.iota_tilde * psi_dot_u;
    const double Ph = a.tau_hat * theta_dot_u + a.sigma_hat * div_u + a.iota_hat * psi_dot_u;
    Vec4 q{}, qh{};
    for (int gm = 0; gm < 4; ++gm) {
        q[gm] = a.nu * dtheta[gm] + a.varsigma_check * accel_lo[gm] + a.upsilon * dpsi[gm];
        qh[gm] = a.nu_hat * dtheta[gm] + a.varsigma_hat * accel_lo[gm] + a.upsilon_hat * dpsi[gm];
    }
    Vec4 piq{}, piqh{};
    for (int al = 0; al < 4; ++al)
        for (int gm = 0; gm < 4; ++gm) {
            piq[al] += pi[al][gm] * q[gm];
            piqh[al] += pi[al][gm] * qh[gm];
        }

    DissipationTensors out;
    for (int al = 0; al < 4; ++al) {
        for (int be = 0; be < 4; ++be) {
            double shear = 0.0;
            for (int gm = 0; gm < 4; ++gm)
                for (int dl = 0; dl < 4; ++dl) {
                    const double sgd = lower0(gm, du[dl][gm]) + lower0(dl, du[gm][dl])
                                       - (2.0 / 3.0) * metric(gm, dl) * div_u;
                    shear += pi[al][gm] * pi[be][dl] * sgd;
                }
            const double v = u[al] * u[be] * P + piq[al] * u[be] + piq[be] * u[al]
                             + pi[al][be] * R + a.eta * shear;
            out.dT[al][be] = -v;
        }
        out.dN[al] = -(u[al] * Ph + piqh[al]);
    }
    return out;
}

DissipationTensors ansatz_evaluate_rest(const GeneralAnsatz& a, const ThermoState&,
                                        const RestFrameGradients& rg) {
    const double dv = rg.div_u();
    const Mat3 su = rg.shear();
    const double P = a.tau * rg.theta_dot + a.sigma_c * dv + a.iota_check * rg.psi_dot;
    const double R = a.omega * rg.theta_dot + a.zeta_tilde * dv + a.iota_tilde * rg.psi_dot;
    const double Ph = a.tau_hat * rg.theta_dot + a.sigma_hat * dv + a.iota_hat * rg.psi_dot;

    DissipationTensors out;
    out.dT[0][0] = -P;
    out.dN[0] = -Ph;
    for (int i = 0; i < 3; ++i) {
        const double qi = a.nu * rg.grad_theta[i] + a.varsigma_check * rg.u_dot[i]
                          + a.upsilon * rg.grad_psi[i];
        out.dT[0][i + 1] = out.dT[i + 1][0] = -qi;
        out.dN[i + 1] = -(a.nu_hat * rg.grad_theta[i] + a.varsigma_hat * rg.u_dot[i]
                          + a.upsilon_hat * rg.grad_psi[i]);
        for (int j = 0; j < 3; ++j)
            out.dT[i + 1][j + 1] = -((i == j ? R : 0.0) + a.eta * su[i][j]);
    }
    return out;
}

std::array<double, 5> godunov_vars(const FluidState& state) {
    state.validate();
    const double th = state.thermo.theta;
    return {state.u4[0] / th, state.u4[1] / th, state.u4[2] / th, state.u4[3] / th,
            state.thermo.psi};
}

FluidState state_from_godunov(const GasParams& params, const std::array<double, 5>& v) {
    const double s = -v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3];
    if (!(s < 0.0) || !(v[0] > 0.0))
        throw std::domain_error("state_from_godunov: degenerate state vector");
    const double theta = 1.0 / std::sqrt(-s);
    FluidState st;
    st.thermo = eos_from_godunov(params, theta, v[4]);
    st.u4 = {theta * v[0], theta * v[1], theta * v[2], theta * v[3]};
    return st;
}

BTensor assemble_b_tensor(const FluidState& state, const DerivedCoeffs& d,
                          const DissipationCoeffs& c) {
    state.validate();
    const Vec4& u = state.u4;
    const Mat4 pi = projector(u);
    const double th = state.thermo.theta;
    const double th2 = th * th;

    BTensor bt;
    for (int al = 0; al < 4; ++al)
        for (int be = 0; be < 4; ++be)
            for (int gm = 0; gm < 4; ++gm)
                for (int dl = 0; dl < 4; ++dl) {
                    double v = u[al] * u[be] * (-c.chi * th2 * u[gm] * u[dl]
                                                + d.sigma * th * pi[gm][dl]);
                    v += pi[al][be] * (-c.chi * th2 * u[gm] * u[dl]
                                       + d.zeta_tilde * th * pi[gm][dl]);
                    v += c.chi * th2 * (pi[al][dl] * u[be] + pi[be][dl] * u[al]) * u[gm];
                    v -= d.sigma * th * (pi[al][gm] * u[be] + pi[be][gm] * u[al]) * u[dl];
                    v += c.eta * th * (pi[al][gm] * pi[be][dl] + pi[al][dl] * pi[be][gm]
                                       - (2.0 / 3.0) * pi[al][be] * pi[gm][dl]);
                    bt.b[al][be][gm][dl] = v;
                }
    // diffusion block; mixed blocks stay zero
    for (int be = 0; be < 4; ++be)
        for (int dl = 0; dl < 4; ++dl)
            bt.b[4][be][4][dl] = -c.mu * u[be] * u[dl] + c.mu * pi[be][dl];
    return bt;
}

} // namespace fivefield
