#include "fivefield/equivalence.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace fivefield {

namespace {

// Solves A (dtheta, dpsi)^T = (drho, dn)^T for a payload column.
std::pair<double, double> solve_payload(const SusceptibilityMatrix& A, double drho, double dn) {
    const double det = A.det();
    if (std::abs(det) < 1e-14)
        throw std::runtime_error("thermodynamic shift: singular susceptibility matrix");
    const double dtheta = (A.a[1][1] * drho - A.a[0][1] * dn) / det;
    const double dpsi = (-A.a[1][0] * drho + A.a[0][0] * dn) / det;
    return {dtheta, dpsi};
}

// The coefficient-record transformations stay well defined when chi or mu
// vanish (the corresponding payloads are zero), so they accept a weaker
// precondition than the solver-facing validate().
void check_record_coeffs(const DissipationCoeffs& c) {
    if (!(c.eta > 0.0) || !(c.zeta >= 0.0) || !(c.chi >= 0.0) || !(c.mu >= 0.0))
        throw std::domain_error(
            "coefficient record: need eta > 0 and zeta, chi, mu >= 0");
}

double frobenius(const DissipationTensors& t) {
    double acc = 0.0;
    for (int a = 0; a < 4; ++a) {
        acc += t.dN[a] * t.dN[a];
        for (int b = 0; b < 4; ++b) acc += t.dT[a][b] * t.dT[a][b];
    }
    return std::sqrt(acc);
}

} // namespace

ShiftSpec ShiftSpec::scaled(double f) const {
    ShiftSpec s = *this;
    for (int i = 0; i < 3; ++i) {
        s.delta_velocity[i] *= f;
        s.delta_theta[i] *= f;
        s.delta_psi[i] *= f;
    }
    return s;
}

GeneralAnsatz apply_shift(const GeneralAnsatz& a, const GasParams& params,
                          const ThermoState& state, const ShiftSpec& spec) {
    switch (spec.kind) {
    case ShiftSpec::VELOCITY:
        return velocity_shift(a, state, spec.delta_velocity);
    case ShiftSpec::THERMODYNAMIC:
        return thermodynamic_shift(a, params, state, spec.delta_theta, spec.delta_psi);
    case ShiftSpec::GRADIENT_REEXPRESSION:
        return gradient_reexpress(a, params, state, spec.flags);
    }
    throw std::logic_error("apply_shift: bad kind");
}

GeneralAnsatz velocity_shift(const GeneralAnsatz& a, const ThermoState& state,
                             const Triple& delta) {
    GeneralAnsatz out = a;
    out.nu += delta[0];
    out.varsigma_check += delta[1];
    out.upsilon += delta[2];
    const double inv_h = 1.0 / state.h;
    out.nu_hat += delta[0] * inv_h;
    out.varsigma_hat += delta[1] * inv_h;
    out.upsilon_hat += delta[2] * inv_h;
    return out;
}

GeneralAnsatz thermodynamic_shift(const GeneralAnsatz& a, const GasParams& params,
                                  const ThermoState& state, const Triple& delta_theta,
                                  const Triple& delta_psi) {
    const SusceptibilityMatrix A = susceptibility(params, state);
    GeneralAnsatz out = a;
    double* p_row[3] = {&out.tau, &out.sigma_c, &out.iota_check};
    double* r_row[3] = {&out.omega, &out.zeta_tilde, &out.iota_tilde};
    double* phat_row[3] = {&out.tau_hat, &out.sigma_hat, &out.iota_hat};
    for (int j = 0; j < 3; ++j) {
        const double dt = delta_theta[j];
        const double dp = delta_psi[j];
        *p_row[j] += A.a[0][0] * dt + A.a[0][1] * dp;    // delta rho
        *r_row[j] += A.p_theta * dt + A.p_psi * dp;      // delta p
        *phat_row[j] += A.a[1][0] * dt + A.a[1][1] * dp; // delta n
    }
    return out;
}

GeneralAnsatz gradient_reexpress(const GeneralAnsatz& a, const GasParams& params,
                                 const ThermoState& state, std::uint32_t flags) {
    const double gm1 = params.gamma - 1.0;
    const double theta = state.theta;
    const double k_theta = -gm1 * theta;             // theta_dot / div_u
    const double k_psi = gm1 * params.m / theta;     // psi_dot / div_u
    const double k_grad_theta = -1.0 / theta;        // u_dot -> grad_theta
    const double k_grad_psi = -theta / state.h;      // u_dot -> grad_psi

    GeneralAnsatz out = a;
    if (flags & REEXPRESS_THETA_DOT_T) {
        out.sigma_c += out.tau * k_theta;
        out.tau = 0.0;
        out.zeta_tilde += out.omega * k_theta;
        out.omega = 0.0;
    }
    if (flags & REEXPRESS_THETA_DOT_N) {
        out.sigma_hat += out.tau_hat * k_theta;
        out.tau_hat = 0.0;
    }
    if (flags & REEXPRESS_PSI_DOT_T) {
        out.sigma_c += out.iota_check * k_psi;
        out.iota_check = 0.0;
        out.zeta_tilde += out.iota_tilde * k_psi;
        out.iota_tilde = 0.0;
    }
    if (flags & REEXPRESS_PSI_DOT_N) {
        out.sigma_hat += out.iota_hat * k_psi;
        out.iota_hat = 0.0;
    }
    if (flags & REEXPRESS_U_DOT_T) {
        out.nu += out.varsigma_check * k_grad_theta;
        out.upsilon += out.varsigma_check * k_grad_psi;
        out.varsigma_check = 0.0;
    }
    if (flags & REEXPRESS_U_DOT_N) {
        out.nu_hat += out.varsigma_hat * k_grad_theta;
        out.upsilon_hat += out.varsigma_hat * k_grad_psi;
        out.varsigma_hat = 0.0;
    }
    return out;
}

GeneralAnsatz eckart_ansatz(const GasParams& params, const ThermoState& state,
                            const DissipationCoeffs& c) {
    params.validate();
    check_record_coeffs(c);
    (void)state;
    GeneralAnsatz a;
    a.nu = c.chi;
    a.varsigma_check = c.chi * state.theta;
    a.eta = c.eta;
    a.zeta_tilde = c.zeta;
    a.upsilon_hat = c.mu;
    return a;
}

GeneralAnsatz landau_ansatz(const GasParams& params, const ThermoState& state,
                            const DissipationCoeffs& c) {
    GeneralAnsatz a = eckart_ansatz(params, state, c);
    return velocity_shift(a, state, {-c.chi, -c.chi * state.theta, 0.0});
}

GeneralAnsatz chain_target_without_diffusion(const GasParams& params, const ThermoState& state,
                                             const DissipationCoeffs& c,
                                             const DerivedCoeffs& d) {
    (void)params;
    GeneralAnsatz a;
    a.tau = -c.chi;
    a.sigma_c = d.sigma;
    a.nu = c.chi;
    a.varsigma_check = -d.sigma;
    a.omega = -c.chi;
    a.zeta_tilde = c.zeta + d.zt1 + d.zt2;
    a.eta = c.eta;
    a.sigma_hat = (c.chi * state.theta + d.sigma) / state.h;
    a.varsigma_hat = -(c.chi * state.theta + d.sigma) / state.h;
    a.upsilon_hat = c.mu;
    return a;
}

GeneralAnsatz run_chain(const GasParams& params, const ThermoState& state,
                        const DissipationCoeffs& c) {
    params.validate();
    check_record_coeffs(c);
    const DerivedCoeffs d = derive_coefficients(params, state, c);
    const SusceptibilityMatrix A = susceptibility(params, state);
    const double gm1 = params.gamma - 1.0;
    const double theta = state.theta;
    const double h = state.h;

    GeneralAnsatz a = eckart_ansatz(params, state, c);

    // 1. absorb the heat-flux u_dot term into the velocity
    a = velocity_shift(a, state, {0.0, -c.chi * theta, 0.0});

    // 2. thermodynamic shift carrying (-chi) energy density on theta_dot
    //    and (chi theta / h) particle density on div_u
    {
        const auto [t1, p1] = solve_payload(A, -c.chi, 0.0);
        const auto [t2, p2] = solve_payload(A, 0.0, c.chi * theta / h);
        a = thermodynamic_shift(a, params, state, {t1, t2, 0.0}, {p1, p2, 0.0});
        // rebalance part of the bulk slot back into theta_dot
        const double amount = gm1 * (2.0 - params.gamma) * c.chi * theta;
        a.zeta_tilde -= amount;
        a.omega += -amount / (gm1 * theta);
    }

    // 3. absorb the remaining u_dot stress into the velocity
    a = velocity_shift(a, state, {0.0, -d.sigma, 0.0});

    // 4. thermodynamic shift with (sigma, sigma/h) on div_u
    {
        const auto [t2, p2] = solve_payload(A, d.sigma, d.sigma / h);
        a = thermodynamic_shift(a, params, state, {0.0, t2, 0.0}, {0.0, p2, 0.0});
    }

    // 5. diffusion sector: shift (-mu) particle density onto psi_dot, then
    //    trade the induced pressure term for div_u
    if (c.mu != 0.0) {
        const auto [t3, p3] = solve_payload(A, 0.0, -c.mu);
        a = thermodynamic_shift(a, params, state, {0.0, 0.0, t3}, {0.0, 0.0, p3});
        a = gradient_reexpress(a, params, state, REEXPRESS_PSI_DOT_T);
    }
    return a;
}

GradientEnsembleSample sample_euler_consistent(const GasParams& params, const ThermoState& state,
                                               double eps, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    GradientEnsembleSample s;
    RestFrameGradients& rg = s.data;
    for (int i = 0; i < 3; ++i) {
        rg.grad_theta[i] = uni(rng);
        rg.grad_psi[i] = uni(rng);
        for (int j = 0; j < 3; ++j) rg.grad_u[i][j] = uni(rng);
    }
    const double div_u = rg.div_u();
    const EulerRates er = euler_rates(params, state, div_u);

    RestFrameGradients& nz = s.noise;
    nz.theta_dot = eps * uni(rng);
    nz.psi_dot = eps * uni(rng);
    for (int i = 0; i < 3; ++i) nz.u_dot[i] = eps * uni(rng);

    rg.theta_dot = er.theta_dot + nz.theta_dot;
    rg.psi_dot = er.psi_dot + nz.psi_dot;
    for (int i = 0; i < 3; ++i)
        rg.u_dot[i] = -rg.grad_theta[i] / state.theta - (state.theta / state.h) * rg.grad_psi[i]
            + nz.u_dot[i];
    return s;
}

ResidualFit first_order_residual(const GeneralAnsatz& a, const GeneralAnsatz& b,
                                 const GasParams& params, const ThermoState& state,
                                 const std::vector<double>& scales,
                                 int samples_per_scale, unsigned seed) {
    if (scales.size() < 2)
        throw std::invalid_argument("first_order_residual: need at least two scales");
    params.validate();

    const GeneralAnsatz delta = a - b;
    const auto delta_v = delta.as_array();

    // Span of record changes achievable by field redefinitions: 3 velocity
    // shifts, 6 thermodynamic payload columns, and the 8 gradient
    // substitutions (3 theta_dot rows, 3 psi_dot rows, 2 u_dot rows).
    std::vector<std::array<double, 16>> dirs;
    const GeneralAnsatz zero{};
    for (int k = 0; k < 3; ++k) {
        Triple e{0.0, 0.0, 0.0};
        e[k] = 1.0;
        dirs.push_back(velocity_shift(zero, state, e).as_array());
    }
    for (int k = 0; k < 3; ++k) {
        Triple e{0.0, 0.0, 0.0};
        e[k] = 1.0;
        dirs.push_back(thermodynamic_shift(zero, params, state, e, {0, 0, 0}).as_array());
        dirs.push_back(thermodynamic_shift(zero, params, state, {0, 0, 0}, e).as_array());
    }
    struct Sub {
        double GeneralAnsatz::* slot;
        std::uint32_t flag;
    };
    const Sub subs[8] = {
        {&GeneralAnsatz::tau, REEXPRESS_THETA_DOT_T},
        {&GeneralAnsatz::omega, REEXPRESS_THETA_DOT_T},
        {&GeneralAnsatz::tau_hat, REEXPRESS_THETA_DOT_N},
        {&GeneralAnsatz::iota_check, REEXPRESS_PSI_DOT_T},
        {&GeneralAnsatz::iota_tilde, REEXPRESS_PSI_DOT_T},
        {&GeneralAnsatz::iota_hat, REEXPRESS_PSI_DOT_N},
        {&GeneralAnsatz::varsigma_check, REEXPRESS_U_DOT_T},
        {&GeneralAnsatz::varsigma_hat, REEXPRESS_U_DOT_N},
    };
    for (const Sub& sub : subs) {
        GeneralAnsatz unit{};
        unit.*(sub.slot) = 1.0;
        const GeneralAnsatz moved = gradient_reexpress(unit, params, state, sub.flag);
        dirs.push_back((moved - unit).as_array());
    }

    Eigen::MatrixXd D(16, static_cast<int>(dirs.size()));
    for (int j = 0; j < D.cols(); ++j)
        for (int i = 0; i < 16; ++i) D(i, j) = dirs[static_cast<size_t>(j)][i];
    Eigen::VectorXd dv(16);
    for (int i = 0; i < 16; ++i) dv(i) = delta_v[i];

    const Eigen::VectorXd coeffs = D.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(dv);
    const Eigen::VectorXd absorbed = D * coeffs;

    std::array<double, 16> abs_arr{}, perp_arr{};
    for (int i = 0; i < 16; ++i) {
        abs_arr[i] = absorbed(i);
        perp_arr[i] = dv(i) - absorbed(i);
    }
    const GeneralAnsatz absorbable = GeneralAnsatz::from_array(abs_arr);
    const GeneralAnsatz perp = GeneralAnsatz::from_array(perp_arr);

    ResidualFit fit;
    fit.epsilons = scales;

    double ref = 0.0;
    for (int i = 0; i < 16; ++i) ref = std::max({ref, std::abs(a.as_array()[i]),
                                                 std::abs(b.as_array()[i])});
    if (dv.lpNorm<Eigen::Infinity>() <= 1e-14 * (1.0 + ref)) {
        fit.exact = true;
        fit.residuals.assign(scales.size(), 0.0);
        return fit;
    }

    std::mt19937_64 rng(seed);
    for (double eps : scales) {
        if (!(eps > 0.0))
            throw std::invalid_argument("first_order_residual: scales must be positive");
        double acc = 0.0;
        for (int s = 0; s < samples_per_scale; ++s) {
            const GradientEnsembleSample g = sample_euler_consistent(params, state, eps, rng);
            const DissipationTensors r1 = ansatz_evaluate_rest(perp.scaled(eps), state, g.data);
            const DissipationTensors r2 =
                ansatz_evaluate_rest(absorbable.scaled(eps), state, g.noise);
            DissipationTensors sum = r1;
            for (int i = 0; i < 4; ++i) {
                sum.dN[i] += r2.dN[i];
                for (int j = 0; j < 4; ++j) sum.dT[i][j] += r2.dT[i][j];
            }
            acc += frobenius(sum);
        }
        fit.residuals.push_back(acc / samples_per_scale);
    }

    // log-log least-squares slope
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(scales.size());
    for (int i = 0; i < n; ++i) {
        const double x = std::log(scales[static_cast<size_t>(i)]);
        const double y = std::log(std::max(fit.residuals[static_cast<size_t>(i)], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return fit;
}

} // namespace fivefield
