#include "fivefield/thermo.hpp"

#include <cmath>

namespace fivefield {

ThermoState eos_from_n_theta(const GasParams& params, double n, double theta) {
    params.validate();
    if (!(n > 0.0))
        throw std::domain_error("eos_from_n_theta: density n must be positive");
    if (!(theta > 0.0))
        throw std::domain_error("eos_from_n_theta: temperature theta must be positive");

    const double gm1 = params.gamma - 1.0;
    ThermoState st;
    st.n = n;
    st.theta = theta;
    st.p = n * theta;
    st.rho = params.m * n + st.p / gm1;
    st.h = params.m + params.gamma * theta / gm1;
    st.s = std::log(theta) / gm1 - std::log(n) + params.s0;
    st.psi = st.h / theta - st.s;
    return st;
}

ThermoState eos_from_godunov(const GasParams& params, double theta, double psi) {
    params.validate();
    if (!(theta > 0.0))
        throw std::domain_error("eos_from_godunov: temperature theta must be positive");

    const double gm1 = params.gamma - 1.0;
    // psi = m/theta + gamma/(gamma-1) - ln(theta)/(gamma-1) + ln n - s0
    const double log_n = psi + params.s0 - params.m / theta - params.gamma / gm1
                         + std::log(theta) / gm1;
    return eos_from_n_theta(params, std::exp(log_n), theta);
}

double pressure_theta_psi(const GasParams& params, double theta, double psi) {
    return eos_from_godunov(params, theta, psi).p;
}

SusceptibilityMatrix susceptibility(const GasParams& params, const ThermoState& state) {
    params.validate();
    const double gm1 = params.gamma - 1.0;
    const double th = state.theta;
    const double p = state.p;

    // p(theta,psi) = theta^{gamma/(gamma-1)} exp(psi + s0 - m/theta - gamma/(gamma-1)),
    // so d(ln p)/dtheta = a with
    const double a = params.gamma / (gm1 * th) + params.m / (th * th);
    const double a_prime = -params.gamma / (gm1 * th * th) - 2.0 * params.m / (th * th * th);

    const double p_theta = p * a;
    const double p_thetatheta = p * (a * a + a_prime);
    const double p_thetapsi = p_theta; // p is exponential in psi
    const double p_psi = p;
    const double p_psipsi = p;

    SusceptibilityMatrix A;
    A.p_theta = p_theta;
    A.p_psi = p_psi;
    A.a[0][0] = th * p_thetatheta;
    A.a[0][1] = th * p_thetapsi - p_psi;
    A.a[1][0] = (th * p_thetapsi - p_psi) / (th * th);
    A.a[1][1] = p_psipsi / th;
    return A;
}

EulerRates euler_rates(const GasParams& params, const ThermoState& state, double div_u) {
    const double gm1 = params.gamma - 1.0;
    EulerRates r;
    r.n_dot = -state.n * div_u;
    r.rho_dot = -(state.rho + state.p) * div_u;
    r.p_dot = -params.gamma * state.p * div_u;
    r.theta_dot = -gm1 * state.theta * div_u;
    r.psi_dot = gm1 * (params.m / state.theta) * div_u;
    return r;
}

} // namespace fivefield
