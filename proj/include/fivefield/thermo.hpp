#ifndef FIVEFIELD_THERMO_HPP
#define FIVEFIELD_THERMO_HPP

#include <stdexcept>

namespace fivefield {

/// Polytropic gas parameters, geometric units (c = k_B = 1).
/// m is the particle rest mass in energy units, gamma the adiabatic
/// exponent, s0 an additive entropy constant (a gauge; physical outputs
/// other than psi must not depend on it).
struct GasParams {
    double m = 1.0;
    double gamma = 4.0 / 3.0;
    double s0 = 0.0;

    void validate() const {
        if (!(m > 0.0))
            throw std::domain_error("GasParams: rest mass m must be positive");
        if (!(gamma > 1.0 && gamma < 2.0))
            throw std::domain_error("GasParams: adiabatic exponent must satisfy 1 < gamma < 2");
    }
};

/// Complete local thermodynamic point of the ideal polytropic gas:
///   p = n theta,  rho = m n + p/(gamma-1),  h = (rho+p)/n,
///   s = ln(theta)/(gamma-1) - ln(n) + s0,  psi = h/theta - s.
struct ThermoState {
    double n = 0.0;      ///< particle number density
    double theta = 0.0;  ///< temperature
    double rho = 0.0;    ///< energy density
    double p = 0.0;      ///< pressure
    double h = 0.0;      ///< specific enthalpy
    double s = 0.0;      ///< specific entropy
    double psi = 0.0;    ///< thermal potential h/theta - s

    /// Chemical potential g = h - theta s.
    double chemical_potential() const { return h - theta * s; }
};

/// 2x2 matrix of thermodynamic derivatives at fixed (theta, psi):
///   a = [[rho_theta, rho_psi], [n_theta, n_psi]].
/// Weighted symmetry: a[0][1] = theta^2 a[1][0].
struct SusceptibilityMatrix {
    double a[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    double p_theta = 0.0;
    double p_psi = 0.0;

    double det() const { return a[0][0] * a[1][1] - a[0][1] * a[1][0]; }
};

/// Ideal-fluid rest-frame rates induced by an expansion scalar div_u,
/// i.e. the leading-order Euler relations that trade time derivatives
/// for spatial ones.
struct EulerRates {
    double theta_dot = 0.0;
    double n_dot = 0.0;
    double p_dot = 0.0;
    double rho_dot = 0.0;
    double psi_dot = 0.0;
};

ThermoState eos_from_n_theta(const GasParams& params, double n, double theta);

/// Inverts eos_from_n_theta in its scalar part: recovers the state from
/// the Godunov-Boillat scalars (theta, psi).
ThermoState eos_from_godunov(const GasParams& params, double theta, double psi);

/// Closed-form ideal-gas pressure as a function of (theta, psi).
double pressure_theta_psi(const GasParams& params, double theta, double psi);

SusceptibilityMatrix susceptibility(const GasParams& params, const ThermoState& state);

EulerRates euler_rates(const GasParams& params, const ThermoState& state, double div_u);

} // namespace fivefield

#endif
