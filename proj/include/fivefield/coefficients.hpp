#ifndef FIVEFIELD_COEFFICIENTS_HPP
#define FIVEFIELD_COEFFICIENTS_HPP

#include <functional>

#include "fivefield/thermo.hpp"

namespace fivefield {

/// Input dissipation coefficients: shear viscosity, bulk viscosity,
/// heat conductivity, diffusion. eta > 0, zeta >= 0, chi > 0; mu >= 0,
/// with mu > 0 required for the full five-field definiteness check.
struct DissipationCoeffs {
    double eta = 0.0;
    double zeta = 0.0;
    double chi = 0.0;
    double mu = 0.0;

    void validate() const;
};

/// Coefficients may also be supplied as functions of the local
/// thermodynamic state; they are evaluated pointwise.
using CoefficientModel = std::function<DissipationCoeffs(const ThermoState&)>;

inline CoefficientModel constant_coefficients(const DissipationCoeffs& c) {
    return [c](const ThermoState&) { return c; };
}

/// The derived coefficient set:
///   sigma       = (4/3) eta + zeta_tilde
///   zeta_tilde  = zeta + zt1 + zt2 + zt3
///   sigma_tilde = (sigma + chi theta) / h
///   zt1 = -(gamma-1)(2-gamma+m/h) chi theta
///   zt2 =  (gamma-1)(1-m/h) sigma
///   zt3 =  (gamma-1)^2 (m^2/theta) mu
/// The sigma <-> zeta_tilde system is implicit; it is solved in closed
/// form via sigma = ((4/3)eta + zeta + zt1 + zt3) / (1-(gamma-1)(1-m/h)).
struct DerivedCoeffs {
    double sigma = 0.0;
    double zeta_tilde = 0.0;
    double sigma_tilde = 0.0;
    double zt1 = 0.0;
    double zt2 = 0.0;
    double zt3 = 0.0;
};

enum class CausalityStatus { SHARPLY_CAUSAL, CAUSAL, ACAUSAL };

const char* to_string(CausalityStatus s);

DerivedCoeffs derive_coefficients(const GasParams& params, const ThermoState& state,
                                  const DissipationCoeffs& c);

/// Algebraic classification: sharply causal iff zeta_tilde = -eta/3
/// (absolute tolerance), causal iff zeta_tilde >= -eta/3, else acausal.
CausalityStatus causality_status(const DissipationCoeffs& c, const DerivedCoeffs& d,
                                 double tol_abs = 1e-10);

/// The unique chi > 0 at which the model becomes sharply causal
/// (zeta_tilde = -eta/3) for given eta, zeta, mu.
double chi_star(const GasParams& params, const ThermoState& state,
                double eta, double zeta, double mu);

} // namespace fivefield

#endif
