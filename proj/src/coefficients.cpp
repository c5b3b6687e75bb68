#include "fivefield/coefficients.hpp"

#include <cmath>
#include <stdexcept>

namespace fivefield {

void DissipationCoeffs::validate() const {
    if (!(eta > 0.0))
        throw std::domain_error("DissipationCoeffs: shear viscosity eta must be positive");
    if (!(zeta >= 0.0))
        throw std::domain_error("DissipationCoeffs: bulk viscosity zeta must be non-negative");
    if (!(chi > 0.0))
        throw std::domain_error("DissipationCoeffs: heat conductivity chi must be positive");
    if (!(mu >= 0.0))
        throw std::domain_error("DissipationCoeffs: diffusion coefficient mu must be non-negative");
}

const char* to_string(CausalityStatus s) {
    switch (s) {
        case CausalityStatus::SHARPLY_CAUSAL: return "SHARPLY_CAUSAL";
        case CausalityStatus::CAUSAL: return "CAUSAL";
        default: return "ACAUSAL";
    }
}

DerivedCoeffs derive_coefficients(const GasParams& params, const ThermoState& state,
                                  const DissipationCoeffs& c) {
    params.validate();
    const double gm1 = params.gamma - 1.0;
    const double m_over_h = params.m / state.h;
    const double k = gm1 * (1.0 - m_over_h);
    const double denom = 1.0 - k;
    if (denom <= 1e-12)
        throw std::domain_error("derive_coefficients: 1-(gamma-1)(1-m/h) not positive");

    DerivedCoeffs d;
    d.zt1 = -gm1 * (2.0 - params.gamma + m_over_h) * c.chi * state.theta;
    d.zt3 = gm1 * gm1 * (params.m * params.m / state.theta) * c.mu;
    d.sigma = ((4.0 / 3.0) * c.eta + c.zeta + d.zt1 + d.zt3) / denom;
    d.zt2 = k * d.sigma;
    d.zeta_tilde = c.zeta + d.zt1 + d.zt2 + d.zt3;
    d.sigma_tilde = (d.sigma + c.chi * state.theta) / state.h;
    return d;
}

CausalityStatus causality_status(const DissipationCoeffs& c, const DerivedCoeffs& d,
                                 double tol_abs) {
    const double excess = d.zeta_tilde + c.eta / 3.0;
    if (std::abs(excess) <= tol_abs) return CausalityStatus::SHARPLY_CAUSAL;
    return excess > 0.0 ? CausalityStatus::CAUSAL : CausalityStatus::ACAUSAL;
}

double chi_star(const GasParams& params, const ThermoState& state,
                double eta, double zeta, double mu) {
    params.validate();
    if (!(eta > 0.0) || !(zeta >= 0.0) || !(mu >= 0.0))
        throw std::domain_error("chi_star: requires eta > 0, zeta >= 0, mu >= 0");
    const double gm1 = params.gamma - 1.0;
    const double m_over_h = params.m / state.h;
    const double zt3 = gm1 * gm1 * (params.m * params.m / state.theta) * mu;
    const double numer = eta / 3.0 + zeta + gm1 * (1.0 - m_over_h) * eta + zt3;
    const double denom = gm1 * (2.0 - params.gamma + m_over_h) * state.theta;
    return numer / denom;
}

} // namespace fivefield
