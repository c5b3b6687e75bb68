#ifndef FIVEFIELD_ENTROPY_HPP
#define FIVEFIELD_ENTROPY_HPP

#include "fivefield/equivalence.hpp"

namespace fivefield {

/// Entropy production rate per volume and time; the named quadratic
/// decomposition is filled only for the classical heat/shear/bulk/
/// diffusion closed form.
struct EntropyReport {
    double q = 0.0;
    bool has_decomposition = false;
    double heat = 0.0;
    double shear = 0.0;
    double bulk = 0.0;
    double diffusion = 0.0;
};

/// Rest-frame entropy production of an arbitrary dissipation-tensor
/// pair:
///   q = -(1/theta^2) theta_dot dT00
///       -(1/theta^2) (grad_theta + theta u_dot) . dT^{i0}
///       -(1/theta) (du_i/dx^j) dT^{ij}
///       - psi_dot dN0 - grad_psi . dN^j.
EntropyReport entropy_production(const ThermoState& state, const RestFrameGradients& rg,
                                 const DissipationTensors& t);

/// Closed quadratic form of the classical tensor:
///   (chi/theta^2)|grad_theta + theta u_dot|^2 + (eta/2theta)|Su|^2
///   + (zeta/theta)(div u)^2 + mu |grad_psi|^2,
/// each term non-negative.
EntropyReport eckart_entropy_decomposition(const ThermoState& state, const RestFrameGradients& rg,
                                           const DissipationCoeffs& c);

/// Scaling of the entropy-production change |delta q| induced by an
/// equivalence shift: base record and shift payload are both scaled by
/// each epsilon and q is compared before/after on Euler-consistent
/// gradient ensembles. Slope ~2 for compatible shifts.
ResidualFit delta_q_order(const GasParams& params, const ThermoState& state,
                          const GeneralAnsatz& base, const ShiftSpec& shift,
                          const std::vector<double>& scales, int samples_per_scale = 200,
                          unsigned seed = 77);

/// Empirical leading-order sign check of the proposed model's entropy
/// production at coefficient scale eps.
struct EntropySignReport {
    double eps = 0.0;
    double min_q = 0.0;
    double mean_q = 0.0;
    double min_q_over_eps = 0.0;
    double min_q_over_eps2 = 0.0; ///< envelope constant candidate
};

EntropySignReport new_model_entropy_sign(const GasParams& params, const ThermoState& state,
                                         const DissipationCoeffs& c, double eps, int samples,
                                         unsigned seed = 99);

} // namespace fivefield

#endif
