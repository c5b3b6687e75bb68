#ifndef FIVEFIELD_DISSIPATION_HPP
#define FIVEFIELD_DISSIPATION_HPP

#include <array>

#include "fivefield/coefficients.hpp"
#include "fivefield/kinematics.hpp"

namespace fivefield {

/// Ideal energy-momentum tensor and particle current:
/// T^{ab} = (rho+p) U^a U^b + p g^{ab}, N^b = n U^b.
struct IdealTensors {
    Mat4 T{};
    Vec4 N{};
};

IdealTensors ideal_tensors(const FluidState& state);

/// First-order dissipative corrections DeltaT^{ab} (symmetric) and
/// DeltaN^b.
struct DissipationTensors {
    Mat4 dT{};
    Vec4 dN{};
};

/// The 16-coefficient equivariant ansatz for a general first-order
/// dissipation tensor pair:
///   -DeltaT = U U P + (Pi U + U Pi) Q + Pi R + Pi Pi S,
///   -DeltaN = U Phat + Pi Qhat,
/// with scalar rows P, R, Phat over the basis (Udtheta, divU, Udpsi) and
/// vector rows Q, Qhat over (dtheta, Udot, dpsi); S is the shear term.
struct GeneralAnsatz {
    // P row
    double tau = 0.0, sigma_c = 0.0, iota_check = 0.0;
    // Q row
    double nu = 0.0, varsigma_check = 0.0, upsilon = 0.0;
    // R row
    double omega = 0.0, zeta_tilde = 0.0, iota_tilde = 0.0;
    // S
    double eta = 0.0;
    // Phat row
    double tau_hat = 0.0, sigma_hat = 0.0, iota_hat = 0.0;
    // Qhat row
    double nu_hat = 0.0, varsigma_hat = 0.0, upsilon_hat = 0.0;

    std::array<double, 16> as_array() const;
    static GeneralAnsatz from_array(const std::array<double, 16>& v);

    GeneralAnsatz& operator+=(const GeneralAnsatz& o);
    GeneralAnsatz operator-(const GeneralAnsatz& o) const;
    GeneralAnsatz scaled(double f) const;
    double max_abs_diff(const GeneralAnsatz& o) const;
};

/// The proposed model as an ansatz instance: nu = -tau = -omega = chi,
/// sigma_c = -varsigma_check = sigma, sigma_hat = -varsigma_hat =
/// sigma_tilde, upsilon_hat = -iota_hat = mu, everything else zero.
GeneralAnsatz new_theory_ansatz(const DissipationCoeffs& c, const DerivedCoeffs& d);

/// Direct covariant assembly of the proposed DeltaT, DeltaN.
DissipationTensors delta_tensors_covariant(const FluidState& state, const GradientField& g,
                                           const DerivedCoeffs& d, const DissipationCoeffs& c);

/// The rest-frame block matrices of the proposed model; requires a
/// state at rest.
DissipationTensors rest_frame_matrices(const FluidState& state, const RestFrameGradients& rg,
                                       const DerivedCoeffs& d, const DissipationCoeffs& c);

/// Evaluates an arbitrary ansatz covariantly.
DissipationTensors ansatz_evaluate(const GeneralAnsatz& a, const FluidState& state,
                                   const GradientField& g);

/// Evaluates an arbitrary ansatz in the rest frame.
DissipationTensors ansatz_evaluate_rest(const GeneralAnsatz& a, const ThermoState& th,
                                        const RestFrameGradients& rg);

/// Godunov-Boillat variables (U^0/theta, .., U^3/theta, psi).
std::array<double, 5> godunov_vars(const FluidState& state);

/// Recovers the fluid state from a Godunov-Boillat 5-vector; throws on
/// degenerate (non-timelike) vectors.
FluidState state_from_godunov(const GasParams& params, const std::array<double, 5>& v);

/// Second-order coefficient array B^{a beta c delta}: the contraction
/// B^{a b c d} d2 psi_c / dx^b dx^d (psi_c covariant for c < 4) is the
/// second-order part of -d_b (DeltaT^{ab}), -d_b (DeltaN^b).
struct BTensor {
    // b[a][beta][c][delta]
    std::array<std::array<std::array<std::array<double, 4>, 5>, 4>, 5> b{};
};

BTensor assemble_b_tensor(const FluidState& state, const DerivedCoeffs& d,
                          const DissipationCoeffs& c);

} // namespace fivefield

#endif
