#ifndef FIVEFIELD_HYPERBOLICITY_HPP
#define FIVEFIELD_HYPERBOLICITY_HPP

#include <array>
#include <stdexcept>
#include <vector>

#include "fivefield/dissipation.hpp"

namespace fivefield {

/// Raised when mu <= 0: the fifth row of the coefficient tensor
/// degenerates and the five-field definiteness check is unavailable.
struct DegenerateDiffusion : std::domain_error {
    using std::domain_error::domain_error;
};

using Mat5 = std::array<std::array<double, 5>, 5>;

/// Definiteness report for the contracted coefficient matrices:
/// time_matrix = B H H (H = -U_beta) must be negative definite,
/// space_matrix = B N N positive definite for spatial unit N.
struct HkmReport {
    Mat5 time_matrix{};
    Mat5 space_matrix{};
    std::array<double, 5> time_eigs{};
    std::array<double, 5> space_eigs{};
    bool time_negative_definite = false;
    bool space_positive_definite = false;

    bool verdict() const { return time_negative_definite && space_positive_definite; }
};

HkmReport hkm_check(const BTensor& b, const FluidState& state, const DissipationCoeffs& c);

/// Real characteristic speeds of the second-order principal symbol
/// along a spatial unit direction, rest frame.
struct SpeedSpectrum {
    Vec3 direction{1.0, 0.0, 0.0};
    std::vector<double> speeds; // sorted ascending

    double max_abs() const;
    /// Smallest |tau| over the spectrum (the slowest characteristic).
    double min_abs() const;
};

SpeedSpectrum signal_speeds(const BTensor& b, const FluidState& state, const Vec3& direction);

/// End-to-end certificate: derived coefficients, algebraic causality
/// class, definiteness verdict, and the speed spectrum over a
/// direction sample, with consistency between the algebraic and
/// spectral classifications.
struct CausalityCertificate {
    DerivedCoeffs derived;
    CausalityStatus algebraic = CausalityStatus::ACAUSAL;
    CausalityStatus spectral = CausalityStatus::ACAUSAL;
    HkmReport hkm;
    double max_speed = 0.0;
    double min_speed = 0.0;
    bool consistent = false;
};

CausalityCertificate causality_certificate(const GasParams& params, const FluidState& state,
                                           const DissipationCoeffs& c,
                                           int n_directions = 20, unsigned seed = 12345);

} // namespace fivefield

#endif
