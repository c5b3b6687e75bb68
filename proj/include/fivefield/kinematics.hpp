#ifndef FIVEFIELD_KINEMATICS_HPP
#define FIVEFIELD_KINEMATICS_HPP

#include <array>
#include <cmath>

#include "fivefield/thermo.hpp"

namespace fivefield {

using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;
using Mat3 = std::array<std::array<double, 3>, 3>;
using Mat4 = std::array<std::array<double, 4>, 4>;

/// Minkowski metric, signature (-,+,+,+). Identical with raised or
/// lowered indices.
inline constexpr double metric(int a, int b) {
    if (a != b) return 0.0;
    return a == 0 ? -1.0 : 1.0;
}

inline double lower0(int a, double v) { return a == 0 ? -v : v; }

inline double dot4(const Vec4& a, const Vec4& b) {
    return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

/// Four-velocity from a 3-velocity, |v| < 1.
Vec4 four_velocity(const Vec3& v3);

/// Rescales u so that u.u = -1, keeping its direction. Solver use.
Vec4 renormalize(const Vec4& u4);

/// Pi^{ab} = g^{ab} + U^a U^b. Rejects non-normalized input (1e-9).
Mat4 projector(const Vec4& u4);

/// Lorentz boost matrix with velocity v3; maps the rest-frame
/// four-velocity (1,0,0,0) onto four_velocity(v3).
Mat4 boost(const Vec3& v3);

Mat4 mat_mul(const Mat4& a, const Mat4& b);
Vec4 mat_vec(const Mat4& a, const Vec4& v);

/// A^{ab} -> L^a_c L^b_d A^{cd}
Mat4 transform_tensor2(const Mat4& lam, const Mat4& t);

/// The five-field state: thermodynamic point plus normalized 4-velocity.
struct FluidState {
    ThermoState thermo;
    Vec4 u4{1.0, 0.0, 0.0, 0.0};

    bool at_rest(double tol = 1e-12) const {
        return std::abs(u4[0] - 1.0) <= tol && std::abs(u4[1]) <= tol
            && std::abs(u4[2]) <= tol && std::abs(u4[3]) <= tol;
    }
    void validate(double tol = 1e-9) const;
};

FluidState make_state(const GasParams& params, double n, double theta,
                      const Vec3& v3 = {0.0, 0.0, 0.0});

/// Lab-frame gradients of the Godunov-Boillat variables:
/// d[beta][c] = d psi^c / d x^beta, where psi^c = U^c/theta for c<4
/// (contravariant components) and psi^4 = psi.
struct GradientField {
    std::array<std::array<double, 5>, 4> d{};

    /// d theta / d x^beta = theta^2 U_c d[beta][c]
    Vec4 grad_theta(const FluidState& s) const;
    /// d U^sigma / d x^beta = theta (delta^sigma_c + U^sigma U_c) d[beta][c];
    /// returned as du[beta][sigma].
    Mat4 grad_u(const FluidState& s) const;
    /// d psi / d x^beta
    Vec4 grad_psi() const;
};

/// Gradients seen in the fluid's local rest frame. grad_u[i][j] is the
/// spatial velocity gradient d u_i / d x^j; the 3-velocity itself
/// vanishes at the point but its gradient is free.
struct RestFrameGradients {
    double theta_dot = 0.0;
    Vec3 grad_theta{0.0, 0.0, 0.0};
    Vec3 u_dot{0.0, 0.0, 0.0};
    Mat3 grad_u{{{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}}};
    double psi_dot = 0.0;
    Vec3 grad_psi{0.0, 0.0, 0.0};

    double div_u() const { return grad_u[0][0] + grad_u[1][1] + grad_u[2][2]; }
    /// Su = grad_u + grad_u^T - (2/3) div_u I
    Mat3 shear() const;
};

/// Builds the lab-frame GradientField whose rest-frame restriction is rg,
/// for a state moving with the given velocity (push-forward).
GradientField gradient_field_from_rest(const FluidState& lab_state,
                                       const RestFrameGradients& rg);

/// Boosts all gradient components into the frame in which the fluid is
/// at rest and extracts the rest-frame quantities.
RestFrameGradients gradients_to_rest_frame(const FluidState& state, const GradientField& g);

/// 3-velocity associated with a normalized four-velocity.
Vec3 three_velocity(const Vec4& u4);

} // namespace fivefield

#endif
