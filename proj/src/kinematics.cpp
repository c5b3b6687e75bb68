#include "fivefield/kinematics.hpp"

#include <stdexcept>

namespace fivefield {

Vec4 four_velocity(const Vec3& v3) {
    const double v2 = v3[0] * v3[0] + v3[1] * v3[1] + v3[2] * v3[2];
    if (!(v2 < 1.0))
        throw std::domain_error("four_velocity: superluminal 3-velocity");
    const double gm = 1.0 / std::sqrt(1.0 - v2);
    return {gm, gm * v3[0], gm * v3[1], gm * v3[2]};
}

Vec4 renormalize(const Vec4& u4) {
    const double n2 = -dot4(u4, u4);
    if (!(n2 > 0.0) || !(u4[0] > 0.0))
        throw std::domain_error("renormalize: vector is not future-directed timelike");
    const double inv = 1.0 / std::sqrt(n2);
    return {u4[0] * inv, u4[1] * inv, u4[2] * inv, u4[3] * inv};
}

Vec3 three_velocity(const Vec4& u4) {
    return {u4[1] / u4[0], u4[2] / u4[0], u4[3] / u4[0]};
}

static void require_normalized(const Vec4& u4, double tol) {
    if (std::abs(dot4(u4, u4) + 1.0) > tol || !(u4[0] > 0.0))
        throw std::domain_error("four-velocity is not normalized future-directed");
}

Mat4 projector(const Vec4& u4) {
    require_normalized(u4, 1e-9);
    Mat4 pi{};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            pi[a][b] = metric(a, b) + u4[a] * u4[b];
    return pi;
}

Mat4 boost(const Vec3& v3) {
    const double v2 = v3[0] * v3[0] + v3[1] * v3[1] + v3[2] * v3[2];
    if (!(v2 < 1.0))
        throw std::domain_error("boost: superluminal 3-velocity");
    const double gm = 1.0 / std::sqrt(1.0 - v2);
    Mat4 lam{};
    lam[0][0] = gm;
    for (int i = 0; i < 3; ++i) {
        lam[0][i + 1] = lam[i + 1][0] = gm * v3[i];
        for (int j = 0; j < 3; ++j) {
            const double proj = (v2 > 0.0) ? (gm - 1.0) * v3[i] * v3[j] / v2 : 0.0;
            lam[i + 1][j + 1] = (i == j ? 1.0 : 0.0) + proj;
        }
    }
    return lam;
}

Mat4 mat_mul(const Mat4& a, const Mat4& b) {
    Mat4 c{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const double aik = a[i][k];
            if (aik == 0.0) continue;
            for (int j = 0; j < 4; ++j) c[i][j] += aik * b[k][j];
        }
    return c;
}

Vec4 mat_vec(const Mat4& a, const Vec4& v) {
    Vec4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i] += a[i][j] * v[j];
    return r;
}

Mat4 transform_tensor2(const Mat4& lam, const Mat4& t) {
    Mat4 tmp{};
    for (int a = 0; a < 4; ++a)
        for (int d = 0; d < 4; ++d)
            for (int c = 0; c < 4; ++c) tmp[a][d] += lam[a][c] * t[c][d];
    Mat4 out{};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int d = 0; d < 4; ++d) out[a][b] += tmp[a][d] * lam[b][d];
    return out;
}

void FluidState::validate(double tol) const {
    require_normalized(u4, tol);
    if (!(thermo.n > 0.0 && thermo.theta > 0.0 && thermo.p > 0.0))
        throw std::domain_error("FluidState: non-positive thermodynamic state");
}

FluidState make_state(const GasParams& params, double n, double theta, const Vec3& v3) {
    return FluidState{eos_from_n_theta(params, n, theta), four_velocity(v3)};
}

Vec4 GradientField::grad_theta(const FluidState& s) const {
    const double th2 = s.thermo.theta * s.thermo.theta;
    Vec4 g{};
    for (int b = 0; b < 4; ++b) {
        double acc = 0.0;
        for (int c = 0; c < 4; ++c) acc += lower0(c, s.u4[c]) * d[b][c];
        g[b] = th2 * acc;
    }
    return g;
}

Mat4 GradientField::grad_u(const FluidState& s) const {
    const double th = s.thermo.theta;
    Mat4 du{};
    for (int b = 0; b < 4; ++b) {
        double udotd = 0.0;
        for (int c = 0; c < 4; ++c) udotd += lower0(c, s.u4[c]) * d[b][c];
        for (int sg = 0; sg < 4; ++sg) du[b][sg] = th * (d[b][sg] + s.u4[sg] * udotd);
    }
    return du;
}

Vec4 GradientField::grad_psi() const {
    return {d[0][4], d[1][4], d[2][4], d[3][4]};
}

Mat3 RestFrameGradients::shear() const {
    const double dv = div_u();
    Mat3 su{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            su[i][j] = grad_u[i][j] + grad_u[j][i] - (i == j ? 2.0 / 3.0 * dv : 0.0);
    return su;
}

// Rest-frame GradientField from rest-frame physical gradients:
// d[delta][c] = (dU^c/dx^delta)/theta - U^c (dtheta/dx^delta)/theta^2.
static GradientField rest_gradient_field(const ThermoState& th, const RestFrameGradients& rg) {
    const double theta = th.theta;
    GradientField g;
    // dU^0/dx^delta = 0 at the point (normalization), dU^i/dx^0 = u_dot,
    // dU^i/dx^j = grad_u[i][j].
    Vec4 dtheta{rg.theta_dot, rg.grad_theta[0], rg.grad_theta[1], rg.grad_theta[2]};
    Mat4 du{};
    for (int i = 0; i < 3; ++i) {
        du[0][i + 1] = rg.u_dot[i];
        for (int j = 0; j < 3; ++j) du[j + 1][i + 1] = rg.grad_u[i][j];
    }
    const Vec4 u_rest{1.0, 0.0, 0.0, 0.0};
    for (int dl = 0; dl < 4; ++dl) {
        for (int c = 0; c < 4; ++c)
            g.d[dl][c] = du[dl][c] / theta - u_rest[c] * dtheta[dl] / (theta * theta);
        g.d[dl][4] = (dl == 0) ? rg.psi_dot : rg.grad_psi[dl - 1];
    }
    return g;
}

// Transforms a gradient field between frames: d'[delta][c] =
// P^eps_delta Q^c_gamma d[eps][gamma], where P acts on the derivative
// index and Q = P^{-1} on the component index.
static GradientField transform_gradients(const Mat4& p, const Mat4& q, const GradientField& g) {
    GradientField out;
    for (int dl = 0; dl < 4; ++dl) {
        for (int c = 0; c < 4; ++c) {
            double acc = 0.0;
            for (int e = 0; e < 4; ++e)
                for (int gm = 0; gm < 4; ++gm) acc += p[e][dl] * q[c][gm] * g.d[e][gm];
            out.d[dl][c] = acc;
        }
        double acc = 0.0;
        for (int e = 0; e < 4; ++e) acc += p[e][dl] * g.d[e][4];
        out.d[dl][4] = acc;
    }
    return out;
}

GradientField gradient_field_from_rest(const FluidState& lab_state, const RestFrameGradients& rg) {
    lab_state.validate();
    const GradientField grest = rest_gradient_field(lab_state.thermo, rg);
    const Vec3 v = three_velocity(lab_state.u4);
    const Mat4 lam = boost(v);
    Vec3 mv{-v[0], -v[1], -v[2]};
    const Mat4 lam_inv = boost(mv);
    // x_lab = L x_rest: d_lab[delta][c] = (L^{-1})^eps_delta L^c_gamma d_rest[eps][gamma]
    return transform_gradients(lam_inv, lam, grest);
}

RestFrameGradients gradients_to_rest_frame(const FluidState& state, const GradientField& g) {
    state.validate();
    const Vec3 v = three_velocity(state.u4);
    const Mat4 lam = boost(v);
    Vec3 mv{-v[0], -v[1], -v[2]};
    const Mat4 lam_inv = boost(mv);
    const GradientField gr = transform_gradients(lam, lam_inv, g);

    const double theta = state.thermo.theta;
    RestFrameGradients rg;
    rg.theta_dot = -theta * theta * gr.d[0][0];
    rg.psi_dot = gr.d[0][4];
    for (int j = 0; j < 3; ++j) {
        rg.grad_theta[j] = -theta * theta * gr.d[j + 1][0];
        rg.grad_psi[j] = gr.d[j + 1][4];
        rg.u_dot[j] = theta * gr.d[0][j + 1];
        for (int i = 0; i < 3; ++i) rg.grad_u[i][j] = theta * gr.d[j + 1][i + 1];
    }
    return rg;
}

} // namespace fivefield
