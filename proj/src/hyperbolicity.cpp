#include "fivefield/hyperbolicity.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace fivefield {

namespace {

using Matrix5d = Eigen::Matrix<double, 5, 5>;

Mat5 contract(const BTensor& b, const Vec4& xi1, const Vec4& xi2) {
    Mat5 m{};
    for (int a = 0; a < 5; ++a)
        for (int c = 0; c < 5; ++c) {
            double acc = 0.0;
            for (int be = 0; be < 4; ++be) {
                if (xi1[be] == 0.0) continue;
                for (int dl = 0; dl < 4; ++dl)
                    acc += b.b[a][be][c][dl] * xi1[be] * xi2[dl];
            }
            m[a][c] = acc;
        }
    return m;
}

Matrix5d to_eigen(const Mat5& m) {
    Matrix5d e;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) e(i, j) = m[i][j];
    return e;
}

std::array<double, 5> sym_eigenvalues(const Mat5& m) {
    Matrix5d e = to_eigen(m);
    Eigen::SelfAdjointEigenSolver<Matrix5d> es(0.5 * (e + e.transpose()));
    std::array<double, 5> out{};
    for (int i = 0; i < 5; ++i) out[i] = es.eigenvalues()(i);
    return out;
}

Vec4 lowered(const Vec4& v) {
    return {-v[0], v[1], v[2], v[3]};
}

// Covariant spatial unit covector orthogonal to H = -U_beta, obtained by
// projecting the embedded 3-direction and normalizing.
Vec4 spatial_covector(const FluidState& state, const Vec3& dir) {
    const Mat4 pi = projector(state.u4);
    // raise dir: candidate contravariant vector (0, dir), project with Pi,
    // then lower.
    Vec4 cand{0.0, dir[0], dir[1], dir[2]};
    Vec4 proj{};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) proj[a] += pi[a][b] * lower0(b, cand[b]);
    const double norm2 = dot4(proj, proj);
    if (!(norm2 > 1e-28))
        throw std::domain_error("signal_speeds: degenerate spatial direction");
    const double inv = 1.0 / std::sqrt(norm2);
    return {lower0(0, proj[0]) * inv, proj[1] * inv, proj[2] * inv, proj[3] * inv};
}

} // namespace

HkmReport hkm_check(const BTensor& b, const FluidState& state, const DissipationCoeffs& c) {
    state.validate();
    if (!(c.mu > 0.0))
        throw DegenerateDiffusion(
            "hkm_check: mu <= 0 degenerates the diffusion row; the five-field "
            "definiteness conditions require mu > 0");

    const Vec4 h = {state.u4[0], -state.u4[1], -state.u4[2], -state.u4[3]}; // -U_beta
    HkmReport r;
    r.time_matrix = contract(b, h, h);
    r.time_eigs = sym_eigenvalues(r.time_matrix);
    r.time_negative_definite = true;
    for (double ev : r.time_eigs)
        if (!(ev < -1e-12)) r.time_negative_definite = false;

    // Isotropy reduces the all-N quantifier to a basis plus a rotation
    // spot-check.
    const Vec3 dirs[5] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1},
                          {0.6, 0.48, 0.64}, {-0.2672612419124244, 0.5345224838248488,
                                              0.8017837257372732}};
    r.space_positive_definite = true;
    bool first = true;
    for (const auto& dir : dirs) {
        const Vec4 n = spatial_covector(state, dir);
        const Mat5 sm = contract(b, n, n);
        const auto eigs = sym_eigenvalues(sm);
        bool pos = true;
        for (double ev : eigs)
            if (!(ev > 1e-12)) pos = false;
        if (!pos) r.space_positive_definite = false;
        if (first || eigs[0] < r.space_eigs[0]) {
            r.space_matrix = sm;
            r.space_eigs = eigs;
            first = false;
        }
    }
    return r;
}

double SpeedSpectrum::max_abs() const {
    double m = 0.0;
    for (double s : speeds) m = std::max(m, std::abs(s));
    return m;
}

double SpeedSpectrum::min_abs() const {
    double m = std::numeric_limits<double>::infinity();
    for (double s : speeds) m = std::min(m, std::abs(s));
    return m;
}

SpeedSpectrum signal_speeds(const BTensor& b, const FluidState& state, const Vec3& direction) {
    state.validate();
    const Vec4 h = lowered({-state.u4[0], -state.u4[1], -state.u4[2], -state.u4[3]});
    const Vec4 n = spatial_covector(state, direction);

    // xi(tau) = -tau H + N: quadratic eigenvalue problem
    // det(tau^2 A2 + tau A1 + A0) = 0 with A2 = B H H, A1 = -(B H N + B N H),
    // A0 = B N N, solved by companion linearization.
    const Mat5 a2 = contract(b, h, h);
    const Mat5 hn = contract(b, h, n);
    const Mat5 nh = contract(b, n, h);
    const Mat5 a0 = contract(b, n, n);

    Matrix5d A2 = to_eigen(a2);
    Matrix5d A1 = -(to_eigen(hn) + to_eigen(nh));
    Matrix5d A0 = to_eigen(a0);

    Eigen::FullPivLU<Matrix5d> lu(A2);
    if (!lu.isInvertible())
        throw std::runtime_error("signal_speeds: singular time matrix (need chi, sigma, mu > 0)");

    Eigen::Matrix<double, 10, 10> comp = Eigen::Matrix<double, 10, 10>::Zero();
    comp.block<5, 5>(0, 5) = Matrix5d::Identity();
    comp.block<5, 5>(5, 0) = -lu.solve(A0);
    comp.block<5, 5>(5, 5) = -lu.solve(A1);

    Eigen::EigenSolver<Eigen::Matrix<double, 10, 10>> es(comp);
    SpeedSpectrum spec;
    spec.direction = direction;
    for (int i = 0; i < 10; ++i) {
        const auto ev = es.eigenvalues()(i);
        if (std::abs(ev.imag()) <= 1e-8 * (1.0 + std::abs(ev.real())))
            spec.speeds.push_back(ev.real());
    }
    if (spec.speeds.size() != 10)
        throw std::runtime_error("signal_speeds: expected 10 real characteristic roots, got "
                                 + std::to_string(spec.speeds.size()));
    std::sort(spec.speeds.begin(), spec.speeds.end());
    return spec;
}

CausalityCertificate causality_certificate(const GasParams& params, const FluidState& state,
                                           const DissipationCoeffs& c,
                                           int n_directions, unsigned seed) {
    CausalityCertificate cert;
    cert.derived = derive_coefficients(params, state.thermo, c);
    cert.algebraic = causality_status(c, cert.derived);

    const BTensor b = assemble_b_tensor(state, cert.derived, c);
    cert.hkm = hkm_check(b, state, c);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double max_speed = 0.0;
    double min_speed = std::numeric_limits<double>::infinity();
    auto probe = [&](const Vec3& dir) {
        const SpeedSpectrum s = signal_speeds(b, state, dir);
        max_speed = std::max(max_speed, s.max_abs());
        min_speed = std::min(min_speed, s.min_abs());
    };
    probe({1, 0, 0});
    probe({0, 1, 0});
    probe({0, 0, 1});
    for (int k = 3; k < n_directions; ++k) {
        Vec3 d{gauss(rng), gauss(rng), gauss(rng)};
        const double nrm = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
        if (nrm < 1e-6) continue;
        probe({d[0] / nrm, d[1] / nrm, d[2] / nrm});
    }
    cert.max_speed = max_speed;
    cert.min_speed = min_speed;

    // Spectral classification. The heat and diffusion characteristics sit
    // exactly on the light cone for every admissible configuration, so the
    // causal/sharply-causal distinction shows up in the slowest speeds.
    const double tol = 1e-6;
    if (max_speed > 1.0 + tol)
        cert.spectral = CausalityStatus::ACAUSAL;
    else if (min_speed >= 1.0 - tol)
        cert.spectral = CausalityStatus::SHARPLY_CAUSAL;
    else
        cert.spectral = CausalityStatus::CAUSAL;
    cert.consistent = (cert.spectral == cert.algebraic);
    return cert;
}

} // namespace fivefield
