#include "fivefield/entropy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fivefield {

EntropyReport entropy_production(const ThermoState& state, const RestFrameGradients& rg,
                                 const DissipationTensors& t) {
    const double theta = state.theta;
    const double inv_t2 = 1.0 / (theta * theta);
    EntropyReport r;
    double q = -inv_t2 * rg.theta_dot * t.dT[0][0];
    for (int i = 0; i < 3; ++i) {
        q -= inv_t2 * (rg.grad_theta[i] + theta * rg.u_dot[i]) * t.dT[i + 1][0];
        for (int j = 0; j < 3; ++j) q -= (1.0 / theta) * rg.grad_u[i][j] * t.dT[i + 1][j + 1];
        q -= rg.grad_psi[i] * t.dN[i + 1];
    }
    q -= rg.psi_dot * t.dN[0];
    r.q = q;
    return r;
}

EntropyReport eckart_entropy_decomposition(const ThermoState& state, const RestFrameGradients& rg,
                                           const DissipationCoeffs& c) {
    const double theta = state.theta;
    EntropyReport r;
    r.has_decomposition = true;
    double heat2 = 0.0, diff2 = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double hi = rg.grad_theta[i] + theta * rg.u_dot[i];
        heat2 += hi * hi;
        diff2 += rg.grad_psi[i] * rg.grad_psi[i];
    }
    const Mat3 su = rg.shear();
    double su2 = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) su2 += su[i][j] * su[i][j];
    const double d = rg.div_u();

    r.heat = c.chi / (theta * theta) * heat2;
    r.shear = c.eta / (2.0 * theta) * su2;
    r.bulk = c.zeta / theta * d * d;
    r.diffusion = c.mu * diff2;
    r.q = r.heat + r.shear + r.bulk + r.diffusion;
    return r;
}

ResidualFit delta_q_order(const GasParams& params, const ThermoState& state,
                          const GeneralAnsatz& base, const ShiftSpec& shift,
                          const std::vector<double>& scales, int samples_per_scale,
                          unsigned seed) {
    if (scales.size() < 2)
        throw std::invalid_argument("delta_q_order: need at least two scales");
    params.validate();

    ResidualFit fit;
    fit.epsilons = scales;
    std::mt19937_64 rng(seed);
    bool any_nonzero = false;
    for (double eps : scales) {
        if (!(eps > 0.0))
            throw std::invalid_argument("delta_q_order: scales must be positive");
        const GeneralAnsatz a0 = base.scaled(eps);
        const GeneralAnsatz a1 = apply_shift(a0, params, state, shift.scaled(eps));
        double acc = 0.0;
        for (int s = 0; s < samples_per_scale; ++s) {
            const GradientEnsembleSample g = sample_euler_consistent(params, state, eps, rng);
            const double q0 =
                entropy_production(state, g.data, ansatz_evaluate_rest(a0, state, g.data)).q;
            const double q1 =
                entropy_production(state, g.data, ansatz_evaluate_rest(a1, state, g.data)).q;
            acc += std::abs(q1 - q0);
        }
        const double mean = acc / samples_per_scale;
        fit.residuals.push_back(mean);
        if (mean > 0.0) any_nonzero = true;
    }
    if (!any_nonzero) {
        fit.exact = true;
        return fit;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(scales.size());
    for (int i = 0; i < n; ++i) {
        const double x = std::log(scales[static_cast<size_t>(i)]);
        const double y = std::log(std::max(fit.residuals[static_cast<size_t>(i)], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return fit;
}

EntropySignReport new_model_entropy_sign(const GasParams& params, const ThermoState& state,
                                         const DissipationCoeffs& c, double eps, int samples,
                                         unsigned seed) {
    params.validate();
    c.validate();
    if (!(eps > 0.0 && eps <= 1e-2))
        throw std::invalid_argument("new_model_entropy_sign: need 0 < eps <= 1e-2");
    const DerivedCoeffs d = derive_coefficients(params, state, c);
    const GeneralAnsatz model = new_theory_ansatz(c, d).scaled(eps);

    EntropySignReport rep;
    rep.eps = eps;
    std::mt19937_64 rng(seed);
    double min_q = std::numeric_limits<double>::infinity();
    double acc = 0.0;
    for (int s = 0; s < samples; ++s) {
        const GradientEnsembleSample g = sample_euler_consistent(params, state, eps, rng);
        const double q =
            entropy_production(state, g.data, ansatz_evaluate_rest(model, state, g.data)).q;
        min_q = std::min(min_q, q);
        acc += q;
    }
    rep.min_q = min_q;
    rep.mean_q = acc / samples;
    rep.min_q_over_eps = min_q / eps;
    rep.min_q_over_eps2 = min_q / (eps * eps);
    return rep;
}

} // namespace fivefield
