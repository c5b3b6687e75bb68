#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fivefield/entropy.hpp"

using namespace fivefield;

namespace {

const GasParams kParams{1.0, 4.0 / 3.0, 0.0};

RestFrameGradients random_gradients(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    RestFrameGradients rg;
    rg.theta_dot = uni(rng);
    rg.psi_dot = uni(rng);
    for (int i = 0; i < 3; ++i) {
        rg.grad_theta[i] = uni(rng);
        rg.grad_psi[i] = uni(rng);
        rg.u_dot[i] = uni(rng);
        for (int j = 0; j < 3; ++j) rg.grad_u[i][j] = uni(rng);
    }
    return rg;
}

} // namespace

TEST_CASE("entropy production contraction") {
    const ThermoState st = eos_from_n_theta(kParams, 1.0, 1.0);
    SUBCASE("vanishes without gradients") {
        std::mt19937_64 rng(87);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        DissipationTensors t;
        for (int i = 0; i < 4; ++i) {
            t.dN[i] = uni(rng);
            for (int j = 0; j < 4; ++j) t.dT[i][j] = uni(rng);
        }
        CHECK(entropy_production(st, RestFrameGradients{}, t).q == 0.0);
    }
    SUBCASE("reference fixture") {
        const DissipationCoeffs c{1.0, 0.0, 1.0, 1.0};
        RestFrameGradients rg;
        rg.grad_theta = {0.01, 0.0, 0.0};
        rg.grad_psi = {0.02, 0.0, 0.0};
        const EntropyReport closed = eckart_entropy_decomposition(st, rg, c);
        CHECK(closed.q == doctest::Approx(5e-4).epsilon(1e-12));
        CHECK(closed.heat == doctest::Approx(1e-4).epsilon(1e-12));
        CHECK(closed.diffusion == doctest::Approx(4e-4).epsilon(1e-12));
        CHECK(closed.shear == 0.0);
        CHECK(closed.bulk == 0.0);
        const GeneralAnsatz e = eckart_ansatz(kParams, st, c);
        const EntropyReport direct =
            entropy_production(st, rg, ansatz_evaluate_rest(e, st, rg));
        CHECK(direct.q == doctest::Approx(5e-4).epsilon(1e-12));
    }
    SUBCASE("bilinear in gradients and tensors") {
        std::mt19937_64 rng(89);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        const RestFrameGradients rg = random_gradients(rng);
        DissipationTensors t1, t2, ts;
        for (int i = 0; i < 4; ++i) {
            t1.dN[i] = uni(rng);
            t2.dN[i] = uni(rng);
            ts.dN[i] = t1.dN[i] + 3.0 * t2.dN[i];
            for (int j = 0; j < 4; ++j) {
                t1.dT[i][j] = uni(rng);
                t2.dT[i][j] = uni(rng);
                ts.dT[i][j] = t1.dT[i][j] + 3.0 * t2.dT[i][j];
            }
        }
        const double q1 = entropy_production(st, rg, t1).q;
        const double q2 = entropy_production(st, rg, t2).q;
        const double qs = entropy_production(st, rg, ts).q;
        CHECK(qs == doctest::Approx(q1 + 3.0 * q2).epsilon(1e-12));
    }
}

TEST_CASE("classical record is dissipative") {
    std::mt19937_64 rng(97);
    std::uniform_real_distribution<double> uni(0.2, 2.0);
    for (int k = 0; k < 10000; ++k) {
        const ThermoState st = eos_from_n_theta(kParams, uni(rng), uni(rng));
        const DissipationCoeffs c{uni(rng), uni(rng), uni(rng), uni(rng)};
        const RestFrameGradients rg = random_gradients(rng);
        const EntropyReport closed = eckart_entropy_decomposition(st, rg, c);
        CHECK(closed.q >= 0.0);
        CHECK(closed.heat >= 0.0);
        CHECK(closed.shear >= 0.0);
        CHECK(closed.bulk >= 0.0);
        CHECK(closed.diffusion >= 0.0);
        const GeneralAnsatz e = eckart_ansatz(kParams, st, c);
        const EntropyReport direct =
            entropy_production(st, rg, ansatz_evaluate_rest(e, st, rg));
        CHECK(direct.q == doctest::Approx(closed.q).epsilon(1e-12));
    }
}

TEST_CASE("entropy change under equivalence shifts") {
    const ThermoState st = eos_from_n_theta(kParams, 1.0, 1.0);
    const DissipationCoeffs c{1.0, 0.3, 1.2, 0.4};
    const GeneralAnsatz base = eckart_ansatz(kParams, st, c);
    const std::vector<double> scales{1e-1, 1e-2, 1e-3, 1e-4};
    SUBCASE("velocity shift is second order") {
        ShiftSpec s;
        s.kind = ShiftSpec::VELOCITY;
        s.delta_velocity = {0.0, -c.chi * st.theta, 0.0};
        const ResidualFit fit = delta_q_order(kParams, st, base, s, scales);
        CHECK_FALSE(fit.exact);
        CHECK(fit.slope == doctest::Approx(2.0).epsilon(0.06));
    }
    SUBCASE("thermodynamic shift is second order") {
        ShiftSpec s;
        s.kind = ShiftSpec::THERMODYNAMIC;
        s.delta_theta = {0.3, -0.2, 0.1};
        s.delta_psi = {0.1, 0.2, -0.3};
        const ResidualFit fit = delta_q_order(kParams, st, base, s, scales);
        CHECK_FALSE(fit.exact);
        CHECK(fit.slope == doctest::Approx(2.0).epsilon(0.06));
    }
    SUBCASE("gradient reexpression is second order") {
        ShiftSpec s;
        s.kind = ShiftSpec::GRADIENT_REEXPRESSION;
        s.flags = REEXPRESS_ALL;
        const ResidualFit fit = delta_q_order(kParams, st, base, s, scales);
        CHECK_FALSE(fit.exact);
        CHECK(fit.slope == doctest::Approx(2.0).epsilon(0.06));
    }
    SUBCASE("empty payload is exact") {
        ShiftSpec s;
        s.kind = ShiftSpec::VELOCITY;
        const ResidualFit fit = delta_q_order(kParams, st, base, s, scales);
        CHECK(fit.exact);
    }
    SUBCASE("input validation") {
        ShiftSpec s;
        s.kind = ShiftSpec::VELOCITY;
        s.delta_velocity = {1.0, 0.0, 0.0};
        CHECK_THROWS_AS(delta_q_order(kParams, st, base, s, {1e-2}), std::invalid_argument);
        CHECK_THROWS_AS(delta_q_order(kParams, st, base, s, {1e-2, 0.0}),
                        std::invalid_argument);
    }
}

TEST_CASE("leading-order entropy sign of the proposed model") {
    const ThermoState st = eos_from_n_theta(kParams, 1.0, 1.0);
    const DissipationCoeffs c{1.0, 0.3, 1.2, 0.4};
    SUBCASE("negative part is confined to the second-order envelope") {
        const EntropySignReport rep = new_model_entropy_sign(kParams, st, c, 1e-3, 10000);
        CHECK(rep.mean_q > 0.0);
        // any negative excursions must shrink like eps^2
        CHECK(rep.min_q_over_eps > -1e-1);
        CHECK(rep.min_q_over_eps2 > -1e3);
        const EntropySignReport finer = new_model_entropy_sign(kParams, st, c, 1e-4, 10000);
        CHECK(std::abs(finer.min_q_over_eps) < std::abs(rep.min_q_over_eps) + 1e-12);
    }
    SUBCASE("scale validation") {
        CHECK_THROWS_AS(new_model_entropy_sign(kParams, st, c, 0.1, 100),
                        std::invalid_argument);
        CHECK_THROWS_AS(new_model_entropy_sign(kParams, st, c, 0.0, 100),
                        std::invalid_argument);
    }
}
