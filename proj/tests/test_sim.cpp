#include <doctest.h>

#include <cmath>
#include <random>

#include "fssm/sim.hpp"

using namespace fssm;

namespace {

PendulumParams conservative() {
    PendulumParams p;
    p.b1 = p.b2 = p.K_emf = 0;
    return p;
}

ControllerConfig no_control(double dt = 0.025) {
    ControllerConfig c;
    c.K_P = c.K_D = c.K_phiD = c.K_I = 0;
    c.dt_sample = dt;
    return c;
}

}  // namespace

TEST_CASE("rho and average delay") {
    CHECK(rho(0.010, 0.025, 1) == doctest::Approx(0.035).epsilon(1e-12));
    CHECK(0.010 - rho(0.010, 0.025, 1) == doctest::Approx(-0.025).epsilon(1e-12));
    CHECK(rho(0.030, 0.025, 1) == doctest::Approx(0.030).epsilon(1e-12));
    CHECK(rho(0.050, 0.025, 0) == 0.0);
    CHECK(average_delay(0.025, 1) == doctest::Approx(0.0375).epsilon(1e-15));
    CHECK(average_delay(0.025, 0) == doctest::Approx(0.0125).epsilon(1e-15));

    // t - rho(t) is the sampling instant t_{i-r}
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(0, 10);
    for (int k = 0; k < 200; ++k) {
        const double t = U(rng), dt = 0.0308;
        const double i = std::floor(t / dt);
        CHECK(t - rho(t, dt, 1) == doctest::Approx((i - 1) * dt).epsilon(1e-9));
    }
}

TEST_CASE("quantize floors toward minus infinity") {
    CHECK(quantize(0.37, 0.1) == doctest::Approx(0.3));
    CHECK(quantize(-0.01, 0.1) == doctest::Approx(-0.1));
    CHECK(quantize(0.3, 0.125) == 0.25);
    CHECK(quantize(0.25, 0.125) == 0.25);
}

TEST_CASE("control voltage examples") {
    ControllerConfig c;
    c.dt_sample = 0.025;
    SUBCASE("proportional only on equal samples") {
        SampleBuffer b(Sample{0.01, 0, 0});
        b.push(Sample{0.01, 0, 0});
        CHECK(control_voltage(b, c, 0) == doctest::Approx(-0.155).epsilon(1e-12));
    }
    SUBCASE("zero history") {
        SampleBuffer b(Sample{});
        b.push(Sample{});
        CHECK(control_voltage(b, c, 0) == 0.0);
    }
    SUBCASE("quantized small angle gives zero counts") {
        c.h_quant = 0.01;
        SampleBuffer b(Sample{0.003, 0, 0});
        b.push(Sample{0.003, 0, 0});
        CHECK(control_voltage(b, c, 0) == 0.0);
    }
    SUBCASE("brute-force quantized law") {
        c.h_quant = 0.01;
        SampleBuffer b(Sample{0.0123, 0.2, 0}, {Sample{0.0157, 0.21, 0}});
        b.push(Sample{0.0101, 0.19, 0});
        b.push(Sample{0.0099, 0.18, 0});
        // interval 1 uses samples 0 and -1
        const double h = 0.01, dt = 0.025;
        const double xi = 0.0101, xip = 0.0157, ph = 0.19, php = 0.21;
        const double counts = -15.5 * std::floor(xi / h) - 5.45 * std::floor((xi - xip) / dt / h) +
                              1.5 * std::floor((ph - php) / dt / h);
        CHECK(control_voltage(b, c, 1) == h * std::floor(counts));
    }
    SUBCASE("missing samples") {
        c.r_delay = 0;
        SampleBuffer b(Sample{});
        CHECK_THROWS_WITH(control_voltage(b, c, 0), "insufficient prehistory");
    }
}

TEST_CASE("delay identity: newer samples do not change the voltage") {
    ControllerConfig c;
    std::mt19937_64 rng(11);
    std::normal_distribution<double> N(0, 0.05);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Sample> s(6);
        for (auto& x : s) x = Sample{N(rng), N(rng), 0};
        SampleBuffer a(Sample{}), b(Sample{});
        for (int k = 0; k < 6; ++k) {
            a.push(s[k]);
            Sample t = s[k];
            if (k == 5) t = Sample{N(rng), N(rng), 0};  // the newest sample, t_i
            b.push(t);
        }
        CHECK(control_voltage(a, c, 5) == control_voltage(b, c, 5));
    }
}

TEST_CASE("equations of motion") {
    const PendulumParams p;
    SUBCASE("upright equilibrium") {
        const Derivative d = rhs(SimState{}, 0, p);
        CHECK(d.theta == 0);
        CHECK(d.omega_theta == 0);
        CHECK(d.phi == 0);
        CHECK(d.omega_phi == 0);
    }
    SUBCASE("hanging equilibrium") {
        const Derivative d = rhs(SimState{M_PI, 0, 0, 0, 0}, 0, p);
        CHECK(std::abs(d.omega_theta) < 1e-12);
        CHECK(std::abs(d.omega_phi) < 1e-12);
    }
    SUBCASE("unit voltage at rest upright") {
        const Derivative d = rhs(SimState{}, 1.0, p);
        const double mrl = p.m * p.r_arm * p.l;
        const double D = p.J_p * p.J_a - mrl * mrl;
        CHECK(d.omega_theta == doctest::Approx(p.N_motor * mrl / D).epsilon(1e-12));
        CHECK(d.omega_phi == doctest::Approx(p.N_motor * p.J_p / D).epsilon(1e-12));
    }
    SUBCASE("singular mass matrix") {
        PendulumParams q = p;
        // J_p J_a = (m r l)^2 makes Delta vanish at theta = 0
        q.J_a = std::pow(q.m * q.r_arm * q.l, 2) / q.J_p;
        CHECK_THROWS_WITH(q.validate(), "singular mass matrix");
        CHECK_THROWS_WITH(rhs(SimState{}, 0, q), "singular mass matrix");
    }
    SUBCASE("energy rate equals input power minus dissipation") {
        // dE/dt = (N u - K w_phi) w_phi - b1 w_theta^2 - b2 w_phi^2
        const SimState x{0.4, -0.7, 0.2, 1.3, 0};
        const double u = 0.8, h = 1e-6;
        const Derivative d = rhs(x, u, p);
        auto shifted = [&](double s) {
            return SimState{x.theta + s * d.theta, x.omega_theta + s * d.omega_theta, x.phi + s * d.phi,
                            x.omega_phi + s * d.omega_phi, 0};
        };
        const double dE = (mechanical_energy(shifted(h), p) - mechanical_energy(shifted(-h), p)) / (2 * h);
        const double power = (p.N_motor * u - p.K_emf * x.omega_phi) * x.omega_phi -
                             p.b1 * x.omega_theta * x.omega_theta - p.b2 * x.omega_phi * x.omega_phi;
        CHECK(dE == doctest::Approx(power).epsilon(1e-6));
    }
}

TEST_CASE("parameter and controller validation") {
    PendulumParams p;
    p.m = -1;
    CHECK_THROWS(p.validate());
    ControllerConfig c;
    c.r_delay = 2;
    CHECK_THROWS(c.validate());
    c.r_delay = 1;
    c.h_quant = 0.0;
    CHECK_THROWS(c.validate());
    c.h_quant.reset();
    c.dt_sample = 0;
    CHECK_THROWS(c.validate());
}

TEST_CASE("simulation invariants") {
    const PendulumParams p;
    ControllerConfig c;
    c.dt_sample = 0.025;

    SUBCASE("equilibrium stays exactly at zero") {
        const Trajectory tr = simulate(p, c, SimState{}, SimState{}, 2.0);
        for (size_t k = 0; k < tr.size(); ++k) {
            CHECK(tr.theta[k] == 0);
            CHECK(tr.u[k] == 0);
        }
    }
    SUBCASE("hanging equilibrium is preserved") {
        const SimState down{M_PI, 0, 0, 0, 0};
        const Trajectory tr = simulate(conservative(), no_control(), down, down, 2.0);
        for (size_t k = 0; k < tr.size(); ++k) CHECK(std::abs(tr.theta[k] - M_PI) < 1e-12);
    }
    SUBCASE("conservative energy drift") {
        const PendulumParams q = conservative();
        const SimState x0{0.3, 0.5, 0, 1.0, 0};
        // the pendulum swings through the upright, where the mass matrix is
        // nearly singular; the default substep count is needed there
        const Trajectory tr = simulate(q, no_control(), x0, x0, 10.0);
        const double E0 = mechanical_energy(x0, q);
        double drift = 0;
        for (size_t k = 0; k < tr.size(); ++k)
            drift = std::max(drift, std::abs(mechanical_energy(tr.state(k), q) - E0) / std::abs(E0));
        CHECK(drift < 1e-6);
    }
    SUBCASE("zero-order hold: u constant within each interval") {
        SimOptions so;
        so.outputs_per_interval = 8;
        const SimState x0{0.02, 0, 0, 0, 0};
        const Trajectory tr = simulate(p, c, x0, x0, 1.0, so);
        for (size_t k = 0; k + 1 < tr.size(); ++k)
            if ((k + 1) % 8 != 0) CHECK(tr.u[k] == tr.u[k + 1]);
    }
    SUBCASE("quantized voltages are integer multiples of h") {
        c.h_quant = 0.005;
        const SimState x0{0.01, 0, 0, 0, 0};
        const Trajectory tr = simulate(p, c, x0, x0, 5.0);
        for (double u : tr.u) {
            const double n = u / 0.005;
            CHECK(std::abs(n - std::round(n)) < 1e-9);
        }
    }
    SUBCASE("at least fourth-order convergence") {
        const PendulumParams q = conservative();
        const SimState x0{M_PI - 0.5, 0.0, 0, 0.5, 0};
        auto end = [&](int sub) {
            SimOptions so;
            so.substeps = sub;
            const Trajectory tr = simulate(q, no_control(0.1), x0, x0, 1.0, so);
            return tr.state(tr.size() - 1);
        };
        auto dist = [](const SimState& a, const SimState& b) {
            return std::hypot(a.theta - b.theta, a.omega_theta - b.omega_theta, a.omega_phi - b.omega_phi);
        };
        const SimState a = end(32), b = end(64), r = end(128);
        const double order = std::log2(dist(a, b) / dist(b, r));
        CHECK(order > 3.5);
    }
    SUBCASE("bit-identical reruns") {
        c.h_quant = 0.002;
        const SimState x0{0.013, 0, 0, 0, 0};
        const Trajectory a = simulate(p, c, x0, x0, 3.0), b = simulate(p, c, x0, x0, 3.0);
        CHECK(a.theta == b.theta);
        CHECK(a.u == b.u);
    }
    SUBCASE("integral state with quantization") {
        c.K_I = 2.0;
        c.h_quant = 0.004;
        const SimState x0{0.01, 0, 0, 0, 0};
        const Trajectory tr = simulate(p, c, x0, x0, 1.0);
        CHECK(tr.has_integral);
        CHECK(tr.x_I.size() == tr.size());
        for (double u : tr.u) CHECK(std::abs(u / 0.004 - std::round(u / 0.004)) < 1e-9);
    }
    SUBCASE("zero duration rejected") {
        CHECK_THROWS(simulate(p, c, SimState{}, SimState{}, 0.0));
    }
    SUBCASE("divergence reported") {
        // huge gains make the discrete loop violently unstable
        c.K_P = 1e9;
        const SimState x0{0.01, 0, 0, 0, 0};
        CHECK_THROWS_WITH_AS(simulate(p, c, x0, x0, 50.0), doctest::Contains("divergence at t="), SimError);
    }
}
