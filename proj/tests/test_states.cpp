#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mzqfi/fock.hpp"
#include "mzqfi/qfi.hpp"
#include "mzqfi/states.hpp"
#include "test_support.hpp"

using namespace mzqfi;
using mzqfi::test::moments_dev;

TEST_CASE("validate: accepts well-formed specs unchanged") {
    InputStateSpec spec;
    spec.family = StateFamily::CsSvs;
    spec.alpha = {2.0, 0.0};
    spec.xi = {0.5, 0.0};
    const InputStateSpec out = validate(spec);
    CHECK(out.family == spec.family);
    CHECK(out.alpha == spec.alpha);
    CHECK(out.xi == spec.xi);
}

TEST_CASE("validate: rejects photon subtraction from the vacuum") {
    InputStateSpec spec;
    spec.family = StateFamily::CsPssvs;
    spec.xi = {0.0, 0.0};
    spec.kappa = 1;
    CHECK_THROWS_AS(validate(spec), DomainError);
}

TEST_CASE("validate: vacuum twin Fock is legal") {
    InputStateSpec spec;
    spec.family = StateFamily::TwinFock;
    spec.kappa = 0;
    CHECK_NOTHROW(validate(spec));
}

TEST_CASE("validate: negative kappa and non-real pasvs squeeze rejected") {
    InputStateSpec spec;
    spec.family = StateFamily::CsFock;
    spec.kappa = -2;
    CHECK_THROWS_AS(validate(spec), DomainError);

    spec.family = StateFamily::CsPasvs;
    spec.kappa = 1;
    spec.xi = {0.5, 0.2};
    CHECK_THROWS_AS(validate(spec), DomainError);
    spec.xi = {0.5, 0.0};
    CHECK_NOTHROW(validate(spec));
}

TEST_CASE("moments: twin Fock has sharp occupations") {
    InputStateSpec spec;
    spec.family = StateFamily::TwinFock;
    spec.kappa = 3;
    const StateMoments m = analytic_moments(spec);
    CHECK(m.n_a == 3.0);
    CHECK(m.n_b == 3.0);
    CHECK(m.var_a == 0.0);
    CHECK(m.var_b == 0.0);
    CHECK(m.a_sq == complex(0.0, 0.0));
    CHECK(m.b_sq == complex(0.0, 0.0));
    CHECK(m.cross_nn == 9.0);
    CHECK(m.mean_N == 6.0);
    CHECK(m.mean_N_sq == 36.0);
    CHECK(m.separable);
}

TEST_CASE("moments: coherent + squeezed vacuum closed forms") {
    InputStateSpec spec;
    spec.family = StateFamily::CsSvs;
    spec.alpha = {2.0, 0.0};
    spec.xi = {0.5, 0.0};
    const StateMoments m = analytic_moments(spec);
    CHECK(m.n_a == 4.0);
    CHECK(m.var_a == 4.0);
    CHECK(m.a_sq.real() == 4.0);
    CHECK(m.n_b == doctest::Approx(0.27154031740762191).epsilon(1e-15));
    CHECK(m.var_b == doctest::Approx(0.69054892277090796).epsilon(1e-14));
    CHECK(m.b_sq.real() == doctest::Approx(-0.58760059682190069).epsilon(1e-14));
    CHECK(m.b_sq.imag() == 0.0);
    CHECK(m.separable);
}

TEST_CASE("moments: two-mode squeezed vacuum thermal marginals") {
    InputStateSpec spec;
    spec.family = StateFamily::Tmsvs;
    spec.zeta = {0.5, 0.0};
    const StateMoments m = analytic_moments(spec);
    const double n = std::sinh(0.5) * std::sinh(0.5);
    CHECK(m.n_a == doctest::Approx(0.27154031740762191).epsilon(1e-15));
    CHECK(m.n_b == m.n_a);
    CHECK(m.a_sq == complex(0.0, 0.0));
    CHECK(m.b_sq == complex(0.0, 0.0));
    CHECK(m.var_a == doctest::Approx(n * n + n).epsilon(1e-14));
    CHECK(m.cross_nn == doctest::Approx(2.0 * n * n + n).epsilon(1e-14));
    CHECK(m.mean_N_sq == doctest::Approx(8.0 * n * n + 4.0 * n).epsilon(1e-14));
    CHECK_FALSE(m.separable);
}

TEST_CASE("moments: quadratic-moment phases follow the state phases") {
    InputStateSpec spec;
    spec.family = StateFamily::CsSvs;
    spec.alpha = std::polar(1.3, 0.4);
    spec.xi = std::polar(0.7, 1.1);
    const StateMoments m = analytic_moments(spec);
    CHECK(std::arg(m.a_sq) == doctest::Approx(2.0 * 0.4).epsilon(1e-13));
    CHECK(wrap_angle(std::arg(m.b_sq) - (1.1 + 3.14159265358979323846)) ==
          doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("moments: squeezed vacuum saturates the quadratic-moment bound") {
    for (double r : {0.2, 0.7, 1.3}) {
        InputStateSpec spec;
        spec.family = StateFamily::CsSvs;
        spec.xi = {r, 0.0};
        const StateMoments m = analytic_moments(spec);
        CHECK(std::norm(m.b_sq) == doctest::Approx(m.n_b * (m.n_b + 1.0)).epsilon(1e-14));
    }
}

TEST_CASE("moments: photon-added/subtracted with kappa = 0 is the squeezed vacuum") {
    for (auto family : {StateFamily::CsPasvs, StateFamily::CsPssvs}) {
        InputStateSpec spec;
        spec.family = family;
        spec.alpha = {1.5, 0.0};
        spec.xi = {0.8, 0.0};
        spec.kappa = 0;
        InputStateSpec svs = spec;
        svs.family = StateFamily::CsSvs;
        CHECK(moments_dev(analytic_moments(spec), analytic_moments(svs)) < 1e-13);
    }
}

TEST_CASE("moments: exact cat-state closed forms (frozen from the oracle)") {
    InputStateSpec spec;
    spec.family = StateFamily::CsCss;
    spec.alpha = {1.0, 0.0};
    spec.beta = {1.2, 0.0};
    spec.css_mode = CssMode::Exact;
    const StateMoments m = analytic_moments(spec);
    const double mu = 1.44;
    CHECK(m.n_b == doctest::Approx(mu * std::tanh(mu)).epsilon(1e-15));
    CHECK(m.n_b == doctest::Approx(1.2869247271735764).epsilon(1e-15));
    CHECK(m.var_b == doctest::Approx(1.7043494737627922).epsilon(1e-14));
    CHECK(m.b_sq.real() == doctest::Approx(1.44).epsilon(1e-15));
    // asymptotic convention
    spec.css_mode = CssMode::Asymptotic;
    const StateMoments ma = analytic_moments(spec);
    CHECK(ma.n_b == doctest::Approx(1.44).epsilon(1e-15));
    CHECK(ma.var_b == doctest::Approx(1.44).epsilon(1e-15));
}

TEST_CASE("moments: bundle consistency invariants") {
    auto check_bundle = [](const StateMoments& m) {
        CHECK(m.mean_N == doctest::Approx(m.n_a + m.n_b).epsilon(1e-13));
        CHECK(m.mean_N_sq >= m.mean_N * m.mean_N - 1e-12);
        if (m.separable) {
            CHECK(m.cross_nn == doctest::Approx(m.n_a * m.n_b).epsilon(1e-13));
            CHECK(m.mean_N_sq ==
                  doctest::Approx(m.var_a + m.var_b + m.mean_N * m.mean_N).epsilon(1e-13));
        }
        CHECK(std::abs(m.a_sq) <= std::sqrt(m.n_a * (m.n_a + 1.0)) + 1e-12);
        CHECK(std::abs(m.b_sq) <= std::sqrt(m.n_b * (m.n_b + 1.0)) + 1e-12);
    };
    for (auto family : {StateFamily::TwinFock, StateFamily::CsFock, StateFamily::CsCss,
                        StateFamily::CsSvs, StateFamily::TwoSvs, StateFamily::Tmsvs,
                        StateFamily::CsPasvs, StateFamily::CsPssvs}) {
        InputStateSpec spec;
        spec.family = family;
        spec.alpha = {1.4, 0.0};
        spec.beta = {1.1, 0.0};
        spec.xi = {0.8, 0.0};
        spec.xi_prime = {0.6, 0.0};
        spec.zeta = {0.9, 0.0};
        spec.kappa = 2;
        check_bundle(analytic_moments(spec));
    }
}

TEST_CASE("oracle: analytic moments agree with the Fock oracle per family") {
    std::vector<InputStateSpec> grid;
    auto add = [&](InputStateSpec s) { grid.push_back(s); };

    for (int k : {0, 1, 3}) {
        InputStateSpec s;
        s.family = StateFamily::TwinFock;
        s.kappa = k;
        add(s);
    }
    for (double a : {1.0, 2.0})
        for (int k : {0, 2}) {
            InputStateSpec s;
            s.family = StateFamily::CsFock;
            s.alpha = {a, 0.0};
            s.kappa = k;
            add(s);
        }
    for (double b : {0.8, 1.5}) {
        InputStateSpec s;
        s.family = StateFamily::CsCss;
        s.alpha = {1.0, 0.0};
        s.beta = std::polar(b, 0.3);
        s.css_mode = CssMode::Exact;  // oracle comparisons use the exact convention
        add(s);
    }
    {
        InputStateSpec s;
        s.family = StateFamily::CsSvs;
        s.alpha = std::polar(2.0, 0.7);
        s.xi = std::polar(1.0, -0.4);
        add(s);
        s.alpha = {1.0, 0.0};
        s.xi = {0.5, 0.0};
        add(s);
    }
    {
        InputStateSpec s;
        s.family = StateFamily::TwoSvs;
        s.xi = {0.6, 0.0};
        s.xi_prime = std::polar(1.0, 0.9);
        add(s);
    }
    for (double z : {0.3, 0.8}) {
        InputStateSpec s;
        s.family = StateFamily::Tmsvs;
        s.zeta = std::polar(z, 0.5);
        add(s);
    }
    for (auto family : {StateFamily::CsPasvs, StateFamily::CsPssvs})
        for (int k : {1, 3}) {
            InputStateSpec s;
            s.family = family;
            s.alpha = {1.0, 0.0};
            s.xi = {k == 3 ? 0.55 : 1.0, 0.0};  // keeps n_b inside the small-parameter grid
            s.kappa = k;
            add(s);
        }

    for (const auto& spec : grid) {
        const StateMoments ana = analytic_moments(spec);
        CHECK(ana.n_a <= 6.5);
        CHECK(ana.n_b <= 6.5);
        const StateMoments num = numeric_moments(build_fock_state(spec, choose_cutoff(spec)));
        CAPTURE(family_tag(spec.family));
        CHECK(moments_dev(ana, num) < 1e-8);
        CHECK(ana.separable == num.separable);
    }
}
