#include <doctest.h>

#include "approx.hpp"

#include "radial_oracle.hpp"
#include "wigner/negativity.hpp"
#include "wigner/parallel.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

using namespace wigner;

namespace {
constexpr double kInvPi = 1.0 / std::numbers::pi;
}

TEST_CASE("support rectangle policy") {
    const Rectangle vac = support_rectangle(FockState{0}, 6.0);
    CHECK(vac.q_min == doctest::Approx(-7.0));
    CHECK(vac.q_max == doctest::Approx(7.0));
    CHECK(vac.p_min == doctest::Approx(-7.0));

    const Rectangle cat = support_rectangle(CatState{3.0, 4.0}, 6.0);
    CHECK(cat.q_min == doctest::Approx(-9.0));
    CHECK(cat.q_max == doctest::Approx(9.0));
    CHECK(cat.p_min == doctest::Approx(-2.0));
    CHECK(cat.p_max == doctest::Approx(10.0));

    const Rectangle sdf = support_rectangle(SqueezedDisplacedFockState{3, 1.0, 0.0, 0.0, 0.0}, 6.0);
    CHECK(sdf.q_max == doctest::Approx(std::sqrt(7.0) * std::exp(1.0) + 6.0).epsilon(1e-12));

    const Rectangle coh = support_rectangle(CoherentState{2.0, -1.0}, 6.0);
    CHECK(coh.q_min == doctest::Approx(-5.0));
    CHECK(coh.q_max == doctest::Approx(9.0));
}

TEST_CASE("truncation tail is negligible") {
    QuadratureConfig cfg;
    cfg.tolerance = 1e-6;
    const StateSpec spec = SqueezedDisplacedFockState{3, 1.0, std::numbers::pi / 6.0, 0.0, 0.0};
    const double tight = delta_indicator(spec, cfg).delta;
    cfg.padding = 10.0;
    const double wide = delta_indicator(spec, cfg).delta;
    CHECK(std::abs(tight - wide) < 1e-8);
}

TEST_CASE("grid evaluation") {
    SUBCASE("vacuum 3x3 sample") {
        const PhaseGrid g = evaluate_grid(FockState{0}, {-7.0, 7.0, -7.0, 7.0}, 3, 3);
        CHECK(g.value(1, 1) == doctest::Approx(kInvPi).epsilon(1e-14));
        CHECK(g.value(0, 0) == doctest::Approx(std::exp(-98.0) * kInvPi).epsilon(1e-12));
        CHECK(g.value(2, 0) == doctest::Approx(std::exp(-98.0) * kInvPi).epsilon(1e-12));
    }
    SUBCASE("degenerate cat equals the vacuum grid") {
        const Rectangle r{-5.0, 5.0, -5.0, 5.0};
        const PhaseGrid a = evaluate_grid(CatState{0.0, 0.0}, r, 41, 41);
        const PhaseGrid b = evaluate_grid(FockState{0}, r, 41, 41);
        for (int i = 0; i < 41; ++i) {
            for (int j = 0; j < 41; ++j) {
                REQUIRE(a.value(i, j) == AbsApprox{b.value(i, j), 1e-14});
            }
        }
    }
    SUBCASE("fock n=1 grid mass") {
        const PhaseGrid g = evaluate_grid(FockState{1}, {-7.0, 7.0, -7.0, 7.0}, 257, 257);
        CHECK(trapezoid_mass(g) == AbsApprox{1.0, 1e-6});
        CHECK(max_abs(g) <= kInvPi + 1e-12);
    }
    SUBCASE("argument guards") {
        CHECK_THROWS_AS(evaluate_grid(FockState{0}, {-1.0, 1.0, -1.0, 1.0}, 1, 5),
                        std::invalid_argument);
        CHECK_THROWS_AS(evaluate_grid(FockState{0}, {1.0, -1.0, -1.0, 1.0}, 5, 5),
                        std::invalid_argument);
    }
}

TEST_CASE("delta reference values") {
    CHECK(delta_indicator(FockState{0}).delta == AbsApprox{0.0, 1e-6});
    CHECK(delta_indicator(FockState{1}).delta ==
          AbsApprox{4.0 * std::exp(-0.5) - 2.0, 1e-4});
    CHECK(delta_indicator(FockState{2}).delta == AbsApprox{0.72899, 1e-4});
    CHECK(delta_indicator(CatState{6.0, 0.0}).delta == AbsApprox{0.636, 5e-3});
}

TEST_CASE("delta agrees with the radial oracle across the ladder") {
    QuadratureConfig cfg;
    cfg.tolerance = 1e-5;
    for (int n = 1; n <= 6; ++n) {
        const double reference = testoracle::fock_delta_radial(n);
        const double measured = delta_indicator(FockState{n}, cfg).delta;
        CAPTURE(n);
        REQUIRE(measured == AbsApprox{reference, 3e-5});
    }
    // the oracle itself reproduces the closed forms
    CHECK(testoracle::fock_delta_radial(1) ==
          AbsApprox{4.0 * std::exp(-0.5) - 2.0, 1e-12});
    const double s2 = std::sqrt(2.0);
    CHECK(testoracle::fock_delta_radial(2) ==
          AbsApprox{4.0 * ((2.0 + s2) * std::exp(-1.0 - 1.0 / s2) +
                           (-2.0 + s2) * std::exp(-1.0 + 1.0 / s2)), 1e-12});
}

TEST_CASE("negativity result internal consistency") {
    const StateSpec specs[] = {StateSpec{FockState{2}}, StateSpec{CatState{2.0, 3.0}},
                               StateSpec{SqueezedDisplacedFockState{1, 0.4, 0.2, 1.0, -1.0}}};
    for (const StateSpec& spec : specs) {
        const NegativityResult r = delta_indicator(spec);
        CAPTURE(format_state_spec(spec));
        REQUIRE(r.converged);
        REQUIRE(r.delta == 2.0 * r.i_minus);
        REQUIRE(r.nu == r.delta / (1.0 + r.delta));
        REQUIRE(std::abs(r.i_plus - r.i_minus - 1.0) <= r.error_estimate + 1e-4 + 1e-9);
        REQUIRE(r.i_plus >= 1.0 - 1e-6);
        REQUIRE(r.resolution_q >= 2);
        REQUIRE(r.delta >= 0.0);
    }
}

TEST_CASE("positive states have exactly zero negative volume") {
    CHECK(delta_indicator(CoherentState{1.0, -2.0}).delta == 0.0);
    CHECK(delta_indicator(SqueezedVacuumState{1.0, 0.0, 0.5, 0.5}).delta == 0.0);
    CHECK(delta_indicator(CatState{0.0, 3.0}).delta == 0.0);
}

TEST_CASE("refinement ladder converges at second order on the fock kinks") {
    QuadratureConfig cfg;
    cfg.tolerance = 1e-300;  // never satisfied, forces the full ladder
    double ladder[4];
    for (int r = 1; r <= 4; ++r) {
        cfg.max_refinements = r;
        const NegativityResult res = delta_indicator(FockState{1}, cfg);
        CHECK_FALSE(res.converged);
        ladder[r - 1] = res.delta;
    }
    // |W| has derivative kinks on nodal circles; observed order >= 1.5 still
    const double d1 = std::abs(ladder[1] - ladder[0]);
    const double d2 = std::abs(ladder[2] - ladder[1]);
    const double d3 = std::abs(ladder[3] - ladder[2]);
    CHECK(std::log2(d1 / d2) >= 1.5);
    CHECK(std::log2(d2 / d3) >= 1.5);
    // and the deepest rung sits on the analytic value
    CHECK(ladder[3] == AbsApprox{4.0 * std::exp(-0.5) - 2.0, 1e-6});
}

TEST_CASE("non-convergence is flagged and the result still returned") {
    QuadratureConfig cfg;
    cfg.max_refinements = 1;
    cfg.tolerance = 1e-12;
    const NegativityResult r = delta_indicator(FockState{3}, cfg);
    CHECK_FALSE(r.converged);
    CHECK(r.delta > 0.9);
    CHECK(r.error_estimate > 1e-12);
}

TEST_CASE("worker partitioning does not change results") {
    setenv("WIGNER_THREADS", "1", 1);
    const NegativityResult serial = delta_indicator(FockState{2});
    setenv("WIGNER_THREADS", "3", 1);
    const NegativityResult threaded = delta_indicator(FockState{2});
    unsetenv("WIGNER_THREADS");
    CHECK(serial.delta == threaded.delta);
    CHECK(serial.i_plus == threaded.i_plus);
    CHECK(serial.error_estimate == threaded.error_estimate);
}

TEST_CASE("worker count env handling") {
    setenv("WIGNER_THREADS", "5", 1);
    CHECK(worker_count() == 5);
    setenv("WIGNER_THREADS", "0", 1);
    const unsigned auto_workers = worker_count();
    CHECK(auto_workers >= 1);
    setenv("WIGNER_THREADS", "garbage", 1);
    CHECK(worker_count() == auto_workers);
    unsetenv("WIGNER_THREADS");
    CHECK(worker_count() == auto_workers);
}

TEST_CASE("delta is invariant under displacement") {
    const double base = delta_indicator(SqueezedDisplacedFockState{2, 0, 0, 0, 0}).delta;
    const double near = delta_indicator(SqueezedDisplacedFockState{2, 0, 0, 3.0, -2.0}).delta;
    const double far = delta_indicator(SqueezedDisplacedFockState{2, 0, 0, 10.0, 10.0}).delta;
    CHECK(std::abs(near - base) < 2e-4);
    CHECK(std::abs(far - base) < 2e-4);
}

TEST_CASE("delta is invariant under squeezing") {
    QuadratureConfig cfg;
    cfg.tolerance = 2e-5;
    const double phi = std::numbers::pi / 6.0;
    double lo = 1e300, hi = -1e300;
    for (const double s : {0.0, 0.5, 1.0}) {
        const double d =
            delta_indicator(SqueezedDisplacedFockState{3, s, phi, 0.0, 0.0}, cfg).delta;
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    CHECK(hi - lo < 2.0 * cfg.tolerance);
}

TEST_CASE("fock ladder order is preserved by both measures") {
    double prev_delta = -1.0, prev_nu = -1.0;
    for (int n = 0; n <= 4; ++n) {
        const NegativityResult r = delta_indicator(FockState{n});
        CHECK(r.delta > prev_delta);
        CHECK(r.nu > prev_nu);
        prev_delta = r.delta;
        prev_nu = r.nu;
    }
}

TEST_CASE("nu and delta conversions") {
    CHECK(nu_from_delta(0.0) == 0.0);
    CHECK(nu_from_delta(1.0) == 0.5);
    // arithmetic from the n=1 reference delta
    CHECK(nu_from_delta(0.4261226388505337) ==
          doctest::Approx(0.29879803268111077).epsilon(1e-15));
    CHECK_THROWS_AS(nu_from_delta(-0.01), std::domain_error);
    CHECK_THROWS_AS(delta_from_nu(1.0), std::domain_error);
    CHECK_THROWS_AS(delta_from_nu(-0.1), std::domain_error);
    for (double d = 0.0; d <= 2.0; d += 0.01) {
        REQUIRE(delta_from_nu(nu_from_delta(d)) == AbsApprox{d, 1e-14});
    }
    for (double d = 2.0; d <= 10.0; d += 0.25) {
        REQUIRE(delta_from_nu(nu_from_delta(d)) == AbsApprox{d, 4e-14});
    }
}

TEST_CASE("quadrature config validation") {
    QuadratureConfig cfg;
    cfg.tolerance = 0.0;
    CHECK_THROWS_AS(delta_indicator(FockState{0}, cfg), std::invalid_argument);
    cfg = {};
    cfg.base_cells_per_unit = 0;
    CHECK_THROWS_AS(delta_indicator(FockState{0}, cfg), std::invalid_argument);
    cfg = {};
    cfg.max_refinements = 0;
    CHECK_THROWS_AS(delta_indicator(FockState{0}, cfg), std::invalid_argument);
    cfg = {};
    cfg.padding = -1.0;
    CHECK_THROWS_AS(delta_indicator(FockState{0}, cfg), std::invalid_argument);
}
