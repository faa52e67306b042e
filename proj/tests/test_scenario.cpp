#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "irflow/scenario.hpp"

using namespace irflow;

namespace {

std::vector<std::pair<int, double>> default_bau_anchors() {
    return {{2024, 1.4}, {2025, 4.4}, {2026, 9.4}, {2027, 16.4},
            {2028, 25.1}, {2029, 33.6}, {2030, 42.1}};
}

}  // namespace

TEST_CASE("build_bau hits the 2050 endpoint exactly") {
    for (TailMode tail : {TailMode::Linear, TailMode::Accelerating}) {
        CapacityPathway p = build_bau(default_bau_anchors(), 489.0, 2050, tail);
        CHECK(p.cumulative.at(2050) == 489.0);
        CHECK(p.label == "BAU");
    }
}

TEST_CASE("build_bau single-segment anchors give constant additions per segment") {
    CapacityPathway p = build_bau({{2024, 0.0}, {2030, 60.0}}, 489.0, 2050, TailMode::Linear);
    for (int y = 2025; y <= 2030; ++y) {
        CHECK(p.additions.at(y) == doctest::Approx(10.0).epsilon(1e-12));
    }
    for (int y = 2031; y <= 2050; ++y) {
        CHECK(p.additions.at(y) == doctest::Approx((489.0 - 60.0) / 20.0).epsilon(1e-12));
    }
}

TEST_CASE("build_bau additions sum reconstructs the cumulative endpoint") {
    for (TailMode tail : {TailMode::Linear, TailMode::Accelerating}) {
        CapacityPathway p = build_bau(default_bau_anchors(), 489.0, 2050, tail);
        double total = 0.0;
        for (double v : p.additions.values()) total += v;
        CHECK(total == doctest::Approx(489.0).epsilon(1e-9));
        for (double v : p.additions.values()) CHECK(v >= 0.0);
        // additions reconstruct cumulative via running sum
        double run = 0.0;
        for (std::size_t i = 0; i < p.additions.size(); ++i) {
            run += p.additions[i];
            CHECK(run == doctest::Approx(p.cumulative[i]).epsilon(1e-9));
        }
    }
}

TEST_CASE("build_bau rejects bad inputs") {
    CHECK_THROWS_AS(build_bau({{2024, 1.0}}, 489.0, 2050, TailMode::Linear), std::invalid_argument);
    // end value below the last anchor would break monotonicity
    CHECK_THROWS_AS(build_bau(default_bau_anchors(), 10.0, 2050, TailMode::Linear),
                    std::invalid_argument);
    // anchors past 2030 are not database values
    CHECK_THROWS_AS(build_bau({{2024, 1.0}, {2035, 50.0}}, 489.0, 2050, TailMode::Linear),
                    std::invalid_argument);
}

TEST_CASE("build_nze endpoints and scaling") {
    CapacityPathway p = build_nze({{2024, 0.0}, {2050, 3670.0}}, 0.40);
    CHECK(p.cumulative.at(2050) == 1468.0);
    CHECK(p.label == "IEA-NZE");

    CapacityPathway half = build_nze({{2024, 0.0}, {2050, 3670.0}}, 0.20);
    for (int y = 2024; y <= 2050; ++y) {
        CHECK(half.cumulative.at(y) == doctest::Approx(0.5 * p.cumulative.at(y)).epsilon(1e-12));
    }

    CHECK_THROWS_AS(build_nze({{2024, 10.0}, {2050, 5.0}}, 0.4), std::invalid_argument);
    CHECK_THROWS_AS(build_nze({{2024, 0.0}, {2050, 3670.0}}, 0.0), std::invalid_argument);
}

TEST_CASE("omega trajectory") {
    OmegaTrajectory cons;  // defaults are the conservative curve
    CHECK(omega_at(cons, 2024) == 750.0);
    CHECK_THROWS_AS(omega_at(cons, 2023), std::invalid_argument);

    OmegaTrajectory flat{500.0, 500.0, 0.0, 2024};
    CHECK(omega_at(flat, 2100) == 500.0);

    OmegaTrajectory ex{750.0, 75.0, 0.115, 2024};
    // 75 + 675*exp(-1.15), evaluated independently
    CHECK(omega_at(ex, 2034) == doctest::Approx(288.72981933086095).epsilon(1e-12));

    // non-increasing, converges to the floor
    AnnualSeries ws = omega_series(cons, 2024, 2224);
    for (std::size_t i = 1; i < ws.size(); ++i) CHECK(ws[i] <= ws[i - 1]);
    CHECK(ws.at(2224) == doctest::Approx(cons.omega_floor).epsilon(1e-6));

    OmegaTrajectory bad{100.0, 200.0, 0.1, 2024};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("gamma ramp") {
    RecyclingRamp ramp;  // 0.70 -> 0.97 by 2035
    CHECK(gamma_at(ramp, 2024) == 0.70);
    CHECK(gamma_at(ramp, 2035) == 0.97);
    CHECK(gamma_at(ramp, 2045) == 0.97);
    // 0.70 + 0.27 * 6/11, evaluated independently
    CHECK(gamma_at(ramp, 2030) == doctest::Approx(0.8472727272727272).epsilon(1e-12));

    RecyclingRamp constant{0.8, 0.8, 2024, 2035};
    for (int y = 2024; y <= 2050; ++y) CHECK(gamma_at(constant, y) == 0.8);

    AnnualSeries gs = gamma_series(ramp, 2024, 2050);
    for (std::size_t i = 1; i < gs.size(); ++i) CHECK(gs[i] >= gs[i - 1]);

    RecyclingRamp bad{0.9, 0.5, 2024, 2035};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("scenario validation") {
    Scenario s{build_bau(default_bau_anchors())};
    s.lifetime = LifetimeDistribution::from_mean(10.0);
    CHECK_NOTHROW(s.validate());

    Scenario bad_tau = s.with_tau(10.0);
    bad_tau.lifetime.mean = 50.0;
    bad_tau.lifetime.upper = 120;
    CHECK_THROWS_AS(bad_tau.validate(), std::invalid_argument);

    Scenario bad_horizon = s;
    bad_horizon.horizon_last = 2060;
    CHECK_THROWS_AS(bad_horizon.validate(), std::invalid_argument);

    Scenario bad_unit = s;
    bad_unit.unit_size_mw = 0.0;
    CHECK_THROWS_AS(bad_unit.validate(), std::invalid_argument);
}
