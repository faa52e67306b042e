#ifndef IRFLOW_SCENARIO_HPP
#define IRFLOW_SCENARIO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "irflow/series.hpp"

namespace irflow {

/// How cumulative capacity continues between the last database anchor and the
/// 2050 target. Linear keeps annual additions constant; Accelerating grows
/// them linearly starting from the last anchor segment's rate.
enum class TailMode { Linear, Accelerating };

struct CapacityPathway {
    AnnualSeries cumulative;  // GW, non-decreasing
    AnnualSeries additions;   // GW/yr, additions[first] = cumulative[first]
    std::string label;        // "BAU", "IEA-NZE", or custom
};

/// Exponentially decaying iridium-specific power density [kg/GW].
struct OmegaTrajectory {
    double omega_start = 750.0;
    double omega_floor = 103.0;
    double decay_rate = 0.32;  // 1/yr
    int start_year = 2024;

    void validate() const;
};

double omega_at(const OmegaTrajectory& traj, int year);
AnnualSeries omega_series(const OmegaTrajectory& traj, int first_year, int last_year);

/// Linear ramp of recycling efficiency, constant after ramp_end_year.
struct RecyclingRamp {
    double gamma_start = 0.70;
    double gamma_end = 0.97;
    int start_year = 2024;
    int ramp_end_year = 2035;

    void validate() const;
};

double gamma_at(const RecyclingRamp& ramp, int year);
AnnualSeries gamma_series(const RecyclingRamp& ramp, int first_year, int last_year);

/// Integer-year lifetime distribution: a truncated normal with mean tau,
/// sigma = tau/3, bounds [1, 2*tau], binned to whole years. sigma == 0
/// degenerates to a point mass at round(mean).
struct LifetimeDistribution {
    double mean = 10.0;
    double sigma = 10.0 / 3.0;
    int lower = 1;
    int upper = 20;

    static LifetimeDistribution from_mean(double tau);
    static LifetimeDistribution point_mass(int tau);
    void validate() const;
};

/// Full parameterization of one simulation run.
struct Scenario {
    CapacityPathway pathway;
    OmegaTrajectory omega;
    RecyclingRamp gamma;
    LifetimeDistribution lifetime;
    double unit_size_mw = 1.0;
    int horizon_first = 2024;
    int horizon_last = 2050;
    std::uint64_t seed = 0;
    int mc_subsample = 1;
    int recycling_lag_years = 0;
    std::string id = "custom";

    void validate() const;
    Scenario with_tau(double tau) const;
    Scenario with_gamma(const RecyclingRamp& ramp) const;
};

/// BAU pathway: piecewise-linear through the project-database anchors, then
/// extended to (end_year, end_value) with the chosen tail shape.
CapacityPathway build_bau(const std::vector<std::pair<int, double>>& db_anchors,
                          double end_value = 489.0, int end_year = 2050,
                          TailMode tail = TailMode::Linear);

/// NZE pathway: pemel_share times the interpolated total-market series.
CapacityPathway build_nze(const std::vector<std::pair<int, double>>& total_market_anchors,
                          double pemel_share = 0.40);

}  // namespace irflow

#endif
