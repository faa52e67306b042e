#include "irflow/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace irflow {

namespace {

AnnualSeries additions_from_cumulative(const AnnualSeries& cumulative) {
    std::vector<double> adds(cumulative.size());
    adds[0] = cumulative[0];
    for (std::size_t i = 1; i < cumulative.size(); ++i) {
        adds[i] = cumulative[i] - cumulative[i - 1];
        if (adds[i] < -1e-9) {
            throw std::invalid_argument("capacity pathway is not non-decreasing at year " +
                                        std::to_string(cumulative.start_year() + static_cast<int>(i)));
        }
        if (adds[i] < 0.0) adds[i] = 0.0;
    }
    return AnnualSeries(cumulative.start_year(), std::move(adds), Unit::GigawattPerYear);
}

}  // namespace

void OmegaTrajectory::validate() const {
    if (!(omega_floor > 0.0) || omega_start < omega_floor) {
        throw std::invalid_argument("omega trajectory requires omega_start >= omega_floor > 0");
    }
    if (decay_rate < 0.0) {
        throw std::invalid_argument("omega decay_rate must be >= 0");
    }
}

double omega_at(const OmegaTrajectory& traj, int year) {
    if (year < traj.start_year) {
        throw std::invalid_argument("omega_at: year precedes trajectory start");
    }
    return traj.omega_floor +
           (traj.omega_start - traj.omega_floor) *
               std::exp(-traj.decay_rate * static_cast<double>(year - traj.start_year));
}

AnnualSeries omega_series(const OmegaTrajectory& traj, int first_year, int last_year) {
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(last_year - first_year + 1));
    for (int y = first_year; y <= last_year; ++y) vals.push_back(omega_at(traj, y));
    return AnnualSeries(first_year, std::move(vals), Unit::KgPerGigawatt);
}

void RecyclingRamp::validate() const {
    // gamma_start == 0 is allowed so no-recycling sensitivity runs stay
    // expressible as ordinary ramps.
    if (gamma_start < 0.0 || gamma_start > gamma_end || gamma_end > 0.99) {
        throw std::invalid_argument("recycling ramp requires 0 <= gamma_start <= gamma_end <= 0.99");
    }
    if (ramp_end_year < start_year) {
        throw std::invalid_argument("recycling ramp_end_year precedes start_year");
    }
}

double gamma_at(const RecyclingRamp& ramp, int year) {
    if (year >= ramp.ramp_end_year) return ramp.gamma_end;
    if (year <= ramp.start_year) return ramp.gamma_start;
    const double f = static_cast<double>(year - ramp.start_year) /
                     static_cast<double>(ramp.ramp_end_year - ramp.start_year);
    return ramp.gamma_start + (ramp.gamma_end - ramp.gamma_start) * f;
}

AnnualSeries gamma_series(const RecyclingRamp& ramp, int first_year, int last_year) {
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(last_year - first_year + 1));
    for (int y = first_year; y <= last_year; ++y) vals.push_back(gamma_at(ramp, y));
    return AnnualSeries(first_year, std::move(vals), Unit::Fraction);
}

LifetimeDistribution LifetimeDistribution::from_mean(double tau) {
    LifetimeDistribution d;
    d.mean = tau;
    d.sigma = tau / 3.0;
    d.lower = 1;
    d.upper = static_cast<int>(std::lround(2.0 * tau));
    d.validate();
    return d;
}

LifetimeDistribution LifetimeDistribution::point_mass(int tau) {
    LifetimeDistribution d;
    d.mean = static_cast<double>(tau);
    d.sigma = 0.0;
    d.lower = 1;
    d.upper = 2 * tau;
    d.validate();
    return d;
}

void LifetimeDistribution::validate() const {
    // mean == lower is allowed so tau = 1 (bounds [1, 2]) stays expressible.
    if (!(lower <= mean && mean <= upper && lower < upper) || sigma < 0.0) {
        throw std::invalid_argument(
            "lifetime distribution requires lower <= mean <= upper, lower < upper, sigma >= 0");
    }
}

void Scenario::validate() const {
    omega.validate();
    gamma.validate();
    lifetime.validate();
    if (lifetime.mean < 1.0 || lifetime.mean > 40.0) {
        throw std::invalid_argument("tau_mean must lie in [1, 40] years");
    }
    if (!(unit_size_mw > 0.0)) {
        throw std::invalid_argument("unit_size_mw must be positive");
    }
    if (mc_subsample < 1) {
        throw std::invalid_argument("mc_subsample must be >= 1");
    }
    if (recycling_lag_years < 0) {
        throw std::invalid_argument("recycling_lag_years must be >= 0");
    }
    if (horizon_first > horizon_last) {
        throw std::invalid_argument("empty horizon");
    }
    if (!pathway.cumulative.covers(horizon_first) || !pathway.cumulative.covers(horizon_last)) {
        throw std::invalid_argument("horizon not covered by the capacity pathway");
    }
}

Scenario Scenario::with_tau(double tau) const {
    Scenario s = *this;
    s.lifetime = LifetimeDistribution::from_mean(tau);
    return s;
}

Scenario Scenario::with_gamma(const RecyclingRamp& ramp) const {
    Scenario s = *this;
    s.gamma = ramp;
    return s;
}

CapacityPathway build_bau(const std::vector<std::pair<int, double>>& db_anchors,
                          double end_value, int end_year, TailMode tail) {
    if (db_anchors.size() < 2) {
        throw std::invalid_argument("build_bau: need at least two database anchors");
    }
    if (db_anchors.back().first > 2030) {
        throw std::invalid_argument("build_bau: database anchors must not extend past 2030");
    }
    const auto [last_year, last_value] = db_anchors.back();
    if (end_value < last_value) {
        throw std::invalid_argument("build_bau: end value below last anchor breaks monotonicity");
    }
    const int first_year = db_anchors.front().first;

    AnnualSeries cumulative = [&] {
        if (tail == TailMode::Linear) {
            auto anchors = db_anchors;
            anchors.emplace_back(end_year, end_value);
            return interpolate_linear(anchors, first_year, end_year, Unit::Gigawatt);
        }
        // Accelerating tail: additions continue from the last segment's annual
        // rate and then grow by a constant increment chosen to land exactly on
        // end_value at end_year.
        AnnualSeries head = interpolate_linear(db_anchors, first_year, last_year, Unit::Gigawatt);
        const auto& [py, pv] = db_anchors[db_anchors.size() - 2];
        const double base_rate = (last_value - pv) / static_cast<double>(last_year - py);
        const double n = static_cast<double>(end_year - last_year);
        const double increment = (end_value - last_value - n * base_rate) / (n * (n + 1.0) / 2.0);
        std::vector<double> vals(head.values().begin(), head.values().end());
        double v = last_value;
        for (int j = 1; j <= end_year - last_year; ++j) {
            v += base_rate + increment * j;
            vals.push_back(v);
        }
        vals.back() = end_value;  // land on the target exactly, not within rounding
        return AnnualSeries(first_year, std::move(vals), Unit::Gigawatt);
    }();

    AnnualSeries additions = additions_from_cumulative(cumulative);
    return CapacityPathway{std::move(cumulative), std::move(additions), "BAU"};
}

CapacityPathway build_nze(const std::vector<std::pair<int, double>>& total_market_anchors,
                          double pemel_share) {
    if (!(pemel_share > 0.0) || pemel_share > 1.0) {
        throw std::invalid_argument("build_nze: pemel_share must lie in (0, 1]");
    }
    for (std::size_t i = 1; i < total_market_anchors.size(); ++i) {
        if (total_market_anchors[i].second < total_market_anchors[i - 1].second) {
            throw std::invalid_argument("build_nze: total-market anchors must be non-decreasing");
        }
    }
    AnnualSeries total = interpolate_linear(total_market_anchors, total_market_anchors.front().first,
                                            total_market_anchors.back().first, Unit::Gigawatt);
    AnnualSeries cumulative = total.scaled(pemel_share);
    AnnualSeries additions = additions_from_cumulative(cumulative);
    return CapacityPathway{std::move(cumulative), std::move(additions), "IEA-NZE"};
}

}  // namespace irflow
