#include "irflow/gap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace irflow {

GapReport analyze_gap(const AnnualSeries& demand, const AnnualSeries& supply,
                      double initial_stock, double baseline_primary) {
    AnnualSeries gap = combine(demand, supply, CombineOp::Sub);
    const int first = gap.start_year();
    const auto n = gap.size();

    std::vector<GapSegment> segments;
    double total_shortfall = 0.0;
    double total_surplus = 0.0;
    int shortfall_years = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double g = gap[i];
        if (g == 0.0) continue;
        const GapKind kind = g > 0.0 ? GapKind::Shortfall : GapKind::Surplus;
        const int year = first + static_cast<int>(i);
        if (!segments.empty() && segments.back().kind == kind &&
            segments.back().end_year == year - 1) {
            segments.back().end_year = year;
            segments.back().integral += std::abs(g);
        } else {
            segments.push_back(GapSegment{year, year, kind, std::abs(g)});
        }
        if (kind == GapKind::Shortfall) {
            total_shortfall += g;
            ++shortfall_years;
        } else {
            total_surplus -= g;
        }
    }

    std::vector<double> stock;
    stock.reserve(n);
    double bal = initial_stock;
    for (std::size_t i = 0; i < n; ++i) {
        bal -= gap[i];
        stock.push_back(bal);
    }
    const double min_stock = stock.empty() ? initial_stock
                                           : *std::min_element(stock.begin(), stock.end());

    const double denom = baseline_primary * shortfall_years;
    const double net = std::max(0.0, total_shortfall - total_surplus);
    return GapReport{std::move(gap),
                     std::move(segments),
                     AnnualSeries(first, std::move(stock), Unit::Tons),
                     total_shortfall,
                     total_surplus,
                     denom > 0.0 ? net / denom : 0.0,
                     denom > 0.0 ? total_shortfall / denom : 0.0,
                     min_stock >= 0.0};
}

namespace {

double cumulative_demand_of(const Scenario& s, EngineKind engine) {
    const DemandBreakdown b =
        engine == EngineKind::Expected ? simulate_fleet_expected(s) : simulate_fleet_mc(s);
    const auto vals = b.m_total.values();
    return std::accumulate(vals.begin(), vals.end(), 0.0);
}

}  // namespace

SweepResult sweep_tau(const Scenario& base, const std::vector<double>& taus, EngineKind engine) {
    if (taus.empty()) {
        throw std::invalid_argument("sweep_tau: empty parameter list");
    }
    SweepResult r{SweepParameter::Tau, taus, {}, taus.front()};
    r.cumulative_demand.reserve(taus.size());
    for (double tau : taus) {
        r.cumulative_demand.push_back(cumulative_demand_of(base.with_tau(tau), engine));
    }
    const auto it = std::min_element(r.cumulative_demand.begin(), r.cumulative_demand.end());
    r.minimizer = taus[static_cast<std::size_t>(it - r.cumulative_demand.begin())];
    return r;
}

SweepResult sweep_gamma(const Scenario& base, const std::vector<RecyclingRamp>& ramps,
                        EngineKind engine) {
    if (ramps.empty()) {
        throw std::invalid_argument("sweep_gamma: empty parameter list");
    }
    SweepResult r{SweepParameter::Gamma, {}, {}, 0.0};
    for (const auto& ramp : ramps) {
        r.values.push_back(ramp.gamma_start);
        r.cumulative_demand.push_back(cumulative_demand_of(base.with_gamma(ramp), engine));
    }
    const auto it = std::min_element(r.cumulative_demand.begin(), r.cumulative_demand.end());
    r.minimizer = r.values[static_cast<std::size_t>(it - r.cumulative_demand.begin())];
    return r;
}

AnnualSeries pgm_required(const AnnualSeries& extra_iridium, double ir_fraction) {
    if (!(ir_fraction > 0.0) || ir_fraction >= 1.0) {
        throw std::invalid_argument("pgm_required: ir_fraction must lie in (0, 1)");
    }
    std::vector<double> out(extra_iridium.values().begin(), extra_iridium.values().end());
    for (double& v : out) v /= ir_fraction;
    return AnnualSeries(extra_iridium.start_year(), std::move(out), Unit::TonsPgm);
}

double pgm_required(double extra_iridium_t, double ir_fraction) {
    if (!(ir_fraction > 0.0) || ir_fraction >= 1.0) {
        throw std::invalid_argument("pgm_required: ir_fraction must lie in (0, 1)");
    }
    return extra_iridium_t / ir_fraction;
}

AnnualSeries max_capacity_path(const AnnualSeries& supply, const OmegaTrajectory& omega,
                               const Scenario& base) {
    for (double v : supply.values()) {
        if (v < 0.0) {
            throw std::invalid_argument("max_capacity_path: supply must be non-negative");
        }
    }
    const int first = supply.start_year();
    const int n = static_cast<int>(supply.size());
    const DiscretePmf pmf(base.lifetime);
    const auto un = static_cast<std::size_t>(n);

    std::vector<double> installs(un, 0.0);   // GW installed per year
    std::vector<double> cumulative(un, 0.0); // achievable fleet size
    double fleet = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        const int year = first + i;
        const double w = omega_at(omega, year);
        const double g = gamma_at(base.gamma, year);

        double ret_cap = 0.0;
        double ret_mass = 0.0;  // kg contained in retiring capacity
        for (int k = pmf.lower(); k <= pmf.upper(); ++k) {
            const int j = i - k;
            if (j >= 0) {
                const auto uj = static_cast<std::size_t>(j);
                ret_cap += pmf.at(k) * installs[uj];
                ret_mass += pmf.at(k) * installs[uj] * omega_at(omega, first + j);
            }
        }
        // tons available: primary supply plus this fleet's own recycled scrap.
        double avail = supply.at(year) + ret_mass / 1000.0 * g;
        // Replacements first, at the current omega.
        const double replacement_cost = ret_cap * w / 1000.0;
        double replaced = ret_cap;
        if (replacement_cost > avail) {
            replaced = avail * 1000.0 / w;
            avail = 0.0;
        } else {
            avail -= replacement_cost;
        }
        const double expansion = avail * 1000.0 / w;
        fleet += expansion - (ret_cap - replaced);
        installs[u] = expansion + replaced;
        cumulative[u] = fleet;
    }
    return AnnualSeries(first, std::move(cumulative), Unit::Gigawatt);
}

AnnualSeries required_dissolution_rate(const AnnualSeries& omega_series, double tau,
                                       const CellParameters& cell) {
    if (!(tau > 0.0) || !(cell.power_density_w_per_cm2 > 0.0) ||
        !(cell.capacity_factor > 0.0) || !(cell.consumable_fraction > 0.0)) {
        throw std::invalid_argument("required_dissolution_rate: parameters must be positive");
    }
    const double hours_per_year = 8760.0 * cell.capacity_factor;
    std::vector<double> out;
    out.reserve(omega_series.size());
    for (double w : omega_series.values()) {
        // kg/GW equals mg/W numerically after the 1e-3 factor.
        const double areal_mg_per_cm2 = w * 1e-3 * cell.power_density_w_per_cm2;
        out.push_back(cell.consumable_fraction * areal_mg_per_cm2 / (tau * hours_per_year));
    }
    return AnnualSeries(omega_series.start_year(), std::move(out), Unit::MgPerCm2Hour);
}

}  // namespace irflow
