#ifndef IRFLOW_GAP_HPP
#define IRFLOW_GAP_HPP

#include <string>
#include <vector>

#include "irflow/fleet.hpp"
#include "irflow/scenario.hpp"
#include "irflow/series.hpp"

namespace irflow {

enum class GapKind { Shortfall, Surplus };

/// Maximal run of consecutive years with a same-sign, nonzero gap.
struct GapSegment {
    int start_year;
    int end_year;  // inclusive
    GapKind kind;
    double integral;  // t, always > 0
};

struct GapReport {
    AnnualSeries gap;        // t/yr, demand - supply
    std::vector<GapSegment> segments;
    AnnualSeries stockpile;  // t; may go negative to expose infeasibility
    double total_shortfall;  // t
    double total_surplus;    // t
    /// Net shortfall / (baseline supply summed over shortfall years).
    double required_increase_pct_net;
    /// Gross shortfall over the same denominator; both are emitted because
    /// which one the headline percentages use is ambiguous.
    double required_increase_pct_gross;
    bool feasible;  // min stockpile >= 0
};

/// Gap segmentation, stockpile trajectory and required-supply-increase
/// percentages. stockpile[i] = initial_stock + cumulative (supply - demand).
GapReport analyze_gap(const AnnualSeries& demand, const AnnualSeries& supply,
                      double initial_stock = 1.0, double baseline_primary = 7.5);

enum class SweepParameter { Tau, Gamma };

struct SweepResult {
    SweepParameter parameter;
    std::vector<double> values;             // tau in years, or gamma_start of each ramp
    std::vector<double> cumulative_demand;  // t, aligned with values
    double minimizer;                       // tie-break to the earlier entry
};

enum class EngineKind { Expected, Mc };

/// One fleet run per tau, everything else fixed; records cumulative m_total.
SweepResult sweep_tau(const Scenario& base, const std::vector<double>& taus,
                      EngineKind engine = EngineKind::Expected);

/// One fleet run per recycling ramp. values holds each ramp's gamma_start.
SweepResult sweep_gamma(const Scenario& base, const std::vector<RecyclingRamp>& ramps,
                        EngineKind engine = EngineKind::Expected);

/// Platinum-group-metal output needed to free up extra iridium, assuming
/// iridium is a fixed by-product fraction of PGM production.
AnnualSeries pgm_required(const AnnualSeries& extra_iridium, double ir_fraction = 0.02);
double pgm_required(double extra_iridium_t, double ir_fraction = 0.02);

/// Greedy supply-constrained build-out: each year the available iridium
/// (supply plus the constrained fleet's own recycled returns) first funds
/// same-year replacements of retiring capacity; the remainder divided by
/// omega becomes expansion. Returns cumulative achievable capacity [GW].
AnnualSeries max_capacity_path(const AnnualSeries& supply, const OmegaTrajectory& omega,
                               const Scenario& base);

struct CellParameters {
    double power_density_w_per_cm2 = 3.0;
    double capacity_factor = 0.9;           // operating hours = 8760 * CF
    double consumable_fraction = 1.0;
};

/// Maximum tolerable catalyst dissolution rate [mg/cm2/h] for each year's
/// areal loading to survive a tau-year lifetime.
AnnualSeries required_dissolution_rate(const AnnualSeries& omega_series, double tau,
                                       const CellParameters& cell = {});

}  // namespace irflow

#endif
