#ifndef IRFLOW_FLEET_HPP
#define IRFLOW_FLEET_HPP

#include <string>
#include <vector>

#include "irflow/lifetime.hpp"
#include "irflow/scenario.hpp"
#include "irflow/series.hpp"

namespace irflow {

/// Per-year mass flows of one fleet run, all in tons of iridium per year
/// except operating_capacity (GW). Invariant after netting:
///   m_total = m_cap + m_eol - m_recycling + surplus_recycled, m_total >= 0,
/// and at most one of m_total, surplus_recycled is positive in a given year.
struct DemandBreakdown {
    AnnualSeries m_cap;
    AnnualSeries m_eol;
    AnnualSeries m_recycling;
    AnnualSeries m_total;
    AnnualSeries surplus_recycled;
    AnnualSeries operating_capacity;
    std::vector<std::string> warnings;
};

/// Deterministic expected-value engine: retirements are the convolution of
/// installs with the discrete lifetime PMF (renewal recursion), applied
/// recursively to replacement installs. No RNG.
DemandBreakdown simulate_fleet_expected(const Scenario& scenario);

/// Monte Carlo engine: one simulated unit per unit_size_mw * mc_subsample MW,
/// integer lifetimes drawn by inverse CDF from the same discrete PMF the
/// expected engine uses. Fractional-unit residuals carry to the next year.
/// Deterministic given (scenario, seed).
DemandBreakdown simulate_fleet_mc(const Scenario& scenario);

}  // namespace irflow

#endif
