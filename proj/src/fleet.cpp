#include "irflow/fleet.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace irflow {

namespace {

struct HorizonInputs {
    int first;
    int last;
    int n;
    std::vector<double> additions;  // GW/yr over the horizon
    std::vector<double> omega;      // kg/GW at each horizon year
    std::vector<double> gamma;      // recycling efficiency at each horizon year
};

HorizonInputs prepare(const Scenario& scenario) {
    scenario.validate();
    HorizonInputs h;
    h.first = scenario.horizon_first;
    h.last = scenario.horizon_last;
    h.n = h.last - h.first + 1;
    if (h.n < 2) {
        throw std::invalid_argument("fleet simulation requires a horizon of at least 2 years");
    }
    h.additions.reserve(static_cast<std::size_t>(h.n));
    const AnnualSeries& cum = scenario.pathway.cumulative;
    for (int y = h.first; y <= h.last; ++y) {
        h.additions.push_back(y == h.first ? cum.at(y) : cum.at(y) - cum.at(y - 1));
        h.omega.push_back(omega_at(scenario.omega, y));
        h.gamma.push_back(gamma_at(scenario.gamma, y));
    }
    return h;
}

DemandBreakdown assemble(const Scenario& scenario, const HorizonInputs& h,
                         std::vector<double> m_cap, std::vector<double> m_eol,
                         std::vector<double> recycled_raw, std::vector<double> operating,
                         std::vector<std::string> warnings) {
    // Recycled mass becomes a demand credit recycling_lag_years after the
    // retirement that produced it; credits past the horizon are dropped.
    std::vector<double> m_rec(static_cast<std::size_t>(h.n), 0.0);
    for (int i = 0; i < h.n; ++i) {
        const int j = i + scenario.recycling_lag_years;
        if (j < h.n) m_rec[static_cast<std::size_t>(j)] += recycled_raw[static_cast<std::size_t>(i)];
    }
    std::vector<double> m_tot(static_cast<std::size_t>(h.n));
    std::vector<double> surplus(static_cast<std::size_t>(h.n));
    for (int i = 0; i < h.n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        const double raw = m_cap[u] + m_eol[u] - m_rec[u];
        m_tot[u] = raw > 0.0 ? raw : 0.0;
        surplus[u] = raw < 0.0 ? -raw : 0.0;
    }
    return DemandBreakdown{
        AnnualSeries(h.first, std::move(m_cap), Unit::TonsPerYear),
        AnnualSeries(h.first, std::move(m_eol), Unit::TonsPerYear),
        AnnualSeries(h.first, std::move(m_rec), Unit::TonsPerYear),
        AnnualSeries(h.first, std::move(m_tot), Unit::TonsPerYear),
        AnnualSeries(h.first, std::move(surplus), Unit::TonsPerYear),
        AnnualSeries(h.first, std::move(operating), Unit::Gigawatt),
        std::move(warnings)};
}

}  // namespace

DemandBreakdown simulate_fleet_expected(const Scenario& scenario) {
    const HorizonInputs h = prepare(scenario);
    const DiscretePmf pmf(scenario.lifetime);
    const auto n = static_cast<std::size_t>(h.n);

    std::vector<double> installs(n, 0.0);  // GW installed per year, any origin
    std::vector<double> m_cap(n, 0.0), m_eol(n, 0.0), rec_raw(n, 0.0), operating(n, 0.0);

    for (int i = 0; i < h.n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        double ret_cap = 0.0;   // GW retiring this year
        double ret_mass = 0.0;  // kg contained in the retiring capacity
        for (int k = pmf.lower(); k <= pmf.upper(); ++k) {
            const int j = i - k;
            if (j >= 0) {
                const auto uj = static_cast<std::size_t>(j);
                ret_cap += pmf.at(k) * installs[uj];
                ret_mass += pmf.at(k) * installs[uj] * h.omega[uj];
            }
        }
        m_cap[u] = h.additions[u] * h.omega[u] / 1000.0;
        m_eol[u] = ret_cap * h.omega[u] / 1000.0;
        rec_raw[u] = ret_mass / 1000.0 * h.gamma[u];
        installs[u] = h.additions[u] + ret_cap;
        operating[u] = scenario.pathway.cumulative.at(h.first + i);
    }
    return assemble(scenario, h, std::move(m_cap), std::move(m_eol), std::move(rec_raw),
                    std::move(operating), {});
}

DemandBreakdown simulate_fleet_mc(const Scenario& scenario) {
    const HorizonInputs h = prepare(scenario);
    const DiscretePmf pmf(scenario.lifetime);
    const auto n = static_cast<std::size_t>(h.n);
    const double unit_gw = scenario.unit_size_mw * scenario.mc_subsample / 1000.0;

    SplitMix64 rng(scenario.seed);
    std::vector<std::string> warnings;
    std::vector<double> m_cap(n, 0.0), m_eol(n, 0.0), rec_raw(n, 0.0), operating(n, 0.0);
    // retire_units[i]: simulated units retiring in year i; retire_kg[i]: the
    // iridium they contain (loaded at their install-year omega).
    std::vector<std::int64_t> retire_units(n, 0);
    std::vector<double> retire_kg(n, 0.0);

    std::int64_t alive = 0;
    double residual_gw = 0.0;  // fractional-unit capacity carried forward

    auto install = [&](int i, std::int64_t count) {
        const auto u = static_cast<std::size_t>(i);
        for (std::int64_t c = 0; c < count; ++c) {
            const int k = pmf.sample(rng);
            const int j = i + k;
            if (j < h.n) {
                retire_units[static_cast<std::size_t>(j)] += 1;
                retire_kg[static_cast<std::size_t>(j)] += unit_gw * h.omega[u];
            }
        }
        alive += count;
    };

    for (int i = 0; i < h.n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        const double target = h.additions[u] + residual_gw;
        const auto n_new = static_cast<std::int64_t>(std::floor(target / unit_gw + 1e-9));
        residual_gw = target - static_cast<double>(n_new) * unit_gw;
        if (n_new == 0 && h.additions[u] > 0.0) {
            warnings.push_back("year " + std::to_string(h.first + i) +
                               ": additions round to zero units (residual " +
                               std::to_string(residual_gw) + " GW carried)");
        }

        const std::int64_t n_ret = retire_units[u];
        alive -= n_ret;
        install(i, n_new);
        install(i, n_ret);  // same-year replacement of retired capacity

        m_cap[u] = static_cast<double>(n_new) * unit_gw * h.omega[u] / 1000.0;
        m_eol[u] = static_cast<double>(n_ret) * unit_gw * h.omega[u] / 1000.0;
        rec_raw[u] = retire_kg[u] / 1000.0 * h.gamma[u];
        operating[u] = static_cast<double>(alive) * unit_gw;
    }
    return assemble(scenario, h, std::move(m_cap), std::move(m_eol), std::move(rec_raw),
                    std::move(operating), std::move(warnings));
}

}  // namespace irflow
