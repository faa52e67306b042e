#ifndef IRFLOW_SUPPLY_HPP
#define IRFLOW_SUPPLY_HPP

#include <map>
#include <string>
#include <vector>

#include "irflow/series.hpp"

namespace irflow {

enum class Sector { Electrical, Electrochemical, Chemical, Other };

std::string sector_name(Sector s);
Sector sector_from_name(const std::string& name);

/// Historical annual demand of one competing sector plus the shared price
/// series (both typically 2014-2023, at least 5 consecutive years).
struct SectorHistory {
    Sector sector;
    AnnualSeries demand;  // t/yr, >= 0
    AnnualSeries price;   // EUR/kg, shared across sectors

    void validate() const;
};

/// Damped-trend exponential smoothing state after fitting:
///   level_t = alpha*y_t + (1-alpha)*(level_{t-1} + phi*trend_{t-1})
///   trend_t = beta*(level_t - level_{t-1}) + (1-beta)*phi*trend_{t-1}
struct DampedTrendModel {
    double alpha = 0.0;
    double beta = 0.0;
    double phi = 1.0;
    double level = 0.0;
    double trend = 0.0;
    double fitted_sse = 0.0;
    int last_year = 0;  // year of the final observation the state reflects
    Unit unit = Unit::TonsPerYear;
};

/// Grid-search fit of (alpha, beta) on a 0.01 lattice minimizing one-step
/// SSE; ties break to the smaller (alpha, beta) pair. Initialization:
/// level0 = y0, trend0 = y1 - y0.
DampedTrendModel fit_damped_trend(const AnnualSeries& history, double phi);

/// h-step forecasts y_hat(t+j) = level + (phi + ... + phi^j) * trend for
/// j = 1..h, anchored at last_year + 1.
AnnualSeries forecast(const DampedTrendModel& model, int h);

enum class SupplyVariant { Strong, Weak };

std::string variant_name(SupplyVariant v);

/// phi used for the price and the price-responsive sectors under a variant:
/// strong supply -> 0.9 (faster decline of competing demand), weak -> 0.8.
double variant_phi(SupplyVariant v);

struct SupplyProjection {
    AnnualSeries primary;                          // t/yr, constant by default
    std::map<Sector, AnnualSeries> sector_forecasts;  // t/yr
    AnnualSeries available_for_pemel;              // t/yr, in [0, primary]
    SupplyVariant variant;
    AnnualSeries price_forecast;                   // EUR/kg, reported only
};

/// Reconstruction of the competing-sector supply picture: electrical and
/// other demands are damped-trend forecasts (clamped to [0, last observed]);
/// chemical and electrochemical are held at their last observed values;
/// available_for_pemel = max(0, primary - sum of sector demands).
SupplyProjection project_supply(const std::vector<SectorHistory>& histories,
                                SupplyVariant variant, double primary_t_per_year,
                                int horizon_first, int horizon_last);

/// Load sector histories from a CSV with header
/// year,sector,demand_t,price_eur_per_kg. Throws std::invalid_argument with
/// the offending line on any schema violation.
std::vector<SectorHistory> load_history_csv(const std::string& path);

}  // namespace irflow

#endif
