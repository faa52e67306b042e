#include "irflow/supply.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace irflow {

std::string sector_name(Sector s) {
    switch (s) {
        case Sector::Electrical: return "electrical";
        case Sector::Electrochemical: return "electrochemical";
        case Sector::Chemical: return "chemical";
        case Sector::Other: return "other";
    }
    throw std::logic_error("unhandled sector");
}

Sector sector_from_name(const std::string& name) {
    for (Sector s : {Sector::Electrical, Sector::Electrochemical, Sector::Chemical, Sector::Other}) {
        if (sector_name(s) == name) return s;
    }
    throw std::invalid_argument("unknown sector: " + name);
}

void SectorHistory::validate() const {
    if (demand.size() < 5) {
        throw std::invalid_argument("sector history needs at least 5 consecutive years");
    }
    for (double v : demand.values()) {
        if (v < 0.0) {
            throw std::invalid_argument("sector demand history must be non-negative");
        }
    }
    if (demand.unit() != Unit::TonsPerYear || price.unit() != Unit::EurPerKg) {
        throw std::invalid_argument("sector history units must be t/yr demand and EUR/kg price");
    }
}

DampedTrendModel fit_damped_trend(const AnnualSeries& history, double phi) {
    if (history.size() < 5) {
        throw std::invalid_argument("fit_damped_trend: need at least 5 observations");
    }
    if (!(phi > 0.0) || phi > 1.0) {
        throw std::invalid_argument("fit_damped_trend: phi must lie in (0, 1]");
    }
    const auto y = history.values();
    DampedTrendModel best;
    double best_sse = std::numeric_limits<double>::infinity();
    for (int ai = 1; ai <= 100; ++ai) {
        const double a = ai / 100.0;
        for (int bi = 1; bi <= 100; ++bi) {
            const double b = bi / 100.0;
            double lev = y[0];
            double tr = y[1] - y[0];
            double sse = 0.0;
            for (std::size_t t = 1; t < y.size(); ++t) {
                const double f = lev + phi * tr;
                const double e = y[t] - f;
                sse += e * e;
                const double prev = lev;
                lev = a * y[t] + (1.0 - a) * (lev + phi * tr);
                tr = b * (lev - prev) + (1.0 - b) * phi * tr;
            }
            // Strict < keeps the first minimum, i.e. the smallest (alpha, beta)
            // in the ascending scan order — a deterministic tie-break.
            if (sse < best_sse) {
                best_sse = sse;
                best = DampedTrendModel{a, b, phi, lev, tr, sse, history.end_year(), history.unit()};
            }
        }
    }
    if (!std::isfinite(best.level) || !std::isfinite(best.trend)) {
        throw std::invalid_argument("fit_damped_trend: fitted state is not finite");
    }
    return best;
}

AnnualSeries forecast(const DampedTrendModel& model, int h) {
    if (h < 1) {
        throw std::invalid_argument("forecast: horizon must be >= 1");
    }
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(h));
    double damp_sum = 0.0;
    double damp_pow = 1.0;
    for (int j = 1; j <= h; ++j) {
        damp_pow *= model.phi;
        damp_sum += damp_pow;
        out.push_back(model.level + damp_sum * model.trend);
    }
    return AnnualSeries(model.last_year + 1, std::move(out), model.unit);
}

std::string variant_name(SupplyVariant v) {
    return v == SupplyVariant::Strong ? "strong" : "weak";
}

double variant_phi(SupplyVariant v) {
    return v == SupplyVariant::Strong ? 0.9 : 0.8;
}

SupplyProjection project_supply(const std::vector<SectorHistory>& histories,
                                SupplyVariant variant, double primary_t_per_year,
                                int horizon_first, int horizon_last) {
    if (horizon_first > horizon_last) {
        throw std::invalid_argument("project_supply: empty horizon");
    }
    const SectorHistory* by_sector[4] = {nullptr, nullptr, nullptr, nullptr};
    for (const auto& h : histories) {
        h.validate();
        by_sector[static_cast<int>(h.sector)] = &h;
    }
    for (Sector s : {Sector::Electrical, Sector::Electrochemical, Sector::Chemical, Sector::Other}) {
        if (by_sector[static_cast<int>(s)] == nullptr) {
            throw std::invalid_argument("project_supply: missing sector history: " + sector_name(s));
        }
    }
    const SectorHistory& electrical = *by_sector[static_cast<int>(Sector::Electrical)];
    if (horizon_first <= electrical.demand.end_year()) {
        throw std::invalid_argument("project_supply: horizon overlaps the historical record");
    }

    const double phi = variant_phi(variant);
    const int n = horizon_last - horizon_first + 1;
    const auto un = static_cast<std::size_t>(n);

    auto clamped_forecast = [&](const SectorHistory& h) {
        const DampedTrendModel model = fit_damped_trend(h.demand, phi);
        const int lead = horizon_first - (model.last_year + 1);
        AnnualSeries raw = forecast(model, lead + n);
        const double cap = h.demand.values().back();
        std::vector<double> vals;
        vals.reserve(un);
        for (int y = horizon_first; y <= horizon_last; ++y) {
            vals.push_back(std::clamp(raw.at(y), 0.0, cap));
        }
        return AnnualSeries(horizon_first, std::move(vals), Unit::TonsPerYear);
    };
    auto held_constant = [&](const SectorHistory& h) {
        return AnnualSeries(horizon_first,
                            std::vector<double>(un, h.demand.values().back()),
                            Unit::TonsPerYear);
    };

    std::map<Sector, AnnualSeries> forecasts;
    forecasts.emplace(Sector::Electrical, clamped_forecast(electrical));
    forecasts.emplace(Sector::Other, clamped_forecast(*by_sector[static_cast<int>(Sector::Other)]));
    forecasts.emplace(Sector::Chemical, held_constant(*by_sector[static_cast<int>(Sector::Chemical)]));
    forecasts.emplace(Sector::Electrochemical,
                      held_constant(*by_sector[static_cast<int>(Sector::Electrochemical)]));

    std::vector<double> avail;
    avail.reserve(un);
    for (int y = horizon_first; y <= horizon_last; ++y) {
        double competing = 0.0;
        for (const auto& [sec, series] : forecasts) competing += series.at(y);
        avail.push_back(std::max(0.0, primary_t_per_year - competing));
    }

    const DampedTrendModel price_model = fit_damped_trend(electrical.price, phi);
    const int price_lead = horizon_first - (price_model.last_year + 1);
    AnnualSeries price_raw = forecast(price_model, price_lead + n);
    std::vector<double> price_vals;
    price_vals.reserve(un);
    for (int y = horizon_first; y <= horizon_last; ++y) {
        price_vals.push_back(std::max(0.0, price_raw.at(y)));
    }

    return SupplyProjection{
        AnnualSeries(horizon_first, std::vector<double>(un, primary_t_per_year), Unit::TonsPerYear),
        std::move(forecasts),
        AnnualSeries(horizon_first, std::move(avail), Unit::TonsPerYear),
        variant,
        AnnualSeries(horizon_first, std::move(price_vals), Unit::EurPerKg)};
}

std::vector<SectorHistory> load_history_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open history file: " + path);
    }
    std::string line;
    if (!std::getline(in, line) || line != "year,sector,demand_t,price_eur_per_kg") {
        throw std::invalid_argument(path + ":1: expected header year,sector,demand_t,price_eur_per_kg");
    }
    struct Raw {
        std::vector<int> years;
        std::vector<double> demand;
        std::vector<double> price;
    };
    std::map<std::string, Raw> per_sector;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string year_s, sector_s, demand_s, price_s;
        if (!std::getline(ss, year_s, ',') || !std::getline(ss, sector_s, ',') ||
            !std::getline(ss, demand_s, ',') || !std::getline(ss, price_s)) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected 4 columns");
        }
        int year;
        double demand, price;
        try {
            year = std::stoi(year_s);
            demand = std::stod(demand_s);
            price = std::stod(price_s);
        } catch (const std::exception&) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": malformed number");
        }
        sector_from_name(sector_s);  // rejects unknown sector names
        if (demand < 0.0) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": negative demand for sector " + sector_s);
        }
        Raw& r = per_sector[sector_s];
        if (!r.years.empty() && year != r.years.back() + 1) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": years not contiguous for sector " + sector_s);
        }
        r.years.push_back(year);
        r.demand.push_back(demand);
        r.price.push_back(price);
    }
    for (const char* required : {"electrical", "electrochemical", "chemical", "other"}) {
        if (per_sector.find(required) == per_sector.end()) {
            throw std::invalid_argument(path + ": sector coverage incomplete: missing " +
                                        std::string(required));
        }
    }
    std::vector<SectorHistory> out;
    for (const auto& [name, raw] : per_sector) {
        SectorHistory h{sector_from_name(name),
                        AnnualSeries(raw.years.front(), raw.demand, Unit::TonsPerYear),
                        AnnualSeries(raw.years.front(), raw.price, Unit::EurPerKg)};
        h.validate();
        out.push_back(std::move(h));
    }
    return out;
}

}  // namespace irflow
