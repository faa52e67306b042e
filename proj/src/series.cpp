#include "irflow/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace irflow {

std::string unit_name(Unit u) {
    switch (u) {
        case Unit::Gigawatt: return "GW";
        case Unit::GigawattPerYear: return "GW/yr";
        case Unit::Tons: return "t";
        case Unit::TonsPerYear: return "t/yr";
        case Unit::KgPerGigawatt: return "kg/GW";
        case Unit::EurPerKg: return "EUR/kg";
        case Unit::Fraction: return "fraction";
        case Unit::MgPerCm2Hour: return "mg/cm2/h";
        case Unit::TonsPgm: return "t_PGM";
    }
    throw std::logic_error("unhandled unit");
}

Unit unit_from_name(const std::string& name) {
    for (Unit u : {Unit::Gigawatt, Unit::GigawattPerYear, Unit::Tons, Unit::TonsPerYear,
                   Unit::KgPerGigawatt, Unit::EurPerKg, Unit::Fraction, Unit::MgPerCm2Hour,
                   Unit::TonsPgm}) {
        if (unit_name(u) == name) return u;
    }
    throw std::invalid_argument("unknown unit tag: " + name);
}

Unit stock_unit_of(Unit u) {
    if (u == Unit::TonsPerYear) return Unit::Tons;
    if (u == Unit::GigawattPerYear) return Unit::Gigawatt;
    return u;
}

AnnualSeries::AnnualSeries(int start_year, std::vector<double> values, Unit unit)
    : start_year_(start_year), values_(std::move(values)), unit_(unit) {
    if (values_.empty()) {
        throw std::invalid_argument("AnnualSeries requires at least one value");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("AnnualSeries values must be finite");
        }
    }
}

double AnnualSeries::at(int year) const {
    if (!covers(year)) {
        throw std::out_of_range("year " + std::to_string(year) + " outside series range [" +
                                std::to_string(start_year()) + ", " +
                                std::to_string(end_year()) + "]");
    }
    return values_[static_cast<std::size_t>(year - start_year_)];
}

AnnualSeries AnnualSeries::scaled(double factor) const {
    std::vector<double> out(values_);
    for (double& v : out) v *= factor;
    return AnnualSeries(start_year_, std::move(out), unit_);
}

AnnualSeries AnnualSeries::cumulative() const {
    std::vector<double> out(values_);
    for (std::size_t i = 1; i < out.size(); ++i) out[i] += out[i - 1];
    return AnnualSeries(start_year_, std::move(out), stock_unit_of(unit_));
}

AnnualSeries combine(const AnnualSeries& a, const AnnualSeries& b, CombineOp op) {
    if (a.unit() != b.unit()) {
        throw std::invalid_argument("combine: unit mismatch (" + unit_name(a.unit()) + " vs " +
                                    unit_name(b.unit()) + ")");
    }
    const int first = std::max(a.start_year(), b.start_year());
    const int last = std::min(a.end_year(), b.end_year());
    if (first > last) {
        throw std::invalid_argument("combine: year ranges do not overlap");
    }
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(last - first + 1));
    for (int y = first; y <= last; ++y) {
        const double rhs = b.at(y);
        out.push_back(op == CombineOp::Add ? a.at(y) + rhs : a.at(y) - rhs);
    }
    return AnnualSeries(first, std::move(out), a.unit());
}

AnnualSeries interpolate_linear(const std::vector<std::pair<int, double>>& anchors,
                                int range_first, int range_last, Unit unit) {
    if (anchors.size() < 2) {
        throw std::invalid_argument("interpolate_linear: need at least two anchors");
    }
    for (std::size_t i = 1; i < anchors.size(); ++i) {
        if (anchors[i].first <= anchors[i - 1].first) {
            throw std::invalid_argument("interpolate_linear: anchor years must strictly increase");
        }
    }
    if (range_first > range_last) {
        throw std::invalid_argument("interpolate_linear: empty year range");
    }
    if (range_first < anchors.front().first) {
        throw std::invalid_argument("interpolate_linear: range starts before first anchor");
    }
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(range_last - range_first + 1));
    for (int y = range_first; y <= range_last; ++y) {
        std::size_t seg = anchors.size() - 1;
        for (std::size_t i = 1; i < anchors.size(); ++i) {
            if (y <= anchors[i].first) {
                seg = i;
                break;
            }
        }
        const auto& [xa, va] = anchors[seg - 1];
        const auto& [xb, vb] = anchors[seg];
        if (y == xa) {
            out.push_back(va);
        } else if (y == xb) {
            out.push_back(vb);
        } else {
            const double slope = (vb - va) / static_cast<double>(xb - xa);
            out.push_back(y < xb ? va + slope * (y - xa) : vb + slope * (y - xb));
        }
    }
    return AnnualSeries(range_first, std::move(out), unit);
}

}  // namespace irflow
