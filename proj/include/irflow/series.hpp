#ifndef IRFLOW_SERIES_HPP
#define IRFLOW_SERIES_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace irflow {

/// Physical unit carried by an AnnualSeries. Arithmetic between mismatched
/// units is rejected, except scaling by a dimensionless series or constant.
enum class Unit {
    Gigawatt,          // GW (stock)
    GigawattPerYear,   // GW/yr (flow)
    Tons,              // t iridium (stock)
    TonsPerYear,       // t/yr iridium (flow)
    KgPerGigawatt,     // kg·GW⁻¹ specific power density
    EurPerKg,          // €/kg
    Fraction,          // dimensionless
    MgPerCm2Hour,      // mg·cm⁻²·h⁻¹ dissolution rate
    TonsPgm,           // t platinum-group metal
};

std::string unit_name(Unit u);
Unit unit_from_name(const std::string& name);

/// Integral of a flow unit (t/yr -> t, GW/yr -> GW). Identity for the rest.
Unit stock_unit_of(Unit u);

/// Year-indexed sequence of finite doubles anchored at a start year.
/// Immutable after construction; index i maps to year start_year + i.
class AnnualSeries {
public:
    AnnualSeries(int start_year, std::vector<double> values, Unit unit);

    int start_year() const { return start_year_; }
    int end_year() const { return start_year_ + static_cast<int>(values_.size()) - 1; }
    std::size_t size() const { return values_.size(); }
    Unit unit() const { return unit_; }
    std::span<const double> values() const { return values_; }

    bool covers(int year) const { return year >= start_year() && year <= end_year(); }
    /// Value at a calendar year; throws std::out_of_range outside coverage.
    double at(int year) const;
    double operator[](std::size_t i) const { return values_[i]; }

    AnnualSeries scaled(double factor) const;
    AnnualSeries negated() const { return scaled(-1.0); }
    /// Running sum; unit becomes the corresponding stock unit.
    AnnualSeries cumulative() const;

private:
    int start_year_;
    std::vector<double> values_;
    Unit unit_;
};

enum class CombineOp { Add, Sub };

/// Element-wise add/sub on the intersection of year ranges.
/// Unit tags must match; empty intersection is an error.
AnnualSeries combine(const AnnualSeries& a, const AnnualSeries& b, CombineOp op);

/// Piecewise-linear interpolation through (year, value) anchors, evaluated at
/// integer years over [range_first, range_last]. Years past the last anchor
/// continue the final segment's slope. Anchors must be strictly increasing in
/// year and there must be at least two of them.
AnnualSeries interpolate_linear(const std::vector<std::pair<int, double>>& anchors,
                                int range_first, int range_last, Unit unit);

}  // namespace irflow

#endif
