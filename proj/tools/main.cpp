#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "irflow/config.hpp"
#include "irflow/fleet.hpp"
#include "irflow/gap.hpp"
#include "irflow/rng.hpp"
#include "irflow/scenario.hpp"
#include "irflow/series.hpp"
#include "irflow/supply.hpp"

namespace fs = std::filesystem;
using namespace irflow;

namespace {

struct GlobalOpts {
    std::string out_dir = ".";
    std::string format = "csv";
    bool quiet = false;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

void say(const GlobalOpts& g, const std::string& msg) {
    if (!g.quiet) std::cout << msg << "\n";
}

void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory: " + dir);
    }
}

DemandBreakdown run_engine(const Scenario& s, EngineKind engine) {
    return engine == EngineKind::Expected ? simulate_fleet_expected(s) : simulate_fleet_mc(s);
}

EngineKind engine_from_name(const std::string& name) {
    if (name == "mc") return EngineKind::Mc;
    if (name == "expected") return EngineKind::Expected;
    throw std::invalid_argument("engine must be mc or expected");
}

void write_breakdown_csv(const DemandBreakdown& b, const std::string& path) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < b.m_total.size(); ++i) {
        const double year = b.m_total.start_year() + static_cast<int>(i);
        rows.push_back({year, b.m_cap[i], b.m_eol[i], b.m_recycling[i], b.m_total[i],
                        b.surplus_recycled[i], b.operating_capacity[i]});
    }
    write_csv(path, "year,m_cap,m_eol,m_recycling,m_total,surplus_recycled,operating_capacity_gw",
              rows);
}

nlohmann::json gap_report_json(const GapReport& r) {
    nlohmann::json j;
    j["total_shortfall_t"] = r.total_shortfall;
    j["total_surplus_t"] = r.total_surplus;
    j["required_supply_increase_pct_net"] = r.required_increase_pct_net;
    j["required_supply_increase_pct_gross"] = r.required_increase_pct_gross;
    j["feasible"] = r.feasible;
    j["segments"] = nlohmann::json::array();
    for (const auto& seg : r.segments) {
        j["segments"].push_back({{"start_year", seg.start_year},
                                 {"end_year", seg.end_year},
                                 {"kind", seg.kind == GapKind::Shortfall ? "shortfall" : "surplus"},
                                 {"integral_t", seg.integral}});
    }
    return j;
}

void write_supply_csv(const SupplyProjection& p, const std::string& path) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < p.primary.size(); ++i) {
        const double year = p.primary.start_year() + static_cast<int>(i);
        rows.push_back({year, p.primary[i], p.sector_forecasts.at(Sector::Electrical)[i],
                        p.sector_forecasts.at(Sector::Electrochemical)[i],
                        p.sector_forecasts.at(Sector::Chemical)[i],
                        p.sector_forecasts.at(Sector::Other)[i], p.available_for_pemel[i],
                        p.price_forecast[i]});
    }
    write_csv(path, "year,primary_t,electrical_t,electrochemical_t,chemical_t,other_t,"
                    "available_pemel_t,price_forecast", rows);
}

RunManifest make_manifest(const Scenario& s, const std::string& engine, const std::string& digest) {
    RunManifest m;
    m.scenario_id = s.id;
    m.engine = engine;
    m.seed = s.seed;
    m.config_digest = digest;
    m.rng_algorithm = SplitMix64::algorithm_name();
    m.timestamp_utc = current_utc_timestamp();
    return m;
}

// ---------------------------------------------------------------- subcommands

int cmd_scenario_validate(const GlobalOpts& g, const std::string& scenario_path) {
    std::string digest;
    const Scenario s = load_scenario(scenario_path, &digest);
    say(g, "scenario '" + s.id + "' ok (digest " + digest + ")");
    if (!g.quiet) {
        std::cout << "year,cumulative_gw,additions_gw,omega_kg_per_gw,gamma\n";
        for (int y = s.horizon_first; y <= s.horizon_last; ++y) {
            std::cout << y << "," << format_double(s.pathway.cumulative.at(y)) << ","
                      << format_double(s.pathway.additions.at(y)) << ","
                      << format_double(omega_at(s.omega, y)) << ","
                      << format_double(gamma_at(s.gamma, y)) << "\n";
        }
    }
    return 0;
}

int cmd_simulate(const GlobalOpts& g, const std::string& scenario_path,
                 const std::string& engine_name) {
    std::string digest;
    Scenario s = load_scenario(scenario_path, &digest);
    if (g.seed_set) s.seed = g.seed;
    const DemandBreakdown b = run_engine(s, engine_from_name(engine_name));
    ensure_out_dir(g.out_dir);
    write_breakdown_csv(b, (fs::path(g.out_dir) / "demand_breakdown.csv").string());
    write_manifest_json(make_manifest(s, engine_name, digest),
                        (fs::path(g.out_dir) / "run_meta.json").string());
    for (const auto& w : b.warnings) say(g, "warning: " + w);
    say(g, "wrote " + (fs::path(g.out_dir) / "demand_breakdown.csv").string());
    return 0;
}

int cmd_supply(const GlobalOpts& g, const std::string& history_path,
               const std::string& variant_name_s, int horizon_last, double primary) {
    const auto histories = load_history_csv(history_path);
    const SupplyVariant variant =
        variant_name_s == "strong" ? SupplyVariant::Strong : SupplyVariant::Weak;
    if (variant_name_s != "strong" && variant_name_s != "weak") {
        throw std::invalid_argument("variant must be strong or weak");
    }
    int first_forecast = 0;
    for (const auto& h : histories) {
        first_forecast = std::max(first_forecast, h.demand.end_year() + 1);
    }
    const SupplyProjection p = project_supply(histories, variant, primary, first_forecast, horizon_last);
    ensure_out_dir(g.out_dir);
    const std::string path = (fs::path(g.out_dir) / "supply.csv").string();
    write_supply_csv(p, path);
    say(g, "wrote " + path);
    return 0;
}

int cmd_gaps(const GlobalOpts& g, const std::string& demand_path, const std::string& supply_path,
             double stock0, double baseline) {
    const AnnualSeries demand = series_from_csv(demand_path);
    const AnnualSeries supply = series_from_csv(supply_path);
    const GapReport r = analyze_gap(demand, supply, stock0, baseline);
    ensure_out_dir(g.out_dir);
    {
        std::ofstream out((fs::path(g.out_dir) / "gap_report.json").string(), std::ios::binary);
        out << gap_report_json(r).dump(2) << "\n";
    }
    series_to_csv(r.stockpile, (fs::path(g.out_dir) / "stockpile.csv").string());
    say(g, std::string("feasible: ") + (r.feasible ? "yes" : "no") + ", shortfall " +
               format_double(r.total_shortfall) + " t, surplus " +
               format_double(r.total_surplus) + " t");
    return 0;
}

int cmd_sweep(const GlobalOpts& g, const std::string& scenario_path, const std::string& param,
              const std::vector<double>& values, const std::string& engine_name) {
    std::string digest;
    Scenario s = load_scenario(scenario_path, &digest);
    if (g.seed_set) s.seed = g.seed;
    const EngineKind engine = engine_from_name(engine_name);
    SweepResult r{SweepParameter::Tau, {}, {}, 0.0};
    if (param == "tau") {
        std::vector<double> taus = values;
        if (taus.empty()) {
            for (int t = 5; t <= 20; ++t) taus.push_back(t);
        }
        r = sweep_tau(s, taus, engine);
    } else if (param == "gamma") {
        std::vector<RecyclingRamp> ramps;
        std::vector<double> starts = values;
        if (starts.empty()) starts = {0.70, 0.80, 0.90};
        for (double g0 : starts) {
            RecyclingRamp ramp = s.gamma;
            ramp.gamma_start = g0;
            if (ramp.gamma_end < g0) ramp.gamma_end = g0;
            ramps.push_back(ramp);
        }
        r = sweep_gamma(s, ramps, engine);
    } else {
        throw std::invalid_argument("sweep param must be tau or gamma");
    }
    ensure_out_dir(g.out_dir);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < r.values.size(); ++i) {
        rows.push_back({r.values[i], r.cumulative_demand[i]});
    }
    const std::string path = (fs::path(g.out_dir) / "sweep.csv").string();
    write_csv(path, param + ",cumulative_demand_t", rows);
    say(g, "minimizer: " + format_double(r.minimizer));
    return 0;
}

int cmd_derived_pgm(const GlobalOpts& g, double extra_t, double fraction) {
    std::cout << format_double(pgm_required(extra_t, fraction)) << "\n";
    (void)g;
    return 0;
}

int cmd_derived_maxcap(const GlobalOpts& g, const std::string& scenario_path,
                       const std::string& supply_path) {
    const Scenario s = load_scenario(scenario_path);
    const AnnualSeries supply = series_from_csv(supply_path);
    const AnnualSeries path = max_capacity_path(supply, s.omega, s);
    ensure_out_dir(g.out_dir);
    const std::string out = (fs::path(g.out_dir) / "max_capacity.csv").string();
    series_to_csv(path, out);
    say(g, "wrote " + out);
    return 0;
}

int cmd_derived_dissolution(const GlobalOpts& g, const std::string& scenario_path, double tau,
                            double power_density, double capacity_factor, double fraction) {
    const Scenario s = load_scenario(scenario_path);
    const AnnualSeries ws = omega_series(s.omega, s.horizon_first, s.horizon_last);
    CellParameters cell;
    cell.power_density_w_per_cm2 = power_density;
    cell.capacity_factor = capacity_factor;
    cell.consumable_fraction = fraction;
    const AnnualSeries rate = required_dissolution_rate(ws, tau, cell);
    ensure_out_dir(g.out_dir);
    const std::string out = (fs::path(g.out_dir) / "dissolution_rate.csv").string();
    series_to_csv(rate, out);
    say(g, "wrote " + out);
    return 0;
}

int cmd_run_matrix(const GlobalOpts& g, std::string config_dir) {
    if (const char* env = std::getenv("IRFLOW_CONFIG_DIR"); env != nullptr && *env != '\0') {
        config_dir = env;
    }
    const fs::path dir(config_dir);
    const std::string manifest_path = (dir / "matrix.ini").string();
    const IniFile manifest = parse_ini(manifest_path);
    if (!manifest.has("matrix", "scenarios")) {
        throw std::invalid_argument(manifest_path + ": [matrix] scenarios entry required");
    }
    std::vector<std::string> scenario_files;
    {
        std::istringstream ss(manifest.get("matrix", "scenarios"));
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto a = item.find_first_not_of(" \t");
            const auto b = item.find_last_not_of(" \t");
            if (a != std::string::npos) scenario_files.push_back(item.substr(a, b - a + 1));
        }
    }
    if (scenario_files.empty()) {
        throw std::invalid_argument(manifest_path + ": empty scenario list");
    }
    const std::string history_file = manifest.get_or("matrix", "history", "history.csv");
    const std::string engine_name = manifest.get_or("matrix", "engine", "expected");
    const EngineKind engine = engine_from_name(engine_name);
    const double primary = std::stod(manifest.get_or("matrix", "primary_supply", "7.5"));
    const double stock0 = std::stod(manifest.get_or("matrix", "initial_stock", "1.0"));

    // Validate every input up front so a broken cell leaves no partial output.
    const auto histories = load_history_csv((dir / history_file).string());
    struct Cell {
        Scenario scenario;
        std::string digest;
    };
    std::vector<Cell> cells;
    for (const auto& f : scenario_files) {
        std::string digest;
        Scenario s = load_scenario((dir / f).string(), &digest);
        cells.push_back(Cell{std::move(s), digest});
    }

    ensure_out_dir(g.out_dir);
    const int horizon_last = cells.front().scenario.horizon_last;
    std::map<std::string, SupplyProjection> supplies;
    for (SupplyVariant v : {SupplyVariant::Strong, SupplyVariant::Weak}) {
        SupplyProjection p = project_supply(histories, v, primary,
                                            cells.front().scenario.horizon_first, horizon_last);
        write_supply_csv(p, (fs::path(g.out_dir) / ("supply_" + variant_name(v) + ".csv")).string());
        supplies.emplace(variant_name(v), std::move(p));
    }

    for (const auto& cell : cells) {
        const Scenario& s = cell.scenario;
        const fs::path sdir = fs::path(g.out_dir) / s.id;
        ensure_out_dir(sdir.string());
        const DemandBreakdown b = run_engine(s, engine);
        write_breakdown_csv(b, (sdir / "panel_a_demand.csv").string());
        write_manifest_json(make_manifest(s, engine_name, cell.digest),
                            (sdir / "run_meta.json").string());

        const char* panel = "b";
        for (const auto& [vname, proj] : std::map<std::string, const SupplyProjection*>{
                 {"strong", &supplies.at("strong")}, {"weak", &supplies.at("weak")}}) {
            const GapReport r = analyze_gap(b.m_total, proj->available_for_pemel, stock0, primary);
            nlohmann::json j = gap_report_json(r);
            j["scenario_id"] = s.id;
            j["supply_variant"] = vname;
            std::ofstream out((sdir / ("gap_report_" + vname + ".json")).string(), std::ios::binary);
            out << j.dump(2) << "\n";
            std::vector<std::vector<double>> rows;
            for (int y = r.gap.start_year(); y <= r.gap.end_year(); ++y) {
                rows.push_back({static_cast<double>(y), b.m_total.at(y),
                                proj->available_for_pemel.at(y), r.gap.at(y), r.stockpile.at(y)});
            }
            write_csv((sdir / ("panel_" + std::string(panel) + "_gap_" + vname + ".csv")).string(),
                      "year,demand_t,supply_t,gap_t,stockpile_t", rows);
            panel = "c";
        }

        // Panel d: demand trajectories for the recycling-ramp variants.
        {
            std::vector<std::vector<double>> rows;
            std::vector<DemandBreakdown> runs;
            for (double g0 : {0.70, 0.80, 0.90}) {
                RecyclingRamp ramp = s.gamma;
                ramp.gamma_start = g0;
                if (ramp.gamma_end < g0) ramp.gamma_end = g0;
                runs.push_back(run_engine(s.with_gamma(ramp), engine));
            }
            for (int y = s.horizon_first; y <= s.horizon_last; ++y) {
                rows.push_back({static_cast<double>(y), runs[0].m_total.at(y),
                                runs[1].m_total.at(y), runs[2].m_total.at(y)});
            }
            write_csv((sdir / "panel_d_gamma_variants.csv").string(),
                      "year,m_total_gamma70,m_total_gamma80,m_total_gamma90", rows);
        }

        // Panel e: gamma sweep cumulative demand; panel f: tau sweep.
        {
            std::vector<RecyclingRamp> ramps;
            for (double g0 : {0.70, 0.80, 0.90}) {
                RecyclingRamp ramp = s.gamma;
                ramp.gamma_start = g0;
                if (ramp.gamma_end < g0) ramp.gamma_end = g0;
                ramps.push_back(ramp);
            }
            const SweepResult gr = sweep_gamma(s, ramps, engine);
            std::vector<std::vector<double>> rows;
            for (std::size_t i = 0; i < gr.values.size(); ++i) {
                rows.push_back({gr.values[i], gr.cumulative_demand[i]});
            }
            write_csv((sdir / "panel_e_gamma_sweep.csv").string(), "gamma_start,cumulative_demand_t",
                      rows);
        }
        {
            std::vector<double> taus;
            for (int t = 5; t <= 20; ++t) taus.push_back(t);
            const SweepResult tr = sweep_tau(s, taus, engine);
            std::vector<std::vector<double>> rows;
            for (std::size_t i = 0; i < tr.values.size(); ++i) {
                rows.push_back({tr.values[i], tr.cumulative_demand[i]});
            }
            write_csv((sdir / "panel_f_tau_sweep.csv").string(), "tau_years,cumulative_demand_t",
                      rows);
        }
        say(g, "completed scenario " + s.id);
    }
    say(g, "matrix complete: " + std::to_string(cells.size() * 2) + " gap reports");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Iridium material-flow scenario simulator for PEM electrolyzer fleets"};
    app.require_subcommand(1);
    app.fallthrough();  // let global flags appear after the subcommand name

    GlobalOpts g;
    app.add_option("--out", g.out_dir, "Output directory")->capture_default_str();
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--quiet", g.quiet, "Suppress progress output");
    auto* seed_opt = app.add_option("--seed", g.seed, "Override the scenario RNG seed");

    std::string scenario_path, engine_name = "expected", history_path, variant = "strong";
    std::string demand_path, supply_path, param = "tau", config_dir = "data";
    std::vector<double> values;
    int horizon_last = 2050;
    double primary = 7.5, stock0 = 1.0, extra_t = 1.0, fraction = 0.02, tau = 10.0;
    double power_density = 3.0, capacity_factor = 0.9, consumable = 1.0;

    auto* sc = app.add_subcommand("scenario", "Scenario config operations");
    auto* sc_validate = sc->add_subcommand("validate", "Validate a config and print resolved series");
    sc_validate->add_option("--scenario", scenario_path, "Scenario config file")->required();

    auto* sim = app.add_subcommand("simulate", "Run one fleet simulation");
    sim->add_option("--scenario", scenario_path, "Scenario config file")->required();
    sim->add_option("--engine", engine_name, "Engine")->check(CLI::IsMember({"mc", "expected"}));

    auto* sup = app.add_subcommand("supply", "Project iridium available for electrolysis");
    sup->add_option("--history", history_path, "Sector history CSV")->required();
    sup->add_option("--variant", variant, "Supply variant")->check(CLI::IsMember({"strong", "weak"}));
    sup->add_option("--horizon", horizon_last, "Last forecast year");
    sup->add_option("--primary", primary, "Constant primary supply [t/yr]");

    auto* gaps = app.add_subcommand("gaps", "Gap and stockpile analysis");
    gaps->add_option("--demand", demand_path, "Demand series CSV")->required();
    gaps->add_option("--supply", supply_path, "Supply series CSV")->required();
    gaps->add_option("--stock0", stock0, "Initial stockpile [t]");
    gaps->add_option("--baseline", primary, "Baseline primary supply [t/yr]");

    auto* sweep = app.add_subcommand("sweep", "Parameter sweeps");
    sweep->add_option("--scenario", scenario_path, "Scenario config file")->required();
    sweep->add_option("--param", param, "Swept parameter")->check(CLI::IsMember({"tau", "gamma"}));
    sweep->add_option("--values", values, "Parameter values (default: tau 5..20, gamma .7/.8/.9)");
    sweep->add_option("--engine", engine_name, "Engine")->check(CLI::IsMember({"mc", "expected"}));

    auto* derived = app.add_subcommand("derived", "Derived discussion metrics");
    auto* pgm = derived->add_subcommand("pgm", "PGM output needed for extra iridium");
    pgm->add_option("--extra", extra_t, "Extra iridium [t]")->required();
    pgm->add_option("--fraction", fraction, "Iridium share of PGM output");
    auto* maxcap = derived->add_subcommand("maxcap", "Supply-constrained capacity build-out");
    maxcap->add_option("--scenario", scenario_path, "Scenario config file")->required();
    maxcap->add_option("--supply", supply_path, "Supply series CSV (year,value,unit)")->required();
    auto* diss = derived->add_subcommand("dissolution", "Required catalyst dissolution rate");
    diss->add_option("--scenario", scenario_path, "Scenario config file")->required();
    diss->add_option("--tau", tau, "Target lifetime [years]");
    diss->add_option("--power-density", power_density, "Cell power density [W/cm2]");
    diss->add_option("--capacity-factor", capacity_factor, "Operating capacity factor");
    diss->add_option("--consumable-fraction", consumable, "Consumable share of the loading");
    derived->require_subcommand(1);

    auto* matrix = app.add_subcommand("run-matrix", "Run the full scenario x supply matrix");
    matrix->add_option("--config-dir", config_dir, "Directory with configs and matrix.ini")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
        g.seed_set = seed_opt->count() > 0;
        if (sc_validate->parsed()) return cmd_scenario_validate(g, scenario_path);
        if (sim->parsed()) return cmd_simulate(g, scenario_path, engine_name);
        if (sup->parsed()) return cmd_supply(g, history_path, variant, horizon_last, primary);
        if (gaps->parsed()) return cmd_gaps(g, demand_path, supply_path, stock0, primary);
        if (sweep->parsed()) return cmd_sweep(g, scenario_path, param, values, engine_name);
        if (derived->parsed()) {
            if (pgm->parsed()) return cmd_derived_pgm(g, extra_t, fraction);
            if (maxcap->parsed()) return cmd_derived_maxcap(g, scenario_path, supply_path);
            if (diss->parsed()) {
                return cmd_derived_dissolution(g, scenario_path, tau, power_density, capacity_factor,
                                               consumable);
            }
        }
        if (matrix->parsed()) return cmd_run_matrix(g, config_dir);
        std::cerr << "error: no subcommand selected\n";
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const std::out_of_range& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 2;
    }
}
