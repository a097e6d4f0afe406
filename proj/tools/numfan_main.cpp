// numfan: statistical and numerical statistical fans of experimental designs.
//
// Subcommands: statfan, numfan, sweep, count, nbm, check.
// Exit codes: 0 success, 2 usage/parse error, 3 enumeration budget exhausted.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "numfan/numfan.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace numfan;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct RunConfig {
    std::string input;
    std::string tol_text;
    std::string tol_file;
    double scale = 1.0;
    std::vector<double> scales;
    bool standardize = false;
    std::string strategy = "deglex";
    std::string format = "text";
    std::uint64_t budget = kDefaultEnumerationBudget;
    std::string arith = "auto";
};

std::uint64_t default_budget() {
    if (const char* env = std::getenv("NUMFAN_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return kDefaultEnumerationBudget;
}

void add_common_options(CLI::App* cmd, RunConfig& cfg, bool needs_input) {
    auto* in = cmd->add_option("--input,-i", cfg.input, "design CSV (one point per row)");
    if (needs_input) in->required();
    cmd->add_option("--strategy", cfg.strategy, "term order: lex|deglex|degrevlex")
        ->check(CLI::IsMember({"lex", "deglex", "degrevlex"}));
    cmd->add_option("--format,-f", cfg.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--budget", cfg.budget, "enumeration budget (visited ideals)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--arith", cfg.arith, "arithmetic mode")
        ->check(CLI::IsMember({"auto", "exact", "float"}));
}

void add_tolerance_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--tol,-t", cfg.tol_text, "tolerance vector, comma separated");
    cmd->add_option("--tol-file", cfg.tol_file, "tolerance as a one-row CSV");
}

std::vector<double> resolve_tolerance(const RunConfig& cfg, int d) {
    std::vector<double> tol;
    if (!cfg.tol_text.empty())
        tol = parse_tolerance(cfg.tol_text);
    else if (!cfg.tol_file.empty())
        tol = read_tolerance_csv_file(cfg.tol_file);
    else
        throw ParseError("a tolerance is required (--tol or --tol-file)");
    if (static_cast<int>(tol.size()) != d)
        throw ParseError("tolerance has " + std::to_string(tol.size()) + " entries, design has " +
                         std::to_string(d) + " coordinates");
    return tol;
}

FanOptions fan_options(const RunConfig& cfg) {
    FanOptions opt;
    opt.strategy = *TermOrder::parse(cfg.strategy);
    opt.budget = cfg.budget;
    opt.arith = *parse_arith_mode(cfg.arith);
    return opt;
}

// ---- report assembly -------------------------------------------------------

json term_json(const Term& t) {
    json a = json::array();
    for (int k = 0; k < t.dim(); ++k) a.push_back(t[k]);
    return a;
}

json fan_json(const Fan& fan) {
    json arr = json::array();
    for (const auto& m : fan.models) {
        json e;
        json gens = json::array();
        for (const auto& g : m.maximal_elements) gens.push_back(term_json(g));
        e["maximal_elements"] = gens;
        e["size"] = m.ideal.size();
        if (std::isfinite(m.condition_number))
            e["condition_number"] = round_to_12_digits(m.condition_number);
        else
            e["condition_number"] = nullptr;
        arr.push_back(std::move(e));
    }
    return arr;
}

json histogram_json(const std::map<int, int>& h) {
    json o = json::object();
    for (const auto& [size, count] : h) o[std::to_string(size)] = count;
    return o;
}

json design_json(const Design& D) { return json{{"n", D.n()}, {"d", D.d()}}; }

json tolerance_json(const std::vector<double>& tol) {
    json a = json::array();
    for (double t : tol) a.push_back(round_to_12_digits(t));
    return a;
}

void emit(const json& payload) { std::cout << payload.dump(2) << "\n"; }

std::string render_model_line(const FanModel& m) {
    std::string line = "  " + render_term_set(m.maximal_elements);
    line += "  size=" + std::to_string(m.ideal.size());
    if (std::isfinite(m.condition_number)) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.6g", m.condition_number);
        line += "  cond=";
        line += buf;
    }
    return line;
}

void print_fan_text(const Fan& fan) {
    for (const auto& m : fan.models) std::cout << render_model_line(m) << "\n";
}

void print_histogram_text(const std::map<int, int>& h) {
    std::cout << "  size:count ";
    for (const auto& [size, count] : h) std::cout << " " << size << ":" << count;
    std::cout << "\n";
}

// ---- subcommands -----------------------------------------------------------

int cmd_statfan(const RunConfig& cfg) {
    auto D = read_design_csv_file(cfg.input);
    auto res = statistical_fan(D, fan_options(cfg));
    if (cfg.format == "json") {
        json out;
        out["design"] = design_json(D);
        out["tolerance"] = tolerance_json(std::vector<double>(static_cast<std::size_t>(D.d()), 0.0));
        out["fan"] = fan_json(res.fan);
        out["weakly_maximal_count"] = res.fan.size();
        out["stable_count"] = res.identifiable_count;
        out["histogram"] = histogram_json(res.fan.histogram());
        emit(out);
    } else {
        std::cout << "statistical fan: " << res.fan.size() << " models of size " << D.n() << "\n";
        print_fan_text(res.fan);
        std::cout << "identifiable order ideals (any size): " << res.identifiable_count << "\n";
    }
    return kExitOk;
}

struct NumfanReport {
    double scale = 1.0;
    NumericalFanResult result;
};

NumfanReport run_numfan(const EmpiricalDesign& ed, double scale, const FanOptions& opt,
                        bool standardized) {
    EmpiricalDesign scaled = ed.scaled_tolerance(scale);
    if (standardized) {
        auto [sed, maps] = standardize(scaled);
        return {scale, numerical_fan(sed, opt)};
    }
    return {scale, numerical_fan(scaled, opt)};
}

json numfan_json(const EmpiricalDesign& ed, const NumfanReport& rep) {
    json out;
    out["design"] = design_json(ed.design);
    out["tolerance"] = tolerance_json(ed.tolerance);
    if (rep.scale != 1.0) out["scale"] = round_to_12_digits(rep.scale);
    out["fan"] = fan_json(rep.result.fan);
    out["weakly_maximal_count"] = rep.result.weakly_maximal.size();
    out["stable_count"] = rep.result.stable_count;
    out["histogram"] = histogram_json(rep.result.fan.histogram());
    return out;
}

void numfan_text(const EmpiricalDesign& ed, const NumfanReport& rep, bool standardized) {
    const auto& r = rep.result;
    std::cout << "numerical statistical fan (scale " << rep.scale << "): " << r.fan.size()
              << " maximal models\n";
    print_fan_text(r.fan);
    std::cout << "weakly maximal: " << r.weakly_maximal.size()
              << "   stable order ideals: " << r.stable_count << "\n";
    print_histogram_text(r.fan.histogram());
    if (standardized) std::cout << "condition numbers computed on the standardized design\n";
    auto offenders = check_separation(ed);
    if (!offenders.empty()) {
        std::cout << "warning: " << offenders.size()
                  << " point pair(s) are not delta-separated; first pair: (" << offenders[0].first
                  << "," << offenders[0].second << ")\n";
    }
}

int cmd_numfan(const RunConfig& cfg) {
    auto D = read_design_csv_file(cfg.input);
    EmpiricalDesign ed{D, resolve_tolerance(cfg, D.d())};
    if (cfg.scale <= 0) throw ParseError("--scale must be positive");
    auto rep = run_numfan(ed, cfg.scale, fan_options(cfg), cfg.standardize);
    if (cfg.format == "json")
        emit(numfan_json(ed, rep));
    else
        numfan_text(ed.scaled_tolerance(cfg.scale), rep, cfg.standardize);
    return kExitOk;
}

int cmd_sweep(const RunConfig& cfg) {
    auto D = read_design_csv_file(cfg.input);
    EmpiricalDesign ed{D, resolve_tolerance(cfg, D.d())};
    if (cfg.scales.empty()) throw ParseError("--scales is required");
    for (double k : cfg.scales)
        if (k <= 0) throw ParseError("scale factors must be positive");
    const FanOptions opt = fan_options(cfg);

    // rows are independent computations; run them concurrently and assemble
    // in input order
    std::vector<std::future<NumfanReport>> jobs;
    jobs.reserve(cfg.scales.size());
    for (double k : cfg.scales)
        jobs.push_back(std::async(std::launch::async, run_numfan, std::cref(ed), k, std::cref(opt),
                                  cfg.standardize));
    std::vector<NumfanReport> rows;
    rows.reserve(jobs.size());
    for (auto& j : jobs) rows.push_back(j.get());

    if (cfg.format == "json") {
        json out;
        out["design"] = design_json(D);
        out["tolerance"] = tolerance_json(ed.tolerance);
        json arr = json::array();
        for (const auto& rep : rows) {
            json row;
            row["scale"] = round_to_12_digits(rep.scale);
            row["fan_size"] = rep.result.fan.size();
            row["weakly_maximal_count"] = rep.result.weakly_maximal.size();
            row["stable_count"] = rep.result.stable_count;
            row["histogram"] = histogram_json(rep.result.fan.histogram());
            row["fan"] = fan_json(rep.result.fan);
            arr.push_back(std::move(row));
        }
        out["rows"] = std::move(arr);
        emit(out);
    } else {
        std::cout << "scale  |S_num|  #weakly-max  #stable\n";
        for (const auto& rep : rows)
            std::cout << rep.scale << "  " << rep.result.fan.size() << "  "
                      << rep.result.weakly_maximal.size() << "  " << rep.result.stable_count
                      << "\n";
        std::cout << "model sizes by scale\n";
        for (const auto& rep : rows) {
            std::cout << "  k=" << rep.scale;
            print_histogram_text(rep.result.fan.histogram());
        }
    }
    return kExitOk;
}

int cmd_count(int d, int n, bool cumulative, const RunConfig& cfg) {
    const auto c = count_order_ideals(d, n, cumulative, cfg.budget);
    if (cfg.format == "json")
        emit(json{{"d", d}, {"n", n}, {"cumulative", cumulative}, {"count", c}});
    else
        std::cout << c << "\n";
    return kExitOk;
}

int cmd_nbm(const RunConfig& cfg) {
    auto D = read_design_csv_file(cfg.input);
    EmpiricalDesign ed{D, resolve_tolerance(cfg, D.d())};
    auto opt = fan_options(cfg);
    auto out = nbm(ed, opt.strategy, opt.arith);
    const auto& members = out.order_ideal.members();
    if (cfg.format == "json") {
        json j;
        j["design"] = design_json(D);
        j["tolerance"] = tolerance_json(ed.tolerance);
        j["order"] = cfg.strategy;
        json mem = json::array();
        for (const auto& t : members) mem.push_back(term_json(t));
        json gens = json::array();
        for (const auto& t : out.order_ideal.maximal_elements()) gens.push_back(term_json(t));
        j["order_ideal"] = json{{"members", mem}, {"maximal_elements", gens}};
        json polys = json::array();
        for (const auto& p : out.polynomials) {
            json tail = json::array();
            for (std::size_t l = 0; l < members.size(); ++l)
                if (p.coefficients[l] != 0)
                    tail.push_back(json{{"term", term_json(members[l])},
                                        {"value", round_to_12_digits(p.coefficients[l])}});
            polys.push_back(json{{"leading", term_json(p.leading)}, {"tail", tail}});
        }
        j["polynomials"] = polys;
        emit(j);
    } else {
        std::cout << "order ideal (" << cfg.strategy << "): " << render_term_set(members) << "\n";
        std::cout << "almost vanishing polynomials:\n";
        for (const auto& p : out.polynomials) {
            std::cout << "  " << p.leading.str();
            for (std::size_t l = 0; l < members.size(); ++l) {
                const double c = p.coefficients[l];
                if (c == 0) continue;
                char buf[48];
                std::snprintf(buf, sizeof buf, " %c %.6g*%s", c < 0 ? '-' : '+', std::abs(c),
                              members[l].str().c_str());
                std::cout << buf;
            }
            std::cout << "\n";
        }
    }
    return kExitOk;
}

int cmd_check(const RunConfig& cfg) {
    auto D = read_design_csv_file(cfg.input);
    EmpiricalDesign ed{D, resolve_tolerance(cfg, D.d())};
    auto offenders = check_separation(ed);
    // coordinate ranges and the tolerance the standardized design would carry
    std::vector<double> ranges(static_cast<std::size_t>(D.d()));
    std::vector<double> std_tol(static_cast<std::size_t>(D.d()));
    bool constant_coord = false;
    for (int k = 0; k < D.d(); ++k) {
        double lo = D.coord(0, k), hi = lo;
        for (int i = 1; i < D.n(); ++i) {
            lo = std::min(lo, D.coord(i, k));
            hi = std::max(hi, D.coord(i, k));
        }
        ranges[static_cast<std::size_t>(k)] = hi - lo;
        if (hi == lo) {
            constant_coord = true;
            std_tol[static_cast<std::size_t>(k)] = 0;
        } else {
            std_tol[static_cast<std::size_t>(k)] =
                2.0 * ed.tolerance[static_cast<std::size_t>(k)] / (hi - lo);
        }
    }
    if (cfg.format == "json") {
        json pairs = json::array();
        for (const auto& [i, j] : offenders) pairs.push_back(json::array({i, j}));
        emit(json{{"design", design_json(D)},
                  {"tolerance", tolerance_json(ed.tolerance)},
                  {"separated", offenders.empty()},
                  {"offending_pairs", pairs},
                  {"delta_max", round_to_12_digits(ed.delta_max())},
                  {"ranges", tolerance_json(ranges)},
                  {"standardized_tolerance", tolerance_json(std_tol)}});
    } else {
        if (offenders.empty()) {
            std::cout << "design is delta-separated (" << D.n() << " points)\n";
        } else {
            std::cout << offenders.size() << " overlapping point pair(s):\n";
            for (const auto& [i, j] : offenders) std::cout << "  (" << i << ", " << j << ")\n";
        }
        std::cout << "delta_max = " << ed.delta_max() << "\n";
        std::cout << "coordinate ranges:";
        for (double r : ranges) std::cout << " " << r;
        std::cout << "\nstandardized tolerance (2*delta/range):";
        for (double t : std_tol) std::cout << " " << t;
        std::cout << "\n";
        if (constant_coord) std::cout << "warning: constant coordinate, standardization impossible\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"statistical and numerical statistical fans of experimental designs"};
    app.require_subcommand(1);

    RunConfig cfg;
    cfg.budget = default_budget();

    auto* statfan = app.add_subcommand("statfan", "all maximal identifiable models");
    add_common_options(statfan, cfg, true);

    auto* numfan_cmd = app.add_subcommand("numfan", "numerical statistical fan");
    add_common_options(numfan_cmd, cfg, true);
    add_tolerance_options(numfan_cmd, cfg);
    numfan_cmd->add_option("--scale,-k", cfg.scale, "tolerance scale factor");
    numfan_cmd->add_flag("--standardize", cfg.standardize,
                         "map coordinates onto [-1,1] before computing condition numbers");

    auto* sweep = app.add_subcommand("sweep", "numerical fans over several tolerance scales");
    add_common_options(sweep, cfg, true);
    add_tolerance_options(sweep, cfg);
    sweep->add_option("--scales", cfg.scales, "scale factors, comma separated")
        ->delimiter(',')
        ->required();
    sweep->add_flag("--standardize", cfg.standardize,
                    "map coordinates onto [-1,1] before computing condition numbers");

    int count_d = 0, count_n = 0;
    bool cumulative = false;
    auto* count = app.add_subcommand("count", "number of hierarchical models with n terms");
    count->add_option("-d,--dim", count_d, "number of variables")->required();
    count->add_option("-n,--terms", count_n, "model size")->required();
    count->add_flag("--cumulative", cumulative, "count models with up to n terms");
    add_common_options(count, cfg, false);

    auto* nbm_cmd = app.add_subcommand("nbm", "greedy stable model along a term order");
    add_common_options(nbm_cmd, cfg, true);
    add_tolerance_options(nbm_cmd, cfg);

    auto* check = app.add_subcommand("check", "delta-separation diagnostic");
    add_common_options(check, cfg, true);
    add_tolerance_options(check, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints help or the error message
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(statfan)) return cmd_statfan(cfg);
        if (app.got_subcommand(numfan_cmd)) return cmd_numfan(cfg);
        if (app.got_subcommand(sweep)) return cmd_sweep(cfg);
        if (app.got_subcommand(count)) return cmd_count(count_d, count_n, cumulative, cfg);
        if (app.got_subcommand(nbm_cmd)) return cmd_nbm(cfg);
        if (app.got_subcommand(check)) return cmd_check(cfg);
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
