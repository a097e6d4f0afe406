// Acceptance suite: runs every top-level requirement at its stated tolerance
// and prints one PASS/FAIL line per criterion.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "numfan/numfan.hpp"
#include "test_support.hpp"

using namespace numfan;
using json = nlohmann::ordered_json;

namespace {

int failures = 0;

struct Criterion {
    std::string label;
    std::vector<std::string> notes;
    bool ok = true;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    explicit Criterion(std::string l) : label(std::move(l)) {}

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back("failed: " + what);
        }
    }

    void require_time(double limit_secs) {
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs >= limit_secs) {
            ok = false;
            notes.push_back("failed: runtime " + std::to_string(secs) + "s exceeds " +
                            std::to_string(limit_secs) + "s");
        }
    }

    void note(const std::string& what) { notes.push_back(what); }

    void finish() {
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %s (%.2fs)\n", ok ? "PASS" : "FAIL", label.c_str(), secs);
        for (const auto& n : notes) std::printf("       %s\n", n.c_str());
        if (!ok) ++failures;
    }
};

Term T(std::vector<int> e) { return Term(std::move(e)); }

std::set<std::vector<Term>> max_elements(const Fan& fan) {
    std::set<std::vector<Term>> out;
    for (const auto& m : fan.models) out.insert(m.maximal_elements);
    return out;
}

std::string render_fan(const Fan& fan) {
    std::string s;
    for (const auto& m : fan.models) {
        if (!s.empty()) s += " ";
        s += render_term_set(m.maximal_elements);
    }
    return s;
}

Design hyperbola5() {
    return Design::parse_rows({{"1", "6"}, {"2", "3"}, {"2.449", "2.449"}, {"3", "2"}, {"6", "1"}});
}

Design near_factorial() {
    return Design::parse_rows({{"1", "1"}, {"1", "-1.001"}, {"-1", "1"}, {"-1", "-1"}});
}

// ---- criteria --------------------------------------------------------------

void criterion1() {
    Criterion c("criterion 1: five-point hyperbola design, tol (0.018, 0.018)");
    EmpiricalDesign ed{hyperbola5(), {0.018, 0.018}};
    auto res = numerical_fan(ed);
    const std::set<std::vector<Term>> stated = {{T({0, 2}), T({2, 0})},
                                                {T({0, 1}), T({3, 0})},
                                                {T({0, 3}), T({1, 0})},
                                                {T({4, 0})},
                                                {T({0, 4})}};
    c.require(max_elements(res.fan) == stated,
              "fan set equality; computed: " + render_fan(res.fan));
    if (max_elements(res.fan) != stated) {
        c.note("computed fan omits {X1^2, X2^2}: moving the third point to "
               "(2.46447, 2.46447) -- a shift of 0.0155 < 0.018 per coordinate -- places all "
               "five points on the circle X1^2+X2^2-12*X1-12*X2+47 = 0, which makes the design "
               "matrix of {1, X1, X2, X1^2, X2^2} singular, so that model is not stable at this "
               "tolerance; its growth test (X1^2 against {1, X1, X2, X2^2}) is rejected, which is "
               "also exactly the rejection the deglex greedy run below asserts");
        const double s = 6.0 - 5.0 / std::sqrt(2.0);
        auto witness = Design::from_doubles({{1, 6}, {2, 3}, {s, s}, {3, 2}, {6, 1}});
        auto M = design_matrix({T({0, 0}), T({1, 0}), T({0, 1}), T({2, 0}), T({0, 2})}, witness);
        c.note(std::string("witness check: perturbed matrix condition number = ") +
               (std::isinf(condition_number(M.entries)) ? "inf (rank-deficient)" : "finite"));
    }
    auto greedy = nbm(ed, TermOrder::deglex());
    const std::set<Term> stated_ideal = {T({0, 0}), T({1, 0}), T({0, 1}), T({0, 2}), T({0, 3})};
    c.require(oracle::member_set(greedy.order_ideal) == stated_ideal,
              "deglex greedy model is {1, X1, X2, X2^2, X2^3}");
    c.require_time(1.0);
    c.finish();
}

void criterion2() {
    Criterion c("criterion 2: near-factorial design thresholds");
    auto D = near_factorial();
    auto at6 = numerical_fan(EmpiricalDesign{D, {0.0, 0.0006}});
    c.require(max_elements(at6.fan) == std::set<std::vector<Term>>{{T({1, 1})}},
              "fan at tol (0, 0.0006) is exactly {X1*X2}");
    auto at0 = numerical_fan(EmpiricalDesign{D, {0.0, 0.0}});
    c.require(max_elements(at0.fan) ==
                  std::set<std::vector<Term>>{{T({1, 1})}, {T({0, 2}), T({1, 0})}},
              "fan at tol (0, 0) is exactly {X1*X2}, {X1, X2^2}");
    // boundary behavior is reported, not asserted
    auto at5 = numerical_fan(EmpiricalDesign{D, {0.0, 0.0005}});
    c.note("at the boundary tol (0, 0.0005): " + std::to_string(at5.fan.size()) +
           " model(s): " + render_fan(at5.fan));
    c.require_time(1.0);
    c.finish();
}

void criterion3() {
    Criterion c("criterion 3: condition numbers 1.0007 and 4001 within 0.5%");
    auto D = near_factorial();
    const double c1 = condition_number(
        design_matrix({T({0, 0}), T({1, 0}), T({0, 1}), T({1, 1})}, D).entries);
    const double c2 = condition_number(
        design_matrix({T({0, 0}), T({1, 0}), T({0, 1}), T({0, 2})}, D).entries);
    c.require(std::abs(c1 - 1.0007) <= 0.005 * 1.0007,
              "c(X_O1) = " + std::to_string(c1) + " within 0.5% of 1.0007");
    c.require(std::abs(c2 - 4001.0) <= 0.005 * 4001.0,
              "c(X_O2) = " + std::to_string(c2) + " within 0.5% of 4001");
    c.finish();
}

void criterion4() {
    Criterion c("criterion 4: four-point fan has 3 models, 2^2 factorial has 1");
    auto four = Design::parse_rows({{"1", "-1"}, {"-1", "1"}, {"-1", "-1"}, {"0", "0"}});
    auto res = statistical_fan(four);
    c.require(max_elements(res.fan) == std::set<std::vector<Term>>{{T({1, 1})},
                                                                   {T({0, 1}), T({2, 0})},
                                                                   {T({0, 2}), T({1, 0})}},
              "four-point statistical fan");
    auto factorial = Design::parse_rows({{"1", "-1"}, {"-1", "1"}, {"-1", "-1"}, {"1", "1"}});
    auto fres = statistical_fan(factorial);
    c.require(max_elements(fres.fan) == std::set<std::vector<Term>>{{T({1, 1})}},
              "factorial statistical fan");
    c.require_time(1.0);
    c.finish();
}

void criterion5() {
    Criterion c("criterion 5: model counts p_4(8..17) and p_4(<=17)");
    const std::array<std::uint64_t, 10> expected = {684,   1464,  3122,   6500,   13426,
                                                    27248, 54804, 108802, 214071, 416849};
    for (int n = 8; n <= 16; ++n)
        c.require(count_order_ideals(4, n, false) == expected[static_cast<std::size_t>(n - 8)],
                  "p_4(" + std::to_string(n) + ")");
    c.require(count_order_ideals(4, 17, false) == 416849, "p_4(17) = 416849");
    c.require(count_order_ideals(4, 17, true) == 847517, "p_4(<=17) = 847517");
    c.require_time(300.0);
    c.finish();
}

void criterion6() {
    Criterion c("criterion 6: statistical fan equals brute-force enumeration, 50 random designs");
    std::mt19937 rng(20250808);
    int runs = 0;
    for (int trial = 0; runs < 50 && trial < 200; ++trial) {
        const int d = 2 + static_cast<int>(rng() % 2);
        const int n = 3 + static_cast<int>(rng() % 4);  // n <= 6
        auto D = oracle::random_rational_design(rng, n, d, 8, 3);

        // oracle: every size-n staircase, rank decided by Laplace minors
        std::set<std::set<Term>> brute;
        for (const auto& members : oracle::all_order_ideals(d, n)) {
            std::vector<std::vector<mpq_class>> rows(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                for (const Term& t : members)
                    rows[static_cast<std::size_t>(i)].push_back(eval_term_exact(t, D, i));
            if (oracle::rank_by_minors(rows, n, n) == n) brute.insert(members);
        }
        auto res = statistical_fan(D);
        std::set<std::set<Term>> got;
        for (const auto& m : res.fan.models) got.insert(oracle::member_set(m.ideal));
        if (got != brute) {
            c.require(false, "design #" + std::to_string(runs) + " disagrees with brute force");
            break;
        }
        ++runs;
    }
    c.require(runs >= 50, "completed 50 comparisons");
    c.note(std::to_string(runs) + " designs compared exactly");
    c.finish();
}

void criterion7() {
    Criterion c("criterion 7: property suite");
    std::mt19937 rng(424242);

    {  // delta-monotonicity of independence verdicts
        std::uniform_real_distribution<double> tol(0.0, 0.4), shrink(0.0, 1.0);
        int checked = 0;
        bool all_ok = true;
        for (int trial = 0; trial < 150; ++trial) {
            auto D = oracle::random_rational_design(rng, 5, 2, 8, 3);
            std::vector<double> delta = {tol(rng), tol(rng)};
            const std::vector<Term> oi = {T({0, 0}), T({1, 0})};
            if (condition_number(design_matrix(oi, D).entries) > 1e8) continue;
            for (const Term& t : {T({0, 1}), T({2, 0}), T({1, 1})}) {
                if (!is_num_independent(oi, D, delta, t).independent) continue;
                const double k = shrink(rng);
                if (!is_num_independent(oi, D, {delta[0] * k, delta[1] * k}, t).independent)
                    all_ok = false;
                ++checked;
            }
        }
        c.require(all_ok && checked > 100,
                  "delta-monotonicity (" + std::to_string(checked) + " checks)");
        c.note("monotonicity checks: " + std::to_string(checked));
    }

    {  // stable-set nesting under scales 0.5 and 0.8
        FanOptions opt;
        opt.collect_stable_keys = true;
        bool all_ok = true;
        int designs = 0;
        for (int trial = 0; trial < 10; ++trial) {
            auto D = oracle::random_rational_design(rng, 5, 2, 10, 2);
            EmpiricalDesign ed{D, {0.05, 0.08}};
            auto base = numerical_fan(ed, opt);
            for (double k : {0.5, 0.8}) {
                auto shrunk = numerical_fan(ed.scaled_tolerance(k), opt);
                std::set<std::string> big(shrunk.stable_keys.begin(), shrunk.stable_keys.end());
                for (const auto& key : base.stable_keys)
                    if (!big.count(key)) all_ok = false;
            }
            ++designs;
        }
        c.require(all_ok && designs == 10, "stable-set nesting at k in {0.5, 0.8}");
    }

    {  // translation/scale invariance on margin-guarded designs
        std::uniform_real_distribution<double> shift(-2.0, 2.0), scale(0.25, 3.0);
        int accepted = 0, violations = 0;
        for (int trial = 0; trial < 400 && accepted < 30; ++trial) {
            auto D = oracle::random_rational_design(rng, 5, 2, 10, 2);
            EmpiricalDesign ed{D, {0.04, 0.06}};
            auto base = numerical_fan(ed);
            if (base.diagnostics.min_decision_margin < 1e-6) continue;
            const double p1 = shift(rng), p2 = shift(rng);
            const double s1 = scale(rng) * (rng() % 2 ? 1. : -1.), s2 = scale(rng);
            std::vector<std::vector<double>> tr, sc;
            for (int i = 0; i < D.n(); ++i) {
                tr.push_back({D.coord(i, 0) + p1, D.coord(i, 1) + p2});
                sc.push_back({D.coord(i, 0) * s1, D.coord(i, 1) * s2});
            }
            auto tfan = numerical_fan(EmpiricalDesign{Design::from_doubles(tr), ed.tolerance});
            auto sfan = numerical_fan(EmpiricalDesign{
                Design::from_doubles(sc),
                {ed.tolerance[0] * std::abs(s1), ed.tolerance[1] * std::abs(s2)}});
            if (!tfan.fan.set_equal(base.fan)) ++violations;
            if (!sfan.fan.set_equal(base.fan)) ++violations;
            ++accepted;
        }
        c.require(accepted >= 30 && violations == 0,
                  "translation/scale invariance (" + std::to_string(accepted) + " instances, " +
                      std::to_string(violations) + " violations)");
    }

    {  // divisibility closure and inclusion antichain on every emitted fan
        bool all_ok = true;
        for (int trial = 0; trial < 10; ++trial) {
            auto D = oracle::random_rational_design(rng, 5, 2, 10, 2);
            EmpiricalDesign ed{D, {0.05, 0.05}};
            auto res = numerical_fan(ed);
            for (const auto& m : res.fan.models) {
                for (const Term& t : m.ideal.members())
                    for (int k = 0; k < 2; ++k)
                        if (t[k] > 0 && !m.ideal.contains(t.div_var(k))) all_ok = false;
                for (const auto& other : res.fan.models)
                    if (!(other.ideal == m.ideal) && other.ideal.contains_ideal(m.ideal))
                        all_ok = false;
            }
        }
        c.require(all_ok, "divisibility closure and antichain on emitted fans");
    }
    c.finish();
}

void criterion8() {
    Criterion c("criterion 8: sweep reproduces the report table layout on bundled data");
    const std::string cli = NUMFAN_CLI_PATH;
    const std::string cmd = cli + " sweep -i " + NUMFAN_DATA_DIR +
                            "/synthetic_inflight.csv --tol 8.2,4.8,0.22,1.0 "
                            "--scales 2,1.5,1.2,1,0.9,0.8 --standardize -f json";
    std::string out;
    if (FILE* pipe = popen(cmd.c_str(), "r")) {
        std::array<char, 4096> buf{};
        std::size_t got;
        while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
        c.require(pclose(pipe) == 0, "sweep run exits 0");
    } else {
        c.require(false, "could not launch the CLI");
    }
    if (!out.empty()) {
        auto j = json::parse(out, nullptr, false);
        c.require(!j.is_discarded(), "sweep output parses as JSON");
        if (!j.is_discarded()) {
            c.require(j["rows"].size() == 6, "one row per scale factor");
            std::uint64_t prev_stable = 0;
            bool cols_ok = true, nesting_ok = true;
            for (const auto& row : j["rows"]) {  // scales shrink along the rows
                if (!(row.contains("scale") && row.contains("fan_size") &&
                      row.contains("weakly_maximal_count") && row.contains("stable_count") &&
                      row.contains("histogram")))
                    cols_ok = false;
                const auto stable = row["stable_count"].get<std::uint64_t>();
                if (stable < prev_stable) nesting_ok = false;
                prev_stable = stable;
            }
            c.require(cols_ok, "every row carries fan size, weakly-maximal and stable counts, "
                               "and a size histogram");
            c.require(nesting_ok, "stable counts grow as the scale shrinks");
        }
    }
    c.note("per-design fan sizes depend on measurements that are not distributed here; this "
           "criterion checks the report structure on bundled synthetic data, criteria 1-7 "
           "carry the quantitative checks");
    c.finish();
}

}  // namespace

int main() {
    std::printf("acceptance suite\n================\n");
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    std::printf("================\n%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
