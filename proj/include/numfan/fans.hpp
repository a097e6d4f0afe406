#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "numfan/counting.hpp"
#include "numfan/dependence.hpp"
#include "numfan/design.hpp"
#include "numfan/linalg.hpp"
#include "numfan/order_ideal.hpp"
#include "numfan/term.hpp"

namespace numfan {

enum class ArithMode { automatic, exact, floating };

inline const char* arith_mode_name(ArithMode m) {
    switch (m) {
        case ArithMode::automatic: return "auto";
        case ArithMode::exact: return "exact";
        default: return "float";
    }
}

inline std::optional<ArithMode> parse_arith_mode(const std::string& s) {
    if (s == "auto") return ArithMode::automatic;
    if (s == "exact") return ArithMode::exact;
    if (s == "float") return ArithMode::floating;
    return std::nullopt;
}

struct FanOptions {
    TermOrder strategy = TermOrder::deglex();
    std::uint64_t budget = kDefaultEnumerationBudget;
    ArithMode arith = ArithMode::automatic;
    bool collect_stable_keys = false;
};

/// Per-run instrumentation.  min_decision_margin is the smallest distance
/// min_i ||ρ_i| − bound_i| seen over all Fassino tests: small margins mean
/// the fan may be sensitive to floating-point perturbations of the input.
struct FanDiagnostics {
    std::uint64_t visit_calls = 0;
    double min_decision_margin = std::numeric_limits<double>::infinity();
};

struct FanModel {
    OrderIdeal ideal;
    std::vector<Term> maximal_elements;
    double condition_number = 0.0;
    int size() const { return ideal.size(); }
};

/// A set of order ideals with per-model diagnostics, sorted by
/// (size, canonical key) for deterministic output.
struct Fan {
    std::vector<FanModel> models;

    static Fan build(std::vector<OrderIdeal> ideals, const Design& D) {
        Fan fan;
        fan.models.reserve(ideals.size());
        std::vector<std::string> keys;
        keys.reserve(ideals.size());
        std::vector<std::size_t> order(ideals.size());
        for (std::size_t i = 0; i < ideals.size(); ++i) {
            keys.push_back(ideals[i].canonical_key());
            order[i] = i;
        }
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (ideals[a].size() != ideals[b].size()) return ideals[a].size() < ideals[b].size();
            return keys[a] < keys[b];
        });
        for (std::size_t i : order) {
            FanModel m;
            m.maximal_elements = ideals[i].maximal_elements();
            m.condition_number =
                ideals[i].is_empty() ? 0.0
                                     : condition_number(design_matrix(ideals[i].members(), D).entries);
            m.ideal = std::move(ideals[i]);
            fan.models.push_back(std::move(m));
        }
        return fan;
    }

    std::size_t size() const { return models.size(); }

    std::vector<std::string> keys() const {
        std::vector<std::string> ks;
        ks.reserve(models.size());
        for (const auto& m : models) ks.push_back(m.ideal.canonical_key());
        return ks;
    }

    bool contains_key(const std::string& key) const {
        for (const auto& m : models)
            if (m.ideal.canonical_key() == key) return true;
        return false;
    }

    bool set_equal(const Fan& o) const { return keys() == o.keys(); }

    /// model count by cardinality
    std::map<int, int> histogram() const {
        std::map<int, int> h;
        for (const auto& m : models) ++h[m.ideal.size()];
        return h;
    }
};

/// Keeps only the order ideals that are maximal w.r.t. inclusion.  A ⊊ B is
/// decided through the maximal elements of A, and candidate supersets come
/// from an index of which ideals contain a given term, so the scan stays fast
/// for the thousands of weakly maximal models large runs produce.
inline std::vector<OrderIdeal> filter_inclusion_maximal(const std::vector<OrderIdeal>& models) {
    std::vector<OrderIdeal> uniq;
    {
        std::unordered_set<std::string> seen;
        for (const auto& oi : models)
            if (seen.insert(oi.canonical_key()).second) uniq.push_back(oi);
    }
    auto term_key = [](const Term& t) {
        std::string k;
        k.reserve(static_cast<std::size_t>(t.dim()) * 4);
        for (int i = 0; i < t.dim(); ++i) {
            const auto v = static_cast<std::uint32_t>(t[i]);
            for (int b = 0; b < 4; ++b) k.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
        }
        return k;
    };
    std::unordered_map<std::string, std::vector<std::size_t>> containing;
    for (std::size_t i = 0; i < uniq.size(); ++i)
        for (const Term& m : uniq[i].members()) containing[term_key(m)].push_back(i);

    std::vector<OrderIdeal> out;
    for (std::size_t i = 0; i < uniq.size(); ++i) {
        const auto gens = uniq[i].maximal_elements();
        // scan the shortest candidate list among the generators
        const std::vector<std::size_t>* cands = nullptr;
        for (const Term& g : gens) {
            const auto& list = containing[term_key(g)];
            if (!cands || list.size() < cands->size()) cands = &list;
        }
        bool maximal = true;
        if (cands)
            for (std::size_t j : *cands) {
                if (j == i || uniq[j].size() <= uniq[i].size()) continue;
                bool contains_all = true;
                for (const Term& g : gens)
                    if (!uniq[j].contains(g)) {
                        contains_all = false;
                        break;
                    }
                if (contains_all) {
                    maximal = false;
                    break;
                }
            }
        if (maximal) out.push_back(uniq[i]);
    }
    return out;
}

namespace detail {

// --- independence oracles -------------------------------------------------
//
// Each oracle carries the per-node state of the recursion (the design matrix
// of the current ideal in whichever arithmetic applies) and answers: is t(D)
// independent of the current columns?  probe() returns the extended state on
// independence and nullopt on dependence.  The last least-squares solve is
// kept for NBM's polynomial coefficients.

// Design vector and per-axis derivative vectors of a term, computed once per
// enumeration and shared across all the models that test the term.
struct TermVectors {
    Eigen::VectorXd value;
    std::vector<Eigen::VectorXd> deriv;
};

class TermVectorCache {
public:
    explicit TermVectorCache(const Design& D) : D_(D) {}

    const TermVectors& get(const Term& t) {
        std::string key;
        key.reserve(static_cast<std::size_t>(t.dim()) * 4);
        for (int k = 0; k < t.dim(); ++k) {
            const auto v = static_cast<std::uint32_t>(t[k]);
            for (int byte = 0; byte < 4; ++byte)
                key.push_back(static_cast<char>((v >> (8 * byte)) & 0xff));
        }
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        TermVectors tv;
        tv.value = design_vector(t, D_);
        tv.deriv.reserve(static_cast<std::size_t>(D_.d()));
        for (int ax = 0; ax < D_.d(); ++ax) {
            Eigen::VectorXd dt(D_.n());
            for (int j = 0; j < D_.n(); ++j) {
                const int e = t[ax];
                dt(j) = e == 0 ? 0.0
                               : static_cast<double>(e) * eval_term(t.div_var(ax), D_.point(j));
            }
            tv.deriv.push_back(std::move(dt));
        }
        return cache_.emplace(std::move(key), std::move(tv)).first->second;
    }

private:
    const Design& D_;
    std::unordered_map<std::string, TermVectors> cache_;
};

struct FassinoOracle {
    const Design& D;
    const std::vector<double>& delta;
    FanDiagnostics* diag = nullptr;
    mutable TermVectorCache cache{D};  // one enumeration is sequential

    // The per-node state keeps everything that depends on the model alone, so
    // that probing a corner candidate costs O(n^2): the raw columns, a thin
    // M = Q R factorization, the signed projector complement I - QQ^T, and
    // the d derivative matrices of the model terms.
    struct State {
        std::vector<Term> terms;
        Eigen::MatrixXd M;                  // n x k, raw design columns
        Eigen::MatrixXd Q;                  // n x k, orthonormal columns
        Eigen::MatrixXd R;                  // k x k, upper triangular
        Eigen::MatrixXd proj_complement;    // I - Q Q^T
        std::vector<Eigen::MatrixXd> deriv; // per axis: X_{dk O}(D), n x k
    };

    State initial() const {
        State s;
        const int n = D.n(), d = D.d();
        s.M.resize(n, 0);
        s.Q.resize(n, 0);
        s.R.resize(0, 0);
        s.proj_complement = Eigen::MatrixXd::Identity(n, n);
        s.deriv.assign(static_cast<std::size_t>(d), Eigen::MatrixXd(n, 0));
        return s;
    }

    std::optional<State> probe(const State& st, const Term& t, Eigen::VectorXd* coeffs = nullptr) const {
        const int n = D.n();
        const Eigen::Index k = st.Q.cols();
        const TermVectors& tv = cache.get(t);
        const Eigen::VectorXd& b = tv.value;
        const Eigen::VectorXd y = st.Q.transpose() * b;
        const Eigen::VectorXd rho = b - st.Q * y;
        Eigen::VectorXd a(k);
        if (k > 0) a = st.R.triangularView<Eigen::Upper>().solve(y);
        if (coeffs) *coeffs = a;

        // bound_i = sum_j |I - MM^+|_ij sum_k delta_k |dk t(p_j) - (X_{dk O} a)_j|
        Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
        for (int ax = 0; ax < D.d(); ++ax) {
            const double dk = delta[static_cast<std::size_t>(ax)];
            if (dk == 0) continue;
            Eigen::VectorXd dt = tv.deriv[static_cast<std::size_t>(ax)];
            if (k > 0) dt -= st.deriv[static_cast<std::size_t>(ax)] * a;
            c += dk * dt.cwiseAbs();
        }
        const Eigen::VectorXd bounds = st.proj_complement.cwiseAbs() * c;
        const Eigen::VectorXd noise = detail::residual_noise_floor(st.M, a, b);

        if (diag) {
            double m = std::numeric_limits<double>::infinity();
            for (int i = 0; i < n; ++i)
                m = std::min(m, std::abs(std::abs(rho(i)) - bounds(i)));
            diag->min_decision_margin = std::min(diag->min_decision_margin, m);
        }
        if (rho.norm() <= static_cast<double>(n) * std::numeric_limits<double>::epsilon() * b.norm())
            return std::nullopt;
        bool indep = false;
        for (int i = 0; !indep && i < n; ++i)
            if (std::abs(rho(i)) > bounds(i) && std::abs(rho(i)) > noise(i)) indep = true;
        if (!indep) return std::nullopt;
        return extended(st, t, tv, y, rho);
    }

    State extended(const State& st, const Term& t, const TermVectors& tv, const Eigen::VectorXd& y,
                   const Eigen::VectorXd& rho) const {
        const int n = D.n();
        const Eigen::Index k = st.Q.cols();
        // one reorthogonalization pass keeps Q orthonormal at this scale
        Eigen::VectorXd q = rho - st.Q * (st.Q.transpose() * rho);
        const double r = q.norm();
        q /= r;
        State child;
        child.terms = st.terms;
        child.terms.push_back(t);
        child.M.resize(n, k + 1);
        child.M << st.M, tv.value;
        child.Q.resize(n, k + 1);
        child.Q << st.Q, q;
        child.R = Eigen::MatrixXd::Zero(k + 1, k + 1);
        child.R.topLeftCorner(k, k) = st.R;
        child.R.topRightCorner(k, 1) = y + st.Q.transpose() * rho;
        child.R(k, k) = r;
        child.proj_complement = st.proj_complement - q * q.transpose();
        child.deriv.reserve(st.deriv.size());
        for (int ax = 0; ax < D.d(); ++ax) {
            Eigen::MatrixXd m(n, k + 1);
            m << st.deriv[static_cast<std::size_t>(ax)], tv.deriv[static_cast<std::size_t>(ax)];
            child.deriv.push_back(std::move(m));
        }
        return child;
    }
};

// δ = 0 on exact inputs: incremental rational elimination.
struct ExactRankOracle {
    const Design& D;

    struct State {
        ExactRankState elim;
    };

    State initial() const { return {ExactRankState(D.n())}; }

    // coefficients are not produced here; nbm() recomputes them exactly from
    // the model terms when it needs them
    std::optional<State> probe(const State& st, const Term& t, Eigen::VectorXd* coeffs = nullptr) const {
        if (coeffs) coeffs->resize(0);
        auto v = design_vector_exact(t, D);
        State child = st;
        if (!child.elim.extend(v).independent) return std::nullopt;
        return child;
    }
};

// δ = 0 on floating inputs: thresholded residual test (‖ρ‖ > n·ε·‖b‖).
struct FloatRankOracle {
    const Design& D;

    struct State {
        Eigen::MatrixXd M;
        std::vector<Term> terms;
    };

    State initial() const { return {Eigen::MatrixXd(D.n(), 0), {}}; }

    std::optional<State> probe(const State& st, const Term& t, Eigen::VectorXd* coeffs = nullptr) const {
        const Eigen::VectorXd b = design_vector(t, D);
        const auto lsq = least_squares(st.M, b);
        if (coeffs) *coeffs = lsq.coefficients;
        if (lsq.residual.norm() <=
            static_cast<double>(D.n()) * std::numeric_limits<double>::epsilon() * b.norm())
            return std::nullopt;
        const Eigen::VectorXd noise = detail::residual_noise_floor(st.M, lsq.coefficients, b);
        bool indep = false;
        for (int i = 0; !indep && i < b.size(); ++i)
            if (std::abs(lsq.residual(i)) > noise(i)) indep = true;
        if (!indep) return std::nullopt;
        State child;
        child.M.resize(D.n(), st.M.cols() + 1);
        child.M << st.M, b;
        child.terms = st.terms;
        child.terms.push_back(t);
        return child;
    }
};

struct EnumerationOutcome {
    std::vector<OrderIdeal> weakly_maximal;
    std::vector<OrderIdeal> full_size;  // ideals that reached |O| = n
    std::uint64_t stable_count = 0;     // distinct nonempty stable ideals (the HS set)
    std::vector<std::string> stable_keys;
    FanDiagnostics diagnostics;
};

/// The shared recursion of the fan algorithms, run iteratively on an explicit
/// stack.  Every stable ideal is entered exactly once (dedup on canonical
/// corner keys); an entered ideal whose candidates all test dependent is
/// weakly maximal.  Ideals of full size n stop expanding: their design
/// vectors span K^n, so every further candidate is dependent by rank.
template <class Oracle>
EnumerationOutcome enumerate_stable_ideals(const Design& D, const Oracle& oracle,
                                           const FanOptions& opt) {
    struct Frame {
        OrderIdeal oi;
        typename Oracle::State st;
        std::vector<Term> candidates;
        std::size_t next = 0;
        bool maxbool = true;
    };

    EnumerationOutcome out;
    const int n = D.n();
    std::unordered_set<std::string> visited;
    std::vector<Frame> stack;

    auto push = [&](OrderIdeal oi, typename Oracle::State st) {
        Frame f;
        if (oi.size() < n) {
            f.candidates = oi.corners();
            std::sort(f.candidates.begin(), f.candidates.end(), opt.strategy.cmp());
        }
        f.oi = std::move(oi);
        f.st = std::move(st);
        ++out.diagnostics.visit_calls;
        stack.push_back(std::move(f));
    };

    push(OrderIdeal::empty(D.d()), oracle.initial());
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next < f.candidates.size()) {
            const Term t = f.candidates[f.next++];
            auto child_st = oracle.probe(f.st, t);
            if (child_st) {
                f.maxbool = false;
                OrderIdeal child = f.oi.with_added(t);
                std::string key = child.canonical_key();
                if (visited.insert(key).second) {
                    if (++out.stable_count > opt.budget)
                        throw BudgetExceeded("fan enumeration: budget exceeded");
                    if (opt.collect_stable_keys) out.stable_keys.push_back(std::move(key));
                    if (child.size() == n) out.full_size.push_back(child);
                    push(std::move(child), std::move(*child_st));
                }
            }
        } else {
            if (f.maxbool && !f.oi.is_empty()) out.weakly_maximal.push_back(f.oi);
            stack.pop_back();
        }
    }
    return out;
}

inline bool use_exact_path(const Design& D, bool zero_delta, ArithMode mode) {
    switch (mode) {
        case ArithMode::exact:
            if (!zero_delta)
                throw std::invalid_argument("exact arithmetic requires a zero tolerance vector");
            if (!D.all_exact())
                throw std::invalid_argument("exact arithmetic requires rational inputs");
            return true;
        case ArithMode::floating:
            return false;
        default:
            return zero_delta && D.all_exact();
    }
}

}  // namespace detail

/// All maximal identifiable order ideals of size n = |D| (and, as a
/// byproduct, how many identifiable order ideals of any size there are).
struct StatisticalFanResult {
    Fan fan;
    std::uint64_t identifiable_count = 0;  // all identifiable nonempty order ideals
    FanDiagnostics diagnostics;
};

inline StatisticalFanResult statistical_fan(const Design& D, const FanOptions& opt = {}) {
    if (D.has_duplicate_points()) throw std::invalid_argument("statistical_fan: duplicate points");
    auto out = detail::use_exact_path(D, /*zero_delta=*/true, opt.arith)
                   ? detail::enumerate_stable_ideals(D, detail::ExactRankOracle{D}, opt)
                   : detail::enumerate_stable_ideals(D, detail::FloatRankOracle{D}, opt);
    StatisticalFanResult res;
    res.fan = Fan::build(std::move(out.full_size), D);
    res.identifiable_count = out.stable_count;
    res.diagnostics = out.diagnostics;
    return res;
}

/// The numerical statistical fan of an empirical design, together with the
/// weakly maximal set it was filtered from and the number of stable order
/// ideals encountered.  stable_count counts distinct nonempty stable order
/// ideals, {1} included, the empty recursion seed excluded.
struct NumericalFanResult {
    Fan fan;             // inclusion-maximal stable order ideals
    Fan weakly_maximal;  // all ideals whose corner terms all test dependent
    std::uint64_t stable_count = 0;
    FanDiagnostics diagnostics;
    std::vector<std::string> stable_keys;  // filled when options.collect_stable_keys
};

inline NumericalFanResult numerical_fan(const EmpiricalDesign& ed, const FanOptions& opt = {}) {
    const Design& D = ed.design;
    const bool zero_delta = ed.zero_tolerance();
    const bool exact = detail::use_exact_path(D, zero_delta, opt.arith);

    NumericalFanResult res;
    detail::EnumerationOutcome out;
    if (exact) {
        out = detail::enumerate_stable_ideals(D, detail::ExactRankOracle{D}, opt);
    } else if (zero_delta) {
        out = detail::enumerate_stable_ideals(D, detail::FloatRankOracle{D}, opt);
    } else {
        detail::FassinoOracle oracle{D, ed.tolerance, &res.diagnostics};
        out = detail::enumerate_stable_ideals(D, oracle, opt);
        out.diagnostics.min_decision_margin = res.diagnostics.min_decision_margin;
    }
    res.weakly_maximal = Fan::build(std::move(out.weakly_maximal), D);
    res.stable_count = out.stable_count;
    res.diagnostics = out.diagnostics;
    res.stable_keys = std::move(out.stable_keys);

    std::vector<OrderIdeal> weak;
    weak.reserve(res.weakly_maximal.models.size());
    for (const auto& m : res.weakly_maximal.models) weak.push_back(m.ideal);
    res.fan = Fan::build(filter_inclusion_maximal(weak), D);
    return res;
}

/// One maximal stable order ideal, grown greedily: candidates are taken from
/// the corner set in increasing `strategy` order, rejected candidates stay
/// rejected (their multiples never re-enter the corner set).
inline OrderIdeal maximal_stable_order_ideal(const EmpiricalDesign& ed, const TermOrder& strategy,
                                             ArithMode arith = ArithMode::automatic);

/// An almost-vanishing polynomial t − Σ_l a_l t_l emitted for a rejected
/// corner term t: `leading` is t and `coefficients[l]` the coefficient of the
/// returned order ideal's l-th member (so −a_l on the members of the model at
/// rejection time, 0 on members added later).
struct NbmPolynomial {
    Term leading;
    std::vector<double> coefficients;
};

struct NbmOutput {
    OrderIdeal order_ideal;
    std::vector<NbmPolynomial> polynomials;
};

namespace detail {

template <class Oracle>
NbmOutput nbm_run(const Design& D, const Oracle& oracle, const TermOrder& order, bool exact_coeffs) {
    const int n = D.n();
    OrderIdeal oi = OrderIdeal::empty(D.d());
    typename Oracle::State st = oracle.initial();
    std::vector<Term> added;  // model terms in acceptance order = lsq column order
    {  // {1} is always stable for a nonempty design
        const Term one = Term::one(D.d());
        auto st1 = oracle.probe(st, one);
        if (!st1) throw std::logic_error("nbm: constant term tested dependent");
        st = std::move(*st1);
        oi = oi.with_added(one);
        added.push_back(one);
    }
    std::vector<Term> rejected;
    auto is_rejected = [&](const Term& t) {
        return std::find(rejected.begin(), rejected.end(), t) != rejected.end();
    };
    struct Rejection {
        Term t;
        std::vector<Term> model_terms;
        Eigen::VectorXd coeffs;
    };
    std::vector<Rejection> rejections;
    for (;;) {
        const Term* pick = nullptr;
        for (const Term& c : oi.corners())
            if (!is_rejected(c) && (!pick || order.less(c, *pick))) pick = &c;
        if (!pick) break;
        const Term t = *pick;
        Eigen::VectorXd coeffs;
        std::optional<typename Oracle::State> child;
        if (oi.size() < n) child = oracle.probe(st, t, &coeffs);
        // at |O| = n the model spans K^n: t is dependent by rank, with the
        // exact-fit coefficients
        if (child) {
            st = std::move(*child);
            oi = oi.with_added(t);
            added.push_back(t);
        } else {
            rejections.push_back({t, added, std::move(coeffs)});
            rejected.push_back(t);
        }
    }
    NbmOutput out;
    out.order_ideal = oi;
    for (auto& r : rejections) {
        NbmPolynomial p;
        p.leading = r.t;
        p.coefficients.assign(static_cast<std::size_t>(oi.size()), 0.0);
        std::vector<double> a;
        if (r.coeffs.size() == static_cast<Eigen::Index>(r.model_terms.size())) {
            a.assign(r.coeffs.data(), r.coeffs.data() + r.coeffs.size());
        } else if (exact_coeffs) {
            std::vector<std::vector<mpq_class>> cols;
            cols.reserve(r.model_terms.size());
            for (const Term& s : r.model_terms) cols.push_back(design_vector_exact(s, D));
            auto ea = exact_solve_consistent(cols, design_vector_exact(r.t, D));
            a.reserve(ea.size());
            for (const auto& q : ea) a.push_back(q.get_d());
        } else {
            const DesignMatrix M = design_matrix(r.model_terms, D);
            const auto lsq = least_squares(M.entries, design_vector(r.t, D));
            a.assign(lsq.coefficients.data(), lsq.coefficients.data() + lsq.coefficients.size());
        }
        for (std::size_t l = 0; l < r.model_terms.size(); ++l) {
            const auto& ms = oi.members();
            const auto it = std::lower_bound(ms.begin(), ms.end(), r.model_terms[l]);
            p.coefficients[static_cast<std::size_t>(it - ms.begin())] = -a[l];
        }
        out.polynomials.push_back(std::move(p));
    }
    return out;
}

}  // namespace detail

/// Numerical Buchberger–Möller: the greedy growth with the ≺-smallest
/// candidate strategy, returning the stable order ideal and one almost
/// vanishing polynomial per rejected corner term.
inline NbmOutput nbm(const EmpiricalDesign& ed, const TermOrder& order,
                     ArithMode arith = ArithMode::automatic) {
    const Design& D = ed.design;
    const bool zero_delta = ed.zero_tolerance();
    if (detail::use_exact_path(D, zero_delta, arith) && zero_delta)
        return detail::nbm_run(D, detail::ExactRankOracle{D}, order, /*exact_coeffs=*/true);
    if (zero_delta) return detail::nbm_run(D, detail::FloatRankOracle{D}, order, false);
    if (arith == ArithMode::exact)
        throw std::invalid_argument("exact arithmetic requires a zero tolerance vector");
    return detail::nbm_run(D, detail::FassinoOracle{D, ed.tolerance, nullptr}, order, false);
}

inline OrderIdeal maximal_stable_order_ideal(const EmpiricalDesign& ed, const TermOrder& strategy,
                                             ArithMode arith) {
    return nbm(ed, strategy, arith).order_ideal;
}

/// Finite-family approximation of the numerical algebraic fan: the NBM order
/// ideals over {lex, deglex, degrevlex} × all coordinate permutations,
/// deduplicated.  Each output is weakly maximal by construction.
inline Fan numerical_algebraic_fan_family(const EmpiricalDesign& ed, const FanOptions& opt = {}) {
    const int d = ed.design.d();
    std::uint64_t runs = 3;
    for (int k = 2; k <= d; ++k) {
        runs *= static_cast<std::uint64_t>(k);
        if (d > 20 || runs > opt.budget)
            throw BudgetExceeded("numerical_algebraic_fan_family: 3·d! exceeds the budget");
    }
    std::vector<OrderIdeal> ideals;
    std::unordered_set<std::string> seen;
    for (const auto& kind : {TermOrder::Kind::lex, TermOrder::Kind::deglex, TermOrder::Kind::degrevlex})
        for (const auto& perm : all_permutations(d)) {
            TermOrder order{kind, perm};
            OrderIdeal oi = nbm(ed, order, opt.arith).order_ideal;
            if (seen.insert(oi.canonical_key()).second) ideals.push_back(std::move(oi));
        }
    return Fan::build(std::move(ideals), ed.design);
}

}  // namespace numfan
