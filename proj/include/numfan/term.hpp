#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace numfan {

/// A monomial X1^a1 * ... * Xd^ad, stored as its exponent vector.
/// The constant term 1 is the all-zero vector.
class Term {
public:
    Term() = default;

    explicit Term(std::vector<int> exponents) : exp_(std::move(exponents)) {
        for (int e : exp_)
            if (e < 0) throw std::invalid_argument("Term: negative exponent");
    }

    static Term one(int dim) { return Term(std::vector<int>(static_cast<std::size_t>(dim), 0)); }

    /// X_{k+1} in `dim` variables (k is 0-based).
    static Term variable(int dim, int k) {
        std::vector<int> e(static_cast<std::size_t>(dim), 0);
        e.at(static_cast<std::size_t>(k)) = 1;
        return Term(std::move(e));
    }

    int dim() const { return static_cast<int>(exp_.size()); }
    int degree() const { return std::accumulate(exp_.begin(), exp_.end(), 0); }
    int operator[](int k) const { return exp_[static_cast<std::size_t>(k)]; }
    const std::vector<int>& exponents() const { return exp_; }
    bool is_one() const {
        return std::all_of(exp_.begin(), exp_.end(), [](int e) { return e == 0; });
    }

    /// t * X_{k+1}
    Term times_var(int k) const {
        Term r = *this;
        ++r.exp_[static_cast<std::size_t>(k)];
        return r;
    }

    /// t / X_{k+1}; requires a positive exponent on X_{k+1}.
    Term div_var(int k) const {
        if (exp_[static_cast<std::size_t>(k)] == 0)
            throw std::invalid_argument("Term::div_var: exponent is zero");
        Term r = *this;
        --r.exp_[static_cast<std::size_t>(k)];
        return r;
    }

    bool operator==(const Term& o) const = default;
    /// Lexicographic order on exponent vectors; used for canonical sorting only,
    /// not as a term order (it is not a well-ordering).
    auto operator<=>(const Term& o) const { return exp_ <=> o.exp_; }

    std::string str() const {
        std::string s;
        for (int k = 0; k < dim(); ++k) {
            int e = exp_[static_cast<std::size_t>(k)];
            if (e == 0) continue;
            if (!s.empty()) s += '*';
            s += 'X';
            s += std::to_string(k + 1);
            if (e > 1) {
                s += '^';
                s += std::to_string(e);
            }
        }
        return s.empty() ? "1" : s;
    }

private:
    std::vector<int> exp_;
};

/// s | t, i.e. the exponent vector of s is componentwise <= that of t.
inline bool divides(const Term& s, const Term& t) {
    if (s.dim() != t.dim()) throw std::invalid_argument("divides: dimension mismatch");
    for (int k = 0; k < s.dim(); ++k)
        if (s[k] > t[k]) return false;
    return true;
}

/// A term order: total, multiplicative, with 1 as the minimal element.
/// The variable permutation fixes which variable is "most significant":
/// position 0 of `perm` is compared first (lex) resp. last-reversed (degrevlex).
struct TermOrder {
    enum class Kind { lex, deglex, degrevlex };

    Kind kind = Kind::deglex;
    std::vector<int> perm;  // perm[i] = 0-based variable index at significance slot i; empty = identity

    static TermOrder lex() { return {Kind::lex, {}}; }
    static TermOrder deglex() { return {Kind::deglex, {}}; }
    static TermOrder degrevlex() { return {Kind::degrevlex, {}}; }

    TermOrder with_permutation(std::vector<int> p) const { return {kind, std::move(p)}; }

    static std::optional<TermOrder> parse(const std::string& name) {
        if (name == "lex") return lex();
        if (name == "deglex") return deglex();
        if (name == "degrevlex") return degrevlex();
        return std::nullopt;
    }

    const char* name() const {
        switch (kind) {
            case Kind::lex: return "lex";
            case Kind::deglex: return "deglex";
            default: return "degrevlex";
        }
    }

    bool less(const Term& a, const Term& b) const {
        if (a.dim() != b.dim()) throw std::invalid_argument("TermOrder: dimension mismatch");
        const int d = a.dim();
        auto at = [&](int i) { return perm.empty() ? i : perm[static_cast<std::size_t>(i)]; };
        if (kind != Kind::lex) {
            const int da = a.degree(), db = b.degree();
            if (da != db) return da < db;
        }
        if (kind == Kind::degrevlex) {
            // a < b iff the last nonzero of a-b (in significance order) is positive
            for (int i = d - 1; i >= 0; --i) {
                const int diff = a[at(i)] - b[at(i)];
                if (diff != 0) return diff > 0;
            }
            return false;
        }
        for (int i = 0; i < d; ++i) {
            const int diff = a[at(i)] - b[at(i)];
            if (diff != 0) return diff < 0;
        }
        return false;
    }

    /// Comparator adapter for std::sort and friends.
    auto cmp() const {
        return [this](const Term& a, const Term& b) { return less(a, b); };
    }
};

/// All permutations of {0,...,d-1}, in lexicographic order.
inline std::vector<std::vector<int>> all_permutations(int d) {
    std::vector<int> p(static_cast<std::size_t>(d));
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

}  // namespace numfan
