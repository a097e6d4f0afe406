#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

#include "numfan/term.hpp"

namespace numfan {

/// A finite, divisibility-closed set of terms (hierarchical model / staircase),
/// together with its corner set: the minimal elements of the complement, i.e.
/// exactly the terms t for which members ∪ {t} is again an order ideal.
///
/// The empty order ideal is allowed (its corner set is {1}); it is the seed of
/// the fan recursions.  Members and corners are kept sorted lexicographically
/// on exponent vectors, which makes canonical_key deterministic.
class OrderIdeal {
public:
    /// Zero-dimensional placeholder; build real ideals with the factories.
    OrderIdeal() = default;

    static OrderIdeal empty(int dim) {
        OrderIdeal oi;
        oi.dim_ = dim;
        oi.corners_ = {Term::one(dim)};
        return oi;
    }

    static OrderIdeal unit(int dim) { return empty(dim).with_added(Term::one(dim)); }

    /// Builds from an explicit member list, validating divisibility closure.
    /// Corner set is computed from scratch.
    static OrderIdeal from_members(int dim, std::vector<Term> members) {
        OrderIdeal oi;
        oi.dim_ = dim;
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        oi.members_ = std::move(members);
        for (const Term& t : oi.members_) {
            if (t.dim() != dim) throw std::invalid_argument("OrderIdeal: dimension mismatch");
            for (int k = 0; k < dim; ++k)
                if (t[k] > 0 && !oi.contains(t.div_var(k)))
                    throw std::invalid_argument("OrderIdeal: member set not closed under divisibility");
        }
        oi.corners_ = corner_set_scan(dim, oi.members_);
        return oi;
    }

    /// The order ideal generated by a set of terms: all of their divisors.
    static OrderIdeal from_maximal_elements(int dim, const std::vector<Term>& gens) {
        std::vector<Term> members;
        std::vector<int> e(static_cast<std::size_t>(dim), 0);
        for (const Term& g : gens) {
            if (g.dim() != dim) throw std::invalid_argument("OrderIdeal: dimension mismatch");
            std::fill(e.begin(), e.end(), 0);
            for (;;) {  // enumerate the divisor box of g
                members.emplace_back(e);
                int k = 0;
                while (k < dim && e[static_cast<std::size_t>(k)] == g[k]) {
                    e[static_cast<std::size_t>(k)] = 0;
                    ++k;
                }
                if (k == dim) break;
                ++e[static_cast<std::size_t>(k)];
            }
        }
        return from_members(dim, std::move(members));
    }

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(members_.size()); }
    bool is_empty() const { return members_.empty(); }
    const std::vector<Term>& members() const { return members_; }
    const std::vector<Term>& corners() const { return corners_; }

    bool contains(const Term& t) const {
        return std::binary_search(members_.begin(), members_.end(), t);
    }

    bool is_corner(const Term& t) const {
        return std::binary_search(corners_.begin(), corners_.end(), t);
    }

    /// members ∪ {t} with the corner set updated incrementally from the cached
    /// one: t leaves, and t*Xk enters iff all of its one-degree-less divisors
    /// lie in members ∪ {t}.  Requires t to be a corner.
    OrderIdeal with_added(const Term& t) const {
        if (!is_corner(t)) throw std::invalid_argument("with_added: term is not in the corner set");
        OrderIdeal r;
        r.dim_ = dim_;
        r.members_.reserve(members_.size() + 1);
        std::merge(members_.begin(), members_.end(), &t, &t + 1, std::back_inserter(r.members_));
        r.corners_.reserve(corners_.size() + static_cast<std::size_t>(dim_));
        for (const Term& c : corners_)
            if (!(c == t)) r.corners_.push_back(c);
        for (int k = 0; k < dim_; ++k) {
            const Term u = t.times_var(k);
            bool ok = true;
            for (int j = 0; ok && j < dim_; ++j) {
                if (j == k || u[j] == 0) continue;  // u/Xk == t is always present
                if (!r.contains(u.div_var(j))) ok = false;
            }
            if (ok) r.corners_.push_back(u);
        }
        std::sort(r.corners_.begin(), r.corners_.end());
        return r;
    }

    /// Members with no proper multiple among the members; they generate the ideal.
    std::vector<Term> maximal_elements() const {
        std::vector<Term> out;
        for (const Term& m : members_) {
            bool maximal = true;
            for (int k = 0; maximal && k < dim_; ++k)
                if (contains(m.times_var(k))) maximal = false;
            if (maximal) out.push_back(m);
        }
        return out;
    }

    /// Is `other` a subset of this ideal?  Inclusion of order ideals reduces to
    /// membership of the maximal elements.
    bool contains_ideal(const OrderIdeal& other) const {
        for (const Term& g : other.maximal_elements())
            if (!contains(g)) return false;
        return true;
    }

    /// Injective encoding (per fixed dimension): little-endian uint32 dimension
    /// and corner count, then the sorted corner exponent tuples.  The corner
    /// set determines the ideal, so key equality is ideal equality.
    std::string canonical_key() const {
        std::string key;
        key.reserve(8 + corners_.size() * static_cast<std::size_t>(dim_) * 4);
        append_u32(key, static_cast<std::uint32_t>(dim_));
        append_u32(key, static_cast<std::uint32_t>(corners_.size()));
        for (const Term& c : corners_)
            for (int k = 0; k < dim_; ++k) append_u32(key, static_cast<std::uint32_t>(c[k]));
        return key;
    }

    bool operator==(const OrderIdeal& o) const { return dim_ == o.dim_ && members_ == o.members_; }

    /// From-scratch corner computation; kept as the reference for with_added.
    static std::vector<Term> corner_set_scan(int dim, const std::vector<Term>& members) {
        if (members.empty()) return {Term::one(dim)};
        auto in = [&](const Term& t) {
            return std::binary_search(members.begin(), members.end(), t);
        };
        std::vector<Term> corners;
        for (const Term& m : members)
            for (int k = 0; k < dim; ++k) {
                const Term c = m.times_var(k);
                if (in(c)) continue;
                bool minimal = true;
                for (int j = 0; minimal && j < dim; ++j)
                    if (c[j] > 0 && !in(c.div_var(j))) minimal = false;
                if (minimal) corners.push_back(c);
            }
        std::sort(corners.begin(), corners.end());
        corners.erase(std::unique(corners.begin(), corners.end()), corners.end());
        return corners;
    }

private:
    static void append_u32(std::string& s, std::uint32_t v) {
        for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }

    int dim_ = 0;
    std::vector<Term> members_;
    std::vector<Term> corners_;
};

/// Human-readable "{X1^2, X2^2}" style rendering of a term list.
inline std::string render_term_set(const std::vector<Term>& ts) {
    std::string s = "{";
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (i) s += ", ";
        s += ts[i].str();
    }
    s += "}";
    return s;
}

}  // namespace numfan
