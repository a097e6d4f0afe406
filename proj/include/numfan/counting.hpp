#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "numfan/order_ideal.hpp"
#include "numfan/term.hpp"

namespace numfan {

/// Thrown when an enumeration would visit more order ideals than allowed.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

namespace detail {

// Counting works on a compact node: the sorted corner set of an ideal, one
// byte per exponent.  The corner set determines the ideal (the complement is
// the up-set of the corners), so the byte string doubles as the dedup key.
// Exponents of corners of an n-term ideal are at most n, hence the n <= 254
// guard in count_order_ideals.

inline bool any_corner_divides(const std::string& corners, int d, const unsigned char* u) {
    const std::size_t m = corners.size() / static_cast<std::size_t>(d);
    const auto* c = reinterpret_cast<const unsigned char*>(corners.data());
    for (std::size_t i = 0; i < m; ++i, c += d) {
        bool div = true;
        for (int k = 0; k < d; ++k)
            if (c[k] > u[k]) {
                div = false;
                break;
            }
        if (div) return true;
    }
    return false;
}

/// Corner set of O ∪ {t} from the corner set of O, flat-encoded; `t` points at
/// one of the corners inside `corners`.
inline std::string grow_corners(const std::string& corners, int d, const unsigned char* t) {
    std::vector<std::string> next;
    const std::size_t m = corners.size() / static_cast<std::size_t>(d);
    const auto* base = reinterpret_cast<const unsigned char*>(corners.data());
    for (std::size_t i = 0; i < m; ++i) {
        const unsigned char* c = base + i * static_cast<std::size_t>(d);
        if (std::equal(c, c + d, t)) continue;  // t leaves the corner set
        next.emplace_back(reinterpret_cast<const char*>(c), static_cast<std::size_t>(d));
    }
    std::vector<unsigned char> u(static_cast<std::size_t>(d)), v(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
        for (int j = 0; j < d; ++j) u[static_cast<std::size_t>(j)] = t[j];
        ++u[static_cast<std::size_t>(k)];
        // u = t*Xk enters iff every one-degree-less divisor lies in O ∪ {t};
        // u/Xk == t always does, and membership in O is "no corner divides it".
        bool ok = true;
        for (int j = 0; ok && j < d; ++j) {
            if (j == k || u[static_cast<std::size_t>(j)] == 0) continue;
            v = u;
            --v[static_cast<std::size_t>(j)];
            if (any_corner_divides(corners, d, v.data())) ok = false;
        }
        if (ok) next.emplace_back(reinterpret_cast<const char*>(u.data()), static_cast<std::size_t>(d));
    }
    std::sort(next.begin(), next.end());
    std::string out;
    out.reserve(next.size() * static_cast<std::size_t>(d));
    for (const auto& s : next) out += s;
    return out;
}

}  // namespace detail

/// Number of order ideals in d variables with exactly n terms, or, when
/// `cumulative`, with between 1 and n terms.  The cumulative count excludes
/// the empty ideal, matching the solid-partition totals it is checked
/// against; the exact count at n = 0 is 1 (the empty ideal).
///
/// Counts are obtained by breadth-first growth: the ideals with s+1 terms are
/// exactly the sets O ∪ {t} for O with s terms and t a corner of O, and each
/// is visited once thanks to dedup on its (canonical, flat-encoded) corner
/// set.  Throws BudgetExceeded once more than `budget` ideals were visited.
inline std::uint64_t count_order_ideals(int d, int n, bool cumulative,
                                        std::uint64_t budget = kDefaultEnumerationBudget) {
    if (d < 1) throw std::invalid_argument("count_order_ideals: d must be >= 1");
    if (n < 0) throw std::invalid_argument("count_order_ideals: n must be >= 0");
    if (n > 254) throw std::invalid_argument("count_order_ideals: n too large for byte exponents");
    if (n == 0) return cumulative ? 0 : 1;

    // level 1: the ideal {1}, with corner set {X1,...,Xd}
    std::string unit_corners;
    for (int k = 0; k < d; ++k)
        for (int j = 0; j < d; ++j) unit_corners.push_back(j == k ? 1 : 0);
    {  // variables sorted as byte tuples
        std::vector<std::string> vars;
        for (int k = 0; k < d; ++k)
            vars.push_back(unit_corners.substr(static_cast<std::size_t>(k * d), static_cast<std::size_t>(d)));
        std::sort(vars.begin(), vars.end());
        unit_corners.clear();
        for (const auto& s : vars) unit_corners += s;
    }

    std::uint64_t visited = 1;
    std::uint64_t total = 1;  // the ideal {1}
    std::vector<std::string> level = {unit_corners};
    for (int s = 1; s < n; ++s) {
        std::unordered_set<std::string> next;
        for (const std::string& corners : level) {
            const std::size_t m = corners.size() / static_cast<std::size_t>(d);
            const auto* base = reinterpret_cast<const unsigned char*>(corners.data());
            for (std::size_t i = 0; i < m; ++i) {
                std::string child = detail::grow_corners(corners, d, base + i * static_cast<std::size_t>(d));
                if (next.insert(std::move(child)).second && ++visited > budget)
                    throw BudgetExceeded("count_order_ideals: enumeration budget exceeded");
            }
        }
        level.assign(next.begin(), next.end());
        total += level.size();
    }
    return cumulative ? total : static_cast<std::uint64_t>(level.size());
}

/// All order ideals in d variables with exactly n terms, as full OrderIdeal
/// values.  Same growth/dedup scheme as count_order_ideals; intended for the
/// moderate sizes the fan oracles need.
inline std::vector<OrderIdeal> enumerate_order_ideals(int d, int n,
                                                      std::uint64_t budget = kDefaultEnumerationBudget) {
    if (d < 1 || n < 0) throw std::invalid_argument("enumerate_order_ideals: bad arguments");
    if (n == 0) return {OrderIdeal::empty(d)};
    std::uint64_t visited = 1;
    std::vector<OrderIdeal> level = {OrderIdeal::unit(d)};
    for (int s = 1; s < n; ++s) {
        std::unordered_set<std::string> seen;
        std::vector<OrderIdeal> next;
        for (const OrderIdeal& oi : level)
            for (const Term& t : oi.corners()) {
                OrderIdeal child = oi.with_added(t);
                if (seen.insert(child.canonical_key()).second) {
                    if (++visited > budget)
                        throw BudgetExceeded("enumerate_order_ideals: enumeration budget exceeded");
                    next.push_back(std::move(child));
                }
            }
        level = std::move(next);
    }
    return level;
}

}  // namespace numfan
