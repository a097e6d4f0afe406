#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace numfan {

/// Nearest double to a rational, ties to even.  mpq_get_d truncates toward
/// zero, which loses the strtod semantics a parsed literal should keep.
inline double rational_to_double(const mpq_class& q) {
    const double trunc = q.get_d();
    if (!std::isfinite(trunc) || trunc == 0.0 || q == trunc) return trunc;
    // the truncated value lies between q and zero; its outward neighbor is the
    // other rounding candidate
    const double away = std::nextafter(trunc, q > 0 ? std::numeric_limits<double>::infinity()
                                                    : -std::numeric_limits<double>::infinity());
    if (!std::isfinite(away)) return trunc;
    const mpq_class d0 = abs(q - mpq_class(trunc));
    const mpq_class d1 = abs(mpq_class(away) - q);
    if (d0 < d1) return trunc;
    if (d1 < d0) return away;
    // exact tie: pick the even mantissa
    std::int64_t bits0, bits1;
    std::memcpy(&bits0, &trunc, sizeof bits0);
    std::memcpy(&bits1, &away, sizeof bits1);
    return (bits0 & 1) == 0 ? trunc : away;
}

/// A design coordinate.  Values parsed from decimal or "p/q" literals carry an
/// exact rational alongside the double; values built from raw doubles are
/// floating-only.  The exact side feeds the δ=0 rank logic, the double side
/// feeds least squares and the Fassino test.
class Scalar {
public:
    Scalar() : value_(0.0), exact_(mpq_class(0)) {}

    static Scalar from_double(double v) {
        Scalar s;
        s.value_ = v;
        s.exact_.reset();
        return s;
    }

    static Scalar from_rational(mpq_class q) {
        Scalar s;
        q.canonicalize();
        s.value_ = rational_to_double(q);
        s.exact_ = std::move(q);
        return s;
    }

    /// Accepts integers ("-3"), finite decimals ("2.449", "1e-3", "-1.2E2")
    /// and rational literals ("p/q"); all parse exactly.
    static std::optional<Scalar> parse(const std::string& text) {
        auto q = parse_rational(text);
        if (!q) return std::nullopt;
        return from_rational(*std::move(q));
    }

    double value() const { return value_; }
    bool is_exact() const { return exact_.has_value(); }
    const mpq_class& exact() const {
        if (!exact_) throw std::logic_error("Scalar: no exact value");
        return *exact_;
    }

    bool operator==(const Scalar& o) const {
        if (exact_ && o.exact_) return *exact_ == *o.exact_;
        return value_ == o.value_ && exact_.has_value() == o.exact_.has_value();
    }

    static std::optional<mpq_class> parse_rational(const std::string& text) {
        std::size_t b = 0, e = text.size();
        while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
        while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
        const std::string s = text.substr(b, e - b);
        if (s.empty()) return std::nullopt;
        const auto slash = s.find('/');
        if (slash != std::string::npos) {
            auto num = parse_decimal(s.substr(0, slash));
            auto den = parse_decimal(s.substr(slash + 1));
            if (!num || !den || *den == 0) return std::nullopt;
            mpq_class q = *num / *den;
            q.canonicalize();
            return q;
        }
        return parse_decimal(s);
    }

private:
    // [-+]?digits[.digits][eE[-+]digits], parsed to an exact rational
    static std::optional<mpq_class> parse_decimal(const std::string& s) {
        std::size_t i = 0;
        bool neg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');
        std::string digits;
        long frac_digits = 0;
        bool any = false;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            digits += s[i++];
            any = true;
        }
        if (i < s.size() && s[i] == '.') {
            ++i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                digits += s[i++];
                ++frac_digits;
                any = true;
            }
        }
        if (!any) return std::nullopt;
        long exp10 = 0;
        if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
            ++i;
            bool eneg = false;
            if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = (s[i++] == '-');
            if (i == s.size()) return std::nullopt;
            long v = 0;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                v = v * 10 + (s[i++] - '0');
                if (v > 100000) return std::nullopt;
            }
            exp10 = eneg ? -v : v;
        }
        if (i != s.size()) return std::nullopt;
        mpz_class mantissa(digits.empty() ? "0" : digits, 10);
        if (neg) mantissa = -mantissa;
        const long net = exp10 - frac_digits;
        mpz_class pow10;
        mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(net < 0 ? -net : net));
        mpq_class q = net >= 0 ? mpq_class(mantissa * pow10) : mpq_class(mantissa, pow10);
        q.canonicalize();
        return q;
    }

    double value_;
    std::optional<mpq_class> exact_;
};

/// 12-significant-digit rendering used by the deterministic JSON output.
inline double round_to_12_digits(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

}  // namespace numfan
