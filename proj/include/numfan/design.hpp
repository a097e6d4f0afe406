#pragma once

#include <Eigen/Dense>
#include <gmpxx.h>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "numfan/scalar.hpp"
#include "numfan/term.hpp"

namespace numfan {

/// A finite set of points in K^d, row per point.
class Design {
public:
    explicit Design(std::vector<std::vector<Scalar>> points) : pts_(std::move(points)) {
        if (pts_.empty()) throw std::invalid_argument("Design: needs at least one point");
        const std::size_t d = pts_.front().size();
        if (d == 0) throw std::invalid_argument("Design: needs at least one coordinate");
        for (const auto& row : pts_)
            if (row.size() != d) throw std::invalid_argument("Design: ragged rows");
    }

    static Design from_doubles(const std::vector<std::vector<double>>& rows) {
        std::vector<std::vector<Scalar>> pts;
        pts.reserve(rows.size());
        for (const auto& r : rows) {
            std::vector<Scalar> row;
            row.reserve(r.size());
            for (double v : r) row.push_back(Scalar::from_double(v));
            pts.push_back(std::move(row));
        }
        return Design(std::move(pts));
    }

    /// Every entry must parse as a decimal or p/q literal (exact path enabled).
    static Design parse_rows(const std::vector<std::vector<std::string>>& rows) {
        std::vector<std::vector<Scalar>> pts;
        pts.reserve(rows.size());
        for (const auto& r : rows) {
            std::vector<Scalar> row;
            row.reserve(r.size());
            for (const std::string& v : r) {
                auto s = Scalar::parse(v);
                if (!s) throw std::invalid_argument("Design: cannot parse '" + v + "'");
                row.push_back(*std::move(s));
            }
            pts.push_back(std::move(row));
        }
        return Design(std::move(pts));
    }

    int n() const { return static_cast<int>(pts_.size()); }
    int d() const { return static_cast<int>(pts_.front().size()); }
    const Scalar& at(int i, int k) const {
        return pts_[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    }
    double coord(int i, int k) const { return at(i, k).value(); }

    std::vector<double> point(int i) const {
        std::vector<double> p(static_cast<std::size_t>(d()));
        for (int k = 0; k < d(); ++k) p[static_cast<std::size_t>(k)] = coord(i, k);
        return p;
    }

    bool all_exact() const {
        for (const auto& row : pts_)
            for (const auto& s : row)
                if (!s.is_exact()) return false;
        return true;
    }

    bool has_duplicate_points() const {
        for (int i = 0; i < n(); ++i)
            for (int j = i + 1; j < n(); ++j) {
                bool same = true;
                for (int k = 0; same && k < d(); ++k)
                    if (!(at(i, k) == at(j, k))) same = false;
                if (same) return true;
            }
        return false;
    }

private:
    std::vector<std::vector<Scalar>> pts_;
};

/// A design with a componentwise tolerance vector δ >= 0.
struct EmpiricalDesign {
    Design design;
    std::vector<double> tolerance;

    EmpiricalDesign(Design d, std::vector<double> tol)
        : design(std::move(d)), tolerance(std::move(tol)) {
        if (static_cast<int>(tolerance.size()) != design.d())
            throw std::invalid_argument("EmpiricalDesign: tolerance length != d");
        for (double t : tolerance)
            if (!(t >= 0)) throw std::invalid_argument("EmpiricalDesign: tolerance must be >= 0");
    }

    double delta_max() const {
        double m = 0;
        for (double t : tolerance) m = std::max(m, t);
        return m;
    }

    bool zero_tolerance() const {
        for (double t : tolerance)
            if (t != 0) return false;
        return true;
    }

    EmpiricalDesign scaled_tolerance(double k) const {
        std::vector<double> t = tolerance;
        for (double& v : t) v *= k;
        return EmpiricalDesign(design, std::move(t));
    }
};

/// X^α(p) with the convention 0^0 = 1 (so the constant term is 1 everywhere).
inline double eval_term(const Term& t, const std::vector<double>& p) {
    if (t.dim() != static_cast<int>(p.size()))
        throw std::invalid_argument("eval_term: dimension mismatch");
    double r = 1.0;
    for (int k = 0; k < t.dim(); ++k)
        for (int e = 0; e < t[k]; ++e) r *= p[static_cast<std::size_t>(k)];
    return r;
}

inline mpq_class eval_term_exact(const Term& t, const Design& D, int i) {
    mpq_class r(1);
    for (int k = 0; k < t.dim(); ++k)
        for (int e = 0; e < t[k]; ++e) r *= D.at(i, k).exact();
    return r;
}

/// Design vector t(D), as a dense column.
inline Eigen::VectorXd design_vector(const Term& t, const Design& D) {
    Eigen::VectorXd v(D.n());
    for (int i = 0; i < D.n(); ++i) v(i) = eval_term(t, D.point(i));
    return v;
}

inline std::vector<mpq_class> design_vector_exact(const Term& t, const Design& D) {
    std::vector<mpq_class> v;
    v.reserve(static_cast<std::size_t>(D.n()));
    for (int i = 0; i < D.n(); ++i) v.push_back(eval_term_exact(t, D, i));
    return v;
}

/// Evaluation matrix X_O(D): rows follow the design points, columns the
/// supplied term list (in the given order).
struct DesignMatrix {
    Eigen::MatrixXd entries;
    std::vector<Term> column_terms;
};

inline DesignMatrix design_matrix(const std::vector<Term>& terms, const Design& D) {
    DesignMatrix M;
    M.column_terms = terms;
    M.entries.resize(D.n(), static_cast<Eigen::Index>(terms.size()));
    for (int i = 0; i < D.n(); ++i) {
        const auto p = D.point(i);
        for (std::size_t l = 0; l < terms.size(); ++l)
            M.entries(i, static_cast<Eigen::Index>(l)) = eval_term(terms[l], p);
    }
    return M;
}

/// X_{∂k O}(D): entry (j,l) is (∂ t_l / ∂ X_{k+1})(p_j) = α_k · X^{α-e_k}(p_j).
inline Eigen::MatrixXd derivative_matrix(const std::vector<Term>& terms, const Design& D, int axis) {
    if (axis < 0 || axis >= D.d()) throw std::invalid_argument("derivative_matrix: bad axis");
    Eigen::MatrixXd M(D.n(), static_cast<Eigen::Index>(terms.size()));
    for (int j = 0; j < D.n(); ++j) {
        const auto p = D.point(j);
        for (std::size_t l = 0; l < terms.size(); ++l) {
            const Term& t = terms[l];
            const int a = t[axis];
            M(j, static_cast<Eigen::Index>(l)) =
                a == 0 ? 0.0 : static_cast<double>(a) * eval_term(t.div_var(axis), p);
        }
    }
    return M;
}

/// x' = scale * x + offset, per coordinate; invertible (scale > 0).
struct AffineMap {
    double scale = 1.0;
    double offset = 0.0;
    std::optional<mpq_class> exact_scale;
    std::optional<mpq_class> exact_offset;

    double apply(double x) const { return scale * x + offset; }
    double invert(double y) const { return (y - offset) / scale; }
};

/// Maps every coordinate affinely onto [-1,1] and rescales δ by the same
/// factor (2δ_i / range_i).  Exact inputs stay exact.  Throws on a constant
/// coordinate.
inline std::pair<EmpiricalDesign, std::vector<AffineMap>> standardize(const EmpiricalDesign& ed) {
    const Design& D = ed.design;
    const int n = D.n(), d = D.d();
    std::vector<AffineMap> maps(static_cast<std::size_t>(d));
    const bool exact = D.all_exact();

    std::vector<std::vector<Scalar>> pts(static_cast<std::size_t>(n),
                                         std::vector<Scalar>(static_cast<std::size_t>(d)));
    std::vector<double> tol(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
        auto& map = maps[static_cast<std::size_t>(k)];
        if (exact) {
            mpq_class lo = D.at(0, k).exact(), hi = lo;
            for (int i = 1; i < n; ++i) {
                const mpq_class& v = D.at(i, k).exact();
                if (v < lo) lo = v;
                if (v > hi) hi = v;
            }
            const mpq_class range = hi - lo;
            if (range == 0) throw std::invalid_argument("standardize: constant coordinate");
            const mpq_class scale = mpq_class(2) / range;
            const mpq_class offset = -(lo + hi) / range;
            map.exact_scale = scale;
            map.exact_offset = offset;
            map.scale = scale.get_d();
            map.offset = offset.get_d();
            for (int i = 0; i < n; ++i) {
                mpq_class y = scale * D.at(i, k).exact() + offset;
                pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
                    Scalar::from_rational(std::move(y));
            }
        } else {
            double lo = D.coord(0, k), hi = lo;
            for (int i = 1; i < n; ++i) {
                lo = std::min(lo, D.coord(i, k));
                hi = std::max(hi, D.coord(i, k));
            }
            const double range = hi - lo;
            if (range == 0) throw std::invalid_argument("standardize: constant coordinate");
            map.scale = 2.0 / range;
            map.offset = -(lo + hi) / range;
            for (int i = 0; i < n; ++i)
                pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
                    Scalar::from_double(map.apply(D.coord(i, k)));
        }
        tol[static_cast<std::size_t>(k)] = ed.tolerance[static_cast<std::size_t>(k)] * map.scale;
    }
    return {EmpiricalDesign(Design(std::move(pts)), std::move(tol)), std::move(maps)};
}

/// Pairs (i,j) whose open δ-boxes (half-width δ_k per axis) intersect, i.e.
/// |p_i,k − p_j,k| < 2 δ_k for every k.  Empty result = well separated.
inline std::vector<std::pair<int, int>> check_separation(const EmpiricalDesign& ed) {
    const Design& D = ed.design;
    std::vector<std::pair<int, int>> offending;
    for (int i = 0; i < D.n(); ++i)
        for (int j = i + 1; j < D.n(); ++j) {
            bool overlap = true;
            for (int k = 0; overlap && k < D.d(); ++k)
                if (!(std::abs(D.coord(i, k) - D.coord(j, k)) <
                      2.0 * ed.tolerance[static_cast<std::size_t>(k)]))
                    overlap = false;
            if (overlap) offending.emplace_back(i, j);
        }
    return offending;
}

}  // namespace numfan
