#pragma once

#include <Eigen/Dense>
#include <gmpxx.h>

#include <limits>
#include <stdexcept>
#include <vector>

namespace numfan {

/// Least-squares solve of M a ≈ b together with the pieces the Fassino test
/// consumes: the residual ρ = b − M a and the orthogonal-projector complement
/// I − M M⁺ onto the space the model cannot reach.
struct LeastSquaresResult {
    Eigen::VectorXd coefficients;
    Eigen::VectorXd residual;
    Eigen::MatrixXd projector_complement;
};

/// Householder-QR least squares.  M must have full column rank (the fan
/// recursion guarantees it); violations throw logic_error.  k = 0 is the
/// empty model: a is empty, ρ = b, and the projector complement is I.
inline LeastSquaresResult least_squares(const Eigen::MatrixXd& M, const Eigen::VectorXd& b) {
    const Eigen::Index n = b.size(), k = M.cols();
    if (M.rows() != n) throw std::invalid_argument("least_squares: row mismatch");
    LeastSquaresResult out;
    if (k == 0) {
        out.coefficients.resize(0);
        out.residual = b;
        out.projector_complement = Eigen::MatrixXd::Identity(n, n);
        return out;
    }
    if (k > n) throw std::logic_error("least_squares: more columns than rows");
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(M);
    const Eigen::MatrixXd R = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    double rmax = 0;
    for (Eigen::Index i = 0; i < k; ++i) rmax = std::max(rmax, std::abs(R(i, i)));
    for (Eigen::Index i = 0; i < k; ++i)
        if (std::abs(R(i, i)) <= static_cast<double>(n) * std::numeric_limits<double>::epsilon() * rmax)
            throw std::logic_error("least_squares: rank-deficient matrix (caller contract violation)");
    out.coefficients = qr.solve(b);
    out.residual = b - M * out.coefficients;
    const Eigen::MatrixXd Q1 = qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
    out.projector_complement = Eigen::MatrixXd::Identity(n, n) - Q1 * Q1.transpose();
    return out;
}

/// 2-norm condition number σ_max / σ_min.  Numerically rank-deficient input
/// (σ_min < n·ε·σ_max) reports +inf.
inline double condition_number(const Eigen::MatrixXd& M) {
    if (M.rows() == 0 || M.cols() == 0) throw std::invalid_argument("condition_number: empty matrix");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    const auto& sv = svd.singularValues();
    const double smax = sv(0), smin = sv(sv.size() - 1);
    if (smax == 0) throw std::invalid_argument("condition_number: zero matrix");
    const double tiny =
        static_cast<double>(std::max(M.rows(), M.cols())) * std::numeric_limits<double>::epsilon() * smax;
    if (smin < tiny) return std::numeric_limits<double>::infinity();
    return smax / smin;
}

struct RankCertificate {
    int rank = 0;
    bool independent = false;
};

/// Incremental exact rank over Q: columns arrive one at a time and are
/// Gauss-reduced against the pivot rows accepted so far.  A column is
/// independent iff something nonzero survives the reduction; independent
/// columns contribute a new (pivot-normalized) row to the state.
class ExactRankState {
public:
    ExactRankState() = default;
    explicit ExactRankState(int n) : n_(n) {}

    int n() const { return n_; }
    int rank() const { return static_cast<int>(pivots_.size()); }

    /// Reduces v against the accepted pivots; the result is zero iff v lies in
    /// their span.
    std::vector<mpq_class> reduce(std::vector<mpq_class> v) const {
        if (static_cast<int>(v.size()) != n_) throw std::invalid_argument("ExactRankState: bad length");
        for (std::size_t r = 0; r < pivots_.size(); ++r) {
            const mpq_class& c = v[static_cast<std::size_t>(pivot_cols_[r])];
            if (c != 0) {
                const mpq_class f = c;  // pivot entry is normalized to 1
                for (int i = 0; i < n_; ++i)
                    if (pivots_[r][static_cast<std::size_t>(i)] != 0)
                        v[static_cast<std::size_t>(i)] -= f * pivots_[r][static_cast<std::size_t>(i)];
            }
        }
        return v;
    }

    bool is_independent(const std::vector<mpq_class>& v) const {
        auto red = reduce(v);
        for (const auto& x : red)
            if (x != 0) return true;
        return false;
    }

    /// Accepts v if independent; returns the updated rank and the verdict.
    RankCertificate extend(const std::vector<mpq_class>& v) {
        auto red = reduce(v);
        int col = -1;
        for (int i = 0; i < n_; ++i)
            if (red[static_cast<std::size_t>(i)] != 0) {
                col = i;
                break;
            }
        if (col < 0) return {rank(), false};
        const mpq_class inv = 1 / red[static_cast<std::size_t>(col)];
        for (auto& x : red) x *= inv;
        pivots_.push_back(std::move(red));
        pivot_cols_.push_back(col);
        return {rank(), true};
    }

private:
    int n_ = 0;
    std::vector<std::vector<mpq_class>> pivots_;
    std::vector<int> pivot_cols_;
};

inline RankCertificate exact_rank_extend(ExactRankState& state, const std::vector<mpq_class>& v) {
    return state.extend(v);
}

/// Exact solve of a consistent system M a = b (columns of M independent,
/// b in their span); used for the δ=0 almost-vanishing polynomials.
inline std::vector<mpq_class> exact_solve_consistent(const std::vector<std::vector<mpq_class>>& columns,
                                                     const std::vector<mpq_class>& b) {
    const std::size_t k = columns.size();
    const std::size_t n = b.size();
    // Gauss-Jordan on the augmented [columns | b], tracked column-wise.
    std::vector<std::vector<mpq_class>> cols = columns;
    std::vector<mpq_class> rhs = b;
    std::vector<int> pivot_row(k, -1);
    std::vector<bool> row_used(n, false);
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t p = n;
        for (std::size_t r = 0; r < n; ++r)
            if (!row_used[r] && cols[c][r] != 0) {
                p = r;
                break;
            }
        if (p == n) throw std::logic_error("exact_solve_consistent: dependent columns");
        row_used[p] = true;
        pivot_row[c] = static_cast<int>(p);
        const mpq_class inv = 1 / cols[c][p];
        for (std::size_t cc = c; cc < k; ++cc) cols[cc][p] *= inv;
        rhs[p] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == p || cols[c][r] == 0) continue;
            const mpq_class f = cols[c][r];
            for (std::size_t cc = c; cc < k; ++cc) cols[cc][r] -= f * cols[cc][p];
            rhs[r] -= f * rhs[p];
        }
    }
    for (std::size_t r = 0; r < n; ++r)
        if (!row_used[r] && rhs[r] != 0)
            throw std::logic_error("exact_solve_consistent: inconsistent system");
    std::vector<mpq_class> a(k);
    for (std::size_t c = 0; c < k; ++c) a[c] = rhs[static_cast<std::size_t>(pivot_row[c])];
    return a;
}

}  // namespace numfan
