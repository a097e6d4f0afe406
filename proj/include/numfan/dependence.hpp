#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "numfan/design.hpp"
#include "numfan/linalg.hpp"
#include "numfan/term.hpp"

namespace numfan {

/// Outcome of a numerical-independence test of a candidate design vector
/// against a model's design matrix.
struct DependenceVerdict {
    bool independent = false;
    double residual_norm = 0.0;
    Eigen::VectorXd bound_vector;
    std::optional<int> witness_index;  // set iff independent
};

/// Right-hand sides of the heuristic condition: for each row i,
///   bound_i = Σ_j |I − M M⁺|_ij · Σ_k δ_k |∂_k t(p_j) − Σ_l ∂_k t_l(p_j) a_l|.
/// `lsq` must be the least-squares result for X_O(D) against t(D).
inline Eigen::VectorXd fassino_bounds(const std::vector<Term>& oi_terms, const Design& D,
                                      const std::vector<double>& delta, const Term& t,
                                      const LeastSquaresResult& lsq) {
    if (static_cast<int>(delta.size()) != D.d())
        throw std::invalid_argument("fassino_bounds: tolerance length != d");
    if (t.dim() != D.d()) throw std::invalid_argument("fassino_bounds: term dimension mismatch");
    if (lsq.coefficients.size() != static_cast<Eigen::Index>(oi_terms.size()))
        throw std::invalid_argument("fassino_bounds: lsq does not match the model");
    const int n = D.n();
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < D.d(); ++k) {
        const double dk = delta[static_cast<std::size_t>(k)];
        if (dk == 0) continue;
        Eigen::VectorXd dt(n);
        for (int j = 0; j < n; ++j) {
            const int a = t[k];
            dt(j) = a == 0 ? 0.0 : static_cast<double>(a) * eval_term(t.div_var(k), D.point(j));
        }
        if (!oi_terms.empty()) dt -= derivative_matrix(oi_terms, D, k) * lsq.coefficients;
        c += dk * dt.cwiseAbs();
    }
    return lsq.projector_complement.cwiseAbs() * c;
}

namespace detail {

/// Rounding-error bound for each entry of ρ = b − M a: a row can only witness
/// independence if its residual exceeds the noise floor of its own
/// computation, n·ε·(|b| + |M||a|)_i.  In real arithmetic the floor is zero
/// and the verdict is the strict row comparison alone.
inline Eigen::VectorXd residual_noise_floor(const Eigen::MatrixXd& M, const Eigen::VectorXd& a,
                                            const Eigen::VectorXd& b) {
    Eigen::VectorXd f = b.cwiseAbs();
    if (M.cols() > 0) f += M.cwiseAbs() * a.cwiseAbs();
    return static_cast<double>(b.size()) * std::numeric_limits<double>::epsilon() * f;
}

/// The two verdict floors together: ‖ρ‖ at roundoff scale means the candidate
/// fits exactly (errors in the solve itself can land in rows whose own floor
/// is zero), and a single row is only trustworthy above its evaluation noise.
inline DependenceVerdict fassino_verdict(const Eigen::VectorXd& rho, const Eigen::VectorXd& bounds,
                                         const Eigen::VectorXd& noise_floor, double b_norm) {
    DependenceVerdict v;
    v.residual_norm = rho.norm();
    v.bound_vector = bounds;
    if (v.residual_norm <=
        static_cast<double>(rho.size()) * std::numeric_limits<double>::epsilon() * b_norm)
        return v;
    for (int i = 0; i < rho.size(); ++i)
        if (std::abs(rho(i)) > bounds(i) &&  // strict: ties declare dependence
            std::abs(rho(i)) > noise_floor(i)) {
            v.independent = true;
            v.witness_index = i;
            break;
        }
    return v;
}

}  // namespace detail

/// Heuristic Fassino test: t(D) is declared numerically independent of the
/// model iff |ρ_i| strictly exceeds bound_i for at least one design point.
/// For δ = 0 this degenerates to ρ ≠ 0; on exact (rational) inputs that case
/// is decided by exact rank arithmetic instead of floating point.
inline DependenceVerdict is_num_independent(const std::vector<Term>& oi_terms, const Design& D,
                                            const std::vector<double>& delta, const Term& t) {
    bool zero_delta = true;
    for (double x : delta)
        if (x != 0) zero_delta = false;

    if (zero_delta && D.all_exact()) {
        ExactRankState state(D.n());
        for (const Term& s : oi_terms)
            if (!state.extend(design_vector_exact(s, D)).independent)
                throw std::logic_error("is_num_independent: model matrix is rank-deficient");
        const bool indep = state.is_independent(design_vector_exact(t, D));
        // exact verdict; floating residual only fills the diagnostics
        const DesignMatrix M = design_matrix(oi_terms, D);
        const auto lsq = least_squares(M.entries, design_vector(t, D));
        DependenceVerdict v;
        v.residual_norm = lsq.residual.norm();
        v.bound_vector = Eigen::VectorXd::Zero(D.n());
        v.independent = indep;
        if (indep) {
            Eigen::Index best = 0;
            lsq.residual.cwiseAbs().maxCoeff(&best);
            v.witness_index = static_cast<int>(best);
        }
        return v;
    }

    const DesignMatrix M = design_matrix(oi_terms, D);
    const Eigen::VectorXd b = design_vector(t, D);
    const auto lsq = least_squares(M.entries, b);
    if (static_cast<int>(oi_terms.size()) == D.n()) {
        // a full-rank basis leaves a residual of exactly zero in real
        // arithmetic; do not let roundoff beat a zero bound
        DependenceVerdict v;
        v.residual_norm = lsq.residual.norm();
        v.bound_vector = fassino_bounds(oi_terms, D, delta, t, lsq);
        return v;
    }
    const Eigen::VectorXd noise =
        detail::residual_noise_floor(M.entries, lsq.coefficients, b);
    if (zero_delta) {
        // floating fallback for δ = 0 on non-exact inputs: ρ != 0 up to roundoff
        return detail::fassino_verdict(lsq.residual, Eigen::VectorXd::Zero(D.n()), noise, b.norm());
    }
    return detail::fassino_verdict(lsq.residual, fassino_bounds(oi_terms, D, delta, t, lsq), noise,
                                   b.norm());
}

}  // namespace numfan
