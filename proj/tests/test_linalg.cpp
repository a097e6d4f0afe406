#include <doctest.h>

#include <Eigen/Dense>

#include <random>

#include "numfan/design.hpp"
#include "numfan/linalg.hpp"
#include "test_support.hpp"

using numfan::condition_number;
using numfan::Design;
using numfan::ExactRankState;
using numfan::least_squares;
using numfan::Term;

namespace {
Term T(std::vector<int> e) { return Term(std::move(e)); }

mpq_class Q(int num, int den = 1) {
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

Eigen::MatrixXd random_full_rank(std::mt19937& rng, int n, int k) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (;;) {
        Eigen::MatrixXd M(n, k);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < k; ++j) M(i, j) = u(rng);
        if (k == 0 || condition_number(M) < 1e6) return M;
    }
}
}  // namespace

TEST_CASE("least squares with an empty model") {
    Eigen::VectorXd b(4);
    b << 1, 1, 1, 1;
    auto r = least_squares(Eigen::MatrixXd(4, 0), b);
    CHECK(r.coefficients.size() == 0);
    CHECK(r.residual == b);
    CHECK(r.projector_complement == Eigen::MatrixXd::Identity(4, 4));
}

TEST_CASE("least squares against the 4-point mean") {
    Eigen::VectorXd b(4);
    b << 1, 1.002001, 1, 1;
    auto r = least_squares(Eigen::MatrixXd::Ones(4, 1), b);
    // closed form: the mean 4.002001/4
    CHECK(r.coefficients(0) == doctest::Approx(1.00050025).epsilon(1e-12));
    CHECK((r.residual - (b - Eigen::VectorXd::Constant(4, r.coefficients(0)))).norm() < 1e-14);
}

TEST_CASE("exact fit leaves no residual") {
    std::mt19937 rng(21);
    auto M = random_full_rank(rng, 6, 3);
    Eigen::VectorXd x(3);
    x << 0.3, -1.7, 2.2;
    auto r = least_squares(M, M * x);
    CHECK(r.residual.norm() <= 1e-12);
}

TEST_CASE("least squares invariants on random instances") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 8);
        const int k = static_cast<int>(rng() % static_cast<unsigned>(n + 1));
        auto M = random_full_rank(rng, n, k);
        Eigen::VectorXd b(n);
        for (int i = 0; i < n; ++i) b(i) = u(rng);
        auto r = least_squares(M, b);
        const auto& P = r.projector_complement;
        CHECK((r.residual - P * b).norm() <= 1e-10 * (1 + b.norm()));
        CHECK((P - P.transpose()).norm() <= 1e-10);
        CHECK((P * P - P).norm() <= 1e-10);
        if (k > 0) {
            CHECK((M.transpose() * r.residual).norm() <= 1e-8 * (1 + M.norm() * b.norm()));
            CHECK((M * r.coefficients + r.residual - b).norm() <= 1e-10 * (1 + b.norm()));
        }
    }
}

TEST_CASE("least squares flags rank deficiency as a caller bug") {
    Eigen::MatrixXd M(3, 2);
    M << 1, 2, 2, 4, 3, 6;
    Eigen::VectorXd b(3);
    b << 1, 0, 0;
    CHECK_THROWS_AS((void)least_squares(M, b), std::logic_error);
}

TEST_CASE("condition number basics") {
    CHECK(condition_number(Eigen::MatrixXd::Identity(5, 5)) == doctest::Approx(1.0));
    Eigen::MatrixXd singular(2, 2);
    singular << 1, 1, 1, 1;
    CHECK(std::isinf(condition_number(singular)));
    CHECK_THROWS_AS((void)condition_number(Eigen::MatrixXd(0, 0)), std::invalid_argument);
    CHECK_THROWS_AS((void)condition_number(Eigen::MatrixXd::Zero(2, 2)), std::invalid_argument);
}

TEST_CASE("condition numbers of the ill-conditioned pair from the motivating design") {
    auto D = Design::parse_rows({{"1", "1"}, {"1", "-1.001"}, {"-1", "1"}, {"-1", "-1"}});
    auto M1 = numfan::design_matrix({T({0, 0}), T({1, 0}), T({0, 1}), T({1, 1})}, D);
    auto M2 = numfan::design_matrix({T({0, 0}), T({1, 0}), T({0, 1}), T({0, 2})}, D);
    CHECK(condition_number(M1.entries) == doctest::Approx(1.0007).epsilon(0.005));
    CHECK(condition_number(M2.entries) == doctest::Approx(4001).epsilon(0.005));
}

TEST_CASE("condition number invariances") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 5);
        const int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
        auto M = random_full_rank(rng, n, k);
        const double c = condition_number(M);
        // column permutation
        Eigen::MatrixXd Mp = M;
        for (int j = 0; j < k; ++j) Mp.col(j) = M.col((j + 1) % k);
        CHECK(condition_number(Mp) == doctest::Approx(c).epsilon(1e-9));
        // positive scaling of the whole matrix
        CHECK(condition_number(3.5 * M) == doctest::Approx(c).epsilon(1e-9));
    }
}

TEST_CASE("exact rank: trivial verdicts") {
    ExactRankState st(3);
    CHECK_FALSE(st.extend({mpq_class(0), mpq_class(0), mpq_class(0)}).independent);
    CHECK(st.extend({mpq_class(1), mpq_class(2), mpq_class(3)}).independent);
    CHECK_FALSE(st.extend({mpq_class(1), mpq_class(2), mpq_class(3)}).independent);
    CHECK_FALSE(st.extend({mpq_class(2), mpq_class(4), mpq_class(6)}).independent);
    CHECK(st.rank() == 1);
}

TEST_CASE("exact rank agrees with the determinant-minor oracle on random 6x6") {
    std::mt19937 rng(51);
    std::uniform_int_distribution<int> val(-3, 3);
    std::uniform_int_distribution<int> den(1, 3);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<std::vector<mpq_class>> a(6, std::vector<mpq_class>(6));
        for (auto& row : a)
            for (auto& x : row) x = Q(val(rng), den(rng));
        // low-rank half the time: overwrite a column with a combination
        if (trial % 2) {
            for (int i = 0; i < 6; ++i) a[static_cast<std::size_t>(i)][5] =
                a[static_cast<std::size_t>(i)][0] * 2 - a[static_cast<std::size_t>(i)][3];
        }
        ExactRankState st(6);
        for (int c = 0; c < 6; ++c) {
            std::vector<mpq_class> col(6);
            for (int i = 0; i < 6; ++i) col[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
            numfan::exact_rank_extend(st, col);
        }
        CHECK(st.rank() == oracle::rank_by_minors(a, 6, 6));
    }
}

TEST_CASE("exact rank is independent of column order") {
    std::mt19937 rng(61);
    std::uniform_int_distribution<int> val(-4, 4);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<mpq_class>> cols(5, std::vector<mpq_class>(4));
        for (auto& c : cols)
            for (auto& x : c) x = Q(val(rng));
        std::vector<int> order = {0, 1, 2, 3, 4};
        int base_rank = -1;
        for (int perm = 0; perm < 6; ++perm) {
            std::shuffle(order.begin(), order.end(), rng);
            ExactRankState st(4);
            for (int i : order) st.extend(cols[static_cast<std::size_t>(i)]);
            if (base_rank < 0) base_rank = st.rank();
            CHECK(st.rank() == base_rank);
        }
    }
}

TEST_CASE("exact consistent solve") {
    std::mt19937 rng(71);
    std::uniform_int_distribution<int> val(-3, 3);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 4, k = 2 + static_cast<int>(rng() % 2);
        std::vector<std::vector<mpq_class>> cols;
        ExactRankState st(n);
        while (static_cast<int>(cols.size()) < k) {
            std::vector<mpq_class> c(static_cast<std::size_t>(n));
            for (auto& x : c) x = Q(val(rng), 1 + static_cast<int>(rng() % 2));
            if (ExactRankState probe = st; probe.extend(c).independent) {
                st = probe;
                cols.push_back(std::move(c));
            }
        }
        std::vector<mpq_class> want(static_cast<std::size_t>(k));
        for (auto& x : want) x = Q(val(rng), 2);
        std::vector<mpq_class> b(static_cast<std::size_t>(n), mpq_class(0));
        for (int c = 0; c < k; ++c)
            for (int i = 0; i < n; ++i)
                b[static_cast<std::size_t>(i)] += want[static_cast<std::size_t>(c)] * cols[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
        auto got = numfan::exact_solve_consistent(cols, b);
        CHECK(got == want);
    }
}
