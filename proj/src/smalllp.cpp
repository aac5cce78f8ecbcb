#include "calgeo/smalllp.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace calgeo {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kFeasTol = 1e-8;

// Runs simplex iterations on a canonical tableau. `allowed` masks columns
// permitted to enter the basis. Bland's rule throughout.
LpResult::Status iterate(Eigen::MatrixXd& T, std::vector<int>& basis,
                         const Eigen::VectorXd& cost, const std::vector<bool>& allowed,
                         int max_iter) {
    const int m = static_cast<int>(T.rows());
    const int n = static_cast<int>(T.cols()) - 1;
    for (int iter = 0; iter < max_iter; ++iter) {
        Eigen::VectorXd cb(m);
        for (int r = 0; r < m; ++r) cb(r) = cost(basis[static_cast<size_t>(r)]);

        int entering = -1;
        for (int j = 0; j < n; ++j) {
            if (!allowed[static_cast<size_t>(j)]) continue;
            double reduced = cost(j) - cb.dot(T.col(j));
            if (reduced < -kPivotTol) {
                entering = j;
                break;  // Bland: smallest index
            }
        }
        if (entering < 0) return LpResult::Status::optimal;

        int leaving = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int r = 0; r < m; ++r) {
            double a = T(r, entering);
            if (a > kPivotTol) {
                double ratio = T(r, n) / a;
                if (ratio < best_ratio - kPivotTol ||
                    (ratio < best_ratio + kPivotTol &&
                     (leaving < 0 || basis[static_cast<size_t>(r)] <
                                         basis[static_cast<size_t>(leaving)]))) {
                    best_ratio = ratio;
                    leaving = r;
                }
            }
        }
        if (leaving < 0) return LpResult::Status::unbounded;

        double pivot = T(leaving, entering);
        T.row(leaving) /= pivot;
        for (int r = 0; r < m; ++r) {
            if (r == leaving) continue;
            double f = T(r, entering);
            if (f != 0.0) T.row(r) -= f * T.row(leaving);
        }
        basis[static_cast<size_t>(leaving)] = entering;
    }
    return LpResult::Status::iteration_limit;
}

}  // namespace

LpResult solve_lp_eq(const Eigen::MatrixXd& A_in, const Eigen::VectorXd& b_in,
                     const Eigen::VectorXd& c, int max_iter) {
    const int m = static_cast<int>(A_in.rows());
    const int n = static_cast<int>(A_in.cols());
    Eigen::MatrixXd A = A_in;
    Eigen::VectorXd b = b_in;
    for (int r = 0; r < m; ++r)
        if (b(r) < 0) {
            A.row(r) *= -1.0;
            b(r) *= -1.0;
        }

    // Tableau with artificial columns n..n+m-1; last column is the rhs.
    Eigen::MatrixXd T(m, n + m + 1);
    T.leftCols(n) = A;
    T.middleCols(n, m) = Eigen::MatrixXd::Identity(m, m);
    T.col(n + m) = b;
    std::vector<int> basis(static_cast<size_t>(m));
    for (int r = 0; r < m; ++r) basis[static_cast<size_t>(r)] = n + r;

    Eigen::VectorXd phase1_cost = Eigen::VectorXd::Zero(n + m);
    phase1_cost.tail(m).setOnes();
    std::vector<bool> all_cols(static_cast<size_t>(n + m), true);

    LpResult out;
    auto status = iterate(T, basis, phase1_cost, all_cols, max_iter);
    if (status == LpResult::Status::iteration_limit) {
        out.status = status;
        return out;
    }
    double phase1_obj = 0;
    for (int r = 0; r < m; ++r)
        if (basis[static_cast<size_t>(r)] >= n) phase1_obj += T(r, n + m);
    if (phase1_obj > kFeasTol) {
        out.status = LpResult::Status::infeasible;
        return out;
    }

    // Pivot residual artificials out of the basis where possible.
    for (int r = 0; r < m; ++r) {
        if (basis[static_cast<size_t>(r)] < n) continue;
        int entering = -1;
        for (int j = 0; j < n; ++j)
            if (std::abs(T(r, j)) > 1e-9) {
                entering = j;
                break;
            }
        if (entering < 0) continue;  // redundant row; harmless at rhs 0
        double pivot = T(r, entering);
        T.row(r) /= pivot;
        for (int rr = 0; rr < m; ++rr) {
            if (rr == r) continue;
            double f = T(rr, entering);
            if (f != 0.0) T.row(rr) -= f * T.row(r);
        }
        basis[static_cast<size_t>(r)] = entering;
    }

    Eigen::VectorXd phase2_cost = Eigen::VectorXd::Zero(n + m);
    phase2_cost.head(n) = c;
    std::vector<bool> real_cols(static_cast<size_t>(n + m), false);
    for (int j = 0; j < n; ++j) real_cols[static_cast<size_t>(j)] = true;

    status = iterate(T, basis, phase2_cost, real_cols, max_iter);
    out.status = status;
    if (status != LpResult::Status::optimal) return out;

    out.x = Eigen::VectorXd::Zero(n);
    for (int r = 0; r < m; ++r)
        if (basis[static_cast<size_t>(r)] < n)
            out.x(basis[static_cast<size_t>(r)]) = T(r, n + m);
    out.objective = c.dot(out.x);
    return out;
}

}  // namespace calgeo
