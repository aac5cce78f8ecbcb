#pragma once

#include <Eigen/Dense>

namespace calgeo {

// Dense two-phase primal simplex for the small equality-form programs used by
// facet membership and mass decomposition:  min c^T x  s.t.  A x = b, x >= 0.
struct LpResult {
    enum class Status { optimal, infeasible, unbounded, iteration_limit };
    Status status = Status::iteration_limit;
    Eigen::VectorXd x;
    double objective = 0.0;
};

LpResult solve_lp_eq(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                     const Eigen::VectorXd& c, int max_iter = 20000);

}  // namespace calgeo
