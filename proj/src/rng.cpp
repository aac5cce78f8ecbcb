#include "calgeo/rng.hpp"

#include <algorithm>
#include <vector>

namespace calgeo::rng {

Eigen::VectorXd gaussian_vector(Engine& eng, int n) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = g(eng);
    return v;
}

Eigen::MatrixXd gaussian_matrix(Engine& eng, int rows, int cols) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXd m(rows, cols);
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r) m(r, c) = g(eng);
    return m;
}

Eigen::MatrixXd orthonormalized(const Eigen::MatrixXd& frame) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(frame);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(frame.rows(), frame.cols());
    Eigen::MatrixXd r = qr.matrixQR().topRows(frame.cols()).triangularView<Eigen::Upper>();
    for (int c = 0; c < frame.cols(); ++c)
        if (r(c, c) < 0) q.col(c) *= -1.0;
    return q;
}

Eigen::MatrixXd random_orthonormal_frame(Engine& eng, int n, int m) {
    return orthonormalized(gaussian_matrix(eng, n, m));
}

AlternatingForm random_sparse_form(Engine& eng, int ambient_dim, int degree, int terms) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<std::vector<int>> basis;
    for_each_combination(ambient_dim, degree,
                         [&](const std::vector<int>& I) { basis.push_back(I); });
    std::shuffle(basis.begin(), basis.end(), eng);
    AlternatingForm phi(ambient_dim, degree);
    const int t = std::min<int>(terms, static_cast<int>(basis.size()));
    for (int i = 0; i < t; ++i) phi.set(MultiIndex(basis[static_cast<size_t>(i)]), g(eng));
    if (phi.is_zero()) phi.set(MultiIndex(basis[0]), 1.0);
    return phi;
}

}  // namespace calgeo::rng
