#include "calgeo/decomposition.hpp"

#include <cmath>
#include <stdexcept>

namespace calgeo {

DecompositionReport decompose_at(const AlternatingForm& phi, const Eigen::MatrixXd& basis,
                                 double ortho_tol) {
    const int n = phi.ambient_dim();
    const int m = phi.degree();
    if (basis.rows() != n || basis.cols() != n)
        throw std::invalid_argument("decompose_at: basis must be a full square frame");
    Eigen::MatrixXd gram = basis.transpose() * basis - Eigen::MatrixXd::Identity(n, n);
    if (gram.cwiseAbs().maxCoeff() > ortho_tol)
        throw std::invalid_argument("decompose_at: basis not orthonormal within tolerance");

    DecompositionReport rep;
    AlternatingForm reconstruction(n, m);
    Eigen::MatrixXd cols(n, m);

    std::vector<int> lead(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) lead[static_cast<size_t>(i)] = i + 1;
    const MultiIndex leading(lead);

    for_each_combination(n, m, [&](const std::vector<int>& J) {
        for (int c = 0; c < m; ++c) cols.col(c) = basis.col(J[static_cast<size_t>(c)] - 1);
        double b = evaluate_on_frame(phi, cols);
        MultiIndex Jidx(J);

        const int second_largest = m >= 2 ? Jidx.at(m - 2) : 0;
        if (Jidx == leading) {
            rep.leading_coefficient = b;
        } else if (second_largest <= m) {
            // at most one index beyond the calibrated block
            rep.forbidden_max = std::max(rep.forbidden_max, std::abs(b));
        } else if (std::abs(b) > kPruneTol) {
            rep.allowed_terms.emplace_back(Jidx, b);
        }

        if (std::abs(b) > kPruneTol) {
            // v_J* accumulated for the reconstruction check
            AlternatingForm term(n, 0);
            term.set(MultiIndex(), b);
            AlternatingForm acc = term;
            for (int c = 0; c < m; ++c) {
                AlternatingForm cov(n, 1);
                for (int r = 0; r < n; ++r)
                    if (std::abs(cols(r, c)) >= kPruneTol)
                        cov.set(MultiIndex({r + 1}), cols(r, c));
                acc = wedge(acc, cov);
            }
            reconstruction += acc;
        }
    });

    AlternatingForm diff = reconstruction - phi;
    rep.reconstruction_residual = diff.max_abs_coeff();
    return rep;
}

}  // namespace calgeo
