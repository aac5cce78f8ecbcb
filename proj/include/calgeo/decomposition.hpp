#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "calgeo/exterior.hpp"

namespace calgeo {

// Expansion of a degree-m form in the dual basis of an orthonormal frame
// v_1..v_N with xi = v_1 ^ ... ^ v_m. When phi is a comass-one form
// calibrating xi, every coefficient whose multi-index has second-largest
// entry <= m must vanish; forbidden_max measures the violation.
struct DecompositionReport {
    double leading_coefficient = 0.0;
    double forbidden_max = 0.0;
    std::vector<std::pair<MultiIndex, double>> allowed_terms;
    double reconstruction_residual = 0.0;
};

DecompositionReport decompose_at(const AlternatingForm& phi, const Eigen::MatrixXd& basis,
                                 double ortho_tol = 1e-8);

}  // namespace calgeo
