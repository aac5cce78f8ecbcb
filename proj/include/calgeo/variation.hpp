#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "calgeo/link.hpp"

namespace calgeo {

// Ambient vector field used for first-variation tests. For stationarity the
// field is projected onto the sphere's tangent space at the evaluated point,
// so only deformations within the sphere are tested.
struct VectorFieldSpec {
    enum class Kind { constant, linear, quadratic, rotation };
    Kind kind = Kind::constant;
    Eigen::VectorXd constant;             // constant
    Eigen::MatrixXd matrix;               // linear / rotation (skew)
    std::vector<Eigen::MatrixXd> quads;   // quadratic: X_i(y) = y^T quads[i] y

    Eigen::VectorXd evaluate(const Eigen::VectorXd& y) const;
    // y projected to the tangent space of the sphere through y/|y|
    Eigen::VectorXd evaluate_tangent(const Eigen::VectorXd& y) const;

    static VectorFieldSpec random(Kind kind, int ambient_dim, std::uint64_t seed);
};

// Discrete first variation sum theta * w * div_M X with the divergence taken
// along the sample frame by central finite differences (step h) of the
// sphere-projected field.
double first_variation(const SampledLink& link, const VectorFieldSpec& field,
                       double fd_step = 1e-5);

struct StationarityReport {
    double max_abs = 0.0;
    double mean_abs = 0.0;
    std::vector<double> per_field;  // first variation normalized by int |X| dmu
    int n_fields = 0;
    std::uint64_t seed = 0;
};

// Seeded battery of constant / linear / quadratic / rotation fields, each
// normalized by the integral of the projected field magnitude.
StationarityReport stationarity_report(const SampledLink& link, int n_fields,
                                       std::uint64_t seed);

// -lambda2/lambda1 * m1 + lambda1/lambda2 * m2, the coefficient of the mixed
// radial field in the product first variation; vanishes identically.
double eta_term_coefficient(int m1, int m2);

}  // namespace calgeo
