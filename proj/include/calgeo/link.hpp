#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "calgeo/exterior.hpp"

namespace calgeo {

// One quadrature sample of a discretized link: a point of the unit sphere, an
// oriented orthonormal tangent frame, a positive weight and an integer
// multiplicity.
struct LinkSample {
    Eigen::VectorXd point;
    Eigen::MatrixXd frame;  // ambient_dim x dim, columns ordered by orientation
    double weight = 0.0;
    int multiplicity = 1;
};

struct Stratum {
    std::vector<LinkSample> samples;
};

// Finitely-stratified discrete model of a closed k-dimensional submanifold or
// integral varifold of the unit sphere of R^{ambient_dim}. Immutable after
// construction.
class SampledLink {
public:
    SampledLink(int ambient_dim, int dim, std::vector<Stratum> strata);

    int ambient_dim() const { return ambient_dim_; }
    int dim() const { return dim_; }
    const std::vector<Stratum>& strata() const { return strata_; }
    double total_volume() const { return total_volume_; }
    std::size_t sample_count() const;

    // point norm within point_tol of 1; frames orthonormal and orthogonal to
    // the base point within frame_tol; weights positive, multiplicities >= 1
    void validate(double point_tol = 1e-10, double frame_tol = 1e-8) const;

private:
    int ambient_dim_;
    int dim_;
    std::vector<Stratum> strata_;
    double total_volume_;
};

// Declarative description of a gallery link; mirrors the JSON fixture format.
struct LinkSpec {
    std::string family;  // circle | sphere | product_torus | latitude | great_sphere | union | explicit
    int resolution = 32;
    int sphere_dim = 2;            // sphere
    double z0 = 0.5;               // latitude
    std::vector<int> span;         // great_sphere: ordered ambient coordinate indices
    int ambient_dim = 0;           // great_sphere / explicit
    int multiplicity = 1;
    std::vector<LinkSpec> members;  // union
    std::vector<Stratum> explicit_strata;
    int explicit_dim = 0;
};

SampledLink build_link(const LinkSpec& spec);
SampledLink build_link(const std::string& family, int resolution);

// Scaled product (lambda_1 L_1, ..., lambda_n L_n) with lambda_i = sqrt(k_i/k);
// lives in the unit sphere of the concatenated ambient space.
struct MinimalProductSpec {
    std::vector<double> lambdas;
    std::vector<int> factor_dims;
    std::vector<int> factor_ambient_dims;  // block layout of the product space
};

MinimalProductSpec minimal_product_spec(const std::vector<SampledLink>& factors);
SampledLink minimal_product(const std::vector<SampledLink>& factors);

// Tangent plane of the cone C(L) at the radius-1 cross section: the radial
// direction followed by the link frame.
struct ConeSample {
    Eigen::VectorXd point;
    Eigen::MatrixXd frame;  // ambient_dim x (dim+1), radial direction first
    double weight = 0.0;
    int multiplicity = 1;
};

std::vector<ConeSample> cone_tangent_samples(const SampledLink& link);

// sum over samples of multiplicity * weight * phi(frame wedge); degree-0 forms
// integrate as weighted constants.
double integrate_form(const SampledLink& link, const AlternatingForm& phi);

}  // namespace calgeo
