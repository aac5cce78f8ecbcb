#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "calgeo/comass.hpp"
#include "calgeo/exterior.hpp"
#include "calgeo/link.hpp"

namespace calgeo {

// Base point and oriented tangent plane of one fixed factor, given in that
// factor's own coordinates. The first fixed factor also contributes its base
// point to the contraction, turning Phi_o into Psi.
struct FixedFactor {
    int factor = 0;  // 1-based index into the block layout
    Eigen::VectorXd point;
    SimpleVector tangent;
    bool include_point = false;
};

// Pushes the fixed points/tangents into their ambient blocks, wedges them in
// the declared order and contracts the result against phi_o.
AlternatingForm contraction_form(const AlternatingForm& phi_o,
                                 const std::vector<FixedFactor>& fixed,
                                 const std::vector<int>& blocks);

enum class ObstructionVerdict {
    obstructed,
    candidate_not_a_calibration,
    inconclusive,
    not_applicable
};

std::string to_string(ObstructionVerdict v);

struct ObstructionReport {
    double calibration_residual = 0.0;  // max over cone samples of |1 - phi(plane)|, best sign
    int calibration_sign = +1;
    double candidate_comass = 0.0;
    double psi_constancy = 0.0;  // spread of Psi_bar(xi(x)) over the varying factor
    double psi_mean = 0.0;       // measure-weighted mean of Psi_bar(xi(x))
    double predicted_magnitude = 0.0;  // lambda_(point factor) * vol(L_varying)
    double pullback_integral = 0.0;
    double stokes_value = 0.0;  // Psi_bar on the integrated tangent multivector
    ObstructionVerdict verdict = ObstructionVerdict::inconclusive;
};

struct BaseChoice {
    int factor = 0;  // 1-based
    int stratum = 0;
    int index = -1;  // -1 picks a default interior sample
};

// Precomputed product data shared by every candidate form of a family run.
class ObstructionContext {
public:
    ObstructionContext(std::vector<SampledLink> factors, int varying_factor,
                       const std::vector<BaseChoice>& base_choices);

    ObstructionReport run(const AlternatingForm& phi_o, double cal_tol,
                          double comass_tol = 1e-6, int comass_restarts = 12) const;

    const std::vector<ConeSample>& cone_samples() const { return cone_; }
    int ambient_dim() const { return ambient_dim_; }
    int cone_degree() const { return cone_degree_; }
    const MinimalProductSpec& spec() const { return spec_; }
    const Eigen::MatrixXd& plane_matrix() const { return planes_; }

private:
    std::vector<SampledLink> factors_;
    int varying_;
    MinimalProductSpec spec_;
    std::vector<ConeSample> cone_;
    Eigen::MatrixXd planes_;  // dense Pluecker rows of the cone tangent planes
    std::vector<FixedFactor> fixed_;
    int ambient_dim_ = 0;
    int cone_degree_ = 0;
    double predicted_ = 0.0;
};

// Full pipeline for a single candidate: residual over the product cone, the
// contraction form Psi, its pullback to the varying factor, the constancy
// check and the integral against the Stokes control.
ObstructionReport obstruction_witness(const std::vector<SampledLink>& factors,
                                      const AlternatingForm& phi_o, int varying_factor,
                                      const std::vector<BaseChoice>& base_choices,
                                      double cal_tol);

// Best-effort calibration candidate: projected subgradient ascent on the
// smallest plane value with comass re-normalization after every step.
AlternatingForm fit_calibration_candidate(const ObstructionContext& ctx,
                                          std::uint64_t seed, int iters = 60);

struct CandidateRecord {
    std::string source;  // "fitted" or "random"
    double calibration_residual = 0.0;
    double comass = 0.0;
    double pullback_integral = 0.0;
    ObstructionVerdict verdict = ObstructionVerdict::inconclusive;
};

struct ObstructionFamilyReport {
    std::vector<CandidateRecord> candidates;
    double predicted_magnitude = 0.0;
    double min_residual = 1e300;
    // no candidate both calibrates the sampled cone (residual <= cal_tol) and
    // keeps the pullback integral under a quarter of the predicted magnitude
    bool dichotomy_holds = true;
};

// n_fitted < 0 picks a default share of adversarially fitted candidates;
// n_fitted = 0 runs a purely random family.
ObstructionFamilyReport obstruction_family(const std::vector<SampledLink>& factors,
                                           int varying_factor,
                                           const std::vector<BaseChoice>& base_choices,
                                           int n_candidates, std::uint64_t seed,
                                           double cal_tol, int n_fitted = -1);

// Wedges simple comass-one forms on consecutive disjoint blocks and certifies
// the comass of the product form.
ComassCertificate product_calibration_check(const std::vector<AlternatingForm>& phis);

struct ConvexDecompositionReport {
    bool certified = false;  // facet membership of tau was established
    std::vector<double> weights;
    std::vector<double> atom_values;  // psi_bar on each atom
    double uniformity_spread = 0.0;
    bool uniform = false;
    double common_value = 0.0;
    double aggregate = 0.0;  // psi_bar(tau)
};

// Decomposes a unit-mass tau over the maximizer set of phi and checks that
// psi_bar takes one uniform value on every atom.
ConvexDecompositionReport convex_decomposition_check(const MultiVector& tau,
                                                     const AlternatingForm& phi,
                                                     const AlternatingForm& psi_bar,
                                                     int atom_budget = 12,
                                                     double uniform_tol = 1e-6);

}  // namespace calgeo
