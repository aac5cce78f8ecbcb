#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "calgeo/comass.hpp"
#include "calgeo/exterior.hpp"

namespace calgeo {

// Nonnegative weights over maximizer-set atoms reconstructing xi; the
// certificate of membership in the dual facet of phi.
struct FacetCertificate {
    std::vector<double> weights;
    std::vector<SimpleVector> atoms;
    double residual = 0.0;
};

// Requires comass(phi) = 1 +- 1e-6 and phi(xi) = 1 +- 1e-6. Returns nullopt
// when no certificate within atom_budget atoms was found; that outcome never
// disproves membership.
std::optional<FacetCertificate> facet_membership(const MultiVector& xi,
                                                 const AlternatingForm& phi,
                                                 int atom_budget,
                                                 std::uint64_t seed = 0);

struct MassBounds {
    double lower = 0.0;
    double upper = 0.0;
    bool upper_finite = true;
    // signed coefficients with oriented simple atoms; sum |c_j| = upper and
    // sum c_j * atom_j = xi within 1e-8 when upper_finite
    std::vector<std::pair<double, SimpleVector>> atoms;
};

// Upper bound: minimal sum |c_j| over decompositions of xi across a sampled
// simple-atom dictionary (linear program). Lower bound: max phi(xi) over a
// dictionary of comass-normalized forms (comass certified at desk scale by
// ascent, refined by the oracle on its guard domain).
MassBounds mass_bounds(const MultiVector& xi, int atom_budget, int form_budget,
                       std::uint64_t seed = 0);

}  // namespace calgeo
