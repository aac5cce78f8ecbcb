#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "calgeo/exterior.hpp"

namespace calgeo {

enum class ComassMethod { ascent, oracle };

struct ComassOptions {
    int restarts = 40;
    std::uint64_t seed = 0;
    int max_sweeps = 500;
    double conv_tol = 1e-12;  // stop a restart when a sweep improves less than this
};

// Certified lower bound of the comass together with the maximizers found.
// Every maximizer re-evaluates to `value` within 1e-9; global optimality is
// only ever asserted through oracle agreement at small N, m.
struct ComassCertificate {
    double value = 0.0;
    std::vector<SimpleVector> maximizers;
    ComassMethod method = ComassMethod::ascent;
    std::optional<double> oracle_gap;
    int restarts_used = 0;
    bool converged = true;
};

// Block-coordinate ascent over orthonormal m-frames. Fixing all frame vectors
// but one, phi(v_1 ^ ... ^ v_m) is linear in the free slot; the maximizer on
// the unit sphere of the orthogonal complement is the normalized projected
// Riesz vector. Sweeps are monotone nondecreasing in the objective.
ComassCertificate comass(const AlternatingForm& phi, const ComassOptions& opts = {});

// Sampling oracle: quasi-uniform random frames (prefix-deterministic in the
// resolution) plus derivative-free hill climbing from the best candidates.
// Guard domain: ambient_dim <= 8 and degree <= 4.
double comass_oracle(const AlternatingForm& phi, int resolution = 24);

// Distinct local maximizers with value >= comass - tol, clustered by the
// distance between Pluecker embeddings (threshold 1e-3).
std::vector<SimpleVector> maximizer_set(const AlternatingForm& phi, double tol = 1e-6,
                                        int restarts = 60, std::uint64_t seed = 0);

}  // namespace calgeo
