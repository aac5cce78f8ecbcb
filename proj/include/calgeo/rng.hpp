#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

#include "calgeo/exterior.hpp"

namespace calgeo::rng {

using Engine = std::mt19937_64;

// Salted construction keeps independent streams reproducible per subsystem.
inline Engine make(std::uint64_t seed, std::uint64_t salt) {
    return Engine(seed * 0x9e3779b97f4a7c15ULL + salt);
}

Eigen::VectorXd gaussian_vector(Engine& eng, int n);
Eigen::MatrixXd gaussian_matrix(Engine& eng, int rows, int cols);

// Orthonormal n x m frame from the QR factorization of a Gaussian matrix,
// with column signs fixed by the R diagonal.
Eigen::MatrixXd random_orthonormal_frame(Engine& eng, int n, int m);

// Re-orthonormalizes the columns of a frame in place (QR, sign-fixed).
Eigen::MatrixXd orthonormalized(const Eigen::MatrixXd& frame);

AlternatingForm random_sparse_form(Engine& eng, int ambient_dim, int degree, int terms);

}  // namespace calgeo::rng
