#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <vector>

#include "calgeo/multi_index.hpp"

namespace calgeo {

// Coefficients below this threshold are dropped after arithmetic.
inline constexpr double kPruneTol = 1e-14;

class MultiVector;

// Constant-coefficient alternating m-form on R^N, stored sparsely over
// strictly increasing multi-indices.
class AlternatingForm {
public:
    AlternatingForm(int ambient_dim, int degree);

    int ambient_dim() const { return ambient_dim_; }
    int degree() const { return degree_; }

    void set(const MultiIndex& I, double c);
    void add(const MultiIndex& I, double c);
    double coeff(const MultiIndex& I) const;
    const std::map<MultiIndex, double>& coeffs() const { return coeffs_; }

    bool is_zero() const { return coeffs_.empty(); }
    double max_abs_coeff() const;
    double coeff_norm() const;  // Euclidean norm of the coefficient vector

    AlternatingForm& operator+=(const AlternatingForm& o);
    AlternatingForm& operator-=(const AlternatingForm& o);
    AlternatingForm& operator*=(double s);
    friend AlternatingForm operator+(AlternatingForm a, const AlternatingForm& b) { return a += b; }
    friend AlternatingForm operator-(AlternatingForm a, const AlternatingForm& b) { return a -= b; }
    friend AlternatingForm operator*(double s, AlternatingForm a) { return a *= s; }

    void prune(double tol = kPruneTol);

private:
    int ambient_dim_;
    int degree_;
    std::map<MultiIndex, double> coeffs_;
    void check_index(const MultiIndex& I) const;
};

// Element of Lambda^m R^N in the standard basis e_I.
class MultiVector {
public:
    MultiVector(int ambient_dim, int degree);

    int ambient_dim() const { return ambient_dim_; }
    int degree() const { return degree_; }

    void set(const MultiIndex& I, double c);
    void add(const MultiIndex& I, double c);
    double coeff(const MultiIndex& I) const;
    const std::map<MultiIndex, double>& coeffs() const { return coeffs_; }

    bool is_zero() const { return coeffs_.empty(); }
    double norm() const;
    double max_abs_coeff() const;

    MultiVector& operator+=(const MultiVector& o);
    MultiVector& operator-=(const MultiVector& o);
    MultiVector& operator*=(double s);
    friend MultiVector operator+(MultiVector a, const MultiVector& b) { return a += b; }
    friend MultiVector operator-(MultiVector a, const MultiVector& b) { return a -= b; }
    friend MultiVector operator*(double s, MultiVector a) { return a *= s; }

    void prune(double tol = kPruneTol);

private:
    int ambient_dim_;
    int degree_;
    std::map<MultiIndex, double> coeffs_;
    void check_index(const MultiIndex& I) const;
};

// Oriented orthonormal m-frame in R^N; expands to a unit simple m-vector.
class SimpleVector {
public:
    SimpleVector() : frame_(0, 0), orientation_(1) {}
    explicit SimpleVector(Eigen::MatrixXd frame, int orientation = +1,
                          double ortho_tol = 1e-10);

    int ambient_dim() const { return static_cast<int>(frame_.rows()); }
    int degree() const { return static_cast<int>(frame_.cols()); }
    const Eigen::MatrixXd& frame() const { return frame_; }
    int orientation() const { return orientation_; }

    MultiVector expansion() const;

private:
    Eigen::MatrixXd frame_;  // columns are the frame vectors
    int orientation_;
};

// Embedding of R^k into R^N that maps standard coordinates to a strictly
// increasing subset of standard coordinates (block inclusions P_i are the
// common case).
class CoordinateInclusion {
public:
    CoordinateInclusion(std::vector<int> targets, int codomain_dim);
    static CoordinateInclusion block(int offset, int domain_dim, int codomain_dim);

    int domain_dim() const { return static_cast<int>(targets_.size()); }
    int codomain_dim() const { return codomain_dim_; }
    int target(int i) const { return targets_[static_cast<size_t>(i - 1)]; }   // 1-based
    std::optional<int> preimage(int j) const;                                  // 1-based

    Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

private:
    std::vector<int> targets_;
    int codomain_dim_;
};

// --- operations ---------------------------------------------------------

AlternatingForm wedge(const AlternatingForm& a, const AlternatingForm& b);
MultiVector wedge(const MultiVector& a, const MultiVector& b);

double evaluate(const AlternatingForm& phi, const MultiVector& xi);

// Evaluates phi on the simple m-vector spanned by the frame columns
// (times orientation). The frame need not be orthonormal; the value is the
// sum of phi[I] * det(frame rows I).
double evaluate_on_frame(const AlternatingForm& phi, const Eigen::MatrixXd& frame,
                         int orientation = +1);

// Interior product with the convention (xi |_ phi)(eta) := phi(eta ^ xi).
AlternatingForm contract(const MultiVector& xi, const AlternatingForm& phi);

AlternatingForm pullback(const AlternatingForm& phi, const CoordinateInclusion& incl);
MultiVector push_forward(const MultiVector& xi, const CoordinateInclusion& incl);
// Transports a form on the subspace to the ambient space (coefficients
// reindexed through the inclusion); pullback o embed = identity.
AlternatingForm embed_form(const AlternatingForm& phi, const CoordinateInclusion& incl);

MultiVector hodge_dual(const MultiVector& xi);

// Decomposability test. Returns the recovered oriented orthonormal frame when
// xi is within tol of a simple m-vector (relative to |xi|), nullopt otherwise.
// Degrees 2 and N-2 are prescreened with the Pluecker quadrics; the general
// path uses the rank of the single-vector contraction map.
std::optional<SimpleVector> is_simple(const MultiVector& xi, double tol = 1e-9);

// Gradient of v |-> phi(f_1 ^ ... ^ v ^ ... ^ f_m) in slot j (0-based) as a
// vector in R^N; the Riesz vector of the comass ascent.
Eigen::VectorXd riesz_gradient(const AlternatingForm& phi, const Eigen::MatrixXd& frame,
                               int slot);

// Dense coefficient vector over the lexicographic degree-m basis of R^N.
Eigen::VectorXd dense_coeffs(const AlternatingForm& phi);
Eigen::VectorXd dense_coeffs(const MultiVector& xi);
AlternatingForm form_from_dense(int ambient_dim, int degree, const Eigen::VectorXd& v);
MultiVector multivector_from_dense(int ambient_dim, int degree, const Eigen::VectorXd& v);

// Riesz pairing: the multivector with the same coefficients as phi, and back.
MultiVector riesz_multivector(const AlternatingForm& phi);
AlternatingForm riesz_form(const MultiVector& xi);

}  // namespace calgeo
