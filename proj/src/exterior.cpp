#include "calgeo/exterior.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace calgeo {

namespace {

using CoeffMap = std::map<MultiIndex, double>;

void map_add(CoeffMap& m, const MultiIndex& I, double c) {
    auto [it, inserted] = m.try_emplace(I, c);
    if (!inserted) it->second += c;
}

void map_prune(CoeffMap& m, double tol) {
    for (auto it = m.begin(); it != m.end();) {
        if (std::abs(it->second) < tol)
            it = m.erase(it);
        else
            ++it;
    }
}

CoeffMap map_wedge(const CoeffMap& a, const CoeffMap& b) {
    CoeffMap out;
    for (const auto& [I, ci] : a) {
        for (const auto& [J, cj] : b) {
            auto merged = wedge_merge(I, J);
            if (!merged) continue;
            map_add(out, merged->first, merged->second * ci * cj);
        }
    }
    map_prune(out, kPruneTol);
    return out;
}

double map_norm(const CoeffMap& m) {
    double s = 0;
    for (const auto& [I, c] : m) s += c * c;
    return std::sqrt(s);
}

double map_max_abs(const CoeffMap& m) {
    double s = 0;
    for (const auto& [I, c] : m) s = std::max(s, std::abs(c));
    return s;
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

// --- AlternatingForm ------------------------------------------------------

AlternatingForm::AlternatingForm(int ambient_dim, int degree)
    : ambient_dim_(ambient_dim), degree_(degree) {
    require(ambient_dim >= 0 && degree >= 0 && degree <= ambient_dim,
            "AlternatingForm: need 0 <= degree <= ambient_dim");
}

void AlternatingForm::check_index(const MultiIndex& I) const {
    require(I.degree() == degree_, "AlternatingForm: multi-index degree mismatch");
    require(I.max_index() <= ambient_dim_, "AlternatingForm: index exceeds ambient dim");
}

void AlternatingForm::set(const MultiIndex& I, double c) {
    check_index(I);
    if (c == 0.0)
        coeffs_.erase(I);
    else
        coeffs_[I] = c;
}

void AlternatingForm::add(const MultiIndex& I, double c) {
    check_index(I);
    map_add(coeffs_, I, c);
}

double AlternatingForm::coeff(const MultiIndex& I) const {
    auto it = coeffs_.find(I);
    return it == coeffs_.end() ? 0.0 : it->second;
}

double AlternatingForm::max_abs_coeff() const { return map_max_abs(coeffs_); }
double AlternatingForm::coeff_norm() const { return map_norm(coeffs_); }

AlternatingForm& AlternatingForm::operator+=(const AlternatingForm& o) {
    require(o.ambient_dim_ == ambient_dim_ && o.degree_ == degree_,
            "AlternatingForm: +/- needs matching ambient dim and degree");
    for (const auto& [I, c] : o.coeffs_) map_add(coeffs_, I, c);
    prune();
    return *this;
}

AlternatingForm& AlternatingForm::operator-=(const AlternatingForm& o) {
    require(o.ambient_dim_ == ambient_dim_ && o.degree_ == degree_,
            "AlternatingForm: +/- needs matching ambient dim and degree");
    for (const auto& [I, c] : o.coeffs_) map_add(coeffs_, I, -c);
    prune();
    return *this;
}

AlternatingForm& AlternatingForm::operator*=(double s) {
    for (auto& [I, c] : coeffs_) c *= s;
    prune();
    return *this;
}

void AlternatingForm::prune(double tol) { map_prune(coeffs_, tol); }

// --- MultiVector -----------------------------------------------------------

MultiVector::MultiVector(int ambient_dim, int degree)
    : ambient_dim_(ambient_dim), degree_(degree) {
    require(ambient_dim >= 0 && degree >= 0 && degree <= ambient_dim,
            "MultiVector: need 0 <= degree <= ambient_dim");
}

void MultiVector::check_index(const MultiIndex& I) const {
    require(I.degree() == degree_, "MultiVector: multi-index degree mismatch");
    require(I.max_index() <= ambient_dim_, "MultiVector: index exceeds ambient dim");
}

void MultiVector::set(const MultiIndex& I, double c) {
    check_index(I);
    if (c == 0.0)
        coeffs_.erase(I);
    else
        coeffs_[I] = c;
}

void MultiVector::add(const MultiIndex& I, double c) {
    check_index(I);
    map_add(coeffs_, I, c);
}

double MultiVector::coeff(const MultiIndex& I) const {
    auto it = coeffs_.find(I);
    return it == coeffs_.end() ? 0.0 : it->second;
}

double MultiVector::norm() const { return map_norm(coeffs_); }
double MultiVector::max_abs_coeff() const { return map_max_abs(coeffs_); }

MultiVector& MultiVector::operator+=(const MultiVector& o) {
    require(o.ambient_dim_ == ambient_dim_ && o.degree_ == degree_,
            "MultiVector: +/- needs matching ambient dim and degree");
    for (const auto& [I, c] : o.coeffs_) map_add(coeffs_, I, c);
    prune();
    return *this;
}

MultiVector& MultiVector::operator-=(const MultiVector& o) {
    require(o.ambient_dim_ == ambient_dim_ && o.degree_ == degree_,
            "MultiVector: +/- needs matching ambient dim and degree");
    for (const auto& [I, c] : o.coeffs_) map_add(coeffs_, I, -c);
    prune();
    return *this;
}

MultiVector& MultiVector::operator*=(double s) {
    for (auto& [I, c] : coeffs_) c *= s;
    prune();
    return *this;
}

void MultiVector::prune(double tol) { map_prune(coeffs_, tol); }

// --- SimpleVector ----------------------------------------------------------

SimpleVector::SimpleVector(Eigen::MatrixXd frame, int orientation, double ortho_tol)
    : frame_(std::move(frame)), orientation_(orientation) {
    require(orientation_ == 1 || orientation_ == -1, "SimpleVector: orientation must be +-1");
    require(frame_.cols() <= frame_.rows(), "SimpleVector: more frame vectors than dimensions");
    Eigen::MatrixXd gram = frame_.transpose() * frame_;
    gram -= Eigen::MatrixXd::Identity(frame_.cols(), frame_.cols());
    require(gram.cwiseAbs().maxCoeff() <= ortho_tol || frame_.cols() == 0,
            "SimpleVector: frame not orthonormal within tolerance");
}

MultiVector SimpleVector::expansion() const {
    const int n = ambient_dim();
    const int m = degree();
    MultiVector out(n, m);
    if (m == 0) {
        out.set(MultiIndex(), static_cast<double>(orientation_));
        return out;
    }
    Eigen::MatrixXd minor(m, m);
    for_each_combination(n, m, [&](const std::vector<int>& rows) {
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) minor(r, c) = frame_(rows[static_cast<size_t>(r)] - 1, c);
        double d = minor.determinant() * orientation_;
        if (std::abs(d) >= kPruneTol) out.set(MultiIndex(rows), d);
    });
    return out;
}

// --- CoordinateInclusion ----------------------------------------------------

CoordinateInclusion::CoordinateInclusion(std::vector<int> targets, int codomain_dim)
    : targets_(std::move(targets)), codomain_dim_(codomain_dim) {
    for (size_t i = 0; i < targets_.size(); ++i) {
        require(targets_[i] >= 1 && targets_[i] <= codomain_dim_,
                "CoordinateInclusion: target out of range");
        require(i == 0 || targets_[i] > targets_[i - 1],
                "CoordinateInclusion: target indices must be strictly increasing (injective)");
    }
}

CoordinateInclusion CoordinateInclusion::block(int offset, int domain_dim, int codomain_dim) {
    std::vector<int> t(static_cast<size_t>(domain_dim));
    for (int i = 0; i < domain_dim; ++i) t[static_cast<size_t>(i)] = offset + i + 1;
    return CoordinateInclusion(std::move(t), codomain_dim);
}

std::optional<int> CoordinateInclusion::preimage(int j) const {
    auto it = std::lower_bound(targets_.begin(), targets_.end(), j);
    if (it == targets_.end() || *it != j) return std::nullopt;
    return static_cast<int>(it - targets_.begin()) + 1;
}

Eigen::VectorXd CoordinateInclusion::apply(const Eigen::VectorXd& x) const {
    require(x.size() == domain_dim(), "CoordinateInclusion: vector dimension mismatch");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(codomain_dim_);
    for (int i = 1; i <= domain_dim(); ++i) out(target(i) - 1) = x(i - 1);
    return out;
}

// --- operations -------------------------------------------------------------

AlternatingForm wedge(const AlternatingForm& a, const AlternatingForm& b) {
    require(a.ambient_dim() == b.ambient_dim(), "wedge: ambient dimension mismatch");
    require(a.degree() + b.degree() <= a.ambient_dim(), "wedge: degree overflow");
    AlternatingForm out(a.ambient_dim(), a.degree() + b.degree());
    for (const auto& [I, ci] : a.coeffs())
        for (const auto& [J, cj] : b.coeffs()) {
            auto merged = wedge_merge(I, J);
            if (merged) out.add(merged->first, merged->second * ci * cj);
        }
    out.prune();
    return out;
}

MultiVector wedge(const MultiVector& a, const MultiVector& b) {
    require(a.ambient_dim() == b.ambient_dim(), "wedge: ambient dimension mismatch");
    require(a.degree() + b.degree() <= a.ambient_dim(), "wedge: degree overflow");
    MultiVector out(a.ambient_dim(), a.degree() + b.degree());
    for (const auto& [I, ci] : a.coeffs())
        for (const auto& [J, cj] : b.coeffs()) {
            auto merged = wedge_merge(I, J);
            if (merged) out.add(merged->first, merged->second * ci * cj);
        }
    out.prune();
    return out;
}

double evaluate(const AlternatingForm& phi, const MultiVector& xi) {
    require(phi.ambient_dim() == xi.ambient_dim(), "evaluate: ambient dimension mismatch");
    require(phi.degree() == xi.degree(), "evaluate: degree mismatch");
    const auto& small = phi.coeffs().size() <= xi.coeffs().size() ? phi.coeffs() : xi.coeffs();
    double s = 0;
    if (&small == &phi.coeffs()) {
        for (const auto& [I, c] : phi.coeffs()) s += c * xi.coeff(I);
    } else {
        for (const auto& [I, c] : xi.coeffs()) s += c * phi.coeff(I);
    }
    return s;
}

double evaluate_on_frame(const AlternatingForm& phi, const Eigen::MatrixXd& frame,
                         int orientation) {
    require(frame.rows() == phi.ambient_dim(), "evaluate_on_frame: frame dimension mismatch");
    require(frame.cols() == phi.degree(), "evaluate_on_frame: frame degree mismatch");
    const int m = phi.degree();
    if (m == 0) {
        double s = 0;
        for (const auto& [I, c] : phi.coeffs()) s += c;
        return s * orientation;
    }
    Eigen::MatrixXd minor(m, m);
    double s = 0;
    for (const auto& [I, c] : phi.coeffs()) {
        for (int r = 0; r < m; ++r)
            for (int col = 0; col < m; ++col) minor(r, col) = frame(I.at(r) - 1, col);
        s += c * minor.determinant();
    }
    return s * orientation;
}

AlternatingForm contract(const MultiVector& xi, const AlternatingForm& phi) {
    require(xi.ambient_dim() == phi.ambient_dim(), "contract: ambient dimension mismatch");
    require(xi.degree() <= phi.degree(), "contract: degree overflow");
    AlternatingForm out(phi.ambient_dim(), phi.degree() - xi.degree());
    // (xi |_ phi)(e_I) = sum_J xi[J] * sign(e_I ^ e_J = s e_K) * phi[K]
    for (const auto& [K, cphi] : phi.coeffs()) {
        for (const auto& [J, cxi] : xi.coeffs()) {
            if (!is_subset(J, K)) continue;
            MultiIndex I = difference(K, J);
            auto merged = wedge_merge(I, J);
            out.add(I, merged->second * cphi * cxi);
        }
    }
    out.prune();
    return out;
}

AlternatingForm pullback(const AlternatingForm& phi, const CoordinateInclusion& incl) {
    require(incl.codomain_dim() == phi.ambient_dim(), "pullback: codomain mismatch");
    require(incl.domain_dim() >= phi.degree(), "pullback: degree exceeds domain dimension");
    AlternatingForm out(incl.domain_dim(), phi.degree());
    for (const auto& [I, c] : phi.coeffs()) {
        std::vector<int> mapped;
        mapped.reserve(static_cast<size_t>(I.degree()));
        bool inside = true;
        for (int idx : I.indices()) {
            auto pre = incl.preimage(idx);
            if (!pre) {
                inside = false;
                break;
            }
            mapped.push_back(*pre);
        }
        if (inside) out.set(MultiIndex(std::move(mapped)), c);
    }
    return out;
}

MultiVector push_forward(const MultiVector& xi, const CoordinateInclusion& incl) {
    require(incl.domain_dim() == xi.ambient_dim(), "push_forward: domain mismatch");
    MultiVector out(incl.codomain_dim(), xi.degree());
    for (const auto& [I, c] : xi.coeffs()) {
        std::vector<int> mapped;
        mapped.reserve(static_cast<size_t>(I.degree()));
        for (int idx : I.indices()) mapped.push_back(incl.target(idx));
        out.set(MultiIndex(std::move(mapped)), c);
    }
    return out;
}

AlternatingForm embed_form(const AlternatingForm& phi, const CoordinateInclusion& incl) {
    require(incl.domain_dim() == phi.ambient_dim(), "embed_form: domain mismatch");
    AlternatingForm out(incl.codomain_dim(), phi.degree());
    for (const auto& [I, c] : phi.coeffs()) {
        std::vector<int> mapped;
        mapped.reserve(static_cast<size_t>(I.degree()));
        for (int idx : I.indices()) mapped.push_back(incl.target(idx));
        out.set(MultiIndex(std::move(mapped)), c);
    }
    return out;
}

MultiVector hodge_dual(const MultiVector& xi) {
    const int n = xi.ambient_dim();
    std::vector<int> all(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<size_t>(i)] = i + 1;
    const MultiIndex full(all);
    MultiVector out(n, n - xi.degree());
    for (const auto& [I, c] : xi.coeffs()) {
        MultiIndex comp = difference(full, I);
        auto merged = wedge_merge(I, comp);  // e_I ^ e_comp = s * e_{1..n}
        out.set(comp, merged->second * c);
    }
    return out;
}

MultiVector riesz_multivector(const AlternatingForm& phi) {
    MultiVector out(phi.ambient_dim(), phi.degree());
    for (const auto& [I, c] : phi.coeffs()) out.set(I, c);
    return out;
}

AlternatingForm riesz_form(const MultiVector& xi) {
    AlternatingForm out(xi.ambient_dim(), xi.degree());
    for (const auto& [I, c] : xi.coeffs()) out.set(I, c);
    return out;
}

namespace {

// Columns span the smallest subspace containing every vector e_K |_ xi.
// For a simple xi this column space is exactly span(xi).
Eigen::MatrixXd contraction_matrix(const MultiVector& xi) {
    const int n = xi.ambient_dim();
    const int m = xi.degree();
    const long cols = binomial(n, m - 1);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, cols);
    long col = 0;
    for_each_combination(n, m - 1, [&](const std::vector<int>& K) {
        MultiIndex Kidx(K);
        for (int i = 1; i <= n; ++i) {
            if (Kidx.contains(i)) continue;
            auto merged = wedge_merge(MultiIndex({i}), Kidx);  // e_i ^ e_K = s e_{K u i}
            M(i - 1, col) = merged->second * xi.coeff(merged->first);
        }
        ++col;
    });
    return M;
}

double pluecker_quadric_residual(const MultiVector& xi) {
    MultiVector sq = wedge(xi, xi);
    double n2 = xi.norm();
    return 0.5 * sq.max_abs_coeff() / (n2 * n2);
}

}  // namespace

std::optional<SimpleVector> is_simple(const MultiVector& xi, double tol) {
    if (xi.is_zero()) throw std::invalid_argument("is_simple: zero multivector");
    const int n = xi.ambient_dim();
    const int m = xi.degree();
    const double nrm = xi.norm();

    if (m == 0) {
        double c = xi.coeff(MultiIndex());
        return SimpleVector(Eigen::MatrixXd(n, 0), c >= 0 ? +1 : -1);
    }

    // Pluecker quadric prescreen for the degrees where it characterizes
    // simplicity outright.
    if (m == 2 && n >= 4) {
        if (pluecker_quadric_residual(xi) > tol) return std::nullopt;
    } else if (m == n - 2 && n - m == 2 && m > 2) {
        if (pluecker_quadric_residual(hodge_dual(xi)) > tol) return std::nullopt;
    }

    Eigen::MatrixXd candidate(n, m);
    if (m == n) {
        candidate = Eigen::MatrixXd::Identity(n, n);
    } else {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(contraction_matrix(xi), Eigen::ComputeThinU);
        const auto& sv = svd.singularValues();
        // Mass beyond the leading m singular values measures distance from
        // having an m-dimensional support.
        if (sv.size() > m && sv(m) > tol * sv(0) * 10.0) return std::nullopt;
        candidate = svd.matrixU().leftCols(m);
    }

    SimpleVector inner(candidate, +1);
    MultiVector exp = inner.expansion();
    double align = 0;
    for (const auto& [I, c] : exp.coeffs()) align += c * xi.coeff(I);
    int orientation = align >= 0 ? +1 : -1;

    // authoritative check: the recovered frame reproduces xi/|xi|
    double err2 = 0;
    MultiVector diff = xi;
    diff *= 1.0 / nrm;
    for (const auto& [I, c] : exp.coeffs()) diff.add(I, -c * orientation);
    err2 = diff.norm();
    if (err2 > tol) return std::nullopt;
    return SimpleVector(candidate, orientation);
}

Eigen::VectorXd riesz_gradient(const AlternatingForm& phi, const Eigen::MatrixXd& frame,
                               int slot) {
    const int n = phi.ambient_dim();
    const int m = phi.degree();
    require(frame.rows() == n && frame.cols() == m, "riesz_gradient: frame shape mismatch");
    require(slot >= 0 && slot < m, "riesz_gradient: bad slot");
    Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
    Eigen::MatrixXd minor(m, m);
    for (const auto& [I, c] : phi.coeffs()) {
        for (int r = 0; r < m; ++r)
            for (int col = 0; col < m; ++col) minor(r, col) = frame(I.at(r) - 1, col);
        // cofactor expansion along column `slot`: d det / d minor(r, slot)
        for (int r = 0; r < m; ++r) {
            Eigen::MatrixXd sub(m - 1, m - 1);
            int rr = 0;
            for (int i = 0; i < m; ++i) {
                if (i == r) continue;
                int cc = 0;
                for (int j = 0; j < m; ++j) {
                    if (j == slot) continue;
                    sub(rr, cc) = minor(i, j);
                    ++cc;
                }
                ++rr;
            }
            double cof = ((r + slot) % 2 == 0 ? 1.0 : -1.0) *
                         (m == 1 ? 1.0 : sub.determinant());
            g(I.at(r) - 1) += c * cof;
        }
    }
    return g;
}

Eigen::VectorXd dense_coeffs(const AlternatingForm& phi) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(binomial(phi.ambient_dim(), phi.degree()));
    long pos = 0;
    for_each_combination(phi.ambient_dim(), phi.degree(), [&](const std::vector<int>& I) {
        v(pos++) = phi.coeff(MultiIndex(I));
    });
    return v;
}

Eigen::VectorXd dense_coeffs(const MultiVector& xi) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(binomial(xi.ambient_dim(), xi.degree()));
    long pos = 0;
    for_each_combination(xi.ambient_dim(), xi.degree(), [&](const std::vector<int>& I) {
        v(pos++) = xi.coeff(MultiIndex(I));
    });
    return v;
}

AlternatingForm form_from_dense(int ambient_dim, int degree, const Eigen::VectorXd& v) {
    require(v.size() == binomial(ambient_dim, degree), "form_from_dense: size mismatch");
    AlternatingForm out(ambient_dim, degree);
    long pos = 0;
    for_each_combination(ambient_dim, degree, [&](const std::vector<int>& I) {
        double c = v(pos++);
        if (std::abs(c) >= kPruneTol) out.set(MultiIndex(I), c);
    });
    return out;
}

MultiVector multivector_from_dense(int ambient_dim, int degree, const Eigen::VectorXd& v) {
    require(v.size() == binomial(ambient_dim, degree), "multivector_from_dense: size mismatch");
    MultiVector out(ambient_dim, degree);
    long pos = 0;
    for_each_combination(ambient_dim, degree, [&](const std::vector<int>& I) {
        double c = v(pos++);
        if (std::abs(c) >= kPruneTol) out.set(MultiIndex(I), c);
    });
    return out;
}

}  // namespace calgeo
