#include "calgeo/mass.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "calgeo/rng.hpp"
#include "calgeo/smalllp.hpp"

namespace calgeo {

namespace {

Eigen::MatrixXd pluecker_columns(const std::vector<SimpleVector>& atoms) {
    if (atoms.empty()) return {};
    const long rows = binomial(atoms[0].ambient_dim(), atoms[0].degree());
    Eigen::MatrixXd P(rows, static_cast<long>(atoms.size()));
    for (size_t j = 0; j < atoms.size(); ++j)
        P.col(static_cast<long>(j)) = dense_coeffs(atoms[j].expansion());
    return P;
}

}  // namespace

std::optional<FacetCertificate> facet_membership(const MultiVector& xi,
                                                 const AlternatingForm& phi,
                                                 int atom_budget, std::uint64_t seed) {
    if (atom_budget < 1) throw std::invalid_argument("facet_membership: atom_budget >= 1");
    ComassOptions copts;
    copts.seed = seed;
    ComassCertificate cert = comass(phi, copts);
    if (std::abs(cert.value - 1.0) > 1e-6)
        throw std::invalid_argument("facet_membership: phi must have comass 1 within 1e-6");
    if (std::abs(evaluate(phi, xi) - 1.0) > 1e-6)
        throw std::invalid_argument("facet_membership: phi(xi) must equal 1 within 1e-6");

    // Atom dictionary: ascent-found members of the maximizer set.
    std::vector<SimpleVector> dict =
        maximizer_set(phi, 1e-7, std::max(60, 10 * atom_budget), seed);
    if (dict.empty()) return std::nullopt;

    Eigen::MatrixXd P = pluecker_columns(dict);
    Eigen::VectorXd target = dense_coeffs(xi);

    // Feasibility program: P w = xi, 1^T w = 1, w >= 0. A simplex vertex
    // keeps the support small automatically.
    Eigen::MatrixXd A(P.rows() + 1, P.cols());
    A.topRows(P.rows()) = P;
    A.bottomRows(1).setOnes();
    Eigen::VectorXd b(P.rows() + 1);
    b.head(P.rows()) = target;
    b(P.rows()) = 1.0;
    LpResult lp = solve_lp_eq(A, b, Eigen::VectorXd::Zero(P.cols()));
    if (lp.status != LpResult::Status::optimal) return std::nullopt;

    FacetCertificate out;
    for (long j = 0; j < lp.x.size(); ++j) {
        if (lp.x(j) > 1e-10) {
            out.weights.push_back(lp.x(j));
            out.atoms.push_back(dict[static_cast<size_t>(j)]);
        }
    }
    if (static_cast<int>(out.atoms.size()) > atom_budget) return std::nullopt;

    Eigen::VectorXd recon = Eigen::VectorXd::Zero(target.size());
    for (size_t j = 0; j < out.atoms.size(); ++j)
        recon += out.weights[j] * dense_coeffs(out.atoms[j].expansion());
    out.residual = (recon - target).cwiseAbs().maxCoeff();
    if (out.residual > 1e-6) return std::nullopt;
    return out;
}

MassBounds mass_bounds(const MultiVector& xi, int atom_budget, int form_budget,
                       std::uint64_t seed) {
    if (xi.is_zero()) throw std::invalid_argument("mass_bounds: zero multivector");
    const int n = xi.ambient_dim();
    const int m = xi.degree();
    MassBounds out;

    // ----- upper bound: minimal |c|_1 decomposition over a dictionary -----
    std::vector<SimpleVector> dict;
    for_each_combination(n, m, [&](const std::vector<int>& I) {
        Eigen::MatrixXd f = Eigen::MatrixXd::Zero(n, m);
        for (int j = 0; j < m; ++j) f(I[static_cast<size_t>(j)] - 1, j) = 1.0;
        dict.emplace_back(f, +1);
    });
    auto eng = rng::make(seed, 0x3a55);
    for (int i = 0; i < 4 * atom_budget; ++i)
        dict.emplace_back(rng::random_orthonormal_frame(eng, n, m), +1);
    // maximizers of the sign form often realize the tight decomposition
    AlternatingForm sign_form(n, m);
    for (const auto& [I, c] : xi.coeffs()) sign_form.set(I, c >= 0 ? 1.0 : -1.0);
    if (!sign_form.is_zero())
        for (auto& sv : maximizer_set(sign_form, 1e-6, 24, seed)) dict.push_back(sv);

    Eigen::MatrixXd P = pluecker_columns(dict);
    Eigen::VectorXd target = dense_coeffs(xi);
    Eigen::MatrixXd A(P.rows(), 2 * P.cols());
    A.leftCols(P.cols()) = P;
    A.rightCols(P.cols()) = -P;
    LpResult lp = solve_lp_eq(A, target, Eigen::VectorXd::Ones(2 * P.cols()));
    if (lp.status == LpResult::Status::optimal) {
        Eigen::VectorXd recon = Eigen::VectorXd::Zero(target.size());
        double total = 0;
        for (long j = 0; j < P.cols(); ++j) {
            double c = lp.x(j) - lp.x(P.cols() + j);
            if (std::abs(c) > 1e-10) {
                out.atoms.emplace_back(c, dict[static_cast<size_t>(j)]);
                recon += c * P.col(j);
                total += std::abs(c);
            }
        }
        if ((recon - target).cwiseAbs().maxCoeff() <= 1e-8) {
            out.upper = total;
            out.upper_finite = true;
        } else {
            out.upper = std::numeric_limits<double>::infinity();
            out.upper_finite = false;
        }
    } else {
        out.upper = std::numeric_limits<double>::infinity();
        out.upper_finite = false;
        out.atoms.clear();
    }

    // ----- lower bound: best comass-normalized dual form -----
    std::vector<AlternatingForm> forms;
    forms.push_back(sign_form);
    forms.push_back(riesz_form(xi));
    std::vector<std::pair<double, MultiIndex>> mag;
    for (const auto& [I, c] : xi.coeffs()) mag.emplace_back(-std::abs(c), I);
    std::sort(mag.begin(), mag.end());
    for (const auto& [negc, I] : mag) {
        AlternatingForm f(n, m);
        f.set(I, xi.coeff(I) >= 0 ? 1.0 : -1.0);
        forms.push_back(f);
        if (static_cast<int>(forms.size()) >= form_budget + 2) break;
    }
    auto feng = rng::make(seed, 0xf0a2);
    while (static_cast<int>(forms.size()) < form_budget + 2)
        forms.push_back(rng::random_sparse_form(feng, n, m, std::max(2, m)));

    const bool guard = n <= 8 && m <= 4;
    double lower = 0;
    for (const auto& f : forms) {
        if (f.is_zero()) continue;
        ComassOptions copts;
        copts.restarts = 24;
        copts.seed = seed;
        double cm = comass(f, copts).value;
        if (guard) cm = std::max(cm, comass_oracle(f, 12));
        if (cm < 1e-12) continue;
        lower = std::max(lower, evaluate(f, xi) / cm);
    }
    out.lower = lower;
    return out;
}

}  // namespace calgeo
