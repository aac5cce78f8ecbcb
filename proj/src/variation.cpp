#include "calgeo/variation.hpp"

#include <cmath>
#include <stdexcept>

#include "calgeo/pairwise.hpp"
#include "calgeo/rng.hpp"

namespace calgeo {

Eigen::VectorXd VectorFieldSpec::evaluate(const Eigen::VectorXd& y) const {
    switch (kind) {
        case Kind::constant:
            return constant;
        case Kind::linear:
        case Kind::rotation:
            return matrix * y;
        case Kind::quadratic: {
            Eigen::VectorXd out(y.size());
            for (long i = 0; i < y.size(); ++i)
                out(i) = y.dot(quads[static_cast<size_t>(i)] * y);
            return out;
        }
    }
    throw std::logic_error("VectorFieldSpec: bad kind");
}

Eigen::VectorXd VectorFieldSpec::evaluate_tangent(const Eigen::VectorXd& y) const {
    Eigen::VectorXd x = evaluate(y);
    Eigen::VectorXd n = y / y.norm();
    return x - x.dot(n) * n;
}

VectorFieldSpec VectorFieldSpec::random(Kind kind, int ambient_dim, std::uint64_t seed) {
    auto eng = rng::make(seed, 0xf1e1d);
    VectorFieldSpec f;
    f.kind = kind;
    switch (kind) {
        case Kind::constant:
            f.constant = rng::gaussian_vector(eng, ambient_dim);
            break;
        case Kind::linear:
            f.matrix = rng::gaussian_matrix(eng, ambient_dim, ambient_dim);
            break;
        case Kind::rotation: {
            Eigen::MatrixXd a = rng::gaussian_matrix(eng, ambient_dim, ambient_dim);
            f.matrix = 0.5 * (a - a.transpose());
            break;
        }
        case Kind::quadratic:
            for (int i = 0; i < ambient_dim; ++i) {
                Eigen::MatrixXd q = rng::gaussian_matrix(eng, ambient_dim, ambient_dim);
                f.quads.push_back(0.5 * (q + q.transpose()));
            }
            break;
    }
    return f;
}

double first_variation(const SampledLink& link, const VectorFieldSpec& field,
                       double fd_step) {
    std::vector<double> terms;
    terms.reserve(link.sample_count());
    const double h = fd_step;
    for (const auto& st : link.strata()) {
        for (const auto& s : st.samples) {
            double div = 0.0;
            for (int i = 0; i < link.dim(); ++i) {
                Eigen::VectorXd tau = s.frame.col(i);
                Eigen::VectorXd dplus = field.evaluate_tangent(s.point + h * tau);
                Eigen::VectorXd dminus = field.evaluate_tangent(s.point - h * tau);
                div += tau.dot(dplus - dminus) / (2.0 * h);
            }
            terms.push_back(s.multiplicity * s.weight * div);
        }
    }
    return pairwise_sum(terms);
}

StationarityReport stationarity_report(const SampledLink& link, int n_fields,
                                       std::uint64_t seed) {
    if (n_fields < 1) throw std::invalid_argument("stationarity_report: n_fields >= 1");
    StationarityReport rep;
    rep.n_fields = n_fields;
    rep.seed = seed;
    const VectorFieldSpec::Kind kinds[] = {
        VectorFieldSpec::Kind::constant, VectorFieldSpec::Kind::linear,
        VectorFieldSpec::Kind::quadratic, VectorFieldSpec::Kind::rotation};
    for (int f = 0; f < n_fields; ++f) {
        VectorFieldSpec field = VectorFieldSpec::random(
            kinds[f % 4], link.ambient_dim(), seed * 1000003ULL + static_cast<std::uint64_t>(f));
        double fv = first_variation(link, field);
        std::vector<double> mags;
        mags.reserve(link.sample_count());
        for (const auto& st : link.strata())
            for (const auto& s : st.samples)
                mags.push_back(s.multiplicity * s.weight *
                               field.evaluate_tangent(s.point).norm());
        double norm = pairwise_sum(mags);
        rep.per_field.push_back(norm > 1e-14 ? fv / norm : 0.0);
    }
    std::vector<double> absvals;
    for (double v : rep.per_field) {
        rep.max_abs = std::max(rep.max_abs, std::abs(v));
        absvals.push_back(std::abs(v));
    }
    rep.mean_abs = pairwise_sum(absvals) / static_cast<double>(n_fields);
    return rep;
}

double eta_term_coefficient(int m1, int m2) {
    double k = m1 + m2;
    double l1 = std::sqrt(m1 / k), l2 = std::sqrt(m2 / k);
    return -(l2 / l1) * m1 + (l1 / l2) * m2;
}

}  // namespace calgeo
