#include "calgeo/obstruction.hpp"

#include <cmath>
#include <stdexcept>

#include "calgeo/mass.hpp"
#include "calgeo/pairwise.hpp"
#include "calgeo/rng.hpp"

namespace calgeo {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

std::vector<int> block_offsets(const std::vector<int>& blocks) {
    std::vector<int> off(blocks.size() + 1, 0);
    for (size_t i = 0; i < blocks.size(); ++i)
        off[i + 1] = off[i] + blocks[i];
    return off;
}

}  // namespace

std::string to_string(ObstructionVerdict v) {
    switch (v) {
        case ObstructionVerdict::obstructed:
            return "obstructed";
        case ObstructionVerdict::candidate_not_a_calibration:
            return "candidate-not-a-calibration";
        case ObstructionVerdict::inconclusive:
            return "inconclusive";
        case ObstructionVerdict::not_applicable:
            return "not-applicable";
    }
    return "unknown";
}

AlternatingForm contraction_form(const AlternatingForm& phi_o,
                                 const std::vector<FixedFactor>& fixed,
                                 const std::vector<int>& blocks) {
    const int N = phi_o.ambient_dim();
    auto off = block_offsets(blocks);
    require(off.back() == N, "contraction_form: blocks do not tile the ambient space");

    MultiVector acc(N, 0);
    acc.set(MultiIndex(), 1.0);
    int contracted = 0;
    for (const auto& f : fixed) {
        require(f.factor >= 1 && f.factor <= static_cast<int>(blocks.size()),
                "contraction_form: factor index out of range");
        const int bdim = blocks[static_cast<size_t>(f.factor - 1)];
        require(f.point.size() == bdim, "contraction_form: point outside declared block");
        require(f.tangent.ambient_dim() == bdim,
                "contraction_form: tangent outside declared block");
        CoordinateInclusion incl =
            CoordinateInclusion::block(off[static_cast<size_t>(f.factor - 1)], bdim, N);
        if (f.include_point) {
            MultiVector pt(bdim, 1);
            for (int i = 0; i < bdim; ++i)
                if (std::abs(f.point(i)) >= kPruneTol) pt.set(MultiIndex({i + 1}), f.point(i));
            acc = wedge(acc, push_forward(pt, incl));
            ++contracted;
        }
        acc = wedge(acc, push_forward(f.tangent.expansion(), incl));
        contracted += f.tangent.degree();
    }
    require(contracted <= phi_o.degree(), "contraction_form: degree underflow");
    return contract(acc, phi_o);
}

ObstructionContext::ObstructionContext(std::vector<SampledLink> factors, int varying_factor,
                                       const std::vector<BaseChoice>& base_choices)
    : factors_(std::move(factors)), varying_(varying_factor) {
    require(static_cast<int>(factors_.size()) >= 1, "obstruction: needs factors");
    require(varying_ >= 1 && varying_ <= static_cast<int>(factors_.size()),
            "obstruction: varying factor out of range");
    spec_ = minimal_product_spec(factors_);

    SampledLink product = minimal_product(factors_);
    ambient_dim_ = product.ambient_dim();
    cone_degree_ = product.dim() + 1;
    cone_ = cone_tangent_samples(product);
    planes_ = Eigen::MatrixXd(static_cast<long>(cone_.size()),
                              binomial(ambient_dim_, cone_degree_));
    for (size_t i = 0; i < cone_.size(); ++i)
        planes_.row(static_cast<long>(i)) =
            dense_coeffs(SimpleVector(cone_[i].frame, +1).expansion()).transpose();

    // fixed factors in ascending order; the first one carries the base point
    bool first = true;
    for (int f = 1; f <= static_cast<int>(factors_.size()); ++f) {
        if (f == varying_) continue;
        const SampledLink& link = factors_[static_cast<size_t>(f - 1)];
        int stratum = 0, index = -1;
        for (const auto& bc : base_choices)
            if (bc.factor == f) {
                stratum = bc.stratum;
                index = bc.index;
            }
        require(stratum >= 0 && stratum < static_cast<int>(link.strata().size()),
                "obstruction: base stratum out of range");
        const auto& samples = link.strata()[static_cast<size_t>(stratum)].samples;
        if (index < 0) index = static_cast<int>(samples.size()) / 3;
        require(index >= 0 && index < static_cast<int>(samples.size()),
                "obstruction: base sample index out of range");
        const LinkSample& s = samples[static_cast<size_t>(index)];
        FixedFactor ff;
        ff.factor = f;
        ff.point = s.point;
        ff.tangent = SimpleVector(s.frame, +1);
        ff.include_point = first;
        first = false;
        fixed_.push_back(std::move(ff));
    }

    if (!fixed_.empty()) {
        const int point_factor = fixed_.front().factor;
        predicted_ = spec_.lambdas[static_cast<size_t>(point_factor - 1)] *
                     factors_[static_cast<size_t>(varying_ - 1)].total_volume();
    }
}

ObstructionReport ObstructionContext::run(const AlternatingForm& phi_o, double cal_tol,
                                          double comass_tol, int comass_restarts) const {
    ObstructionReport rep;
    if (factors_.size() < 2) {
        rep.verdict = ObstructionVerdict::not_applicable;
        return rep;
    }
    require(phi_o.ambient_dim() == ambient_dim_, "obstruction: form ambient mismatch");
    require(phi_o.degree() == cone_degree_, "obstruction: form degree mismatch");

    Eigen::VectorXd values = planes_ * dense_coeffs(phi_o);
    double res_plus = 0, res_minus = 0;
    for (long i = 0; i < values.size(); ++i) {
        res_plus = std::max(res_plus, std::abs(1.0 - values(i)));
        res_minus = std::max(res_minus, std::abs(1.0 + values(i)));
    }
    rep.calibration_sign = res_plus <= res_minus ? +1 : -1;
    rep.calibration_residual = std::min(res_plus, res_minus);

    ComassOptions copts;
    copts.restarts = comass_restarts;
    rep.candidate_comass = comass(phi_o, copts).value;

    std::vector<int> blocks = spec_.factor_ambient_dims;
    AlternatingForm psi = contraction_form(phi_o, fixed_, blocks);
    auto off = block_offsets(blocks);
    const SampledLink& varying_link = factors_[static_cast<size_t>(varying_ - 1)];
    CoordinateInclusion incl = CoordinateInclusion::block(
        off[static_cast<size_t>(varying_ - 1)], varying_link.ambient_dim(), ambient_dim_);
    AlternatingForm psi_bar = pullback(psi, incl);

    double vmin = 1e300, vmax = -1e300;
    MultiVector total_tangent(varying_link.ambient_dim(), varying_link.dim());
    for (const auto& st : varying_link.strata()) {
        for (const auto& s : st.samples) {
            double v = evaluate_on_frame(psi_bar, s.frame);
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
            MultiVector xi = SimpleVector(s.frame, +1).expansion();
            xi *= s.multiplicity * s.weight;
            total_tangent += xi;
        }
    }
    rep.psi_constancy = vmax - vmin;
    rep.pullback_integral = integrate_form(varying_link, psi_bar);
    rep.psi_mean = rep.pullback_integral / varying_link.total_volume();
    rep.stokes_value = evaluate(psi_bar, total_tangent);
    rep.predicted_magnitude = predicted_;

    if (rep.calibration_residual <= cal_tol &&
        std::abs(rep.pullback_integral) >= 0.5 * rep.predicted_magnitude) {
        rep.verdict = ObstructionVerdict::obstructed;
    } else if (rep.calibration_residual > cal_tol ||
               rep.candidate_comass > 1.0 + comass_tol) {
        rep.verdict = ObstructionVerdict::candidate_not_a_calibration;
    } else {
        rep.verdict = ObstructionVerdict::inconclusive;
    }
    return rep;
}

ObstructionReport obstruction_witness(const std::vector<SampledLink>& factors,
                                      const AlternatingForm& phi_o, int varying_factor,
                                      const std::vector<BaseChoice>& base_choices,
                                      double cal_tol) {
    ObstructionReport rep;
    if (factors.size() < 2) {
        rep.verdict = ObstructionVerdict::not_applicable;
        return rep;
    }
    for (const auto& f : factors)
        if (f.dim() < 1) {
            rep.verdict = ObstructionVerdict::not_applicable;
            return rep;
        }
    ObstructionContext ctx(factors, varying_factor, base_choices);
    return ctx.run(phi_o, cal_tol);
}

AlternatingForm fit_calibration_candidate(const ObstructionContext& ctx,
                                          std::uint64_t seed, int iters) {
    const Eigen::MatrixXd& P = ctx.plane_matrix();
    const int N = ctx.ambient_dim();
    const int m = ctx.cone_degree();

    auto eng = rng::make(seed, 0xf177ed);
    Eigen::VectorXd phi = P.colwise().mean().transpose();
    phi += 0.05 * rng::gaussian_vector(eng, static_cast<int>(phi.size()));

    ComassOptions light;
    light.restarts = 8;
    light.seed = seed;
    auto renormalize = [&](Eigen::VectorXd& v, int restarts) {
        ComassOptions o = light;
        o.restarts = restarts;
        double c = comass(form_from_dense(N, m, v), o).value;
        if (c > 1e-12) v /= c;
    };
    renormalize(phi, 8);

    for (int t = 0; t < iters; ++t) {
        Eigen::VectorXd vals = P * phi;
        double lo = vals.minCoeff();
        double spread = std::max(1e-9, vals.maxCoeff() - lo);
        // softmin subgradient concentrated on the worst planes
        Eigen::VectorXd w = (-(vals.array() - lo) / (0.1 * spread)).exp();
        w /= w.sum();
        Eigen::VectorXd g = P.transpose() * w;
        phi += (0.25 / std::sqrt(1.0 + t)) * g;
        renormalize(phi, 8);
    }
    renormalize(phi, 24);
    return form_from_dense(N, m, phi);
}

ObstructionFamilyReport obstruction_family(const std::vector<SampledLink>& factors,
                                           int varying_factor,
                                           const std::vector<BaseChoice>& base_choices,
                                           int n_candidates, std::uint64_t seed,
                                           double cal_tol, int n_fitted) {
    require(n_candidates >= 1, "obstruction_family: need candidates");
    ObstructionContext ctx(factors, varying_factor, base_choices);
    const int N = ctx.ambient_dim();
    const int m = ctx.cone_degree();

    ObstructionFamilyReport out;
    if (n_fitted < 0) n_fitted = std::min(8, std::max(2, n_candidates / 12));
    n_fitted = std::min(n_fitted, n_candidates);
    auto eng = rng::make(seed, 0xfa317);

    for (int c = 0; c < n_candidates; ++c) {
        AlternatingForm phi(N, m);
        CandidateRecord rec;
        if (c < n_fitted) {
            rec.source = "fitted";
            phi = fit_calibration_candidate(ctx, seed + static_cast<std::uint64_t>(c), 60);
        } else {
            rec.source = "random";
            int terms = 2 + static_cast<int>(eng() % 7);
            phi = rng::random_sparse_form(eng, N, m, terms);
            ComassOptions copts;
            copts.restarts = 10;
            copts.seed = seed;
            double cm = comass(phi, copts).value;
            if (cm > 1e-12) phi *= 1.0 / cm;
        }
        ObstructionReport rep = ctx.run(phi, cal_tol);
        rec.calibration_residual = rep.calibration_residual;
        rec.comass = rep.candidate_comass;
        rec.pullback_integral = rep.pullback_integral;
        rec.verdict = rep.verdict;
        out.predicted_magnitude = rep.predicted_magnitude;
        out.min_residual = std::min(out.min_residual, rep.calibration_residual);
        if (rep.calibration_residual <= cal_tol &&
            std::abs(rep.pullback_integral) <= 0.25 * rep.predicted_magnitude)
            out.dichotomy_holds = false;
        out.candidates.push_back(std::move(rec));
    }
    return out;
}

ComassCertificate product_calibration_check(const std::vector<AlternatingForm>& phis) {
    require(!phis.empty(), "product_calibration_check: needs forms");
    int N = 0;
    for (const auto& p : phis) N += p.ambient_dim();

    AlternatingForm product(N, 0);
    product.set(MultiIndex(), 1.0);
    int offset = 0;
    for (const auto& p : phis) {
        if (!is_simple(riesz_multivector(p), 1e-8))
            throw std::invalid_argument("product_calibration_check: non-simple factor form");
        ComassCertificate c = comass(p);
        if (std::abs(c.value - 1.0) > 1e-6)
            throw std::invalid_argument("product_calibration_check: factor comass must be 1");
        CoordinateInclusion incl = CoordinateInclusion::block(offset, p.ambient_dim(), N);
        product = wedge(product, embed_form(p, incl));
        offset += p.ambient_dim();
    }

    ComassOptions copts;
    copts.restarts = 48;
    ComassCertificate cert = comass(product, copts);
    if (N <= 8 && product.degree() <= 4)
        cert.oracle_gap = std::abs(cert.value - comass_oracle(product, 16));
    return cert;
}

ConvexDecompositionReport convex_decomposition_check(const MultiVector& tau,
                                                     const AlternatingForm& phi,
                                                     const AlternatingForm& psi_bar,
                                                     int atom_budget, double uniform_tol) {
    ConvexDecompositionReport rep;
    auto facet = facet_membership(tau, phi, atom_budget);
    if (!facet) return rep;  // not certified; inconclusive
    rep.certified = true;
    rep.weights = facet->weights;
    double vmin = 1e300, vmax = -1e300, mean = 0;
    for (size_t j = 0; j < facet->atoms.size(); ++j) {
        double v = evaluate(psi_bar, facet->atoms[j].expansion());
        rep.atom_values.push_back(v);
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
        mean += facet->weights[j] * v;
    }
    rep.uniformity_spread = vmax - vmin;
    rep.uniform = rep.uniformity_spread <= uniform_tol;
    rep.common_value = mean;
    rep.aggregate = evaluate(psi_bar, tau);
    return rep;
}

}  // namespace calgeo
