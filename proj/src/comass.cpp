#include "calgeo/comass.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "calgeo/rng.hpp"

namespace calgeo {

namespace {

struct AscentOutcome {
    Eigen::MatrixXd frame;
    double value = 0.0;
    bool converged = false;
};

AscentOutcome ascend(const AlternatingForm& phi, Eigen::MatrixXd frame,
                     int max_sweeps, double conv_tol) {
    const int m = phi.degree();
    frame = rng::orthonormalized(frame);
    double value = evaluate_on_frame(phi, frame);
    AscentOutcome out;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        for (int j = 0; j < m; ++j) {
            Eigen::VectorXd g = riesz_gradient(phi, frame, j);
            for (int i = 0; i < m; ++i)
                if (i != j) g -= g.dot(frame.col(i)) * frame.col(i);
            double n = g.norm();
            if (n > 1e-15) frame.col(j) = g / n;
        }
        if (sweep % 16 == 15) frame = rng::orthonormalized(frame);
        double next = evaluate_on_frame(phi, frame);
        if (next - value < conv_tol) {
            value = std::max(value, next);
            out.converged = true;
            break;
        }
        value = next;
    }
    out.frame = rng::orthonormalized(frame);
    out.value = evaluate_on_frame(phi, out.frame);
    return out;
}

// Seed frames: basis frames of the largest coefficients (sign-corrected so the
// seed already evaluates to |phi[I]|), then uniform random frames.
std::vector<Eigen::MatrixXd> seed_frames(const AlternatingForm& phi, int restarts,
                                         std::uint64_t seed) {
    const int n = phi.ambient_dim();
    const int m = phi.degree();
    std::vector<std::pair<double, MultiIndex>> by_mag;
    for (const auto& [I, c] : phi.coeffs()) by_mag.emplace_back(-std::abs(c), I);
    std::sort(by_mag.begin(), by_mag.end());

    std::vector<Eigen::MatrixXd> seeds;
    for (const auto& [negmag, I] : by_mag) {
        if (static_cast<int>(seeds.size()) >= restarts) break;
        Eigen::MatrixXd f = Eigen::MatrixXd::Zero(n, m);
        for (int j = 0; j < m; ++j) f(I.at(j) - 1, j) = 1.0;
        if (phi.coeff(I) < 0) f.col(0) *= -1.0;
        seeds.push_back(std::move(f));
    }
    auto eng = rng::make(seed, 0xa5ce17);
    while (static_cast<int>(seeds.size()) < restarts)
        seeds.push_back(rng::random_orthonormal_frame(eng, n, m));
    return seeds;
}

double pluecker_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return (a - b).norm();
}

struct Cluster {
    Eigen::MatrixXd frame;
    Eigen::VectorXd pluecker;
    double value;
};

std::vector<Cluster> cluster_maximizers(const AlternatingForm& phi,
                                        std::vector<AscentOutcome>& outcomes,
                                        double keep_tol, double dist_tol) {
    double best = 0;
    for (const auto& o : outcomes) best = std::max(best, o.value);
    std::sort(outcomes.begin(), outcomes.end(),
              [](const AscentOutcome& a, const AscentOutcome& b) { return a.value > b.value; });
    std::vector<Cluster> reps;
    for (const auto& o : outcomes) {
        if (o.value < best - keep_tol) break;
        SimpleVector sv(o.frame, +1);
        Eigen::VectorXd p = dense_coeffs(sv.expansion());
        bool fresh = true;
        for (const auto& r : reps)
            if (pluecker_distance(p, r.pluecker) <= dist_tol) {
                fresh = false;
                break;
            }
        if (fresh) reps.push_back({o.frame, p, o.value});
    }
    (void)phi;
    return reps;
}

void check_nonzero(const AlternatingForm& phi) {
    if (phi.is_zero()) throw std::invalid_argument("comass: zero form");
    if (phi.degree() < 1) throw std::invalid_argument("comass: degree must be >= 1");
}

}  // namespace

ComassCertificate comass(const AlternatingForm& phi, const ComassOptions& opts) {
    check_nonzero(phi);
    if (opts.restarts < 1) throw std::invalid_argument("comass: restarts must be >= 1");

    auto seeds = seed_frames(phi, opts.restarts, opts.seed);
    std::vector<AscentOutcome> outcomes;
    outcomes.reserve(seeds.size());
    for (auto& s : seeds)
        outcomes.push_back(ascend(phi, std::move(s), opts.max_sweeps, opts.conv_tol));

    ComassCertificate cert;
    cert.method = ComassMethod::ascent;
    cert.restarts_used = static_cast<int>(outcomes.size());
    double best = 0;
    bool best_converged = false;
    for (const auto& o : outcomes)
        if (o.value > best) {
            best = o.value;
            best_converged = o.converged;
        }
    cert.value = best;
    cert.converged = best_converged;
    auto reps = cluster_maximizers(phi, outcomes, 1e-9, 1e-3);
    for (const auto& r : reps) cert.maximizers.emplace_back(r.frame, +1);
    return cert;
}

double comass_oracle(const AlternatingForm& phi, int resolution) {
    check_nonzero(phi);
    const int n = phi.ambient_dim();
    const int m = phi.degree();
    if (n > 8 || m > 4)
        throw std::invalid_argument("comass_oracle: guard domain is ambient_dim <= 8, degree <= 4");
    if (resolution < 1) throw std::invalid_argument("comass_oracle: resolution must be >= 1");

    // Base scan. A single stream and a sample count growing with the
    // resolution make the scan a prefix of every finer scan.
    auto eng = rng::make(0, 0x0bac1e);
    const int n_base = 250 * resolution;
    const int keep = 12;
    std::vector<std::pair<double, Eigen::MatrixXd>> top;
    double best = 0;
    for (int i = 0; i < n_base; ++i) {
        Eigen::MatrixXd f = rng::random_orthonormal_frame(eng, n, m);
        double v = evaluate_on_frame(phi, f);
        if (v < 0) {
            f.col(0) *= -1.0;
            v = -v;
        }
        best = std::max(best, v);
        if (static_cast<int>(top.size()) < keep) {
            top.emplace_back(v, f);
            std::sort(top.begin(), top.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
        } else if (v > top.back().first) {
            top.back() = {v, f};
            std::sort(top.begin(), top.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
        }
    }

    // Basis frames of the stored coefficients join the climb starters.
    for (const auto& [I, c] : phi.coeffs()) {
        Eigen::MatrixXd f = Eigen::MatrixXd::Zero(n, m);
        for (int j = 0; j < m; ++j) f(I.at(j) - 1, j) = 1.0;
        if (c < 0) f.col(0) *= -1.0;
        top.emplace_back(std::abs(c), f);
    }

    // Derivative-free hill climbing: perturb, re-orthonormalize, keep if
    // better; the step scale cools geometrically.
    auto climb_eng = rng::make(1, 0xc11b);
    const int tries_per_stage = 10 + resolution / 2;
    for (auto& [v0, f0] : top) {
        Eigen::MatrixXd f = f0;
        double v = evaluate_on_frame(phi, f);
        for (double sigma = 0.4; sigma > 1e-8; sigma *= 0.65) {
            for (int t = 0; t < tries_per_stage; ++t) {
                Eigen::MatrixXd cand =
                    rng::orthonormalized(f + sigma * rng::gaussian_matrix(climb_eng, n, m));
                double vc = evaluate_on_frame(phi, cand);
                if (-vc > v) {
                    cand.col(0) *= -1.0;
                    vc = -vc;
                }
                if (vc > v) {
                    v = vc;
                    f = cand;
                }
            }
        }
        best = std::max(best, v);
    }
    return best;
}

std::vector<SimpleVector> maximizer_set(const AlternatingForm& phi, double tol,
                                        int restarts, std::uint64_t seed) {
    check_nonzero(phi);
    auto seeds = seed_frames(phi, restarts, seed);
    std::vector<AscentOutcome> outcomes;
    outcomes.reserve(seeds.size());
    for (auto& s : seeds) outcomes.push_back(ascend(phi, std::move(s), 500, 1e-12));
    auto reps = cluster_maximizers(phi, outcomes, tol, 1e-3);
    std::vector<SimpleVector> out;
    out.reserve(reps.size());
    for (const auto& r : reps) out.emplace_back(r.frame, +1);
    return out;
}

}  // namespace calgeo
