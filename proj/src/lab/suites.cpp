#include "qdiv/lab/suites.hpp"

#include "qdiv/divergences.hpp"
#include "qdiv/errors.hpp"
#include "qdiv/lab/experiments.hpp"
#include "qdiv/means.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qdiv::lab {

namespace {

double spectral_norm(const Matrix& m) { return Eigen::JacobiSVD<Matrix>(m).singularValues()(0); }

Vector random_unit(Index dim, Rng& rng) {
    Vector x = ginibre(dim, 1, rng).col(0);
    return x / x.norm();
}

/// One property checked trial by trial: a deviation per trial, preserved
/// when all stay at or below tol.
class Check {
  public:
    Check(std::string name, Index dim, std::uint64_t seed, double tol) : tol_(tol) {
        r_.experiment = std::move(name);
        r_.dim = dim;
        r_.seed = seed;
        r_.expected = Verdict::preserved;
    }

    void add(double dev, const Matrix& a = {}, const Matrix& b = {}) {
        const int k = r_.trials++;
        r_.records.push_back({k, dev});
        if (!(dev <= r_.max_deviation)) {
            r_.max_deviation = dev;
            if (dev > tol_ && a.size()) r_.witness = Witness{a, b, dev};
        }
    }

    ExperimentReport& report() { return r_; }

    ExperimentReport finish() {
        r_.max_relative_deviation = std::max(r_.max_relative_deviation, 0.0);
        r_.verdict = r_.max_deviation <= tol_ ? Verdict::preserved : Verdict::violated;
        if (r_.verdict == Verdict::preserved) r_.witness.reset();
        r_.metrics["tol"] = tol_;
        return std::move(r_);
    }

  private:
    double tol_;
    ExperimentReport r_;
};

std::vector<std::string> finite_omega_functions(const SuiteConfig& cfg) {
    if (cfg.f) return {*cfg.f};
    return {"neg_sqrt", "hellinger", "min_test", "alpha:0.5"};
}

std::vector<double> alphas(const SuiteConfig& cfg, std::vector<double> defaults) {
    if (cfg.alpha) return {*cfg.alpha};
    return defaults;
}

PsdMatrix normalized(const PsdMatrix& a) {
    return PsdMatrix::from_spectrum(a.spectrum().values / a.trace(), a.spectrum().vectors);
}

// Wishart sample with rank uniform in 1..dim, normalized to trace one.
PsdMatrix random_state_any_rank(Index dim, Rng& rng) {
    return normalized(random_psd(dim, rng.uniform_int(1, static_cast<int>(dim)), rng));
}

// B # A by the textbook B^{1/2} (B^{-1/2} A B^{-1/2})^{1/2} B^{1/2} route,
// independent of the relative-spectrum kernel used by the library.
Matrix geometric_mean_naive(const PdMatrix& b, const PsdMatrix& a) {
    const Matrix bh = pseudo_power(b, 0.5).matrix();
    const Matrix bih = pseudo_power(b, -0.5).matrix();
    const Matrix inner = bih * a.matrix() * bih;
    const PsdMatrix ip(HermitianMatrix::trusted(0.5 * (inner + inner.adjoint())));
    return bh * pseudo_power(ip, 0.5).matrix() * bh;
}

} // namespace

// ---- Rényi families ---------------------------------------------------------

ExperimentReport commuting_coincidence(const SuiteConfig& cfg) {
    const Index dim = cfg.dim.value_or(4);
    const int trials = cfg.trials.value_or(200);
    Check c("commuting pairs: D = D* = D^flat", dim, cfg.seed, cfg.tol.value_or(1e-8));
    for (double al : alphas(cfg, {0.3, 0.5, 2.0, 3.0})) {
        const RenyiParameter p(al);
        for (int k = 0; k < trials; ++k) {
            Rng rng(cfg.seed, static_cast<std::uint64_t>(k));
            const auto [a, b] = random_commuting_pair(dim, rng);
            const ExtendedReal d = renyi(a, b, p);
            c.add(std::max(deviation(d, sandwiched_renyi(a, b, p)), deviation(d, flat_renyi(a, b, p))), a.matrix(),
                  b.matrix());
        }
    }
    return c.finish();
}

// ---- f-divergences ----------------------------------------------------------

ExperimentReport geometric_mean_identity(const SuiteConfig& cfg) {
    const Index dim = cfg.dim.value_or(5);
    const int trials = cfg.trials.value_or(100);
    Check c("D_neg_sqrt(A||B) = -tr(B # A)", dim, cfg.seed, cfg.tol.value_or(1e-9));
    const auto fn = builtin("neg_sqrt");
    for (int k = 0; k < trials; ++k) {
        Rng rng(cfg.seed, static_cast<std::uint64_t>(k));
        const PsdMatrix a = random_psd(dim, rng.uniform_int(1, static_cast<int>(dim)), rng);
        const PdMatrix b = random_pd(dim, rng);
        const double d = maximal_f_divergence(a, b, fn);
        c.add(std::abs(d + geometric_mean_naive(b, a).trace().real()), a.matrix(), b.matrix());
    }
    return c.finish();
}

ExperimentReport three_route_agreement(const SuiteConfig& cfg) {
    const Index dim = cfg.dim.value_or(4);
    const int trials = cfg.trials.value_or(100);
    const double tol = cfg.tol.value_or(1e-6);
    std::vector<ExperimentReport> parts;
    for (const auto& name : finite_omega_functions(cfg)) {
        const auto fn = builtin(name);
        Check pd("direct vs eps-limit vs mean route, PD B [" + name + "]", dim, cfg.seed, tol);
        for (int k = 0; k < trials; ++k) {
            Rng rng(cfg.seed, static_cast<std::uint64_t>(k));
            const PsdMatrix a = random_psd(dim, rng.uniform_int(1, static_cast<int>(dim)), rng);
            const PdMatrix b = random_pd(dim, rng);
            const double direct = maximal_f_divergence(a, b, fn);
            const double limit = maximal_f_divergence_limit(a, b, fn);
            const double mean = maximal_f_via_mean(a, b, fn);
            pd.add(std::max({std::abs(direct - limit), std::abs(direct - mean), std::abs(limit - mean)}), a.matrix(),
                   b.matrix());
        }
        parts.push_back(pd.finish());

        // Singular B with supp A not inside supp B: only the limit applies.
        Check sing("eps-limit converges for singular B [" + name + "]", dim, cfg.seed, tol);
        int failures = 0;
        double route_gap = 0.0;
        for (int k = 0; k < trials; ++k) {
            Rng rng(cfg.seed, static_cast<std::uint64_t>(k));
            const PsdMatrix a = random_psd(dim, dim, rng);
            const PsdMatrix b = random_psd(dim, rng.uniform_int(1, static_cast<int>(dim) - 1), rng);
            try {
                const double limit = maximal_f_divergence_limit(a, b, fn);
                const double mean = maximal_f_via_mean(a, b, fn);
                route_gap = std::max(route_gap, std::abs(limit - mean));
                sing.add(0.0);
            } catch (const ConvergenceError&) {
                ++failures;
                sing.add(std::numeric_limits<double>::infinity(), a.matrix(), b.matrix());
            }
        }
        auto r = sing.finish();
        r.metrics["non_converged"] = failures;
        r.metrics["limit_vs_mean_gap"] = route_gap;
        parts.push_back(std::move(r));
    }
    return aggregate("three-route agreement", dim, cfg.seed, std::move(parts));
}

ExperimentReport maximality(const SuiteConfig& cfg) {
    const Index dim = cfg.dim.value_or(4);
    const int trials = cfg.trials.value_or(200);
    const double tol = cfg.tol.value_or(1e-8);
    std::vector<ExperimentReport> parts;
    for (const auto& name : finite_omega_functions(cfg)) {
        const auto fn = builtin(name);
        Check c("S_f <= D_f, supp A in supp B [" + name + "]", dim, cfg.seed, tol);
        for (int k = 0; k < trials; ++k) {
            Rng rng(cfg.seed, static_cast<std::uint64_t>(k));
            const PsdMatrix b = random_state_any_rank(dim, rng);
            const Matrix q = b.support_basis();
            const PsdMatrix m = random_psd(q.cols(), rng.uniform_int(1, static_cast<int>(q.cols())), rng);
            const Matrix am = q * m.matrix() * q.adjoint() / m.trace();
            const PsdMatrix a(HermitianMatrix::trusted(0.5 * (am + am.adjoint())));
            const ExtendedReal s = standard_f_divergence(a, b, fn);
            const double d = maximal_f_divergence_psd(a, b, fn);
            c.add(s.is_finite() ? std::max(0.0, s.value() - d) : std::numeric_limits<double>::infinity(), a.matrix(),
                  b.matrix());
        }
        parts.push_back(c.finish());
    }
    return aggregate("maximality", dim, cfg.seed, std::move(parts));
}

ExperimentReport dpi_suite(const SuiteConfig& cfg) {
    const Index dim = cfg.dim.value_or(3);
    const int trials = cfg.trials.value_or(200);
    const double tol = cfg.tol.value_or(1e-8);
    std::vector<ExperimentReport> parts;
    std::vector<std::string> standard_fns = finite_omega_functions(cfg);
    if (!cfg.f) standard_fns.push_back("eta");
    for (const auto& name : standard_fns)
        parts.push_back(dpi_check(DivergenceSelector::f_divergence(DivergenceKind::standard, builtin(name)), dim, 3,
                                  trials, cfg.seed, tol));
    for (const auto& name : finite_omega_functions(cfg)) {
        const auto fn = builtin(name);
        if (!fn.has_finite_omega()) continue;
        parts.push_back(
            dpi_check(DivergenceSelector::f_divergence(DivergenceKind::maximal, fn), dim, 3, trials, cfg.seed, tol));
    }
    return aggregate("data processing", dim, cfg.seed, std::move(parts));
}

ExperimentReport infimum_suite(const SuiteConfig& cfg) {
    const Index dim = cfg.dim.value_or(4);
    const int trials = cfg.trials.value_or(200);
    const auto fn = builtin("min_test");
    const FunctionMinimum m = *fn.minimum();
    Check lower("D_f(A||B) >= c tr B [min_test]", dim, cfg.seed, cfg.tol.value_or(1e-8));
    Check attained("D_f(t* B||B) = c tr B [min_test]", dim, cfg.seed, 1e-9);
    for (int k = 0; k < trials; ++k) {
        Rng rng(cfg.seed, static_cast<std::uint64_t>(k));
        const PdMatrix b = random_pd(dim, rng);
        // Half the samples sit near the minimizer t* B.
        PsdMatrix a = random_psd(dim, rng.uniform_int(1, static_cast<int>(dim)), rng);
        if (k % 2) {
            const Matrix h = random_hermitian(dim, rng);
            const Matrix near = m.argmin * b.matrix() + rng.uniform(0.0, 0.05) * h / h.norm();
            auto s = eig_hermitian(HermitianMatrix::trusted(0.5 * (near + near.adjoint())));
            a = PsdMatrix::from_spectrum(s.values.cwiseMax(0.0), s.vectors);
        }
        const double bound = m.value * b.trace();
        lower.add(std::max(0.0, bound - maximal_f_divergence_psd(a, b, fn)), a.matrix(), b.matrix());
        const PsdMatrix star = PsdMatrix::from_spectrum(m.argmin * b.spectrum().values, b.spectrum().vectors);
        attained.add(std::abs(maximal_f_divergence(star, b, fn) - bound), star.matrix(), b.matrix());
    }
    return aggregate("infimum", dim, cfg.seed, {lower.finish(), attained.finish()});
}

ExperimentReport zero_characterization(const SuiteConfig& cfg) {
    const Index dim = cfg.dim.value_or(3);
    const int trials = cfg.trials.value_or(200);
    // Pairs with supp B outside supp C go through the eps-limit, which is only
    // good to about conv_tol; the bound is tight on such pairs.
    const double tol = cfg.tol.value_or(10.0 * LimitSchedule{}.conv_tol);
    std::vector<ExperimentReport> parts;
    for (const auto& name : finite_omega_functions(cfg)) {
        const auto fn = builtin(name);
        Check c("D(B||C) <= D(B||0) + D(0||C) [" + name + "]", dim, cfg.seed, tol);
        const PsdMatrix zero = PsdMatrix::zero(dim);
        for (int k = 0; k < trials; ++k) {
            Rng rng(cfg.seed, static_cast<std::uint64_t>(k));
            const PsdMatrix b = random_psd(dim, rng.uniform_int(1, static_cast<int>(dim)), rng);
            const PsdMatrix cc = random_psd(dim, rng.uniform_int(1, static_cast<int>(dim)), rng);
            const double lhs = maximal_f_divergence_psd(b, cc, fn);
            const double rhs = maximal_f_divergence_psd(b, zero, fn) + maximal_f_divergence_psd(zero, cc, fn);
            c.add(std::max(0.0, lhs - rhs), b.matrix(), cc.matrix());
        }
        parts.push_back(c.finish());
        if (std::abs(fn(1.0)) > 1e-14) continue;

        // Nonzero middle elements break the bound: (tsA, sA, A) with t = s = 2.
        ExperimentReport w;
        w.experiment = "nonzero middle element violates the bound [" + name + "]";
        w.dim = dim;
        w.seed = cfg.seed;
        w.expected = Verdict::violated;
        const int witnesses = std::max(1, trials / 10);
        constexpr double t = 2.0, s = 2.0;
        int found = 0;
        double weakest = std::numeric_limits<double>::infinity();
        for (int k = 0; k < witnesses; ++k) {
            Rng rng(cfg.seed + 1, static_cast<std::uint64_t>(k));
            const PsdMatrix a = random_psd(dim, rng.uniform_int(1, static_cast<int>(dim)), rng);
            const PsdMatrix sa = PsdMatrix::from_spectrum(s * a.spectrum().values, a.spectrum().vectors);
            const PsdMatrix tsa = PsdMatrix::from_spectrum(t * s * a.spectrum().values, a.spectrum().vectors);
            const double excess = maximal_f_divergence_psd(tsa, a, fn) -
                                  (maximal_f_divergence_psd(tsa, sa, fn) + maximal_f_divergence_psd(sa, a, fn));
            w.records.push_back({w.trials++, excess});
            weakest = std::min(weakest, excess);
            if (excess > tol) ++found;
            if (k == 0) w.witness = Witness{tsa.matrix(), a.matrix(), excess};
        }
        w.max_deviation = std::max(0.0, weakest);
        w.metrics["violating"] = found;
        w.metrics["min_excess"] = weakest;
        w.verdict = found == witnesses ? Verdict::violated : Verdict::inconclusive;
        if (w.verdict != Verdict::violated) w.witness.reset();
        parts.push_back(std::move(w));
    }
    return aggregate("zero characterization", dim, cfg.seed, std::move(parts));
}

// ---- orders and the proof lemmas ---------------------------------------------

ExperimentReport chaotic_suite(const SuiteConfig& cfg) {
    const Index dim = cfg.dim.value_or(3);
    const int pairs = cfg.trials.value_or(50);
    const double tol = cfg.tol.value_or(1e-9);
    std::vector<ExperimentReport> parts;
    for (double al : alphas(cfg, {0.5, 2.0})) {
        for (bool ordered : {true, false}) {
            std::vector<ExperimentReport> runs;
            for (int k = 0; k < pairs; ++k) {
                Rng rng(cfg.seed + (ordered ? 0 : 1), static_cast<std::uint64_t>(k));
                const PdMatrix b = random_pd(dim, rng);
                Matrix h;
                if (ordered) {
                    h = random_psd(dim, rng.uniform_int(0, static_cast<int>(dim)), rng).matrix();
                } else {
                    // Shift a random Hermitian so that its lowest eigenvalue is
                    // clearly negative.
                    h = random_hermitian(dim, rng);
                    const double lo = min_eigenvalue(HermitianMatrix::trusted(h));
                    h += (-rng.uniform(0.3, 1.0) - lo) * Matrix::Identity(dim, dim);
                }
                const Matrix lc = hat_log(b).matrix() + h;
                const PdMatrix c(exp_hermitian(HermitianMatrix::trusted(0.5 * (lc + lc.adjoint()))));
                runs.push_back(chaotic_characterization(b, c, al, rng, tol));
            }
            auto r = aggregate(std::string(ordered ? "ordered" : "unordered") + " pairs, alpha=" + std::to_string(al),
                               dim, cfg.seed, std::move(runs));
            r.expected = ordered ? Verdict::preserved : Verdict::violated;
            parts.push_back(std::move(r));
        }
    }
    return aggregate("chaotic order characterization", dim, cfg.seed, std::move(parts));
}

ExperimentReport lemma1_suite(const SuiteConfig& cfg) {
    const Index dim = cfg.dim.value_or(3);
    const int trials = cfg.trials.value_or(20);
    Check c("Lemma 1 limit: final relative error", dim, cfg.seed, cfg.tol.value_or(1e-2));
    int failed = 0;
    for (ProbeNorm norm : {ProbeNorm::operator_norm, ProbeNorm::trace, ProbeNorm::frobenius}) {
        for (int k = 0; k < trials; ++k) {
            Rng rng(cfg.seed, static_cast<std::uint64_t>(k));
            Lemma1Probe p{HermitianMatrix::trusted(random_hermitian(dim, rng)), random_unit(dim, rng),
                          ProbeFunction::exp(), norm};
            const auto res = lemma1_probe(p);
            if (!res.passed) ++failed;
            // A probe that misses the trend requirement counts as a violation
            // even when its endpoint error is small.
            c.add(res.passed ? res.final_relative_error : std::numeric_limits<double>::infinity(), p.a.matrix(),
                  p.x * p.x.adjoint());
        }
    }
    auto r = c.finish();
    r.metrics["failed_probes"] = failed;
    return r;
}

ExperimentReport sandwich_suite(const SuiteConfig& cfg) {
    const Index dim = cfg.dim.value_or(3);
    const int trials = cfg.trials.value_or(50);
    ExperimentReport r;
    r.experiment = "sandwich estimate";
    r.dim = dim;
    r.seed = cfg.seed;
    r.expected = Verdict::preserved;
    double worst_k = 0.0;
    int missing = 0, disagree = 0;
    for (int k = 0; k < trials; ++k) {
        Rng rng(cfg.seed, static_cast<std::uint64_t>(k));
        const HermitianMatrix a = HermitianMatrix::trusted(random_hermitian(dim, rng));
        const Vector x = random_unit(dim, rng);
        const auto res = sandwich_check(a, x);
        r.records.push_back({r.trials++, res.k ? *res.k : std::numeric_limits<double>::infinity()});
        if (!res.holds()) {
            if (missing++ == 0) r.witness = Witness{a.matrix(), x * x.adjoint(), 0.0};
        } else {
            worst_k = std::max(worst_k, *res.k);
        }
        if (!res.shifted_agrees) ++disagree;
    }
    r.metrics["max_K"] = worst_k;
    r.metrics["no_K_on_grid"] = missing;
    r.metrics["shifted_form_disagreements"] = disagree;
    r.verdict = missing == 0 && disagree == 0 ? Verdict::preserved : Verdict::violated;
    return r;
}

ExperimentReport trace_exp_monotonicity(const SuiteConfig& cfg) {
    const Index dim = cfg.dim.value_or(4);
    const int trials = cfg.trials.value_or(200);
    Check c("S <= T implies tr exp S <= tr exp T", dim, cfg.seed, cfg.tol.value_or(1e-12));
    for (int k = 0; k < trials; ++k) {
        Rng rng(cfg.seed, static_cast<std::uint64_t>(k));
        const Matrix s = random_hermitian(dim, rng);
        const Matrix t = s + random_psd(dim, rng.uniform_int(0, static_cast<int>(dim)), rng).matrix();
        const double ls = log_trace_exp(HermitianMatrix::trusted(s));
        const double lt = log_trace_exp(HermitianMatrix::trusted(0.5 * (t + t.adjoint())));
        c.add(std::max(0.0, ls - lt), s, t);
    }
    return c.finish();
}

ExperimentReport weyl_monotonicity(const SuiteConfig& cfg) {
    const Index dim = cfg.dim.value_or(4);
    const int trials = cfg.trials.value_or(100);
    Check c("S <= T implies N(g(S)) <= N(g(T))", dim, cfg.seed, cfg.tol.value_or(1e-10));
    const Vector e0 = Vector::Unit(dim, 0);
    for (const auto& g : {ProbeFunction::exp(), ProbeFunction::exp2(), ProbeFunction::sinh_inverse_exp()}) {
        for (ProbeNorm norm : {ProbeNorm::operator_norm, ProbeNorm::trace, ProbeNorm::frobenius}) {
            for (int k = 0; k < trials; ++k) {
                Rng rng(cfg.seed, static_cast<std::uint64_t>(k));
                const Matrix s = random_hermitian(dim, rng);
                const Matrix t = s + random_psd(dim, rng.uniform_int(0, static_cast<int>(dim)), rng).matrix();
                // lemma1_probe at the single grid point t = 1 with A = S - (P - I)
                // evaluates N(g(S)); reuse it to keep one norm implementation.
                auto norm_of = [&](const Matrix& m) {
                    const Matrix shift = e0 * e0.adjoint() - Matrix::Identity(dim, dim);
                    Lemma1Probe p{HermitianMatrix::trusted(0.5 * (m + m.adjoint()) - shift), e0, g, norm, {1.0}};
                    return lemma1_probe(p).sequence.front().second;
                };
                const double ns = norm_of(s);
                const double nt = norm_of(t);
                c.add(std::max(0.0, (ns - nt) / std::max(1.0, nt)), s, t);
            }
        }
    }
    return c.finish();
}

ExperimentReport trace_jensen(const SuiteConfig& cfg) {
    const Index dim = cfg.dim.value_or(4);
    const int trials = cfg.trials.value_or(100);
    std::vector<ExperimentReport> parts;
    std::vector<std::string> fns = finite_omega_functions(cfg);
    if (!cfg.f) fns.push_back("eta");
    for (const auto& name : fns) {
        const auto fn = builtin(name);
        Check c("tr D f(H) >= f(tr D H) [" + name + "]", dim, cfg.seed, cfg.tol.value_or(1e-9));
        for (int k = 0; k < trials; ++k) {
            Rng rng(cfg.seed, static_cast<std::uint64_t>(k));
            const PsdMatrix d = random_density(dim, rng);
            const PsdMatrix h = random_psd(dim, rng.uniform_int(1, static_cast<int>(dim)), rng);
            const auto& s = h.spectrum();
            double lhs = 0.0;
            for (Index i = 0; i < dim; ++i)
                lhs += fn(s.values(i)) * (s.vectors.col(i).adjoint() * d.matrix() * s.vectors.col(i))(0, 0).real();
            const double mean = (d.matrix() * h.matrix()).trace().real();
            c.add(std::max(0.0, fn(std::max(mean, 0.0)) - lhs), d.matrix(), h.matrix());
        }
        parts.push_back(c.finish());
    }
    return aggregate("trace Jensen", dim, cfg.seed, std::move(parts));
}

// ---- log-Euclidean algebra ---------------------------------------------------

ExperimentReport log_product_algebra(const SuiteConfig& cfg) {
    const Index dim = cfg.dim.value_or(4);
    const int trials = cfg.trials.value_or(50);
    const double tol = cfg.tol.value_or(1e-8);
    Check root("sqrt(A ⊙ B) = sqrt(A) ⊙ sqrt(B)", dim, cfg.seed, tol);
    Check idem("A ◇ A = A", dim, cfg.seed, tol);
    Check via("A ◇ B = sqrt(A ⊙ B), PD pairs", dim, cfg.seed, tol);
    Check trotter("Lie-Trotter limit = explicit ⊙", dim, cfg.seed, 1e-6);
    int singular = 0;
    for (int k = 0; k < trials; ++k) {
        Rng rng(cfg.seed, static_cast<std::uint64_t>(k));
        const PsdMatrix a = random_psd_any_rank(dim, rng);
        const PsdMatrix b = random_psd_any_rank(dim, rng);
        const PdMatrix ap = random_pd(dim, rng);
        const PdMatrix bp = random_pd(dim, rng);
        auto rel = [](const Matrix& x, const Matrix& y) { return spectral_norm(x - y) / std::max(1.0, spectral_norm(x)); };

        root.add(rel(pseudo_power(log_product(a, b), 0.5).matrix(),
                     log_product(pseudo_power(a, 0.5), pseudo_power(b, 0.5)).matrix()),
                 a.matrix(), b.matrix());
        idem.add(rel(log_euclidean(a, a).matrix(), a.matrix()), a.matrix(), a.matrix());
        via.add(rel(log_euclidean(ap, bp).matrix(), pseudo_power(log_product(ap, bp), 0.5).matrix()), ap.matrix(),
                bp.matrix());

        // Every trial covers one PD pair and, for at least 20 trials, one
        // singular pair.
        trotter.add(rel(log_product(ap, bp).matrix(), log_product_trotter(ap, bp).matrix()), ap.matrix(), bp.matrix());
        if (!a.is_definite() || !b.is_definite()) {
            ++singular;
            try {
                trotter.add(rel(log_product(a, b).matrix(), log_product_trotter(a, b).matrix()), a.matrix(),
                            b.matrix());
            } catch (const ConvergenceError&) {
                trotter.add(std::numeric_limits<double>::infinity(), a.matrix(), b.matrix());
            }
        }
    }
    for (int k = 0; singular < 20; ++k) {
        Rng rng(cfg.seed + 1, static_cast<std::uint64_t>(k));
        const Index ra = rng.uniform_int(1, static_cast<int>(dim) - 1);
        const PsdMatrix a = random_psd(dim, ra, rng);
        const PsdMatrix b = random_psd_any_rank(dim, rng);
        ++singular;
        try {
            trotter.add(spectral_norm(log_product(a, b).matrix() - log_product_trotter(a, b).matrix()) /
                            std::max(1.0, spectral_norm(log_product(a, b).matrix())),
                        a.matrix(), b.matrix());
        } catch (const ConvergenceError&) {
            trotter.add(std::numeric_limits<double>::infinity(), a.matrix(), b.matrix());
        }
    }
    auto t = trotter.finish();
    t.metrics["singular_pairs"] = singular;
    return aggregate("log-Euclidean algebra", dim, cfg.seed, {root.finish(), idem.finish(), via.finish(), std::move(t)});
}

// ---- theorems ------------------------------------------------------------------

ExperimentReport theorem1_suite(const SuiteConfig& cfg) {
    const Index dim = cfg.dim.value_or(4);
    std::vector<ExperimentReport> parts;
    for (double al : alphas(cfg, {0.5, 2.0})) parts.push_back(verify_theorem1(dim, al, cfg.seed, cfg.trials.value_or(100)));
    return aggregate("theorem1", dim, cfg.seed, std::move(parts));
}

ExperimentReport theorem2_suite(const SuiteConfig& cfg) {
    // Sweeps dims 2..5 unless one is pinned.
    const std::vector<Index> dims = cfg.dim ? std::vector<Index>{*cfg.dim} : std::vector<Index>{2, 3, 4, 5};
    std::vector<ExperimentReport> parts;
    std::vector<std::string> fns = cfg.f ? std::vector<std::string>{*cfg.f}
                                         : std::vector<std::string>{"neg_sqrt", "hellinger", "min_test"};
    for (Index dim : dims)
        for (const auto& name : fns)
            parts.push_back(verify_theorem2(dim, builtin(name), cfg.seed, cfg.trials.value_or(100)));
    return aggregate("theorem2", dims.back(), cfg.seed, std::move(parts));
}

ExperimentReport theorem3_suite(const SuiteConfig& cfg) {
    return verify_theorem3(cfg.dim.value_or(4), cfg.seed, cfg.trials.value_or(50), cfg.tol.value_or(1e-8));
}

// ---- registry ------------------------------------------------------------------

const std::vector<SuiteEntry>& suites() {
    static const std::vector<SuiteEntry> all = {
        {"commuting", "Rényi families coincide on commuting pairs", commuting_coincidence},
        {"theorem1", "flat-Rényi preservers and LogLinear falsification", theorem1_suite},
        {"theorem2", "maximal f-divergence preservers", theorem2_suite},
        {"geometric_mean", "D_neg_sqrt = -tr(B # A)", geometric_mean_identity},
        {"three_route", "direct, eps-limit and mean-route D_f agree", three_route_agreement},
        {"maximality", "standard S_f is below maximal D_f", maximality},
        {"dpi", "monotonicity under random channels", dpi_suite},
        {"chaotic", "chaotic order via flat Q", chaotic_suite},
        {"lemma1", "norm limit of g(A + t(P - I))", lemma1_suite},
        {"sandwich", "Löwner sandwich estimate", sandwich_suite},
        {"infimum", "min_test lower bound and its attainment", infimum_suite},
        {"zero", "triangle-bound characterization of 0", zero_characterization},
        {"log_product", "log-Euclidean mean and logarithmic product identities", log_product_algebra},
        {"theorem3", "log-product forms are ◇-morphisms", theorem3_suite},
        {"trace_exp", "monotonicity of tr exp", trace_exp_monotonicity},
        {"weyl", "Weyl monotonicity of N(g(.))", weyl_monotonicity},
        {"trace_jensen", "trace Jensen inequality", trace_jensen},
    };
    return all;
}

ExperimentReport run_suite(const std::string& name, const SuiteConfig& cfg) {
    if (name == "all") return run_all_suites(cfg);
    for (const auto& s : suites())
        if (s.name == name) return s.run(cfg);
    std::string known;
    for (const auto& s : suites()) known += (known.empty() ? "" : "|") + s.name;
    throw ValidationError("unknown suite '" + name + "' (expected all|" + known + ")");
}

ExperimentReport run_all_suites(const SuiteConfig& cfg) {
    std::vector<ExperimentReport> parts;
    for (const auto& s : suites()) parts.push_back(s.run(cfg));
    auto r = aggregate("all suites", cfg.dim.value_or(0), cfg.seed, std::move(parts));
    return r;
}

} // namespace qdiv::lab
