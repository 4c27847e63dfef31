#include "helpers.hpp"

#include "qdiv/errors.hpp"
#include "qdiv/lab/experiments.hpp"
#include "qdiv/lab/suites.hpp"

#include <cmath>

using namespace qdiv;
using namespace qdiv::lab;
using testing::check_close;
using testing::diag;
using testing::max_abs;

namespace {

Vector basis(Index d, Index i) {
    Vector x = Vector::Zero(d);
    x(i) = 1;
    return x;
}

DivergenceSelector flat(double alpha) { return DivergenceSelector::renyi_family(DivergenceKind::flat, alpha); }

DivergenceSelector maximal(const std::string& f) {
    return DivergenceSelector::f_divergence(DivergenceKind::maximal, builtin(f));
}

// |D(phi A || phi B) - D(A || B)| recomputed from scratch.
double reevaluate(const TransformSpec& spec, const DivergenceSelector& div, const Witness& w) {
    const PsdMatrix a(w.a), b(w.b);
    return std::abs(div(apply_transform(spec, a), apply_transform(spec, b)).to_double() - div(a, b).to_double());
}

} // namespace

TEST_CASE("apply_transform examples") {
    const PdMatrix a = random_pd(3, 5);
    const Matrix id = Matrix::Identity(3, 3);
    check_close(apply_transform(UnitaryCongruence{id, 2.0}, a).matrix(), 2.0 * a.matrix(), 1e-12);
    check_close(apply_transform(AntiUnitaryCongruence{id, 1.0}, a).matrix(), a.matrix().transpose(), 1e-12);
    const double mu = 3.0;
    check_close(apply_transform(LogLinear{id, std::log(mu) * id, false}, a).matrix(), mu * a.matrix(), 1e-9);
}

TEST_CASE("transform validation") {
    const Matrix id = Matrix::Identity(2, 2);
    CHECK_THROWS_AS(validate(UnitaryCongruence{id, 0.0}, 2), ValidationError);
    CHECK_THROWS_AS(validate(UnitaryCongruence{2.0 * id, 1.0}, 2), ValidationError);
    CHECK_THROWS_AS(validate(LogLinear{diag({1, 0}), Matrix::Zero(2, 2), false}, 2), ValidationError);
    CHECK_THROWS_AS(validate(UnitaryCongruence{id, 1.0}, 3), ValidationError);
    CHECK_NOTHROW(validate(AntiUnitaryCongruence{haar_unitary(2, 3), 0.5}, 2));
}

TEST_CASE("canonical maps") {
    const Matrix u = haar_unitary(3, 8);
    CHECK(is_canonical(UnitaryCongruence{u, 2.0}, flat(0.5)));
    CHECK_FALSE(is_canonical(UnitaryCongruence{u, 2.0}, maximal("neg_sqrt")));
    CHECK(is_canonical(AntiUnitaryCongruence{u, 1.0}, maximal("neg_sqrt")));
    CHECK_FALSE(is_canonical(LogLinear{diag({1.2, 1, 1}), Matrix::Zero(3, 3), false}, flat(0.5)));
}

TEST_CASE("test_preservation examples") {
    const Matrix u = haar_unitary(4, 12);

    const auto kept = test_preservation(UnitaryCongruence{u, 1.0}, flat(0.5), 4, 50, 1, 1e-8);
    CHECK(kept.verdict == Verdict::preserved);
    CHECK(kept.max_deviation < 1e-8);
    CHECK_FALSE(kept.witness);

    const TransformSpec scaled = UnitaryCongruence{u, 2.0};
    const auto hom = test_preservation(scaled, maximal("neg_sqrt"), 4, 50, 1, 1e-8);
    CHECK(hom.verdict == Verdict::violated);
    REQUIRE(hom.witness);
    CHECK(reevaluate(scaled, maximal("neg_sqrt"), *hom.witness) > 1e-8);
    // D_f(2A || 2B) = 2 D_f(A || B): the relative deviation is exactly 1.
    CHECK(hom.max_relative_deviation == doctest::Approx(1.0).epsilon(1e-8));

    const TransformSpec stretch = LogLinear{diag({1.2, 1, 1, 1}), Matrix::Zero(4, 4), false};
    const auto neg = test_preservation(stretch, flat(0.5), 4, 100, 1, 1e-8);
    CHECK(neg.verdict != Verdict::preserved);
    if (neg.verdict == Verdict::violated) {
        REQUIRE(neg.witness);
        CHECK(reevaluate(stretch, flat(0.5), *neg.witness) > 1e-8);
    }
}

TEST_CASE("a non-canonical map never comes back preserved") {
    // |T| = diag(1 + 1e-9, 1, 1) is not unitary but barely moves anything.
    // Either a witness turns up or the run stays undecided.
    const TransformSpec spec = LogLinear{diag({1 + 1e-9, 1, 1}), Matrix::Zero(3, 3), false};
    REQUIRE_FALSE(is_canonical(spec, flat(2.0)));
    const auto r = test_preservation(spec, flat(2.0), 3, 20, 4, 1e-8);
    CHECK(r.verdict != Verdict::preserved);
    if (r.verdict == Verdict::violated) {
        REQUIRE(r.witness);
        CHECK(reevaluate(spec, flat(2.0), *r.witness) > 1e-8);
    } else {
        CHECK_FALSE(r.passed());
    }
}

TEST_CASE("preservation reports are reproducible from the seed") {
    const TransformSpec spec = LogLinear{diag({1.3, 1, 1}), Matrix::Zero(3, 3), false};
    const auto r1 = test_preservation(spec, flat(2.0), 3, 30, 77, 1e-8);
    const auto r2 = test_preservation(spec, flat(2.0), 3, 30, 77, 1e-8);
    CHECK(r1.verdict == r2.verdict);
    CHECK(r1.max_deviation == r2.max_deviation);
    REQUIRE(r1.records.size() == r2.records.size());
    for (std::size_t i = 0; i < r1.records.size(); ++i) CHECK(r1.records[i].deviation == r2.records[i].deviation);
}

TEST_CASE("lemma1_probe examples") {
    const Lemma1Probe p{HermitianMatrix(diag({1, 2})), basis(2, 1)};
    const auto r = lemma1_probe(p);
    CHECK(r.target == doctest::Approx(std::exp(2.0)).epsilon(1e-12));
    CHECK(r.final_relative_error < 1e-2);
    CHECK(r.passed);
    REQUIRE(r.sequence.size() == defaults::t_grid().size());
    CHECK(r.sequence.back().first == 1e4);

    Lemma1Probe z{HermitianMatrix(Matrix::Zero(3, 3)), basis(3, 0)};
    for (auto n : {ProbeNorm::operator_norm, ProbeNorm::trace, ProbeNorm::frobenius}) {
        z.norm = n;
        CHECK(lemma1_probe(z).target == doctest::Approx(norm_constant(n) * 1.0));
    }
    CHECK(norm_constant(ProbeNorm::trace) == 1.0);

    Lemma1Probe bad = p;
    bad.x = Vector::Ones(2);
    CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("lemma1 converges for every norm and probe function") {
    for (int k = 0; k < 10; ++k) {
        Rng rng(91, static_cast<std::uint64_t>(k));
        const HermitianMatrix a(random_hermitian(3, rng));
        const Vector x = ginibre(3, 1, rng).col(0);
        Lemma1Probe p{a, x / x.norm()};
        for (const auto& g : {ProbeFunction::exp(), ProbeFunction::exp2(), ProbeFunction::sinh_inverse_exp()}) {
            p.g = g;
            for (auto n : {ProbeNorm::operator_norm, ProbeNorm::trace, ProbeNorm::frobenius}) {
                p.norm = n;
                const auto r = lemma1_probe(p);
                INFO(g.name << " " << to_string(n) << " err " << r.final_relative_error);
                CHECK(r.passed);
            }
        }
    }
}

TEST_CASE("sandwich_check examples") {
    const auto zero = sandwich_check(HermitianMatrix(Matrix::Zero(2, 2)), basis(2, 0));
    CHECK(zero.holds());

    const auto r = sandwich_check(HermitianMatrix(diag({1, 2})), basis(2, 0));
    REQUIRE(r.holds());
    CHECK(std::isfinite(*r.k));
    for (const auto& row : r.rows)
        if (row.t >= *r.k) CHECK((row.lower_ok && row.upper_ok));
    CHECK(r.shifted_agrees);
}

TEST_CASE("sandwich holds on random input for large t") {
    for (int k = 0; k < 20; ++k) {
        Rng rng(93, static_cast<std::uint64_t>(k));
        const HermitianMatrix a(random_hermitian(4, rng));
        Vector x = ginibre(4, 1, rng).col(0);
        const auto r = sandwich_check(a, x / x.norm());
        CHECK(r.holds());
    }
}

TEST_CASE("chaotic_characterization examples") {
    Rng rng(5);
    const PdMatrix b = random_pd(3, rng);
    for (double alpha : {0.5, 2.0}) {
        Rng r1(6);
        const auto same = chaotic_characterization(b, b, alpha, r1, 1e-8);
        CHECK(same.passed());
        CHECK(same.verdict == Verdict::preserved);

        Rng r2(7);
        const auto ordered = chaotic_characterization(PdMatrix(diag({1, 4})), PdMatrix(diag({2, 4})), alpha, r2, 1e-8);
        CHECK(ordered.verdict == Verdict::preserved);

        // Reversed pair: log diag(2, 4) is not below log diag(1, 4).
        Rng r3(8);
        const auto rev = chaotic_characterization(PdMatrix(diag({2, 4})), PdMatrix(diag({1, 4})), alpha, r3, 1e-8);
        CHECK(rev.verdict == Verdict::violated);
        REQUIRE(rev.witness);
        CHECK(rev.witness->deviation > 1e-8);
        CHECK(rev.passed());
    }
}

TEST_CASE("dpi_check examples") {
    const auto div = DivergenceSelector::f_divergence(DivergenceKind::standard, builtin("hellinger"));
    const auto unitary = ChannelSpec::unitary(haar_unitary(3, 4));
    const auto eq = dpi_check(div, 3, 1, 30, 2, 1e-8, unitary);
    CHECK(eq.passed());
    for (const auto& rec : eq.records) CHECK(std::abs(rec.deviation) < 1e-9);

    for (const auto* kind : {"standard", "maximal"}) {
        const auto d = DivergenceSelector::parse(kind, std::nullopt, std::string("neg_sqrt"));
        const auto dep = dpi_check(d, 3, 1, 30, 3, 1e-8, ChannelSpec::completely_depolarizing(3));
        CHECK(dep.passed());
        for (const auto& rec : dep.records) CHECK(rec.deviation <= 1e-9);

        const auto rnd = dpi_check(d, 3, 3, 50, 4, 1e-8);
        CHECK(rnd.passed());
        CHECK(rnd.metrics.at("violations") == 0);
    }

    CHECK_THROWS_AS(dpi_check(flat(0.5), 3, 3, 1, 1, 1e-8), ValidationError);
    ChannelSpec leaky{{0.5 * Matrix::Identity(2, 2)}};
    CHECK_THROWS_AS(leaky.validate(), ValidationError);
}

TEST_CASE("theorem experiments") {
    const auto t1 = verify_theorem1(3, 0.5, 1, 20, 5);
    CHECK(t1.passed());
    const auto t2 = verify_theorem2(3, builtin("hellinger"), 1, 20);
    CHECK(t2.passed());
    const auto t3 = verify_theorem3(3, 1, 10);
    CHECK(t3.passed());
    CHECK(t3.max_deviation < 1e-8);
}

TEST_CASE("morphism_deviation of the identity and of a unitary congruence") {
    Rng rng(97);
    const PsdMatrix a = random_psd(3, 2, rng), b = random_psd(3, 3, rng);
    CHECK(morphism_deviation([](const PsdMatrix& m) { return m; }, a, b) < 1e-12);
    const Matrix u = haar_unitary(3, rng);
    const auto conj = [&u](const PsdMatrix& m) { return PsdMatrix(Matrix(u * m.matrix() * u.adjoint())); };
    CHECK(morphism_deviation(conj, a, b) < 1e-9);
}

TEST_CASE("suites pass on their defaults and reject unknown names") {
    SuiteConfig cfg;
    cfg.trials = 10;
    for (const auto& s : suites()) {
        INFO(s.name);
        CHECK(s.run(cfg).passed());
    }
    CHECK_THROWS_AS(run_suite("nope", cfg), ValidationError);
}

TEST_CASE("aggregate verdicts") {
    ExperimentReport ok;
    ok.verdict = Verdict::preserved;
    ok.max_deviation = 1e-12;
    ExperimentReport bad = ok;
    bad.verdict = Verdict::violated;
    bad.max_deviation = 0.5;
    CHECK(aggregate("x", 2, 1, {ok, ok}).verdict == Verdict::preserved);
    const auto mixed = aggregate("x", 2, 1, {ok, bad});
    CHECK(mixed.verdict == Verdict::violated);
    CHECK(mixed.max_deviation == 0.5);
    CHECK(verdict_from_string(to_string(Verdict::inconclusive)) == Verdict::inconclusive);
}
