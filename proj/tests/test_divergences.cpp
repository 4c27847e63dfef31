#include "helpers.hpp"
#include "oracle.hpp"
#include "oracle_values.hpp"

#include "qdiv/divergences.hpp"
#include "qdiv/errors.hpp"
#include "qdiv/lab/random.hpp"
#include "qdiv/means.hpp"

#include <cmath>
#include <string>
#include <vector>

using namespace qdiv;
using testing::diag;
using testing::max_abs;

namespace {

const double log43 = std::log(4.0 / 3.0);

PsdMatrix psd(const Matrix& m) { return PsdMatrix(m); }

double finite(const ExtendedReal& x) {
    REQUIRE(x.is_finite());
    return x.value();
}

// |x - y| for extended reals: infinities must match exactly.
double gap(const ExtendedReal& x, const ExtendedReal& y) {
    if (!x.is_finite() || !y.is_finite()) return x == y ? 0.0 : INFINITY;
    return std::abs(x.value() - y.value());
}

std::vector<DivergenceSelector> all_divergences() {
    std::vector<DivergenceSelector> out;
    for (auto k : {DivergenceKind::renyi, DivergenceKind::sandwiched, DivergenceKind::flat})
        for (double a : {0.5, 2.0}) out.push_back(DivergenceSelector::renyi_family(k, a));
    for (const char* f : {"neg_sqrt", "hellinger", "min_test"}) {
        out.push_back(DivergenceSelector::f_divergence(DivergenceKind::standard, builtin(f)));
        out.push_back(DivergenceSelector::f_divergence(DivergenceKind::maximal, builtin(f)));
    }
    out.push_back(DivergenceSelector::f_divergence(DivergenceKind::standard, builtin("eta")));
    return out;
}

} // namespace

TEST_CASE("renyi examples and case taxonomy") {
    CHECK(finite(renyi(psd(diag({.5, .5})), psd(diag({.25, .75})), RenyiParameter(2))) == doctest::Approx(log43));
    const PsdMatrix rho = lab::random_density(3, 5);
    CHECK(std::abs(finite(renyi(rho, rho, RenyiParameter(0.5)))) < 1e-12);
    for (double a : {0.3, 0.5, 2.0, 3.0})
        CHECK(renyi(psd(diag({1, 0})), psd(diag({0, 1})), RenyiParameter(a)).is_pos_inf());
    CHECK(renyi(PsdMatrix::zero(2), psd(diag({1, 1})), RenyiParameter(0.5)).is_neg_inf());
    // alpha > 1 with supp A outside supp B; alpha < 1 stays finite.
    CHECK(renyi(psd(diag({1, 1})), psd(diag({1, 0})), RenyiParameter(2)).is_pos_inf());
    CHECK(renyi(psd(diag({1, 1})), psd(diag({1, 0})), RenyiParameter(0.5)).is_finite());
    CHECK_THROWS_AS(RenyiParameter(1.0), ValidationError);
    CHECK_THROWS_AS(RenyiParameter(0.0), ValidationError);
}

TEST_CASE("sandwiched examples") {
    CHECK(finite(sandwiched_renyi(psd(diag({.5, .5})), psd(diag({.25, .75})), RenyiParameter(2))) ==
          doctest::Approx(log43));
    const PsdMatrix rho = lab::random_density(3, 6);
    CHECK(std::abs(finite(sandwiched_renyi(rho, rho, RenyiParameter(2)))) < 1e-12);

    Matrix pure(2, 2);
    pure << 0.5, 0.5, 0.5, 0.5;
    const PsdMatrix a(pure), b(diag({2.0 / 3, 1.0 / 3}));
    const double s = finite(sandwiched_renyi(a, b, RenyiParameter(2)));
    CHECK(s == doctest::Approx(oracle::pure_sandwiched_2).epsilon(1e-12));
    CHECK(finite(renyi(a, b, RenyiParameter(2))) == doctest::Approx(oracle::pure_renyi_2).epsilon(1e-12));
    CHECK(s <= finite(renyi(a, b, RenyiParameter(2))));
}

TEST_CASE("flat examples") {
    CHECK(finite(flat_renyi(psd(diag({.5, .5})), psd(diag({.25, .75})), RenyiParameter(2))) == doctest::Approx(log43));
    CHECK(flat_renyi(psd(diag({1, 0})), psd(diag({0, 1})), RenyiParameter(0.5)).is_pos_inf());
    CHECK(flat_renyi(psd(diag({1, 1})), psd(diag({1, 0})), RenyiParameter(2)).is_pos_inf());
    CHECK(flat_renyi(PsdMatrix::zero(2), psd(diag({1, 1})), RenyiParameter(2)).is_neg_inf());

    // D(xx^* || B) = -<(log B) x, x> for every alpha.
    for (int k = 0; k < 10; ++k) {
        lab::Rng rng(51, static_cast<std::uint64_t>(k));
        const PdMatrix b = lab::random_pd(3, rng);
        Eigen::VectorXcd x(3);
        for (Index i = 0; i < 3; ++i) x(i) = rng.complex_normal();
        x.normalize();
        const double want = -(x.adjoint() * hat_log(b).matrix() * x)(0, 0).real();
        for (double a : {0.5, 2.0, 3.0})
            CHECK(finite(flat_renyi(PsdMatrix(Matrix(x * x.adjoint())), b, RenyiParameter(a))) ==
                  doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("q_flat examples") {
    const PdMatrix b = lab::random_pd(3, 8);
    CHECK(finite(q_flat(b, b, RenyiParameter(0.5))) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(finite(q_flat(psd(diag({.5, .5})), psd(diag({.25, .75})), RenyiParameter(2))) == doctest::Approx(4.0 / 3));
    // A = 0: exp((alpha - 1) * (-inf)).
    CHECK(q_flat(PsdMatrix::zero(2), psd(diag({1, 1})), RenyiParameter(0.5)).is_pos_inf());
    CHECK(finite(q_flat(PsdMatrix::zero(2), psd(diag({1, 1})), RenyiParameter(2))) == 0.0);
}

TEST_CASE("Rényi families agree with the mpmath oracle") {
    const PsdMatrix a(testing::oracle_a()), b(testing::oracle_b());
    struct Row {
        double alpha, r, s, f;
    };
    for (const Row& row : {Row{0.5, oracle::renyi_05, oracle::sandwiched_05, oracle::flat_05},
                           Row{2.0, oracle::renyi_2, oracle::sandwiched_2, oracle::flat_2},
                           Row{0.3, oracle::renyi_03, oracle::sandwiched_03, oracle::flat_03},
                           Row{3.0, oracle::renyi_3, oracle::sandwiched_3, oracle::flat_3}}) {
        const RenyiParameter p(row.alpha);
        INFO("alpha=" << row.alpha);
        CHECK(std::abs(finite(renyi(a, b, p)) - row.r) < 1e-12);
        CHECK(std::abs(finite(sandwiched_renyi(a, b, p)) - row.s) < 1e-12);
        CHECK(std::abs(finite(flat_renyi(a, b, p)) - row.f) < 1e-12);
    }
}

TEST_CASE("classical f-divergence examples") {
    const auto eta = builtin("eta");
    const std::vector<double> p{.5, .5}, q{.25, .75};
    CHECK(finite(classical_f_divergence(q, q, builtin("hellinger"))) == 0.0);
    CHECK(finite(classical_f_divergence(q, q, builtin("neg_sqrt"))) == doctest::Approx(-1.0));
    CHECK(finite(classical_f_divergence(p, q, eta)) == doctest::Approx(0.5 * log43));
    CHECK(classical_f_divergence({1, 0}, {0, 1}, eta).is_pos_inf());
}

TEST_CASE("standard f-divergence examples") {
    CHECK(finite(standard_f_divergence(psd(diag({.5, .5})), psd(diag({.25, .75})), builtin("eta"))) ==
          doctest::Approx(0.5 * log43));
    const PsdMatrix a = lab::random_psd(3, 2, 12);
    CHECK(finite(standard_f_divergence(a, a, builtin("neg_sqrt"))) == doctest::Approx(-a.trace()));
    CHECK(std::abs(finite(standard_f_divergence(a, a, builtin("hellinger")))) < 1e-12);

    const PsdMatrix oa(testing::oracle_a()), ob(testing::oracle_b());
    CHECK(std::abs(finite(standard_f_divergence(oa, ob, builtin("neg_sqrt"))) - oracle::standard_neg_sqrt) < 1e-12);
    CHECK(std::abs(finite(standard_f_divergence(oa, ob, builtin("hellinger"))) - oracle::standard_hellinger) < 1e-12);
    CHECK(std::abs(finite(standard_f_divergence(oa, ob, builtin("eta"))) - oracle::standard_eta) < 1e-12);
    CHECK(std::abs(finite(standard_f_divergence(oa, ob, builtin("min_test"))) - oracle::standard_min_test) < 1e-12);
}

TEST_CASE("standard f-divergence equals the quasi-entropy with K = I") {
    for (int k = 0; k < 20; ++k) {
        lab::Rng rng(61, static_cast<std::uint64_t>(k));
        const PdMatrix b = lab::random_pd(3, rng);
        const PsdMatrix a = lab::random_psd(3, rng.uniform_int(1, 3), rng);
        const auto fn = builtin("neg_sqrt");
        const double q = quasi_entropy({a, b, Matrix::Identity(3, 3), fn});
        CHECK(std::abs(finite(standard_f_divergence(a, b, fn)) - q) < 1e-10);
    }
}

TEST_CASE("quasi-entropy examples and superoperator oracle") {
    const auto fn = builtin("neg_sqrt");
    // K = I on a commuting pair reduces to the classical value.
    const std::vector<double> p{.2, .3, .5}, q{.5, .25, .25};
    const double cls = finite(classical_f_divergence(p, q, fn));
    CHECK(quasi_entropy({psd(diag({.2, .3, .5})), PdMatrix(diag({.5, .25, .25})), Matrix::Identity(3, 3), fn}) ==
          doctest::Approx(cls));
    CHECK(quasi_entropy({psd(diag({.2, .3, .5})), PdMatrix(diag({.5, .25, .25})), Matrix::Zero(3, 3), fn}) == 0.0);

    for (int k = 0; k < 10; ++k) {
        lab::Rng rng(71, static_cast<std::uint64_t>(k));
        const PdMatrix a = lab::random_pd(3, rng), b = lab::random_pd(3, rng);
        const Matrix u = lab::haar_unitary(3, rng);
        for (const char* name : {"neg_sqrt", "hellinger"}) {
            const auto f = builtin(name);
            const double want = oracle::quasi_entropy(a.matrix(), b.matrix(), u, [&f](double t) { return f(t); });
            CHECK(std::abs(quasi_entropy({a, b, u, f}) - want) < 1e-10);
        }
    }
}

TEST_CASE("maximal f-divergence examples") {
    const PdMatrix id(Matrix(Matrix::Identity(2, 2)));
    CHECK(maximal_f_divergence(PsdMatrix::identity(2), id, builtin("neg_sqrt")) == doctest::Approx(-2.0));
    CHECK(maximal_f_divergence(psd(diag({4, 1})), id, builtin("neg_sqrt")) == doctest::Approx(-3.0));
    CHECK(maximal_f_divergence(psd(diag({4, 1})), id, builtin("hellinger")) == doctest::Approx(1.0));
    const PdMatrix b = lab::random_pd(3, 13);
    CHECK(std::abs(maximal_f_divergence(b, b, builtin("hellinger"))) < 1e-12);

    const PsdMatrix oa(testing::oracle_a());
    const PdMatrix ob(testing::oracle_b());
    CHECK(std::abs(maximal_f_divergence(oa, ob, builtin("neg_sqrt")) - oracle::maximal_neg_sqrt) < 1e-12);
    CHECK(std::abs(maximal_f_divergence(oa, ob, builtin("hellinger")) - oracle::maximal_hellinger) < 1e-12);
    CHECK(std::abs(maximal_f_divergence(oa, ob, builtin("eta")) - oracle::maximal_eta) < 1e-12);
    CHECK(std::abs(maximal_f_divergence(oa, ob, builtin("min_test")) - oracle::maximal_min_test) < 1e-12);
}

TEST_CASE("maximal f-divergence epsilon limit") {
    const LimitSchedule sched;
    for (int k = 0; k < 10; ++k) {
        lab::Rng rng(81, static_cast<std::uint64_t>(k));
        const PdMatrix b = lab::random_pd(3, rng);
        const PsdMatrix a = lab::random_psd(3, rng.uniform_int(1, 3), rng);
        for (const char* f : {"neg_sqrt", "hellinger", "alpha:0.3"}) {
            const double direct = maximal_f_divergence(a, b, builtin(f));
            CHECK(std::abs(maximal_f_divergence_limit(a, b, builtin(f), sched) - direct) < sched.conv_tol);
        }
    }
    CHECK(std::abs(maximal_f_divergence_limit(psd(diag({1, 0})), psd(diag({0, 1})), builtin("neg_sqrt"), sched)) <
          1e-7);
    const PsdMatrix a = lab::random_psd(3, 2, 14);
    for (const char* f : {"neg_sqrt", "hellinger", "min_test"}) {
        const auto fn = builtin(f);
        CHECK(maximal_f_divergence_psd(a, PsdMatrix::zero(3), fn) == doctest::Approx(fn.omega().value() * a.trace()));
        CHECK(maximal_f_divergence_limit(a, PsdMatrix::zero(3), fn, sched) ==
              doctest::Approx(fn.omega().value() * a.trace()).epsilon(1e-6));
    }
    CHECK_THROWS_AS(maximal_f_divergence_limit(a, a, builtin("eta"), sched), UnsupportedFunctionError);
}

TEST_CASE("epsilon limit on a singular B matches the high-precision oracle") {
    const PsdMatrix a(testing::oracle_a3()), b(testing::oracle_b3());
    REQUIRE(b.rank() == 2);
    REQUIRE_FALSE(support_contained(a, b));
    const LimitSchedule sched;
    CHECK(std::abs(maximal_f_divergence_limit(a, b, builtin("neg_sqrt"), sched) - oracle::singular_limit_neg_sqrt) <
          sched.conv_tol);
    CHECK(std::abs(maximal_f_divergence_limit(a, b, builtin("hellinger"), sched) - oracle::singular_limit_hellinger) <
          sched.conv_tol);
    CHECK(std::abs(maximal_f_via_mean(a, b, builtin("neg_sqrt"), sched) - oracle::singular_limit_neg_sqrt) <
          sched.conv_tol);
}

TEST_CASE("non-convergence raises ConvergenceError with the iterates") {
    LimitSchedule tight;
    tight.conv_tol = 1e-300;
    tight.max_steps = 5;
    try {
        maximal_f_divergence_limit(PsdMatrix(testing::oracle_a3()), PsdMatrix(testing::oracle_b3()), builtin("neg_sqrt"), tight);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.iterates().size() == 6);
    }
    LimitSchedule bad;
    bad.ratio = 1.5;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("mean route examples") {
    const LimitSchedule sched;
    for (int k = 0; k < 10; ++k) {
        lab::Rng rng(91, static_cast<std::uint64_t>(k));
        const PdMatrix b = lab::random_pd(3, rng);
        const PsdMatrix a = lab::random_density(3, rng);
        const Matrix gm = oracle::geometric_mean(b.matrix(), a.matrix());
        CHECK(std::abs(maximal_f_via_mean(a, b, builtin("neg_sqrt"), sched) + oracle::trace(gm)) < 1e-7);
        for (const char* f : {"neg_sqrt", "hellinger", "min_test"})
            CHECK(std::abs(maximal_f_via_mean(a, a, builtin(f), sched) - builtin(f)(1.0) * a.trace()) < 1e-7);
    }
    const PsdMatrix a = lab::random_psd(3, 3, 15);
    CHECK(maximal_f_via_mean(a, PsdMatrix::zero(3), builtin("hellinger"), sched) == doctest::Approx(a.trace()));
}

TEST_CASE("unitary, transpose and scaling behaviour of every divergence") {
    for (int k = 0; k < 20; ++k) {
        lab::Rng rng(101, static_cast<std::uint64_t>(k));
        const PdMatrix a = lab::random_pd(3, rng), b = lab::random_pd(3, rng);
        const Matrix u = lab::haar_unitary(3, rng);
        const double lambda = rng.uniform(0.2, 5);
        for (const auto& div : all_divergences()) {
            INFO(div.label());
            const ExtendedReal base = div(a, b);
            const PsdMatrix ua(Matrix(u * a.matrix() * u.adjoint())), ub(Matrix(u * b.matrix() * u.adjoint()));
            CHECK(gap(div(ua, ub), base) <= 1e-8 * std::max(1.0, std::abs(base.to_double())));
            CHECK(gap(div(transpose(a), transpose(b)), base) <= 1e-8 * std::max(1.0, std::abs(base.to_double())));
            const PsdMatrix la(Matrix(lambda * a.matrix())), lb(Matrix(lambda * b.matrix()));
            const ExtendedReal want = div.is_renyi() ? base : lambda * base;
            CHECK(gap(div(la, lb), want) <= 1e-8 * std::max(1.0, std::abs(want.to_double())));
        }
    }
}

TEST_CASE("invariances hold on singular pairs, including infinite values") {
    for (int k = 0; k < 20; ++k) {
        lab::Rng rng(111, static_cast<std::uint64_t>(k));
        const PsdMatrix a = lab::random_psd(3, rng.uniform_int(1, 3), rng);
        const PsdMatrix b = lab::random_psd(3, rng.uniform_int(1, 3), rng);
        const Matrix u = lab::haar_unitary(3, rng);
        for (auto kind : {DivergenceKind::renyi, DivergenceKind::sandwiched, DivergenceKind::flat}) {
            for (double al : {0.5, 2.0}) {
                const auto div = DivergenceSelector::renyi_family(kind, al);
                const ExtendedReal base = div(a, b);
                const PsdMatrix ua(Matrix(u * a.matrix() * u.adjoint())), ub(Matrix(u * b.matrix() * u.adjoint()));
                INFO(div.label());
                CHECK(gap(div(ua, ub), base) <= 1e-8 * std::max(1.0, std::abs(base.to_double())));
            }
        }
    }
}

TEST_CASE("commuting pairs: the three Rényi families coincide") {
    for (int k = 0; k < 50; ++k) {
        const auto [a, b] = lab::random_commuting_pair(4, static_cast<std::uint64_t>(200 + k));
        for (double al : {0.3, 0.5, 2.0, 3.0}) {
            const RenyiParameter p(al);
            const ExtendedReal r = renyi(a, b, p);
            CHECK(gap(r, sandwiched_renyi(a, b, p)) < 1e-8);
            CHECK(gap(r, flat_renyi(a, b, p)) < 1e-8);
        }
    }
}

TEST_CASE("standard S_f is below maximal D_f") {
    for (int k = 0; k < 50; ++k) {
        lab::Rng rng(121, static_cast<std::uint64_t>(k));
        const PsdMatrix b = lab::random_psd(4, rng.uniform_int(2, 4), rng);
        // supp A inside supp B: A = B^{1/2} G B^{1/2} for random PSD G.
        const Matrix h = pseudo_power(b, 0.5).matrix();
        const Matrix g = lab::random_psd(4, 4, rng).matrix();
        Matrix am = h * g * h;
        am /= am.trace().real();
        const PsdMatrix a(am);
        const PsdMatrix bn(Matrix(b.matrix() / b.trace()));
        for (const char* f : {"neg_sqrt", "hellinger", "min_test", "alpha:0.3"}) {
            const auto fn = builtin(f);
            INFO(f);
            CHECK(finite(standard_f_divergence(a, bn, fn)) <= maximal_f_divergence_psd(a, bn, fn) + 1e-8);
        }
    }
}

TEST_CASE("direct, epsilon-limit and mean route agree on PD B") {
    const LimitSchedule sched;
    for (int k = 0; k < 30; ++k) {
        lab::Rng rng(131, static_cast<std::uint64_t>(k));
        const PdMatrix b = lab::random_pd(4, rng);
        const PsdMatrix a = lab::random_psd(4, rng.uniform_int(1, 4), rng);
        for (const char* f : {"neg_sqrt", "hellinger", "min_test"}) {
            const auto fn = builtin(f);
            const double direct = maximal_f_divergence(a, b, fn);
            CHECK(std::abs(maximal_f_divergence_limit(a, b, fn, sched) - direct) < 1e-6);
            CHECK(std::abs(maximal_f_via_mean(a, b, fn, sched) - direct) < 1e-6);
        }
    }
}

TEST_CASE("psd dispatch") {
    const auto fn = builtin("neg_sqrt");
    // supp A inside a singular supp B: compression, no limit needed.
    const PsdMatrix a(diag({0.3, 0.7, 0})), b(diag({0.5, 0.5, 0}));
    CHECK(maximal_f_divergence_psd(a, b, fn) == doctest::Approx(-(std::sqrt(0.15) + std::sqrt(0.35))));
    // Infinite omega outside the support is unsupported.
    CHECK_THROWS_AS(maximal_f_divergence_psd(PsdMatrix(diag({0, 1, 1})), b, builtin("eta")), UnsupportedFunctionError);
    // Eta is fine through the direct formula.
    CHECK(maximal_f_divergence_psd(a, b, builtin("eta")) == doctest::Approx(0.3 * std::log(0.6) + 0.7 * std::log(1.4)));
}

TEST_CASE("DivergenceSelector validates parameter combinations") {
    CHECK_THROWS_AS(DivergenceSelector::parse("flat", std::nullopt, std::nullopt), ValidationError);
    CHECK_THROWS_AS(DivergenceSelector::parse("flat", 0.5, std::string("hellinger")), ValidationError);
    CHECK_THROWS_AS(DivergenceSelector::parse("maximal", 0.5, std::string("hellinger")), ValidationError);
    CHECK_THROWS_AS(DivergenceSelector::parse("maximal", std::nullopt, std::nullopt), ValidationError);
    CHECK_THROWS_AS(DivergenceSelector::parse("petz", 0.5, std::nullopt), ValidationError);
    CHECK_THROWS_AS(DivergenceSelector::parse("renyi", 1.0, std::nullopt), ValidationError);
    const auto d = DivergenceSelector::parse("flat", 0.5, std::nullopt);
    CHECK(d.label() == "flat[alpha=0.5]");
    CHECK(DivergenceSelector::parse("maximal", std::nullopt, std::string("hellinger")).label() == "maximal[hellinger]");
    CHECK_THROWS_AS(renyi(PsdMatrix::identity(2), PsdMatrix::identity(3), RenyiParameter(2)), ValidationError);
}
