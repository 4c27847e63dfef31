#include "helpers.hpp"

#include "qdiv/errors.hpp"
#include "qdiv/opfunc.hpp"

#include <cmath>
#include <string>
#include <vector>

using namespace qdiv;

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> t;
    for (int i = 0; i < n; ++i) t.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
    return t;
}

const std::vector<std::string> finite_omega = {"neg_sqrt", "hellinger", "min_test", "alpha:0.3", "alpha:0.5",
                                                "alpha:0.8"};

} // namespace

TEST_CASE("h_f examples") {
    CHECK(h_f(builtin("neg_sqrt"), 4.0) == doctest::Approx(2.0));
    CHECK(h_f_quadrature(builtin("neg_sqrt"), 4.0) == doctest::Approx(2.0).epsilon(1e-6));
    for (const auto& n : finite_omega) CHECK(h_f(builtin(n), 0.0) == 0.0);
    CHECK(h_f(builtin("hellinger"), 1.0) == doctest::Approx(2.0));
    CHECK(h_f_quadrature(builtin("hellinger"), 1.0) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("reconstruct_f examples") {
    CHECK(reconstruct_f(builtin("neg_sqrt"), 1.0) == doctest::Approx(-1.0));
    CHECK(reconstruct_f(builtin("hellinger"), 4.0) == doctest::Approx(1.0));
    CHECK(reconstruct_f(builtin("neg_sqrt"), 0.0) == 0.0);
}

TEST_CASE("divided_difference examples") {
    CHECK(divided_difference(builtin("neg_sqrt"), 4.0, 1.0) == doctest::Approx(-1.0 / 3));
    // Diagonal case: f'(t) = -1/(2 sqrt t).
    CHECK(divided_difference(builtin("neg_sqrt"), 4.0, 4.0) == doctest::Approx(-0.25).epsilon(1e-6));
    CHECK(divided_difference(builtin("hellinger"), 2.0, 2.0) == doctest::Approx(1 - 1 / std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("builtin catalog entries") {
    const auto ns = builtin("neg_sqrt");
    CHECK(ns(4.0) == doctest::Approx(-2.0));
    CHECK(ns.f0() == 0.0);
    CHECK(ns.omega() == ExtendedReal(0.0));

    const auto eta = builtin("eta");
    CHECK(eta(0.0) == 0.0);
    CHECK(eta(std::exp(1.0)) == doctest::Approx(std::exp(1.0)));
    CHECK(eta.f0() == 0.0);
    CHECK(eta.omega().is_pos_inf());

    const auto half = power_alpha(0.5);
    for (double t : {0.0, 0.3, 1.0, 7.0}) CHECK(half(t) == doctest::Approx(ns(t)));
    CHECK(half.omega() == ExtendedReal(0.0));

    CHECK_THROWS_AS(builtin("nope"), ValidationError);
    CHECK_THROWS_AS(builtin("alpha:1.5"), ValidationError);
    CHECK_THROWS_AS(builtin("alpha:x"), ValidationError);
}

TEST_CASE("values at t = 1") {
    CHECK(builtin("neg_sqrt")(1.0) == -1.0);
    CHECK(builtin("hellinger")(1.0) == 0.0);
    CHECK(builtin("eta")(1.0) == 0.0);
    CHECK(builtin("min_test")(1.0) == 0.0);
}

TEST_CASE("integral representation reconstructs f for finite-omega built-ins") {
    for (const auto& n : finite_omega) {
        const auto fn = builtin(n);
        for (double t : log_grid(0.01, 100, 25)) {
            INFO(n << " t=" << t);
            CHECK(std::abs(reconstruct_f(fn, t) - fn(t)) <= 1e-6 * (1 + std::abs(fn(t))));
            // The closed form and the quadrature of the measure agree.
            CHECK(std::abs(h_f_quadrature(fn, t) - h_f(fn, t)) <= 1e-6 * (1 + h_f(fn, t)));
        }
    }
}

TEST_CASE("h_f is nondecreasing and concave on the grid") {
    for (const auto& n : finite_omega) {
        const auto fn = builtin(n);
        const auto t = log_grid(0.01, 100, 40);
        double prev_slope = INFINITY;
        for (std::size_t i = 1; i < t.size(); ++i) {
            const double slope = (h_f(fn, t[i]) - h_f(fn, t[i - 1])) / (t[i] - t[i - 1]);
            INFO(n << " t=" << t[i]);
            CHECK(slope >= 0.0);
            CHECK(slope <= prev_slope + 1e-8);
            prev_slope = slope;
        }
    }
}

TEST_CASE("divided differences increase in each argument for non-affine built-ins") {
    for (const auto& n : {"neg_sqrt", "hellinger", "min_test", "eta", "alpha:0.3"}) {
        const auto fn = builtin(n);
        CHECK_FALSE(fn.is_affine());
        const auto grid = log_grid(1.5, 50, 12);
        for (double s : grid) {
            double prev = -INFINITY;
            for (double t : grid) {
                const double dd = divided_difference(fn, t, s);
                INFO(n << " t=" << t << " s=" << s);
                CHECK(dd > prev);
                CHECK(divided_difference(fn, s, t) == doctest::Approx(dd).epsilon(1e-6));
                prev = dd;
            }
        }
    }
}

TEST_CASE("quadrature handles user-supplied atoms") {
    // Single atom at s = 2 with weight 3: h(t) = 3 t / (t + 2).
    MeasureRepresentation mu{{{2.0, 3.0}}, std::nullopt};
    for (double t : {0.1, 1.0, 10.0}) CHECK(integrate_measure(mu, t) == doctest::Approx(3 * t / (t + 2)));
    CHECK(measure_mass(mu) == doctest::Approx(1.0));
}

TEST_CASE("eta has no representation") {
    CHECK_THROWS_AS(builtin("eta").require_representation("test"), UnsupportedFunctionError);
    CHECK_NOTHROW(builtin("hellinger").require_representation("test"));
}
