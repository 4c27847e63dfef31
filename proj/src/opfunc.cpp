#include "qdiv/opfunc.hpp"

#include "qdiv/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <charconv>
#include <cmath>
#include <numbers>

namespace qdiv {

namespace {

using Gauss8 = boost::math::quadrature::gauss<double, 8>;

// int_0^inf kernel(s) rho(s) ds over the density part.
double integrate_density(const ScalarFunction& rho, const ScalarFunction& kernel, const QuadratureGrid& grid) {
    if (!(grid.s_min > 0 && grid.s_max > grid.s_min && grid.panels > 0))
        throw ValidationError("quadrature grid: need 0 < s_min < s_max and panels > 0");
    const double u0 = std::log(grid.s_min);
    const double u1 = std::log(grid.s_max);
    const double width = (u1 - u0) / grid.panels;
    double sum = 0.0;
    for (int k = 0; k < grid.panels; ++k) {
        const double a = u0 + k * width;
        sum += Gauss8::integrate(
            [&](double u) {
                const double s = std::exp(u);
                return kernel(s) * rho(s) * s;
            },
            a, a + width);
    }

    // Tails: fit rho ~ s^beta at each end.
    auto local_exponent = [&](double s) {
        const double r0 = rho(s), r1 = rho(s * 1.01);
        if (r0 <= 0 || r1 <= 0) return std::nan("");
        return std::log(r1 / r0) / std::log(1.01);
    };
    const double lo = grid.s_min, hi = grid.s_max;
    if (rho(lo) > 0) {
        const double beta = local_exponent(lo);
        if (!(beta > -1)) throw ValidationError("measure density is not integrable at 0");
        sum += kernel(lo) * rho(lo) * lo / (beta + 1);
    }
    if (rho(hi) > 0) {
        const double beta = local_exponent(hi);
        if (!(beta < 0)) throw ValidationError("measure density decays too slowly at infinity");
        sum += kernel(hi) * hi * rho(hi) / (-beta);
    }
    return sum;
}

double parse_double(const std::string& text, const std::string& what) {
    double v = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw ValidationError("cannot parse " + what + " from '" + text + "'");
    return v;
}

MeasureRepresentation power_density(double coefficient, double exponent) {
    return {{}, ScalarFunction([=](double s) { return coefficient * std::pow(s, exponent); })};
}

} // namespace

double integrate_measure(const MeasureRepresentation& mu, double t, const QuadratureGrid& grid) {
    if (t < 0) throw DomainError("integrate_measure: t must be >= 0");
    if (t == 0) return 0.0;
    double sum = 0.0;
    for (auto [s, w] : mu.atoms) sum += w * t / (t + s);
    if (mu.density)
        sum += integrate_density(*mu.density, [t](double s) { return t / (t + s); }, grid);
    return sum;
}

double measure_mass(const MeasureRepresentation& mu, const QuadratureGrid& grid) {
    double sum = 0.0;
    for (auto [s, w] : mu.atoms) {
        if (!(s > 0) || w < 0) throw ValidationError("measure atom needs s > 0 and w >= 0");
        sum += w / (1 + s);
    }
    if (mu.density) sum += integrate_density(*mu.density, [](double s) { return 1.0 / (1.0 + s); }, grid);
    if (!std::isfinite(sum)) throw ValidationError("measure: int dnu/(1+s) is not finite");
    return sum;
}

// ---------------------------------------------------------------------------

OperatorConvexFunction::OperatorConvexFunction(std::string name, ScalarFunction eval, double f0, ExtendedReal omega)
    : name_(std::move(name)), eval_(std::move(eval)), f0_(f0), omega_(omega) {
    if (omega_.is_neg_inf()) throw ValidationError("operator convex function: omega cannot be -inf");
}

OperatorConvexFunction& OperatorConvexFunction::with_h(ScalarFunction h) {
    h_ = std::move(h);
    return *this;
}

OperatorConvexFunction& OperatorConvexFunction::with_measure(MeasureRepresentation mu) {
    measure_mass(mu);
    measure_ = std::move(mu);
    return *this;
}

OperatorConvexFunction& OperatorConvexFunction::with_minimum(FunctionMinimum m) {
    minimum_ = m;
    return *this;
}

OperatorConvexFunction& OperatorConvexFunction::with_affine(bool affine) {
    affine_ = affine;
    return *this;
}

double OperatorConvexFunction::operator()(double t) const {
    if (!(t >= 0)) throw DomainError(name_ + ": evaluated at negative argument " + std::to_string(t));
    return eval_(t);
}

void OperatorConvexFunction::require_representation(const char* caller) const {
    if (!omega_.is_finite())
        throw UnsupportedFunctionError(std::string(caller) + ": function '" + name_ +
                                       "' has omega(f) = +inf; only finite-slope functions are supported");
    if (!h_ && !measure_)
        throw UnsupportedFunctionError(std::string(caller) + ": function '" + name_ +
                                       "' carries neither a closed-form h_f nor a measure");
}

double h_f(const OperatorConvexFunction& fn, double t) {
    fn.require_representation("h_f");
    if (t < 0) throw DomainError("h_f: t must be >= 0");
    if (t == 0) return 0.0;
    if (fn.closed_form_h()) return (*fn.closed_form_h())(t);
    return integrate_measure(*fn.measure(), t);
}

double h_f_quadrature(const OperatorConvexFunction& fn, double t, const QuadratureGrid& grid) {
    if (!fn.measure()) throw UnsupportedFunctionError("h_f_quadrature: '" + fn.name() + "' has no measure");
    return integrate_measure(*fn.measure(), t, grid);
}

double reconstruct_f(const OperatorConvexFunction& fn, double t) {
    return fn.f0() + fn.omega().value() * t - h_f(fn, t);
}

double divided_difference(const OperatorConvexFunction& fn, double t, double s) {
    if (t < 0 || s < 0) throw DomainError("divided_difference: arguments must be >= 0");
    const double scale = std::max(1.0, std::max(t, s));
    if (std::abs(t - s) > 1e-6 * scale) return (fn(t) - fn(s)) / (t - s);
    const double m = 0.5 * (t + s);
    const double h = 1e-5 * std::max(1.0, m);
    if (m - h < 0) return (fn(m + h) - fn(m)) / h;
    return (fn(m + h) - fn(m - h)) / (2 * h);
}

OperatorConvexFunction power_alpha(double a) {
    if (!(a > 0 && a < 1)) throw ValidationError("power_alpha: exponent must lie in (0, 1), got " + std::to_string(a));
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), a);
    OperatorConvexFunction fn("alpha:" + std::string(buf, res.ptr), [a](double t) { return -std::pow(t, a); }, 0.0,
                              ExtendedReal(0.0));
    fn.with_h([a](double t) { return std::pow(t, a); })
        .with_measure(power_density(std::sin(a * std::numbers::pi) / std::numbers::pi, a - 1));
    return fn;
}

OperatorConvexFunction builtin(const std::string& name) {
    using std::numbers::pi;
    if (name == "neg_sqrt") {
        OperatorConvexFunction fn(name, [](double t) { return -std::sqrt(t); }, 0.0, ExtendedReal(0.0));
        fn.with_h([](double t) { return std::sqrt(t); }).with_measure(power_density(1 / pi, -0.5));
        return fn;
    }
    if (name == "hellinger") {
        OperatorConvexFunction fn(
            name, [](double t) { return (1 - std::sqrt(t)) * (1 - std::sqrt(t)); }, 1.0, ExtendedReal(1.0));
        fn.with_h([](double t) { return 2 * std::sqrt(t); })
            .with_measure(power_density(2 / pi, -0.5))
            .with_minimum({0.0, 1.0});
        return fn;
    }
    if (name == "min_test") {
        OperatorConvexFunction fn(name, [](double t) { return 2 * t - 2 * std::sqrt(t); }, 0.0, ExtendedReal(2.0));
        fn.with_h([](double t) { return 2 * std::sqrt(t); })
            .with_measure(power_density(2 / pi, -0.5))
            .with_minimum({-0.5, 0.25});
        return fn;
    }
    if (name == "eta") {
        OperatorConvexFunction fn(name, [](double t) { return t == 0 ? 0.0 : t * std::log(t); }, 0.0,
                                  ExtendedReal::pos_inf());
        fn.with_minimum({-1 / std::numbers::e, 1 / std::numbers::e});
        return fn;
    }
    if (name.rfind("alpha:", 0) == 0) return power_alpha(parse_double(name.substr(6), "alpha exponent"));
    throw ValidationError("unknown function '" + name + "' (expected one of neg_sqrt, hellinger, eta, min_test, alpha:<a>)");
}

std::vector<std::string> builtin_names() { return {"neg_sqrt", "hellinger", "eta", "min_test", "alpha:<a>"}; }

} // namespace qdiv
