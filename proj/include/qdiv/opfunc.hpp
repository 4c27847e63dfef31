#pragma once

// Operator convex functions on [0, inf) together with the data of their
// integral representation
//
//     f(t) = f(0) + omega(f) t - int_(0,inf) t / (t + s) dnu_f(s),
//
// where omega(f) = lim f(t)/t. The integral term is h_f(t).

#include "qdiv/extended_real.hpp"
#include "qdiv/linalg.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qdiv {

/// Positive measure on (0, inf): point masses plus an optional density.
struct MeasureRepresentation {
    std::vector<std::pair<double, double>> atoms; // (s_i > 0, w_i >= 0)
    std::optional<ScalarFunction> density;
};

struct QuadratureGrid {
    double s_min = 1e-8;
    double s_max = 1e8;
    int panels = 50;     // Gauss-Legendre panels in log s
    int nodes_per_panel = 8;
};

/// Integrates t/(t+s) against the measure. The density part uses composite
/// Gauss-Legendre in log s over [s_min, s_max]; the two tails are closed with
/// a power-law fit at the endpoints.
double integrate_measure(const MeasureRepresentation& mu, double t, const QuadratureGrid& grid = {});

/// int dmu(s) / (1 + s), which must be finite for a valid representation.
double measure_mass(const MeasureRepresentation& mu, const QuadratureGrid& grid = {});

struct FunctionMinimum {
    double value;  // c = min f
    double argmin; // t* with f(t*) = c
};

class OperatorConvexFunction {
  public:
    OperatorConvexFunction(std::string name, ScalarFunction eval, double f0, ExtendedReal omega);

    OperatorConvexFunction& with_h(ScalarFunction h);
    OperatorConvexFunction& with_measure(MeasureRepresentation mu);
    OperatorConvexFunction& with_minimum(FunctionMinimum m);
    OperatorConvexFunction& with_affine(bool affine);

    const std::string& name() const { return name_; }
    double operator()(double t) const;
    double f0() const { return f0_; }
    const ExtendedReal& omega() const { return omega_; }
    bool has_finite_omega() const { return omega_.is_finite(); }
    const std::optional<ScalarFunction>& closed_form_h() const { return h_; }
    const std::optional<MeasureRepresentation>& measure() const { return measure_; }
    const std::optional<FunctionMinimum>& minimum() const { return minimum_; }
    bool is_affine() const { return affine_; }

    /// Throws UnsupportedFunctionError unless omega is finite and h_f is
    /// available (closed form or measure).
    void require_representation(const char* caller) const;

  private:
    std::string name_;
    ScalarFunction eval_;
    double f0_;
    ExtendedReal omega_;
    std::optional<ScalarFunction> h_;
    std::optional<MeasureRepresentation> measure_;
    std::optional<FunctionMinimum> minimum_;
    bool affine_ = false;
};

/// h_f(t) = int t/(t+s) dnu_f(s). Uses the closed form when present.
double h_f(const OperatorConvexFunction& fn, double t);
/// h_f from the measure only; for checking closed forms.
double h_f_quadrature(const OperatorConvexFunction& fn, double t, const QuadratureGrid& grid = {});

/// f(0) + omega t - h_f(t).
double reconstruct_f(const OperatorConvexFunction& fn, double t);

/// (f(t) - f(s)) / (t - s); the derivative by central difference when t ~ s.
double divided_difference(const OperatorConvexFunction& fn, double t, double s);

/// Catalog entries: neg_sqrt, hellinger, eta, min_test, alpha:<a> (0 < a < 1).
/// Throws ValidationError on unknown names or out-of-range parameters.
OperatorConvexFunction builtin(const std::string& name);
/// f(t) = -t^a.
OperatorConvexFunction power_alpha(double a);

/// The names accepted by builtin(), with alpha:<a> shown as a pattern.
std::vector<std::string> builtin_names();

} // namespace qdiv
