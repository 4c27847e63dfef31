#pragma once

// Rényi-type relative entropies and quantum f-divergences on PSD matrices.
//
// All three Rényi families keep the (tr A)^{-1} normalization for
// unnormalized A:
//
//   D_alpha       = (alpha-1)^{-1} log((tr A)^{-1} tr A^alpha B^{1-alpha})
//   D*_alpha      = (alpha-1)^{-1} log((tr A)^{-1} tr (B^s A B^s)^alpha),  s = (1-alpha)/(2 alpha)
//   D^flat_alpha  = (alpha-1)^{-1} log((tr A)^{-1} tr P exp(alpha P logA P + (1-alpha) P logB P))
//
// with P onto supp A ∩ supp B, logs on supports and powers in the
// Moore-Penrose sense. A = 0 gives -inf. Orthogonal supports, or alpha > 1
// with supp A not inside supp B, give +inf (D^flat only uses the second rule;
// for it P = 0 yields a zero trace and thus +inf when alpha < 1).

#include "qdiv/defaults.hpp"
#include "qdiv/extended_real.hpp"
#include "qdiv/linalg.hpp"
#include "qdiv/opfunc.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qdiv {

/// alpha in (0, 1) ∪ (1, inf).
class RenyiParameter {
  public:
    explicit RenyiParameter(double alpha);
    double value() const { return alpha_; }
    bool below_one() const { return alpha_ < 1; }

  private:
    double alpha_;
};

ExtendedReal renyi(const PsdMatrix& a, const PsdMatrix& b, RenyiParameter alpha);
ExtendedReal sandwiched_renyi(const PsdMatrix& a, const PsdMatrix& b, RenyiParameter alpha);
ExtendedReal flat_renyi(const PsdMatrix& a, const PsdMatrix& b, RenyiParameter alpha);

/// exp((alpha - 1) D^flat_alpha(A || B)) with the continuous extension of exp.
ExtendedReal q_flat(const PsdMatrix& a, const PsdMatrix& b, RenyiParameter alpha);

/// log Q^flat_alpha for positive definite arguments given by their logarithms:
/// log tr exp(alpha L_A + (1 - alpha) L_B) - log tr exp(L_A). Stays finite
/// for spectra far below zero, e.g. L_A = t (P - I) with large t.
double log_q_flat_from_logs(const HermitianMatrix& log_a, const HermitianMatrix& log_b, RenyiParameter alpha);

/// sum_i q_i f(p_i / q_i), with omega(f) p_i for q_i = 0.
ExtendedReal classical_f_divergence(const std::vector<double>& p, const std::vector<double>& q,
                                    const OperatorConvexFunction& fn);

/// Spectral double sum over eigenvalue groups of A and B:
/// sum_a sum_{b != 0} b f(a/b) tr P_a Q_b + omega(f) sum_a a tr P_a Q_0.
ExtendedReal standard_f_divergence(const PsdMatrix& a, const PsdMatrix& b, const OperatorConvexFunction& fn);

struct QuasiEntropyInstance {
    PsdMatrix a;
    PdMatrix b;
    Matrix k;
    OperatorConvexFunction fn;
};

/// <f(L_A R_{B^{-1}}) K B^{1/2}, K B^{1/2}>_HS.
double quasi_entropy(const QuasiEntropyInstance& inst);

/// tr B f(B^{-1/2} A B^{-1/2}) for positive definite B.
double maximal_f_divergence(const PsdMatrix& a, const PdMatrix& b, const OperatorConvexFunction& fn);

/// lim_{eps -> 0} D_f(A || B + eps I) along the schedule. Requires finite omega.
double maximal_f_divergence_limit(const PsdMatrix& a, const PsdMatrix& b, const OperatorConvexFunction& fn,
                                  const LimitSchedule& sched = {});

/// f(0) tr B + omega tr A - tr(B sigma_{h_f} A), with the mean taken as an
/// epsilon limit.
double maximal_f_via_mean(const PsdMatrix& a, const PsdMatrix& b, const OperatorConvexFunction& fn,
                          const LimitSchedule& sched = {});

/// D_f on the whole PSD cone: the direct formula for PD B, the direct formula
/// on supp B when supp A ⊆ supp B, and the epsilon limit otherwise.
double maximal_f_divergence_psd(const PsdMatrix& a, const PsdMatrix& b, const OperatorConvexFunction& fn,
                                const LimitSchedule& sched = {});

enum class DivergenceKind { renyi, sandwiched, flat, standard, maximal };

/// One divergence with its parameter: alpha for the Rényi families, an
/// operator convex function for the f-divergences.
class DivergenceSelector {
  public:
    static DivergenceSelector renyi_family(DivergenceKind kind, double alpha);
    static DivergenceSelector f_divergence(DivergenceKind kind, OperatorConvexFunction fn);
    /// kind in {renyi, sandwiched, flat, standard, maximal}. alpha is required
    /// for the Rényi families and rejected for f-divergences; f the reverse.
    static DivergenceSelector parse(const std::string& kind, std::optional<double> alpha,
                                    const std::optional<std::string>& f);

    DivergenceKind kind() const { return kind_; }
    bool is_renyi() const { return kind_ != DivergenceKind::standard && kind_ != DivergenceKind::maximal; }
    const std::optional<double>& alpha() const { return alpha_; }
    const std::optional<OperatorConvexFunction>& function() const { return fn_; }
    std::string kind_name() const;
    /// e.g. "flat[alpha=0.5]" or "maximal[hellinger]".
    std::string label() const;

    ExtendedReal operator()(const PsdMatrix& a, const PsdMatrix& b, const LimitSchedule& sched = {}) const;

  private:
    DivergenceSelector(DivergenceKind kind, std::optional<double> alpha, std::optional<OperatorConvexFunction> fn)
        : kind_(kind), alpha_(alpha), fn_(std::move(fn)) {}

    DivergenceKind kind_;
    std::optional<double> alpha_;
    std::optional<OperatorConvexFunction> fn_;
};

} // namespace qdiv
