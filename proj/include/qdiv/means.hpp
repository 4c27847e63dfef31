#pragma once

// Kubo-Ando means B sigma_h A = B^{1/2} h(B^{-1/2} A B^{-1/2}) B^{1/2}, the
// Log-Euclidean mean and the logarithmic product.
//
// Argument order follows mean(B, A): the first argument is the one whose
// square roots sandwich h(...). This matters for non-symmetric h.

#include "qdiv/defaults.hpp"
#include "qdiv/linalg.hpp"
#include "qdiv/opfunc.hpp"

#include <string>

namespace qdiv {

/// Representing function of a mean: nonnegative and nondecreasing on [0, inf).
class MeanFunction {
  public:
    /// Samples h on a log grid and rejects negative or decreasing functions.
    MeanFunction(std::string name, ScalarFunction h);

    static MeanFunction geometric();
    /// h_f of an operator convex function with finite omega.
    static MeanFunction from(const OperatorConvexFunction& fn);

    const std::string& name() const { return name_; }
    double operator()(double t) const { return h_(t); }
    const ScalarFunction& function() const { return h_; }

  private:
    std::string name_;
    ScalarFunction h_;
};

PsdMatrix kubo_ando_mean(const PdMatrix& b, const PsdMatrix& a, const MeanFunction& h);
/// Same as above; throws SingularOperatorError for singular `b`, pointing to
/// kubo_ando_mean_limit.
PsdMatrix kubo_ando_mean(const PsdMatrix& b, const PsdMatrix& a, const MeanFunction& h);
/// (B + eps I) sigma_h A along the schedule; ConvergenceError carries the
/// successive max-entry differences.
PsdMatrix kubo_ando_mean_limit(const PsdMatrix& b, const PsdMatrix& a, const MeanFunction& h,
                               const LimitSchedule& sched = {});

/// B # A.
PsdMatrix geometric_mean(const PdMatrix& b, const PsdMatrix& a);

/// P exp((P logA P + P logB P) / 2) P with P onto supp A ∩ supp B.
PsdMatrix log_euclidean(const PsdMatrix& a, const PsdMatrix& b);
/// P exp(P logA P + P logB P) P with P onto supp A ∩ supp B.
PsdMatrix log_product(const PsdMatrix& a, const PsdMatrix& b);
/// lim (A^{1/n} B^{1/n})^n over n = 2^k with pseudo-powers.
PsdMatrix log_product_trotter(const PsdMatrix& a, const PsdMatrix& b, const TrotterSchedule& sched = {});

} // namespace qdiv
