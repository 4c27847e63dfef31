#include "qdiv/means.hpp"

#include "richardson.hpp"

#include "qdiv/errors.hpp"

#include <cmath>
#include <vector>

namespace qdiv {

MeanFunction::MeanFunction(std::string name, ScalarFunction h) : name_(std::move(name)), h_(std::move(h)) {
    double prev = h_(0.0);
    if (!(prev >= 0)) throw ValidationError("mean function '" + name_ + "': h(0) must be >= 0");
    for (int k = -40; k <= 40; ++k) {
        const double t = std::pow(10.0, k / 10.0);
        const double v = h_(t);
        if (!std::isfinite(v) || v < 0) throw ValidationError("mean function '" + name_ + "': h must be finite and >= 0");
        if (v < prev - 1e-12 * std::max(1.0, std::abs(prev)))
            throw ValidationError("mean function '" + name_ + "': h must be nondecreasing");
        prev = v;
    }
}

MeanFunction MeanFunction::geometric() {
    return MeanFunction("geometric", [](double t) { return std::sqrt(t); });
}

MeanFunction MeanFunction::from(const OperatorConvexFunction& fn) {
    fn.require_representation("MeanFunction::from");
    return MeanFunction("h_" + fn.name(), [fn](double t) { return h_f(fn, t); });
}

namespace {

PsdMatrix clipped_psd(const Matrix& m) {
    auto s = eig_hermitian(HermitianMatrix::trusted(m));
    return PsdMatrix::from_spectrum(s.values.cwiseMax(0.0), s.vectors);
}

PsdMatrix compressed_log_sum(const PsdMatrix& a, const PsdMatrix& b, double weight) {
    if (a.dim() != b.dim()) throw ValidationError("log mean/product: dimension mismatch");
    const Projection p = intersection_projection(support_projection(a), support_projection(b), a.tolerances());
    if (p.rank() == 0) return PsdMatrix::zero(a.dim());
    const Matrix& q = p.basis();
    const Matrix inner = weight * compress(hat_log(a).matrix() + hat_log(b).matrix(), q);
    const PsdMatrix e = exp_hermitian(HermitianMatrix::trusted(inner));
    return clipped_psd(expand(e.matrix(), q));
}

double spectral_norm(const Matrix& m) { return Eigen::JacobiSVD<Matrix>(m).singularValues()(0); }

} // namespace

PsdMatrix kubo_ando_mean(const PdMatrix& b, const PsdMatrix& a, const MeanFunction& h) {
    if (a.dim() != b.dim()) throw ValidationError("kubo_ando_mean: dimension mismatch");
    return clipped_psd(relative_spectrum(b, a).congruence(h.function()));
}

PsdMatrix kubo_ando_mean(const PsdMatrix& b, const PsdMatrix& a, const MeanFunction& h) {
    if (!b.is_definite())
        throw SingularOperatorError("kubo_ando_mean: first argument is singular; use kubo_ando_mean_limit");
    return kubo_ando_mean(PdMatrix(b), a, h);
}

PsdMatrix kubo_ando_mean_limit(const PsdMatrix& b, const PsdMatrix& a, const MeanFunction& h,
                               const LimitSchedule& sched) {
    sched.validate();
    if (a.dim() != b.dim()) throw ValidationError("kubo_ando_mean_limit: dimension mismatch");
    std::vector<double> diffs;
    Matrix prev;
    detail::HalfPowerRichardson<Matrix> table(sched.ratio, 2);
    double eps = sched.eps0;
    for (int k = 0; k <= sched.max_steps; ++k, eps *= sched.ratio) {
        SpectralDecomposition shifted{b.spectrum().values.array() + eps, b.spectrum().vectors};
        Matrix cur = table.push(relative_spectrum(shifted, a).congruence(h.function()));
        if (k > 0) {
            diffs.push_back((cur - prev).cwiseAbs().maxCoeff());
            if (diffs.back() < sched.conv_tol) return clipped_psd(cur);
        }
        prev = std::move(cur);
    }
    throw ConvergenceError("kubo_ando_mean_limit: no convergence within " + std::to_string(sched.max_steps) + " steps",
                           diffs);
}

PsdMatrix geometric_mean(const PdMatrix& b, const PsdMatrix& a) {
    return kubo_ando_mean(b, a, MeanFunction::geometric());
}

PsdMatrix log_euclidean(const PsdMatrix& a, const PsdMatrix& b) { return compressed_log_sum(a, b, 0.5); }

PsdMatrix log_product(const PsdMatrix& a, const PsdMatrix& b) { return compressed_log_sum(a, b, 1.0); }

PsdMatrix log_product_trotter(const PsdMatrix& a, const PsdMatrix& b, const TrotterSchedule& sched) {
    if (a.dim() != b.dim()) throw ValidationError("log_product_trotter: dimension mismatch");
    std::vector<double> diffs;
    Matrix prev_plain, prev_tested;
    for (int k = 0; k <= sched.max_doublings; ++k) {
        const double inv_n = std::ldexp(1.0, -k);
        Matrix x = pseudo_power(a, inv_n).matrix() * pseudo_power(b, inv_n).matrix();
        for (int j = 0; j < k; ++j) x = (x * x).eval();

        Matrix tested = x;
        bool ready = k >= 1;
        if (sched.extrapolate) {
            if (k >= 1) tested = 2.0 * x - prev_plain;
            ready = k >= 2;
        }
        if (ready) {
            diffs.push_back(spectral_norm(tested - prev_tested));
            if (diffs.back() < sched.conv_tol) return clipped_psd(tested);
        }
        prev_plain = std::move(x);
        prev_tested = std::move(tested);
    }
    throw ConvergenceError("log_product_trotter: no convergence within 2^" + std::to_string(sched.max_doublings),
                           diffs);
}

} // namespace qdiv
