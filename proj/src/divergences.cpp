#include "qdiv/divergences.hpp"

#include "richardson.hpp"

#include "qdiv/errors.hpp"
#include "qdiv/means.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace qdiv {

namespace {

void require_same_dim(const PsdMatrix& a, const PsdMatrix& b, const char* what) {
    if (a.dim() != b.dim())
        throw ValidationError(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                              std::to_string(b.dim()) + ")");
}

double real_trace(const Matrix& m) { return m.trace().real(); }

// tr P exp(alpha P logA P + (1-alpha) P logB P) for the case where it is
// finite; 0 when supp A ∩ supp B = {0}.
double flat_trace(const PsdMatrix& a, const PsdMatrix& b, double alpha) {
    const Projection p = intersection_projection(support_projection(a), support_projection(b), a.tolerances());
    if (p.rank() == 0) return 0.0;
    const Matrix& q = p.basis();
    const Matrix m = alpha * compress(hat_log(a).matrix(), q) + (1 - alpha) * compress(hat_log(b).matrix(), q);
    return std::exp(log_trace_exp(HermitianMatrix::trusted(m)));
}

struct EigenGroup {
    double value;
    Matrix basis;
};

// Eigenvalues within group_tol of their neighbour share one spectral
// projection; everything at or below rank_tol forms the zero group.
std::vector<EigenGroup> spectral_groups(const PsdMatrix& m) {
    const auto& s = m.spectrum();
    const double scale = std::max(1.0, m.max_eigenvalue());
    const double group_tol = m.tolerances().group_rel * scale;
    std::vector<EigenGroup> groups;
    Index i = 0;
    const Index n = s.values.size();
    std::vector<Index> zero;
    while (i < n && s.values(i) <= m.rank_tol()) zero.push_back(i++);
    if (!zero.empty()) {
        Matrix basis(m.dim(), static_cast<Index>(zero.size()));
        for (std::size_t k = 0; k < zero.size(); ++k) basis.col(static_cast<Index>(k)) = s.vectors.col(zero[k]);
        groups.push_back({0.0, std::move(basis)});
    }
    while (i < n) {
        Index j = i + 1;
        while (j < n && s.values(j) - s.values(j - 1) <= group_tol) ++j;
        groups.push_back({s.values.segment(i, j - i).mean(), s.vectors.middleCols(i, j - i)});
        i = j;
    }
    return groups;
}

} // namespace

RenyiParameter::RenyiParameter(double alpha) : alpha_(alpha) {
    if (!std::isfinite(alpha) || alpha <= 0)
        throw ValidationError("alpha must be a positive finite number, got " + std::to_string(alpha));
    if (alpha == 1.0) throw ValidationError("alpha = 1 is excluded (no Kullback-Leibler limit is taken)");
}

ExtendedReal renyi(const PsdMatrix& a, const PsdMatrix& b, RenyiParameter alpha) {
    require_same_dim(a, b, "renyi");
    const double al = alpha.value();
    if (a.is_zero()) return ExtendedReal::neg_inf();
    if (supports_orthogonal(a, b)) return ExtendedReal::pos_inf();
    if (!alpha.below_one() && !support_contained(a, b)) return ExtendedReal::pos_inf();
    const double tr = real_trace(pseudo_power(a, al).matrix() * pseudo_power(b, 1 - al).matrix());
    return extended_log(std::max(tr, 0.0) / a.trace()) / (al - 1);
}

ExtendedReal sandwiched_renyi(const PsdMatrix& a, const PsdMatrix& b, RenyiParameter alpha) {
    require_same_dim(a, b, "sandwiched_renyi");
    const double al = alpha.value();
    if (a.is_zero()) return ExtendedReal::neg_inf();
    if (supports_orthogonal(a, b)) return ExtendedReal::pos_inf();
    if (!alpha.below_one() && !support_contained(a, b)) return ExtendedReal::pos_inf();
    const Matrix s = pseudo_power(b, (1 - al) / (2 * al)).matrix();
    const RealVector lam = eig_hermitian(HermitianMatrix::trusted(s * a.matrix() * s)).values;
    // Rounding leaves ~1e-17 on the kernel; lambda^alpha would lift it to
    // ~1e-5 for small alpha, so the rank cut applies here as well.
    const double cut = a.tolerances().rank_rel * std::max(1.0, lam.size() ? lam.maxCoeff() : 0.0);
    double tr = 0.0;
    for (Index i = 0; i < lam.size(); ++i)
        if (lam(i) > cut) tr += std::pow(lam(i), al);
    return extended_log(tr / a.trace()) / (al - 1);
}

ExtendedReal q_flat(const PsdMatrix& a, const PsdMatrix& b, RenyiParameter alpha) {
    require_same_dim(a, b, "q_flat");
    if (a.is_zero()) return alpha.below_one() ? ExtendedReal::pos_inf() : ExtendedReal(0.0);
    if (!alpha.below_one() && !support_contained(a, b)) return ExtendedReal::pos_inf();
    return ExtendedReal(flat_trace(a, b, alpha.value()) / a.trace());
}

ExtendedReal flat_renyi(const PsdMatrix& a, const PsdMatrix& b, RenyiParameter alpha) {
    require_same_dim(a, b, "flat_renyi");
    if (a.is_zero()) return ExtendedReal::neg_inf();
    if (!alpha.below_one() && !support_contained(a, b)) return ExtendedReal::pos_inf();
    return extended_log(flat_trace(a, b, alpha.value()) / a.trace()) / (alpha.value() - 1);
}

double log_q_flat_from_logs(const HermitianMatrix& log_a, const HermitianMatrix& log_b, RenyiParameter alpha) {
    if (log_a.dim() != log_b.dim()) throw ValidationError("log_q_flat_from_logs: dimension mismatch");
    const double al = alpha.value();
    const auto mixed = HermitianMatrix::trusted(al * log_a.matrix() + (1 - al) * log_b.matrix());
    return log_trace_exp(mixed) - log_trace_exp(log_a);
}

ExtendedReal classical_f_divergence(const std::vector<double>& p, const std::vector<double>& q,
                                    const OperatorConvexFunction& fn) {
    if (p.size() != q.size())
        throw ValidationError("classical_f_divergence: length mismatch (" + std::to_string(p.size()) + " vs " +
                              std::to_string(q.size()) + ")");
    ExtendedReal sum(0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(p[i] >= 0) || !(q[i] >= 0)) throw ValidationError("classical_f_divergence: entries must be >= 0");
        if (q[i] > 0)
            sum = sum + ExtendedReal(q[i] * fn(p[i] / q[i]));
        else if (p[i] > 0)
            sum = sum + p[i] * fn.omega();
    }
    return sum;
}

ExtendedReal standard_f_divergence(const PsdMatrix& a, const PsdMatrix& b, const OperatorConvexFunction& fn) {
    require_same_dim(a, b, "standard_f_divergence");
    const double overlap_tol = a.tolerances().support_tol * a.tolerances().support_tol;
    const auto ga = spectral_groups(a);
    const auto gb = spectral_groups(b);
    ExtendedReal sum(0.0);
    for (const auto& pa : ga) {
        for (const auto& qb : gb) {
            const double overlap = (qb.basis.adjoint() * pa.basis).squaredNorm();
            if (qb.value > 0) {
                sum = sum + ExtendedReal(qb.value * fn(pa.value / qb.value) * overlap);
            } else if (pa.value > 0 && overlap > overlap_tol) {
                sum = sum + (pa.value * overlap) * fn.omega();
            }
        }
    }
    return sum;
}

double quasi_entropy(const QuasiEntropyInstance& inst) {
    const PsdMatrix& a = inst.a;
    const PdMatrix& b = inst.b;
    if (a.dim() != b.dim() || inst.k.rows() != a.dim() || inst.k.cols() != a.dim())
        throw ValidationError("quasi_entropy: dimension mismatch");
    const auto& sa = a.spectrum();
    const auto& sb = b.spectrum();
    const Matrix overlap = sa.vectors.adjoint() * inst.k * sb.vectors;
    double sum = 0.0;
    for (Index i = 0; i < a.dim(); ++i)
        for (Index j = 0; j < b.dim(); ++j) {
            const double bj = sb.values(j);
            sum += inst.fn(sa.values(i) / bj) * bj * std::norm(overlap(i, j));
        }
    return sum;
}

double maximal_f_divergence(const PsdMatrix& a, const PdMatrix& b, const OperatorConvexFunction& fn) {
    if (a.dim() != b.dim()) throw ValidationError("maximal_f_divergence: dimension mismatch");
    return relative_spectrum(b, a).trace_weighted([&fn](double x) { return fn(x); });
}

double maximal_f_divergence_limit(const PsdMatrix& a, const PsdMatrix& b, const OperatorConvexFunction& fn,
                                  const LimitSchedule& sched) {
    require_same_dim(a, b, "maximal_f_divergence_limit");
    sched.validate();
    if (!fn.has_finite_omega())
        throw UnsupportedFunctionError("maximal_f_divergence_limit: function '" + fn.name() +
                                       "' has omega(f) = +inf");
    std::vector<double> iterates;
    detail::HalfPowerRichardson<double> table(sched.ratio, 2);
    double eps = sched.eps0;
    for (int k = 0; k <= sched.max_steps; ++k, eps *= sched.ratio) {
        SpectralDecomposition shifted{b.spectrum().values.array() + eps, b.spectrum().vectors};
        iterates.push_back(table.push(relative_spectrum(shifted, a).trace_weighted([&fn](double x) { return fn(x); })));
        if (k > 0 && std::abs(iterates[iterates.size() - 1] - iterates[iterates.size() - 2]) < sched.conv_tol)
            return iterates.back();
    }
    throw ConvergenceError("maximal_f_divergence_limit: no convergence within " + std::to_string(sched.max_steps) +
                               " steps",
                           iterates);
}

double maximal_f_via_mean(const PsdMatrix& a, const PsdMatrix& b, const OperatorConvexFunction& fn,
                          const LimitSchedule& sched) {
    require_same_dim(a, b, "maximal_f_via_mean");
    fn.require_representation("maximal_f_via_mean");
    const PsdMatrix mean = kubo_ando_mean_limit(b, a, MeanFunction::from(fn), sched);
    return fn.f0() * b.trace() + fn.omega().value() * a.trace() - mean.trace();
}

double maximal_f_divergence_psd(const PsdMatrix& a, const PsdMatrix& b, const OperatorConvexFunction& fn,
                                const LimitSchedule& sched) {
    require_same_dim(a, b, "maximal_f_divergence_psd");
    if (b.is_definite()) return maximal_f_divergence(a, PdMatrix(b), fn);
    if (support_contained(a, b)) {
        if (b.is_zero()) return 0.0;
        const Matrix q = b.support_basis();
        const PsdMatrix ar(HermitianMatrix::trusted(compress(a.matrix(), q)), a.tolerances());
        const PdMatrix br(PsdMatrix(HermitianMatrix::trusted(compress(b.matrix(), q)), b.tolerances()));
        return maximal_f_divergence(ar, br, fn);
    }
    if (!fn.has_finite_omega())
        throw UnsupportedFunctionError("maximal_f_divergence: '" + fn.name() +
                                       "' has omega(f) = +inf and supp A is not inside supp B");
    if (b.is_zero()) return fn.omega().value() * a.trace();
    return maximal_f_divergence_limit(a, b, fn, sched);
}

DivergenceSelector DivergenceSelector::renyi_family(DivergenceKind kind, double alpha) {
    if (kind == DivergenceKind::standard || kind == DivergenceKind::maximal)
        throw ValidationError("renyi_family: not a Rényi divergence");
    RenyiParameter{alpha};
    return DivergenceSelector(kind, alpha, std::nullopt);
}

DivergenceSelector DivergenceSelector::f_divergence(DivergenceKind kind, OperatorConvexFunction fn) {
    if (kind != DivergenceKind::standard && kind != DivergenceKind::maximal)
        throw ValidationError("f_divergence: not an f-divergence");
    return DivergenceSelector(kind, std::nullopt, std::move(fn));
}

DivergenceSelector DivergenceSelector::parse(const std::string& kind, std::optional<double> alpha,
                                             const std::optional<std::string>& f) {
    static const std::pair<const char*, DivergenceKind> names[] = {
        {"renyi", DivergenceKind::renyi},       {"sandwiched", DivergenceKind::sandwiched},
        {"flat", DivergenceKind::flat},         {"standard", DivergenceKind::standard},
        {"maximal", DivergenceKind::maximal}};
    for (const auto& [name, k] : names) {
        if (kind != name) continue;
        const bool renyi_like = k != DivergenceKind::standard && k != DivergenceKind::maximal;
        if (renyi_like) {
            if (!alpha) throw ValidationError("divergence '" + kind + "' requires alpha");
            if (f) throw ValidationError("divergence '" + kind + "' takes alpha, not a function");
            return renyi_family(k, *alpha);
        }
        if (!f) throw ValidationError("divergence '" + kind + "' requires a function (f)");
        if (alpha) throw ValidationError("divergence '" + kind + "' takes a function, not alpha");
        return f_divergence(k, builtin(*f));
    }
    throw ValidationError("unknown divergence '" + kind + "' (expected renyi|sandwiched|flat|standard|maximal)");
}

std::string DivergenceSelector::kind_name() const {
    switch (kind_) {
    case DivergenceKind::renyi: return "renyi";
    case DivergenceKind::sandwiched: return "sandwiched";
    case DivergenceKind::flat: return "flat";
    case DivergenceKind::standard: return "standard";
    case DivergenceKind::maximal: return "maximal";
    }
    return "?";
}

std::string DivergenceSelector::label() const {
    if (alpha_) {
        std::ostringstream os;
        os << kind_name() << "[alpha=" << *alpha_ << "]";
        return os.str();
    }
    return kind_name() + "[" + fn_->name() + "]";
}

ExtendedReal DivergenceSelector::operator()(const PsdMatrix& a, const PsdMatrix& b, const LimitSchedule& sched) const {
    switch (kind_) {
    case DivergenceKind::renyi: return renyi(a, b, RenyiParameter(*alpha_));
    case DivergenceKind::sandwiched: return sandwiched_renyi(a, b, RenyiParameter(*alpha_));
    case DivergenceKind::flat: return flat_renyi(a, b, RenyiParameter(*alpha_));
    case DivergenceKind::standard: return standard_f_divergence(a, b, *fn_);
    case DivergenceKind::maximal: return maximal_f_divergence_psd(a, b, *fn_, sched);
    }
    throw ValidationError("unknown divergence kind");
}

} // namespace qdiv
