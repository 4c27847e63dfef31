#include "qdiv/linalg.hpp"

#include "qdiv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace qdiv {

namespace {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void require_square(const Matrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw ValidationError(std::string(what) + ": matrix must be square and non-empty, got " +
                              std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

void require_same_dim(Index a, Index b, const char* what) {
    if (a != b)
        throw ValidationError(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                              std::to_string(b) + ")");
}

Matrix columns_where(const SpectralDecomposition& s, const std::function<bool(double)>& keep) {
    std::vector<Index> idx;
    for (Index i = 0; i < s.values.size(); ++i)
        if (keep(s.values(i))) idx.push_back(i);
    Matrix out(s.vectors.rows(), static_cast<Index>(idx.size()));
    for (Index k = 0; k < static_cast<Index>(idx.size()); ++k) out.col(k) = s.vectors.col(idx[k]);
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// HermitianMatrix

HermitianMatrix::HermitianMatrix(const Matrix& m, const Tolerances& tol) {
    require_square(m, "HermitianMatrix");
    if (!m.allFinite()) throw ValidationError("HermitianMatrix: non-finite entry");
    const double scale = std::max(1.0, max_abs(m));
    const double asym = max_abs(m - m.adjoint());
    if (asym > tol.herm_tol * scale)
        throw ValidationError("HermitianMatrix: ||M - M^*||_max = " + std::to_string(asym) + " exceeds tolerance");
    m_ = (m + m.adjoint()) / 2.0;
}

HermitianMatrix HermitianMatrix::trusted(const Matrix& m) {
    HermitianMatrix h;
    h.m_ = (m + m.adjoint()) / 2.0;
    return h;
}

// ---------------------------------------------------------------------------
// Spectral decomposition

Matrix SpectralDecomposition::reconstruct() const {
    return vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint();
}

SpectralDecomposition eig_hermitian(const HermitianMatrix& m) {
    if (m.dim() == 0) return {RealVector(0), Matrix(0, 0)};
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m.matrix());
    if (solver.info() != Eigen::Success)
        throw NumericalError("eig_hermitian: Eigen solver failed on a " + std::to_string(m.dim()) + "x" +
                             std::to_string(m.dim()) + " matrix");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

// ---------------------------------------------------------------------------
// PsdMatrix / PdMatrix

PsdMatrix::PsdMatrix(const HermitianMatrix& h, const Tolerances& tol) : h_(h), spec_(eig_hermitian(h)) { finish(tol); }

PsdMatrix::PsdMatrix(const Matrix& m, const Tolerances& tol) : PsdMatrix(HermitianMatrix(m, tol), tol) {}

PsdMatrix::PsdMatrix(HermitianMatrix h, SpectralDecomposition spec, const Tolerances& tol)
    : h_(std::move(h)), spec_(std::move(spec)) {
    finish(tol);
}

void PsdMatrix::finish(const Tolerances& tol) {
    tol_ = tol;
    const double top = spec_.values.size() ? std::max(0.0, spec_.values.maxCoeff()) : 0.0;
    const double scale = std::max(1.0, top);
    const double clip_tol = tol.clip_rel * scale;
    for (Index i = 0; i < spec_.values.size(); ++i) {
        double& v = spec_.values(i);
        if (v < -clip_tol)
        {
            std::ostringstream msg;
            msg << "PsdMatrix: eigenvalue " << v << " is below -" << clip_tol << "; matrix is not positive semidefinite";
            throw ValidationError(msg.str());
        }
        if (v < 0) v = 0.0;
    }
    rank_tol_ = tol.rank_rel * scale;
    rank_ = (spec_.values.array() > rank_tol_).count();
}

PsdMatrix PsdMatrix::from_spectrum(const RealVector& values, const Matrix& vectors, const Tolerances& tol) {
    // Eigen returns ascending values; keep that order for callers that rely on it.
    std::vector<Index> order(static_cast<std::size_t>(values.size()));
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(), [&](Index a, Index b) { return values(a) < values(b); });
    SpectralDecomposition s{RealVector(values.size()), Matrix(vectors.rows(), vectors.cols())};
    for (Index k = 0; k < values.size(); ++k) {
        s.values(k) = values(order[static_cast<std::size_t>(k)]);
        s.vectors.col(k) = vectors.col(order[static_cast<std::size_t>(k)]);
    }
    RealVector clipped = s.values.cwiseMax(0.0);
    auto h = HermitianMatrix::trusted(s.vectors * clipped.cast<Complex>().asDiagonal() * s.vectors.adjoint());
    return PsdMatrix(std::move(h), std::move(s), tol);
}

PsdMatrix PsdMatrix::zero(Index dim) {
    return from_spectrum(RealVector::Zero(dim), Matrix::Identity(dim, dim));
}

PsdMatrix PsdMatrix::identity(Index dim) {
    return from_spectrum(RealVector::Ones(dim), Matrix::Identity(dim, dim));
}

double PsdMatrix::max_eigenvalue() const { return spec_.values.size() ? spec_.values.maxCoeff() : 0.0; }

Matrix PsdMatrix::support_basis() const {
    const double t = rank_tol_;
    return columns_where(spec_, [t](double v) { return v > t; });
}

Matrix PsdMatrix::kernel_basis() const {
    const double t = rank_tol_;
    return columns_where(spec_, [t](double v) { return v <= t; });
}

PdMatrix::PdMatrix(PsdMatrix p) : p_(std::move(p)) {
    if (!p_.is_definite())
        throw SingularOperatorError("PdMatrix: matrix is singular (rank " + std::to_string(p_.rank()) + " < " +
                                    std::to_string(p_.dim()) + ")");
}

PdMatrix::PdMatrix(const Matrix& m, const Tolerances& tol) : PdMatrix(PsdMatrix(m, tol)) {}

// ---------------------------------------------------------------------------
// Projection

Projection::Projection(const Matrix& m, const Tolerances& tol) {
    HermitianMatrix h(m, tol);
    const Matrix& p = h.matrix();
    if (max_abs(p * p - p) > tol.recon_tol) throw ValidationError("Projection: P^2 != P");
    auto s = eig_hermitian(h);
    p_ = p;
    basis_ = columns_where(s, [](double v) { return v > 0.5; });
}

Projection Projection::onto(const Matrix& basis, Index dim) {
    Projection p;
    p.basis_ = basis.cols() ? basis : Matrix(dim, 0);
    p.p_ = basis.cols() ? Matrix(basis * basis.adjoint()) : Matrix::Zero(dim, dim);
    return p;
}

// ---------------------------------------------------------------------------
// Functional calculus

HermitianMatrix apply_function(const SpectralDecomposition& s, const ScalarFunction& fn) {
    RealVector v(s.values.size());
    for (Index i = 0; i < v.size(); ++i) {
        v(i) = fn(s.values(i));
        if (!std::isfinite(v(i)))
            throw DomainError("apply_function: function undefined at eigenvalue " + std::to_string(s.values(i)));
    }
    return HermitianMatrix::trusted(s.vectors * v.cast<Complex>().asDiagonal() * s.vectors.adjoint());
}

HermitianMatrix apply_function(const HermitianMatrix& a, const ScalarFunction& fn) {
    return apply_function(eig_hermitian(a), fn);
}

HermitianMatrix hat_log(const PsdMatrix& a) {
    const double t = a.rank_tol();
    return apply_function(a.spectrum(), [t](double v) { return v > t ? std::log(v) : 0.0; });
}

PsdMatrix pseudo_power(const PsdMatrix& a, double p) {
    const auto& s = a.spectrum();
    RealVector v(s.values.size());
    for (Index i = 0; i < v.size(); ++i) v(i) = s.values(i) > a.rank_tol() ? std::pow(s.values(i), p) : 0.0;
    return PsdMatrix::from_spectrum(v, s.vectors, a.tolerances());
}

PsdMatrix exp_hermitian(const HermitianMatrix& h) {
    auto s = eig_hermitian(h);
    return PsdMatrix::from_spectrum(s.values.array().exp().matrix(), s.vectors);
}

double log_trace_exp(const HermitianMatrix& h) {
    const RealVector v = eig_hermitian(h).values;
    const double top = v.maxCoeff();
    return top + std::log((v.array() - top).exp().sum());
}

// ---------------------------------------------------------------------------
// Supports and orders

Projection support_projection(const PsdMatrix& a) { return Projection::onto(a.support_basis(), a.dim()); }

Projection intersection_projection(const Projection& p, const Projection& q, const Tolerances& tol) {
    require_same_dim(p.dim(), q.dim(), "intersection_projection");
    auto s = eig_hermitian(HermitianMatrix::trusted(p.matrix() + q.matrix()));
    const double top = s.values.size() ? std::max(0.0, s.values.maxCoeff()) : 0.0;
    const double cut = 2.0 - tol.rank_rel * std::max(1.0, top);
    return Projection::onto(columns_where(s, [cut](double v) { return v > cut; }), p.dim());
}

double min_eigenvalue(const HermitianMatrix& h) { return eig_hermitian(h).values.minCoeff(); }

bool loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b, double tol) {
    require_same_dim(a.dim(), b.dim(), "loewner_leq");
    return min_eigenvalue(HermitianMatrix::trusted(b.matrix() - a.matrix())) >= -tol;
}

bool chaotic_leq(const PdMatrix& a, const PdMatrix& b, double tol) {
    return loewner_leq(hat_log(a), hat_log(b), tol);
}

bool support_contained(const PsdMatrix& a, const PsdMatrix& b) {
    require_same_dim(a.dim(), b.dim(), "support_contained");
    if (a.is_zero()) return true;
    const Matrix qa = a.support_basis();
    const Matrix qb = b.support_basis();
    const Matrix residual = qb.cols() ? Matrix(qa - qb * (qb.adjoint() * qa)) : qa;
    return residual.norm() <= a.tolerances().support_tol;
}

bool supports_orthogonal(const PsdMatrix& a, const PsdMatrix& b) {
    require_same_dim(a.dim(), b.dim(), "supports_orthogonal");
    if (a.is_zero() || b.is_zero()) return true;
    return (b.support_basis().adjoint() * a.support_basis()).norm() <= a.tolerances().support_tol;
}

Matrix compress(const Matrix& m, const Matrix& basis) { return basis.adjoint() * m * basis; }

Matrix expand(const Matrix& s, const Matrix& basis) {
    if (basis.cols() == 0) return Matrix::Zero(basis.rows(), basis.rows());
    return basis * s * basis.adjoint();
}

PsdMatrix transpose(const PsdMatrix& a) {
    return PsdMatrix::from_spectrum(a.spectrum().values, a.spectrum().vectors.conjugate(), a.tolerances());
}

// ---------------------------------------------------------------------------
// Relative spectrum (pencil A y = x C y)

namespace {

// One-sided Jacobi: orthogonalizes the columns of g by plane rotations that
// are accumulated into z. On return g = U Sigma (orthogonal columns) and the
// original g equals g * z^*.
void hestenes_jacobi(Matrix& g, Matrix& z) {
    const Index n = g.cols();
    constexpr int max_sweeps = 80;
    constexpr double threshold = 1e-15;
    // With rank A < d, d - rank columns shrink to rounding level and can
    // never become mutually orthogonal; they stand for zero eigenvalues.
    const double eps = std::numeric_limits<double>::epsilon();
    const double floor = eps * eps * g.squaredNorm() * static_cast<double>(n);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (Index p = 0; p + 1 < n; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                const double a = g.col(p).squaredNorm();
                const double b = g.col(q).squaredNorm();
                const Complex c = g.col(p).dot(g.col(q)); // conj(g_p) . g_q
                const double abs_c = std::abs(c);
                if (a <= floor || b <= floor) continue;
                if (abs_c == 0.0 || abs_c <= threshold * std::sqrt(a * b)) continue;
                rotated = true;
                const Complex phase = c / abs_c;
                const double zeta = (b - a) / (2.0 * abs_c);
                const double t = zeta == 0.0 ? 1.0 : std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;
                const Complex rot_pq = sn * phase;
                const Complex rot_qp = -sn * std::conj(phase);
                Vector gp = g.col(p);
                g.col(p) = cs * gp + rot_qp * g.col(q);
                g.col(q) = rot_pq * gp + cs * g.col(q);
                Vector zp = z.col(p);
                z.col(p) = cs * zp + rot_qp * z.col(q);
                z.col(q) = rot_pq * zp + cs * z.col(q);
            }
        }
        if (!rotated) return;
    }
    throw NumericalError("relative_spectrum: one-sided Jacobi did not converge");
}

} // namespace

RelativeSpectrum relative_spectrum(const SpectralDecomposition& c, const PsdMatrix& a) {
    require_same_dim(c.vectors.rows(), a.dim(), "relative_spectrum");
    if (c.values.size() == 0 || c.values.minCoeff() <= 0.0)
        throw SingularOperatorError("relative_spectrum: reference operator must be positive definite");
    const Index d = a.dim();
    // Rows of the factor F with F^* F = A, restricted to the support of A.
    const Matrix qa = a.support_basis();
    const auto& sa = a.spectrum();
    Matrix f(qa.cols(), d);
    {
        Index row = 0;
        for (Index i = 0; i < sa.values.size(); ++i)
            if (sa.values(i) > a.rank_tol()) f.row(row++) = std::sqrt(sa.values(i)) * sa.vectors.col(i).adjoint();
    }
    const RealVector c_sqrt = c.values.array().sqrt();
    Matrix g = f * c.vectors * c_sqrt.cwiseInverse().cast<Complex>().asDiagonal();
    Matrix z = Matrix::Identity(d, d);
    if (g.rows() > 0) hestenes_jacobi(g, z);

    RealVector x(d);
    for (Index k = 0; k < d; ++k) x(k) = g.rows() > 0 ? g.col(k).squaredNorm() : 0.0;
    const Matrix y = c.vectors * c_sqrt.cast<Complex>().asDiagonal() * z;

    std::vector<Index> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(), [&](Index i, Index j) { return x(i) < x(j); });
    RelativeSpectrum out{RealVector(d), Matrix(d, d)};
    for (Index k = 0; k < d; ++k) {
        out.values(k) = x(order[static_cast<std::size_t>(k)]);
        out.vectors.col(k) = y.col(order[static_cast<std::size_t>(k)]);
    }
    return out;
}

RelativeSpectrum relative_spectrum(const PdMatrix& c, const PsdMatrix& a) { return relative_spectrum(c.spectrum(), a); }

Matrix RelativeSpectrum::congruence(const ScalarFunction& g) const {
    RealVector v(values.size());
    for (Index k = 0; k < v.size(); ++k) {
        v(k) = g(values(k));
        if (!std::isfinite(v(k)))
            throw DomainError("relative spectrum: function undefined at " + std::to_string(values(k)));
    }
    return vectors * v.cast<Complex>().asDiagonal() * vectors.adjoint();
}

double RelativeSpectrum::trace_weighted(const ScalarFunction& g) const {
    double sum = 0.0;
    for (Index k = 0; k < values.size(); ++k) {
        const double w = vectors.col(k).squaredNorm();
        const double v = g(values(k));
        if (!std::isfinite(v))
            throw DomainError("relative spectrum: function undefined at " + std::to_string(values(k)));
        sum += v * w;
    }
    return sum;
}

} // namespace qdiv
