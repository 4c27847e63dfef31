#include "qdiv/lab/transforms.hpp"

#include "qdiv/errors.hpp"
#include "qdiv/means.hpp"

#include <cmath>

namespace qdiv::lab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

bool is_unitary(const Matrix& u, double tol) {
    return (u.adjoint() * u - Matrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

bool is_scalar(const Matrix& h, double tol) {
    const Complex mean = h.trace() / static_cast<double>(h.rows());
    return (h - mean * Matrix::Identity(h.rows(), h.cols())).cwiseAbs().maxCoeff() <= tol;
}

void check_square(const Matrix& m, Index dim, const char* what) {
    if (m.rows() != dim || m.cols() != dim)
        throw ValidationError(std::string(what) + ": expected a " + std::to_string(dim) + "x" + std::to_string(dim) +
                              " matrix");
}

void check_invertible(const Matrix& t) {
    const RealVector sv = Eigen::JacobiSVD<Matrix>(t).singularValues();
    const double cut = Tolerances{}.rank_rel * std::max(1.0, sv(0));
    if (sv(sv.size() - 1) <= cut) throw ValidationError("transform: T is not invertible");
}

// T M T^dagger for linear T, T conj(M) T^dagger for conjugate linear T.
Matrix congruence(const Matrix& t, const Matrix& m, bool conjugate_linear) {
    return conjugate_linear ? Matrix(t * m.conjugate() * t.adjoint()) : Matrix(t * m * t.adjoint());
}

PsdMatrix hermitian_part_psd(const Matrix& m) { return PsdMatrix(HermitianMatrix::trusted(0.5 * (m + m.adjoint()))); }

} // namespace

void validate(const TransformSpec& spec, Index dim) {
    std::visit(overloaded{
                   [dim](const UnitaryCongruence& s) {
                       check_square(s.u, dim, "UnitaryCongruence");
                       if (!(s.lambda > 0)) throw ValidationError("UnitaryCongruence: lambda must be > 0");
                       if (!is_unitary(s.u, 1e-9)) throw ValidationError("UnitaryCongruence: U is not unitary");
                   },
                   [dim](const AntiUnitaryCongruence& s) {
                       check_square(s.u, dim, "AntiUnitaryCongruence");
                       if (!(s.lambda > 0)) throw ValidationError("AntiUnitaryCongruence: lambda must be > 0");
                       if (!is_unitary(s.u, 1e-9)) throw ValidationError("AntiUnitaryCongruence: U is not unitary");
                   },
                   [dim](const LogLinear& s) {
                       check_square(s.t, dim, "LogLinear T");
                       check_square(s.h, dim, "LogLinear H");
                       check_invertible(s.t);
                       HermitianMatrix{s.h};
                   },
                   [dim](const LogProductForm& s) {
                       check_square(s.t, dim, "LogProductForm T");
                       if (s.x.dim() != dim) throw ValidationError("LogProductForm: X has the wrong dimension");
                       check_invertible(s.t);
                   },
               },
               spec);
}

Projection kernel_image_complement(const Matrix& t, const PsdMatrix& a, bool conjugate_linear) {
    const Index d = a.dim();
    const Matrix ker = a.kernel_basis();
    if (ker.cols() == 0) return Projection::onto(Matrix::Identity(d, d), d);
    const Matrix image = t * (conjugate_linear ? Matrix(ker.conjugate()) : ker);
    // Orthonormal basis of T ker A, then its complement.
    const Eigen::HouseholderQR<Matrix> qr(image);
    const Matrix q = qr.householderQ();
    return Projection::onto(q.rightCols(d - ker.cols()), d);
}

PsdMatrix apply_transform(const TransformSpec& spec, const PsdMatrix& a) {
    validate(spec, a.dim());
    return std::visit(
        overloaded{
            [&a](const UnitaryCongruence& s) { return hermitian_part_psd(s.lambda * s.u * a.matrix() * s.u.adjoint()); },
            [&a](const AntiUnitaryCongruence& s) {
                return hermitian_part_psd(s.lambda * s.u * a.matrix().transpose() * s.u.adjoint());
            },
            [&a](const LogLinear& s) {
                if (!a.is_definite()) throw SingularOperatorError("LogLinear transform requires a PD input");
                const Matrix m = congruence(s.t, hat_log(a).matrix(), s.conjugate_linear) + s.h;
                return exp_hermitian(HermitianMatrix::trusted(0.5 * (m + m.adjoint())));
            },
            [&a](const LogProductForm& s) {
                const Projection p = kernel_image_complement(s.t, a, s.conjugate_linear);
                const Matrix& q = p.basis();
                if (q.cols() == 0) return log_product(s.x, PsdMatrix::zero(a.dim()));
                const Matrix inner = compress(congruence(s.t, hat_log(a).matrix(), s.conjugate_linear), q);
                const PsdMatrix e = exp_hermitian(HermitianMatrix::trusted(0.5 * (inner + inner.adjoint())));
                return log_product(s.x, hermitian_part_psd(expand(e.matrix(), q)));
            },
        },
        spec);
}

bool is_canonical(const TransformSpec& spec, const DivergenceSelector& div, double tol) {
    const bool scale_free = div.is_renyi();
    return std::visit(overloaded{
                          [&](const UnitaryCongruence& s) {
                              return is_unitary(s.u, tol) && (scale_free || std::abs(s.lambda - 1) <= tol);
                          },
                          [&](const AntiUnitaryCongruence& s) {
                              return is_unitary(s.u, tol) && (scale_free || std::abs(s.lambda - 1) <= tol);
                          },
                          [&](const LogLinear& s) {
                              if (!is_unitary(s.t, tol) || !is_scalar(s.h, tol)) return false;
                              return scale_free || s.h.cwiseAbs().maxCoeff() <= tol;
                          },
                          [&](const LogProductForm& s) {
                              if (!is_unitary(s.t, tol) || !s.x.is_definite()) return false;
                              if (!is_scalar(s.x.matrix(), tol)) return false;
                              return scale_free || std::abs(s.x.matrix()(0, 0).real() - 1) <= tol;
                          },
                      },
                      spec);
}

std::string describe(const TransformSpec& spec) {
    return std::visit(overloaded{
                          [](const UnitaryCongruence& s) {
                              return "unitary congruence, lambda=" + std::to_string(s.lambda);
                          },
                          [](const AntiUnitaryCongruence& s) {
                              return "antiunitary congruence, lambda=" + std::to_string(s.lambda);
                          },
                          [](const LogLinear& s) {
                              return std::string("log-linear form") + (s.conjugate_linear ? " (conjugate linear T)" : "");
                          },
                          [](const LogProductForm& s) {
                              return std::string("log-product form") +
                                     (s.conjugate_linear ? " (conjugate linear T)" : "");
                          },
                      },
                      spec);
}

} // namespace qdiv::lab
