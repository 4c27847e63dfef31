#pragma once

// Dense Hermitian matrix engine: validated positive matrices with cached
// eigensystems, functional calculus, support projections and order predicates.

#include <Eigen/Dense>

#include <complex>
#include <functional>

namespace qdiv {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;
using ScalarFunction = std::function<double(double)>;

/// Numerical thresholds. The `*_rel` entries are scaled by max(1, lambda_max)
/// of the matrix they are applied to.
struct Tolerances {
    double herm_tol = 1e-9;
    double recon_tol = 1e-9;
    double clip_rel = 1e-10;
    double rank_rel = 1e-10;
    double group_rel = 1e-8;
    /// Frobenius-norm threshold for subspace inclusion and orthogonality.
    double support_tol = 1e-8;
};

class HermitianMatrix {
  public:
    /// Checks squareness, finiteness and ||M - M^*||_max <= herm_tol * max(1, ||M||_max);
    /// stores (M + M^*) / 2.
    explicit HermitianMatrix(const Matrix& m, const Tolerances& tol = {});

    /// Symmetrizes without checking. For matrices Hermitian by construction.
    static HermitianMatrix trusted(const Matrix& m);

    const Matrix& matrix() const { return m_; }
    Index dim() const { return m_.rows(); }
    double trace() const { return m_.trace().real(); }

  private:
    HermitianMatrix() = default;
    Matrix m_;
};

struct SpectralDecomposition {
    RealVector values; // ascending
    Matrix vectors;    // unitary, eigenvectors as columns

    Matrix reconstruct() const;
};

SpectralDecomposition eig_hermitian(const HermitianMatrix& m);

/// Positive semidefinite matrix with its eigensystem.
///
/// Eigenvalues in [-clip_tol, 0) are set to zero; anything more negative
/// rejects construction. rank counts eigenvalues above rank_tol.
class PsdMatrix {
  public:
    explicit PsdMatrix(const HermitianMatrix& h, const Tolerances& tol = {});
    explicit PsdMatrix(const Matrix& m, const Tolerances& tol = {});

    /// Builds U diag(values) U^* from a known eigensystem (values clipped as above).
    static PsdMatrix from_spectrum(const RealVector& values, const Matrix& vectors, const Tolerances& tol = {});
    static PsdMatrix zero(Index dim);
    static PsdMatrix identity(Index dim);

    const HermitianMatrix& hermitian() const { return h_; }
    const Matrix& matrix() const { return h_.matrix(); }
    const SpectralDecomposition& spectrum() const { return spec_; }
    const Tolerances& tolerances() const { return tol_; }

    Index dim() const { return h_.dim(); }
    Index rank() const { return rank_; }
    double rank_tol() const { return rank_tol_; }
    double trace() const { return h_.trace(); }
    double max_eigenvalue() const;
    bool is_zero() const { return rank_ == 0; }
    bool is_definite() const { return rank_ == dim(); }

    /// Orthonormal basis of supp A (eigenvectors above rank_tol).
    Matrix support_basis() const;
    /// Orthonormal basis of ker A.
    Matrix kernel_basis() const;

  private:
    PsdMatrix(HermitianMatrix h, SpectralDecomposition spec, const Tolerances& tol);
    void finish(const Tolerances& tol);

    HermitianMatrix h_;
    SpectralDecomposition spec_;
    Tolerances tol_;
    Index rank_ = 0;
    double rank_tol_ = 0.0;
};

/// Positive definite matrix: PsdMatrix with minimum eigenvalue above rank_tol.
class PdMatrix {
  public:
    /// Throws SingularOperatorError when `p` is not of full rank.
    explicit PdMatrix(PsdMatrix p);
    explicit PdMatrix(const Matrix& m, const Tolerances& tol = {});

    const PsdMatrix& psd() const { return p_; }
    operator const PsdMatrix&() const { return p_; } // NOLINT: PD is-a PSD

    const Matrix& matrix() const { return p_.matrix(); }
    const SpectralDecomposition& spectrum() const { return p_.spectrum(); }
    Index dim() const { return p_.dim(); }
    double trace() const { return p_.trace(); }

  private:
    PsdMatrix p_;
};

/// Orthogonal projection, stored with an orthonormal basis of its range.
class Projection {
  public:
    /// Validates P = P^*, P^2 = P within recon_tol.
    explicit Projection(const Matrix& m, const Tolerances& tol = {});
    /// Projection onto the span of the orthonormal columns of `basis` (dim rows).
    static Projection onto(const Matrix& basis, Index dim);

    const Matrix& matrix() const { return p_; }
    const Matrix& basis() const { return basis_; }
    Index rank() const { return basis_.cols(); }
    Index dim() const { return p_.rows(); }

  private:
    Projection() = default;
    Matrix p_;
    Matrix basis_;
};

/// U fn(Lambda) U^*. Throws DomainError when fn is non-finite at an eigenvalue.
HermitianMatrix apply_function(const HermitianMatrix& a, const ScalarFunction& fn);
HermitianMatrix apply_function(const SpectralDecomposition& s, const ScalarFunction& fn);

/// Logarithm on the support, 0 on the kernel.
HermitianMatrix hat_log(const PsdMatrix& a);

/// A^p on supp A and 0 on ker A, for every real p (Moore-Penrose convention).
PsdMatrix pseudo_power(const PsdMatrix& a, double p);

/// exp of a Hermitian matrix.
PsdMatrix exp_hermitian(const HermitianMatrix& h);

/// log tr exp(H), evaluated with a shifted exponent so that very negative
/// spectra do not underflow.
double log_trace_exp(const HermitianMatrix& h);

Projection support_projection(const PsdMatrix& a);

/// Projection onto ran P ∩ ran Q: eigenvectors of P + Q with eigenvalue above
/// 2 - rank_tol.
Projection intersection_projection(const Projection& p, const Projection& q, const Tolerances& tol = {});

bool loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b, double tol);
/// log A <= log B in Löwner order.
bool chaotic_leq(const PdMatrix& a, const PdMatrix& b, double tol);

double min_eigenvalue(const HermitianMatrix& h);

/// supp A ⊆ supp B.
bool support_contained(const PsdMatrix& a, const PsdMatrix& b);
/// supp A ⟂ supp B.
bool supports_orthogonal(const PsdMatrix& a, const PsdMatrix& b);

/// Q^* M Q for an orthonormal basis Q.
Matrix compress(const Matrix& m, const Matrix& basis);
/// Q S Q^*.
Matrix expand(const Matrix& s, const Matrix& basis);

/// Eigenpairs of the pencil A y = x C y for PSD A and PD C.
///
/// `vectors` holds y_k = C^{1/2} z_k where z_k are the eigenvectors of
/// C^{-1/2} A C^{-1/2}, so that C^{1/2} g(C^{-1/2} A C^{-1/2}) C^{1/2} equals
/// sum_k g(x_k) y_k y_k^*. The solver works in the eigenbasis of C and runs
/// one-sided Jacobi on the column-scaled factor A^{1/2} C^{-1/2}, which keeps
/// relative accuracy when C is nearly singular.
struct RelativeSpectrum {
    RealVector values;
    Matrix vectors;

    /// sum_k g(x_k) y_k y_k^*
    Matrix congruence(const ScalarFunction& g) const;
    /// sum_k g(x_k) ||y_k||^2
    double trace_weighted(const ScalarFunction& g) const;
};

/// `c` must have strictly positive eigenvalues.
RelativeSpectrum relative_spectrum(const SpectralDecomposition& c, const PsdMatrix& a);
RelativeSpectrum relative_spectrum(const PdMatrix& c, const PsdMatrix& a);

/// Entrywise conjugate of a Hermitian matrix, i.e. its transpose.
PsdMatrix transpose(const PsdMatrix& a);

} // namespace qdiv
