#pragma once

// Candidate symmetry transformations of the PSD cone.

#include "qdiv/divergences.hpp"
#include "qdiv/linalg.hpp"

#include <string>
#include <variant>

namespace qdiv::lab {

/// A -> lambda U A U^dagger.
struct UnitaryCongruence {
    Matrix u;
    double lambda = 1.0;
};

/// A -> lambda U A^T U^dagger (transpose in the standard basis, then U).
struct AntiUnitaryCongruence {
    Matrix u;
    double lambda = 1.0;
};

/// A -> exp(T (log A) T^dagger + H) on PD inputs. With conjugate_linear the
/// operator is x -> T conj(x), which turns log A into its transpose.
struct LogLinear {
    Matrix t;
    Matrix h;
    bool conjugate_linear = false;
};

/// A -> X ⊙ P exp(P T (logA) T^dagger P) P, with P onto (T ker A)^perp.
struct LogProductForm {
    PsdMatrix x;
    Matrix t;
    bool conjugate_linear = false;
};

using TransformSpec = std::variant<UnitaryCongruence, AntiUnitaryCongruence, LogLinear, LogProductForm>;

/// Throws ValidationError on lambda <= 0, non-unitary U, singular T,
/// non-Hermitian H or a dimension mismatch.
void validate(const TransformSpec& spec, Index dim);

PsdMatrix apply_transform(const TransformSpec& spec, const PsdMatrix& a);

/// Orthogonal projection onto (T ker A)^perp.
Projection kernel_image_complement(const Matrix& t, const PsdMatrix& a, bool conjugate_linear);

/// True when the spec is, up to rounding, a map the classification theorems
/// list as a symmetry of `div`: lambda U A U^dagger or its antiunitary
/// version, with lambda = 1 required for f-divergences.
bool is_canonical(const TransformSpec& spec, const DivergenceSelector& div, double tol = 1e-10);

std::string describe(const TransformSpec& spec);

} // namespace qdiv::lab
