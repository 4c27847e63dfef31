#include "qdiv/lab/random.hpp"

#include "qdiv/defaults.hpp"
#include "qdiv/errors.hpp"

#include <cmath>

namespace qdiv::lab {

Rng::Rng(std::uint64_t seed) : Rng(seed, 0) {}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
}

double Rng::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

double Rng::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

int Rng::uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

bool Rng::bernoulli(double p) { return uniform(0.0, 1.0) < p; }

Complex Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * M_SQRT1_2, im * M_SQRT1_2};
}

void ChannelSpec::validate(double tol) const {
    if (kraus.empty()) throw ValidationError("channel: no Kraus operators");
    const Index d = kraus.front().cols();
    Matrix sum = Matrix::Zero(d, d);
    for (const auto& k : kraus) {
        if (k.cols() != d || k.rows() != d) throw ValidationError("channel: Kraus operators must be square of equal size");
        sum += k.adjoint() * k;
    }
    if ((sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > tol)
        throw ValidationError("channel: sum K^dagger K differs from I (not trace preserving)");
}

PsdMatrix ChannelSpec::apply(const PsdMatrix& a) const {
    if (a.dim() != dim()) throw ValidationError("channel: dimension mismatch");
    Matrix out = Matrix::Zero(a.dim(), a.dim());
    for (const auto& k : kraus) out += k * a.matrix() * k.adjoint();
    return PsdMatrix(HermitianMatrix::trusted(0.5 * (out + out.adjoint())), a.tolerances());
}

ChannelSpec ChannelSpec::unitary(const Matrix& u) { return ChannelSpec{{u}}; }

ChannelSpec ChannelSpec::completely_depolarizing(Index dim) {
    ChannelSpec ch;
    const double w = 1.0 / std::sqrt(static_cast<double>(dim));
    for (Index i = 0; i < dim; ++i)
        for (Index j = 0; j < dim; ++j) {
            Matrix k = Matrix::Zero(dim, dim);
            k(i, j) = w;
            ch.kraus.push_back(std::move(k));
        }
    return ch;
}

Matrix ginibre(Index rows, Index cols, Rng& rng) {
    Matrix g(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) g(i, j) = rng.complex_normal();
    return g;
}

Matrix random_hermitian(Index dim, Rng& rng) {
    const Matrix g = ginibre(dim, dim, rng);
    return 0.5 * (g + g.adjoint());
}

Matrix haar_unitary(Index dim, Rng& rng) {
    const Eigen::HouseholderQR<Matrix> qr(ginibre(dim, dim, rng));
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

PsdMatrix random_psd(Index dim, Index rank, Rng& rng) {
    if (rank < 0 || rank > dim) throw ValidationError("random_psd: rank out of range");
    if (rank == 0) return PsdMatrix::zero(dim);
    const Matrix g = ginibre(dim, rank, rng) / std::sqrt(static_cast<double>(dim));
    // Build from the exact rank-r factor so that the kernel is exact up to
    // rounding in the eigensolver.
    const Eigen::HouseholderQR<Matrix> qr(g);
    const Matrix q = Matrix(qr.householderQ()).leftCols(rank);
    const Matrix small = q.adjoint() * g * g.adjoint() * q;
    const auto s = eig_hermitian(HermitianMatrix::trusted(0.5 * (small + small.adjoint())));
    RealVector values = RealVector::Zero(dim);
    Matrix vectors(dim, dim);
    values.tail(rank) = s.values.cwiseMax(0.0);
    vectors.rightCols(rank) = q * s.vectors;
    if (rank < dim) {
        const Eigen::HouseholderQR<Matrix> full(vectors.rightCols(rank));
        vectors.leftCols(dim - rank) = Matrix(full.householderQ()).rightCols(dim - rank);
    }
    return PsdMatrix::from_spectrum(values, vectors);
}

PdMatrix random_pd(Index dim, Rng& rng) {
    const PsdMatrix p = random_psd(dim, dim, rng);
    return PdMatrix(PsdMatrix::from_spectrum(p.spectrum().values.array() + defaults::pd_shift, p.spectrum().vectors));
}

PsdMatrix random_density(Index dim, Rng& rng) {
    const PdMatrix p = random_pd(dim, rng);
    return PsdMatrix::from_spectrum(p.spectrum().values / p.trace(), p.spectrum().vectors);
}

ChannelSpec random_channel(Index dim, int m, Rng& rng) {
    if (m < 1) throw ValidationError("random_channel: need at least one Kraus operator");
    const Matrix v = haar_unitary(dim * m, rng).leftCols(dim);
    ChannelSpec ch;
    for (int i = 0; i < m; ++i) ch.kraus.push_back(v.middleRows(i * dim, dim));
    return ch;
}

std::pair<PsdMatrix, PsdMatrix> random_commuting_pair(Index dim, Rng& rng) {
    const Matrix u = haar_unitary(dim, rng);
    RealVector a(dim), b(dim);
    for (Index i = 0; i < dim; ++i) {
        a(i) = rng.bernoulli(0.25) ? 0.0 : rng.uniform(0.05, 2.0);
        b(i) = rng.bernoulli(0.25) ? 0.0 : rng.uniform(0.05, 2.0);
    }
    if (a.maxCoeff() == 0.0) a(rng.uniform_int(0, static_cast<int>(dim) - 1)) = rng.uniform(0.05, 2.0);
    return {PsdMatrix::from_spectrum(a, u), PsdMatrix::from_spectrum(b, u)};
}

Matrix haar_unitary(Index dim, std::uint64_t seed) {
    Rng rng(seed);
    return haar_unitary(dim, rng);
}

PsdMatrix random_psd(Index dim, Index rank, std::uint64_t seed) {
    Rng rng(seed);
    return random_psd(dim, rank, rng);
}

PdMatrix random_pd(Index dim, std::uint64_t seed) {
    Rng rng(seed);
    return random_pd(dim, rng);
}

PsdMatrix random_density(Index dim, std::uint64_t seed) {
    Rng rng(seed);
    return random_density(dim, rng);
}

ChannelSpec random_channel(Index dim, int m, std::uint64_t seed) {
    Rng rng(seed);
    return random_channel(dim, m, rng);
}

std::pair<PsdMatrix, PsdMatrix> random_commuting_pair(Index dim, std::uint64_t seed) {
    Rng rng(seed);
    return random_commuting_pair(dim, rng);
}

} // namespace qdiv::lab
