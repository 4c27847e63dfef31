#pragma once

// Seeded samplers. A run is reproducible from its seed alone: trial k of a
// run draws from Rng(seed, k), independent of how many draws earlier trials
// made.

#include "qdiv/linalg.hpp"

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace qdiv::lab {

class Rng {
  public:
    explicit Rng(std::uint64_t seed);
    Rng(std::uint64_t seed, std::uint64_t stream);

    double normal();
    double uniform(double lo, double hi);
    int uniform_int(int lo, int hi); // inclusive
    bool bernoulli(double p);
    /// Complex Gaussian with E|z|^2 = 1.
    Complex complex_normal();

  private:
    std::mt19937_64 engine_;
};

/// Completely positive map X -> sum_i K_i X K_i^dagger.
struct ChannelSpec {
    std::vector<Matrix> kraus;

    /// Throws ValidationError unless sum K_i^dagger K_i = I within tol.
    void validate(double tol = 1e-9) const;
    Index dim() const { return kraus.empty() ? 0 : kraus.front().cols(); }
    PsdMatrix apply(const PsdMatrix& a) const;

    static ChannelSpec unitary(const Matrix& u);
    /// X -> tr(X) I / d.
    static ChannelSpec completely_depolarizing(Index dim);
};

Matrix ginibre(Index rows, Index cols, Rng& rng);
Matrix random_hermitian(Index dim, Rng& rng);

/// QR of a Ginibre matrix with the phases of diag(R) divided out.
Matrix haar_unitary(Index dim, Rng& rng);
/// G G^dagger with G of size dim x rank, scaled so that E tr = rank.
PsdMatrix random_psd(Index dim, Index rank, Rng& rng);
/// Full-rank random_psd plus pd_shift * I.
PdMatrix random_pd(Index dim, Rng& rng);
/// Full-rank, trace one.
PsdMatrix random_density(Index dim, Rng& rng);
/// First dim columns of a Haar unitary of size m*dim, cut into m blocks.
ChannelSpec random_channel(Index dim, int m, Rng& rng);
/// Common Haar eigenbasis; each eigenvalue is zero with probability 1/4.
/// The first matrix is never zero.
std::pair<PsdMatrix, PsdMatrix> random_commuting_pair(Index dim, Rng& rng);

Matrix haar_unitary(Index dim, std::uint64_t seed);
PsdMatrix random_psd(Index dim, Index rank, std::uint64_t seed);
PdMatrix random_pd(Index dim, std::uint64_t seed);
PsdMatrix random_density(Index dim, std::uint64_t seed);
ChannelSpec random_channel(Index dim, int m, std::uint64_t seed);
std::pair<PsdMatrix, PsdMatrix> random_commuting_pair(Index dim, std::uint64_t seed);

} // namespace qdiv::lab
