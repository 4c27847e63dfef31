#pragma once

// Central table of numerical defaults. Every CLI flag and config key
// overrides one entry here.
//
//   key                 value        used by
//   ------------------  -----------  ----------------------------------------
//   herm_tol            1e-9         Hermiticity check at construction
//   recon_tol           1e-9         projection / reconstruction checks
//   clip_rel            1e-10        eigenvalue clipping, x max(1, lambda_max)
//   rank_rel            1e-10        rank and support cut, x max(1, lambda_max)
//   group_rel           1e-8         eigenvalue grouping in S_f
//   support_tol         1e-8         subspace inclusion / orthogonality
//   eps0                1e-2         first shift of the epsilon schedule
//   ratio               0.5          epsilon_{k+1} = ratio * epsilon_k
//   conv_tol            1e-7         successive-difference stop rule
//   max_steps           40           epsilon steps before ConvergenceError
//   trotter_doublings   20           Lie-Trotter n = 1, 2, ..., 2^20
//   quadrature          50 x 8 Gauss-Legendre nodes over s in [1e-8, 1e8]
//   t_grid              {1, 10, 100, 1000, 10000}
//   pd_shift            1e-3         random_pd adds this multiple of I
//   preservation_tol    1e-8         tolerance of preservation experiments
//   witness_tol         1e-3         minimal deviation accepted as a witness

#include <vector>

namespace qdiv {

/// Geometric epsilon schedule eps_k = eps0 * ratio^k for limits eps -> 0.
struct LimitSchedule {
    double eps0 = 1e-2;
    double ratio = 0.5;
    double conv_tol = 1e-7;
    int max_steps = 40;

    void validate() const;
};

/// Doubling schedule n = 1, 2, 4, ... for the Lie-Trotter product.
struct TrotterSchedule {
    double conv_tol = 1e-7;
    int max_doublings = 20;
    /// Combine consecutive iterates as 2 X_{2n} - X_n before testing
    /// convergence. The plain sequence converges like 1/n.
    bool extrapolate = true;
};

namespace defaults {

inline constexpr double preservation_tol = 1e-8;
inline constexpr double witness_tol = 1e-3;
inline constexpr double pd_shift = 1e-3;

inline std::vector<double> t_grid() { return {1.0, 10.0, 100.0, 1000.0, 10000.0}; }

} // namespace defaults

} // namespace qdiv
