#pragma once
#include "pintoc/dense.hpp"
#include "pintoc/krylov.hpp"
#include "pintoc/paraexp.hpp"

namespace pintoc::analysis {

/// Scalar symbols of the heat interface operator at one Laplacian eigenvalue.
struct SymbolTriple {
    double sigma;
    double f;     // continuous symbol
    double f_dt;  // discrete (Implicit Euler) symbol
    double psi0;  // f_dt / f
};

/// Evaluates f, f_dt, psi0 with expm1-stable forms; requires sigma < 0.
SymbolTriple heat_symbol(double sigma, double T, double alpha, double dt);

struct Theorem1Result {
    double mu_min = 0.0;
    double mu_max = 0.0;
    double bound = 0.0;  // 1 + dt/alpha
    bool holds = false;
};

/// Checks 1 < psi0(sigma_k) < 1 + dt/alpha over the whole spectrum.
Theorem1Result theorem1_check(int r, int L, int N, double T, double alpha);

/// 2x2 symbol of the continuous wave interface operator at sigma = -eig(Lap) > 0.
struct WaveSymbol {
    double m11, m12, m22;
    double h;  // determinant m11 m22 - m12^2
    double inv11, inv12, inv22;
};

WaveSymbol wave_symbol_Mc(double sigma, double T, double alpha);

/// Dense matrix whose columns are apply(e_j); refuses n beyond the cap.
dense::Matrix materialize(const LinearMap& apply, int n,
                          const ParallelPlan& plan = ParallelPlan::serial(),
                          int cap = 1400);

enum class SpectrumMethod { ExactSymbol, DensePowerIteration };

struct SpectrumReport {
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    double cond = 0.0;  // +inf flagged via infinite()
    SpectrumMethod method = SpectrumMethod::DensePowerIteration;
    bool infinite = false;
};

/**
 * @brief Extreme eigenvalues (symmetric) or singular values (general) by
 * power iteration plus LU-based inverse iteration, iterated until successive
 * estimates agree to 1e-6 relative.
 */
SpectrumReport spectrum_extremes(const dense::Matrix& A, bool symmetric);

}  // namespace pintoc::analysis
