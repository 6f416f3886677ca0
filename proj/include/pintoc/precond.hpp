#pragma once
#include "pintoc/model.hpp"

namespace pintoc {

/// Tridiagonal system in three diagonal arrays (sub[0] and super[n-1] unused).
struct BandedSystem {
    int n = 0;
    Vector sub, diag, super;

    static BandedSystem heat_shifted(int r, double alpha);   // L - I/(2 alpha)
    static BandedSystem wave_elliptic(int r, double a, double b);  // aI + bA, A = -Lap
    static BandedSystem laplacian(int r);                    // L itself
};

/// One-shot Thomas solve; throws on a zero pivot.
Vector tridiag_solve(const BandedSystem& sys, const Vector& f);

/// Thomas factorization reused across solves.
class TridiagonalSolver {
  public:
    explicit TridiagonalSolver(BandedSystem sys);
    Vector solve(const Vector& f) const;
    int size() const { return sys_.n; }

  private:
    BandedSystem sys_;
    Vector cstar_;  // eliminated super-diagonal
    Vector pivot_;
};

/// Multiply by a tridiagonal matrix.
Vector tridiag_apply(const BandedSystem& sys, const Vector& v);

/**
 * @brief Heat preconditioner L (L - I/(2 alpha))^{-1}: one elliptic Thomas
 * solve followed by a multiplication with the Laplacian.
 */
class HeatPreconditioner {
  public:
    HeatPreconditioner(int r, double alpha);
    Vector apply(const Vector& v) const;

  private:
    BandedSystem lap_;
    TridiagonalSolver shifted_;
};

struct PrecondParams {
    double a;  // T
    double b;  // 2 alpha
    double c;  // 1 / (2 alpha + T)

    static PrecondParams wave_defaults(double T, double alpha);
};

/**
 * @brief Wave preconditioner: block-diagonal approximation of the inverse of
 * the continuous interface operator.
 *
 * Position block: v1 -> bA (aI + bA)^{-1} v1 (Thomas solve, then multiply by
 * bA).  Velocity block: v2 -> (b c) v2.  Per mode the factors are
 * 2 alpha a_k / (T + 2 alpha a_k) and 2 alpha / (2 alpha + T), the exact
 * reciprocals of the continuous diagonal symbols; both lie in (0, 1).
 */
class WavePreconditioner {
  public:
    WavePreconditioner(int r, PrecondParams params);
    Vector apply(const Vector& v) const;
    const PrecondParams& params() const { return params_; }

  private:
    int r_;
    PrecondParams params_;
    BandedSystem stiffness_;  // A = -Lap, scaled by b
    TridiagonalSolver elliptic_;
};

}  // namespace pintoc
