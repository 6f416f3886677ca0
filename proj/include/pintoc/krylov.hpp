#pragma once
#include <functional>
#include <optional>
#include <utility>

#include "pintoc/model.hpp"

namespace pintoc {

enum class PrecondSide { Right, Left, None };

struct KrylovConfig {
    std::optional<int> restart;  // nullopt = full GMRES
    double tol = 1e-8;           // relative residual
    int maxit = 500;             // total inner-iteration budget
    PrecondSide side = PrecondSide::Right;
};

struct KrylovReport {
    int iterations = 0;
    std::vector<double> residuals;  // per inner iteration, relative
    bool converged = false;
    double final_residual = 0.0;
};

using LinearMap = std::function<Vector(const Vector&)>;

/**
 * @brief Restarted GMRES with modified Gram-Schmidt orthogonalization.
 *
 * Right preconditioning solves A M^{-1} u = b, x = M^{-1} u, and stops on the
 * true residual ||b - A x|| / ||b||.  Left preconditioning solves
 * M^{-1} A x = M^{-1} b and stops on the preconditioned residual relative to
 * ||M^{-1} b||.  Iteration counts are total inner steps across restart cycles.
 */
std::pair<Vector, KrylovReport> gmres(const LinearMap& apply_A, const Vector& b,
                                      const Vector& x0, const KrylovConfig& config,
                                      const LinearMap* apply_Minv = nullptr);

}  // namespace pintoc
