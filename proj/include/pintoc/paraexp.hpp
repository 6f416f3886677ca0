#pragma once
#include "pintoc/propagate.hpp"

namespace pintoc {

/**
 * @brief Deterministic worker plan: sub-interval terms are chunked
 * contiguously over the workers and always reduced left to right, so the
 * result is bitwise identical for any worker count.
 */
struct ParallelPlan {
    int worker_count = 1;

    static ParallelPlan serial() { return {1}; }
    static ParallelPlan with_workers(int w);
};

/// b = y_tg - P_1(T_L) y_in.
Vector assemble_rhs(const SubintervalOperators& ops);

/**
 * @brief M Lambda with M = I + (1/alpha) R_L(T_L)
 * + (1/alpha) sum_j P_j(T_L) R_{j-1}(T_{j-1}); the L sub-interval terms are
 * evaluated concurrently and reduced in fixed order.
 */
Vector matvec_M(const SubintervalOperators& ops, const Vector& lambda_L,
                const ParallelPlan& plan);

struct FineSample {
    double t;
    Vector y, lambda, nu;
};

struct InterfaceSolution {
    std::vector<Vector> Lambda;  // Lambda_1 .. Lambda_L
    std::vector<Vector> Y;       // Y_1 .. Y_L
    bool has_fine = false;
    std::vector<std::vector<FineSample>> fine;  // per sub-interval, N+1 samples
    double control_energy = 0.0;  // quadrature of ||nu(t)||^2 at the stage times
};

/**
 * @brief Recovers interface states from the converged Lambda_L and, if
 * requested, samples y, lambda, nu on the fine grid of every sub-interval.
 */
InterfaceSolution reconstruct(const SubintervalOperators& ops, const Vector& lambda_L,
                              const ParallelPlan& plan, bool emit_fine);

/// 0.5 ||Y_L - y_tg||^2 + (alpha/2) * control energy quadrature.
double objective(const InterfaceSolution& sol, const ControlProblem& problem,
                 const TimeGrid& grid);

}  // namespace pintoc
