// Test-only reference implementations, deliberately independent of the
// library's computational paths.
#pragma once
#include <array>
#include <vector>

#include "pintoc/dense.hpp"
#include "pintoc/propagate.hpp"

namespace oracles {

/// e^{tA} v in 80-bit arithmetic by Taylor series with scaling and squaring.
std::vector<double> expm_apply(const pintoc::dense::Matrix& A, double t,
                               const std::vector<double>& v);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
std::vector<double> jacobi_eigenvalues(pintoc::dense::Matrix A);

/// Dense Gaussian elimination with partial pivoting.
std::vector<double> ge_solve(pintoc::dense::Matrix A, std::vector<double> b);

/// Composite-Simpson quadrature of the 2x2 wave mode integrand
/// e^{sL} B B^T e^{sL^T} over (0, T); sigma > 0 is the stiffness eigenvalue.
std::array<double, 4> wave_mode_quadrature(double sigma, double T, double alpha,
                                           int panels);

/**
 * Raw superposition assembly (one spectral mode): solves the w sub-problems
 * by direct stage-wise quadrature with fresh exponentials, carries them with
 * the u propagations, and sums Y_l = w_l(T_l) + sum_j u_j(T_l).
 */
std::vector<double> brute_heat_Y(double sigma, double yin, double lambda, int L, int N,
                                 double T, double alpha,
                                 const pintoc::QuadratureRule& rule);

std::vector<std::array<double, 2>> brute_wave_Y(double sigma, std::array<double, 2> yin,
                                                std::array<double, 2> lambda, int L,
                                                int N, double T, double alpha,
                                                const pintoc::QuadratureRule& rule);

}  // namespace oracles
