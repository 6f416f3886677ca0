#pragma once
#include <vector>

namespace pintoc::dense {

/// Row-major dense matrix, desk scale only.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(int m, int n) : rows(m), cols(n), a(static_cast<std::size_t>(m) * n, 0.0) {}

    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    static Matrix identity(int n);
};

Matrix multiply(const Matrix& A, const Matrix& B);
Matrix transpose(const Matrix& A);
std::vector<double> multiply(const Matrix& A, const std::vector<double>& x);
double max_abs(const Matrix& A);

/// LU factorization with partial pivoting.
struct LuFactors {
    Matrix lu;
    std::vector<int> piv;
    bool singular = false;
};

LuFactors lu_factor(const Matrix& A);
std::vector<double> lu_solve(const LuFactors& f, const std::vector<double>& b);

/// Matrix exponential by Pade(13) scaling and squaring.
Matrix expm(const Matrix& A);

}  // namespace pintoc::dense
