#include "pintoc/dense.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace pintoc::dense {

Matrix Matrix::identity(int n) {
    Matrix I(n, n);
    for (int i = 0; i < n; ++i) I.at(i, i) = 1.0;
    return I;
}

Matrix multiply(const Matrix& A, const Matrix& B) {
    if (A.cols != B.rows) throw std::invalid_argument("dense multiply dimension mismatch");
    Matrix C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i) {
        for (int k = 0; k < A.cols; ++k) {
            const double aik = A.at(i, k);
            if (aik == 0.0) continue;
            const double* brow = B.a.data() + static_cast<std::size_t>(k) * B.cols;
            double* crow = C.a.data() + static_cast<std::size_t>(i) * C.cols;
            for (int j = 0; j < B.cols; ++j) crow[j] += aik * brow[j];
        }
    }
    return C;
}

Matrix transpose(const Matrix& A) {
    Matrix T(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

std::vector<double> multiply(const Matrix& A, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != A.cols)
        throw std::invalid_argument("dense matvec dimension mismatch");
    std::vector<double> y(A.rows, 0.0);
    for (int i = 0; i < A.rows; ++i) {
        const double* row = A.a.data() + static_cast<std::size_t>(i) * A.cols;
        double s = 0.0;
        for (int j = 0; j < A.cols; ++j) s += row[j] * x[j];
        y[i] = s;
    }
    return y;
}

double max_abs(const Matrix& A) {
    double m = 0.0;
    for (double v : A.a) m = std::max(m, std::abs(v));
    return m;
}

LuFactors lu_factor(const Matrix& A) {
    if (A.rows != A.cols) throw std::invalid_argument("LU needs a square matrix");
    const int n = A.rows;
    LuFactors f{A, std::vector<int>(n), false};
    for (int i = 0; i < n; ++i) f.piv[i] = i;
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(f.lu.at(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(f.lu.at(i, k));
            if (v > best) { best = v; p = i; }
        }
        if (best == 0.0) { f.singular = true; return f; }
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(f.lu.at(k, j), f.lu.at(p, j));
            std::swap(f.piv[k], f.piv[p]);
        }
        const double pivot = f.lu.at(k, k);
        for (int i = k + 1; i < n; ++i) {
            const double m = f.lu.at(i, k) / pivot;
            f.lu.at(i, k) = m;
            for (int j = k + 1; j < n; ++j) f.lu.at(i, j) -= m * f.lu.at(k, j);
        }
    }
    return f;
}

std::vector<double> lu_solve(const LuFactors& f, const std::vector<double>& b) {
    if (f.singular) throw std::runtime_error("LU solve on singular matrix");
    const int n = f.lu.rows;
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = b[f.piv[i]];
    for (int i = 1; i < n; ++i) {
        double s = x[i];
        for (int j = 0; j < i; ++j) s -= f.lu.at(i, j) * x[j];
        x[i] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = x[i];
        for (int j = i + 1; j < n; ++j) s -= f.lu.at(i, j) * x[j];
        x[i] = s / f.lu.at(i, i);
    }
    return x;
}

namespace {

double norm_inf(const Matrix& A) {
    double m = 0.0;
    for (int i = 0; i < A.rows; ++i) {
        double s = 0.0;
        for (int j = 0; j < A.cols; ++j) s += std::abs(A.at(i, j));
        m = std::max(m, s);
    }
    return m;
}

Matrix add_scaled(const Matrix& A, const Matrix& B, double b) {
    Matrix C = A;
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] += b * B.a[i];
    return C;
}

}  // namespace

Matrix expm(const Matrix& A) {
    // Higham's degree-13 Pade approximant with scaling and squaring.
    static const double c[] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0,  129060195264000.0,   10559470521600.0,
        670442572800.0,      33522128640.0,       1323241920.0,
        40840800.0,          960960.0,            16380.0, 182.0, 1.0};
    const int n = A.rows;
    if (n != A.cols) throw std::invalid_argument("expm needs a square matrix");

    int s = 0;
    const double nrm = norm_inf(A);
    if (nrm > 5.371920351148152) {
        s = std::max(0, static_cast<int>(std::ceil(std::log2(nrm / 5.371920351148152))));
    }
    Matrix As = A;
    const double scale = std::ldexp(1.0, -s);
    for (double& v : As.a) v *= scale;

    const Matrix A2 = multiply(As, As);
    const Matrix A4 = multiply(A2, A2);
    const Matrix A6 = multiply(A2, A4);
    const Matrix I = Matrix::identity(n);

    // U = A (A6 (c13 A6 + c11 A4 + c9 A2) + c7 A6 + c5 A4 + c3 A2 + c1 I)
    Matrix W1 = add_scaled(add_scaled(Matrix(n, n), A6, c[13]), A4, c[11]);
    W1 = add_scaled(W1, A2, c[9]);
    Matrix W = multiply(A6, W1);
    W = add_scaled(W, A6, c[7]);
    W = add_scaled(W, A4, c[5]);
    W = add_scaled(W, A2, c[3]);
    W = add_scaled(W, I, c[1]);
    const Matrix U = multiply(As, W);

    // V = A6 (c12 A6 + c10 A4 + c8 A2) + c6 A6 + c4 A4 + c2 A2 + c0 I
    Matrix Z1 = add_scaled(add_scaled(Matrix(n, n), A6, c[12]), A4, c[10]);
    Z1 = add_scaled(Z1, A2, c[8]);
    Matrix V = multiply(A6, Z1);
    V = add_scaled(V, A6, c[6]);
    V = add_scaled(V, A4, c[4]);
    V = add_scaled(V, A2, c[2]);
    V = add_scaled(V, I, c[0]);

    // Solve (V - U) X = (V + U).
    Matrix P = add_scaled(V, U, 1.0);
    Matrix Q = add_scaled(V, U, -1.0);
    LuFactors f = lu_factor(Q);
    Matrix X(n, n);
    std::vector<double> col(n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) col[i] = P.at(i, j);
        std::vector<double> x = lu_solve(f, col);
        for (int i = 0; i < n; ++i) X.at(i, j) = x[i];
    }
    for (int k = 0; k < s; ++k) X = multiply(X, X);
    return X;
}

}  // namespace pintoc::dense
