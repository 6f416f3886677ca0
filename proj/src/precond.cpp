#include "pintoc/precond.hpp"

#include <cmath>
#include <stdexcept>

namespace pintoc {

BandedSystem BandedSystem::laplacian(int r) {
    if (r < 1) throw std::invalid_argument("laplacian needs r >= 1");
    const double h = 1.0 / (r + 1);
    BandedSystem s;
    s.n = r;
    s.sub.assign(r, 1.0 / (h * h));
    s.diag.assign(r, -2.0 / (h * h));
    s.super.assign(r, 1.0 / (h * h));
    s.sub[0] = 0.0;
    s.super[r - 1] = 0.0;
    return s;
}

BandedSystem BandedSystem::heat_shifted(int r, double alpha) {
    if (alpha <= 0.0) throw std::invalid_argument("alpha must be positive");
    BandedSystem s = laplacian(r);
    for (double& d : s.diag) d -= 1.0 / (2.0 * alpha);
    return s;
}

BandedSystem BandedSystem::wave_elliptic(int r, double a, double b) {
    BandedSystem s = laplacian(r);
    for (int i = 0; i < r; ++i) {
        s.diag[i] = a - b * s.diag[i];  // A = -Lap
        if (i > 0) s.sub[i] = -b * s.sub[i];
        if (i + 1 < r) s.super[i] = -b * s.super[i];
    }
    return s;
}

Vector tridiag_apply(const BandedSystem& sys, const Vector& v) {
    if (static_cast<int>(v.size()) != sys.n)
        throw std::invalid_argument("tridiagonal apply dimension mismatch");
    Vector out(sys.n);
    for (int i = 0; i < sys.n; ++i) {
        double s = sys.diag[i] * v[i];
        if (i > 0) s += sys.sub[i] * v[i - 1];
        if (i + 1 < sys.n) s += sys.super[i] * v[i + 1];
        out[i] = s;
    }
    return out;
}

TridiagonalSolver::TridiagonalSolver(BandedSystem sys) : sys_(std::move(sys)) {
    const int n = sys_.n;
    cstar_.assign(n, 0.0);
    pivot_.assign(n, 0.0);
    double p = sys_.diag[0];
    if (p == 0.0) throw std::runtime_error("tridiagonal factorization hit a zero pivot");
    pivot_[0] = p;
    cstar_[0] = (n > 1) ? sys_.super[0] / p : 0.0;
    for (int i = 1; i < n; ++i) {
        p = sys_.diag[i] - sys_.sub[i] * cstar_[i - 1];
        if (p == 0.0) throw std::runtime_error("tridiagonal factorization hit a zero pivot");
        pivot_[i] = p;
        if (i + 1 < n) cstar_[i] = sys_.super[i] / p;
    }
}

Vector TridiagonalSolver::solve(const Vector& f) const {
    const int n = sys_.n;
    if (static_cast<int>(f.size()) != n)
        throw std::invalid_argument("tridiagonal solve dimension mismatch");
    Vector x(n);
    x[0] = f[0] / pivot_[0];
    for (int i = 1; i < n; ++i) x[i] = (f[i] - sys_.sub[i] * x[i - 1]) / pivot_[i];
    for (int i = n - 2; i >= 0; --i) x[i] -= cstar_[i] * x[i + 1];
    return x;
}

Vector tridiag_solve(const BandedSystem& sys, const Vector& f) {
    return TridiagonalSolver(sys).solve(f);
}

HeatPreconditioner::HeatPreconditioner(int r, double alpha)
    : lap_(BandedSystem::laplacian(r)),
      shifted_(BandedSystem::heat_shifted(r, alpha)) {}

Vector HeatPreconditioner::apply(const Vector& v) const {
    return tridiag_apply(lap_, shifted_.solve(v));
}

PrecondParams PrecondParams::wave_defaults(double T, double alpha) {
    if (T <= 0.0 || alpha <= 0.0)
        throw std::invalid_argument("wave preconditioner needs positive T and alpha");
    return {T, 2.0 * alpha, 1.0 / (2.0 * alpha + T)};
}

WavePreconditioner::WavePreconditioner(int r, PrecondParams params)
    : r_(r), params_(params),
      stiffness_(BandedSystem::wave_elliptic(r, 0.0, params.b)),
      elliptic_(BandedSystem::wave_elliptic(r, params.a, params.b)) {
    if (params.a <= 0.0 || params.b <= 0.0 || params.c <= 0.0)
        throw std::invalid_argument("wave preconditioner parameters must be positive");
}

Vector WavePreconditioner::apply(const Vector& v) const {
    if (static_cast<int>(v.size()) != 2 * r_)
        throw std::invalid_argument("wave preconditioner dimension mismatch");
    Vector v1(v.begin(), v.begin() + r_);
    Vector x = tridiag_apply(stiffness_, elliptic_.solve(v1));  // bA (aI + bA)^{-1} v1
    Vector out(2 * r_);
    const double lower = params_.b * params_.c;  // 2 alpha / (2 alpha + T)
    for (int i = 0; i < r_; ++i) {
        out[i] = x[i];
        out[r_ + i] = lower * v[r_ + i];
    }
    return out;
}

}  // namespace pintoc
