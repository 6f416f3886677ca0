#include "pintoc/model.hpp"

#include <cmath>
#include <stdexcept>

namespace pintoc {

double dot(const Vector& a, const Vector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

void axpy(double a, const Vector& x, Vector& y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

ControlProblem make_problem(ProblemKind kind, int r, double horizon, double alpha,
                            Vector y_in, Vector y_tg) {
    if (r < 1) throw std::invalid_argument("problem dimension r must be >= 1");
    if (horizon <= 0.0) throw std::invalid_argument("horizon T must be positive");
    if (alpha <= 0.0) throw std::invalid_argument("regularization alpha must be positive");
    ControlProblem p{kind, r, horizon, alpha, std::move(y_in), std::move(y_tg)};
    const std::size_t dim = static_cast<std::size_t>(p.state_dim());
    if (p.y_in.size() != dim || p.y_tg.size() != dim)
        throw std::invalid_argument("initial/target state length does not match state_dim");
    return p;
}

ControlProblem make_default_problem(ProblemKind kind, int r, double horizon, double alpha) {
    Vector init = sample_profile(Profile::GaussInit, r);
    Vector target = sample_profile(Profile::GaussTarget, r);
    if (kind == ProblemKind::Wave) {
        init.resize(2 * r, 0.0);
        target.resize(2 * r, 0.0);
    }
    return make_problem(kind, r, horizon, alpha, std::move(init), std::move(target));
}

TimeGrid::TimeGrid(int L, int N, double T)
    : subintervals(L), steps(N), horizon(T) {
    if (L < 1 || N < 1) throw std::invalid_argument("time grid needs L >= 1 and N >= 1");
    if (T <= 0.0) throw std::invalid_argument("horizon must be positive");
    dT = T / L;
    dt = T / (static_cast<double>(L) * N);
    interfaces.resize(L + 1);
    for (int l = 0; l <= L; ++l) interfaces[l] = l * dT;
    interfaces[L] = T;
}

SpectralBasis::SpectralBasis(int r) : r_(r) {
    if (r < 1) throw std::invalid_argument("spectral basis needs r >= 1");
    h_ = 1.0 / (r + 1);
    eigvals_.resize(r);
    const double scale = 4.0 * (r + 1.0) * (r + 1.0);
    for (int k = 1; k <= r; ++k) {
        const double s = std::sin(0.5 * k * M_PI * h_);
        eigvals_[k - 1] = -scale * s * s;
    }
    // Orthonormal: sqrt(2/(r+1)) sin(k pi j /(r+1)); symmetric in (k, j).
    basis_.resize(static_cast<std::size_t>(r) * r);
    const double w = std::sqrt(2.0 * h_);
    for (int k = 1; k <= r; ++k)
        for (int j = 1; j <= r; ++j)
            basis_[static_cast<std::size_t>(k - 1) * r + (j - 1)] =
                w * std::sin(k * M_PI * j * h_);
}

double SpectralBasis::eigenvalue(int k) const {
    if (k < 1 || k > r_) throw std::out_of_range("mode index out of range");
    return eigvals_[k - 1];
}

Vector SpectralBasis::apply_basis(const Vector& v) const {
    if (static_cast<int>(v.size()) != r_)
        throw std::invalid_argument("vector length does not match basis size");
    Vector out(r_, 0.0);
    for (int k = 0; k < r_; ++k) {
        const double* row = basis_.data() + static_cast<std::size_t>(k) * r_;
        double s = 0.0;
        for (int j = 0; j < r_; ++j) s += row[j] * v[j];
        out[k] = s;
    }
    return out;
}

Vector SpectralBasis::transform(const Vector& v) const { return apply_basis(v); }
Vector SpectralBasis::inverse_transform(const Vector& v) const { return apply_basis(v); }

Vector SpectralBasis::eigenvector(int k) const {
    if (k < 1 || k > r_) throw std::out_of_range("mode index out of range");
    Vector v(r_);
    for (int j = 0; j < r_; ++j)
        v[j] = basis_[static_cast<std::size_t>(k - 1) * r_ + j];
    return v;
}

Operator build_heat_operator(int r) {
    if (r < 1) throw std::invalid_argument("heat operator needs r >= 1");
    const double h = 1.0 / (r + 1);
    const double off = 1.0 / (h * h);
    const double diag = -2.0 / (h * h);
    return Operator{r, [r, off, diag](const Vector& v) {
        if (static_cast<int>(v.size()) != r)
            throw std::invalid_argument("heat operator dimension mismatch");
        Vector out(r);
        for (int i = 0; i < r; ++i) {
            double s = diag * v[i];
            if (i > 0) s += off * v[i - 1];
            if (i + 1 < r) s += off * v[i + 1];
            out[i] = s;
        }
        return out;
    }};
}

Operator build_wave_operator(int r) {
    if (r < 1) throw std::invalid_argument("wave operator needs r >= 1");
    Operator lap = build_heat_operator(r);
    return Operator{2 * r, [r, lap](const Vector& y) {
        if (static_cast<int>(y.size()) != 2 * r)
            throw std::invalid_argument("wave operator dimension mismatch");
        Vector u(y.begin(), y.begin() + r);
        Vector out(2 * r);
        Vector lu = lap.apply(u);
        for (int i = 0; i < r; ++i) {
            out[i] = y[r + i];
            out[r + i] = lu[i];
        }
        return out;
    }};
}

std::pair<double, Vector> laplacian_eigenpair(int r, int k) {
    SpectralBasis basis(r);
    return {basis.eigenvalue(k), basis.eigenvector(k)};
}

Vector sample_profile(Profile profile, int r) {
    if (r < 1) throw std::invalid_argument("profile sampling needs r >= 1");
    Vector v(r, 0.0);
    if (profile == Profile::Zero) return v;
    const double h = 1.0 / (r + 1);
    for (int j = 1; j <= r; ++j) {
        const double x = j * h;
        if (profile == Profile::GaussInit) {
            v[j - 1] = std::exp(-100.0 * (x - 0.5) * (x - 0.5));
        } else {
            v[j - 1] = 0.5 * std::exp(-100.0 * (x - 0.25) * (x - 0.25)) +
                       0.5 * std::exp(-100.0 * (x - 0.75) * (x - 0.75));
        }
    }
    return v;
}

}  // namespace pintoc
