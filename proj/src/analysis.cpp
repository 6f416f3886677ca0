#include "pintoc/analysis.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

namespace pintoc::analysis {

SymbolTriple heat_symbol(double sigma, double T, double alpha, double dt) {
    if (sigma >= 0.0) throw std::domain_error("heat symbol needs sigma < 0");
    if (dt <= 0.0) throw std::domain_error("heat symbol needs dt > 0");
    SymbolTriple s;
    s.sigma = sigma;
    s.f = 1.0 + std::expm1(2.0 * sigma * T) / (2.0 * alpha * sigma);
    s.f_dt = 1.0 + (dt / alpha) * (std::expm1(2.0 * T * sigma) / std::expm1(2.0 * dt * sigma));
    s.psi0 = s.f_dt / s.f;
    return s;
}

Theorem1Result theorem1_check(int r, int L, int N, double T, double alpha) {
    const SpectralBasis basis(r);
    const double dt = T / (static_cast<double>(L) * N);
    Theorem1Result res;
    res.bound = 1.0 + dt / alpha;
    res.mu_min = std::numeric_limits<double>::infinity();
    res.mu_max = -std::numeric_limits<double>::infinity();
    for (int k = 1; k <= r; ++k) {
        const double psi0 = heat_symbol(basis.eigenvalue(k), T, alpha, dt).psi0;
        res.mu_min = std::min(res.mu_min, psi0);
        res.mu_max = std::max(res.mu_max, psi0);
    }
    res.holds = res.mu_min > 1.0 && res.mu_max < res.bound;
    return res;
}

WaveSymbol wave_symbol_Mc(double sigma, double T, double alpha) {
    if (sigma <= 0.0) throw std::domain_error("wave symbol needs sigma > 0");
    const double w = std::sqrt(sigma);
    WaveSymbol s;
    s.m11 = 1.0 + T / (2.0 * alpha * sigma) -
            std::sin(2.0 * T * w) / (4.0 * alpha * sigma * w);
    s.m12 = (1.0 - std::cos(2.0 * T * w)) / (4.0 * alpha * sigma);
    s.m22 = 1.0 + T / (2.0 * alpha) + std::sin(2.0 * T * w) / (4.0 * alpha * w);
    s.h = s.m11 * s.m22 - s.m12 * s.m12;
    s.inv11 = s.m22 / s.h;
    s.inv12 = -s.m12 / s.h;
    s.inv22 = s.m11 / s.h;
    return s;
}

dense::Matrix materialize(const LinearMap& apply, int n, const ParallelPlan& plan,
                          int cap) {
    if (n > cap) throw std::invalid_argument("materialize cap exceeded");
    if (n < 1) throw std::invalid_argument("materialize needs n >= 1");
    dense::Matrix M(n, n);
    // Probe tasks chunked over the plan's workers; columns are independent.
    std::vector<Vector> cols(n);
    auto task = [&](int j) {
        Vector e(n, 0.0);
        e[j] = 1.0;
        cols[j] = apply(e);
    };
    // Reuse the deterministic chunking from paraexp via a local copy.
    const int workers = std::min(plan.worker_count, n);
    if (workers <= 1) {
        for (int j = 0; j < n; ++j) task(j);
    } else {
        std::vector<std::thread> pool;
        const int base = n / workers, extra = n % workers;
        int begin = 0;
        for (int w = 0; w < workers; ++w) {
            const int end = begin + base + (w < extra ? 1 : 0);
            pool.emplace_back([&task, begin, end] {
                for (int j = begin; j < end; ++j) task(j);
            });
            begin = end;
        }
        for (auto& t : pool) t.join();
    }
    for (int j = 0; j < n; ++j) {
        if (static_cast<int>(cols[j].size()) != n)
            throw std::invalid_argument("materialize map changed dimension");
        for (int i = 0; i < n; ++i) M.at(i, j) = cols[j][i];
    }
    return M;
}

namespace {

Vector random_start(int n) {
    std::mt19937_64 rng(0x5DEECE66DULL);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vector v(n);
    for (double& x : v) x = u(rng);
    const double nv = norm2(v);
    for (double& x : v) x /= nv;
    return v;
}

// Largest-magnitude eigenvalue of a symmetric operator by power iteration;
// stops when three successive Rayleigh estimates agree to 1e-6 relative.
double power_iteration(const std::function<Vector(const Vector&)>& apply, int n,
                       int max_iter = 50000) {
    Vector v = random_start(n);
    double prev = 0.0;
    int stable = 0;
    double lambda = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        Vector w = apply(v);
        const double nw = norm2(w);
        if (nw == 0.0) return 0.0;
        lambda = dot(v, w);
        for (double& x : w) x /= nw;
        v = std::move(w);
        if (std::abs(lambda - prev) <= 1e-6 * std::abs(lambda)) {
            if (++stable >= 3) break;
        } else {
            stable = 0;
        }
        prev = lambda;
    }
    return lambda;
}

}  // namespace

SpectrumReport spectrum_extremes(const dense::Matrix& A, bool symmetric) {
    if (A.rows != A.cols) throw std::invalid_argument("spectrum needs a square matrix");
    const int n = A.rows;
    SpectrumReport rep;
    rep.method = SpectrumMethod::DensePowerIteration;

    if (symmetric) {
        // lambda of largest magnitude, then the opposite extreme by shifting.
        const double l1 = power_iteration(
            [&](const Vector& v) { return dense::multiply(A, v); }, n);
        const double l2 = l1 + power_iteration(
            [&](const Vector& v) {
                Vector w = dense::multiply(A, v);
                axpy(-l1, v, w);
                return w;
            }, n);
        double lmax = std::max(l1, l2), lmin = std::min(l1, l2);
        // Refine the smallest-magnitude end by inverse iteration when the
        // spectrum is one-signed (the condition-number use case).
        dense::LuFactors f = dense::lu_factor(A);
        if (!f.singular) {
            const double inv = power_iteration(
                [&](const Vector& v) { return dense::lu_solve(f, v); }, n);
            if (inv != 0.0) {
                const double small = 1.0 / inv;
                if (lmin > 0.0 && small > 0.0) lmin = std::min(lmin, small);
            }
        } else {
            rep.infinite = true;
        }
        rep.sigma_min = lmin;
        rep.sigma_max = lmax;
    } else {
        // Extreme singular values through the normal operator A^T A.
        const dense::Matrix At = dense::transpose(A);
        auto normal = [&](const Vector& v) {
            return dense::multiply(At, dense::multiply(A, v));
        };
        const double smax2 = power_iteration(normal, n);
        dense::Matrix AtA = dense::multiply(At, A);
        dense::LuFactors f = dense::lu_factor(AtA);
        double smin2 = 0.0;
        if (!f.singular) {
            const double inv = power_iteration(
                [&](const Vector& v) { return dense::lu_solve(f, v); }, n);
            smin2 = inv > 0.0 ? 1.0 / inv : 0.0;
        }
        if (smin2 <= 0.0) rep.infinite = true;
        rep.sigma_max = std::sqrt(std::max(0.0, smax2));
        rep.sigma_min = std::sqrt(std::max(0.0, smin2));
    }

    if (rep.infinite || rep.sigma_min == 0.0) {
        rep.infinite = true;
        rep.cond = std::numeric_limits<double>::infinity();
    } else {
        rep.cond = rep.sigma_max / rep.sigma_min;
    }
    return rep;
}

}  // namespace pintoc::analysis
