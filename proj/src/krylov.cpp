#include "pintoc/krylov.hpp"

#include <cmath>
#include <stdexcept>

namespace pintoc {

namespace {

inline void apply_givens(double c, double s, double& a, double& b) {
    const double t = c * a + s * b;
    b = -s * a + c * b;
    a = t;
}

}  // namespace

std::pair<Vector, KrylovReport> gmres(const LinearMap& apply_A, const Vector& b,
                                      const Vector& x0, const KrylovConfig& config,
                                      const LinearMap* apply_Minv) {
    if (config.tol <= 0.0 || config.tol >= 1.0)
        throw std::invalid_argument("gmres needs 0 < tol < 1");
    if (config.maxit < 1) throw std::invalid_argument("gmres needs maxit >= 1");
    if (config.side != PrecondSide::None && apply_Minv == nullptr)
        throw std::invalid_argument("gmres preconditioning requested without apply_Minv");
    if (config.restart && *config.restart < 1)
        throw std::invalid_argument("gmres restart must be >= 1");

    const std::size_t n = b.size();
    const bool left = config.side == PrecondSide::Left;
    const bool right = config.side == PrecondSide::Right;

    auto precond = [&](const Vector& v) { return apply_Minv ? (*apply_Minv)(v) : v; };

    // Residual used for stopping: preconditioned for Left, true otherwise.
    auto residual = [&](const Vector& x) {
        Vector r = apply_A(x);
        for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
        if (left) r = precond(r);
        return r;
    };

    KrylovReport report;
    Vector x = x0.empty() ? Vector(n, 0.0) : x0;
    if (x.size() != n) throw std::invalid_argument("gmres x0 dimension mismatch");

    const double denom = left ? norm2(precond(b)) : norm2(b);
    if (denom == 0.0) {
        report.converged = true;
        return {Vector(n, 0.0), report};
    }

    bool flagged_breakdown = false;
    while (report.iterations < config.maxit) {
        Vector r = residual(x);
        double beta = norm2(r);
        if (beta / denom <= config.tol) break;

        const int m = std::min(config.restart.value_or(config.maxit),
                               config.maxit - report.iterations);
        std::vector<Vector> V;
        V.reserve(m + 1);
        {
            Vector v0 = r;
            for (double& t : v0) t /= beta;
            V.push_back(std::move(v0));
        }
        std::vector<std::vector<double>> H(m + 1, std::vector<double>(m, 0.0));
        std::vector<double> cs(m, 0.0), sn(m, 0.0), g(m + 1, 0.0);
        g[0] = beta;

        int j = 0;
        bool inner_converged = false;
        while (j < m) {
            Vector w;
            if (right) {
                w = apply_A(precond(V[j]));
            } else if (left) {
                w = precond(apply_A(V[j]));
            } else {
                w = apply_A(V[j]);
            }
            const double wnorm_before = norm2(w);
            for (int i = 0; i <= j; ++i) {
                H[i][j] = dot(V[i], w);
                axpy(-H[i][j], V[i], w);
            }
            double h = norm2(w);
            // One reorthogonalization pass when cancellation ate the vector.
            if (h < 1e-8 * wnorm_before && h > 0.0) {
                for (int i = 0; i <= j; ++i) {
                    const double corr = dot(V[i], w);
                    H[i][j] += corr;
                    axpy(-corr, V[i], w);
                }
                h = norm2(w);
            }
            H[j + 1][j] = h;

            for (int i = 0; i < j; ++i) apply_givens(cs[i], sn[i], H[i][j], H[i + 1][j]);
            const double d = std::hypot(H[j][j], H[j + 1][j]);
            if (d == 0.0) {
                // Exact breakdown with a singular least-squares block.
                flagged_breakdown = true;
                break;
            }
            cs[j] = H[j][j] / d;
            sn[j] = H[j + 1][j] / d;
            H[j][j] = d;
            H[j + 1][j] = 0.0;
            g[j + 1] = -sn[j] * g[j];
            g[j] = cs[j] * g[j];

            ++report.iterations;
            ++j;
            report.residuals.push_back(std::abs(g[j]) / denom);

            const bool happy = h <= 1e-14 * std::max(1.0, wnorm_before);
            if (std::abs(g[j]) / denom <= config.tol || happy ||
                report.iterations >= config.maxit) {
                inner_converged = true;
                break;
            }
            Vector v = w;
            for (double& t : v) t /= h;
            V.push_back(std::move(v));
        }
        (void)inner_converged;

        // Back substitution and update of x from the j assembled columns.
        if (j > 0) {
            std::vector<double> y(j, 0.0);
            for (int i = j - 1; i >= 0; --i) {
                double s = g[i];
                for (int k = i + 1; k < j; ++k) s -= H[i][k] * y[k];
                y[i] = s / H[i][i];
            }
            Vector update(n, 0.0);
            for (int i = 0; i < j; ++i) axpy(y[i], V[i], update);
            if (right) update = precond(update);
            axpy(1.0, update, x);
        }
        if (flagged_breakdown) break;
    }

    Vector r = residual(x);
    report.final_residual = norm2(r) / denom;
    report.converged = report.final_residual <= config.tol;
    return {x, report};
}

}  // namespace pintoc
