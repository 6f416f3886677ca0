#include "pintoc/propagate.hpp"

#include <cmath>
#include <stdexcept>

#include "pintoc/dense.hpp"

namespace pintoc {

QuadratureRule QuadratureRule::implicit_euler() {
    return {QuadratureKind::ImplicitEuler, {1.0}, {1.0}};
}

QuadratureRule QuadratureRule::sdirk3() {
    const double s = std::sqrt(3.0) / 6.0;
    return {QuadratureKind::Sdirk3, {0.5 + s, 0.5 - s}, {0.5, 0.5}};
}

QuadratureRule QuadratureRule::make(QuadratureKind kind) {
    return kind == QuadratureKind::ImplicitEuler ? implicit_euler() : sdirk3();
}

Vector expm_action_heat(const SpectralBasis& basis, double t, const Vector& v) {
    if (t < 0.0) throw std::domain_error("expm_action_heat needs t >= 0");
    Vector c = basis.transform(v);
    const Vector& sig = basis.eigenvalues();
    for (int k = 0; k < basis.size(); ++k) c[k] *= std::exp(t * sig[k]);
    return basis.inverse_transform(c);
}

namespace {

// One wave mode evolves by the 2x2 matrix exp(tau L_k), L_k = [[0,1],[sigma,0]]:
//   [[cos(w tau), sin(w tau)/w], [-w sin(w tau), cos(w tau)]],  w = sqrt(-sigma).
inline void wave_mode_forward(double w, double tau, double& u, double& v) {
    const double c = std::cos(w * tau), s = std::sin(w * tau);
    const double u2 = c * u + (s / w) * v;
    const double v2 = -w * s * u + c * v;
    u = u2;
    v = v2;
}

inline void wave_mode_adjoint(double w, double tau, double& u, double& v) {
    const double c = std::cos(w * tau), s = std::sin(w * tau);
    const double u2 = c * u - w * s * v;
    const double v2 = (s / w) * u + c * v;
    u = u2;
    v = v2;
}

Vector wave_modal(const SpectralBasis& basis, const Vector& y) {
    const int r = basis.size();
    if (static_cast<int>(y.size()) != 2 * r)
        throw std::invalid_argument("wave state length mismatch");
    Vector u(y.begin(), y.begin() + r), v(y.begin() + r, y.end());
    Vector mu = basis.transform(u), mv = basis.transform(v);
    Vector out(2 * r);
    for (int k = 0; k < r; ++k) {
        out[k] = mu[k];
        out[r + k] = mv[k];
    }
    return out;
}

Vector wave_physical(const SpectralBasis& basis, const Vector& modal) {
    const int r = basis.size();
    Vector mu(modal.begin(), modal.begin() + r), mv(modal.begin() + r, modal.end());
    Vector u = basis.inverse_transform(mu), v = basis.inverse_transform(mv);
    Vector out(2 * r);
    for (int k = 0; k < r; ++k) {
        out[k] = u[k];
        out[r + k] = v[k];
    }
    return out;
}

}  // namespace

Vector expm_action_wave(const SpectralBasis& basis, double s, const Vector& y) {
    const int r = basis.size();
    Vector m = wave_modal(basis, y);
    for (int k = 0; k < r; ++k)
        wave_mode_forward(std::sqrt(-basis.eigenvalues()[k]), s, m[k], m[r + k]);
    return wave_physical(basis, m);
}

Vector expm_action_wave_adjoint(const SpectralBasis& basis, double s, const Vector& y) {
    const int r = basis.size();
    Vector m = wave_modal(basis, y);
    for (int k = 0; k < r; ++k)
        wave_mode_adjoint(std::sqrt(-basis.eigenvalues()[k]), s, m[k], m[r + k]);
    return wave_physical(basis, m);
}

ArnoldiExpmResult expm_action_arnoldi(const Operator& op, double t, const Vector& v,
                                      int max_dim, double tol) {
    if (max_dim < 1) throw std::invalid_argument("Arnoldi dimension must be >= 1");
    if (tol <= 0.0) throw std::invalid_argument("Arnoldi tolerance must be positive");
    const int n = op.state_dim;
    ArnoldiExpmResult res;
    const double beta = norm2(v);
    if (t == 0.0 || beta == 0.0) {
        res.y = v;
        res.converged = true;
        return res;
    }

    std::vector<Vector> V;
    V.reserve(max_dim + 1);
    Vector v0 = v;
    for (double& x : v0) x /= beta;
    V.push_back(std::move(v0));

    dense::Matrix H(max_dim + 1, max_dim);
    const double breakdown_tol = 1e-14;
    int m = 0;
    bool broke_down = false;
    dense::Matrix Hm;

    for (int j = 0; j < max_dim; ++j) {
        Vector w = op.apply(V[j]);
        const double wnorm0 = norm2(w);
        for (int i = 0; i <= j; ++i) {
            const double h = dot(V[i], w);
            H.at(i, j) = h;
            axpy(-h, V[i], w);
        }
        const double h = norm2(w);
        H.at(j + 1, j) = h;
        m = j + 1;

        // Exponential of the leading m x m Hessenberg block.
        Hm = dense::Matrix(m, m);
        for (int i = 0; i < m; ++i)
            for (int k = 0; k < m; ++k) Hm.at(i, k) = t * H.at(i, k);
        const dense::Matrix E = dense::expm(Hm);
        res.correction_norm = beta * h * std::abs(E.at(m - 1, 0)) * std::abs(t);
        res.dim_used = m;

        if (h <= breakdown_tol * std::max(1.0, wnorm0)) {
            // Invariant subspace: the subspace result is exact.
            broke_down = true;
            res.converged = true;
            break;
        }
        if (res.correction_norm <= tol * beta) {
            res.converged = true;
            break;
        }
        if (j + 1 < max_dim) {
            for (double& x : w) x /= h;
            V.push_back(std::move(w));
        }
    }
    (void)broke_down;

    const dense::Matrix E = dense::expm(Hm);
    res.y.assign(n, 0.0);
    for (int i = 0; i < m; ++i) axpy(beta * E.at(i, 0), V[i], res.y);
    return res;
}

SubintervalOperators::SubintervalOperators(const ControlProblem& problem,
                                           const TimeGrid& grid,
                                           const SpectralBasis& basis,
                                           QuadratureRule rule)
    : problem_(&problem), grid_(&grid), basis_(&basis), rule_(std::move(rule)) {
    if (basis.size() != problem.r)
        throw std::invalid_argument("spectral basis size does not match problem");
}

void SubintervalOperators::check_time(int ell, double t) const {
    if (ell < 1 || ell > grid_->subintervals)
        throw std::out_of_range("sub-interval index out of range");
    const double lo = grid_->interfaces[ell - 1];
    const double hi = grid_->horizon;
    const double slack = 1e-12 * std::max(1.0, hi);
    if (t < lo - slack || t > hi + slack)
        throw std::domain_error("time outside the sub-interval's domain");
}

Vector SubintervalOperators::to_modal(const Vector& state) const {
    return problem_->kind == ProblemKind::Heat ? basis_->transform(state)
                                               : wave_modal(*basis_, state);
}

Vector SubintervalOperators::from_modal(const Vector& modal) const {
    return problem_->kind == ProblemKind::Heat ? basis_->inverse_transform(modal)
                                               : wave_physical(*basis_, modal);
}

Vector SubintervalOperators::modal_forward(double tau, const Vector& modal) const {
    const int r = basis_->size();
    const Vector& sig = basis_->eigenvalues();
    Vector out = modal;
    if (problem_->kind == ProblemKind::Heat) {
        for (int k = 0; k < r; ++k) out[k] *= std::exp(tau * sig[k]);
    } else {
        for (int k = 0; k < r; ++k)
            wave_mode_forward(std::sqrt(-sig[k]), tau, out[k], out[r + k]);
    }
    return out;
}

Vector SubintervalOperators::modal_adjoint(double tau, const Vector& modal) const {
    const int r = basis_->size();
    const Vector& sig = basis_->eigenvalues();
    Vector out = modal;
    if (problem_->kind == ProblemKind::Heat) {
        for (int k = 0; k < r; ++k) out[k] *= std::exp(tau * sig[k]);
    } else {
        for (int k = 0; k < r; ++k)
            wave_mode_adjoint(std::sqrt(-sig[k]), tau, out[k], out[r + k]);
    }
    return out;
}

Vector SubintervalOperators::modal_R(int ell, const Vector& modal_lambda) const {
    check_time(ell, grid_->interfaces[ell]);
    const int r = basis_->size();
    const int N = grid_->steps;
    const double dt = grid_->dt;
    const double T = grid_->horizon;
    const double Tl = grid_->interfaces[ell];
    const Vector& sig = basis_->eigenvalues();
    const auto& c = rule_.nodes;
    const auto& d = rule_.weights;
    const int nn = static_cast<int>(c.size());

    Vector out(modal_lambda.size(), 0.0);

    if (problem_->kind == ProblemKind::Heat) {
        // Stage factor exp((T_l - t) s) * exp((T - t) s) at t = T_{l-1} + (n-1+c_i) dt.
        // Summed from the stage nearest T_l downward so the largest terms come
        // first and nothing underflows before it is accumulated.
        for (int k = 0; k < r; ++k) {
            const double s = sig[k];
            const double q = std::exp(2.0 * dt * s);
            double stage = 0.0;  // node factors relative to each step's right end
            for (int i = 0; i < nn; ++i)
                stage += d[i] * std::exp(2.0 * (1.0 - c[i]) * dt * s);
            double total = 0.0;
            double run = 1.0;  // exp(2 (N - n) dt s)
            for (int n = N; n >= 1; --n) {
                total += run * stage;
                run *= q;
            }
            out[k] = dt * std::exp((T - Tl) * s) * total * modal_lambda[k];
        }
        return out;
    }

    // Wave: per mode accumulate the 2x2 operator
    //   C = sum_{n,i} dt d_i E(T_l - t) B B^T E^T(T - t),
    // tracked through the angle pairs (w (T_l - t), w (T - t)).  The pairs are
    // advanced by plane rotations and refreshed from trig every few hundred
    // steps to stop drift.
    const int refresh = 256;
    for (int k = 0; k < r; ++k) {
        const double w = std::sqrt(-sig[k]);
        const double cd = std::cos(w * dt), sd = std::sin(w * dt);
        double c11 = 0.0, c12 = 0.0, c21 = 0.0, c22 = 0.0;
        for (int i = 0; i < nn; ++i) {
            // angles at n = N: tau1 = (1-c_i) dt, tau2 = T - T_l + (1-c_i) dt
            double tau1 = (1.0 - c[i]) * dt;
            double tau2 = (T - Tl) + tau1;
            double s1 = std::sin(w * tau1), co1 = std::cos(w * tau1);
            double s2 = std::sin(w * tau2), co2 = std::cos(w * tau2);
            for (int n = N; n >= 1; --n) {
                const double wgt = d[i] * dt;
                c11 += wgt * (s1 * s2) / (w * w);
                c12 += wgt * (s1 * co2) / w;
                c21 += wgt * (co1 * s2) / w;
                c22 += wgt * (co1 * co2);
                if (n > 1) {
                    if ((N - n + 1) % refresh == 0) {
                        tau1 += dt;
                        tau2 += dt;
                        s1 = std::sin(w * tau1); co1 = std::cos(w * tau1);
                        s2 = std::sin(w * tau2); co2 = std::cos(w * tau2);
                    } else {
                        double t1 = s1 * cd + co1 * sd;
                        co1 = co1 * cd - s1 * sd;
                        s1 = t1;
                        double t2 = s2 * cd + co2 * sd;
                        co2 = co2 * cd - s2 * sd;
                        s2 = t2;
                    }
                }
            }
        }
        const double lu = modal_lambda[k], lv = modal_lambda[r + k];
        out[k] = c11 * lu + c12 * lv;
        out[r + k] = c21 * lu + c22 * lv;
    }
    return out;
}

Vector SubintervalOperators::apply_P(int ell, double t, const Vector& v) const {
    check_time(ell, t);
    const double tau = t - grid_->interfaces[ell - 1];
    return from_modal(modal_forward(tau, to_modal(v)));
}

Vector SubintervalOperators::apply_Q(int ell, double t, const Vector& lambda_L) const {
    check_time(ell, t);
    const double tau = grid_->horizon - t;
    return from_modal(modal_adjoint(tau, to_modal(lambda_L)));
}

Vector SubintervalOperators::apply_R(int ell, const Vector& lambda_L) const {
    return from_modal(modal_R(ell, to_modal(lambda_L)));
}

}  // namespace pintoc
