#include "pintoc/paraexp.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace pintoc {

ParallelPlan ParallelPlan::with_workers(int w) {
    if (w < 1) throw std::invalid_argument("worker count must be >= 1");
    return {w};
}

namespace {

// Runs task(i) for i in [0, count) on plan.worker_count threads with
// contiguous chunking.  Each task writes only its own slot, so the schedule
// cannot influence the numbers.
void parallel_tasks(int count, const ParallelPlan& plan,
                    const std::function<void(int)>& task) {
    const int workers = std::min(plan.worker_count, count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) task(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const int base = count / workers, extra = count % workers;
    int begin = 0;
    for (int w = 0; w < workers; ++w) {
        const int len = base + (w < extra ? 1 : 0);
        const int end = begin + len;
        pool.emplace_back([&task, begin, end] {
            for (int i = begin; i < end; ++i) task(i);
        });
        begin = end;
    }
    for (auto& t : pool) t.join();
}

}  // namespace

Vector assemble_rhs(const SubintervalOperators& ops) {
    const ControlProblem& p = ops.problem();
    const TimeGrid& g = ops.grid();
    Vector b = ops.apply_P(1, g.horizon, p.y_in);
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = p.y_tg[i] - b[i];
    return b;
}

Vector matvec_M(const SubintervalOperators& ops, const Vector& lambda_L,
                const ParallelPlan& plan) {
    const ControlProblem& p = ops.problem();
    const TimeGrid& g = ops.grid();
    if (static_cast<int>(lambda_L.size()) != p.state_dim())
        throw std::invalid_argument("matvec dimension mismatch");
    const int L = g.subintervals;
    const Vector modal = ops.to_modal(lambda_L);

    // Term l < L is P_{l+1}(T_L) R_l(T_l) Lambda (worker l); term L is
    // R_L(T_L) Lambda.
    std::vector<Vector> slot(L);
    parallel_tasks(L, plan, [&](int i) {
        const int ell = i + 1;
        Vector t = ops.modal_R(ell, modal);
        if (ell < L) t = ops.modal_forward(g.horizon - g.interfaces[ell], t);
        slot[i] = std::move(t);
    });

    Vector sum(modal.size(), 0.0);
    for (int i = 0; i < L; ++i) axpy(1.0, slot[i], sum);

    Vector out = ops.from_modal(sum);
    const double inv_alpha = 1.0 / p.alpha;
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = lambda_L[i] + inv_alpha * out[i];
    return out;
}

namespace {

struct FineContext {
    const SubintervalOperators& ops;
    const Vector& modal_lambda;
    const Vector& modal_yin;
    const std::vector<Vector>& kvec;  // per sub-interval carry, modal
};

// Fine-grid sampling of one heat sub-interval; returns the quadrature of
// ||nu||^2 over its stages.
double sample_heat(const FineContext& ctx, int ell, std::vector<FineSample>& out) {
    const TimeGrid& g = ctx.ops.grid();
    const SpectralBasis& basis = ctx.ops.basis();
    const QuadratureRule& rule = ctx.ops.rule();
    const double alpha = ctx.ops.problem().alpha;
    const int r = basis.size();
    const int N = g.steps;
    const double dt = g.dt, T = g.horizon, T0 = g.interfaces[ell - 1];
    const Vector& sig = basis.eigenvalues();
    const int nn = static_cast<int>(rule.nodes.size());

    Vector rpref(r, 0.0), ym(r), lm(r), num(r);
    double energy = 0.0;
    out.resize(N + 1);
    for (int n = 0; n <= N; ++n) {
        const double t = T0 + n * dt;
        if (n > 0) {
            // R(t_n) = e^{dt s} R(t_{n-1}) + dt sum_i d_i e^{(1-c_i) dt s} source_i
            for (int k = 0; k < r; ++k) rpref[k] *= std::exp(dt * sig[k]);
            double stage_energy = 0.0;
            for (int i = 0; i < nn; ++i) {
                const double ts = t - (1.0 - rule.nodes[i]) * dt;
                double e2 = 0.0;
                for (int k = 0; k < r; ++k) {
                    const double lam = std::exp((T - ts) * sig[k]) * ctx.modal_lambda[k];
                    rpref[k] += dt * rule.weights[i] *
                                std::exp((1.0 - rule.nodes[i]) * dt * sig[k]) * lam;
                    const double nu = lam / alpha;
                    e2 += nu * nu;
                }
                stage_energy += dt * rule.weights[i] * e2;
            }
            energy += stage_energy;
        }
        for (int k = 0; k < r; ++k) {
            lm[k] = std::exp((T - t) * sig[k]) * ctx.modal_lambda[k];
            num[k] = lm[k] / alpha;
            ym[k] = std::exp(t * sig[k]) * ctx.modal_yin[k] -
                    (rpref[k] + std::exp((t - T0) * sig[k]) * ctx.kvec[ell - 1][k]) / alpha;
        }
        out[n] = FineSample{t, basis.inverse_transform(ym), basis.inverse_transform(lm),
                            basis.inverse_transform(num)};
    }
    return energy;
}

double sample_wave(const FineContext& ctx, int ell, std::vector<FineSample>& out) {
    const TimeGrid& g = ctx.ops.grid();
    const SpectralBasis& basis = ctx.ops.basis();
    const QuadratureRule& rule = ctx.ops.rule();
    const double alpha = ctx.ops.problem().alpha;
    const int r = basis.size();
    const int N = g.steps;
    const double dt = g.dt, T = g.horizon, T0 = g.interfaces[ell - 1];
    const Vector& sig = basis.eigenvalues();
    const int nn = static_cast<int>(rule.nodes.size());

    Vector rpref(2 * r, 0.0);
    Vector ym(2 * r), lm(2 * r), num(r);
    double energy = 0.0;
    out.resize(N + 1);
    for (int n = 0; n <= N; ++n) {
        const double t = T0 + n * dt;
        if (n > 0) {
            double stage_energy = 0.0;
            for (int k = 0; k < r; ++k) {
                const double w = std::sqrt(-sig[k]);
                const double cd = std::cos(w * dt), sd = std::sin(w * dt);
                // advance the prefix by one step: R <- E(dt) R
                double u = rpref[k], v = rpref[r + k];
                rpref[k] = cd * u + (sd / w) * v;
                rpref[r + k] = -w * sd * u + cd * v;
            }
            for (int i = 0; i < nn; ++i) {
                const double ts = t - (1.0 - rule.nodes[i]) * dt;
                const double off = (1.0 - rule.nodes[i]) * dt;
                double e2 = 0.0;
                for (int k = 0; k < r; ++k) {
                    const double w = std::sqrt(-sig[k]);
                    // velocity component of the adjoint at the stage time
                    const double tau = T - ts;
                    const double lv = (std::sin(w * tau) / w) * ctx.modal_lambda[k] +
                                      std::cos(w * tau) * ctx.modal_lambda[r + k];
                    // E(off) applied to [0; lv]
                    rpref[k] += dt * rule.weights[i] * (std::sin(w * off) / w) * lv;
                    rpref[r + k] += dt * rule.weights[i] * std::cos(w * off) * lv;
                    const double nu = lv / alpha;
                    e2 += nu * nu;
                }
                stage_energy += dt * rule.weights[i] * e2;
            }
            energy += stage_energy;
        }
        for (int k = 0; k < r; ++k) {
            const double w = std::sqrt(-sig[k]);
            const double tau = T - t;
            const double cq = std::cos(w * tau), sq = std::sin(w * tau);
            lm[k] = cq * ctx.modal_lambda[k] - w * sq * ctx.modal_lambda[r + k];
            lm[r + k] = (sq / w) * ctx.modal_lambda[k] + cq * ctx.modal_lambda[r + k];
            num[k] = lm[r + k] / alpha;

            const double cp = std::cos(w * t), sp = std::sin(w * t);
            double yu = cp * ctx.modal_yin[k] + (sp / w) * ctx.modal_yin[r + k];
            double yv = -w * sp * ctx.modal_yin[k] + cp * ctx.modal_yin[r + k];
            const double tl = t - T0;
            const double cl = std::cos(w * tl), sl = std::sin(w * tl);
            const double ku = ctx.kvec[ell - 1][k], kv = ctx.kvec[ell - 1][r + k];
            yu -= (rpref[k] + cl * ku + (sl / w) * kv) / alpha;
            yv -= (rpref[r + k] + (-w * sl) * ku + cl * kv) / alpha;
            ym[k] = yu;
            ym[r + k] = yv;
        }
        Vector yu(ym.begin(), ym.begin() + r), yv(ym.begin() + r, ym.end());
        Vector lu(lm.begin(), lm.begin() + r), lv(lm.begin() + r, lm.end());
        Vector yphys(2 * r), lphys(2 * r);
        Vector pu = basis.inverse_transform(yu), pv = basis.inverse_transform(yv);
        Vector qu = basis.inverse_transform(lu), qv = basis.inverse_transform(lv);
        for (int k = 0; k < r; ++k) {
            yphys[k] = pu[k];
            yphys[r + k] = pv[k];
            lphys[k] = qu[k];
            lphys[r + k] = qv[k];
        }
        out[n] = FineSample{t, std::move(yphys), std::move(lphys),
                            basis.inverse_transform(num)};
    }
    return energy;
}

}  // namespace

InterfaceSolution reconstruct(const SubintervalOperators& ops, const Vector& lambda_L,
                              const ParallelPlan& plan, bool emit_fine) {
    const ControlProblem& p = ops.problem();
    const TimeGrid& g = ops.grid();
    if (static_cast<int>(lambda_L.size()) != p.state_dim())
        throw std::invalid_argument("reconstruct dimension mismatch");
    const int L = g.subintervals;
    const double inv_alpha = 1.0 / p.alpha;

    const Vector modal = ops.to_modal(lambda_L);
    const Vector modal_yin = ops.to_modal(p.y_in);

    std::vector<Vector> rfull(L);
    parallel_tasks(L, plan, [&](int i) { rfull[i] = ops.modal_R(i + 1, modal); });

    InterfaceSolution sol;
    sol.Lambda.resize(L);
    sol.Y.resize(L);

    // Carry K_l = sum_{j<=l-1} E(T_{l-1} - T_j) R_j(T_j) Lambda, modal.
    std::vector<Vector> kvec(L, Vector(modal.size(), 0.0));
    for (int ell = 1; ell <= L; ++ell) {
        const Vector carried = ops.modal_forward(g.dT, kvec[ell - 1]);
        Vector ym = ops.modal_forward(g.interfaces[ell], modal_yin);
        for (std::size_t i = 0; i < ym.size(); ++i)
            ym[i] -= inv_alpha * (rfull[ell - 1][i] + carried[i]);
        sol.Y[ell - 1] = ops.from_modal(ym);
        if (ell < L) {
            kvec[ell] = carried;
            axpy(1.0, rfull[ell - 1], kvec[ell]);
        }
    }

    for (int ell = 1; ell < L; ++ell)
        sol.Lambda[ell - 1] =
            ops.from_modal(ops.modal_adjoint(g.horizon - g.interfaces[ell], modal));
    sol.Lambda[L - 1] = lambda_L;

    if (emit_fine) {
        sol.has_fine = true;
        sol.fine.resize(L);
        FineContext ctx{ops, modal, modal_yin, kvec};
        std::vector<double> energy(L, 0.0);
        parallel_tasks(L, plan, [&](int i) {
            energy[i] = p.kind == ProblemKind::Heat
                            ? sample_heat(ctx, i + 1, sol.fine[i])
                            : sample_wave(ctx, i + 1, sol.fine[i]);
        });
        sol.control_energy = 0.0;
        for (int i = 0; i < L; ++i) sol.control_energy += energy[i];
    }
    return sol;
}

double objective(const InterfaceSolution& sol, const ControlProblem& problem,
                 const TimeGrid& grid) {
    (void)grid;
    if (!sol.has_fine)
        throw std::logic_error("objective needs a reconstruction with fine trajectory");
    const Vector& yL = sol.Y.back();
    double mis = 0.0;
    for (std::size_t i = 0; i < yL.size(); ++i) {
        const double d = yL[i] - problem.y_tg[i];
        mis += d * d;
    }
    return 0.5 * mis + 0.5 * problem.alpha * sol.control_energy;
}

}  // namespace pintoc
