#include "pintoc/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace pintoc::experiment {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

void apply_family_defaults(ExperimentConfig& c) {
    if (c.problem == ProblemKind::Heat) {
        c.T = 1.0;
        c.alpha = 1e-4;
        c.quadrature = QuadratureKind::Sdirk3;
        c.gmres_restart = 1;
    } else {
        c.T = 2.3;
        c.alpha = 1e-6;
        c.quadrature = QuadratureKind::ImplicitEuler;
        c.gmres_restart.reset();
    }
}

[[noreturn]] void bad_config(const std::string& what) {
    throw std::invalid_argument("config: " + what);
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    ExperimentConfig c;
    if (!j.is_object()) bad_config("expected a JSON object");
    if (j.contains("problem")) {
        const std::string p = j.at("problem").get<std::string>();
        if (p == "heat") c.problem = ProblemKind::Heat;
        else if (p == "wave") c.problem = ProblemKind::Wave;
        else bad_config("problem must be \"heat\" or \"wave\"");
    }
    apply_family_defaults(c);

    if (j.contains("r")) c.r = j.at("r").get<int>();
    if (j.contains("L")) c.L = j.at("L").get<int>();
    if (j.contains("N")) c.N = j.at("N").get<int>();
    if (j.contains("T")) c.T = j.at("T").get<double>();
    if (j.contains("alpha")) c.alpha = j.at("alpha").get<double>();
    if (c.r < 1 || c.L < 1 || c.N < 1) bad_config("r, L, N must be >= 1");
    if (c.T <= 0.0 || c.alpha <= 0.0) bad_config("T and alpha must be positive");

    if (j.contains("quadrature")) {
        const std::string q = j.at("quadrature").get<std::string>();
        if (q == "euler") c.quadrature = QuadratureKind::ImplicitEuler;
        else if (q == "sdirk3") c.quadrature = QuadratureKind::Sdirk3;
        else bad_config("quadrature must be \"euler\" or \"sdirk3\"");
    }
    if (j.contains("precond")) {
        const auto& v = j.at("precond");
        if (v.is_boolean()) c.precond = v.get<bool>();
        else if (v.get<std::string>() == "on") c.precond = true;
        else if (v.get<std::string>() == "off") c.precond = false;
        else bad_config("precond must be on/off");
    }
    if (j.contains("gmres_restart")) {
        const auto& v = j.at("gmres_restart");
        if (v.is_string() && v.get<std::string>() == "full") c.gmres_restart.reset();
        else {
            const int k = v.get<int>();
            if (k < 1) bad_config("gmres_restart must be >= 1 or \"full\"");
            c.gmres_restart = k;
        }
    }
    if (j.contains("gmres_tol")) c.gmres_tol = j.at("gmres_tol").get<double>();
    if (c.gmres_tol <= 0.0 || c.gmres_tol >= 1.0) bad_config("gmres_tol must be in (0,1)");
    if (j.contains("gmres_maxit")) {
        const auto& v = j.at("gmres_maxit");
        if (v.is_string() && v.get<std::string>() == "auto") c.gmres_maxit.reset();
        else {
            const int k = v.get<int>();
            if (k < 1) bad_config("gmres_maxit must be >= 1 or \"auto\"");
            c.gmres_maxit = k;
        }
    }
    if (j.contains("gmres_side")) {
        const std::string s = j.at("gmres_side").get<std::string>();
        if (s == "left") c.gmres_side = PrecondSide::Left;
        else if (s == "right") c.gmres_side = PrecondSide::Right;
        else bad_config("gmres_side must be \"left\" or \"right\"");
    }
    if (j.contains("workers")) {
        const auto& v = j.at("workers");
        if (v.is_string() && v.get<std::string>() == "auto") c.workers.reset();
        else {
            const int w = v.get<int>();
            if (w < 1) bad_config("workers must be >= 1 or \"auto\"");
            c.workers = w;
        }
    }
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("trajectory")) c.trajectory = j.at("trajectory").get<bool>();
    if (j.contains("table10_sweep")) {
        const std::string s = j.at("table10_sweep").get<std::string>();
        if (s == "steps") c.table10_as_subintervals = false;
        else if (s == "subintervals") c.table10_as_subintervals = true;
        else bad_config("table10_sweep must be \"steps\" or \"subintervals\"");
    }
    return c;
}

int ExperimentConfig::resolved_maxit() const {
    if (gmres_maxit) return *gmres_maxit;
    return problem == ProblemKind::Heat ? 500 : state_dim();
}

int ExperimentConfig::resolved_workers() const { return workers ? *workers : L; }

json ExperimentConfig::to_json() const {
    json j;
    j["problem"] = problem == ProblemKind::Heat ? "heat" : "wave";
    j["r"] = r;
    j["L"] = L;
    j["N"] = N;
    j["T"] = T;
    j["alpha"] = alpha;
    j["quadrature"] = quadrature == QuadratureKind::ImplicitEuler ? "euler" : "sdirk3";
    j["precond"] = precond ? "on" : "off";
    if (gmres_restart) j["gmres_restart"] = *gmres_restart;
    else j["gmres_restart"] = "full";
    j["gmres_tol"] = gmres_tol;
    j["gmres_maxit"] = resolved_maxit();
    j["gmres_side"] = gmres_side == PrecondSide::Left ? "left" : "right";
    j["workers"] = resolved_workers();
    j["seed"] = seed;
    j["trajectory"] = trajectory;
    j["table10_sweep"] = table10_as_subintervals ? "subintervals" : "steps";
    return j;
}

json ResultRecord::to_json() const {
    json j;
    j["command"] = command;
    j["config"] = config;
    j["iterations"] = iterations ? json(*iterations) : json(nullptr);
    j["converged"] = converged ? json(*converged) : json(nullptr);
    j["final_residual"] = final_residual ? json(*final_residual) : json(nullptr);
    j["objective"] = objective_value ? json(*objective_value) : json(nullptr);
    j["sigma_min"] = sigma_min ? json(*sigma_min) : json(nullptr);
    j["sigma_max"] = sigma_max ? json(*sigma_max) : json(nullptr);
    j["cond"] = cond ? json(*cond) : json(nullptr);
    j["wall_seconds"] = wall_seconds;
    return j;
}

std::string format_numeric(double x) {
    if (x == 0.0) return "0";
    char buf[64];
    const double a = std::abs(x);
    if (a >= 1e4 || a < 1e-3) std::snprintf(buf, sizeof buf, "%.5e", x);
    else std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

namespace detail {

SolveArtifacts solve_interface_system(const ExperimentConfig& cfg) {
    SolveArtifacts art;
    art.problem = std::make_unique<ControlProblem>(
        make_default_problem(cfg.problem, cfg.r, cfg.T, cfg.alpha));
    art.grid = std::make_unique<TimeGrid>(cfg.L, cfg.N, cfg.T);
    art.basis = std::make_unique<SpectralBasis>(cfg.r);
    art.rule = std::make_unique<QuadratureRule>(QuadratureRule::make(cfg.quadrature));
    art.ops = std::make_unique<SubintervalOperators>(*art.problem, *art.grid, *art.basis,
                                                     *art.rule);
    art.plan = ParallelPlan::with_workers(cfg.resolved_workers());

    Vector b = assemble_rhs(*art.ops);
    Vector rhs(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) rhs[i] = -b[i];

    KrylovConfig kc;
    kc.restart = cfg.gmres_restart;
    kc.tol = cfg.gmres_tol;
    kc.maxit = cfg.resolved_maxit();
    kc.side = cfg.precond ? cfg.gmres_side : PrecondSide::None;

    LinearMap apply_A = [&art](const Vector& v) {
        return matvec_M(*art.ops, v, art.plan);
    };

    if (cfg.precond) {
        if (cfg.problem == ProblemKind::Heat) {
            auto pc = std::make_shared<HeatPreconditioner>(cfg.r, cfg.alpha);
            art.apply_Minv = [pc](const Vector& v) { return pc->apply(v); };
        } else {
            auto pc = std::make_shared<WavePreconditioner>(
                cfg.r, PrecondParams::wave_defaults(cfg.T, cfg.alpha));
            art.apply_Minv = [pc](const Vector& v) { return pc->apply(v); };
        }
    }

    auto [x, report] = gmres(apply_A, rhs, Vector(), kc,
                             cfg.precond ? &art.apply_Minv : nullptr);
    art.lambda_L = std::move(x);
    art.report = std::move(report);
    return art;
}

}  // namespace detail

RunOutput run_solve(const ExperimentConfig& cfg) {
    const auto t0 = clock_type::now();
    detail::SolveArtifacts art = detail::solve_interface_system(cfg);
    InterfaceSolution sol = reconstruct(*art.ops, art.lambda_L, art.plan, true);

    RunOutput out;
    out.record.command = "solve";
    out.record.config = cfg.to_json();
    out.record.iterations = art.report.iterations;
    out.record.converged = art.report.converged;
    out.record.final_residual = art.report.final_residual;
    out.record.objective_value = objective(sol, *art.problem, *art.grid);
    out.converged = art.report.converged;

    if (cfg.trajectory) {
        std::ostringstream csv;
        csv << "ell,t,y_norm,lambda_norm,nu_norm\n";
        for (int ell = 1; ell <= cfg.L; ++ell) {
            for (const FineSample& s : sol.fine[ell - 1]) {
                csv << ell << ',' << format_numeric(s.t) << ','
                    << format_numeric(norm2(s.y)) << ',' << format_numeric(norm2(s.lambda))
                    << ',' << format_numeric(norm2(s.nu)) << '\n';
            }
        }
        out.trajectory_csv = csv.str();
    }
    out.record.wall_seconds = seconds_since(t0);
    return out;
}

RunOutput run_spectrum(const ExperimentConfig& cfg) {
    const auto t0 = clock_type::now();
    const ControlProblem problem = make_default_problem(cfg.problem, cfg.r, cfg.T, cfg.alpha);
    const TimeGrid grid(cfg.L, cfg.N, cfg.T);
    const SpectralBasis basis(cfg.r);
    const SubintervalOperators ops(problem, grid, basis, QuadratureRule::make(cfg.quadrature));
    const ParallelPlan plan = ParallelPlan::with_workers(cfg.resolved_workers());

    LinearMap apply;
    bool symmetric = true;
    if (cfg.precond) {
        if (cfg.problem == ProblemKind::Heat) {
            auto pc = std::make_shared<HeatPreconditioner>(cfg.r, cfg.alpha);
            apply = [&, pc](const Vector& v) { return matvec_M(ops, pc->apply(v), plan); };
        } else {
            auto pc = std::make_shared<WavePreconditioner>(
                cfg.r, PrecondParams::wave_defaults(cfg.T, cfg.alpha));
            apply = [&, pc](const Vector& v) { return matvec_M(ops, pc->apply(v), plan); };
            symmetric = false;  // M and the block preconditioner do not commute
        }
    } else {
        apply = [&](const Vector& v) { return matvec_M(ops, v, plan); };
    }

    const dense::Matrix M = analysis::materialize(apply, cfg.state_dim(), plan);
    const analysis::SpectrumReport rep = analysis::spectrum_extremes(M, symmetric);

    RunOutput out;
    out.record.command = "spectrum";
    out.record.config = cfg.to_json();
    out.record.sigma_min = rep.sigma_min;
    out.record.sigma_max = rep.sigma_max;
    out.record.cond = rep.cond;
    out.record.wall_seconds = seconds_since(t0);
    return out;
}

RunOutput run_bound(const ExperimentConfig& cfg) {
    const auto t0 = clock_type::now();
    if (cfg.problem != ProblemKind::Heat)
        throw std::invalid_argument("config: the bound sweep is defined for the heat problem");
    std::ostringstream csv;
    csv << "N,dt,mu_max,bound,dt_alt,bound_alt,holds\n";
    bool all_hold = true;
    double last_mu = 0.0;
    for (int k = 1; k <= 10; ++k) {
        const int N = 100 * k;
        const analysis::Theorem1Result res =
            analysis::theorem1_check(cfg.r, cfg.L, N, cfg.T, cfg.alpha);
        const double dt = cfg.T / (static_cast<double>(cfg.L) * N);
        const double dt_alt = 1.0 / N;
        all_hold = all_hold && res.holds;
        last_mu = res.mu_max;
        csv << N << ',' << format_numeric(dt) << ',' << format_numeric(res.mu_max) << ','
            << format_numeric(res.bound) << ',' << format_numeric(dt_alt) << ','
            << format_numeric(1.0 + dt_alt / cfg.alpha) << ','
            << (res.holds ? "yes" : "no") << '\n';
    }

    RunOutput out;
    out.record.command = "bound";
    out.record.config = cfg.to_json();
    out.record.converged = all_hold;
    out.record.sigma_max = last_mu;
    out.csv = csv.str();
    out.converged = all_hold;
    out.record.wall_seconds = seconds_since(t0);
    return out;
}

}  // namespace pintoc::experiment
