#pragma once
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "pintoc/analysis.hpp"
#include "pintoc/krylov.hpp"
#include "pintoc/paraexp.hpp"
#include "pintoc/precond.hpp"

namespace pintoc::experiment {

using nlohmann::json;

/**
 * @brief One experiment description.  Parsed from a flat JSON document; every
 * omitted key falls back to the problem family's defaults (the heat and wave
 * setups used throughout the tables).
 */
struct ExperimentConfig {
    ProblemKind problem = ProblemKind::Heat;
    int r = 100;
    int L = 10;
    int N = 1000;
    double T = 1.0;
    double alpha = 1e-4;
    QuadratureKind quadrature = QuadratureKind::Sdirk3;
    bool precond = true;
    std::optional<int> gmres_restart;  // nullopt = full GMRES
    double gmres_tol = 1e-8;
    std::optional<int> gmres_maxit;    // nullopt = auto
    PrecondSide gmres_side = PrecondSide::Right;
    std::optional<int> workers;        // nullopt = auto (= L)
    std::uint64_t seed = 0;
    bool trajectory = false;
    bool table10_as_subintervals = false;

    static ExperimentConfig from_json(const json& j);
    json to_json() const;  // fully resolved echo

    int resolved_maxit() const;
    int resolved_workers() const;
    int state_dim() const { return problem == ProblemKind::Heat ? r : 2 * r; }
};

struct ResultRecord {
    json config;
    std::string command;
    std::optional<int> iterations;
    std::optional<bool> converged;
    std::optional<double> final_residual;
    std::optional<double> objective_value;
    std::optional<double> sigma_min, sigma_max, cond;
    double wall_seconds = 0.0;

    json to_json() const;
};

struct RunOutput {
    ResultRecord record;
    std::string csv;             // empty when the command emits none
    std::string diff_report;     // table runs only
    std::string trajectory_csv;  // solve runs with trajectory enabled
    bool converged = true;
    bool partial_failure = false;
};

RunOutput run_solve(const ExperimentConfig& cfg);
RunOutput run_spectrum(const ExperimentConfig& cfg);
RunOutput run_bound(const ExperimentConfig& cfg);
RunOutput run_table(const std::string& table_id, const ExperimentConfig& base);

namespace detail {

/// Everything a finished interface solve leaves behind, heap-anchored so the
/// operator's internal references stay valid across moves.
struct SolveArtifacts {
    std::unique_ptr<ControlProblem> problem;
    std::unique_ptr<TimeGrid> grid;
    std::unique_ptr<SpectralBasis> basis;
    std::unique_ptr<QuadratureRule> rule;
    std::unique_ptr<SubintervalOperators> ops;
    ParallelPlan plan{1};
    LinearMap apply_Minv;
    Vector lambda_L;
    KrylovReport report;
};

SolveArtifacts solve_interface_system(const ExperimentConfig& cfg);

}  // namespace detail

/// 6 significant digits, scientific notation outside [1e-3, 1e4).
std::string format_numeric(double x);

}  // namespace pintoc::experiment
