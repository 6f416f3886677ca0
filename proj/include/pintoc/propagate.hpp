#pragma once
#include "pintoc/model.hpp"

namespace pintoc {

enum class QuadratureKind { ImplicitEuler, Sdirk3 };

/**
 * @brief Quadrature rule for the source integral inside each fine step.
 *
 * The homogeneous transport is always the exact exponential; the rule only
 * decides where the adjoint source is sampled and with which weights.
 */
struct QuadratureRule {
    QuadratureKind kind;
    std::vector<double> nodes;    // c_i in (0, 1]
    std::vector<double> weights;  // d_i, positive, summing to 1

    static QuadratureRule implicit_euler();
    static QuadratureRule sdirk3();
    static QuadratureRule make(QuadratureKind kind);
};

/// e^{tL} v for the heat operator, computed mode-wise in the sine basis.
Vector expm_action_heat(const SpectralBasis& basis, double t, const Vector& v);

/// e^{sL} y for the wave block operator, closed form per mode (s may be negative).
Vector expm_action_wave(const SpectralBasis& basis, double s, const Vector& y);

/// e^{sL^T} y for the wave block operator.
Vector expm_action_wave_adjoint(const SpectralBasis& basis, double s, const Vector& y);

struct ArnoldiExpmResult {
    Vector y;
    bool converged = false;
    int dim_used = 0;
    double correction_norm = 0.0;
};

/**
 * @brief Krylov approximation of e^{t op} v (optional backend; the spectral
 * routines above are the default propagators).
 *
 * Near-zero subdiagonals terminate early with the exact subspace result;
 * hitting max_dim without meeting tol returns converged=false and the last
 * correction estimate.
 */
ArnoldiExpmResult expm_action_arnoldi(const Operator& op, double t, const Vector& v,
                                      int max_dim, double tol);

/**
 * @brief The three sub-interval solution operators of the decomposition:
 * forward propagation P_l, backward adjoint propagation Q_l, and the
 * inhomogeneous quadrature operator R_l.
 *
 * Physical-space entry points transform in and out of the sine basis; the
 * modal entry points are used by the interface matvec to avoid redundant
 * transforms. Everything is immutable after construction and callable
 * concurrently.
 */
class SubintervalOperators {
  public:
    SubintervalOperators(const ControlProblem& problem, const TimeGrid& grid,
                         const SpectralBasis& basis, QuadratureRule rule);

    /// u_l(t) = P_l(t) v: e^{(t - T_{l-1}) L} v for t in [T_{l-1}, T_L].
    Vector apply_P(int ell, double t, const Vector& v) const;
    /// lambda_l(t) = Q_l(t) Lambda_L: e^{(T_L - t) L^T} Lambda_L.
    Vector apply_Q(int ell, double t, const Vector& lambda_L) const;
    /// R_l(T_l) Lambda_L by exponential quadrature over the N fine steps.
    Vector apply_R(int ell, const Vector& lambda_L) const;

    // Modal layer. Heat coefficients have length r; wave coefficients are
    // stored split as [u-modes (r); v-modes (r)].
    Vector to_modal(const Vector& state) const;
    Vector from_modal(const Vector& modal) const;
    Vector modal_forward(double tau, const Vector& modal) const;
    Vector modal_adjoint(double tau, const Vector& modal) const;
    Vector modal_R(int ell, const Vector& modal_lambda) const;

    const ControlProblem& problem() const { return *problem_; }
    const TimeGrid& grid() const { return *grid_; }
    const SpectralBasis& basis() const { return *basis_; }
    const QuadratureRule& rule() const { return rule_; }

  private:
    const ControlProblem* problem_;
    const TimeGrid* grid_;
    const SpectralBasis* basis_;
    QuadratureRule rule_;

    void check_time(int ell, double t) const;
};

}  // namespace pintoc
