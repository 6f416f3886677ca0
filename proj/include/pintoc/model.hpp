#pragma once
#include <functional>
#include <utility>
#include <vector>

namespace pintoc {

using Vector = std::vector<double>;

enum class ProblemKind { Heat, Wave };
enum class Profile { GaussInit, GaussTarget, Zero };

/**
 * @brief Linear-quadratic control problem data for the 1D heat or wave
 * equation on (0,1) with homogeneous Dirichlet boundary conditions.
 *
 * For the heat problem the state has r components (interior grid values);
 * for the wave problem it has 2r components [position; velocity].
 */
struct ControlProblem {
    ProblemKind kind;
    int r;             // spatial unknowns
    double horizon;    // final time T
    double alpha;      // control regularization
    Vector y_in;
    Vector y_tg;

    int state_dim() const { return kind == ProblemKind::Heat ? r : 2 * r; }
};

ControlProblem make_problem(ProblemKind kind, int r, double horizon, double alpha,
                            Vector y_in, Vector y_tg);

/// Problem with the standard Gaussian initial/target profiles.
ControlProblem make_default_problem(ProblemKind kind, int r, double horizon, double alpha);

/// Uniform partition of (0, T) into L sub-intervals of N fine steps each.
struct TimeGrid {
    int subintervals;   // L
    int steps;          // N, fine steps per sub-interval
    double horizon;     // T
    double dT;          // T / L
    double dt;          // T / (L N)
    std::vector<double> interfaces;  // T_0 .. T_L

    TimeGrid(int L, int N, double T);
};

/**
 * @brief Eigenpairs of the 1D Dirichlet Laplacian with mesh width 1/(r+1),
 * plus the orthonormal sine transform that diagonalizes it.
 *
 * The transform matrix is symmetric and orthogonal, so forward and inverse
 * transforms are the same dense multiplication.
 */
class SpectralBasis {
  public:
    explicit SpectralBasis(int r);

    int size() const { return r_; }
    double mesh_width() const { return h_; }
    const Vector& eigenvalues() const { return eigvals_; }
    /// sigma_k for k = 1..r
    double eigenvalue(int k) const;

    Vector transform(const Vector& v) const;
    Vector inverse_transform(const Vector& v) const;
    /// Unit-norm eigenvector v_k, k = 1..r.
    Vector eigenvector(int k) const;

  private:
    int r_;
    double h_;
    Vector eigvals_;
    std::vector<double> basis_;  // r x r orthonormal sine matrix, row-major

    Vector apply_basis(const Vector& v) const;
};

/// Matrix-free linear operator.
struct Operator {
    int state_dim;
    std::function<Vector(const Vector&)> apply;
};

/// r x r tridiagonal Laplacian, diagonal -2/h^2, off-diagonals 1/h^2.
Operator build_heat_operator(int r);

/// 2r x 2r block operator [u; v] -> [v; Lap_h u].
Operator build_wave_operator(int r);

/// (sigma_k, v_k) of the discrete Laplacian, v_k normalized, k = 1..r.
std::pair<double, Vector> laplacian_eigenpair(int r, int k);

/// Samples the named profile at x_j = j/(r+1), j = 1..r.
Vector sample_profile(Profile profile, int r);

// Vector helpers shared across modules.
double dot(const Vector& a, const Vector& b);
double norm2(const Vector& a);
void axpy(double a, const Vector& x, Vector& y);  // y += a x

}  // namespace pintoc
