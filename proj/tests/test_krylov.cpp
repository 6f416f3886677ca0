#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pintoc/analysis.hpp"
#include "pintoc/krylov.hpp"

using namespace pintoc;

namespace {

LinearMap dense_map(const dense::Matrix& A) {
    return [A](const Vector& v) { return dense::multiply(A, v); };
}

dense::Matrix random_spd(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    dense::Matrix B(n, n);
    for (double& x : B.a) x = u(rng);
    dense::Matrix A = dense::multiply(dense::transpose(B), B);
    for (int i = 0; i < n; ++i) A.at(i, i) += n;  // keep it well conditioned
    return A;
}

Vector random_vec(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vector v(n);
    for (double& x : v) x = u(rng);
    return v;
}

}  // namespace

TEST_CASE("identity system converges immediately") {
    const int n = 7;
    LinearMap A = [](const Vector& v) { return v; };
    Vector b = random_vec(n, 1);
    KrylovConfig cfg;
    cfg.side = PrecondSide::None;
    auto [x, rep] = gmres(A, b, Vector(), cfg);
    CHECK(rep.converged);
    CHECK(rep.iterations == 1);
    for (int i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(b[i]).epsilon(1e-12));
}

TEST_CASE("diagonal 2x2 system solved exactly within two steps") {
    dense::Matrix A(2, 2);
    A.at(0, 0) = 2.0;
    A.at(1, 1) = 1.0;
    KrylovConfig cfg;
    cfg.side = PrecondSide::None;
    cfg.tol = 1e-13;
    auto [x, rep] = gmres(dense_map(A), {2.0, 1.0}, Vector(), cfg);
    CHECK(rep.converged);
    CHECK(rep.iterations <= 2);
    CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.final_residual <= 1e-14);
}

TEST_CASE("full GMRES finishes within n iterations on random SPD systems") {
    for (unsigned seed : {2u, 3u, 4u}) {
        const int n = 20 + 10 * static_cast<int>(seed);
        dense::Matrix A = random_spd(n, seed);
        Vector b = random_vec(n, seed + 100);
        KrylovConfig cfg;
        cfg.side = PrecondSide::None;
        cfg.tol = 1e-8;
        cfg.maxit = n + 2;
        auto [x, rep] = gmres(dense_map(A), b, Vector(), cfg);
        CHECK(rep.converged);
        CHECK(rep.iterations <= n + 2);
        // explicit residual agrees with the report
        Vector r = dense::multiply(A, x);
        for (int i = 0; i < n; ++i) r[i] = b[i] - r[i];
        CHECK(std::abs(norm2(r) / norm2(b) - rep.final_residual) <= 1e-12);
    }
}

TEST_CASE("residual history is non-increasing within a restart cycle") {
    const int n = 40;
    dense::Matrix A = random_spd(n, 9);
    Vector b = random_vec(n, 10);
    KrylovConfig cfg;
    cfg.side = PrecondSide::None;
    cfg.restart = 15;
    cfg.tol = 1e-10;
    cfg.maxit = 200;
    auto [x, rep] = gmres(dense_map(A), b, Vector(), cfg);
    CHECK(rep.converged);
    int step_in_cycle = 0;
    for (std::size_t i = 1; i < rep.residuals.size(); ++i) {
        ++step_in_cycle;
        if (step_in_cycle % 15 != 0)  // inside a cycle
            CHECK(rep.residuals[i] <= rep.residuals[i - 1] * (1.0 + 1e-12));
    }
}

TEST_CASE("restart=1 on an SPD system decreases the residual every cycle") {
    const int n = 30;
    dense::Matrix A = random_spd(n, 12);
    Vector b = random_vec(n, 13);
    KrylovConfig cfg;
    cfg.side = PrecondSide::None;
    cfg.restart = 1;
    cfg.tol = 1e-9;
    cfg.maxit = 500;
    auto [x, rep] = gmres(dense_map(A), b, Vector(), cfg);
    CHECK(rep.converged);
    for (std::size_t i = 1; i < rep.residuals.size(); ++i)
        CHECK(rep.residuals[i] < rep.residuals[i - 1]);
}

TEST_CASE("exact inverse preconditioning converges in one iteration") {
    const int n = 25;
    dense::Matrix A = random_spd(n, 20);
    Vector b = random_vec(n, 21);
    LinearMap Minv = [A](const Vector& v) { return oracles::ge_solve(A, v); };
    for (PrecondSide side : {PrecondSide::Right, PrecondSide::Left}) {
        KrylovConfig cfg;
        cfg.side = side;
        cfg.tol = 1e-10;
        auto [x, rep] = gmres(dense_map(A), b, Vector(), cfg, &Minv);
        CHECK(rep.converged);
        CHECK(rep.iterations == 1);
    }
}

TEST_CASE("right preconditioning reports the true residual") {
    const int n = 18;
    dense::Matrix A = random_spd(n, 30);
    dense::Matrix P(n, n);  // crude diagonal preconditioner
    for (int i = 0; i < n; ++i) P.at(i, i) = 1.0 / A.at(i, i);
    Vector b = random_vec(n, 31);
    LinearMap Minv = dense_map(P);
    KrylovConfig cfg;
    cfg.side = PrecondSide::Right;
    cfg.tol = 1e-9;
    auto [x, rep] = gmres(dense_map(A), b, Vector(), cfg, &Minv);
    CHECK(rep.converged);
    Vector r = dense::multiply(A, x);
    for (int i = 0; i < n; ++i) r[i] = b[i] - r[i];
    CHECK(std::abs(norm2(r) / norm2(b) - rep.final_residual) <= 1e-12);
}

TEST_CASE("budget exhaustion returns the best iterate unconverged") {
    const int n = 60;
    dense::Matrix A = random_spd(n, 40);
    for (int i = 0; i < n; ++i) A.at(i, i) += 1e3 * i;  // stretch the spectrum
    Vector b = random_vec(n, 41);
    KrylovConfig cfg;
    cfg.side = PrecondSide::None;
    cfg.restart = 1;
    cfg.tol = 1e-12;
    cfg.maxit = 5;
    auto [x, rep] = gmres(dense_map(A), b, Vector(), cfg);
    CHECK_FALSE(rep.converged);
    CHECK(rep.iterations == 5);
    CHECK(rep.final_residual > 1e-12);
}

TEST_CASE("configuration validation") {
    LinearMap A = [](const Vector& v) { return v; };
    Vector b{1.0};
    KrylovConfig cfg;
    cfg.side = PrecondSide::Left;
    CHECK_THROWS_AS(gmres(A, b, Vector(), cfg, nullptr), std::invalid_argument);
    cfg.side = PrecondSide::None;
    cfg.tol = 0.0;
    CHECK_THROWS_AS(gmres(A, b, Vector(), cfg), std::invalid_argument);
    cfg.tol = 1e-8;
    cfg.maxit = 0;
    CHECK_THROWS_AS(gmres(A, b, Vector(), cfg), std::invalid_argument);
    cfg.maxit = 10;
    cfg.restart = 0;
    CHECK_THROWS_AS(gmres(A, b, Vector(), cfg), std::invalid_argument);
}

TEST_CASE("zero right-hand side") {
    LinearMap A = [](const Vector& v) { return v; };
    KrylovConfig cfg;
    cfg.side = PrecondSide::None;
    auto [x, rep] = gmres(A, Vector(4, 0.0), Vector(), cfg);
    CHECK(rep.converged);
    CHECK(rep.iterations == 0);
    CHECK(norm2(x) == 0.0);
}
