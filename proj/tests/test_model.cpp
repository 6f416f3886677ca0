#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pintoc/model.hpp"

using namespace pintoc;

namespace {

Vector random_vector(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vector v(n);
    for (double& x : v) x = u(rng);
    return v;
}

}  // namespace

TEST_CASE("heat operator entries and eigenvalues at r=1") {
    Operator op = build_heat_operator(1);
    Vector y = op.apply({1.0});
    CHECK(y[0] == doctest::Approx(-8.0).epsilon(1e-15));
    CHECK(laplacian_eigenpair(1, 1).first == doctest::Approx(-8.0).epsilon(1e-15));
}

TEST_CASE("heat operator against hand multiplication at r=3") {
    Operator op = build_heat_operator(3);
    Vector y = op.apply({1.0, 1.0, 1.0});
    CHECK(y[0] == doctest::Approx(-16.0).epsilon(1e-14));
    CHECK(y[1] == doctest::Approx(0.0));
    CHECK(y[2] == doctest::Approx(-16.0).epsilon(1e-14));
}

TEST_CASE("heat operator rejects r=0") {
    CHECK_THROWS_AS(build_heat_operator(0), std::invalid_argument);
    CHECK_THROWS_AS(build_wave_operator(0), std::invalid_argument);
}

TEST_CASE("heat operator is symmetric when materialized") {
    const int r = 17;
    Operator op = build_heat_operator(r);
    double max_entry = 0.0, max_asym = 0.0;
    std::vector<Vector> cols(r);
    for (int j = 0; j < r; ++j) {
        Vector e(r, 0.0);
        e[j] = 1.0;
        cols[j] = op.apply(e);
    }
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            max_entry = std::max(max_entry, std::abs(cols[j][i]));
            max_asym = std::max(max_asym, std::abs(cols[j][i] - cols[i][j]));
        }
    CHECK(max_asym <= 1e-14 * max_entry);
}

TEST_CASE("wave operator block structure") {
    Operator op = build_wave_operator(1);
    Vector y = op.apply({1.0, 0.0});
    CHECK(y[0] == doctest::Approx(0.0));
    CHECK(y[1] == doctest::Approx(-8.0).epsilon(1e-15));
    Vector z = op.apply({0.0, 0.0});
    CHECK(norm2(z) == 0.0);
}

TEST_CASE("wave operator squared equals the block Laplacian") {
    const int r = 9;
    Operator wave = build_wave_operator(r);
    Operator lap = build_heat_operator(r);
    Vector y = random_vector(2 * r, 11);
    Vector twice = wave.apply(wave.apply(y));
    Vector u(y.begin(), y.begin() + r), v(y.begin() + r, y.end());
    Vector lu = lap.apply(u), lv = lap.apply(v);
    double err = 0.0, scale = 0.0;
    for (int i = 0; i < r; ++i) {
        err = std::max({err, std::abs(twice[i] - lu[i]), std::abs(twice[r + i] - lv[i])});
        scale = std::max({scale, std::abs(lu[i]), std::abs(lv[i])});
    }
    CHECK(err <= 1e-12 * scale);
}

TEST_CASE("operators are linear on random probes") {
    const int r = 13;
    Operator op = build_wave_operator(r);
    Vector x = random_vector(2 * r, 1), y = random_vector(2 * r, 2);
    const double a = 0.37, b = -1.43;
    Vector lhs(2 * r);
    for (int i = 0; i < 2 * r; ++i) lhs[i] = a * x[i] + b * y[i];
    lhs = op.apply(lhs);
    Vector rx = op.apply(x), ry = op.apply(y);
    double err = 0.0, scale = 0.0;
    for (int i = 0; i < 2 * r; ++i) {
        err = std::max(err, std::abs(lhs[i] - a * rx[i] - b * ry[i]));
        scale = std::max(scale, std::abs(lhs[i]));
    }
    CHECK(err <= 1e-12 * std::max(1.0, scale));
}

TEST_CASE("laplacian eigenpairs") {
    CHECK(laplacian_eigenpair(3, 2).first == doctest::Approx(-32.0).epsilon(1e-14));
    CHECK_THROWS_AS(laplacian_eigenpair(3, 4), std::out_of_range);
    CHECK_THROWS_AS(laplacian_eigenpair(3, 0), std::out_of_range);

    // sigma_1(r) decreases in r
    double prev = laplacian_eigenpair(1, 1).first;
    for (int r : {2, 3, 5, 10, 40, 150}) {
        const double s = laplacian_eigenpair(r, 1).first;
        CHECK(s < prev);
        prev = s;
    }

    // L_h v_k = sigma_k v_k
    const int r = 12;
    Operator lap = build_heat_operator(r);
    for (int k = 1; k <= r; ++k) {
        auto [sigma, v] = laplacian_eigenpair(r, k);
        CHECK(norm2(v) == doctest::Approx(1.0).epsilon(1e-12));
        Vector lv = lap.apply(v);
        double err = 0.0;
        for (int i = 0; i < r; ++i) err = std::max(err, std::abs(lv[i] - sigma * v[i]));
        CHECK(err <= 1e-10 * std::abs(sigma));
    }
}

TEST_CASE("eigenvalues agree with a dense Jacobi eigensolve") {
    const int r = 24;
    Operator lap = build_heat_operator(r);
    dense::Matrix A(r, r);
    for (int j = 0; j < r; ++j) {
        Vector e(r, 0.0);
        e[j] = 1.0;
        Vector col = lap.apply(e);
        for (int i = 0; i < r; ++i) A.at(i, j) = col[i];
    }
    std::vector<double> eig = oracles::jacobi_eigenvalues(A);  // ascending
    SpectralBasis basis(r);
    for (int k = 1; k <= r; ++k) {
        // basis eigenvalues decrease with k; Jacobi's are ascending
        CHECK(basis.eigenvalue(k) ==
              doctest::Approx(eig[r - k]).epsilon(1e-10));
    }
}

TEST_CASE("spectral transform round trip and diagonalization") {
    const int r = 40;
    SpectralBasis basis(r);
    Vector v = random_vector(r, 3);
    Vector w = basis.inverse_transform(basis.transform(v));
    double err = 0.0;
    for (int i = 0; i < r; ++i) err = std::max(err, std::abs(w[i] - v[i]));
    CHECK(err <= 1e-12 * norm2(v));

    Operator lap = build_heat_operator(r);
    Vector lv = lap.apply(v);
    Vector modal = basis.transform(v);
    for (int k = 0; k < r; ++k) modal[k] *= basis.eigenvalues()[k];
    Vector lv2 = basis.inverse_transform(modal);
    err = 0.0;
    for (int i = 0; i < r; ++i) err = std::max(err, std::abs(lv[i] - lv2[i]));
    CHECK(err <= 1e-10 * norm2(lv));

    // strictly negative, strictly decreasing eigenvalues
    for (int k = 1; k < r; ++k) {
        CHECK(basis.eigenvalues()[k] < basis.eigenvalues()[k - 1]);
        CHECK(basis.eigenvalues()[k] < 0.0);
    }
}

TEST_CASE("profiles") {
    Vector z = sample_profile(Profile::Zero, 5);
    CHECK(norm2(z) == 0.0);

    Vector gi = sample_profile(Profile::GaussInit, 99);
    CHECK(gi[49] == doctest::Approx(1.0).epsilon(1e-15));  // x = 0.5

    // x = 0.25: 0.5 + 0.5 exp(-25)
    Vector gt = sample_profile(Profile::GaussTarget, 3);
    CHECK(gt[0] == doctest::Approx(0.500000000006944).epsilon(1e-14));
}

TEST_CASE("problem validation") {
    CHECK_THROWS_AS(make_default_problem(ProblemKind::Heat, 0, 1.0, 1e-4),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_default_problem(ProblemKind::Heat, 4, -1.0, 1e-4),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_default_problem(ProblemKind::Heat, 4, 1.0, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        make_problem(ProblemKind::Wave, 4, 1.0, 1e-4, Vector(4, 0.0), Vector(4, 0.0)),
        std::invalid_argument);

    ControlProblem wave = make_default_problem(ProblemKind::Wave, 6, 2.3, 1e-6);
    CHECK(wave.state_dim() == 12);
    CHECK(wave.y_in.size() == 12);
    CHECK(wave.y_in[7] == 0.0);  // zero initial velocity
}

TEST_CASE("time grid") {
    TimeGrid g(10, 100, 2.5);
    CHECK(g.interfaces.front() == 0.0);
    CHECK(g.interfaces.back() == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(g.dT == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(g.dt * g.steps == doctest::Approx(g.dT).epsilon(1e-15));
    for (int l = 1; l <= 10; ++l)
        CHECK(g.interfaces[l] - g.interfaces[l - 1] ==
              doctest::Approx(g.dT).epsilon(1e-12));
    CHECK_THROWS_AS(TimeGrid(0, 1, 1.0), std::invalid_argument);
}
