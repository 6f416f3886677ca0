#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pintoc/precond.hpp"

using namespace pintoc;

namespace {

Vector random_vec(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vector v(n);
    for (double& x : v) x = u(rng);
    return v;
}

}  // namespace

TEST_CASE("thomas solve on tiny systems") {
    // diag 2, off-diagonals -1, rhs of row sums: solution of ones
    BandedSystem s;
    s.n = 2;
    s.sub = {0.0, -1.0};
    s.diag = {2.0, 2.0};
    s.super = {-1.0, 0.0};
    Vector x = tridiag_solve(s, {1.0, 1.0});
    CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-14));

    BandedSystem id;
    id.n = 3;
    id.sub = {0.0, 0.0, 0.0};
    id.diag = {1.0, 1.0, 1.0};
    id.super = {0.0, 0.0, 0.0};
    Vector f = random_vec(3, 1);
    Vector y = tridiag_solve(id, f);
    for (int i = 0; i < 3; ++i) CHECK(y[i] == doctest::Approx(f[i]));
}

TEST_CASE("thomas solve matches dense elimination on random dominant systems") {
    const int n = 50;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    BandedSystem s;
    s.n = n;
    s.sub.assign(n, 0.0);
    s.diag.assign(n, 0.0);
    s.super.assign(n, 0.0);
    dense::Matrix A(n, n);
    for (int i = 0; i < n; ++i) {
        if (i > 0) s.sub[i] = u(rng);
        if (i + 1 < n) s.super[i] = u(rng);
        s.diag[i] = 3.0 + std::abs(s.sub[i]) + std::abs(s.super[i]);
        A.at(i, i) = s.diag[i];
        if (i > 0) A.at(i, i - 1) = s.sub[i];
        if (i + 1 < n) A.at(i, i + 1) = s.super[i];
    }
    Vector f = random_vec(n, 8);
    Vector x = tridiag_solve(s, f);
    Vector want = oracles::ge_solve(A, f);
    double err = 0.0;
    for (int i = 0; i < n; ++i) err = std::max(err, std::abs(x[i] - want[i]));
    CHECK(err <= 1e-12 * norm2(want));

    // residual of the solve itself
    Vector res = tridiag_apply(s, x);
    double rn = 0.0;
    for (int i = 0; i < n; ++i) rn += (res[i] - f[i]) * (res[i] - f[i]);
    CHECK(std::sqrt(rn) / norm2(f) <= 1e-12);
}

TEST_CASE("zero pivot raises") {
    BandedSystem s;
    s.n = 2;
    s.sub = {0.0, 1.0};
    s.diag = {0.0, 1.0};
    s.super = {1.0, 0.0};
    CHECK_THROWS_AS(tridiag_solve(s, {1.0, 1.0}), std::runtime_error);
}

TEST_CASE("heat preconditioner acts mode-wise by sigma/(sigma - 1/(2 alpha))") {
    const int r = 30;
    const double alpha = 1e-4;
    HeatPreconditioner pc(r, alpha);
    SpectralBasis basis(r);
    for (int k : {1, 7, 30}) {
        auto [sigma, v] = laplacian_eigenpair(r, k);
        const double factor = sigma / (sigma - 1.0 / (2.0 * alpha));
        Vector got = pc.apply(v);
        double err = 0.0;
        for (int i = 0; i < r; ++i) err = std::max(err, std::abs(got[i] - factor * v[i]));
        CHECK(err <= 1e-11 * std::abs(factor));
    }
    // scalar check at sigma = -8
    HeatPreconditioner pc1(1, alpha);
    CHECK(pc1.apply({1.0})[0] == doctest::Approx(8.0 / 5008.0).epsilon(1e-12));
}

TEST_CASE("heat preconditioner tends to the identity for huge alpha") {
    const int r = 40;
    HeatPreconditioner pc(r, 1e12);
    Vector v = random_vec(r, 3);
    Vector got = pc.apply(v);
    double err = 0.0;
    for (int i = 0; i < r; ++i) err = std::max(err, std::abs(got[i] - v[i]));
    CHECK(err <= 1e-9 * norm2(v));
}

TEST_CASE("heat preconditioner is linear and symmetric when materialized") {
    const int r = 22;
    const double alpha = 1e-3;
    HeatPreconditioner pc(r, alpha);
    Vector x = random_vec(r, 4), y = random_vec(r, 5);
    Vector mix(r);
    for (int i = 0; i < r; ++i) mix[i] = 0.3 * x[i] - 1.7 * y[i];
    Vector got = pc.apply(mix);
    Vector px = pc.apply(x), py = pc.apply(y);
    double err = 0.0;
    for (int i = 0; i < r; ++i)
        err = std::max(err, std::abs(got[i] - 0.3 * px[i] + 1.7 * py[i]));
    CHECK(err <= 1e-11 * norm2(got));

    dense::Matrix P(r, r);
    for (int j = 0; j < r; ++j) {
        Vector e(r, 0.0);
        e[j] = 1.0;
        Vector col = pc.apply(e);
        for (int i = 0; i < r; ++i) P.at(i, j) = col[i];
    }
    double asym = 0.0, scale = 0.0;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            asym = std::max(asym, std::abs(P.at(i, j) - P.at(j, i)));
            scale = std::max(scale, std::abs(P.at(i, j)));
        }
    CHECK(asym <= 1e-11 * scale);
}

TEST_CASE("wave preconditioner parameters and mode factors") {
    const double T = 2.3, alpha = 1e-6;
    PrecondParams params = PrecondParams::wave_defaults(T, alpha);
    CHECK(params.a == doctest::Approx(T));
    CHECK(params.b == doctest::Approx(2e-6));
    CHECK(params.c == doctest::Approx(1.0 / 2.300002).epsilon(1e-12));

    const int r = 25;
    WavePreconditioner pc(r, params);
    SpectralBasis basis(r);

    // velocity block scales by 2 alpha / (2 alpha + T)
    Vector v(2 * r, 0.0);
    Vector probe = random_vec(r, 6);
    for (int i = 0; i < r; ++i) v[r + i] = probe[i];
    Vector got = pc.apply(v);
    const double lower = 2.0 * alpha / (2.0 * alpha + T);
    CHECK(lower == doctest::Approx(8.69564739319241e-7).epsilon(1e-10));
    for (int i = 0; i < r; ++i) {
        CHECK(got[i] == 0.0);
        CHECK(got[r + i] == doctest::Approx(lower * probe[i]).epsilon(1e-12));
    }

    // position block acts mode-wise by 2 alpha a_k / (T + 2 alpha a_k), in (0,1)
    for (int k : {1, 10, 25}) {
        auto [sigma, vk] = laplacian_eigenpair(r, k);
        const double a_k = -sigma;
        const double factor = 2.0 * alpha * a_k / (T + 2.0 * alpha * a_k);
        CHECK(factor > 0.0);
        CHECK(factor < 1.0);
        Vector in(2 * r, 0.0);
        for (int i = 0; i < r; ++i) in[i] = vk[i];
        Vector out = pc.apply(in);
        double err = 0.0;
        for (int i = 0; i < r; ++i)
            err = std::max(err, std::abs(out[i] - factor * vk[i]));
        CHECK(err <= 1e-11 * std::abs(factor));
    }
}

TEST_CASE("wave preconditioner factors stay in (0,1) across parameters") {
    for (double alpha : {1e-6, 1e-3, 1e-1}) {
        for (double T : {1.0, 2.3}) {
            const int r = 60;
            SpectralBasis basis(r);
            for (int k = 1; k <= r; ++k) {
                const double a_k = -basis.eigenvalue(k);
                const double f = 2.0 * alpha * a_k / (T + 2.0 * alpha * a_k);
                CHECK(f > 0.0);
                CHECK(f < 1.0);
            }
            const double lower = 2.0 * alpha / (2.0 * alpha + T);
            CHECK(lower > 0.0);
            CHECK(lower < 1.0);
        }
    }
}
