#include <doctest.h>

#include <atomic>
#include <cmath>
#include <vector>

#include "gen.hpp"
#include "reflectra/numeric.hpp"

using namespace reflectra::numeric;

TEST_CASE("simpson integrates sin over [0, 3] to 1 - cos 3") {
    const std::size_t n = 301;
    const double h = 3.0 / (n - 1);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = std::sin(i * h);
    CHECK(simpson(y, h) == doctest::Approx(1.0 - std::cos(3.0)).epsilon(1e-10));
}

TEST_CASE("odd interval count closes exactly on cubics") {
    for (std::size_t n : {4u, 6u, 10u}) {
        const double h = 1.0 / (n - 1);
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = std::pow(i * h, 3) - 2.0 * i * h;
        CHECK(simpson(y, h) == doctest::Approx(0.25 - 1.0).epsilon(1e-14));
    }
}

TEST_CASE("Richardson estimate bounds the actual error") {
    const std::size_t n = 65;
    const double h = 2.0 / (n - 1);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = std::exp(i * h);
    auto e = simpson_richardson(y, h);
    const double exact = std::exp(2.0) - 1.0;
    CHECK(std::abs(e.value - exact) <= 2.0 * e.error + 1e-15);
    CHECK(e.error < 1e-6);
}

TEST_CASE("Gauss panels: sin(3x)/3 on [0, 1] has integral (1 - cos 3)/9") {
    auto r = gauss_panels(0.0, 1.0, 3);
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::sin(3.0 * r.nodes[i]) / 3.0;
    CHECK(s == doctest::Approx((1.0 - std::cos(3.0)) / 9.0).epsilon(1e-15));
    auto w = gauss_panels_width(0.0, 10.0, 0.7);
    double len = 0.0;
    for (double v : w.weights) len += v;
    CHECK(len == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(w.size() % 16 == 0);
    CHECK(w.size() / 16 == 15);
}

TEST_CASE("complex lgamma matches the real function and |Gamma(iy)|^2") {
    for (double x : {0.3, 1.0, 2.5, 7.25}) CHECK(lgamma(cplx(x, 0.0)).real() == doctest::Approx(std::lgamma(x)).epsilon(1e-13));
    for (double y : {0.2, 1.0, 4.0, 15.0}) {
        const double want = std::log(M_PI / (y * std::sinh(M_PI * y)));
        CHECK(2.0 * lgamma(cplx(0.0, y)).real() == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("bump and its derivatives") {
    CHECK(bump(0.0) == 1.0);
    CHECK(bump(1.0) == 0.0);
    CHECK(bump(-1.5) == 0.0);
    Gen g(11);
    for (int k = 0; k < 200; ++k) {
        const double a = g.uniform(0.5, 3.0), kk = g.uniform(0.5, 8.0);
        const double x = g.uniform(-0.95, 0.95) * a;
        INFO("case " << k << " a=" << a << " k=" << kk << " x=" << x);
        const double d = 1e-5 * a;
        CHECK(bump(x, a, kk) == doctest::Approx(bump(-x, a, kk)).epsilon(1e-15));
        CHECK(bump_d1(x, a, kk) == doctest::Approx((bump(x + d, a, kk) - bump(x - d, a, kk)) / (2 * d)).epsilon(1e-5).scale(1.0));
        CHECK(bump_d2(x, a, kk) ==
              doctest::Approx((bump_d1(x + d, a, kk) - bump_d1(x - d, a, kk)) / (2 * d)).epsilon(1e-5).scale(1.0));
    }
}

TEST_CASE("least squares recovers a quadratic") {
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    for (int i = 0; i < 20; ++i) {
        const double x = 0.1 * i;
        rows.push_back({1.0, x, x * x});
        rhs.push_back(2.0 - 3.0 * x + 0.5 * x * x);
    }
    auto c = least_squares(rows, rhs);
    REQUIRE(c.size() == 3);
    CHECK(c[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(c[1] == doctest::Approx(-3.0).epsilon(1e-12));
    CHECK(c[2] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("parallel_for visits every index once") {
    for (unsigned threads : {1u, 3u, 0u}) {
        std::vector<std::atomic<int>> hits(257);
        parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; }, threads);
        for (auto& h : hits) CHECK(h.load() == 1);
    }
}

TEST_CASE("sign function") {
    CHECK(sg(2.0) == 1.0);
    CHECK(sg(-0.1) == -1.0);
    CHECK(sg(0.0) == 0.0);
}
