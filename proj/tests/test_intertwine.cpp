#include <doctest.h>

#include <cmath>

#include "gen.hpp"
#include "reflectra/eigen.hpp"
#include "reflectra/errors.hpp"
#include "reflectra/intertwine.hpp"

using namespace reflectra;
using chebli::ChebliFamily;
using intertwine::BesselKernelOp;
using intertwine::Direction;

namespace {

// J_n and I_n by 20 terms of the power series
double series(int n, double z, double sign) {
    double term = std::pow(z / 2.0, n) / std::tgamma(n + 1.0), s = 0.0;
    for (int k = 0; k < 20; ++k) {
        s += term;
        term *= sign * (z * z / 4.0) / ((k + 1.0) * (k + 1.0 + n));
    }
    return s;
}

SampledFunction even_input(double radius, double step) {
    return SampledFunction::from_function(radius, step, [](double x) { return cplx(numeric::bump(x, 1.0, 1.0)); });
}

}  // namespace

TEST_CASE("Bessel kernels against power series") {
    CHECK(intertwine::bessel_j(1, 1.0) == doctest::Approx(0.4400505857449335).epsilon(1e-14));
    CHECK(intertwine::bessel_j(0, 1.0) == doctest::Approx(0.7651976865579666).epsilon(1e-14));
    CHECK(intertwine::bessel_i(1, 1.5) == doctest::Approx(0.9816664285779078).epsilon(1e-14));
    Gen g(5);
    for (int k = 0; k < 100; ++k) {
        const double z = g.uniform(0.0, 3.0);
        const int n = g.integer(0, 2);
        INFO("n=" << n << " z=" << z);
        CHECK(intertwine::bessel_j(n, z) == doctest::Approx(series(n, z, -1.0)).epsilon(1e-12).scale(1.0));
        CHECK(intertwine::bessel_i(n, z) == doctest::Approx(series(n, z, 1.0)).epsilon(1e-12).scale(1.0));
    }
    CHECK_THROWS_AS(intertwine::bessel_j(3, 1.0), DomainError);
}

TEST_CASE("transmutation is the identity at eps = +-1") {
    auto f = ChebliFamily::jacobi(1.5, 0.5);
    auto in = even_input(3.0, 1.0 / 32.0);
    for (double e : {1.0, -1.0})
        for (auto d : {Direction::E, Direction::EInv, Direction::TE, Direction::TEInv}) {
            auto out = intertwine::apply_e(BesselKernelOp::make(f, e, d), in);
            for (std::size_t i = 0; i < in.size(); ++i) CHECK(out[i] == in[i]);
        }
}

TEST_CASE("E and its inverse compose to the identity") {
    auto f = ChebliFamily::jacobi(1.5, 0.5);
    auto in = even_input(4.0, 1.0 / 128.0);
    for (double eps : {0.0, 0.5}) {
        auto e = BesselKernelOp::make(f, eps, Direction::E);
        auto ei = BesselKernelOp::make(f, eps, Direction::EInv);
        auto out = intertwine::apply_e(e, intertwine::apply_e(ei, in));
        double worst = 0.0;
        for (std::size_t i = 0; i < in.size(); ++i) worst = std::max(worst, std::abs(out[i] - in[i]));
        INFO("eps=" << eps);
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("E sends cos(k x) to cos(sqrt(k^2 + rho_eps^2) x)") {
    // Sonine-type identity for the J1 kernel
    auto f = ChebliFamily::jacobi(0.5, -0.5);
    const double eps = 0.6, re = 0.8, k = 1.3;
    auto in = SampledFunction::from_function(3.0, 1.0 / 256.0, [&](double x) { return cplx(std::cos(k * x)); });
    auto e = BesselKernelOp::make(f, eps, Direction::E);
    REQUIRE(e.rho_eps == doctest::Approx(re));
    auto out = intertwine::apply_e(e, in);
    const double kk = std::sqrt(k * k + re * re);
    double worst = 0.0;
    for (std::size_t i = 0; i < in.size(); ++i) worst = std::max(worst, std::abs(out[i] - std::cos(kk * in.x(i))));
    CHECK(worst <= 1e-6);
    MESSAGE("E cos error " << worst);
}

TEST_CASE("transmutation rejects odd input") {
    auto f = ChebliFamily::jacobi(1.5, 0.5);
    auto odd = SampledFunction::from_function(2.0, 0.125, [](double x) { return cplx(x * numeric::bump(x, 1.5)); });
    CHECK_THROWS_AS(intertwine::apply_e(BesselKernelOp::make(f, 0.5, Direction::E), odd), ParityError);
}

TEST_CASE("Dunkl base kernel: unit mass and the cosine identity") {
    // int_0^x K(x,t) cos(lambda t) dt = j_alpha(lambda x); alpha = 1/2 gives sin z / z.
    auto f = ChebliFamily::dunkl(0.5);
    auto r = intertwine::graded_rule(0.0, 2.0, 8, false, true);
    double mass = 0.0;
    cplx cosine = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double kv = intertwine::dunkl_base_kernel(f, 2.0, r.nodes[i]);
        mass += r.weights[i] * kv;
        cosine += r.weights[i] * kv * std::cos(1.7 * r.nodes[i]);
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(cosine.real() == doctest::Approx(std::sin(3.4) / 3.4).epsilon(1e-10));

    auto f3 = ChebliFamily::dunkl(1.5);
    double c3 = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i)
        c3 += r.weights[i] * intertwine::dunkl_base_kernel(f3, 2.0, r.nodes[i]) * std::cos(1.7 * r.nodes[i]);
    const double z = 3.4;
    CHECK(c3 == doctest::Approx(3.0 * (std::sin(z) - z * std::cos(z)) / (z * z * z)).epsilon(1e-9));
}

TEST_CASE("Laplace representation reproduces Psi for Dunkl weights") {
    auto f = ChebliFamily::dunkl(0.5);
    Gen g(99);
    for (int k = 0; k < 12; ++k) {
        const double eps = g.uniform(-1.0, 1.0);
        const double x = g.uniform(0.2, 4.0) * (k % 2 ? -1.0 : 1.0);
        const double lam = g.uniform(0.0, 5.0);
        INFO("case " << k << " eps=" << eps << " x=" << x << " lambda=" << lam);
        intertwine::MehlerKernel mk(f, eps, x);
        const cplx v = mk.apply([lam](double y) { return std::polar(1.0, lam * y); });
        const cplx want = eigen::psi(f, eigen::SpectralPoint::make(f, lam, eps), x, 1e-12);
        CHECK(std::abs(v - want) <= 1e-6);
        CHECK(mk.min_density() >= -1e-10);
    }
}

TEST_CASE("V is positive and its transpose keeps the support") {
    auto f = ChebliFamily::dunkl(0.5);
    for (double eps : {-1.0, 0.0, 0.7}) {
        auto in = SampledFunction::from_function(4.0, 1.0 / 32.0, [](double x) { return cplx(numeric::bump(x - 0.5)); });
        auto v = intertwine::v_eps(f, eps, in);
        for (const auto& z : v.values()) CHECK(z.real() >= -1e-10);
        auto t = intertwine::t_v_eps(f, eps, in);
        for (std::size_t i = 0; i < in.size(); ++i)
            if (std::abs(in.x(i)) > 1.5 + 1e-12) CHECK(std::abs(t[i]) <= 1e-8);
    }
    auto wide = SampledFunction::from_function(2.0, 1.0 / 32.0, [](double) { return cplx(1.0); });
    CHECK_THROWS_AS(intertwine::t_v_eps(f, 0.0, wide), SupportError);
    CHECK_THROWS_AS(intertwine::v_eps(ChebliFamily::jacobi(1.5, 0.5), 0.0, wide), UnsupportedFamilyError);
}
