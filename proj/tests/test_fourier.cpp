#include <doctest.h>

#include <cmath>

#include "gen.hpp"
#include "reflectra/errors.hpp"
#include "reflectra/fourier.hpp"
#include "reflectra/numeric.hpp"

using namespace reflectra;
using chebli::ChebliFamily;
using fourier::QuadratureParams;

namespace {

SampledFunction bump_input(const QuadratureParams& q) {
    return SampledFunction::from_function(q.radius, q.step, [](double x) { return cplx(fourier::default_bump(x)); });
}

ChebliFamily cosh_table() {
    std::vector<double> x, b, bp;
    for (int i = 0; i <= 200; ++i) {
        const double t = 0.05 * i;
        x.push_back(t);
        b.push_back(std::cosh(t) * std::cosh(t));
        bp.push_back(2.0 * std::sinh(t) * std::cosh(t));
    }
    return ChebliFamily::table(x, b, bp, 0.5, 1.0);
}

}  // namespace

TEST_CASE("Dunkl density constant") {
    CHECK(fourier::dunkl_constant(0.5) == doctest::Approx(2.0 / M_PI).epsilon(1e-10));
    // 1 / (2^{2 alpha} Gamma(alpha + 1)^2) at alpha = 3/2
    CHECK(fourier::dunkl_constant(1.5) == doctest::Approx(0.07073553026306457).epsilon(1e-9));
    auto a = fourier::calibrate_dunkl(0.5, 1.0), b = fourier::calibrate_dunkl(0.5, 2.0);
    CHECK(std::abs(a.constant / b.constant - 1.0) <= 1e-6);
    CHECK(fourier::c_density(ChebliFamily::dunkl(0.5), 3.0) == doctest::Approx(2.0 / M_PI * 9.0).epsilon(1e-10));
}

TEST_CASE("rank-one Jacobi density is 2 mu^2 / pi") {
    auto f = ChebliFamily::jacobi(0.5, -0.5);
    for (double mu : {0.01, 0.5, 3.0, 40.0, 150.0})
        CHECK(fourier::c_density(f, mu) == doctest::Approx(2.0 * mu * mu / M_PI).epsilon(1e-10));
    CHECK(fourier::c_density_over_mu(f, 0.0) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("Jacobi density is consistent with the inversion at the origin") {
    CHECK(std::abs(fourier::jacobi_calibration_ratio(ChebliFamily::jacobi(1.5, 0.5)) - 1.0) <= 1e-6);
    CHECK(std::abs(fourier::jacobi_calibration_ratio(ChebliFamily::jacobi(0.5, 0.0)) - 1.0) <= 1e-6);
}

TEST_CASE("Dunkl transform of a Gaussian is a Gaussian") {
    // alpha = 1/2: F f(lambda) = 2 int_0^inf e^{-x^2/2} sin(lambda x)/(lambda x) x^2 dx = sqrt(2 pi) e^{-lambda^2/2}
    auto f = ChebliFamily::dunkl(0.5);
    QuadratureParams q;
    auto g = SampledFunction::from_function(q.radius, q.step, [](double x) { return cplx(std::exp(-x * x / 2.0)); });
    std::vector<cplx> lams = {0.3, 1.0, 2.5, 4.0, -1.0};
    auto r = fourier::forward(f, 0.0, g, lams, q);
    for (std::size_t k = 0; k < lams.size(); ++k) {
        const double l = lams[k].real();
        CHECK(std::abs(r.values[k] - std::sqrt(2.0 * M_PI) * std::exp(-l * l / 2.0)) <= 1e-9);
    }
}

TEST_CASE("transform of a real function is conjugate symmetric") {
    Gen gen(31);
    QuadratureParams q;
    q.radius = 4.0;
    q.step = 1.0 / 32.0;
    auto in = SampledFunction::from_function(q.radius, q.step, [](double x) { return cplx(numeric::bump(x - 0.5, 2.5, 8.0)); });
    for (int k = 0; k < 8; ++k) {
        const double eps = gen.uniform(-1.0, 1.0), l = gen.uniform(0.1, 10.0);
        auto f = k % 2 ? ChebliFamily::dunkl(0.5) : ChebliFamily::jacobi(1.5, 0.5);
        auto r = fourier::forward(f, eps, in, {cplx(l), cplx(-l)}, q);
        INFO("case " << k << " eps=" << eps << " lambda=" << l);
        CHECK(std::abs(r.values[1] - std::conj(r.values[0])) <= 1e-10);
    }
}

TEST_CASE("spectral nodes cover both sides of the gap") {
    auto f = ChebliFamily::jacobi(1.5, 0.5);
    for (double eps : {0.0, 0.5, 1.0}) {
        fourier::SpectralDensity d(f, eps);
        CHECK(d.gap() == doctest::Approx(std::sqrt(1.0 - eps * eps) * 3.0));
        auto nodes = fourier::spectral_nodes(d, 40.0, 1.0);
        double wpos = 0.0;
        std::size_t npos = 0;
        for (const auto& n : nodes) {
            CHECK(std::abs(n.lambda) >= d.gap());
            CHECK(n.weight > 0.0);
            if (n.sign > 0) {
                wpos += n.weight;
                ++npos;
            }
        }
        CHECK(2 * npos == nodes.size());
        CHECK(wpos == doctest::Approx(std::sqrt(1600.0 - d.gap() * d.gap())).epsilon(1e-12));
        CHECK(d.density(0.5 * d.gap()) == 0.0);
    }
}

TEST_CASE("inversion round trip") {
    QuadratureParams q;
    auto in = bump_input(q);
    auto d = fourier::roundtrip(ChebliFamily::dunkl(0.5), 0.0, in, q);
    CHECK(d.sup_error <= 1e-8);
    for (double eps : {-1.0, 0.5}) {
        auto r = fourier::roundtrip(ChebliFamily::jacobi(1.5, 0.5), eps, in, q);
        INFO("eps=" << eps);
        CHECK(r.sup_error <= 1e-4);
    }
}

TEST_CASE("Plancherel identity and density fault") {
    QuadratureParams q;
    auto f = bump_input(q);
    auto g = SampledFunction::from_function(q.radius, q.step, [](double x) { return cplx(numeric::bump(x + 0.3, 2.0, 8.0)); });
    auto fam = ChebliFamily::jacobi(1.5, 0.5);
    CHECK(fourier::plancherel_check(fam, 0.0, f, g, q).discrepancy() <= 1e-3);
    CHECK(fourier::plancherel_check(fam, 0.0, f, g, q, 1.1).discrepancy() > 0.05);
}

TEST_CASE("Paley-Wiener type of a bump on [-1, 1]") {
    auto f = SampledFunction::from_function(1.0, 1.0 / 512.0, [](double x) { return cplx(numeric::bump(x)); });
    std::vector<double> eta;
    for (int e = 10; e <= 80; ++e) eta.push_back(e);
    auto r = fourier::paley_wiener_check(ChebliFamily::jacobi(1.5, 0.5), 0.5, f, 1.0, eta, {0.0, 3.0});
    CHECK(r.r_fit == doctest::Approx(1.0).epsilon(0.05));
    CHECK(r.rl_ratio < 1e-3);
    CHECK_THROWS_AS(fourier::paley_wiener_check(ChebliFamily::dunkl(0.5), 0.0, f, 1.0, {10, 20, 30}, {0.0}), ConfigError);
    CHECK_THROWS_AS(fourier::paley_wiener_check(ChebliFamily::dunkl(0.5), 0.0, f, 0.5, eta, {0.0}), SupportError);
}

TEST_CASE("error paths") {
    QuadratureParams q;
    auto in = bump_input(q);
    CHECK_THROWS_AS(fourier::forward(ChebliFamily::dunkl(0.5), 1.5, in, {cplx(1.0)}, q), DomainError);
    CHECK_THROWS_AS(fourier::SpectralDensity(cosh_table(), 0.0), UnsupportedFamilyError);
    QuadratureParams other = q;
    other.step = 1.0 / 32.0;
    CHECK_THROWS_AS(fourier::forward(ChebliFamily::dunkl(0.5), 0.0, in, {cplx(1.0)}, other), ConfigError);
}
