#include "reflectra/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include <boost/math/special_functions/bessel.hpp>

#include "reflectra/eigen.hpp"
#include "reflectra/errors.hpp"
#include "reflectra/fourier.hpp"
#include "reflectra/heat.hpp"
#include "reflectra/intertwine.hpp"
#include "reflectra/numeric.hpp"

namespace reflectra::verify {

using chebli::ChebliFamily;
using chebli::Kind;
using report::Status;

void validate(const NumericBlock& n) {
    if (!(n.step > 0.0)) throw ConfigError("numeric.step must be positive");
    if (!(n.xmax > 0.0)) throw ConfigError("numeric.xmax must be positive");
    grid_half(n.xmax, n.step);
    if (!(n.lmax > 0.0)) throw ConfigError("numeric.lmax must be positive");
    if (!(n.tol >= 1e-12 && n.tol <= 1e-2)) throw ConfigError("numeric.tol must lie in [1e-12, 1e-2]");
}

namespace {

struct Outcome {
    Status status = Status::Skip;
    double observed = std::numeric_limits<double>::quiet_NaN();
    double tolerance = std::numeric_limits<double>::quiet_NaN();
    std::string detail;
};

Outcome at_most(double observed, double tol, std::string detail = {}) {
    return {observed <= tol ? Status::Pass : Status::Fail, observed, tol, std::move(detail)};
}

Outcome at_least(double observed, double tol, std::string detail = {}) {
    return {observed >= tol ? Status::Pass : Status::Fail, observed, tol, std::move(detail)};
}

Outcome skip(std::string why) { return {Status::Skip, std::numeric_limits<double>::quiet_NaN(),
                                        std::numeric_limits<double>::quiet_NaN(), std::move(why)}; }

template <typename... Args>
std::string fmt(Args&&... args) {
    std::ostringstream os;
    os.precision(4);
    (os << ... << args);
    return os.str();
}

struct Ctx {
    const VerifyConfig& cfg;
    const ChebliFamily& fam;
    double eps;
    NumericBlock num;
    std::optional<eigen::GrowthReport> growth;
    std::optional<fourier::PaleyWienerReport> pw;

    bool dunkl() const { return fam.kind() == Kind::Dunkl; }
    bool transformable() const { return fam.kind() != Kind::Table; }
    eigen::SolveOptions solve() const { return {1e-11, num.step}; }

    const eigen::GrowthReport& growth_report() {
        if (!growth) {
            std::vector<double> lam, b;
            for (int i = 0; i <= 40; ++i) lam.push_back(0.5 * i);
            for (int i = -4; i <= 4; ++i) b.push_back(0.25 * i);
            growth = eigen::verify_growth(fam, eps, lam, b, num.xmax, num.step, 1e-9);
        }
        return *growth;
    }

    const fourier::PaleyWienerReport& pw_report() {
        if (!pw) {
            auto f = SampledFunction::from_function(1.0, 1.0 / 512.0,
                                                    [](double x) { return cplx(numeric::bump(x, 1.0, 1.0)); });
            std::vector<double> eta;
            for (int e = 10; e <= 80; ++e) eta.push_back(e);
            pw = fourier::paley_wiener_check(fam, eps, f, 1.0, eta, {0.0, 1.0, 2.0, 3.0}, 40.0);
        }
        return *pw;
    }
};

std::vector<cplx> psi_grid(const Ctx& c, cplx lambda, double radius, double step) {
    eigen::PsiEvaluator ev(c.fam, eigen::SpectralPoint::make(c.fam, lambda, c.eps), radius,
                           eigen::SolveOptions{1e-11, step});
    return ev.on_grid(radius, step);
}

// ---- chebli ----

Outcome chebli_weight_even(Ctx& c) {
    double worst = 0.0;
    for (int i = 1; i <= 2000; ++i) {
        const double x = 0.01 * i;
        worst = std::max(worst, std::abs(c.fam.weight(x) - c.fam.weight(-x)));
    }
    return at_most(worst, 0.0);
}

Outcome chebli_normalization(Ctx& c) {
    const double x = 1e-4;
    const double r = c.fam.weight(x) / std::pow(x, 2.0 * c.fam.alpha() + 1.0);
    return at_most(std::abs(r - 1.0), 1e-6, fmt("A(x)/|x|^(2a+1) at x=1e-4 is ", r));
}

Outcome chebli_hypotheses(Ctx& c) {
    std::vector<double> grid;
    for (int i = 0; i <= 398; ++i) grid.push_back(0.1 + 0.05 * i);
    auto r = chebli::check_hypotheses(c.fam, grid);
    const double worst = std::max(r.increasing_violation, r.logder_violation);
    Outcome o = at_most(worst, 0.0, fmt("positive=", r.positive, " increasing=", r.increasing,
                                        " logder_decreasing=", r.logder_decreasing, " tail_ok=", r.tail_ok,
                                        " delta=", r.delta));
    o.status = r.pass() ? Status::Pass : Status::Fail;
    return o;
}

Outcome chebli_jacobi_tail(Ctx& c) {
    if (c.fam.kind() != Kind::Jacobi) return skip("Jacobi weights only");
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    double k = 0.0;
    for (double x = 5.0; x <= 12.0 + 1e-12; x += 0.25) {
        const double r = std::abs(c.fam.log_derivative(x) - 2.0 * c.fam.rho());
        k = std::max(k, r * std::exp(2.0 * x));
        rows.push_back({1.0, -x});
        rhs.push_back(std::log(r));
    }
    const double delta = numeric::least_squares(rows, rhs)[1];
    return at_most(std::abs(delta - 2.0) / 2.0, 0.1, fmt("delta=", delta, " K=", k));
}

Outcome chebli_dunkl_logder(Ctx& c) {
    if (!c.dunkl()) return skip("Dunkl weights only");
    const double p = 2.0 * c.fam.alpha() + 1.0;
    double worst = 0.0;
    for (int i = -400; i <= 400; ++i) {
        if (i == 0) continue;
        const double x = 0.05 * i;
        worst = std::max(worst, std::abs(x * c.fam.log_derivative(x) - p));
    }
    return at_most(worst, 4.0 * std::numeric_limits<double>::epsilon() * p);
}

Outcome chebli_rho_eps(Ctx& c) {
    const double a = chebli::rho_eps(c.fam, 1.0), b = chebli::rho_eps(c.fam, -1.0);
    const double z = chebli::rho_eps(c.fam, 0.0);
    return at_most(std::max({std::abs(a), std::abs(b), std::abs(z - c.fam.rho())}), 0.0);
}

// ---- eigen ----

Outcome eigen_cauchy_data(Ctx& c) {
    double worst = 0.0;
    for (cplx mu_sq : {cplx(9.0), cplx(-0.25), cplx(1.0, 1.0)}) {
        auto re = eigen::solve_phi(c.fam, mu_sq, 6.0, 1e-11);
        auto z = re.eval(0.0);
        worst = std::max({worst, std::abs(z.phi - 1.0), std::abs(z.dphi)});
        for (double x = 0.125; x <= 6.0; x += 0.125) {
            auto p = re.eval(x), m = re.eval(-x);
            worst = std::max({worst, std::abs(p.phi - m.phi), std::abs(p.dphi + m.dphi)});
        }
    }
    return at_most(worst, 0.0);
}

Outcome eigen_residual(Ctx& c) {
    const double radius = std::min(6.0, c.num.xmax), h = c.num.step;
    double worst = 0.0;
    for (cplx lam : {cplx(0.7), cplx(2.3), cplx(0.0, 0.4)}) {
        auto v = psi_grid(c, lam, radius, h);
        SampledFunction f(radius, h, v);
        auto lf = eigen::apply_lambda_op(c.fam, c.eps, f);
        for (std::size_t i = 2; i + 2 < v.size(); ++i)
            worst = std::max(worst, std::abs(lf[i] - cplx(0.0, 1.0) * lam * v[i]));
    }
    return at_most(worst, std::max(10.0 * c.num.tol, 1e-5));
}

double dunkl_j(double a, double z) {
    if (z == 0.0) return 1.0;
    return std::tgamma(a + 1.0) * std::pow(2.0 / z, a) * boost::math::cyl_bessel_j(a, z);
}

Outcome eigen_dunkl_oracle(Ctx& c) {
    if (!c.dunkl()) return skip("Dunkl weights only");
    const double a = c.fam.alpha();
    double worst = 0.0;
    for (double lam : {0.5, 2.0, 7.0}) {
        auto v = psi_grid(c, lam, 10.0, 1.0 / 16.0);
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double x = (static_cast<double>(i) - 160.0) / 16.0;
            const double z = std::abs(lam * x);
            const cplx want(dunkl_j(a, z), lam * x / (2.0 * a + 2.0) * dunkl_j(a + 1.0, z));
            worst = std::max(worst, std::abs(v[i] - want));
        }
    }
    return at_most(worst, 1e-8);
}

Outcome eigen_conjugation(Ctx& c) {
    double worst = 0.0;
    for (double lam : {0.7, 2.3, 5.0}) {
        auto p = psi_grid(c, lam, c.num.xmax, c.num.step);
        auto m = psi_grid(c, -lam, c.num.xmax, c.num.step);
        for (std::size_t i = 0; i < p.size(); ++i) worst = std::max(worst, std::abs(std::conj(p[i]) - m[i]));
    }
    return at_most(worst, 1e-10);
}

Outcome eigen_reflection(Ctx& c) {
    double worst = 0.0;
    const double er = c.eps * c.fam.rho();
    for (double lam : {0.7, 2.3}) {
        auto p = psi_grid(c, lam, c.num.xmax, c.num.step);
        auto m = psi_grid(c, -lam, c.num.xmax, c.num.step);
        const cplx q = er / cplx(0.0, lam);
        const std::size_t n = p.size();
        for (std::size_t i = 0; i < n; ++i) {
            const cplx rhs = (1.0 + q) * m[n - 1 - i] - q * p[n - 1 - i];
            worst = std::max(worst, std::abs(p[i] - rhs));
        }
    }
    return at_most(worst, 1e-8);
}

Outcome eigen_even_part(Ctx& c) {
    double worst = 0.0;
    for (cplx lam : {cplx(0.7), cplx(0.0, 0.4), cplx(1.5, 0.3)}) {
        auto sp = eigen::SpectralPoint::make(c.fam, lam, c.eps);
        eigen::PsiEvaluator ev(c.fam, sp, c.num.xmax, c.solve());
        for (double x = 0.0; x <= c.num.xmax; x += 0.25)
            worst = std::max(worst, std::abs(ev(x) + ev(-x) - 2.0 * ev.even(x)));
    }
    return at_most(worst, 1e-10);
}

Outcome eigen_analyticity(Ctx& c) {
    const cplx l0(1.3, 0.2);
    const double d = 1e-3;
    auto at = [&](cplx l) { return psi_grid(c, l, 4.0, 1.0 / 8.0); };
    auto pa1 = at(l0 + d), pa2 = at(l0 - d), pa3 = at(l0 + 2.0 * d), pa4 = at(l0 - 2.0 * d);
    const cplx id(0.0, d);
    auto pb1 = at(l0 + id), pb2 = at(l0 - id), pb3 = at(l0 + 2.0 * id), pb4 = at(l0 - 2.0 * id);
    double worst = 0.0;
    for (std::size_t i = 0; i < pa1.size(); ++i) {
        const cplx da = (8.0 * (pa1[i] - pa2[i]) - (pa3[i] - pa4[i])) / (12.0 * d);
        const cplx db = (8.0 * (pb1[i] - pb2[i]) - (pb3[i] - pb4[i])) / (12.0 * d);
        worst = std::max(worst, std::abs(db - cplx(0.0, 1.0) * da) / std::max(1.0, std::abs(da)));
    }
    return at_most(worst, 1e-6);
}

Outcome eigen_phi_prime(Ctx& c) {
    double worst = 0.0;
    for (cplx mu_sq : {cplx(9.0), cplx(-0.25), cplx(1.0, 1.0)}) {
        auto re = eigen::solve_phi(c.fam, mu_sq, 6.0, 1e-11);
        const double scale = 1.0 + std::abs(re.nu());
        for (double x = -6.0; x <= 6.0; x += 0.125)
            worst = std::max(worst, std::abs(eigen::phi_prime_via_integral(re, x) - re.eval(x).dphi) / scale);
    }
    return at_most(worst, 1e-8);
}

Outcome eigen_bounded(Ctx& c) {
    const auto& g = c.growth_report().real_bound;
    return at_most(g.observed, g.bound);
}

Outcome eigen_strip(Ctx& c) {
    const auto& g = c.growth_report().strip_domination;
    return at_most(g.observed, g.bound, "max |Psi(a+ib,x)| / Psi(ib,x)");
}

Outcome eigen_exp_type(Ctx& c) {
    const auto& g = c.growth_report().exp_type;
    return at_most(g.observed, g.bound, "max Psi(ib,x) / (Psi(0,x) e^{|b||x|})");
}

Outcome eigen_positive(Ctx& c) {
    const auto& r = c.growth_report();
    Outcome o = at_least(r.imaginary_positive.observed, 0.0,
                         fmt("max |Im Psi(ib,x)| = ", r.imaginary_real.observed));
    o.status = r.imaginary_positive.ok && r.imaginary_real.ok ? Status::Pass : Status::Fail;
    return o;
}

Outcome eigen_zero_envelope(Ctx& c) {
    const auto& g = c.growth_report().zero_envelope;
    Outcome o{g.ok ? Status::Pass : Status::Fail, g.observed, g.bound, "fitted c"};
    return o;
}

// ---- intertwine ----

Outcome intertwine_bessel(Ctx&) {
    using intertwine::bessel_i;
    using intertwine::bessel_j;
    double worst = std::max({std::abs(bessel_j(0, 0.0) - 1.0), std::abs(bessel_j(1, 0.0)), std::abs(bessel_i(1, 0.0))});
    double j0max = 0.0;
    for (double z = 0.0; z <= 30.0; z += 0.01) j0max = std::max(j0max, std::abs(bessel_j(0, z)));
    double series = 0.0, term = 0.5;
    for (int k = 0; k < 20; ++k) {
        series += term;
        term *= -0.25 / ((k + 1.0) * (k + 2.0));
    }
    worst = std::max({worst, std::abs(bessel_j(1, 1.0) - series), std::max(0.0, j0max - 1.0)});
    return at_most(worst, 1e-12);
}

SampledFunction even_bump(const Ctx& c, double a, double k) {
    return SampledFunction::from_function(c.num.xmax, c.num.step, [=](double x) { return cplx(numeric::bump(x, a, k)); });
}

Outcome intertwine_endpoint_identity(Ctx& c) {
    auto f = even_bump(c, 3.0, 8.0);
    double worst = 0.0;
    for (double e : {1.0, -1.0}) {
        for (auto d : {intertwine::Direction::E, intertwine::Direction::EInv, intertwine::Direction::TE,
                       intertwine::Direction::TEInv}) {
            auto g = intertwine::apply_e(intertwine::BesselKernelOp::make(c.fam, e, d), f);
            for (std::size_t i = 0; i < f.size(); ++i) worst = std::max(worst, std::abs(g[i] - f[i]));
        }
    }
    return at_most(worst, 0.0);
}

// Compositions run on [-4, 4] at half the configured step: E^{-1} amplifies
// like e^{rho_eps |x|} and the error outside this window is rounding-dominated.
SampledFunction composition_input(const Ctx& c) {
    return SampledFunction::from_function(4.0, c.num.step / 2.0, [](double x) { return cplx(numeric::bump(x, 1.0, 1.0)); });
}

Outcome intertwine_e_composition(Ctx& c) {
    auto f = composition_input(c);
    using intertwine::Direction;
    auto e = intertwine::BesselKernelOp::make(c.fam, c.eps, Direction::E);
    auto ei = intertwine::BesselKernelOp::make(c.fam, c.eps, Direction::EInv);
    auto g = intertwine::apply_e(e, intertwine::apply_e(ei, f));
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) worst = std::max(worst, std::abs(g[i] - f[i]));
    return at_most(worst, 1e-6, fmt("sup over |x| <= 4, rho_eps=", e.rho_eps));
}

Outcome intertwine_te_composition(Ctx& c) {
    auto f = composition_input(c);
    using intertwine::Direction;
    auto t = intertwine::BesselKernelOp::make(c.fam, c.eps, Direction::TE);
    auto ti = intertwine::BesselKernelOp::make(c.fam, c.eps, Direction::TEInv);
    auto g = intertwine::apply_e(t, intertwine::apply_e(ti, f));
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) worst = std::max(worst, std::abs(g[i] - f[i]));
    return at_most(worst, 1e-6);
}

Outcome intertwine_te_transmutation(Ctx& c) {
    const double re = chebli::rho_eps(c.fam, c.eps);
    if (re == 0.0) return skip("rho_eps = 0: the operator is the identity");
    auto t = intertwine::BesselKernelOp::make(c.fam, c.eps, intertwine::Direction::TE);
    auto f = even_bump(c, 3.0, 8.0);
    auto f2 = SampledFunction::from_function(c.num.xmax, c.num.step,
                                             [](double x) { return cplx(numeric::bump_d2(x, 3.0, 8.0)); });
    auto lhs = intertwine::apply_e(t, f2);
    auto tf = intertwine::apply_e(t, f);
    auto dd = eigen::derivative4(eigen::derivative4(tf.values(), c.num.step), c.num.step);
    double worst = 0.0;
    for (std::size_t i = 4; i + 4 < f.size(); ++i)
        worst = std::max(worst, std::abs(lhs[i] - (dd[i] - re * re * tf[i])));
    return at_most(worst, 1e-4);
}

Outcome intertwine_mehler(Ctx& c) {
    if (!c.dunkl()) return skip("explicit kernels are available for Dunkl weights only");
    double worst = 0.0;
    for (double x : {0.5, 2.0}) {
        intertwine::MehlerKernel k(c.fam, c.eps, x);
        for (double lam : {0.0, 1.5, 4.0}) {
            const cplx v = k.apply([lam](double y) { return std::polar(1.0, lam * y); });
            const cplx want = eigen::psi(c.fam, eigen::SpectralPoint::make(c.fam, lam, c.eps), x, 1e-12);
            worst = std::max(worst, std::abs(v - want));
        }
    }
    return at_most(worst, 1e-6);
}

Outcome intertwine_mehler_mass(Ctx& c) {
    if (!c.dunkl()) return skip("explicit kernels are available for Dunkl weights only");
    double worst = 0.0;
    for (double x : {0.5, 2.0, -2.0, 5.0}) {
        intertwine::MehlerKernel k(c.fam, c.eps, x);
        const cplx mass = k.apply([](double) { return cplx(1.0); });
        const cplx want = eigen::psi(c.fam, eigen::SpectralPoint::make(c.fam, 0.0, c.eps), x, 1e-12);
        worst = std::max(worst, std::abs(mass - want));
    }
    return at_most(worst, 1e-10);
}

Outcome intertwine_kernel_scan(Ctx& c) {
    if (!c.dunkl()) return skip("explicit kernels are available for Dunkl weights only");
    double low = std::numeric_limits<double>::infinity();
    for (double x : {0.5, 2.0, -2.0, 5.0}) low = std::min(low, intertwine::MehlerKernel(c.fam, c.eps, x).min_density());
    return at_least(low, -1e-10, "min of the kernel density on the quadrature nodes");
}

SampledFunction v_input(double a_shift, double width, double k, double radius, double step) {
    return SampledFunction::from_function(radius, step,
                                          [=](double x) { return cplx(numeric::bump(x - a_shift, width, k)); });
}

Outcome intertwine_positivity(Ctx& c) {
    if (!c.dunkl()) return skip("explicit kernels are available for Dunkl weights only");
    auto f = v_input(0.5, 1.0, 1.0, 4.0, c.num.step);
    auto vf = intertwine::v_eps(c.fam, c.eps, f);
    double low = std::numeric_limits<double>::infinity();
    for (const auto& v : vf.values()) low = std::min(low, v.real());
    return at_least(low, -1e-10);
}

Outcome intertwine_intertwining(Ctx& c) {
    if (!c.dunkl()) return skip("explicit kernels are available for Dunkl weights only");
    const double h = c.num.step;
    auto f = v_input(0.3, 2.0, 4.0, 4.0, h);
    auto fp = SampledFunction::from_function(4.0, h, [](double x) { return cplx(numeric::bump_d1(x - 0.3, 2.0, 4.0)); });
    auto vf = intertwine::v_eps(c.fam, c.eps, f);
    auto vfp = intertwine::v_eps(c.fam, c.eps, fp);
    auto lvf = eigen::apply_lambda_op(c.fam, c.eps, vf);
    double worst = 0.0;
    for (std::size_t i = 2; i + 2 < f.size(); ++i) worst = std::max(worst, std::abs(lvf[i] - vfp[i]));
    return at_most(worst, 1e-5);
}

Outcome intertwine_duality(Ctx& c) {
    if (!c.dunkl()) return skip("explicit kernels are available for Dunkl weights only");
    const double h = c.num.step;
    auto f = v_input(0.3, 2.0, 4.0, 4.0, h);
    auto g = v_input(-0.4, 1.5, 2.0, 4.0, h);
    auto vf = intertwine::v_eps(c.fam, c.eps, f);
    auto tvg = intertwine::t_v_eps(c.fam, c.eps, g);
    std::vector<cplx> l(f.size()), r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        l[i] = vf[i] * g[i] * c.fam.weight(f.x(i));
        r[i] = f[i] * tvg[i];
    }
    const cplx lhs = numeric::simpson(l, h), rhs = numeric::simpson(r, h);
    return at_most(std::abs(lhs - rhs) / std::abs(lhs), 1e-6, fmt("lhs=", lhs.real(), " rhs=", rhs.real()));
}

Outcome intertwine_support(Ctx& c) {
    if (!c.dunkl()) return skip("explicit kernels are available for Dunkl weights only");
    auto g = v_input(0.0, 1.5, 1.0, 4.0, c.num.step);
    auto tvg = intertwine::t_v_eps(c.fam, c.eps, g);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (std::abs(g.x(i)) > 1.5 + 1e-12) worst = std::max(worst, std::abs(tvg[i]));
    return at_most(worst, 1e-8);
}

// ---- fourier ----

Outcome fourier_calibration(Ctx& c) {
    if (c.dunkl()) {
        auto a = fourier::calibrate_dunkl(c.fam.alpha(), 1.0), b = fourier::calibrate_dunkl(c.fam.alpha(), 2.0);
        return at_most(std::abs(a.constant / b.constant - 1.0), 1e-6, fmt("c=", a.constant));
    }
    if (c.fam.kind() == Kind::Jacobi) {
        const double r = fourier::jacobi_calibration_ratio(c.fam);
        return at_most(std::abs(r - 1.0), 1e-3, fmt("ratio=", r));
    }
    return skip("no c-function for tabulated weights");
}

double log_slope(const ChebliFamily& f, double a, double b) {
    return std::log(fourier::c_density(f, b) / fourier::c_density(f, a)) / std::log(b / a);
}

Outcome fourier_c_asymptotics(Ctx& c) {
    if (!c.transformable()) return skip("no c-function for tabulated weights");
    const double p = 2.0 * c.fam.alpha() + 1.0;
    const double large = log_slope(c.fam, 10.0, 100.0);
    double dev = std::abs(large - p);
    std::string detail = fmt("slope[10,100]=", large);
    if (c.fam.rho() > 0.0) {
        const double small = log_slope(c.fam, 1e-3, 1e-2);
        dev = std::max(dev, std::abs(small - 2.0) * 0.5);
        detail += fmt(" slope[1e-3,1e-2]=", small);
    }
    return at_most(dev, 0.05, detail);
}

Outcome fourier_spectral_gap(Ctx& c) {
    if (!c.transformable()) return skip("no c-function for tabulated weights");
    fourier::SpectralDensity d(c.fam, c.eps);
    double worst = 0.0;
    for (int i = -100; i <= 100; ++i) {
        const double l = d.gap() * i / 100.5;
        worst = std::max(worst, std::abs(d.density(l)));
    }
    for (double l : {0.3, 1.7, 5.0, 20.0}) worst = std::max(worst, std::abs(d.density(l) - d.density(-l)));
    for (const auto& nd : fourier::spectral_nodes(d, c.num.lmax, 1.0))
        if (std::abs(nd.lambda) < d.gap()) worst = std::max(worst, d.gap() - std::abs(nd.lambda));
    return at_most(worst, 0.0, fmt("gap=", d.gap()));
}

fourier::QuadratureParams quad(const Ctx& c) {
    fourier::QuadratureParams q;
    q.radius = c.num.xmax;
    q.step = c.num.step;
    q.lmax = c.num.lmax;
    return q;
}

SampledFunction default_input(double radius, double step) {
    return SampledFunction::from_function(radius, step, [](double x) { return cplx(fourier::default_bump(x)); });
}

Outcome fourier_conjugate_symmetry(Ctx& c) {
    if (!c.transformable()) return skip("no c-function for tabulated weights");
    auto q = quad(c);
    auto f = default_input(q.radius, q.step);
    std::vector<cplx> l;
    for (double v : {0.5, 1.7, 3.1, 9.4}) {
        l.emplace_back(v);
        l.emplace_back(-v);
    }
    auto r = fourier::forward(c.fam, c.eps, f, l, q);
    double worst = 0.0;
    for (std::size_t k = 0; k < l.size(); k += 2)
        worst = std::max(worst, std::abs(r.values[k + 1] - std::conj(r.values[k])));
    return at_most(worst, 1e-10);
}

Outcome fourier_roundtrip(Ctx& c) {
    if (!c.transformable()) return skip("no c-function for tabulated weights");
    auto q = quad(c);
    auto rt = fourier::roundtrip(c.fam, c.eps, default_input(q.radius, q.step), q);
    auto q2 = q;
    q2.step /= 2.0;
    q2.lmax *= 2.0;
    auto rt2 = fourier::roundtrip(c.fam, c.eps, default_input(q2.radius, q2.step), q2);
    Outcome o = at_most(rt.sup_error, 1e-4, fmt("refined error ", rt2.sup_error));
    if (!(rt2.sup_error < rt.sup_error)) o.status = Status::Fail;
    return o;
}

Outcome fourier_plancherel(Ctx& c) {
    if (!c.transformable()) return skip("no c-function for tabulated weights");
    auto q = quad(c);
    auto f = default_input(q.radius, q.step);
    auto g = SampledFunction::from_function(q.radius, q.step, [](double x) {
        return cplx(numeric::bump(x + 0.3, 2.0, 8.0) * (1.0 + 0.5 * x));
    });
    auto r = fourier::plancherel_check(c.fam, c.eps, f, g, q, c.cfg.density_scale);
    return at_most(r.discrepancy(), 1e-3, fmt("bilinear ", r.relative, ", L2 ", r.l2_relative));
}

Outcome fourier_paley_wiener(Ctx& c) {
    if (!c.transformable()) return skip("no c-function for tabulated weights");
    const auto& r = c.pw_report();
    Outcome o = at_most(std::abs(r.r_fit - 1.0), 0.05,
                        fmt("R_fit=", r.r_fit, " weighted sup (t=3) ", r.weighted_sup.back(), " decay ratio ",
                            r.decay_ratio));
    const bool finite = std::all_of(r.weighted_sup.begin(), r.weighted_sup.end(), [](double v) { return std::isfinite(v); });
    if (!finite || !(r.decay_ratio <= 1.0)) o.status = Status::Fail;
    return o;
}

Outcome fourier_riemann_lebesgue(Ctx& c) {
    if (!c.transformable()) return skip("no c-function for tabulated weights");
    return at_most(c.pw_report().rl_ratio, 1e-3);
}

Outcome fourier_schwartz(Ctx& c) {
    const double p = 2.0 / (1.0 + std::sqrt(1.0 - c.eps * c.eps));
    auto f = default_input(c.num.xmax, c.num.step);
    double worst = 0.0;
    for (double s : {0.0, 2.0})
        for (int k = 0; k <= 2; ++k) worst = std::max(worst, fourier::schwartz_seminorm(c.fam, c.eps, p, f, s, k));
    Outcome o{std::isfinite(worst) ? Status::Pass : Status::Fail, worst, std::numeric_limits<double>::infinity(),
              "largest seminorm of the bump, s in {0,2}, k <= 2"};
    return o;
}

// ---- heat ----

heat::HeatOptions heat_options(const Ctx& c) {
    heat::HeatOptions o;
    o.tol = std::min(c.num.tol, 1e-10);
    return o;
}

Outcome heat_positivity(Ctx& c) {
    auto g = heat::uniform_grid(4.0, 1.0 / 16.0);
    double low = std::numeric_limits<double>::infinity();
    double thr = 0.0;
    for (double s : {0.25, 1.0}) {
        heat::HeatEval he(c.fam, c.eps, s, 4.0, 1.0 / 16.0, heat_options(c));
        auto r = heat::positivity_scan(he, g, g);
        low = std::min(low, r.min_value);
        thr = r.threshold;
    }
    return at_least(low, thr);
}

Outcome heat_origin(Ctx& c) {
    double worst = 0.0;
    for (double s : {0.25, 1.0}) {
        heat::HeatEval he(c.fam, c.eps, s, 1.0, 1.0 / 16.0, heat_options(c));
        for (double u = -4.0; u <= 4.0; u += 1.0 / 16.0)
            worst = std::max(worst, std::abs(he.w(u, 0.0) - heat::euclidean_kernel(s, u)));
    }
    return at_most(worst, 1e-8);
}

Outcome heat_even_bound(Ctx& c) {
    heat::HeatEval he(c.fam, c.eps, 0.25, 4.0, 1.0 / 16.0, heat_options(c));
    auto g = heat::uniform_grid(4.0, 0.25);
    auto r = heat::even_bound_check(he, g, g);
    return at_least(r.worst_margin, -he.tol(), "min of W_even minus the Gaussian lower bound");
}

Outcome heat_decay(Ctx& c) {
    heat::HeatEval he(c.fam, c.eps, 0.25, 16.0, 0.25, heat_options(c));
    std::vector<double> rings;
    double interior = 0.0;
    for (double m : {4.0, 8.0, 16.0}) {
        auto r = heat::decay_check(he, m, 0.25);
        rings.push_back(r.ring_max);
        interior = std::max(interior, r.interior_max);
    }
    const bool decreasing = rings[1] < rings[0] && rings[2] < rings[1];
    Outcome o{decreasing ? Status::Pass : Status::Fail, rings[2] / rings[0], 1.0,
              fmt("ring maxima at m=4,8,16: ", rings[0], ", ", rings[1], ", ", rings[2], "; ring/interior at m=16: ",
                  rings[2] / interior)};
    return o;
}

Outcome heat_transport(Ctx& c) {
    heat::HeatEval he(c.fam, c.eps, 1.0, 3.0, 1.0 / 32.0, heat_options(c));
    auto r = heat::transport_check(he, 3.0, 1.0 / 32.0);
    return at_most(r.residual / r.scale, 1e-4, "relative to max |W|");
}

Outcome heat_semigroup(Ctx& c) {
    auto g = heat::uniform_grid(2.0, 0.5);
    auto r = heat::semigroup_check(c.fam, c.eps, 0.25, g, g, heat_options(c));
    return at_most(r.max_diff, 1e-4);
}

struct Entry {
    CheckInfo info;
    std::function<Outcome(Ctx&)> run;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> list = {
        {{"chebli.weight_even", "weight is even"}, chebli_weight_even},
        {{"chebli.normalization", "A(x)/|x|^(2a+1) -> 1 at the origin"}, chebli_normalization},
        {{"chebli.hypotheses", "weight hypotheses H1-H4"}, chebli_hypotheses},
        {{"chebli.jacobi_tail", "A'/A - 2 rho = O(e^{-2x})"}, chebli_jacobi_tail},
        {{"chebli.dunkl_logder", "x A'/A = 2a+1 for power weights"}, chebli_dunkl_logder},
        {{"chebli.rho_eps", "rho_eps = sqrt(1-eps^2) rho"}, chebli_rho_eps},
        {{"eigen.cauchy_data", "phi(0)=1, phi'(0)=0, phi even"}, eigen_cauchy_data},
        {{"eigen.residual", "Lambda Psi = i lambda Psi"}, eigen_residual},
        {{"eigen.dunkl_oracle", "one-dimensional Dunkl kernel in Bessel form"}, eigen_dunkl_oracle},
        {{"eigen.conjugation", "conj Psi(lambda) = Psi(-lambda) for real lambda"}, eigen_conjugation},
        {{"eigen.reflection", "reflection identity for Psi(lambda,-x)"}, eigen_reflection},
        {{"eigen.even_part", "Psi(x) + Psi(-x) = 2 phi"}, eigen_even_part},
        {{"eigen.analyticity", "lambda -> Psi is analytic"}, eigen_analyticity},
        {{"eigen.phi_prime", "phi' = -(mu^2+rho^2) A^{-1} int phi A"}, eigen_phi_prime},
        {{"eigen.bounded", "|Psi| <= sqrt 2 for real lambda"}, eigen_bounded},
        {{"eigen.strip_domination", "|Psi(a+ib,x)| <= Psi(ib,x)"}, eigen_strip},
        {{"eigen.exp_type", "Psi(ib,x) <= Psi(0,x) e^{|b||x|}"}, eigen_exp_type},
        {{"eigen.positive_imaginary", "Psi real and positive on the imaginary axis"}, eigen_positive},
        {{"eigen.zero_envelope", "Psi(0,x) <= c (|x|+1) e^{-rho(1-sqrt(1-eps^2))|x|}"}, eigen_zero_envelope},
        {{"intertwine.bessel", "Bessel kernels J and I"}, intertwine_bessel},
        {{"intertwine.endpoint_identity", "transmutation is the identity at eps = +-1"}, intertwine_endpoint_identity},
        {{"intertwine.e_composition", "E o E^{-1} = id"}, intertwine_e_composition},
        {{"intertwine.te_composition", "tE o tE^{-1} = id"}, intertwine_te_composition},
        {{"intertwine.te_transmutation", "tE f'' = (d^2/dx^2 - rho_eps^2) tE f"}, intertwine_te_transmutation},
        {{"intertwine.mehler", "Laplace representation of Psi"}, intertwine_mehler},
        {{"intertwine.mehler_mass", "kernel mass equals Psi(0,x)"}, intertwine_mehler_mass},
        {{"intertwine.kernel_scan", "kernel sign scan"}, intertwine_kernel_scan},
        {{"intertwine.positivity", "V is positive"}, intertwine_positivity},
        {{"intertwine.intertwining", "Lambda V = V d/dx"}, intertwine_intertwining},
        {{"intertwine.duality", "int (Vf) g A = int f (tV g)"}, intertwine_duality},
        {{"intertwine.support", "tV preserves supports"}, intertwine_support},
        {{"fourier.calibration", "c-density normalization"}, fourier_calibration},
        {{"fourier.c_asymptotics", "|c(mu)|^{-2} power laws"}, fourier_c_asymptotics},
        {{"fourier.spectral_gap", "density vanishes in the gap"}, fourier_spectral_gap},
        {{"fourier.conjugate_symmetry", "F f(-lambda) = conj F f(lambda) for real f"}, fourier_conjugate_symmetry},
        {{"fourier.roundtrip", "inversion formula"}, fourier_roundtrip},
        {{"fourier.plancherel", "Plancherel formula"}, fourier_plancherel},
        {{"fourier.paley_wiener", "Paley-Wiener theorem"}, fourier_paley_wiener},
        {{"fourier.riemann_lebesgue", "Riemann-Lebesgue lemma"}, fourier_riemann_lebesgue},
        {{"fourier.schwartz", "Schwartz seminorms of test functions"}, fourier_schwartz},
        {{"heat.positivity", "W_eps >= 0"}, heat_positivity},
        {{"heat.origin", "W(s;u,0) is the Euclidean heat kernel"}, heat_origin},
        {{"heat.even_bound", "Gaussian lower bound for the even part of W"}, heat_even_bound},
        {{"heat.decay", "W -> 0 at infinity"}, heat_decay},
        {{"heat.transport", "(Lambda + d/du) W = 0"}, heat_transport},
        {{"heat.semigroup", "W(2s) = W(s) * p_s in u"}, heat_semigroup},
    };
    return list;
}

}  // namespace

const std::vector<CheckInfo>& registry() {
    static const std::vector<CheckInfo> ids = [] {
        std::vector<CheckInfo> v;
        for (const auto& e : entries()) v.push_back(e.info);
        return v;
    }();
    return ids;
}

report::VerifyReport verify_suite(const VerifyConfig& cfg) {
    if (!(std::abs(cfg.eps) <= 1.0)) throw DomainError("eps out of [-1,1]");
    validate(cfg.numeric);
    Ctx ctx{cfg, cfg.family, cfg.eps, cfg.numeric, std::nullopt, std::nullopt};
    report::VerifyReport rep;
    for (const auto& e : entries()) {
        report::CheckResult r;
        r.check = e.info.id;
        r.anchor = e.info.anchor;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            Outcome o = e.run(ctx);
            r.status = o.status;
            r.observed = o.observed;
            r.tolerance = o.tolerance;
            r.detail = o.detail;
        } catch (const std::exception& ex) {
            r.status = report::Status::Fail;
            r.observed = std::numeric_limits<double>::quiet_NaN();
            r.tolerance = std::numeric_limits<double>::quiet_NaN();
            r.detail = std::string("error: ") + ex.what();
        }
        r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        rep.checks.push_back(std::move(r));
    }
    return rep;
}

}  // namespace reflectra::verify
