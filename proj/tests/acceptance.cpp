// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "reflectra/chebli.hpp"
#include "reflectra/eigen.hpp"
#include "reflectra/fourier.hpp"
#include "reflectra/heat.hpp"
#include "reflectra/intertwine.hpp"
#include "reflectra/numeric.hpp"

using namespace reflectra;
using chebli::ChebliFamily;
using eigen::SpectralPoint;

namespace {

const std::vector<double> kEps = {-1.0, -0.5, 0.0, 0.5, 1.0};
const cplx I(0.0, 1.0);

std::vector<ChebliFamily> families() { return {ChebliFamily::dunkl(0.5), ChebliFamily::jacobi(1.5, 0.5)}; }

struct Line {
    bool pass = true;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

std::vector<cplx> psi_grid(const ChebliFamily& f, cplx lambda, double eps, double radius, double h) {
    eigen::PsiEvaluator ev(f, SpectralPoint::make(f, lambda, eps), radius, eigen::SolveOptions{1e-11, h});
    return ev.on_grid(radius, h);
}

// alpha = 1/2 Dunkl kernel from elementary functions
cplx dunkl_half(double lambda, double x) {
    const double z = lambda * x;
    if (std::abs(z) < 1e-4) return 1.0 - z * z / 6.0 + I * z / 3.0 * (1.0 - z * z / 10.0);
    return std::sin(z) / z + I * z / 3.0 * (3.0 * (std::sin(z) - z * std::cos(z)) / (z * z * z));
}

Line residual() {
    const auto t0 = std::chrono::steady_clock::now();
    const double h = 1.0 / 64.0, radius = 6.0 + 2.0 * h;
    double worst = 0.0;
    for (const auto& f : families())
        for (double eps : kEps)
            for (cplx lam : {cplx(0.7), cplx(2.3), cplx(0.0, 0.4)}) {
                SampledFunction s(radius, h, psi_grid(f, lam, eps, radius, h));
                auto ls = eigen::apply_lambda_op(f, eps, s);
                for (std::size_t i = 2; i + 2 < s.size(); ++i) worst = std::max(worst, std::abs(ls[i] - I * lam * s[i]));
            }
    const double t = seconds_since(t0);
    return {worst <= 1e-5 && t <= 5.0, fmt("max residual %.3g (tol 1e-5), runtime %.2f s (limit 5 s)", worst, t)};
}

Line dunkl_oracle() {
    auto f = ChebliFamily::dunkl(0.5);
    const double h = 1.0 / 64.0;
    double worst = 0.0;
    for (double eps : kEps)
        for (double lam : {0.5, 2.0, 7.0}) {
            auto v = psi_grid(f, lam, eps, 10.0, h);
            for (std::size_t i = 0; i < v.size(); ++i)
                worst = std::max(worst, std::abs(v[i] - dunkl_half(lam, (static_cast<double>(i) - 640.0) * h)));
        }
    return {worst <= 1e-8, fmt("max deviation %.3g (tol 1e-8)", worst)};
}

Line boundedness() {
    const double h = 1.0 / 64.0;
    double worst = 0.0;
    for (const auto& f : families())
        for (double eps : kEps)
            for (int k = 0; k <= 80; ++k)
                for (const cplx& v : psi_grid(f, 0.25 * k, eps, 8.0, h)) worst = std::max(worst, std::abs(v));
    return {worst <= std::sqrt(2.0) + 1e-9, fmt("sup |Psi| %.12f (bound sqrt 2 + 1e-9 = %.12f)", worst, std::sqrt(2.0) + 1e-9)};
}

Line imaginary_positivity() {
    const double h = 1.0 / 64.0;
    double low = std::numeric_limits<double>::infinity(), im = 0.0;
    for (const auto& f : families())
        for (double eps : kEps)
            for (int k = -20; k <= 20; ++k)
                for (const cplx& v : psi_grid(f, cplx(0.0, 0.05 * k), eps, 8.0, h)) {
                    low = std::min(low, v.real());
                    im = std::max(im, std::abs(v.imag()));
                }
    return {low > 0.0 && im <= 1e-9, fmt("min Re Psi(ib,x) %.3g (> 0), max |Im| %.3g (tol 1e-9)", low, im)};
}

Line transmutation() {
    using intertwine::BesselKernelOp;
    using intertwine::Direction;
    auto f = ChebliFamily::jacobi(1.5, 0.5);
    const double eps = 0.5, h = 1.0 / 64.0;
    // composition on [-4, 4] at half the default step
    auto in = SampledFunction::from_function(4.0, h / 2.0, [](double x) { return cplx(numeric::bump(x, 1.0, 1.0)); });
    auto back = intertwine::apply_e(BesselKernelOp::make(f, eps, Direction::E),
                                    intertwine::apply_e(BesselKernelOp::make(f, eps, Direction::EInv), in));
    double comp = 0.0;
    for (std::size_t i = 0; i < in.size(); ++i) comp = std::max(comp, std::abs(back[i] - in[i]));

    const double re = chebli::rho_eps(f, eps);
    auto te = BesselKernelOp::make(f, eps, Direction::TE);
    auto g = SampledFunction::from_function(8.0, h, [](double x) { return cplx(numeric::bump(x, 3.0, 8.0)); });
    auto g2 = SampledFunction::from_function(8.0, h, [](double x) { return cplx(numeric::bump_d2(x, 3.0, 8.0)); });
    auto lhs = intertwine::apply_e(te, g2);
    auto tg = intertwine::apply_e(te, g);
    auto dd = eigen::derivative4(eigen::derivative4(tg.values(), h), h);
    double trans = 0.0;
    for (std::size_t i = 4; i + 4 < g.size(); ++i) trans = std::max(trans, std::abs(lhs[i] - (dd[i] - re * re * tg[i])));

    double ident = 0.0;
    for (double e : {1.0, -1.0})
        for (auto d : {Direction::E, Direction::EInv, Direction::TE, Direction::TEInv}) {
            auto out = intertwine::apply_e(BesselKernelOp::make(f, e, d), g);
            for (std::size_t i = 0; i < g.size(); ++i) ident = std::max(ident, std::abs(out[i] - g[i]));
        }
    return {comp <= 1e-6 && trans <= 1e-4 && ident == 0.0,
            fmt("E o E^-1 %.3g (tol 1e-6), tE residual %.3g (tol 1e-4), E_{+-1} - id %.3g (exact 0)", comp, trans, ident)};
}

Line mehler() {
    auto f = ChebliFamily::dunkl(0.5);
    double worst = 0.0;
    for (double eps : kEps)
        for (double x : {0.5, 2.0}) {
            intertwine::MehlerKernel k(f, eps, x);
            for (double lam : {0.0, 1.5, 4.0})
                worst = std::max(worst, std::abs(k.apply([lam](double y) { return std::polar(1.0, lam * y); }) -
                                                 dunkl_half(lam, x)));
        }
    return {worst <= 1e-6, fmt("max |int K e^{i lambda y} dy - Psi| %.3g (tol 1e-6)", worst)};
}

SampledFunction bump_input(const fourier::QuadratureParams& q) {
    return SampledFunction::from_function(q.radius, q.step, [](double x) { return cplx(fourier::default_bump(x)); });
}

Line roundtrip() {
    Line l;
    std::string detail;
    for (const auto& f : families()) {
        const auto t0 = std::chrono::steady_clock::now();
        double worst = 0.0;
        bool monotone = true;
        for (double eps : kEps) {
            fourier::QuadratureParams q;
            auto r = fourier::roundtrip(f, eps, bump_input(q), q);
            auto q2 = q;
            q2.step /= 2.0;
            q2.lmax *= 2.0;
            auto r2 = fourier::roundtrip(f, eps, bump_input(q2), q2);
            worst = std::max(worst, r.sup_error);
            monotone = monotone && r2.sup_error < r.sup_error;
        }
        const double t = seconds_since(t0);
        l.pass = l.pass && worst <= 1e-4 && monotone && t <= 30.0;
        detail += f.name() + fmt(": sup error %.3g (tol 1e-4), runtime %.1f s (limit 30 s), ", worst, t) +
                  (monotone ? "refinement decreases the error; " : "refinement does not decrease the error; ");
    }
    l.detail = detail;
    return l;
}

Line plancherel() {
    double worst = 0.0;
    for (const auto& f : families())
        for (double eps : kEps) {
            fourier::QuadratureParams q;
            auto g = SampledFunction::from_function(q.radius, q.step, [](double x) {
                return cplx(numeric::bump(x + 0.3, 2.0, 8.0) * (1.0 + 0.5 * x));
            });
            worst = std::max(worst, fourier::plancherel_check(f, eps, bump_input(q), g, q).discrepancy());
        }
    return {worst <= 1e-3, fmt("max relative discrepancy %.3g (tol 1e-3)", worst)};
}

Line paley_wiener() {
    auto in = SampledFunction::from_function(1.0, 1.0 / 512.0, [](double x) { return cplx(numeric::bump(x, 1.0, 1.0)); });
    std::vector<double> eta;
    for (int e = 10; e <= 80; ++e) eta.push_back(e);
    double rmin = 1e300, rmax = -1e300, rl = 0.0, decay = 0.0;
    bool bounded = true;
    for (const auto& f : families())
        for (double eps : kEps) {
            auto r = fourier::paley_wiener_check(f, eps, in, 1.0, eta, {3.0}, 40.0);
            rmin = std::min(rmin, r.r_fit);
            rmax = std::max(rmax, r.r_fit);
            rl = std::max(rl, r.rl_ratio);
            decay = std::max(decay, r.decay_ratio);
            bounded = bounded && std::isfinite(r.weighted_sup[0]) && r.decay_ratio <= 1.0;
        }
    return {rmin >= 0.95 && rmax <= 1.05 && bounded && rl < 1e-3,
            fmt("R_fit in [%.4f, %.4f] (need [0.95, 1.05]), (|l|+1)^3|Ff| tail/head %.3g (<= 1), RL ratio %.3g (< 1e-3)",
                rmin, rmax, decay, rl)};
}

Line heat_positivity() {
    const auto t0 = std::chrono::steady_clock::now();
    auto g = heat::uniform_grid(4.0, 1.0 / 16.0);
    double low = std::numeric_limits<double>::infinity(), origin = 0.0;
    heat::HeatOptions o;
    o.tol = 1e-10;
    for (const auto& f : families())
        for (double eps : kEps)
            for (double s : {0.25, 1.0}) {
                heat::HeatEval he(f, eps, s, 4.0, 1.0 / 16.0, o);
                low = std::min(low, heat::positivity_scan(he, g, g).min_value);
                for (double u : g) origin = std::max(origin, std::abs(he.w(u, 0.0) - heat::euclidean_kernel(s, u)));
            }
    const double t = seconds_since(t0);
    return {low >= -1e-8 && origin <= 1e-8 && t <= 60.0,
            fmt("min W %.3g (>= -1e-8), W(s;u,0) deviation %.3g (tol 1e-8), runtime %.1f s (limit 60 s)", low, origin, t)};
}

Line intertwiner_positivity() {
    auto f = ChebliFamily::dunkl(0.5);
    auto in = SampledFunction::from_function(4.0, 1.0 / 64.0, [](double x) { return cplx(numeric::bump(x - 0.5, 1.0, 1.0)); });
    double low = std::numeric_limits<double>::infinity();
    for (double eps : kEps)
        for (const auto& v : intertwine::v_eps(f, eps, in).values()) low = std::min(low, v.real());
    return {low >= -1e-10, fmt("min V f %.3g (>= -1e-10)", low)};
}

double log_slope(const ChebliFamily& f, double a, double b) {
    return std::log(fourier::c_density(f, b) / fourier::c_density(f, a)) / std::log(b / a);
}

Line calibration() {
    double spread = 0.0;
    const auto base = fourier::calibrate_dunkl(0.5, 1.0).constant;
    for (double w : {1.5, 2.0, 3.0}) spread = std::max(spread, std::abs(fourier::calibrate_dunkl(0.5, w).constant / base - 1.0));
    auto j = ChebliFamily::jacobi(1.5, 0.5);
    const double large = log_slope(j, 10.0, 100.0), small = log_slope(j, 1e-3, 1e-2);
    const double dl = std::abs(large / (2.0 * j.alpha() + 1.0) - 1.0), ds = std::abs(small / 2.0 - 1.0);
    return {spread <= 1e-6 && dl <= 0.05 && ds <= 0.10,
            fmt("Dunkl constant spread %.3g (tol 1e-6), Jacobi slope [10,100] %.4f (4 +- 5%%), slope [1e-3,1e-2] %.4f (2 +- 10%%)",
                spread, large, small)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Line()>>> criteria = {
        {"eigen-equation residual", residual},
        {"Dunkl closed-form oracle", dunkl_oracle},
        {"boundedness for real lambda", boundedness},
        {"positivity on the imaginary axis", imaginary_positivity},
        {"transmutation compositions", transmutation},
        {"Mehler identity", mehler},
        {"inversion round trip", roundtrip},
        {"Plancherel identity", plancherel},
        {"Paley-Wiener and Riemann-Lebesgue", paley_wiener},
        {"heat kernel positivity", heat_positivity},
        {"intertwiner positivity", intertwiner_positivity},
        {"calibration stability", calibration},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Line l;
        try {
            l = criteria[k].second();
        } catch (const std::exception& e) {
            l = {false, std::string("error: ") + e.what()};
        }
        if (!l.pass) ++failed;
        std::printf("%s %2zu %s: %s\n", l.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), l.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
