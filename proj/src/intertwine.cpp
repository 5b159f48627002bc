#include "reflectra/intertwine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "reflectra/errors.hpp"

namespace reflectra::intertwine {

namespace {

void require_order(int nu) {
    if (nu < 0 || nu > 2) throw DomainError("Bessel order must be 0, 1 or 2");
}

// J1(z)/z and I1(z)/z, both 1/2 at the origin
double j1_over(double z) {
    if (z < 1e-4) return 0.5 - z * z / 16.0;
    return boost::math::cyl_bessel_j(1, z) / z;
}

double i1_over(double z) {
    if (z < 1e-4) return 0.5 + z * z / 16.0;
    return boost::math::cyl_bessel_i(1, z) / z;
}

void require_even(const SampledFunction& f) {
    if (f.parity_defect_even() > 1e-12 * std::max(1.0, f.sup_norm()))
        throw ParityError("transmutation operators act on even functions");
}

void require_dunkl(const ChebliFamily& fam) {
    if (fam.kind() != chebli::Kind::Dunkl)
        throw UnsupportedFamilyError("explicit intertwining kernels are available for the Dunkl family only");
}

double sonine_constant(double alpha) {
    return 2.0 * boost::math::tgamma(alpha + 1.0) / (std::sqrt(M_PI) * boost::math::tgamma(alpha + 0.5));
}

// Simpson weights for n intervals (3/8 closure when n is odd), unit step.
std::vector<double> simpson_weights(std::size_t n) {
    std::vector<double> w(n + 1, 0.0);
    if (n == 0) return w;
    if (n == 1) {
        w[0] = w[1] = 0.5;
        return w;
    }
    auto add38 = [&](std::size_t s) {
        w[s] += 3.0 / 8.0;
        w[s + 1] += 9.0 / 8.0;
        w[s + 2] += 9.0 / 8.0;
        w[s + 3] += 3.0 / 8.0;
    };
    if (n == 3) {
        add38(0);
        return w;
    }
    const std::size_t m = (n % 2 == 0) ? n : n - 3;
    for (std::size_t i = 0; i <= m; ++i) {
        double c = (i == 0 || i == m) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        w[i] += c / 3.0;
    }
    if (m != n) add38(m);
    return w;
}

// End corrections c_i = w_i - 1 of the order-8 Gregory rule, from the
// Euler-Maclaurin moments sum_i c_i i^k.
const std::vector<double>& gregory_corrections() {
    static const std::vector<double> c = [] {
        constexpr int p = 8;
        const double bern[] = {0.0, 0.0, 1.0 / 6.0, 0.0, -1.0 / 30.0, 0.0, 1.0 / 42.0, 0.0, -1.0 / 30.0};
        std::vector<std::vector<double>> rows(p, std::vector<double>(p));
        std::vector<double> rhs(p, 0.0);
        for (int k = 0; k < p; ++k) {
            for (int i = 0; i < p; ++i) rows[k][i] = (k == 0) ? 1.0 : std::pow(static_cast<double>(i), k);
            if (k == 0) rhs[k] = -0.5;
            else if (k % 2 == 1) rhs[k] = bern[k + 1] / (k + 1.0);
        }
        return numeric::least_squares(rows, rhs);
    }();
    return c;
}

// Unit-step weights: order-8 Gregory for n >= 16 intervals, Simpson otherwise.
std::vector<double> grid_weights(std::size_t n) {
    const auto& c = gregory_corrections();
    if (n < 2 * c.size()) return simpson_weights(n);
    std::vector<double> w(n + 1, 1.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        w[i] += c[i];
        w[n - i] += c[i];
    }
    return w;
}

}  // namespace

double bessel_j(int nu, double z) {
    require_order(nu);
    if (!(z >= 0.0)) throw DomainError("Bessel argument must be non-negative");
    return boost::math::cyl_bessel_j(nu, z);
}

double bessel_i(int nu, double z) {
    require_order(nu);
    if (!(z >= 0.0)) throw DomainError("Bessel argument must be non-negative");
    return boost::math::cyl_bessel_i(nu, z);
}

BesselKernelOp BesselKernelOp::make(const ChebliFamily& fam, double eps, Direction dir) {
    return BesselKernelOp{dir, chebli::rho_eps(fam, eps)};
}

SampledFunction apply_e(const BesselKernelOp& op, const SampledFunction& f) {
    require_even(f);
    if (op.rho_eps == 0.0) return f;
    const double rho = op.rho_eps;
    const double h = f.step();
    const std::size_t n = f.half();
    SampledFunction out = f;
    const bool transposed = op.direction == Direction::TE || op.direction == Direction::TEInv;
    const bool inverse = op.direction == Direction::EInv || op.direction == Direction::TEInv;
    const double sign = inverse ? 1.0 : -1.0;
    auto kern = [&](double z) { return inverse ? i1_over(z) : j1_over(z); };

    if (transposed) {
        const double tail = std::max(std::abs(f[0]), std::abs(f[f.size() - 1]));
        if (tail > 1e-12 * std::max(1.0, f.sup_norm()))
            throw SupportError("transposed transmutation needs a function vanishing at the grid edge");
    }

    for (std::size_t m = 0; m <= n; ++m) {
        const double am = static_cast<double>(m);
        cplx acc = 0.0;
        if (!transposed) {
            if (m == 0) continue;
            const auto w = grid_weights(2 * m);
            for (std::size_t k = 0; k <= 2 * m; ++k) {
                const double j = static_cast<double>(k) - am;
                const double r = h * std::sqrt(std::max(0.0, am * am - j * j));
                acc += w[k] * f[n - m + k] * kern(rho * r);
            }
            acc *= h * rho * rho * am * h / 2.0;
        } else {
            const std::size_t cnt = n - m;
            if (cnt == 0) continue;
            const auto w = grid_weights(cnt);
            for (std::size_t k = 0; k <= cnt; ++k) {
                const double xi = am + static_cast<double>(k);
                const double r = h * std::sqrt(std::max(0.0, xi * xi - am * am));
                acc += w[k] * (xi * h) * f[n + m + k] * kern(rho * r);
            }
            acc *= h * rho * rho;
        }
        out[n + m] = f[n + m] + sign * acc;
        out[n - m] = out[n + m];
    }
    return out;
}

SampledFunction apply_te_gradient_form(const BesselKernelOp& op, const SampledFunction& gprime) {
    if (op.direction != Direction::TE && op.direction != Direction::TEInv)
        throw ConfigError("gradient form exists for the transposed operators only");
    if (gprime.parity_defect_odd() > 1e-12 * std::max(1.0, gprime.sup_norm()))
        throw ParityError("gradient form expects the odd derivative of an even function");
    const double rho = op.rho_eps;
    const double h = gprime.step();
    const std::size_t n = gprime.half();
    const bool inverse = op.direction == Direction::TEInv;
    SampledFunction out = SampledFunction::zeros(gprime.radius(), h);
    for (std::size_t m = 0; m <= n; ++m) {
        const std::size_t cnt = n - m;
        cplx acc = 0.0;
        if (cnt > 0) {
            const auto w = grid_weights(cnt);
            const double am = static_cast<double>(m);
            for (std::size_t k = 0; k <= cnt; ++k) {
                const double xi = am + static_cast<double>(k);
                const double z = rho * h * std::sqrt(std::max(0.0, xi * xi - am * am));
                const double b = inverse ? boost::math::cyl_bessel_i(0, z) : boost::math::cyl_bessel_j(0, z);
                acc += w[k] * gprime[n + m + k] * b;
            }
            acc *= -h;
        }
        out[n + m] = acc;
        out[n - m] = acc;
    }
    return out;
}

double dunkl_base_kernel(const ChebliFamily& fam, double x, double t) {
    require_dunkl(fam);
    if (x == 0.0 || !std::isfinite(x)) throw DomainError("base kernel needs x != 0");
    const double ax = std::abs(x), at = std::abs(t);
    if (at > ax) return 0.0;
    const double alpha = fam.alpha();
    const double q = ax * ax - t * t;
    if (q <= 0.0) {
        if (alpha > 0.5) return 0.0;
        if (alpha == 0.5) return sonine_constant(alpha) / ax;
        return std::numeric_limits<double>::infinity();
    }
    return sonine_constant(alpha) * std::pow(q, alpha - 0.5) * std::pow(ax, -2.0 * alpha);
}

numeric::QuadratureRule graded_rule(double a, double b, std::size_t uniform_panels, bool grade_left,
                                    bool grade_right, int levels) {
    numeric::QuadratureRule q;
    if (!(b > a)) return q;
    const std::size_t p = std::max<std::size_t>(uniform_panels, 2);
    const double w = (b - a) / static_cast<double>(p);
    auto append = [&](double lo, double hi) {
        auto r = numeric::gauss_panels(lo, hi, 1);
        q.nodes.insert(q.nodes.end(), r.nodes.begin(), r.nodes.end());
        q.weights.insert(q.weights.end(), r.weights.begin(), r.weights.end());
    };
    for (std::size_t i = 0; i < p; ++i) {
        const double lo = a + w * static_cast<double>(i);
        const double hi = (i + 1 == p) ? b : lo + w;
        if (i == 0 && grade_left) {
            double edge = lo + w * std::ldexp(1.0, -levels);
            append(lo, edge);
            for (int k = levels; k > 0; --k) {
                const double next = lo + w * std::ldexp(1.0, -(k - 1));
                append(edge, next);
                edge = next;
            }
        } else if (i + 1 == p && grade_right) {
            double edge = hi - w * std::ldexp(1.0, -levels);
            for (int k = 0; k < levels; ++k) {
                const double prev = hi - w * std::ldexp(1.0, -k);
                append(prev, hi - w * std::ldexp(1.0, -(k + 1)));
            }
            append(edge, hi);
        } else {
            append(lo, hi);
        }
    }
    return q;
}

MehlerKernel::MehlerKernel(const ChebliFamily& fam, double eps, double x, bool build_rule)
    : fam_(&fam), eps_(eps), x_(x), ax_(std::abs(x)), c_(0.0) {
    require_dunkl(fam);
    if (!(std::abs(eps) <= 1.0)) throw DomainError("eps out of [-1,1]");
    if (x == 0.0 || !std::isfinite(x)) throw DomainError("Mehler kernel needs x != 0");
    c_ = sonine_constant(fam.alpha());
    if (!build_rule) return;
    auto rule = graded_rule(-M_PI / 2.0, M_PI / 2.0, 16, true, true);
    ys_.resize(rule.size());
    ws_.resize(rule.size());
    for (std::size_t k = 0; k < rule.size(); ++k) {
        ys_[k] = ax_ * std::sin(rule.nodes[k]);
        ws_[k] = rule.weights[k] * density_theta(rule.nodes[k]);
    }
}

double MehlerKernel::k_eps(double y) const { return dunkl_base_kernel(*fam_, x_, y); }

double MehlerKernel::g_eps(double y) const {
    const double q = ax_ * ax_ - y * y;
    if (q <= 0.0) return 0.0;
    return std::pow(q, fam_->alpha() + 0.5) * g_mean(y);
}

// G(x, y) = W H with W = (x^2 - y^2)^{alpha + 1/2}; H is the smooth factor.
double MehlerKernel::g_mean(double y) const {
    const double q = std::max(0.0, ax_ * ax_ - y * y);
    const double p = 2.0 * fam_->alpha() + 1.0;
    const double wmax = std::pow(q, 0.5 * p);
    if (wmax == 0.0) return c_ / p * fam_->smooth_part(y);
    // t = sqrt(y^2 + w^{2/p}) removes the endpoint singularity of K(t, y) A(t)
    auto integrand = [&](double w) {
        const double t = std::sqrt(y * y + std::pow(w, 2.0 / p));
        return fam_->smooth_part(t);
    };
    const double integral = boost::math::quadrature::gauss<double, 20>::integrate(integrand, 0.0, wmax);
    return c_ / p * integral / wmax;
}

double MehlerKernel::density_theta(double theta) const {
    const double ct = std::cos(theta), st = std::sin(theta);
    if (!(ct > 0.0)) return 0.0;
    const double alpha = fam_->alpha();
    const double p = 2.0 * alpha + 1.0;
    const double half_k = 0.5 * c_ * std::pow(ct, 2.0 * alpha);
    const double w = std::pow(ax_ * ct, p);
    const double dw = -p * std::pow(ax_, p) * std::pow(ct, 2.0 * alpha) * st;
    const double d = M_PI / 2.0 - std::abs(theta);
    const double delta = std::min(1e-3, d / 4.0);
    auto hm = [&](double th) { return g_mean(ax_ * std::sin(th)); };
    const double hv = hm(theta);
    // at the ends w vanishes, so the dh term drops out
    const double dh = delta > 0.0 ? (hm(theta - 2 * delta) - 8.0 * hm(theta - delta) + 8.0 * hm(theta + delta) -
                                     hm(theta + 2 * delta)) /
                                        (12.0 * delta)
                                  : 0.0;
    const double dg = dw * hv + w * dh;
    const double a = fam_->weight(x_);
    const double s = numeric::sg(x_);
    const double er = eps_ * fam_->rho();
    return half_k + er * s * w * hv * ax_ * ct / (2.0 * a) - s * dg / (2.0 * a);
}

double MehlerKernel::kk(double y) const {
    if (std::abs(y) >= ax_) return 0.0;
    const double theta = std::asin(y / ax_);
    return density_theta(theta) / (ax_ * std::cos(theta));
}

cplx MehlerKernel::apply(const std::function<cplx(double)>& f) const {
    cplx acc = 0.0;
    for (std::size_t k = 0; k < ys_.size(); ++k) acc += ws_[k] * f(ys_[k]);
    return acc;
}

double MehlerKernel::min_density() const {
    auto rule = graded_rule(-M_PI / 2.0, M_PI / 2.0, 16, true, true);
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < rule.size(); ++k) m = std::min(m, ws_[k] / rule.weights[k]);
    return m;
}

cplx v_eps(const ChebliFamily& fam, double eps, const std::function<cplx(double)>& f, double x) {
    require_dunkl(fam);
    if (x == 0.0) return f(0.0);
    return MehlerKernel(fam, eps, x).apply(f);
}

SampledFunction v_eps(const ChebliFamily& fam, double eps, const SampledFunction& f) {
    require_dunkl(fam);
    SampledFunction out = f;
    auto interp = [&f](double y) { return f.interpolate(y); };
    numeric::parallel_for(f.size(), [&](std::size_t i) { out[i] = v_eps(fam, eps, interp, f.x(i)); });
    return out;
}

cplx t_v_eps(const ChebliFamily& fam, double eps, const std::function<cplx(double)>& g, double support,
             double y) {
    require_dunkl(fam);
    if (!(std::abs(eps) <= 1.0)) throw DomainError("eps out of [-1,1]");
    const double ay = std::abs(y);
    if (ay >= support) return 0.0;
    const double smax = std::sqrt(support * support - y * y);
    auto rule = graded_rule(0.0, smax, 12, true, false);
    cplx acc = 0.0;
    for (std::size_t k = 0; k < rule.size(); ++k) {
        const double s = rule.nodes[k];
        const double ax = std::sqrt(y * y + s * s);
        for (double sgn : {1.0, -1.0}) {
            const double x = sgn * ax;
            MehlerKernel ker(fam, eps, x, false);
            // KK(x, y) sqrt(x^2 - y^2) is the theta density at sin th = y/|x|
            const double dens = ker.density_theta(std::asin(std::clamp(y / ax, -1.0, 1.0)));
            acc += rule.weights[k] * dens * fam.weight(x) * g(x) / ax;
        }
    }
    return acc;
}

SampledFunction t_v_eps(const ChebliFamily& fam, double eps, const SampledFunction& g) {
    require_dunkl(fam);
    const double tail = std::max(std::abs(g[0]), std::abs(g[g.size() - 1]));
    if (tail > 1e-12 * std::max(1.0, g.sup_norm()))
        throw SupportError("transposed intertwiner needs a function vanishing at the grid edge");
    double support = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g[i] != cplx(0.0)) support = std::max(support, std::abs(g.x(i)) + g.step());
    support = std::min(support, g.radius());
    SampledFunction out = SampledFunction::zeros(g.radius(), g.step());
    auto interp = [&g](double x) { return g.interpolate(x); };
    numeric::parallel_for(g.size(), [&](std::size_t i) { out[i] = t_v_eps(fam, eps, interp, support, g.x(i)); });
    return out;
}

}  // namespace reflectra::intertwine
