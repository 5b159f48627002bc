#include "reflectra/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>

#include "reflectra/errors.hpp"
#include "reflectra/numeric.hpp"

namespace reflectra::eigen {

namespace {

using State = RadialEigen::State;
using Stepper = boost::numeric::odeint::runge_kutta_fehlberg78<State>;

constexpr std::size_t kMaxSeriesTerms = 60;

cplx get(const State& y, int k) { return {y[2 * k], y[2 * k + 1]}; }
void put(State& y, int k, cplx v) {
    y[2 * k] = v.real();
    y[2 * k + 1] = v.imag();
}

}  // namespace

SpectralPoint SpectralPoint::make(const ChebliFamily& fam, cplx lambda, double eps) {
    if (!(std::abs(eps) <= 1.0)) throw DomainError("eps out of [-1,1]");
    if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
        throw DomainError("non-finite spectral parameter");
    SpectralPoint sp;
    sp.lambda = lambda;
    sp.eps = eps;
    const double rho = fam.rho();
    sp.mu_eps_sq = lambda * lambda + (eps * eps - 1.0) * rho * rho;
    sp.reg_factor = cplx(0.0, 1.0) * lambda + eps * rho;
    return sp;
}

void RadialEigen::rhs(const State& y, State& dy, double x) const {
    const double l = fam_->log_derivative(x);
    const cplx phi = get(y, 0), dphi = get(y, 1), q = get(y, 2);
    put(dy, 0, dphi);
    put(dy, 1, -l * dphi - nu_ * phi);
    put(dy, 2, phi - l * q);
}

EigenValue RadialEigen::series_eval(double ax) const {
    const double y = ax * ax;
    cplx phi = 0.0, dsum = 0.0, q = 0.0;
    for (std::size_t k = a_.size(); k-- > 0;) {
        phi = phi * y + a_[k];
        if (k > 0) dsum = dsum * y + 2.0 * static_cast<double>(k) * a_[k];
        q = q * y + s_[k];
    }
    EigenValue v;
    v.phi = phi;
    v.dphi = ax * dsum;
    v.quotient = ax * q;
    return v;
}

EigenValue RadialEigen::eval(double x) const {
    if (!std::isfinite(x)) throw DomainError("non-finite abscissa");
    const double ax = std::abs(x);
    if (ax > radius_ * (1.0 + 1e-12) + 1e-14) {
        std::ostringstream msg;
        msg << "x=" << x << " outside the solved range [0," << radius_ << "]";
        throw DomainError(msg.str());
    }
    EigenValue v;
    if (ax <= x0_ || xs_.empty()) {
        v = series_eval(ax);
    } else {
        auto it = std::upper_bound(xs_.begin(), xs_.end(), ax);
        std::size_t i = static_cast<std::size_t>(it - xs_.begin());
        i = i == 0 ? 0 : i - 1;
        State y = ys_[i];
        const double gap = ax - xs_[i];
        if (i + 1 < xs_.size() && xs_[i + 1] - ax <= 1e-13 * (1.0 + ax)) {
            y = ys_[i + 1];
        } else if (gap > 1e-13 * (1.0 + ax)) {
            Stepper stepper;
            auto sys = [this](const State& s, State& d, double t) { rhs(s, d, t); };
            stepper.do_step(sys, y, xs_[i], gap);
        }
        v.phi = get(y, 0);
        v.dphi = get(y, 1);
        v.quotient = get(y, 2);
    }
    v.integral = v.quotient * fam_->weight(ax);
    if (x < 0.0) {
        v.dphi = -v.dphi;
        v.quotient = -v.quotient;
    }
    return v;
}

RadialEigen solve_phi(const ChebliFamily& fam, cplx mu_sq, double radius, const SolveOptions& opts) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("solve radius must be positive");
    if (!(opts.tol > 0.0)) throw DomainError("tolerance must be positive");
    RadialEigen re;
    re.fam_ = &fam;
    re.mu_sq_ = mu_sq;
    const double rho = fam.rho();
    re.nu_ = mu_sq + rho * rho;
    re.radius_ = radius;
    const double alpha = fam.alpha();
    const double anu = std::abs(re.nu_);
    double x0 = std::min({0.5, radius / 10.0, 0.5 * fam.series_radius()});
    if (anu > 0.0) x0 = std::min(x0, 2.0 / std::sqrt(anu));
    if (radius <= x0) x0 = radius;
    re.x0_ = x0;

    // Frobenius coefficients in y = x^2
    const auto& c = fam.c_taylor();
    const double y0 = x0 * x0;
    std::vector<cplx> a{1.0}, b{1.0}, l{0.0};
    std::vector<cplx> s{1.0 / (2.0 * alpha + 2.0)};
    bool converged = false;
    double tail = 0.0;
    auto cj = [&](std::size_t j) { return j < c.size() ? c[j] : 0.0; };
    auto small = [&](const std::vector<cplx>& v, std::size_t k) {
        const double t1 = std::abs(v[k]) * std::pow(y0, static_cast<double>(k));
        const double t0 = std::abs(v[k - 1]) * std::pow(y0, static_cast<double>(k - 1));
        return t1 < 0.1 * opts.tol && t0 < opts.tol;
    };
    for (std::size_t k = 1; k < kMaxSeriesTerms; ++k) {
        const double kd = static_cast<double>(k);
        cplx acc = -re.nu_ * a[k - 1];
        for (std::size_t m = 1; m < k; ++m) acc -= 2.0 * static_cast<double>(m) * cj(k - 1 - m) * a[m];
        a.push_back(acc / (4.0 * kd * (kd + alpha)));
        l.push_back(cj(k - 1) / (2.0 * kd));
        cplx bk = 0.0;
        for (std::size_t m = 1; m <= k; ++m) bk += static_cast<double>(m) * l[m] * b[k - m];
        b.push_back(bk / kd);
        // I/A = x (sum d_k y^k / (2k + 2 alpha + 2)) / B with d = phi B
        cplx dk = 0.0;
        for (std::size_t m = 0; m <= k; ++m) dk += a[m] * b[k - m];
        cplx p = dk / (2.0 * kd + 2.0 * alpha + 2.0);
        for (std::size_t m = 1; m <= k; ++m) p -= b[m] * s[k - m];
        s.push_back(p);
        if (k >= 3 && small(a, k) && small(s, k)) {
            tail = (std::abs(a[k]) + std::abs(s[k]) * x0) * std::pow(y0, kd);
            converged = true;
            break;
        }
    }
    if (!converged) {
        std::ostringstream msg;
        msg << "Frobenius series did not converge at switch radius " << x0 << " (|nu|=" << anu << ")";
        throw ConfigError(msg.str());
    }
    re.a_ = std::move(a);
    re.s_ = std::move(s);
    re.est_error_ = tail;
    if (radius <= x0) return re;

    // adaptive integration on [x0, radius]
    State y{};
    {
        EigenValue v = re.series_eval(x0);
        put(y, 0, v.phi);
        put(y, 1, v.dphi);
        put(y, 2, v.quotient);
    }
    re.xs_.push_back(x0);
    re.ys_.push_back(y);
    Stepper stepper;
    auto sys = [&re](const State& st, State& dst, double t) { re.rhs(st, dst, t); };
    const double span = std::max(1.0, radius - x0);
    double x = x0;
    double dt = std::min(0.05, 0.5 / std::sqrt(anu + 1.0));
    const double g = opts.grid_step;
    while (x < radius) {
        double stop = radius;
        if (g > 0.0) {
            const double k = std::floor(x / g * (1.0 + 1e-12) + 1e-9) + 1.0;
            stop = std::min(radius, k * g);
        }
        const double room = stop - x;
        const bool landing = dt >= room;
        const double step = landing ? room : dt;
        State trial = y, err{};
        stepper.do_step(sys, trial, x, step, err);
        double e = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double mag = std::abs(get(trial, k));
            e = std::max(e, std::abs(get(err, k)) / (1.0 + mag));
        }
        if (!std::isfinite(e)) e = std::numeric_limits<double>::infinity();
        const double allowed = opts.tol * step / span;
        const double factor =
            e > 0.0 ? std::clamp(0.9 * std::pow(allowed / e, 1.0 / 8.0), 0.2, 4.0) : 4.0;
        if (e <= allowed) {
            x = landing ? stop : x + step;
            y = trial;
            re.xs_.push_back(x);
            re.ys_.push_back(y);
            re.est_error_ += e;
            const double proposal = step * factor;
            dt = landing ? std::max(dt, proposal) : proposal;
        } else {
            dt = step * factor;
            if (dt < 1e-12 * (1.0 + x)) {
                std::ostringstream msg;
                msg << "step size underflow at x=" << x << " achieving local error " << e;
                throw AccuracyError(msg.str(), e);
            }
        }
    }
    return re;
}

cplx phi_prime_via_integral(const RadialEigen& re, double x) {
    if (x == 0.0) return 0.0;
    return -re.nu() * re.eval(x).quotient;
}

PsiEvaluator::PsiEvaluator(const ChebliFamily& fam, const SpectralPoint& sp, double radius,
                           const SolveOptions& opts)
    : sp_(sp), re_(solve_phi(fam, sp.mu_eps_sq, radius, opts)) {}

cplx PsiEvaluator::operator()(double x) const {
    const EigenValue v = re_.eval(x);
    return v.phi + sp_.reg_factor * v.quotient;
}

std::vector<cplx> PsiEvaluator::on_grid(double radius, double step) const {
    const std::size_t n = grid_half(radius, step);
    std::vector<cplx> out(2 * n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double x = static_cast<double>(i) * step;
        const EigenValue v = re_.eval(x);
        out[n + i] = v.phi + sp_.reg_factor * v.quotient;
        out[n - i] = v.phi - sp_.reg_factor * v.quotient;
    }
    return out;
}

cplx psi(const ChebliFamily& fam, const SpectralPoint& sp, double x, double tol) {
    if (x == 0.0) return 1.0;
    PsiEvaluator ev(fam, sp, std::abs(x), SolveOptions{tol, 0.0});
    return ev(x);
}

std::vector<cplx> derivative4(const std::vector<cplx>& f, double h) {
    const std::size_t n = f.size();
    if (n < 5) throw ConfigError("derivative needs at least five samples");
    std::vector<cplx> d(n);
    const double c = 1.0 / (12.0 * h);
    for (std::size_t i = 2; i + 2 < n; ++i) d[i] = c * (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]);
    d[0] = c * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
    d[1] = c * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
    const std::size_t m = n - 1;
    d[m] = -c * (-25.0 * f[m] + 48.0 * f[m - 1] - 36.0 * f[m - 2] + 16.0 * f[m - 3] - 3.0 * f[m - 4]);
    d[m - 1] = -c * (-3.0 * f[m] - 10.0 * f[m - 1] + 18.0 * f[m - 2] - 6.0 * f[m - 3] + f[m - 4]);
    return d;
}

SampledFunction apply_lambda_op(const ChebliFamily& fam, double eps, const SampledFunction& f) {
    if (!(std::abs(eps) <= 1.0)) throw DomainError("eps out of [-1,1]");
    if (f.step() > f.radius() / 16.0) throw ConfigError("grid too coarse: step must be at most radius/16");
    const double h = f.step();
    const auto d = derivative4(f.values(), h);
    const double er = eps * fam.rho();
    SampledFunction out = f;
    const std::size_t mid = f.half();
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double x = f.x(i);
        const cplx refl = f.reflected(i);
        cplx term;
        if (i == mid) {
            term = (2.0 * fam.alpha() + 1.0) * d[i];
        } else {
            term = fam.log_derivative(x) * 0.5 * (f[i] - refl);
        }
        out[i] = d[i] + term - er * refl;
    }
    return out;
}

GrowthReport verify_growth(const ChebliFamily& fam, double eps, const std::vector<double>& lambda_grid,
                           const std::vector<double>& b_grid, double radius, double step, double tol) {
    GrowthReport rep;
    const SolveOptions opts{1e-11, step};
    const std::size_t n = grid_half(radius, step);
    auto grid_x = [&](std::size_t i) { return (static_cast<double>(i) - static_cast<double>(n)) * step; };

    const std::vector<cplx> zero =
        PsiEvaluator(fam, SpectralPoint::make(fam, 0.0, eps), radius, opts).on_grid(radius, step);

    rep.real_bound.bound = std::sqrt(2.0) + tol;
    for (double lam : lambda_grid) {
        auto v = PsiEvaluator(fam, SpectralPoint::make(fam, lam, eps), radius, opts).on_grid(radius, step);
        for (const auto& z : v) rep.real_bound.observed = std::max(rep.real_bound.observed, std::abs(z));
    }
    rep.real_bound.ok = rep.real_bound.observed <= rep.real_bound.bound;

    rep.imaginary_positive.observed = std::numeric_limits<double>::infinity();
    rep.imaginary_positive.bound = 0.0;
    rep.imaginary_real.bound = tol;
    rep.exp_type.bound = 1.0 + tol;
    rep.strip_domination.bound = 1.0 + tol;
    for (double b : b_grid) {
        auto vb = PsiEvaluator(fam, SpectralPoint::make(fam, cplx(0.0, b), eps), radius, opts)
                      .on_grid(radius, step);
        for (std::size_t i = 0; i < vb.size(); ++i) {
            const double x = grid_x(i);
            rep.imaginary_real.observed = std::max(rep.imaginary_real.observed, std::abs(vb[i].imag()));
            rep.imaginary_positive.observed = std::min(rep.imaginary_positive.observed, vb[i].real());
            const double env = zero[i].real() * std::exp(std::abs(b) * std::abs(x));
            rep.exp_type.observed = std::max(rep.exp_type.observed, vb[i].real() / env);
        }
        for (double a : lambda_grid) {
            if (a == 0.0) continue;
            auto va = PsiEvaluator(fam, SpectralPoint::make(fam, cplx(a, b), eps), radius, opts)
                          .on_grid(radius, step);
            for (std::size_t i = 0; i < va.size(); ++i)
                rep.strip_domination.observed =
                    std::max(rep.strip_domination.observed, std::abs(va[i]) / vb[i].real());
        }
    }
    rep.imaginary_real.ok = rep.imaginary_real.observed <= rep.imaginary_real.bound;
    rep.imaginary_positive.ok = rep.imaginary_positive.observed > 0.0;
    rep.exp_type.ok = rep.exp_type.observed <= rep.exp_type.bound;
    rep.strip_domination.ok = rep.strip_domination.observed <= rep.strip_domination.bound;

    const double decay = fam.rho() * (1.0 - std::sqrt(std::max(0.0, 1.0 - eps * eps)));
    for (std::size_t i = 0; i < zero.size(); ++i) {
        const double x = std::abs(grid_x(i));
        rep.c_fit = std::max(rep.c_fit, zero[i].real() / ((x + 1.0) * std::exp(-decay * x)));
    }
    rep.zero_envelope.observed = rep.c_fit;
    rep.zero_envelope.bound = std::numeric_limits<double>::infinity();
    rep.zero_envelope.ok = std::isfinite(rep.c_fit) && rep.c_fit > 0.0;
    return rep;
}

}  // namespace reflectra::eigen
