#include "reflectra/heat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "reflectra/errors.hpp"
#include "reflectra/numeric.hpp"
#include "reflectra/sampled.hpp"

namespace reflectra::heat {

double euclidean_kernel(double s, double u) {
    return std::exp(-u * u / (4.0 * s)) / (2.0 * std::sqrt(M_PI * s));
}

std::vector<double> uniform_grid(double m, double step) {
    const std::size_t n = grid_half(m, step);
    std::vector<double> g(2 * n + 1);
    for (std::size_t i = 0; i < g.size(); ++i)
        g[i] = (static_cast<double>(i) - static_cast<double>(n)) * step;
    return g;
}

HeatEval::HeatEval(const ChebliFamily& fam, double eps, double s, double xmax, double step, const HeatOptions& opts)
    : fam_(std::make_shared<const ChebliFamily>(fam)), eps_(eps), s_(s), xmax_(xmax), step_(step), opts_(opts) {
    if (!(std::abs(eps) <= 1.0)) throw DomainError("eps out of [-1,1]");
    if (!(s > 0.0)) throw DomainError("heat time s must be positive");
    if (!(opts.tol > 0.0 && opts.tol < 1.0)) throw ConfigError("heat tolerance must lie in (0, 1)");
    half_ = grid_half(xmax, step);
    lmax_ = opts.lmax > 0.0 ? opts.lmax : std::sqrt(std::log(1.0 / opts.tol) / s) + 5.0;

    auto rule = numeric::gauss_panels_width(0.0, lmax_, opts.panel_width);
    lambdas_ = rule.nodes;
    weights_ = rule.weights;
    const std::size_t n = lambdas_.size();
    radial_.resize(n);
    phi_.assign(n, std::vector<double>(half_ + 1));
    quot_.assign(n, std::vector<double>(half_ + 1));
    numeric::parallel_for(n, [&](std::size_t k) {
        auto sp = eigen::SpectralPoint::make(*fam_, lambdas_[k], eps_);
        radial_[k] = eigen::solve_phi(*fam_, sp.mu_eps_sq, xmax_, eigen::SolveOptions{opts_.ode_tol, step_});
        for (std::size_t j = 0; j <= half_; ++j) {
            auto v = radial_[k].eval(static_cast<double>(j) * step_);
            phi_[k][j] = v.phi.real();
            quot_[k][j] = v.quotient.real();
        }
    }, numeric::default_threads());
}

double HeatEval::truncation_bound() const {
    return std::exp(-s_ * lmax_ * lmax_) * (1.0 + lmax_) / (2.0 * M_PI * s_ * lmax_);
}

void HeatEval::radial_at(double x, std::vector<double>& phi, std::vector<double>& q) const {
    const std::size_t n = lambdas_.size();
    phi.resize(n);
    q.resize(n);
    const double ax = std::abs(x);
    const double r = ax / step_;
    const double sign = x < 0.0 ? -1.0 : 1.0;
    if (std::abs(r - std::round(r)) < 1e-9 && std::round(r) <= static_cast<double>(half_)) {
        const auto j = static_cast<std::size_t>(std::round(r));
        for (std::size_t k = 0; k < n; ++k) {
            phi[k] = phi_[k][j];
            q[k] = sign * quot_[k][j];
        }
        return;
    }
    for (std::size_t k = 0; k < n; ++k) {
        auto v = radial_[k].eval(x);
        phi[k] = v.phi.real();
        q[k] = v.quotient.real();
    }
}

cplx HeatEval::w_complex(double u, double x) const {
    std::vector<double> phi, q;
    radial_at(x, phi, q);
    const double er = eps_ * fam_->rho();
    cplx sum = 0.0;
    for (std::size_t k = 0; k < lambdas_.size(); ++k) {
        const double l = lambdas_[k];
        const double g = weights_[k] * std::exp(-s_ * l * l);
        const cplx e = std::polar(1.0, l * u);
        // Psi(-l, x) e^{i l u} and Psi(l, x) e^{-i l u}
        const cplx neg = (phi[k] + cplx(er, -l) * q[k]) * e;
        const cplx pos = (phi[k] + cplx(er, l) * q[k]) * std::conj(e);
        sum += g * (neg + pos);
    }
    return sum / (2.0 * M_PI);
}

double HeatEval::w(double u, double x) const {
    const cplx v = w_complex(u, x);
    if (std::abs(v.imag()) > 100.0 * opts_.tol) {
        std::ostringstream msg;
        msg << "imaginary residue " << v.imag() << " at u=" << u << ", x=" << x;
        throw ConsistencyError(msg.str());
    }
    return v.real();
}

PositivityReport positivity_scan(const HeatEval& he, const std::vector<double>& u_grid,
                                 const std::vector<double>& x_grid) {
    const std::size_t nu = u_grid.size(), nx = x_grid.size();
    std::vector<double> vals(nu * nx);
    numeric::parallel_for(nx, [&](std::size_t j) {
        for (std::size_t i = 0; i < nu; ++i) vals[j * nu + i] = he.w(u_grid[i], x_grid[j]);
    }, numeric::default_threads());
    PositivityReport r;
    r.threshold = -10.0 * he.tol();
    r.min_value = vals.empty() ? 0.0 : vals[0];
    r.max_value = r.min_value;
    for (std::size_t j = 0; j < nx; ++j) {
        for (std::size_t i = 0; i < nu; ++i) {
            const double v = vals[j * nu + i];
            if (v < r.min_value) {
                r.min_value = v;
                r.min_u = u_grid[i];
                r.min_x = x_grid[j];
            }
            r.max_value = std::max(r.max_value, v);
        }
    }
    r.pass = r.min_value >= r.threshold;
    return r;
}

EvenBoundReport even_bound_check(const HeatEval& he, const std::vector<double>& u_grid,
                                 const std::vector<double>& x_grid) {
    const auto& fam = he.family();
    const double rho = fam.rho();
    double xr = 0.0;
    for (double x : x_grid) xr = std::max(xr, std::abs(x));
    // phi_mu with mu = i sqrt(1 - eps^2) rho
    const double mu_sq = -(1.0 - he.eps() * he.eps()) * rho * rho;
    auto re = eigen::solve_phi(fam, cplx(mu_sq), std::max(xr, 1e-3), 1e-11);
    EvenBoundReport r;
    r.worst_margin = std::numeric_limits<double>::infinity();
    std::vector<double> margins(x_grid.size() * u_grid.size());
    numeric::parallel_for(x_grid.size(), [&](std::size_t j) {
        const double x = x_grid[j];
        const double phi = re.phi(x).real();
        for (std::size_t i = 0; i < u_grid.size(); ++i) {
            const double u = u_grid[i];
            const double even = 0.5 * (he.w(u, x) + he.w(u, -x));
            const double a = std::abs(u) + std::abs(x);
            const double bound = std::exp(-a * a / (4.0 * he.s())) / (2.0 * std::sqrt(M_PI * he.s())) * phi;
            margins[j * u_grid.size() + i] = even - bound;
        }
    }, numeric::default_threads());
    for (std::size_t j = 0; j < x_grid.size(); ++j) {
        for (std::size_t i = 0; i < u_grid.size(); ++i) {
            const double m = margins[j * u_grid.size() + i];
            if (m < r.worst_margin) {
                r.worst_margin = m;
                r.at_u = u_grid[i];
                r.at_x = x_grid[j];
            }
        }
    }
    r.pass = r.worst_margin >= -he.tol();
    return r;
}

DecayReport decay_check(const HeatEval& he, double m, double step) {
    auto g = uniform_grid(m, step);
    const std::size_t n = g.size();
    std::vector<double> vals(n * n);
    numeric::parallel_for(n, [&](std::size_t j) {
        for (std::size_t i = 0; i < n; ++i) vals[j * n + i] = std::abs(he.w(g[i], g[j]));
    }, numeric::default_threads());
    DecayReport r;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const bool ring = i == 0 || j == 0 || i + 1 == n || j + 1 == n;
            double& slot = ring ? r.ring_max : r.interior_max;
            slot = std::max(slot, vals[j * n + i]);
        }
    }
    return r;
}

TransportReport transport_check(const HeatEval& he, double umax, double step) {
    auto ug = uniform_grid(umax, step);
    auto xg = uniform_grid(he.xmax(), step);
    const std::size_t nu = ug.size(), nx = xg.size();
    // rows indexed by u, columns by x
    std::vector<std::vector<cplx>> w(nu, std::vector<cplx>(nx));
    numeric::parallel_for(nu, [&](std::size_t i) {
        for (std::size_t j = 0; j < nx; ++j) w[i][j] = he.w(ug[i], xg[j]);
    }, numeric::default_threads());
    TransportReport r;
    std::vector<std::vector<cplx>> lam(nu);
    for (std::size_t i = 0; i < nu; ++i) {
        SampledFunction f(he.xmax(), step, w[i]);
        lam[i] = eigen::apply_lambda_op(he.family(), he.eps(), f).values();
        for (const auto& v : w[i]) r.scale = std::max(r.scale, std::abs(v));
    }
    std::vector<cplx> col(nu);
    for (std::size_t j = 0; j < nx; ++j) {
        for (std::size_t i = 0; i < nu; ++i) col[i] = w[i][j];
        auto du = eigen::derivative4(col, step);
        for (std::size_t i = 2; i + 2 < nu; ++i) r.residual = std::max(r.residual, std::abs(lam[i][j] + du[i]));
    }
    return r;
}

SemigroupReport semigroup_check(const ChebliFamily& fam, double eps, double s, const std::vector<double>& u_grid,
                                const std::vector<double>& x_grid, const HeatOptions& opts) {
    double xr = 0.0;
    for (double x : x_grid) xr = std::max(xr, std::abs(x));
    const double step = 1.0 / 32.0;
    xr = std::max(step, std::ceil(xr / step) * step);
    HeatEval once(fam, eps, s, xr, step, opts);
    HeatEval twice(fam, eps, 2.0 * s, xr, step, opts);
    // p_s(v) is below 1e-16 of its peak beyond |v| = 2 sqrt(s ln 1e16)
    const double vmax = std::ceil(2.0 * std::sqrt(s * std::log(1e16)) / step) * step;
    auto vg = uniform_grid(vmax, step);
    std::vector<double> p(vg.size());
    for (std::size_t k = 0; k < vg.size(); ++k) p[k] = euclidean_kernel(s, vg[k]);
    SemigroupReport r;
    std::vector<double> diffs(x_grid.size(), 0.0);
    numeric::parallel_for(x_grid.size(), [&](std::size_t j) {
        const double x = x_grid[j];
        std::vector<double> g(vg.size());
        for (double u : u_grid) {
            for (std::size_t k = 0; k < vg.size(); ++k) g[k] = once.w(u - vg[k], x) * p[k];
            const double conv = numeric::simpson(g, step);
            diffs[j] = std::max(diffs[j], std::abs(conv - twice.w(u, x)));
        }
    }, numeric::default_threads());
    for (double d : diffs) r.max_diff = std::max(r.max_diff, d);
    return r;
}

}  // namespace reflectra::heat
