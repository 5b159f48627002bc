#include "reflectra/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "reflectra/eigen.hpp"
#include "reflectra/errors.hpp"
#include "reflectra/intertwine.hpp"
#include "reflectra/numeric.hpp"

namespace reflectra::fourier {

namespace {

constexpr cplx I1{0.0, 1.0};

double log_sinh(double x) {
    return x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0);
}

// log of |Gamma((i mu + rho)/2) Gamma((i mu + alpha - beta + 1)/2)|^2 / Gamma(alpha + 1)^2
double jacobi_gamma_part(const ChebliFamily& fam, double mu) {
    const double a = fam.alpha(), b = fam.beta(), rho = fam.rho();
    const cplx g1 = numeric::lgamma(cplx(0.5 * rho, 0.5 * mu));
    const cplx g2 = numeric::lgamma(cplx(0.5 * (a - b + 1.0), 0.5 * mu));
    return 2.0 * (g1.real() + g2.real()) - 2.0 * std::lgamma(a + 1.0);
}

bool integer_like(double v) { return std::abs(v - std::round(v)) < 1e-12; }

// Values of phi and sg(x) I/A on the non-negative half of the grid.
struct HalfTable {
    std::vector<cplx> phi, quotient;
};

HalfTable half_table(const ChebliFamily& fam, cplx mu_sq, double radius, double step, double tol) {
    const std::size_t n = grid_half(radius, step);
    auto re = eigen::solve_phi(fam, mu_sq, radius, eigen::SolveOptions{tol, step});
    HalfTable t;
    t.phi.resize(n + 1);
    t.quotient.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        auto v = re.eval(static_cast<double>(i) * step);
        t.phi[i] = v.phi;
        t.quotient[i] = v.quotient;
    }
    return t;
}

// Psi(lambda, x_j) on the full grid from the half table.
void psi_from_half(const HalfTable& t, cplx factor, std::vector<cplx>& out) {
    const std::size_t n = t.phi.size() - 1;
    out.resize(2 * n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        out[n + i] = t.phi[i] + factor * t.quotient[i];
        out[n - i] = t.phi[i] - factor * t.quotient[i];
    }
}

double tail_bound(const SampledFunction& f, const std::vector<double>& a, const std::vector<cplx>& psi) {
    const std::size_t last = f.size() - 1;
    const double lo = std::abs(f[0]) * a[0] * std::abs(psi[last]);
    const double hi = std::abs(f[last]) * a[last] * std::abs(psi[0]);
    return std::max(lo, hi);
}

std::vector<double> weights_on(const ChebliFamily& fam, const SampledFunction& f) {
    std::vector<double> a(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) a[i] = fam.weight(f.x(i));
    return a;
}

void check_eps(double eps) {
    if (!(std::abs(eps) <= 1.0)) throw DomainError("eps out of [-1,1]");
}

void check_grid(const SampledFunction& f, const QuadratureParams& q) {
    if (std::abs(f.step() - q.step) > 1e-12 * q.step || std::abs(f.radius() - q.radius) > 1e-9 * q.radius) {
        std::ostringstream msg;
        msg << "input grid (R=" << f.radius() << ", h=" << f.step() << ") does not match the quadrature grid (R="
            << q.radius << ", h=" << q.step << ")";
        throw ConfigError(msg.str());
    }
}

// Block-wise accumulation keeps the summation order independent of threading.
constexpr std::size_t kBlock = 32;

}  // namespace

double default_bump(double x) { return numeric::bump(x - 0.5, 2.5, 8.0); }

double c_density(const ChebliFamily& fam, double mu) {
    if (!(mu >= 0.0)) throw DomainError("c_density requires mu >= 0");
    switch (fam.kind()) {
        case chebli::Kind::Dunkl:
            return dunkl_constant(fam.alpha()) * std::pow(mu, 2.0 * fam.alpha() + 1.0);
        case chebli::Kind::Jacobi:
            if (mu == 0.0) return 0.0;
            return std::exp(jacobi_gamma_part(fam, mu) + std::log(mu) + log_sinh(M_PI * mu) -
                            std::log(2.0 * M_PI * M_PI));
        case chebli::Kind::Table:
            break;
    }
    throw UnsupportedFamilyError("no c-function available for tabulated weights");
}

double c_density_over_mu(const ChebliFamily& fam, double mu) {
    if (!(mu >= 0.0)) throw DomainError("c_density requires mu >= 0");
    switch (fam.kind()) {
        case chebli::Kind::Dunkl:
            return dunkl_constant(fam.alpha()) * std::pow(mu, 2.0 * fam.alpha());
        case chebli::Kind::Jacobi:
            if (mu == 0.0) return 0.0;
            return std::exp(jacobi_gamma_part(fam, mu) + log_sinh(M_PI * mu) - std::log(2.0 * M_PI * M_PI));
        case chebli::Kind::Table:
            break;
    }
    throw UnsupportedFamilyError("no c-function available for tabulated weights");
}

Calibration calibrate_dunkl(double alpha, double width) {
    if (!(width > 0.0)) throw DomainError("calibration width must be positive");
    auto fam = ChebliFamily::dunkl(alpha);
    const double radius = 9.0 * width;
    const double step = width / 32.0;
    const double cutoff = 9.0 / width;
    auto f = SampledFunction::from_function(radius, step, [width](double x) {
        return cplx(std::exp(-x * x / (2.0 * width * width)));
    });
    auto a = weights_on(fam, f);
    std::vector<cplx> fa(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) fa[i] = f[i] * a[i];

    const double p = 2.0 * alpha + 1.0;
    auto rule = integer_like(p) ? numeric::gauss_panels_width(0.0, cutoff, 0.5 / width)
                                : intertwine::graded_rule(0.0, cutoff, 36, true, false, 16);
    std::vector<double> terms(rule.size());
    numeric::parallel_for(rule.size(), [&](std::size_t k) {
        const double t = rule.nodes[k];
        auto re = eigen::solve_phi(fam, cplx(t * t), radius, eigen::SolveOptions{1e-12, step});
        std::vector<cplx> g(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) g[i] = fa[i] * re.eval(f.x(i)).phi;
        const double F = numeric::simpson(g, step).real();
        terms[k] = rule.weights[k] * F * std::pow(t, p);
    }, numeric::default_threads());
    double integral = 0.0;
    for (double v : terms) integral += v;
    Calibration c;
    c.width = width;
    // f(0) = 1 = (1/4) * 2 * c * int_0^inf F(t) t^p dt
    c.constant = 2.0 / integral;
    c.tail = std::exp(-0.5 * cutoff * cutoff * width * width);
    return c;
}

double dunkl_constant(double alpha) {
    static std::mutex mutex;
    static std::map<double, double> cache;
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(alpha);
        if (it != cache.end()) return it->second;
    }
    const double c = calibrate_dunkl(alpha, 1.0).constant;
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(alpha, c);
    return c;
}

double jacobi_calibration_ratio(const ChebliFamily& fam) {
    if (fam.kind() != chebli::Kind::Jacobi) throw UnsupportedFamilyError("calibration ratio needs a Jacobi family");
    QuadratureParams q;
    q.radius = 4.0;
    auto f = SampledFunction::from_function(q.radius, q.step, [](double x) { return cplx(numeric::bump(x, 3.0, 8.0)); });
    auto rt = roundtrip(fam, 0.0, f, q);
    return 1.0 / rt.recovered_origin;
}

SpectralDensity::SpectralDensity(const ChebliFamily& fam, double eps, double scale)
    : fam_(&fam), eps_(eps), gap_(0.0), scale_(scale) {
    check_eps(eps);
    if (fam.kind() == chebli::Kind::Table) throw UnsupportedFamilyError("no c-function available for tabulated weights");
    gap_ = chebli::rho_eps(fam, eps);
}

double SpectralDensity::density(double lambda) const {
    const double al = std::abs(lambda);
    if (al < gap_ || al == 0.0) return 0.0;
    const double t = std::sqrt(std::max(0.0, lambda * lambda - gap_ * gap_));
    if (t == 0.0) return 0.0;
    return scale_ * al / t * c_density(*fam_, t);
}

cplx SpectralDensity::factor(double lambda) const {
    return 1.0 - eps_ * fam_->rho() / (I1 * lambda);
}

cplx SpectralDensity::measure_t(double t, int sign) const {
    const double s = sign < 0 ? -1.0 : 1.0;
    const double d = c_density(*fam_, t);
    const double rho = fam_->rho();
    if (gap_ == 0.0) {
        // lambda = s t; the factor's pole is cancelled by d(t) ~ t^2
        return scale_ * (d + I1 * s * eps_ * rho * c_density_over_mu(*fam_, t));
    }
    const double lambda = s * std::sqrt(gap_ * gap_ + t * t);
    return scale_ * d * (1.0 + I1 * eps_ * rho / lambda);
}

std::vector<SpectralNode> spectral_nodes(const SpectralDensity& d, double lmax, double panel_width) {
    if (!(lmax > d.gap())) throw ConfigError("lmax must exceed the spectral gap");
    const double tmax = std::sqrt(lmax * lmax - d.gap() * d.gap());
    const double p = 2.0 * d.family().alpha() + 1.0;
    numeric::QuadratureRule rule;
    if (d.gap() == 0.0 && d.family().rho() == 0.0 && !integer_like(p)) {
        const auto panels = static_cast<std::size_t>(std::ceil(tmax / panel_width));
        rule = intertwine::graded_rule(0.0, tmax, panels, true, false, 16);
    } else {
        rule = numeric::gauss_panels_width(0.0, tmax, panel_width);
    }
    std::vector<SpectralNode> nodes;
    nodes.reserve(2 * rule.size());
    for (int sign : {1, -1}) {
        for (std::size_t k = 0; k < rule.size(); ++k) {
            const double t = rule.nodes[k];
            const double lambda = sign * std::sqrt(d.gap() * d.gap() + t * t);
            nodes.push_back({lambda, t, sign, rule.weights[k]});
        }
    }
    return nodes;
}

TransformResult forward(const ChebliFamily& fam, double eps, const SampledFunction& f,
                        const std::vector<cplx>& lambdas, const QuadratureParams& q, double tail_tol) {
    check_eps(eps);
    check_grid(f, q);
    const bool compact = f[0] == 0.0 && f[f.size() - 1] == 0.0;
    const double strip = fam.rho() * (1.0 - std::sqrt(1.0 - eps * eps));
    for (cplx l : lambdas) {
        if (!compact && std::abs(l.imag()) > strip + 1e-14) {
            std::ostringstream msg;
            msg << "lambda=" << l << " outside the strip |Im lambda| <= " << strip;
            throw DomainError(msg.str());
        }
    }
    auto a = weights_on(fam, f);
    TransformResult r;
    r.lambdas = lambdas;
    r.values.resize(lambdas.size());
    r.truncation.resize(lambdas.size());
    r.radius = f.radius();
    r.step = f.step();
    numeric::parallel_for(lambdas.size(), [&](std::size_t k) {
        auto sp = eigen::SpectralPoint::make(fam, lambdas[k], eps);
        auto t = half_table(fam, sp.mu_eps_sq, f.radius(), f.step(), q.ode_tol);
        std::vector<cplx> psi;
        psi_from_half(t, sp.reg_factor, psi);
        const std::size_t m = f.size();
        std::vector<cplx> g(m);
        for (std::size_t i = 0; i < m; ++i) g[i] = f[i] * psi[m - 1 - i] * a[i];
        r.values[k] = numeric::simpson(g, f.step());
        r.truncation[k] = tail_bound(f, a, psi);
    }, numeric::default_threads());
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        if (r.truncation[k] > tail_tol * std::max(1.0, std::abs(r.values[k]))) {
            std::ostringstream msg;
            msg << "tail of f A Psi at R=" << f.radius() << " is " << r.truncation[k] << " for lambda="
                << lambdas[k];
            throw TruncationError(msg.str());
        }
    }
    return r;
}

TransformResult forward_nodes(const ChebliFamily& fam, double eps, const SampledFunction& f,
                              const SpectralDensity& d, const QuadratureParams& q) {
    auto nodes = spectral_nodes(d, q.lmax, q.panel_width);
    std::vector<cplx> lambdas(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) lambdas[k] = nodes[k].lambda;
    auto r = forward(fam, eps, f, lambdas, q);
    r.nodes = std::move(nodes);
    return r;
}

namespace {

struct NodeTables {
    std::vector<SpectralNode> nodes;  // positive sign only
    std::vector<cplx> measure_pos, measure_neg;
};

// Sums (1/4) w_k m_k F_k Psi(lambda_k, x) over nodes into out, blockwise.
void synthesize(std::size_t count, const std::function<void(std::size_t, std::vector<cplx>&)>& add,
                std::size_t grid_size, std::vector<cplx>& out) {
    const std::size_t blocks = (count + kBlock - 1) / kBlock;
    std::vector<std::vector<cplx>> partial(blocks, std::vector<cplx>(grid_size, 0.0));
    numeric::parallel_for(blocks, [&](std::size_t b) {
        const std::size_t end = std::min(count, (b + 1) * kBlock);
        for (std::size_t k = b * kBlock; k < end; ++k) add(k, partial[b]);
    }, numeric::default_threads());
    out.assign(grid_size, 0.0);
    for (const auto& p : partial)
        for (std::size_t i = 0; i < grid_size; ++i) out[i] += p[i];
}

}  // namespace

SampledFunction inverse(const ChebliFamily& fam, double eps, const TransformResult& F, const SpectralDensity& d,
                        const QuadratureParams& q, double truncation_tol) {
    check_eps(eps);
    if (F.nodes.empty() || F.nodes.size() != F.values.size())
        throw ConfigError("inverse needs a transform sampled on the spectral nodes");
    const std::size_t n = grid_half(q.radius, q.step);
    const std::size_t m = 2 * n + 1;

    // tail estimate from the outermost node of each sign
    double tail = 0.0, peak = 0.0;
    double tmax = 0.0;
    for (const auto& nd : F.nodes) tmax = std::max(tmax, nd.t);
    for (std::size_t k = 0; k < F.nodes.size(); ++k) {
        const double v = std::abs(F.values[k] * d.measure_t(F.nodes[k].t, F.nodes[k].sign));
        peak = std::max(peak, v);
        if (F.nodes[k].t >= tmax - 0.5) tail = std::max(tail, v);
    }
    if (tail > truncation_tol * std::max(1.0, peak)) {
        std::ostringstream msg;
        msg << "|F f| d at lmax=" << q.lmax << " is " << tail << ", above " << truncation_tol;
        throw TruncationError(msg.str());
    }

    std::vector<cplx> out;
    synthesize(F.nodes.size(), [&](std::size_t k, std::vector<cplx>& acc) {
        const auto& nd = F.nodes[k];
        auto sp = eigen::SpectralPoint::make(fam, nd.lambda, eps);
        auto t = half_table(fam, sp.mu_eps_sq, q.radius, q.step, q.ode_tol);
        std::vector<cplx> psi;
        psi_from_half(t, sp.reg_factor, psi);
        const cplx c = 0.25 * nd.weight * F.values[k] * d.measure_t(nd.t, nd.sign);
        for (std::size_t i = 0; i < m; ++i) acc[i] += c * psi[i];
    }, m, out);
    return SampledFunction(q.radius, q.step, std::move(out));
}

RoundTrip roundtrip(const ChebliFamily& fam, double eps, const SampledFunction& f, const QuadratureParams& q,
                    double density_scale) {
    check_eps(eps);
    check_grid(f, q);
    SpectralDensity d(fam, eps, density_scale);
    auto nodes = spectral_nodes(d, q.lmax, q.panel_width);
    const std::size_t half = nodes.size() / 2;  // nodes[k] and nodes[k + half] share t
    auto a = weights_on(fam, f);
    const std::size_t m = f.size();
    std::vector<cplx> fa(m);
    for (std::size_t i = 0; i < m; ++i) fa[i] = f[i] * a[i];

    std::vector<double> edge(half, 0.0);
    std::vector<cplx> out;
    synthesize(half, [&](std::size_t k, std::vector<cplx>& acc) {
        const double t = nodes[k].t;
        auto sp = eigen::SpectralPoint::make(fam, nodes[k].lambda, eps);
        auto tab = half_table(fam, sp.mu_eps_sq, f.radius(), f.step(), q.ode_tol);
        std::vector<cplx> psi, g(m);
        for (std::size_t s = 0; s < 2; ++s) {
            const auto& nd = nodes[k + s * half];
            auto spn = eigen::SpectralPoint::make(fam, nd.lambda, eps);
            psi_from_half(tab, spn.reg_factor, psi);
            for (std::size_t i = 0; i < m; ++i) g[i] = fa[i] * psi[m - 1 - i];
            const cplx F = numeric::simpson(g, f.step());
            const cplx c = 0.25 * nd.weight * F * d.measure_t(t, nd.sign);
            edge[k] = std::max(edge[k], std::abs(F * d.measure_t(t, nd.sign)));
            for (std::size_t i = 0; i < m; ++i) acc[i] += c * psi[i];
        }
    }, m, out);

    RoundTrip rt;
    rt.recovered = SampledFunction(f.radius(), f.step(), std::move(out));
    for (std::size_t i = 0; i < m; ++i) rt.sup_error = std::max(rt.sup_error, std::abs(rt.recovered[i] - f[i]));
    rt.recovered_origin = rt.recovered[f.half()].real();
    rt.tail_estimate = half ? edge[half - 1] : 0.0;
    rt.nodes = nodes.size();
    return rt;
}

PlancherelReport plancherel_check(const ChebliFamily& fam, double eps, const SampledFunction& f,
                                  const SampledFunction& g, const QuadratureParams& q, double density_scale) {
    check_eps(eps);
    check_grid(f, q);
    check_grid(g, q);
    SpectralDensity d(fam, eps, density_scale);
    auto nodes = spectral_nodes(d, q.lmax, q.panel_width);
    const std::size_t half = nodes.size() / 2;
    auto a = weights_on(fam, f);
    const std::size_t m = f.size();
    const double h = f.step();

    PlancherelReport rep;
    {
        std::vector<cplx> bil(m), l2(m);
        for (std::size_t i = 0; i < m; ++i) {
            bil[i] = f[i] * g.reflected(i) * a[i];
            l2[i] = std::norm(f[i]) * a[i];
        }
        rep.lhs = numeric::simpson(bil, h);
        rep.l2_lhs = numeric::simpson(l2, h).real();
    }

    std::vector<cplx> bil_terms(half), l2_terms(half);
    numeric::parallel_for(half, [&](std::size_t k) {
        auto sp = eigen::SpectralPoint::make(fam, nodes[k].lambda, eps);
        auto tab = half_table(fam, sp.mu_eps_sq, f.radius(), h, q.ode_tol);
        // Psi at +lambda and -lambda
        std::vector<cplx> pp, pm;
        psi_from_half(tab, sp.reg_factor, pp);
        auto spm = eigen::SpectralPoint::make(fam, nodes[k + half].lambda, eps);
        psi_from_half(tab, spm.reg_factor, pm);
        std::vector<cplx> w(m);
        auto integrate = [&](const SampledFunction& u, const std::vector<cplx>& psi, bool reflect_psi) {
            for (std::size_t i = 0; i < m; ++i) w[i] = u[i] * a[i] * (reflect_psi ? psi[m - 1 - i] : psi[i]);
            return numeric::simpson(w, h);
        };
        // F u(lambda) = int u(x) Psi(lambda, -x) A dx;  F u-check(-lambda) = int u(x) Psi(-lambda, x) A dx
        const cplx ff_p = integrate(f, pp, true), ff_m = integrate(f, pm, true);
        const cplx fg_p = integrate(g, pp, true), fg_m = integrate(g, pm, true);
        const cplx fcheck_at_minus_p = integrate(f, pm, false);  // F f-check(-lambda_+)
        const cplx fcheck_at_minus_m = integrate(f, pp, false);  // F f-check(-lambda_-)
        const double t = nodes[k].t;
        const cplx mp = d.measure_t(t, 1), mm = d.measure_t(t, -1);
        const double wk = 0.25 * nodes[k].weight;
        bil_terms[k] = wk * (ff_p * fg_p * mp + ff_m * fg_m * mm);
        l2_terms[k] = wk * (ff_p * std::conj(fcheck_at_minus_p) * mp + ff_m * std::conj(fcheck_at_minus_m) * mm);
    }, numeric::default_threads());
    rep.rhs = 0.0;
    rep.l2_rhs = 0.0;
    for (std::size_t k = 0; k < half; ++k) {
        rep.rhs += bil_terms[k];
        rep.l2_rhs += l2_terms[k];
    }
    rep.relative = std::abs(rep.lhs - rep.rhs) / std::max(std::abs(rep.lhs), 1e-300);
    rep.l2_relative = std::abs(rep.l2_lhs - rep.l2_rhs) / std::max(rep.l2_lhs, 1e-300);
    return rep;
}

PaleyWienerReport paley_wiener_check(const ChebliFamily& fam, double eps, const SampledFunction& f, double support,
                                     const std::vector<double>& eta_grid, const std::vector<double>& t_list,
                                     double lmax) {
    check_eps(eps);
    if (eta_grid.size() < 5) throw ConfigError("Paley-Wiener fit needs at least five eta values");
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (std::abs(f.x(i)) > support * (1.0 + 1e-12) && f[i] != 0.0)
            throw SupportError("input is not supported in [-a, a]");
    }
    QuadratureParams q;
    q.radius = f.radius();
    q.step = f.step();
    PaleyWienerReport rep;
    rep.eta = eta_grid;
    rep.t_list = t_list;

    std::vector<cplx> imag;
    for (double e : eta_grid) imag.emplace_back(0.0, e);
    auto fi = forward(fam, eps, f, imag, q);
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    for (std::size_t k = 0; k < eta_grid.size(); ++k) {
        const double e = eta_grid[k];
        rep.log_abs.push_back(std::log(std::abs(fi.values[k])));
        rows.push_back({e, 1.0, std::sqrt(e), std::log(e), 1.0 / std::sqrt(e)});
        rhs.push_back(rep.log_abs.back());
    }
    rep.r_fit = numeric::least_squares(rows, rhs)[0];

    std::vector<cplx> real;
    for (double l = 0.0; l <= lmax + 1e-12; l += 0.25) real.emplace_back(l, 0.0);
    auto fr = forward(fam, eps, f, real, q);
    double lo = 0.0, hi = 0.0, head = 0.0, tail = 0.0;
    for (std::size_t k = 0; k < real.size(); ++k) {
        const double l = real[k].real();
        const double v = std::abs(fr.values[k]);
        rep.real_lambda.push_back(l);
        rep.real_abs.push_back(v);
        const double w = std::pow(l + 1.0, 3.0) * v;
        if (l <= 0.5 * lmax) lo = std::max(lo, w); else hi = std::max(hi, w);
        if (l <= 10.0) head = std::max(head, v);
        if (l >= 30.0 && l <= 40.0) tail = std::max(tail, v);
    }
    rep.decay_ratio = hi / lo;
    rep.rl_ratio = tail / head;

    // sampled complex plane: xi in [0, lmax] by 5, eta in {0} + eta_grid
    std::vector<cplx> plane;
    for (double xi = 0.0; xi <= lmax + 1e-12; xi += 5.0) {
        plane.emplace_back(xi, 0.0);
        for (double e : eta_grid) plane.emplace_back(xi, e);
    }
    auto fp = forward(fam, eps, f, plane, q);
    for (double t : t_list) {
        double s = 0.0;
        for (std::size_t k = 0; k < plane.size(); ++k) {
            const cplx l = plane[k];
            s = std::max(s, std::pow(std::abs(l) + 1.0, t) * std::exp(-support * std::abs(l.imag())) *
                                std::abs(fp.values[k]));
        }
        rep.weighted_sup.push_back(s);
    }
    return rep;
}

double schwartz_seminorm(const ChebliFamily& fam, double eps, double p, const SampledFunction& f, double s, int k) {
    check_eps(eps);
    const double pmax = 2.0 / (1.0 + std::sqrt(1.0 - eps * eps));
    if (!(p > 0.0) || p > pmax * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "p=" << p << " outside (0, " << pmax << "]";
        throw DomainError(msg.str());
    }
    if (k < 0 || k > 4) throw DomainError("derivative order must be in [0, 4]");
    std::vector<cplx> d = f.values();
    for (int j = 0; j < k; ++j) d = eigen::derivative4(d, f.step());
    auto tab = half_table(fam, cplx(0.0), f.radius(), f.step(), 1e-11);
    const std::size_t n = f.half();
    double sup = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double x = f.x(i);
        const std::size_t j = i >= n ? i - n : n - i;
        const double phi0 = tab.phi[j].real();
        sup = std::max(sup, std::pow(std::abs(x) + 1.0, s) * std::pow(phi0, -2.0 / p) * std::abs(d[i]));
    }
    return sup;
}

}  // namespace reflectra::fourier
