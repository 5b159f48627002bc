#include "reflectra/chebli.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include <boost/math/special_functions/zeta.hpp>

#include "reflectra/errors.hpp"
#include "reflectra/numeric.hpp"

namespace reflectra::chebli {

namespace {

constexpr int kTaylorTerms = 60;

void require_finite(double x) {
    if (!std::isfinite(x)) throw DomainError("non-finite abscissa");
}

// coth x - 1/x, odd
double coth_minus_inv(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-2) {
        const double x2 = x * x;
        return x * (1.0 / 3.0 + x2 * (-1.0 / 45.0 + x2 * (2.0 / 945.0 - x2 / 4725.0)));
    }
    return 1.0 / std::tanh(x) - 1.0 / x;
}

// log of sinh(x)/x for x >= 0
double log_sinhc(double x) {
    if (x < 1e-4) return x * x / 6.0;
    if (x > 20.0) return x - std::log(2.0 * x);
    return std::log(std::sinh(x) / x);
}

double log_cosh(double x) {
    const double ax = std::abs(x);
    return ax + std::log1p(std::exp(-2.0 * ax)) - std::log(2.0);
}

}  // namespace

ChebliFamily ChebliFamily::dunkl(double alpha) {
    if (!(alpha > -0.5) || !std::isfinite(alpha))
        throw ConfigError("dunkl family requires alpha > -1/2");
    ChebliFamily f;
    f.kind_ = Kind::Dunkl;
    f.alpha_ = alpha;
    f.rho_ = 0.0;
    f.c_taylor_.assign(kTaylorTerms, 0.0);
    return f;
}

ChebliFamily ChebliFamily::jacobi(double alpha, double beta) {
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !(alpha >= beta) || !(beta >= -0.5) ||
        alpha == -0.5)
        throw ConfigError("jacobi family requires alpha >= beta >= -1/2 and alpha != -1/2");
    ChebliFamily f;
    f.kind_ = Kind::Jacobi;
    f.alpha_ = alpha;
    f.beta_ = beta;
    f.rho_ = alpha + beta + 1.0;
    f.series_radius_ = M_PI / 2.0;  // poles of tanh at +-i pi/2
    f.c_taylor_.resize(kTaylorTerms);
    for (int j = 0; j < kTaylorTerms; ++j) {
        const int n = j + 1;
        const double sign = (n % 2 == 1) ? 1.0 : -1.0;
        const double z = 2.0 * boost::math::zeta(2.0 * n);
        const double inv = std::pow(M_PI, -2.0 * n);
        const double quarter = std::pow(4.0 / (M_PI * M_PI), n);
        f.c_taylor_[j] = sign * z * ((2.0 * alpha + 1.0) * inv + (2.0 * beta + 1.0) * (quarter - inv));
    }
    return f;
}

ChebliFamily ChebliFamily::table(std::vector<double> x, std::vector<double> b,
                                 std::vector<double> bprime, double alpha, double rho) {
    if (!(alpha > -0.5)) throw ConfigError("table family requires alpha > -1/2");
    if (x.size() < 8 || x.size() != b.size() || x.size() != bprime.size())
        throw ConfigError("table family needs at least 8 rows of x,B,Bprime");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(b[i]) || !std::isfinite(bprime[i]))
            throw ConfigError("table family: non-finite entry at row " + std::to_string(i + 1));
        if (x[i] < 0.0 || (i > 0 && !(x[i] > x[i - 1])))
            throw ConfigError("table family: x must be non-negative and strictly increasing");
        if (!(b[i] > 0.0)) {
            std::ostringstream msg;
            msg << "table family: B must be positive, fails at x=" << x[i];
            throw ConfigError(msg.str());
        }
    }
    ChebliFamily f;
    f.kind_ = Kind::Table;
    f.alpha_ = alpha;
    f.tx_ = std::move(x);
    f.tl_.resize(b.size());
    f.tc_.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        f.tl_[i] = std::log(b[i]);
        f.tc_[i] = bprime[i] / b[i];
    }

    // odd polynomial fit of C near the origin
    f.fit_edge_ = std::min(0.5, f.tx_.back());
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    for (std::size_t i = 0; i < f.tx_.size() && f.tx_[i] <= f.fit_edge_; ++i) {
        const double t = f.tx_[i];
        if (t == 0.0) continue;
        rows.push_back({t, t * t * t, std::pow(t, 5), std::pow(t, 7)});
        rhs.push_back(f.tc_[i]);
    }
    std::size_t terms = std::min<std::size_t>(4, rows.size());
    if (terms == 0) throw ConfigError("table family: no samples near the origin");
    for (auto& r : rows) r.resize(terms);
    auto coef = numeric::least_squares(rows, rhs);
    f.c_taylor_.assign(kTaylorTerms, 0.0);
    for (std::size_t j = 0; j < terms; ++j) f.c_taylor_[j] = coef[j];
    f.series_radius_ = f.fit_edge_;
    f.log_b_fit_edge_ = f.table_hermite_log_b(f.fit_edge_);

    if (rho >= 0.0) {
        f.rho_ = rho;
    } else {
        const double tail = 0.5 * f.tc_.back();
        f.rho_ = std::abs(tail) < 1e-6 ? 0.0 : tail;
    }

    std::vector<double> grid;
    for (double t : f.tx_)
        if (t > 0.0) grid.push_back(t);
    auto rep = check_hypotheses(f, grid);
    if (!rep.positive || !rep.increasing) {
        std::ostringstream msg;
        msg << "table family violates admissibility: A must be positive and increasing";
        if (!rep.increasing) msg << " (fails near x=" << rep.increasing_x << ")";
        throw ConfigError(msg.str());
    }
    if (!rep.logder_decreasing) {
        std::ostringstream msg;
        msg << "table family: A'/A is not decreasing near x=" << rep.logder_x;
        throw ConfigError(msg.str());
    }
    if (!rep.tail_ok)
        std::cerr << "warning: table family tail of A'/A does not fit exponential decay\n";
    return f;
}

std::string ChebliFamily::name() const {
    std::ostringstream s;
    switch (kind_) {
        case Kind::Dunkl: s << "dunkl(alpha=" << alpha_ << ")"; break;
        case Kind::Jacobi: s << "jacobi(alpha=" << alpha_ << ",beta=" << beta_ << ")"; break;
        case Kind::Table: s << "table(alpha=" << alpha_ << ",rho=" << rho_ << ")"; break;
    }
    return s.str();
}

double ChebliFamily::table_c(double x) const {
    const double ax = std::abs(x);
    double c;
    if (ax <= fit_edge_) {
        const double x2 = ax * ax;
        c = ax * (c_taylor_[0] + x2 * (c_taylor_[1] + x2 * (c_taylor_[2] + x2 * c_taylor_[3])));
    } else if (ax >= tx_.back()) {
        c = tc_.back();
    } else {
        auto it = std::upper_bound(tx_.begin(), tx_.end(), ax);
        const std::size_t i = static_cast<std::size_t>(it - tx_.begin()) - 1;
        const double h = tx_[i + 1] - tx_[i];
        const double s = (ax - tx_[i]) / h;
        // derivative of the cubic Hermite interpolant of log B
        const double d00 = 6.0 * s * s - 6.0 * s;
        const double d10 = 3.0 * s * s - 4.0 * s + 1.0;
        const double d01 = -d00;
        const double d11 = 3.0 * s * s - 2.0 * s;
        c = (d00 * tl_[i] + d01 * tl_[i + 1]) / h + d10 * tc_[i] + d11 * tc_[i + 1];
    }
    return x < 0.0 ? -c : c;
}

double ChebliFamily::table_log_b(double x) const {
    const double ax = std::abs(x);
    if (ax <= fit_edge_) {
        // integral of the odd polynomial from ax to the fit edge
        auto prim = [&](double t) {
            const double t2 = t * t;
            return t2 * (c_taylor_[0] / 2.0 +
                         t2 * (c_taylor_[1] / 4.0 + t2 * (c_taylor_[2] / 6.0 + t2 * c_taylor_[3] / 8.0)));
        };
        return log_b_fit_edge_ - (prim(fit_edge_) - prim(ax));
    }
    return table_hermite_log_b(ax);
}

double ChebliFamily::table_hermite_log_b(double ax) const {
    if (ax <= tx_.front()) return tl_.front();
    if (ax >= tx_.back()) return tl_.back() + tc_.back() * (ax - tx_.back());
    auto it = std::upper_bound(tx_.begin(), tx_.end(), ax);
    const std::size_t i = static_cast<std::size_t>(it - tx_.begin()) - 1;
    const double h = tx_[i + 1] - tx_[i];
    const double s = (ax - tx_[i]) / h;
    const double h00 = 2 * s * s * s - 3 * s * s + 1;
    const double h10 = s * s * s - 2 * s * s + s;
    const double h01 = -2 * s * s * s + 3 * s * s;
    const double h11 = s * s * s - s * s;
    return h00 * tl_[i] + h10 * h * tc_[i] + h01 * tl_[i + 1] + h11 * h * tc_[i + 1];
}

double ChebliFamily::smooth_part(double x) const {
    require_finite(x);
    const double ax = std::abs(x);
    switch (kind_) {
        case Kind::Dunkl: return 1.0;
        case Kind::Jacobi:
            return std::exp((2.0 * alpha_ + 1.0) * log_sinhc(ax) + (2.0 * beta_ + 1.0) * log_cosh(ax));
        case Kind::Table: return std::exp(table_log_b(ax));
    }
    return 1.0;
}

double ChebliFamily::weight(double x) const {
    require_finite(x);
    const double ax = std::abs(x);
    if (ax == 0.0) return 0.0;
    switch (kind_) {
        case Kind::Dunkl: return std::pow(ax, 2.0 * alpha_ + 1.0);
        case Kind::Jacobi:
            return std::pow(std::sinh(ax), 2.0 * alpha_ + 1.0) * std::pow(std::cosh(ax), 2.0 * beta_ + 1.0);
        case Kind::Table: return std::pow(ax, 2.0 * alpha_ + 1.0) * smooth_part(ax);
    }
    return 0.0;
}

double ChebliFamily::c_part(double x) const {
    require_finite(x);
    switch (kind_) {
        case Kind::Dunkl: return 0.0;
        case Kind::Jacobi: return (2.0 * alpha_ + 1.0) * coth_minus_inv(x) + (2.0 * beta_ + 1.0) * std::tanh(x);
        case Kind::Table: return table_c(x);
    }
    return 0.0;
}

double ChebliFamily::log_derivative(double x) const {
    require_finite(x);
    if (x == 0.0) throw SingularityError("log-derivative is singular at x = 0; use the split form");
    return (2.0 * alpha_ + 1.0) / x + c_part(x);
}

double weight(const ChebliFamily& fam, double x) { return fam.weight(x); }
double log_derivative(const ChebliFamily& fam, double x) { return fam.log_derivative(x); }

double rho_eps(const ChebliFamily& fam, double eps) {
    if (!(std::abs(eps) <= 1.0)) throw DomainError("eps out of [-1,1]");
    return std::sqrt(std::max(0.0, 1.0 - eps * eps)) * fam.rho();
}

HypothesisReport check_hypotheses(const ChebliFamily& fam, const std::vector<double>& grid) {
    HypothesisReport rep;
    double prev_a = -1.0, prev_l = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        const double a = fam.weight(x);
        const double l = fam.log_derivative(x);
        if (!(a > 0.0) && rep.positive) {
            rep.positive = false;
            rep.positive_x = x;
        }
        if (i > 0) {
            const double drop = prev_a - a;
            if (drop > rep.increasing_violation) {
                rep.increasing_violation = drop;
                rep.increasing_x = x;
            }
            const double rise = l - prev_l;
            if (rise > rep.logder_violation) {
                rep.logder_violation = rise;
                rep.logder_x = x;
            }
        }
        prev_a = a;
        prev_l = l;
    }
    rep.increasing = rep.increasing_violation <= 0.0;
    rep.logder_decreasing = rep.logder_violation <= 1e-12 * (1.0 + std::abs(prev_l));

    // exponential decay of the tail residual
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    const double start = grid.empty() ? 0.0 : std::max(1.0, grid[grid.size() / 2]);
    for (double x : grid) {
        if (x < start) continue;
        const double lim = fam.rho() > 0.0 ? 2.0 * fam.rho() : (2.0 * fam.alpha() + 1.0) / x;
        const double r = std::abs(fam.log_derivative(x) - lim);
        if (r > 1e-12 * (1.0 + lim) && std::isfinite(r)) {
            rows.push_back({1.0, -x});
            rhs.push_back(std::log(r));
        }
    }
    if (rows.size() >= 3) {
        auto c = numeric::least_squares(rows, rhs);
        rep.k_fit = std::exp(c[0]);
        rep.delta = c[1];
        double ss = 0.0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const double d = rhs[i] - (c[0] + c[1] * rows[i][1]);
            ss += d * d;
        }
        rep.tail_fit_rms = std::sqrt(ss / static_cast<double>(rows.size()));
        rep.tail_ok = rep.delta > 0.0;
    }
    return rep;
}

}  // namespace reflectra::chebli
