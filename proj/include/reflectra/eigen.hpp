#pragma once

#include <array>
#include <complex>
#include <vector>

#include "reflectra/chebli.hpp"
#include "reflectra/sampled.hpp"

namespace reflectra::eigen {

using chebli::ChebliFamily;

struct SpectralPoint {
    cplx lambda;
    double eps = 0.0;
    cplx mu_eps_sq;   // lambda^2 + (eps^2 - 1) rho^2
    cplx reg_factor;  // i lambda + eps rho

    static SpectralPoint make(const ChebliFamily& fam, cplx lambda, double eps);
};

struct SolveOptions {
    double tol = 1e-10;
    // When positive, the integrator lands exactly on every multiple of this
    // step so grid evaluations are lookups.
    double grid_step = 0.0;
};

struct EigenValue {
    cplx phi;
    cplx dphi;
    cplx integral;  // int_0^{|x|} phi A dt
    cplx quotient;  // sg(x) integral / A(x), finite at 0
};

// Even solution of phi'' + (A'/A) phi' + (mu^2 + rho^2) phi = 0, phi(0) = 1.
// The family must outlive the solution.
class RadialEigen {
public:
    using State = std::array<double, 6>;  // phi, phi', I/A as (re, im) pairs

    const ChebliFamily& family() const { return *fam_; }
    cplx mu_sq() const { return mu_sq_; }
    cplx nu() const { return nu_; }
    double radius() const { return radius_; }
    double switch_radius() const { return x0_; }
    double est_error() const { return est_error_; }
    std::size_t series_terms() const { return a_.size(); }
    std::size_t steps() const { return xs_.size(); }

    EigenValue eval(double x) const;
    cplx phi(double x) const { return eval(x).phi; }

private:
    friend RadialEigen solve_phi(const ChebliFamily&, cplx, double, const SolveOptions&);
    EigenValue series_eval(double ax) const;
    void rhs(const State& y, State& dy, double x) const;

    const ChebliFamily* fam_ = nullptr;
    cplx mu_sq_, nu_;
    double radius_ = 0.0;
    double x0_ = 0.0;
    double est_error_ = 0.0;
    std::vector<cplx> a_;  // phi = sum a_k x^{2k}
    std::vector<cplx> s_;  // I/A = x sum s_k x^{2k}
    std::vector<double> xs_;
    std::vector<State> ys_;
};

RadialEigen solve_phi(const ChebliFamily& fam, cplx mu_sq, double radius,
                      const SolveOptions& opts = {});
inline RadialEigen solve_phi(const ChebliFamily& fam, cplx mu_sq, double radius, double tol) {
    return solve_phi(fam, mu_sq, radius, SolveOptions{tol, 0.0});
}

// -(mu^2 + rho^2) sg(x) / A(x) int_0^{|x|} phi A dt
cplx phi_prime_via_integral(const RadialEigen& re, double x);

// Psi(lambda, x) = phi(x) + (i lambda + eps rho) sg(x)/A(x) int_0^{|x|} phi A dt
class PsiEvaluator {
public:
    PsiEvaluator(const ChebliFamily& fam, const SpectralPoint& sp, double radius,
                 const SolveOptions& opts = {});
    cplx operator()(double x) const;
    cplx even(double x) const { return re_.phi(x); }
    const RadialEigen& radial() const { return re_; }
    const SpectralPoint& point() const { return sp_; }
    // values on the grid (i - N) h, i = 0..2N
    std::vector<cplx> on_grid(double radius, double step) const;

private:
    SpectralPoint sp_;
    RadialEigen re_;
};

cplx psi(const ChebliFamily& fam, const SpectralPoint& sp, double x, double tol = 1e-10);

// f' + (A'/A)(f(x) - f(-x))/2 - eps rho f(-x) with fourth-order differences.
SampledFunction apply_lambda_op(const ChebliFamily& fam, double eps, const SampledFunction& f);

// Fourth-order first derivative on the symmetric grid (one-sided at the ends).
std::vector<cplx> derivative4(const std::vector<cplx>& f, double h);

struct GrowthItem {
    bool ok = true;
    double observed = 0.0;
    double bound = 0.0;
};

struct GrowthReport {
    GrowthItem real_bound;       // |Psi| <= sqrt 2 for real lambda
    GrowthItem strip_domination; // |Psi(a+ib)| <= Psi(ib)
    GrowthItem exp_type;         // Psi(ib) <= Psi(0) e^{|b||x|}
    GrowthItem imaginary_real;   // Im Psi(ib) ~ 0
    GrowthItem imaginary_positive;
    GrowthItem zero_envelope;    // Psi(0,x) <= c (|x|+1) e^{-rho(1-sqrt(1-eps^2))|x|}
    double c_fit = 0.0;
    bool pass() const {
        return real_bound.ok && strip_domination.ok && exp_type.ok && imaginary_real.ok &&
               imaginary_positive.ok && zero_envelope.ok;
    }
};

GrowthReport verify_growth(const ChebliFamily& fam, double eps, const std::vector<double>& lambda_grid,
                           const std::vector<double>& b_grid, double radius, double step,
                           double tol = 1e-9);

}  // namespace reflectra::eigen
