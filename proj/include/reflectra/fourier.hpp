#pragma once

#include <vector>

#include "reflectra/chebli.hpp"
#include "reflectra/sampled.hpp"

namespace reflectra::fourier {

using chebli::ChebliFamily;

// |c(mu)|^{-2}. The Dunkl constant is calibrated on first use.
double c_density(const ChebliFamily& fam, double mu);
// |c(mu)|^{-2} / mu, finite at mu = 0 when rho > 0.
double c_density_over_mu(const ChebliFamily& fam, double mu);

struct Calibration {
    double constant = 0.0;
    double width = 0.0;
    double tail = 0.0;  // spectral mass beyond the cutoff, relative
};

// Constant c with |c(mu)|^{-2} = c mu^{2 alpha + 1} that makes the Gaussian
// exp(-x^2 / (2 w^2)) invert exactly at the origin.
Calibration calibrate_dunkl(double alpha, double width);
double dunkl_constant(double alpha);

// Round-trip ratio f(0) / (recovered f(0)) for the Gamma-quotient density of
// a Jacobi family; 1 when the density is consistent.
double jacobi_calibration_ratio(const ChebliFamily& fam);

// Off-centre bump on [-2, 3] used as the default transform input.
double default_bump(double x);

struct QuadratureParams {
    double radius = 8.0;
    double step = 1.0 / 64.0;
    double lmax = 40.0;
    double ode_tol = 1e-11;
    double panel_width = 1.0;
};

class SpectralDensity {
public:
    SpectralDensity(const ChebliFamily& fam, double eps, double scale = 1.0);

    double gap() const { return gap_; }
    double eps() const { return eps_; }
    const ChebliFamily& family() const { return *fam_; }
    // density of pi_eps in lambda; zero inside the gap
    double density(double lambda) const;
    cplx factor(double lambda) const;
    // (1 - eps rho/(i lambda)) |c(t)|^{-2} at lambda = sign sqrt(gap^2 + t^2)
    cplx measure_t(double t, int sign) const;

private:
    const ChebliFamily* fam_;
    double eps_, gap_, scale_;
};

struct SpectralNode {
    double lambda;
    double t;
    int sign;
    double weight;  // quadrature weight in t
};

// Nodes for lambda = +-sqrt(gap^2 + t^2), t in [0, sqrt(lmax^2 - gap^2)].
std::vector<SpectralNode> spectral_nodes(const SpectralDensity& d, double lmax, double panel_width);

struct TransformResult {
    std::vector<cplx> lambdas;
    std::vector<cplx> values;
    std::vector<double> truncation;  // per-lambda tail bound
    double radius = 0.0;
    double step = 0.0;
    std::vector<SpectralNode> nodes;  // set when computed on spectral nodes
};

// F f(lambda) = int f(x) Psi(lambda, -x) A(x) dx by composite Simpson.
TransformResult forward(const ChebliFamily& fam, double eps, const SampledFunction& f,
                        const std::vector<cplx>& lambdas, const QuadratureParams& q = {},
                        double tail_tol = 1e-8);
TransformResult forward_nodes(const ChebliFamily& fam, double eps, const SampledFunction& f,
                              const SpectralDensity& d, const QuadratureParams& q = {});

// f(x) = 1/4 int F(lambda) Psi(lambda, x) (1 - eps rho/(i lambda)) pi_eps(d lambda)
SampledFunction inverse(const ChebliFamily& fam, double eps, const TransformResult& F,
                        const SpectralDensity& d, const QuadratureParams& q = {},
                        double truncation_tol = 1e-4);

struct RoundTrip {
    SampledFunction recovered;
    double sup_error = 0.0;
    double recovered_origin = 0.0;
    double tail_estimate = 0.0;
    std::size_t nodes = 0;
};

// Forward then inverse with each lambda node solved once.
RoundTrip roundtrip(const ChebliFamily& fam, double eps, const SampledFunction& f,
                    const QuadratureParams& q = {}, double density_scale = 1.0);

struct PlancherelReport {
    cplx lhs, rhs;             // bilinear form
    double l2_lhs = 0.0;
    cplx l2_rhs;
    double relative = 0.0;     // bilinear discrepancy
    double l2_relative = 0.0;
    double discrepancy() const { return relative > l2_relative ? relative : l2_relative; }
};

PlancherelReport plancherel_check(const ChebliFamily& fam, double eps, const SampledFunction& f,
                                  const SampledFunction& g, const QuadratureParams& q = {},
                                  double density_scale = 1.0);

struct PaleyWienerReport {
    // log|F f(i eta)| = R eta + c0 + c1 sqrt(eta) + c2 log(eta) + c3 / sqrt(eta)
    double r_fit = 0.0;
    std::vector<double> eta;
    std::vector<double> log_abs;  // log |F f(i eta)|
    std::vector<double> t_list;
    std::vector<double> weighted_sup;  // sup (|lambda|+1)^t e^{-a|Im lambda|}|F f|
    double decay_ratio = 0.0;          // sup_[20,40] / sup_[0,20] of (|lambda|+1)^3 |F f|
    double rl_ratio = 0.0;             // max_[30,40] |F f| / max_[0,10] |F f|
    std::vector<double> real_lambda;
    std::vector<double> real_abs;
};

PaleyWienerReport paley_wiener_check(const ChebliFamily& fam, double eps, const SampledFunction& f,
                                     double support, const std::vector<double>& eta_grid,
                                     const std::vector<double>& t_list, double lmax = 40.0);

double schwartz_seminorm(const ChebliFamily& fam, double eps, double p, const SampledFunction& f, double s,
                         int k);

}  // namespace reflectra::fourier
