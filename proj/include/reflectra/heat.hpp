#pragma once

#include <memory>
#include <vector>

#include "reflectra/chebli.hpp"
#include "reflectra/eigen.hpp"

namespace reflectra::heat {

using chebli::ChebliFamily;

struct HeatOptions {
    double tol = 1e-12;        // Gaussian truncation and imaginary-residue tolerance
    double lmax = 0.0;         // 0 picks sqrt(ln(1/tol)/s) + 5
    double panel_width = 0.5;  // Gauss panels in lambda
    double ode_tol = 1e-11;
};

// e^{-u^2/4s} / (2 sqrt(pi s))
double euclidean_kernel(double s, double u);

// W(s; u, x) = (1/2 pi) int Psi(-lambda, x) e^{-s lambda^2} e^{i lambda u} d lambda
// with one radial solve per lambda node, tabulated on the x grid.
class HeatEval {
public:
    HeatEval(const ChebliFamily& fam, double eps, double s, double xmax, double step, const HeatOptions& opts = {});

    double s() const { return s_; }
    double eps() const { return eps_; }
    double lmax() const { return lmax_; }
    double tol() const { return opts_.tol; }
    double xmax() const { return xmax_; }
    double step() const { return step_; }
    std::size_t nodes() const { return lambdas_.size(); }
    const ChebliFamily& family() const { return *fam_; }
    // e^{-s lmax^2} (1 + lmax) bound on the discarded tail
    double truncation_bound() const;

    cplx w_complex(double u, double x) const;
    // Real part; throws ConsistencyError if the imaginary residue exceeds 100 tol.
    double w(double u, double x) const;

private:
    void radial_at(double x, std::vector<double>& phi, std::vector<double>& q) const;

    std::shared_ptr<const ChebliFamily> fam_;
    double eps_, s_, xmax_, step_, lmax_;
    HeatOptions opts_;
    std::size_t half_ = 0;
    std::vector<double> lambdas_, weights_;  // positive nodes
    std::vector<eigen::RadialEigen> radial_;
    // phi and sg(x) I/A per node on x = j h, j = 0..half
    std::vector<std::vector<double>> phi_, quot_;
};

struct PositivityReport {
    double min_value = 0.0, min_u = 0.0, min_x = 0.0;
    double max_value = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

// Minimum of W over the product grid, failing below -10 tol.
PositivityReport positivity_scan(const HeatEval& he, const std::vector<double>& u_grid,
                                 const std::vector<double>& x_grid);

struct EvenBoundReport {
    double worst_margin = 0.0;  // min of W_even - bound
    double at_u = 0.0, at_x = 0.0;
    bool pass = false;
};

// W_even(s;u,x) >= e^{-(|u|+|x|)^2/4s}/(2 sqrt(pi s)) phi_{i sqrt(1-eps^2) rho}(x) - tol
EvenBoundReport even_bound_check(const HeatEval& he, const std::vector<double>& u_grid,
                                 const std::vector<double>& x_grid);

struct DecayReport {
    double ring_max = 0.0, interior_max = 0.0;
    double ratio() const { return interior_max > 0.0 ? ring_max / interior_max : 0.0; }
};

// Boundary ring of the square [-m, m]^2 against its interior.
DecayReport decay_check(const HeatEval& he, double m, double step);

struct TransportReport {
    double residual = 0.0;  // max |(Lambda + d/du) W| on interior points
    double scale = 0.0;     // max |W|
};

TransportReport transport_check(const HeatEval& he, double umax, double step);

struct SemigroupReport {
    double max_diff = 0.0;
};

// W(2s; u, x) against int W(s; u - v, x) p_s(v) dv.
SemigroupReport semigroup_check(const ChebliFamily& fam, double eps, double s, const std::vector<double>& u_grid,
                                const std::vector<double>& x_grid, const HeatOptions& opts = {});

std::vector<double> uniform_grid(double m, double step);

}  // namespace reflectra::heat
