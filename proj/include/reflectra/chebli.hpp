#pragma once

#include <limits>
#include <string>
#include <vector>

namespace reflectra::chebli {

enum class Kind { Dunkl, Jacobi, Table };

// Weight A(x) = |x|^{2 alpha + 1} B(x) with B even and smooth, B(0) > 0.
class ChebliFamily {
public:
    static ChebliFamily dunkl(double alpha);
    static ChebliFamily jacobi(double alpha, double beta);
    // Samples of B and B' on a strictly increasing non-negative grid. When rho
    // is negative it is estimated from the tail of B'/B.
    static ChebliFamily table(std::vector<double> x, std::vector<double> b,
                              std::vector<double> bprime, double alpha, double rho = -1.0);

    Kind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double rho() const { return rho_; }
    std::string name() const;

    double weight(double x) const;
    double smooth_part(double x) const;
    // C = B'/B, odd.
    double c_part(double x) const;
    double log_derivative(double x) const;

    // Taylor coefficients c_j of C(x) = sum_j c_j x^{2j+1} near the origin.
    const std::vector<double>& c_taylor() const { return c_taylor_; }
    // Radius inside which c_taylor represents C.
    double series_radius() const { return series_radius_; }

private:
    ChebliFamily() = default;
    double table_log_b(double x) const;
    double table_hermite_log_b(double ax) const;
    double table_c(double x) const;

    Kind kind_ = Kind::Dunkl;
    double alpha_ = 0.0;
    double beta_ = 0.0;
    double rho_ = 0.0;
    std::vector<double> c_taylor_;
    double series_radius_ = std::numeric_limits<double>::infinity();

    // table data: log B and its slope on the sample grid
    std::vector<double> tx_, tl_, tc_;
    double fit_edge_ = 0.0;
    double log_b_fit_edge_ = 0.0;
};

double weight(const ChebliFamily& fam, double x);
double log_derivative(const ChebliFamily& fam, double x);

// sqrt(1 - eps^2) * rho
double rho_eps(const ChebliFamily& fam, double eps);

struct HypothesisReport {
    bool positive = true;
    double positive_x = 0.0;
    bool increasing = true;
    double increasing_violation = 0.0;
    double increasing_x = 0.0;
    bool logder_decreasing = true;
    double logder_violation = 0.0;
    double logder_x = 0.0;
    // tail residual |A'/A - limit| ~ K exp(-delta x)
    bool tail_ok = true;
    double delta = std::numeric_limits<double>::infinity();
    double k_fit = 0.0;
    double tail_fit_rms = 0.0;

    bool pass() const { return positive && increasing && logder_decreasing && tail_ok; }
};

HypothesisReport check_hypotheses(const ChebliFamily& fam, const std::vector<double>& grid);

}  // namespace reflectra::chebli
