#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace reflectra::numeric {

using cplx = std::complex<double>;

// Composite Simpson on uniform samples. An odd interval count closes with
// the 3/8 rule on the last three intervals.
template <typename T>
T simpson(const T* y, std::size_t n_points, double h);

template <typename T>
T simpson(const std::vector<T>& y, double h) {
    return simpson(y.data(), y.size(), h);
}

template <typename T>
struct Estimate {
    T value{};
    double error = 0.0;
};

// Simpson at h plus |S_h - S_2h|/15 using every other sample.
template <typename T>
Estimate<T> simpson_richardson(const std::vector<T>& y, double h);

// Composite Gauss-Legendre rule (16 points per panel) on [a, b].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::size_t size() const { return nodes.size(); }
};

QuadratureRule gauss_panels(double a, double b, std::size_t panels);

// Panels sized so that no panel is wider than max_width.
QuadratureRule gauss_panels_width(double a, double b, double max_width);

cplx lgamma(cplx z);

double sg(double x);

// Runs body(i) for i in [0, n). threads == 0 picks hardware concurrency.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  unsigned threads = 0);

void set_default_threads(unsigned threads);
unsigned default_threads();

// Least-squares solution of the dense system rows * coef = rhs.
std::vector<double> least_squares(const std::vector<std::vector<double>>& rows,
                                  const std::vector<double>& rhs);

// exp(k - k/(1 - (x/a)^2)) on |x| < a, zero outside; equals 1 at the origin.
double bump(double x, double a = 1.0, double k = 1.0);
// First and second derivatives of bump in x.
double bump_d1(double x, double a = 1.0, double k = 1.0);
double bump_d2(double x, double a = 1.0, double k = 1.0);

}  // namespace reflectra::numeric
