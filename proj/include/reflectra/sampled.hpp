#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace reflectra {

using cplx = std::complex<double>;

// Samples on the symmetric grid x_i = (i - N) h, i = 0..2N.
class SampledFunction {
public:
    SampledFunction() = default;
    SampledFunction(double radius, double step, std::vector<cplx> values);

    static SampledFunction zeros(double radius, double step);
    static SampledFunction from_function(double radius, double step,
                                         const std::function<cplx(double)>& f);

    double radius() const { return static_cast<double>(half_) * step_; }
    double step() const { return step_; }
    std::size_t size() const { return values_.size(); }
    std::size_t half() const { return half_; }
    double x(std::size_t i) const {
        return (static_cast<double>(i) - static_cast<double>(half_)) * step_;
    }
    std::vector<double> grid() const;

    const std::vector<cplx>& values() const { return values_; }
    std::vector<cplx>& values() { return values_; }
    cplx& operator[](std::size_t i) { return values_[i]; }
    const cplx& operator[](std::size_t i) const { return values_[i]; }
    // value at the reflected point -x_i
    const cplx& reflected(std::size_t i) const { return values_[values_.size() - 1 - i]; }

    SampledFunction even_part() const;
    SampledFunction odd_part() const;
    double parity_defect_even() const;  // max |f(x) - f(-x)|
    double parity_defect_odd() const;   // max |f(x) + f(-x)|
    double sup_norm() const;

    // Six-point Lagrange interpolation; zero outside the grid.
    cplx interpolate(double x) const;

private:
    double step_ = 0.0;
    std::size_t half_ = 0;
    std::vector<cplx> values_;
};

// Grid half-width N with N h = radius, requiring radius/step to be an integer.
std::size_t grid_half(double radius, double step);

}  // namespace reflectra
