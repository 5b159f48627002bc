#include "reflectra/sampled.hpp"

#include <algorithm>
#include <cmath>

#include "reflectra/errors.hpp"

namespace reflectra {

std::size_t grid_half(double radius, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) throw ConfigError("step must be positive");
    if (!(radius > 0.0) || !std::isfinite(radius)) throw ConfigError("radius must be positive");
    const double n = radius / step;
    const double r = std::round(n);
    if (std::abs(n - r) > 1e-9 * std::max(1.0, n))
        throw ConfigError("radius/step must be an integer so the grid is symmetric with odd length");
    return static_cast<std::size_t>(r);
}

SampledFunction::SampledFunction(double radius, double step, std::vector<cplx> values)
    : step_(step), half_(grid_half(radius, step)), values_(std::move(values)) {
    if (values_.size() != 2 * half_ + 1)
        throw ConfigError("sample count does not match the symmetric grid");
}

SampledFunction SampledFunction::zeros(double radius, double step) {
    const std::size_t n = grid_half(radius, step);
    return SampledFunction(radius, step, std::vector<cplx>(2 * n + 1));
}

SampledFunction SampledFunction::from_function(double radius, double step,
                                               const std::function<cplx(double)>& f) {
    auto s = zeros(radius, step);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = f(s.x(i));
    return s;
}

std::vector<double> SampledFunction::grid() const {
    std::vector<double> g(size());
    for (std::size_t i = 0; i < size(); ++i) g[i] = x(i);
    return g;
}

SampledFunction SampledFunction::even_part() const {
    SampledFunction out = *this;
    for (std::size_t i = 0; i < size(); ++i) out[i] = 0.5 * (values_[i] + reflected(i));
    return out;
}

SampledFunction SampledFunction::odd_part() const {
    SampledFunction out = *this;
    for (std::size_t i = 0; i < size(); ++i) out[i] = 0.5 * (values_[i] - reflected(i));
    out[half_] = 0.0;
    return out;
}

double SampledFunction::parity_defect_even() const {
    double m = 0.0;
    for (std::size_t i = 0; i < size(); ++i) m = std::max(m, std::abs(values_[i] - reflected(i)));
    return m;
}

double SampledFunction::parity_defect_odd() const {
    double m = 0.0;
    for (std::size_t i = 0; i < size(); ++i) m = std::max(m, std::abs(values_[i] + reflected(i)));
    return m;
}

double SampledFunction::sup_norm() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
}

cplx SampledFunction::interpolate(double xq) const {
    const double r = radius();
    if (!(std::abs(xq) <= r)) return 0.0;
    const double u = (xq + r) / step_;
    const long n = static_cast<long>(size());
    long i0 = static_cast<long>(std::floor(u)) - 2;
    i0 = std::clamp(i0, 0L, std::max(0L, n - 6));
    const long m = std::min(6L, n);
    cplx acc = 0.0;
    for (long j = 0; j < m; ++j) {
        double w = 1.0;
        for (long k = 0; k < m; ++k) {
            if (k == j) continue;
            w *= (u - static_cast<double>(i0 + k)) / static_cast<double>(j - k);
        }
        acc += w * values_[static_cast<std::size_t>(i0 + j)];
    }
    return acc;
}

}  // namespace reflectra
