#include "reflectra/numeric.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

namespace reflectra::numeric {

template <typename T>
T simpson(const T* y, std::size_t n_points, double h) {
    if (n_points < 2) return T{};
    const std::size_t n = n_points - 1;
    if (n == 1) return 0.5 * h * (y[0] + y[1]);
    if (n == 3) return 3.0 * h / 8.0 * (y[0] + 3.0 * y[1] + 3.0 * y[2] + y[3]);
    std::size_t m = (n % 2 == 0) ? n : n - 3;
    T odd{}, even{};
    for (std::size_t i = 1; i < m; i += 2) odd += y[i];
    for (std::size_t i = 2; i < m; i += 2) even += y[i];
    T s = h / 3.0 * (y[0] + 4.0 * odd + 2.0 * even + y[m]);
    if (m != n) s += 3.0 * h / 8.0 * (y[m] + 3.0 * y[m + 1] + 3.0 * y[m + 2] + y[m + 3]);
    return s;
}

template double simpson<double>(const double*, std::size_t, double);
template cplx simpson<cplx>(const cplx*, std::size_t, double);

template <typename T>
Estimate<T> simpson_richardson(const std::vector<T>& y, double h) {
    Estimate<T> out;
    out.value = simpson(y, h);
    if (y.size() >= 5 && (y.size() - 1) % 2 == 0) {
        std::vector<T> coarse;
        coarse.reserve(y.size() / 2 + 1);
        for (std::size_t i = 0; i < y.size(); i += 2) coarse.push_back(y[i]);
        out.error = std::abs(out.value - simpson(coarse, 2.0 * h)) / 15.0;
    }
    return out;
}

template Estimate<double> simpson_richardson<double>(const std::vector<double>&, double);
template Estimate<cplx> simpson_richardson<cplx>(const std::vector<cplx>&, double);

QuadratureRule gauss_panels(double a, double b, std::size_t panels) {
    using rule = boost::math::quadrature::gauss<double, 16>;
    const auto& xs = rule::abscissa();
    const auto& ws = rule::weights();
    QuadratureRule q;
    if (panels == 0 || !(b > a)) return q;
    q.nodes.reserve(16 * panels);
    q.weights.reserve(16 * panels);
    const double w = (b - a) / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const double lo = a + w * static_cast<double>(p);
        const double c = lo + 0.5 * w;
        const double r = 0.5 * w;
        // boost stores the positive half of the abscissae; 16 is even so 0 is absent
        for (std::size_t i = xs.size(); i-- > 0;) {
            q.nodes.push_back(c - r * xs[i]);
            q.weights.push_back(r * ws[i]);
        }
        for (std::size_t i = 0; i < xs.size(); ++i) {
            q.nodes.push_back(c + r * xs[i]);
            q.weights.push_back(r * ws[i]);
        }
    }
    return q;
}

QuadratureRule gauss_panels_width(double a, double b, double max_width) {
    if (!(b > a)) return {};
    auto panels = static_cast<std::size_t>(std::ceil((b - a) / max_width - 1e-12));
    return gauss_panels(a, b, std::max<std::size_t>(panels, 1));
}

namespace {

constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

}  // namespace

cplx lgamma(cplx z) {
    const double pi = M_PI;
    if (z.real() < 0.5) {
        // reflection: Gamma(z)Gamma(1-z) = pi / sin(pi z)
        return std::log(pi) - std::log(std::sin(pi * z)) - lgamma(1.0 - z);
    }
    z -= 1.0;
    cplx x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    const cplx t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

double sg(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

namespace {
std::atomic<unsigned> g_threads{0};
}

void set_default_threads(unsigned threads) { g_threads = threads; }

unsigned default_threads() {
    unsigned t = g_threads.load();
    if (t == 0) t = std::max(1u, std::thread::hardware_concurrency());
    return t;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  unsigned threads) {
    if (threads == 0) threads = default_threads();
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load()) return;
            try {
                body(i);
            } catch (...) {
                bool expected = false;
                if (failed.compare_exchange_strong(expected, true)) failure = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

std::vector<double> least_squares(const std::vector<std::vector<double>>& rows,
                                  const std::vector<double>& rhs) {
    if (rows.empty() || rows.size() != rhs.size())
        throw std::invalid_argument("least_squares: shape mismatch");
    const auto m = static_cast<Eigen::Index>(rows.size());
    const auto n = static_cast<Eigen::Index>(rows.front().size());
    Eigen::MatrixXd a(m, n);
    Eigen::VectorXd b(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = rows[i][j];
        b(i) = rhs[i];
    }
    Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
    return {c.data(), c.data() + n};
}

double bump(double x, double a, double k) {
    const double y = x / a;
    const double q = 1.0 - y * y;
    if (q <= 0.0) return 0.0;
    return std::exp(k - k / q);
}

double bump_d1(double x, double a, double k) {
    const double y = x / a;
    const double q = 1.0 - y * y;
    if (q <= 0.0) return 0.0;
    // d/dx of -k/q = -2k y / (a q^2)
    return bump(x, a, k) * (-2.0 * k * y / (a * q * q));
}

double bump_d2(double x, double a, double k) {
    const double y = x / a;
    const double q = 1.0 - y * y;
    if (q <= 0.0) return 0.0;
    const double g1 = -2.0 * k * y / (a * q * q);
    // d/dx of g1
    const double g2 = -2.0 * k / (a * a) * (1.0 + 3.0 * y * y) / (q * q * q);
    return bump(x, a, k) * (g1 * g1 + g2);
}

}  // namespace reflectra::numeric
