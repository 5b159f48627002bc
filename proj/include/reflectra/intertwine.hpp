#pragma once

#include <functional>
#include <vector>

#include "reflectra/chebli.hpp"
#include "reflectra/numeric.hpp"
#include "reflectra/sampled.hpp"

namespace reflectra::intertwine {

using chebli::ChebliFamily;

double bessel_j(int nu, double z);
double bessel_i(int nu, double z);

enum class Direction { E, EInv, TE, TEInv };

struct BesselKernelOp {
    Direction direction = Direction::E;
    double rho_eps = 0.0;

    static BesselKernelOp make(const ChebliFamily& fam, double eps, Direction dir);
};

// Transmutation operators on even grid functions; inner integrals by
// composite Simpson on the grid.
SampledFunction apply_e(const BesselKernelOp& op, const SampledFunction& f);

// Transposed operators written against g': -int_{|y|}^inf g'(x) J0 (or I0) dx.
SampledFunction apply_te_gradient_form(const BesselKernelOp& op, const SampledFunction& gprime);

// K(|x|, t) for the Dunkl weight; normalized so that int_0^{|x|} K dt = 1.
double dunkl_base_kernel(const ChebliFamily& fam, double x, double t);

// Kernel of the Laplace representation Psi(lambda, x) = int KK(x,y) e^{i lambda y} dy
// for one x != 0. The quadrature in y = |x| sin(theta) is built at
// construction; the object is read-only afterwards.
class MehlerKernel {
public:
    MehlerKernel(const ChebliFamily& fam, double eps, double x, bool build_rule = true);

    double x() const { return x_; }
    double k_eps(double y) const;
    double g_eps(double y) const;
    double kk(double y) const;
    // KK(x, |x| sin th) |x| cos th
    double density_theta(double theta) const;

    cplx apply(const std::function<cplx(double)>& f) const;
    double min_density() const;
    const std::vector<double>& nodes() const { return ys_; }
    const std::vector<double>& weights() const { return ws_; }

private:
    double g_mean(double y) const;

    const ChebliFamily* fam_;
    double eps_, x_, ax_, c_;
    std::vector<double> ys_, ws_;
};

// V f(x) = int_{|y|<|x|} KK(x, y) f(y) dy, V f(0) = f(0).
cplx v_eps(const ChebliFamily& fam, double eps, const std::function<cplx(double)>& f, double x);
SampledFunction v_eps(const ChebliFamily& fam, double eps, const SampledFunction& f);

// tV g(y) = int_{|x|>|y|} KK(x, y) g(x) A(x) dx for g supported in [-a, a].
cplx t_v_eps(const ChebliFamily& fam, double eps, const std::function<cplx(double)>& g,
             double support, double y);
SampledFunction t_v_eps(const ChebliFamily& fam, double eps, const SampledFunction& g);

// Composite Gauss rule on [a, b] geometrically refined toward the chosen ends.
numeric::QuadratureRule graded_rule(double a, double b, std::size_t uniform_panels,
                                    bool grade_left, bool grade_right, int levels = 24);

}  // namespace reflectra::intertwine
