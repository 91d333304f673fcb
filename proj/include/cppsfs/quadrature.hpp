#ifndef CPPSFS_QUADRATURE_HPP
#define CPPSFS_QUADRATURE_HPP

#include <functional>
#include <stdexcept>
#include <string>

namespace cppsfs::quad {

struct QuadratureError : std::runtime_error {
    QuadratureError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_tolerance(achieved) {}
    double achieved_tolerance;
};

/// Adaptive Gauss-Kronrod (15/7) integration on [a, b] to an absolute
/// tolerance.  Throws QuadratureError carrying the achieved tolerance
/// when the error estimate cannot be driven below abs_tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10);

/// Integral over [a, inf) via the substitution t = a + x/(1-x).
double integrate_semi_infinite(const std::function<double(double)>& f, double a,
                               double abs_tol = 1e-10);

} // namespace cppsfs::quad

#endif
