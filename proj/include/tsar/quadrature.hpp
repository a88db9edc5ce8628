#ifndef TSAR_QUADRATURE_HPP
#define TSAR_QUADRATURE_HPP

#include <functional>

namespace tsar {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions = 0;
};

/// Adaptive Gauss-Kronrod 15(7) quadrature on [a, b] by interval bisection.
/// Stops when the summed Kronrod error estimate is below
/// max(abs_tol, rel_tol * |integral|). Throws NumericError when max_depth
/// subdivision still leaves the estimate above tolerance.
QuadResult integrate_gk15(const std::function<double(double)>& f,
                          double a, double b,
                          double abs_tol = 1e-10, double rel_tol = 1e-10,
                          int max_depth = 18);

/// Integrates over [a, inf): consecutive blocks [a, a+w], [a+w, a+3w], ...
/// with geometrically growing width until a block contributes less than
/// tail_tol in absolute value, capped at upper_cap.
QuadResult integrate_gk15_upto_decay(const std::function<double(double)>& f,
                                     double a, double first_width,
                                     double tail_tol, double upper_cap,
                                     double abs_tol = 1e-10, double rel_tol = 1e-10);

} // namespace tsar

#endif
