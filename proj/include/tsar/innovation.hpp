#ifndef TSAR_INNOVATION_HPP
#define TSAR_INNOVATION_HPP

#include "tsar/distribution.hpp"
#include "tsar/lt_inversion.hpp"

#include <complex>

namespace tsar {

/// Parameters of the TAR(1) innovation law: autoregression coefficient rho
/// in (0,1) plus the tempered stable marginal parameters. The branch-cut
/// density representation requires rho > 0; negative rho is rejected.
struct InnovationParams {
    double rho;
    TSParams ts;

    void validate() const;
};

/// Innovation transform exp((rho s + lambda)^beta - (s + lambda)^beta).
/// Equals exp(-(1 - rho^beta) s^beta) when lambda = 0, i.e. the innovation
/// stays one-sided stable with scale (1 - rho^beta)^(1/beta).
double error_laplace(const InnovationParams& p, double s);
std::complex<double> error_laplace(const InnovationParams& p, std::complex<double> s);

/// LTEvaluator wrapping error_laplace.
LTEvaluator error_lt_evaluator(const InnovationParams& p);

/// Innovation density for lambda > 0 via the two branch-cut integrals:
/// one along (-inf, -lambda/rho], one along [-lambda/rho, -lambda], each
/// reduced to an explicitly real integrand (the imaginary parts of the
/// upper/lower cut contributions cancel pairwise). Adaptive Gauss-Kronrod
/// quadrature, split at the envelope knee w = 1/x.
double error_density(const InnovationParams& p, double x, const InversionConfig& cfg = {});

/// Exponent-sign convention for the lambda = 0 density integrand. The
/// decaying choice is the one consistent with a probability density (and
/// with the transform-inversion oracle); the growing variant is kept only
/// so tests can document the difference. They coincide at beta = 1/2.
enum class StableIntegrandSign { decaying_exponent, growing_exponent };

/// Innovation density for the stable case (lambda = 0):
/// (1/pi) Int_0^inf exp(-w x - w^beta (1-rho^beta) cos(pi beta))
///                  * sin(w^beta (1-rho^beta) sin(pi beta)) dw,
/// the density of (1 - rho^beta)^(1/beta) * S.
double error_density_stable(double rho, double beta, double x,
                            const InversionConfig& cfg = {},
                            StableIntegrandSign sign = StableIntegrandSign::decaying_exponent);

/// Fractional moment E[eps^q], 0 < q < beta. Closed form at lambda = 0:
/// Gamma(1-q/beta)/Gamma(1-q) * (1-rho^beta)^(q/beta). For lambda > 0 the
/// moment is computed from the derivative-of-transform integral
///   (1/Gamma(1-q)) Int_0^inf -d/ds[error LT](s) * s^(-q) ds.
double error_fractional_moment(const InnovationParams& p, double q,
                               const InversionConfig& cfg = {});

struct ErrorMoments {
    double mean;          // beta lambda^(beta-1) (1 - rho)
    double second_moment; // mean^2 + beta (1-beta) lambda^(beta-2) (1 - rho^2)
    double variance;
};

/// First two innovation moments; lambda = 0 throws (moments diverge).
ErrorMoments error_moments(const InnovationParams& p);

} // namespace tsar

#endif
