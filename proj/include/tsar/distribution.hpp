#ifndef TSAR_DISTRIBUTION_HPP
#define TSAR_DISTRIBUTION_HPP

#include "tsar/lt_inversion.hpp"

#include <complex>

namespace tsar {

/// Parameters of the one-sided tempered stable law: stability index beta in
/// (0,1) and tempering rate lambda >= 0. lambda = 0 degenerates to the pure
/// one-sided stable law, which has no finite integer moments.
struct TSParams {
    double beta;
    double lambda;

    void validate() const;
    bool is_stable() const { return lambda == 0.0; }
};

struct TSMoments {
    double mean;
    double second_moment;
    double variance;
};

/// Laplace transform exp(-((s+lambda)^beta - lambda^beta)) at real s >= 0.
/// Equals exp(-s^beta) when lambda = 0; always in (0, 1], exactly 1 at s=0.
double ts_laplace(const TSParams& p, double s);

/// Same transform continued to complex s with Re(s) >= 0 (principal branch).
std::complex<double> ts_laplace(const TSParams& p, std::complex<double> s);

/// First two moments: mean = beta*lambda^(beta-1),
/// variance = beta*(1-beta)*lambda^(beta-2). Throws ValidationError at
/// lambda = 0 where the moments diverge.
TSMoments ts_moments(const TSParams& p);

/// Asymptotic right-tail approximation
///   P(T > x) ~ c * exp(-lambda x) / x^beta,
///   c = Gamma(1+beta) sin(pi beta) exp(lambda^beta) / (beta pi).
/// Valid for large x only (beyond roughly the 0.95 quantile).
double ts_tail(const TSParams& p, double x);

/// Stable right tail P(S > x) ~ x^(-beta) / Gamma(1-beta) for large x.
double stable_tail(double beta, double x);

/// Tempered stable density e^(-lambda x + lambda^beta) f_beta(x), with the
/// stable density f_beta recovered by numerical transform inversion.
double ts_pdf(const TSParams& p, double x, const InversionConfig& cfg = {});

/// Levy density sqrt(c/(2 pi)) x^(-3/2) exp(-c/(2x)); the closed form of the
/// beta = 1/2 stable law (transform exp(-sqrt(2 c s))), used as an oracle.
double levy_pdf(double c, double x);

/// Closed-form Levy CDF erfc(sqrt(c/(2x))).
double levy_cdf(double c, double x);

/// LTEvaluator wrapping ts_laplace, for the inversion/sampling machinery.
LTEvaluator ts_lt_evaluator(const TSParams& p);

} // namespace tsar

#endif
