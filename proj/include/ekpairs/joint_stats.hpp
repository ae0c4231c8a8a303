#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>

#include "ekpairs/arith_engine.hpp"

namespace ekp {

struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class PairFilter {
    kAll,                     // every n <= x
    kSquarefreePair,          // mu^2(n) = mu^2(n+a) = 1
    kSquarefreePairCoprimeA,  // additionally (n, a) = 1
};

enum class PairStat { kOmega, kOmegaY };

// Histogram of (stat(n), stat(n+a)) over qualifying n <= x.
struct PairSample {
    std::uint64_t x = 0;
    std::uint64_t a = 1;
    std::uint64_t y = 0;  // 0 means "no truncation" (full omega)
    PairFilter filter = PairFilter::kAll;
    PairStat stat = PairStat::kOmega;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> counts;
    std::uint64_t total = 0;
};

struct Normalization {
    double center = 0.0;
    double scale = 1.0;  // usually sqrt(center)

    double apply(double k) const { return (k - center) / scale; }
};

// Centering by log_2 x = log log x.
Normalization log2x_normalization(std::uint64_t x);

// Standard normal CDF, via erfc; relative error at the 1e-14 level.
double normal_cdf(double z);
// Product bivariate Gaussian CDF Phi(z) Phi(z').
double gaussian2_cdf(double z1, double z2);
// chi(u,v) = exp(-(u^2+v^2)/2).
double gaussian2_charfn(double u, double v);

PairSample collect_pairs(std::uint64_t x, std::uint64_t a,
                         std::optional<std::uint64_t> y, PairFilter filter,
                         PairStat stat, unsigned threads = 1);

// Exact sup over R^2 of |F - Phi x Phi| for the normalized empirical joint
// CDF F; evaluated at all jump corners, approaching from both sides in each
// coordinate.
double sup_distance_vs_gaussian(const PairSample& sample,
                                const Normalization& norm);

std::complex<double> char_fn(const PairSample& sample,
                             const Normalization& norm, double u, double v);

// x^{-1} sum_{n<=x} mu_y(n) mu_y(n+a); the numerator is an exact integer.
double correlation_mu_y(std::uint64_t x, std::uint64_t y, std::uint64_t a,
                        unsigned threads = 1);
long long correlation_mu_y_numerator(std::uint64_t x, std::uint64_t y,
                                     std::uint64_t a, unsigned threads = 1);

// x^{-1} sum_{n<=x} mu(n;u) mu(n+a;v).
std::complex<double> correlation_mu_u(std::uint64_t x, double u, double v,
                                      std::uint64_t a, unsigned threads = 1);

// total^{-1} sum multiplicity * z1^{2 e1} * z2^{2 e2}.
double moment(const PairSample& sample, const Normalization& norm, int e1,
              int e2);

// Numerical Esseen-integral diagnostic over
// R_T = {u in [-T,T]^2 : T^{-3} < |u1|,|u2| <= T}, plus T^{-1}.
double esseen_diagnostic(const PairSample& sample, const Normalization& norm,
                         double T, double grid_step);

}  // namespace ekp
