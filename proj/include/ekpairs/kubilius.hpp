#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "ekpairs/joint_stats.hpp"

namespace ekp {

// f(p) for primes p <= y with p coprime to a, and lambda = sum f(p).
struct DensityTable {
    std::uint64_t y = 0;
    std::uint64_t a = 1;
    std::vector<std::pair<std::uint64_t, double>> entries;
    double lambda = 0.0;
};

// Finitely supported probability law on pairs of non-negative integers.
// tail_mass records probability truncated away during construction.
struct DiscreteLaw2D {
    std::map<std::pair<std::uint32_t, std::uint32_t>, double> probabilities;
    double tail_mass = 0.0;

    double mass(std::uint32_t k1, std::uint32_t k2) const {
        auto it = probabilities.find({k1, k2});
        return it == probabilities.end() ? 0.0 : it->second;
    }
};

// f(p) = (1/p)(1 - 1/p)(1 - 2/p^2)^{-1}
double density_squarefree(std::uint64_t p);

DensityTable make_density_table(std::uint64_t y, std::uint64_t a);

// lambda(y) = sum_{p <= y, p coprime to a} f(p)
double lambda_of(std::uint64_t y, std::uint64_t a);

// Law of sum_p X_p where X_p = (1,0) or (0,1) with prob f(p) each, (0,0)
// with prob 1 - 2 f(p); exact convolution over primes in the table.
DiscreteLaw2D model_law(const DensityTable& table, double tail_eps = 0.0);

// Product Poisson(lambda) x Poisson(lambda), truncated at tail_eps.
DiscreteLaw2D poisson2_law(double lambda, double tail_eps = 1e-15);

// Law of (omega_y(n), omega_y(n+a)) over n <= x with n, n+a squarefree and
// (n,a) = 1, normalized by the qualifying count E(x;a).
DiscreteLaw2D empirical_law(std::uint64_t x, std::uint64_t y, std::uint64_t a,
                            unsigned threads = 1);

// Total variation distance: half L1 over the union of supports, plus a
// conservative half of the truncated tail masses.
double tv(const DiscreteLaw2D& p, const DiscreteLaw2D& q);

// Characteristic function of the centered, normalized Poisson:
// E e^{iw (Z - lambda)/sqrt(lambda)}; |result| = exp(-lambda(1 - cos(w/sqrt(lambda)))).
std::complex<double> poisson_charfn(double w, double lambda);

// Explicit part of the Roos bound: sum_{j=1,2} min{1, 1/lambda} sum_p f(p)^2.
double roos_bound(const DensityTable& table);

}  // namespace ekp
