#include "ekpairs/kubilius.hpp"

#include <cmath>
#include <mutex>
#include <set>

#include "ekpairs/arith_engine.hpp"

namespace ekp {

double density_squarefree(std::uint64_t p) {
    if (p < 2) throw parameter_error("density_squarefree: p must be prime");
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0)
            throw parameter_error("density_squarefree: p must be prime");
    const double pd = static_cast<double>(p);
    return (1.0 / pd) * (1.0 - 1.0 / pd) / (1.0 - 2.0 / (pd * pd));
}

DensityTable make_density_table(std::uint64_t y, std::uint64_t a) {
    if (y < 2) throw parameter_error("make_density_table: y >= 2");
    if (a < 1) throw parameter_error("make_density_table: a >= 1");
    DensityTable t;
    t.y = y;
    t.a = a;
    const PrimeSet ps = primes_up_to(y);
    for (std::uint64_t p : ps.primes) {
        if (a % p == 0) continue;
        const double f = density_squarefree(p);
        t.entries.emplace_back(p, f);
        t.lambda += f;
    }
    return t;
}

double lambda_of(std::uint64_t y, std::uint64_t a) {
    return make_density_table(y, a).lambda;
}

DiscreteLaw2D model_law(const DensityTable& table, double tail_eps) {
    if (tail_eps < 0.0 || tail_eps > 1e-6)
        throw parameter_error("model_law: tail_eps in [0, 1e-6]");
    DiscreteLaw2D law;
    law.probabilities[{0, 0}] = 1.0;
    const double per_prime_eps =
        table.entries.empty() ? 0.0
                              : tail_eps / static_cast<double>(table.entries.size());
    for (const auto& [p, f] : table.entries) {
        (void)p;
        const double stay = 1.0 - 2.0 * f;
        std::map<std::pair<std::uint32_t, std::uint32_t>, double> next;
        for (const auto& [key, mass] : law.probabilities) {
            if (mass < per_prime_eps) {
                law.tail_mass += mass;
                continue;
            }
            next[{key.first + 1, key.second}] += mass * f;
            next[{key.first, key.second + 1}] += mass * f;
            if (stay > 0.0) next[key] += mass * stay;
        }
        law.probabilities = std::move(next);
    }
    return law;
}

DiscreteLaw2D poisson2_law(double lambda, double tail_eps) {
    if (lambda <= 0.0) throw parameter_error("poisson2_law: lambda > 0");
    // Univariate masses out to where the tail is below tail_eps.
    std::vector<double> m;
    double mass = std::exp(-lambda);
    double cum = 0.0;
    for (std::uint32_t k = 0; cum < 1.0 - tail_eps / 2 || k <= lambda; ++k) {
        m.push_back(mass);
        cum += mass;
        mass *= lambda / (k + 1);
        if (mass < 1e-300 || k > 10000) break;
    }
    DiscreteLaw2D law;
    for (std::uint32_t k1 = 0; k1 < m.size(); ++k1)
        for (std::uint32_t k2 = 0; k2 < m.size(); ++k2)
            law.probabilities[{k1, k2}] = m[k1] * m[k2];
    double covered = 0.0;
    for (const auto& [key, p] : law.probabilities) covered += p;
    law.tail_mass = std::max(0.0, 1.0 - covered);
    return law;
}

DiscreteLaw2D empirical_law(std::uint64_t x, std::uint64_t y, std::uint64_t a,
                            unsigned threads) {
    PairSample s = collect_pairs(x, a, y, PairFilter::kSquarefreePairCoprimeA,
                                 PairStat::kOmegaY, threads);
    if (s.total == 0) throw domain_error("empirical_law: E(x;a) = 0");
    DiscreteLaw2D law;
    for (const auto& [key, c] : s.counts)
        law.probabilities[key] =
            static_cast<double>(c) / static_cast<double>(s.total);
    return law;
}

double tv(const DiscreteLaw2D& p, const DiscreteLaw2D& q) {
    std::set<std::pair<std::uint32_t, std::uint32_t>> support;
    for (const auto& [key, m] : p.probabilities) support.insert(key);
    for (const auto& [key, m] : q.probabilities) support.insert(key);
    double l1 = 0.0;
    for (const auto& key : support)
        l1 += std::abs(p.mass(key.first, key.second) -
                       q.mass(key.first, key.second));
    return 0.5 * l1 + 0.5 * (p.tail_mass + q.tail_mass);
}

std::complex<double> poisson_charfn(double w, double lambda) {
    if (lambda <= 0.0) throw parameter_error("poisson_charfn: lambda > 0");
    const double s = std::sqrt(lambda);
    const std::complex<double> i{0.0, 1.0};
    return std::exp(lambda * (std::exp(i * (w / s)) - 1.0) - i * (w * s));
}

double roos_bound(const DensityTable& table) {
    double sum_sq = 0.0;
    for (const auto& [p, f] : table.entries) {
        (void)p;
        sum_sq += f * f;
    }
    const double factor =
        table.lambda > 1.0 ? 1.0 / table.lambda : 1.0;
    return 2.0 * factor * sum_sq;
}

}  // namespace ekp
