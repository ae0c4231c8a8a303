#include "ekpairs/joint_stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>

namespace ekp {

namespace {

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

}  // namespace

Normalization log2x_normalization(std::uint64_t x) {
    const double c = std::log(std::log(static_cast<double>(x)));
    return Normalization{c, std::sqrt(c)};
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double gaussian2_cdf(double z1, double z2) {
    return normal_cdf(z1) * normal_cdf(z2);
}

double gaussian2_charfn(double u, double v) {
    return std::exp(-0.5 * (u * u + v * v));
}

PairSample collect_pairs(std::uint64_t x, std::uint64_t a,
                         std::optional<std::uint64_t> y, PairFilter filter,
                         PairStat stat, unsigned threads) {
    if (a < 1 || a >= x) throw parameter_error("collect_pairs: need 1 <= a < x");
    if (y && (*y < 2 || *y > x))
        throw parameter_error("collect_pairs: need 2 <= y <= x");
    if (stat == PairStat::kOmegaY && !y)
        throw parameter_error("collect_pairs: omega_y stat needs y");

    PairSample sample;
    sample.x = x;
    sample.a = a;
    sample.y = y.value_or(0);
    sample.filter = filter;
    sample.stat = stat;

    const std::uint64_t sieve_y = y.value_or(x);
    std::mutex mu;
    for_each_window(x, a, sieve_y, threads, [&](const ArithTable& t,
                                                std::uint64_t lo,
                                                std::uint64_t hi) {
        std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> local;
        std::uint64_t local_total = 0;
        for (std::uint64_t n = lo; n <= hi; ++n) {
            const ArithRecord& r1 = t.at(n);
            const ArithRecord& r2 = t.at(n + a);
            switch (filter) {
                case PairFilter::kAll:
                    break;
                case PairFilter::kSquarefreePair:
                    if (!r1.squarefree || !r2.squarefree) continue;
                    break;
                case PairFilter::kSquarefreePairCoprimeA:
                    if (!r1.squarefree || !r2.squarefree) continue;
                    if (gcd_u64(n, a) != 1) continue;
                    break;
            }
            const std::uint32_t k1 =
                stat == PairStat::kOmega ? r1.omega : r1.omega_y;
            const std::uint32_t k2 =
                stat == PairStat::kOmega ? r2.omega : r2.omega_y;
            ++local[{k1, k2}];
            ++local_total;
        }
        std::lock_guard<std::mutex> lock(mu);
        for (const auto& [key, c] : local) sample.counts[key] += c;
        sample.total += local_total;
    });
    return sample;
}

double sup_distance_vs_gaussian(const PairSample& sample,
                                const Normalization& norm) {
    if (sample.total == 0) throw domain_error("sup_distance: empty sample");

    std::vector<std::uint32_t> ks1, ks2;
    for (const auto& [key, c] : sample.counts) {
        ks1.push_back(key.first);
        ks2.push_back(key.second);
    }
    std::sort(ks1.begin(), ks1.end());
    ks1.erase(std::unique(ks1.begin(), ks1.end()), ks1.end());
    std::sort(ks2.begin(), ks2.end());
    ks2.erase(std::unique(ks2.begin(), ks2.end()), ks2.end());
    const std::size_t m1 = ks1.size(), m2 = ks2.size();

    // cum[i][j] = #pairs with k1 <= ks1[i-1] and k2 <= ks2[j-1].
    std::vector<std::vector<double>> cum(m1 + 1,
                                         std::vector<double>(m2 + 1, 0.0));
    for (const auto& [key, c] : sample.counts) {
        const std::size_t i =
            std::lower_bound(ks1.begin(), ks1.end(), key.first) - ks1.begin();
        const std::size_t j =
            std::lower_bound(ks2.begin(), ks2.end(), key.second) - ks2.begin();
        cum[i + 1][j + 1] += static_cast<double>(c);
    }
    for (std::size_t i = 1; i <= m1; ++i)
        for (std::size_t j = 1; j <= m2; ++j)
            cum[i][j] += cum[i - 1][j] + cum[i][j - 1] - cum[i - 1][j - 1];
    const double tot = static_cast<double>(sample.total);

    // Candidate abscissae: attained normalized values and +infinity.
    // The sup of |step - continuous| is attained at jump corners, approached
    // from either side in each coordinate.
    auto phi1 = [&](std::size_t i) {
        return i < m1 ? normal_cdf(norm.apply(ks1[i])) : 1.0;
    };
    auto phi2 = [&](std::size_t j) {
        return j < m2 ? normal_cdf(norm.apply(ks2[j])) : 1.0;
    };

    double sup = 0.0;
    for (std::size_t i = 0; i <= m1; ++i) {
        for (std::size_t j = 0; j <= m2; ++j) {
            const double g = phi1(i) * phi2(j);
            const std::size_t ri = std::min(i + 1, m1);
            const std::size_t rj = std::min(j + 1, m2);
            // Approach the corner (ks1[i], ks2[j]) from below/above in each
            // coordinate; F is right-continuous so "above" includes the atom.
            const double cands[4] = {cum[i][j], cum[ri][j], cum[i][rj],
                                     cum[ri][rj]};
            for (double c : cands)
                sup = std::max(sup, std::abs(c / tot - g));
        }
    }
    return sup;
}

std::complex<double> char_fn(const PairSample& sample,
                             const Normalization& norm, double u, double v) {
    if (sample.total == 0) throw domain_error("char_fn: empty sample");
    std::complex<double> acc{0.0, 0.0};
    for (const auto& [key, c] : sample.counts) {
        const double z1 = norm.apply(key.first);
        const double z2 = norm.apply(key.second);
        acc += static_cast<double>(c) * std::polar(1.0, u * z1 + v * z2);
    }
    return acc / static_cast<double>(sample.total);
}

long long correlation_mu_y_numerator(std::uint64_t x, std::uint64_t y,
                                     std::uint64_t a, unsigned threads) {
    if (y < 2 || y > x) throw parameter_error("correlation_mu_y: 2 <= y <= x");
    std::atomic<long long> num{0};
    for_each_window(x, a, y, threads, [&](const ArithTable& t, std::uint64_t lo,
                                          std::uint64_t hi) {
        long long local = 0;
        for (std::uint64_t n = lo; n <= hi; ++n)
            local += mu_y_value(t.at(n)) * mu_y_value(t.at(n + a));
        num.fetch_add(local);
    });
    return num.load();
}

double correlation_mu_y(std::uint64_t x, std::uint64_t y, std::uint64_t a,
                        unsigned threads) {
    return static_cast<double>(correlation_mu_y_numerator(x, y, a, threads)) /
           static_cast<double>(x);
}

std::complex<double> correlation_mu_u(std::uint64_t x, double u, double v,
                                      std::uint64_t a, unsigned threads) {
    if (std::abs(u) > 2 * M_PI + 1e-12 || std::abs(v) > 2 * M_PI + 1e-12)
        throw parameter_error("correlation_mu_u: |u|,|v| <= 2*pi");
    // The summand depends only on (omega(n), omega(n+a)) over squarefree
    // pairs, so the histogram gives the sum exactly.
    PairSample s = collect_pairs(x, a, std::nullopt, PairFilter::kSquarefreePair,
                                 PairStat::kOmega, threads);
    std::complex<double> acc{0.0, 0.0};
    for (const auto& [key, c] : s.counts)
        acc += static_cast<double>(c) *
               std::polar(1.0, u * key.first + v * key.second);
    return acc / static_cast<double>(x);
}

double moment(const PairSample& sample, const Normalization& norm, int e1,
              int e2) {
    if (sample.total == 0) throw domain_error("moment: empty sample");
    if ((e1 != 0 && e1 != 1) || (e2 != 0 && e2 != 1))
        throw parameter_error("moment: exponents are 0 or 1");
    double acc = 0.0;
    for (const auto& [key, c] : sample.counts) {
        double term = static_cast<double>(c);
        if (e1) {
            const double z = norm.apply(key.first);
            term *= z * z;
        }
        if (e2) {
            const double z = norm.apply(key.second);
            term *= z * z;
        }
        acc += term;
    }
    return acc / static_cast<double>(sample.total);
}

double esseen_diagnostic(const PairSample& sample, const Normalization& norm,
                         double T, double grid_step) {
    if (T < 1.0) throw parameter_error("esseen_diagnostic: T >= 1");
    const double inner = std::pow(T, -3.0);
    if (grid_step > inner)
        throw parameter_error("esseen_diagnostic: grid_step must be <= T^-3");

    // Four sign quadrants of {(u,v) : T^-3 < |u|,|v| <= T}, each an exact
    // product rectangle; composite midpoint rule per rectangle.
    const std::size_t n =
        static_cast<std::size_t>(std::ceil((T - inner) / grid_step));
    const double h = (T - inner) / static_cast<double>(n);
    double integral = 0.0;
    for (int s1 : {-1, 1}) {
        for (int s2 : {-1, 1}) {
            double quad = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double u = s1 * (inner + (i + 0.5) * h);
                for (std::size_t j = 0; j < n; ++j) {
                    const double v = s2 * (inner + (j + 0.5) * h);
                    const double diff =
                        std::abs(char_fn(sample, norm, u, v) -
                                 gaussian2_charfn(u, v));
                    quad += diff / std::abs(u * v);
                }
            }
            integral += quad * h * h;
        }
    }
    return integral + 1.0 / T;
}

}  // namespace ekp
