#include "ekpairs/sieve_counts.hpp"

#include <atomic>
#include <cmath>
#include <numeric>
#include <vector>

#include "ekpairs/kubilius.hpp"

namespace ekp {

namespace {

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

bool is_squarefree_u64(std::uint64_t n) {
    for (const auto& [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

void check_ceiling(std::uint64_t x) {
    if (x > kBruteForceCeiling)
        throw resource_error("brute-force ceiling exceeded");
}

}  // namespace

std::uint64_t count_pairs_progression(std::uint64_t x, std::uint64_t a,
                                      CongruenceSpec spec, unsigned threads) {
    check_ceiling(x);
    if (spec.q < 1 || spec.c >= spec.q)
        throw parameter_error("count_pairs_progression: need 0 <= c < q");
    std::atomic<std::uint64_t> count{0};
    for_each_window(x, a, 2, threads, [&](const ArithTable& t, std::uint64_t lo,
                                          std::uint64_t hi) {
        std::uint64_t local = 0;
        std::uint64_t n = lo + (spec.c + spec.q - lo % spec.q) % spec.q;
        for (; n <= hi; n += spec.q)
            if (t.at(n).squarefree && t.at(n + a).squarefree) ++local;
        count.fetch_add(local);
    });
    return count.load();
}

EulerProduct euler_E(std::uint64_t trunc) {
    if (trunc < 2) throw parameter_error("euler_E: trunc >= 2");
    EulerProduct ep;
    ep.truncation_prime = trunc;
    ep.value = 1.0;
    const PrimeSet ps = primes_up_to(trunc);
    for (std::uint64_t p : ps.primes) {
        const double pd = static_cast<double>(p);
        ep.value *= 1.0 - 2.0 / (pd * pd);
    }
    // sum_{p > T} 2/p^2 < 2/(T-1); the omitted factors multiply the partial
    // product by something in (exp(-c * 2/(T-1)), 1).
    ep.tail_bound =
        ep.value * (std::exp(2.0 / static_cast<double>(trunc - 1)) - 1.0);
    return ep;
}

double euler_E_of_a(std::uint64_t x, std::uint64_t a, std::uint64_t trunc) {
    // With (n, a) = 1 the only constraint at a prime p | a is p not| n:
    // n + a = n (mod p^2) can never vanish once p not| n, so the local
    // density is (1 - 1/p) regardless of the exponent of p in a.
    double v = static_cast<double>(x) * euler_E(trunc).value;
    for (const auto& [p, e] : factorize(a)) {
        (void)e;
        const double pd = static_cast<double>(p);
        if (p <= trunc) v /= 1.0 - 2.0 / (pd * pd);
        v *= 1.0 - 1.0 / pd;
    }
    return v;
}

// Exact local density at p of {n : n = c (mod p^vq), p^2 not| n,
// p^2 not| n+a}, by counting admissible residues mod p^max(vq,2).
double local_density(std::uint64_t p, unsigned vq, std::uint64_t c,
                     std::uint64_t a) {
    const std::uint64_t p2 = p * p;
    std::uint64_t pv = 1;
    for (unsigned i = 0; i < vq; ++i) pv *= p;
    const std::uint64_t mod = std::max(pv, p2);
    std::uint64_t cnt = 0;
    for (std::uint64_t r = c % pv; r < mod; r += pv)
        if (r % p2 != 0 && (r + a) % p2 != 0) ++cnt;
    return static_cast<double>(cnt) / static_cast<double>(mod);
}

double hb_main_term(std::uint64_t x, std::uint64_t a, CongruenceSpec spec,
                    std::uint64_t trunc) {
    const std::uint64_t q = spec.q, c = spec.c;
    if (q < 1 || c >= std::max<std::uint64_t>(q, 1))
        throw parameter_error("hb_main_term: need 0 <= c < q");
    if (q > 10'000'000)
        throw resource_error("hb_main_term: q too large for exact local densities");
    if (!is_squarefree_u64(std::gcd(q, c == 0 ? q : c)))
        throw domain_error("hb_main_term: (q,c) must be squarefree");

    // Main term x prod_p delta_p: generic primes contribute (1 - 2/p^2), or
    // (1 - 1/p^2) when p^2 | a (the two squarefree conditions coincide);
    // primes dividing q get exact residue counts.
    double v = static_cast<double>(x) * euler_E(trunc).value;
    for (const auto& [p, e] : factorize(q)) {
        const double pd = static_cast<double>(p);
        if (p <= trunc) v /= 1.0 - 2.0 / (pd * pd);
        v *= local_density(p, e, c, a);
    }
    for (const auto& [p, e] : factorize(a)) {
        if (e < 2 || q % p == 0) continue;
        const double pd = static_cast<double>(p);
        if (p <= trunc) v /= 1.0 - 2.0 / (pd * pd);
        v *= 1.0 - 1.0 / (pd * pd);
    }
    return v;
}

std::uint64_t count_pairs_double(std::uint64_t x, std::uint64_t a,
                                 std::uint64_t q, std::uint64_t r,
                                 bool coprime_to_a, unsigned threads) {
    check_ceiling(x);
    if (q < 1 || r < 1) throw parameter_error("count_pairs_double: q,r >= 1");
    std::atomic<std::uint64_t> count{0};
    for_each_window(x, a, 2, threads, [&](const ArithTable& t, std::uint64_t lo,
                                          std::uint64_t hi) {
        std::uint64_t local = 0;
        // n = 0 (mod q); step through that progression and test r | n+a.
        std::uint64_t n = lo + (q - lo % q) % q;
        if (n == 0) n = q;
        for (; n <= hi; n += q) {
            if ((n + a) % r) continue;
            if (!t.at(n).squarefree || !t.at(n + a).squarefree) continue;
            if (coprime_to_a && std::gcd(n, a) != 1) continue;
            ++local;
        }
        count.fetch_add(local);
    });
    return count.load();
}

double plain_main_term(std::uint64_t x, std::uint64_t a, std::uint64_t q,
                       std::uint64_t r, std::uint64_t trunc) {
    if (!is_squarefree_u64(q) || !is_squarefree_u64(r))
        throw domain_error("plain_main_term: q, r must be squarefree");
    if (a % std::gcd(q, r) != 0)
        throw domain_error("plain_main_term: (q,r) must divide a");
    // The pair q | n, r | n+a is the single congruence n = c (mod [q,r]);
    // reuse the progression main term on that congruence.
    const std::uint64_t l = std::lcm(q, r);
    std::uint64_t c = 0;
    bool found = false;
    for (std::uint64_t k = 0; k < r; ++k) {
        if ((k * q + a) % r == 0) {
            c = (k * q) % l;
            found = true;
            break;
        }
    }
    if (!found) throw domain_error("plain_main_term: incompatible congruences");
    return hb_main_term(x, a, {l, c}, trunc);
}

double nonplain_main_term(std::uint64_t x, std::uint64_t a, std::uint64_t q,
                          std::uint64_t r, std::uint64_t trunc) {
    if (!is_squarefree_u64(q) || !is_squarefree_u64(r))
        throw domain_error("nonplain_main_term: q, r must be squarefree");
    if (std::gcd(q, r) != 1)
        throw domain_error("nonplain_main_term: (q,r) = 1 required");
    double v = euler_E_of_a(x, a, trunc);
    for (const auto& [p, e] : factorize(q * r)) {
        (void)e;
        v *= density_squarefree(p);
    }
    return v;
}

std::uint64_t spiro_count(std::uint64_t x, std::uint32_t k, unsigned threads) {
    check_ceiling(x);
    std::atomic<std::uint64_t> count{0};
    for_each_window(x, 1, 2, threads, [&](const ArithTable& t, std::uint64_t lo,
                                          std::uint64_t hi) {
        std::uint64_t local = 0;
        for (std::uint64_t n = lo; n <= hi; ++n) {
            const ArithRecord& r1 = t.at(n);
            if (r1.omega == k && r1.squarefree && t.at(n + 1).squarefree)
                ++local;
        }
        count.fetch_add(local);
    });
    return count.load();
}

}  // namespace ekp
