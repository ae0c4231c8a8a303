#pragma once

#include <cstdint>

#include "ekpairs/arith_engine.hpp"

namespace ekp {

// Single congruence n = c (mod q).
struct CongruenceSpec {
    std::uint64_t q = 1;
    std::uint64_t c = 0;
};

struct EulerProduct {
    std::uint64_t truncation_prime = 0;
    double value = 0.0;
    double tail_bound = 0.0;
};

inline constexpr std::uint64_t kBruteForceCeiling = 100'000'000;

// Exact count of n <= x with n = c (mod q) and n, n+a both squarefree.
std::uint64_t count_pairs_progression(std::uint64_t x, std::uint64_t a,
                                      CongruenceSpec spec,
                                      unsigned threads = 1);

// Truncated Euler product prod_{p <= trunc} (1 - 2 p^-2) with a recorded
// tail bound from sum_{p > T} p^-2 < 1/(T-1).
EulerProduct euler_E(std::uint64_t trunc);

// Main term of the squarefree-pair count in a progression:
// E_q(x)/q * prod_{p || (q, c(c+a))} (1 - 1/p)
//         * prod_{p^2 || (q, c+a)} (1 - 1/p^2)
//         * prod_{p^2 || a} (1 + 1/p^2)
double hb_main_term(std::uint64_t x, std::uint64_t a, CongruenceSpec spec,
                    std::uint64_t trunc);

// Exact count of n <= x with q | n, r | n+a, both squarefree;
// coprime_to_a additionally requires (n,a) = 1.
std::uint64_t count_pairs_double(std::uint64_t x, std::uint64_t a,
                                 std::uint64_t q, std::uint64_t r,
                                 bool coprime_to_a = false,
                                 unsigned threads = 1);

// Main term of the unrestricted double-congruence count:
// x phi([q,r])/[q,r]^2 prod_{p^2||a}(1 + 1/p^2) prod_{p not| [q,r]}(1 - 2/p^2)
double plain_main_term(std::uint64_t x, std::uint64_t a, std::uint64_t q,
                       std::uint64_t r, std::uint64_t trunc);

// Main term of the (n,a)=1 restricted count: E(x;a) prod_{p|qr} f(p),
// valid for squarefree q, r with (q,r) = 1.
double nonplain_main_term(std::uint64_t x, std::uint64_t a, std::uint64_t q,
                          std::uint64_t r, std::uint64_t trunc);

// E(x;a): density of n <= x with n, n+a squarefree and (n,a) = 1; the local
// factor is (1 - 2/p^2) for p not| a and (1 - 1/p) for p | a.
double euler_E_of_a(std::uint64_t x, std::uint64_t a, std::uint64_t trunc);

// Count of n <= x with n(n+1) squarefree and omega(n) = k.
std::uint64_t spiro_count(std::uint64_t x, std::uint32_t k,
                          unsigned threads = 1);

}  // namespace ekp
