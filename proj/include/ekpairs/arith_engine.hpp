#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace ekp {

// Thrown when an argument violates an operation's precondition.
struct parameter_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a request exceeds a configured resource ceiling.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PrimeSet {
    std::uint64_t limit = 0;
    std::vector<std::uint64_t> primes;
};

// Half-open range [start, end), start >= 1.
struct Window {
    std::uint64_t start = 1;
    std::uint64_t end = 2;
};

// Per-integer factorization summary.
//   omega      - number of distinct prime factors
//   omega_y    - distinct prime factors <= y
//   squarefree - mu^2(n)
//   tau_y      - number of y-smooth divisors, prod_{p^k||n, p<=y} (k+1)
struct ArithRecord {
    std::uint8_t omega = 0;
    std::uint8_t omega_y = 0;
    bool squarefree = true;
    std::uint32_t tau_y = 1;
};

struct ArithTable {
    Window window;
    std::uint64_t y = 0;
    std::vector<ArithRecord> records;

    const ArithRecord& at(std::uint64_t n) const { return records[n - window.start]; }
};

inline constexpr std::uint64_t kDefaultSegmentSize = std::uint64_t{1} << 22;
inline constexpr std::uint64_t kDefaultPrimeLimitMax = std::uint64_t{1} << 32;

PrimeSet primes_up_to(std::uint64_t limit,
                      std::uint64_t configured_max = kDefaultPrimeLimitMax);

ArithTable sieve_window(Window window, std::uint64_t y, const PrimeSet& primes,
                        std::uint64_t segment_size_limit = kDefaultSegmentSize);

// mu_y(n) = mu^2(n) (-1)^{omega_y(n)}
int mu_y_value(const ArithRecord& rec);

// mu(n;u) = mu^2(n) e^{i u omega(n)}
std::complex<double> mu_u_value(const ArithRecord& rec, double u);

// Sieves [1, x + shift] in windows and hands each table to fn, in parallel.
// Every window is extended by `shift` so fn can read records for n + shift
// with n in the nominal window; fn receives the nominal half-open range.
// Accumulation inside fn must be commutative so results do not depend on
// thread count.
void for_each_window(std::uint64_t x, std::uint64_t shift, std::uint64_t y,
                     unsigned threads,
                     const std::function<void(const ArithTable&, std::uint64_t,
                                              std::uint64_t)>& fn,
                     std::uint64_t segment_size = kDefaultSegmentSize);

}  // namespace ekp
