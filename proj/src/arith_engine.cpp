#include "ekpairs/arith_engine.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace ekp {

PrimeSet primes_up_to(std::uint64_t limit, std::uint64_t configured_max) {
    if (limit < 2) throw parameter_error("primes_up_to: limit must be >= 2");
    if (limit > configured_max)
        throw resource_error("primes_up_to: limit exceeds configured maximum");
    std::vector<bool> composite(limit + 1, false);
    PrimeSet out;
    out.limit = limit;
    for (std::uint64_t p = 2; p <= limit; ++p) {
        if (composite[p]) continue;
        out.primes.push_back(p);
        for (std::uint64_t m = p * p; m <= limit; m += p) composite[m] = true;
    }
    return out;
}

ArithTable sieve_window(Window window, std::uint64_t y, const PrimeSet& primes,
                        std::uint64_t segment_size_limit) {
    if (window.start < 1 || window.end <= window.start)
        throw parameter_error("sieve_window: bad window");
    if (window.end - window.start > segment_size_limit)
        throw resource_error("sieve_window: segment exceeds memory budget");
    const std::uint64_t root = static_cast<std::uint64_t>(
        std::sqrt(static_cast<double>(window.end - 1)));
    if (primes.limit < root)
        throw parameter_error("sieve_window: prime list too short for window");
    if (y < 2) throw parameter_error("sieve_window: y out of range");

    const std::uint64_t len = window.end - window.start;
    ArithTable table;
    table.window = window;
    table.y = y;
    table.records.assign(len, ArithRecord{});

    // Residual cofactor after dividing out all primes <= sqrt(end).
    std::vector<std::uint64_t> rem(len);
    for (std::uint64_t i = 0; i < len; ++i) rem[i] = window.start + i;

    for (std::uint64_t p : primes.primes) {
        if (p > root) break;
        const std::uint64_t first = ((window.start + p - 1) / p) * p;
        for (std::uint64_t m = first; m < window.end; m += p) {
            const std::uint64_t i = m - window.start;
            ArithRecord& r = table.records[i];
            unsigned k = 0;
            while (rem[i] % p == 0) {
                rem[i] /= p;
                ++k;
            }
            r.omega += 1;
            if (k >= 2) r.squarefree = false;
            if (p <= y) {
                r.omega_y += 1;
                r.tau_y *= (k + 1);
            }
        }
    }
    for (std::uint64_t i = 0; i < len; ++i) {
        if (rem[i] > 1) {
            // One extra prime factor > sqrt(end); its exponent is 1.
            ArithRecord& r = table.records[i];
            r.omega += 1;
            if (rem[i] <= y) {
                r.omega_y += 1;
                r.tau_y *= 2;
            }
        }
    }
    return table;
}

int mu_y_value(const ArithRecord& rec) {
    if (!rec.squarefree) return 0;
    return (rec.omega_y & 1) ? -1 : 1;
}

std::complex<double> mu_u_value(const ArithRecord& rec, double u) {
    if (!rec.squarefree) return {0.0, 0.0};
    return std::polar(1.0, u * static_cast<double>(rec.omega));
}

void for_each_window(std::uint64_t x, std::uint64_t shift, std::uint64_t y,
                     unsigned threads,
                     const std::function<void(const ArithTable&, std::uint64_t,
                                              std::uint64_t)>& fn,
                     std::uint64_t segment_size) {
    if (x < 1) throw parameter_error("for_each_window: x < 1");
    if (threads == 0) threads = 1;
    // Memory ceiling override; windows shrink but results are unchanged.
    if (const char* env = std::getenv("ARITHSTAT_SEGMENT_SIZE")) {
        const std::uint64_t v = std::strtoull(env, nullptr, 10);
        if (v >= 1024 && v < segment_size) segment_size = v;
    }
    const std::uint64_t top = x + shift;  // need records up to n = x + shift
    const std::uint64_t root = static_cast<std::uint64_t>(
        std::sqrt(static_cast<double>(top))) + 1;
    const PrimeSet primes = primes_up_to(std::max<std::uint64_t>(root, 2));

    const std::uint64_t nwindows = (x + segment_size - 1) / segment_size;
    std::atomic<std::uint64_t> next{0};

    auto worker = [&]() {
        for (;;) {
            const std::uint64_t w = next.fetch_add(1);
            if (w >= nwindows) return;
            const std::uint64_t lo = 1 + w * segment_size;
            const std::uint64_t hi = std::min(x, lo + segment_size - 1);
            Window win{lo, hi + 1 + shift};
            ArithTable table =
                sieve_window(win, y, primes, segment_size + shift + 1);
            fn(table, lo, hi);
        }
    };

    if (threads == 1 || nwindows == 1) {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

}  // namespace ekp
