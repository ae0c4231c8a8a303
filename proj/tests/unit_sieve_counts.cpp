#include <cmath>

#include "doctest.h"
#include "ekpairs/joint_stats.hpp"
#include "ekpairs/sieve_counts.hpp"
#include "oracles.hpp"

using namespace ekp;

namespace {

// Direct count of n <= x with n = c (mod q) and n, n+a both squarefree.
std::uint64_t brute_progression(std::uint64_t x, std::uint64_t a,
                                std::uint64_t q, std::uint64_t c) {
    std::uint64_t count = 0;
    for (std::uint64_t n = 1; n <= x; ++n) {
        if (n % q != c) continue;
        if (oracle::factor(n, 2).squarefree &&
            oracle::factor(n + a, 2).squarefree)
            ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("count_pairs_progression hand values") {
    // x = 10, a = 1, no congruence: n in {1, 2, 5, 6, 10}.
    CHECK(count_pairs_progression(10, 1, {1, 0}) == 5);
    // Odd n only: {1, 5}.
    CHECK(count_pairs_progression(10, 1, {2, 1}) == 2);
    // n = 4 (mod 8) is never squarefree.
    CHECK(count_pairs_progression(1000, 1, {8, 4}) == 0);
    CHECK_THROWS_AS(count_pairs_progression(10, 1, {3, 5}), parameter_error);
    CHECK_THROWS_AS(count_pairs_progression(kBruteForceCeiling + 1, 1, {1, 0}),
                    resource_error);
}

TEST_CASE("count_pairs_progression equals brute force") {
    for (std::uint64_t q : {1ull, 2ull, 3ull, 5ull, 6ull}) {
        for (std::uint64_t c = 0; c < q; ++c) {
            CHECK(count_pairs_progression(2000, 1, {q, c}) ==
                  brute_progression(2000, 1, q, c));
            CHECK(count_pairs_progression(2000, 4, {q, c}) ==
                  brute_progression(2000, 4, q, c));
        }
    }
}

TEST_CASE("progression counts partition the total") {
    const std::uint64_t x = 10'000;
    for (std::uint64_t a : {1ull, 3ull}) {
        const std::uint64_t total = count_pairs_progression(x, a, {1, 0});
        for (std::uint64_t q : {2ull, 4ull, 7ull}) {
            std::uint64_t sum = 0;
            for (std::uint64_t c = 0; c < q; ++c)
                sum += count_pairs_progression(x, a, {q, c});
            CHECK(sum == total);
        }
    }
}

TEST_CASE("euler_E exact truncations and tail bound") {
    CHECK(euler_E(2).value == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(euler_E(3).value == doctest::Approx(7.0 / 18.0).epsilon(1e-15));
    const EulerProduct a = euler_E(1'000'000);
    const EulerProduct b = euler_E(4'000'000);
    CHECK(std::abs(a.value - b.value) <= a.tail_bound);
    CHECK(a.value == doctest::Approx(0.3226340989).epsilon(1e-6));
    CHECK_THROWS_AS(euler_E(1), parameter_error);
}

TEST_CASE("hb_main_term validation") {
    CHECK_THROWS_AS(hb_main_term(100, 1, {4, 0}, 100), ekp::domain_error);
    CHECK_THROWS_AS(hb_main_term(100, 1, {12, 4}, 100), ekp::domain_error);
    CHECK_THROWS_AS(hb_main_term(100, 1, {2, 3}, 100), parameter_error);
    CHECK_THROWS_AS(hb_main_term(100, 1, {20'000'000, 1}, 100), resource_error);
    // (q, c) squarefree is fine even when q itself is not.
    CHECK_NOTHROW(hb_main_term(100, 1, {4, 1}, 100));
}

TEST_CASE("hb_main_term tracks exact counts within 2% at x = 1e6") {
    struct Row {
        std::uint64_t a, q, c;
    };
    const Row rows[] = {
        {1, 1, 0}, {1, 2, 1}, {1, 3, 0}, {1, 3, 2}, {2, 2, 1},
        {4, 2, 1},            // p = 2 divides both q and a
        {3, 3, 0},            // p = 3 divides q, c and c + a
        {4, 3, 2}, {12, 6, 5}, {9, 5, 2},
    };
    const std::uint64_t x = 1'000'000;
    for (const Row& row : rows) {
        const std::uint64_t count =
            count_pairs_progression(x, row.a, {row.q, row.c});
        const double main = hb_main_term(x, row.a, {row.q, row.c}, 100'000);
        REQUIRE(count > 1000);  // keep the relative comparison meaningful
        CHECK(main / static_cast<double>(count) ==
              doctest::Approx(1.0).epsilon(0.02));
    }
    // Degenerate progression: n = 0 (mod 2) with n + 2 even forces 4 | n(n+2)
    // infinitely often; here every n = 2 (mod 4) or 0 (mod 4) fails, count 0.
    CHECK(count_pairs_progression(x, 2, {2, 0}) == 0);
    CHECK(hb_main_term(x, 2, {2, 0}, 1000) == doctest::Approx(0.0));
}

TEST_CASE("hb_main_term with q = 1 reduces to the Euler product") {
    const double v = hb_main_term(1'000'000, 1, {1, 0}, 10'000);
    CHECK(v == doctest::Approx(1e6 * euler_E(10'000).value).epsilon(1e-14));
}

TEST_CASE("count_pairs_double hand values and brute force") {
    // q = r = 2, a = 1: n and n+1 cannot both be even.
    CHECK(count_pairs_double(1000, 1, 2, 2) == 0);
    std::uint64_t brute = 0;
    for (std::uint64_t n = 1; n <= 2000; ++n) {
        if (n % 2 || (n + 3) % 5) continue;
        if (oracle::factor(n, 2).squarefree &&
            oracle::factor(n + 3, 2).squarefree)
            ++brute;
    }
    CHECK(count_pairs_double(2000, 3, 2, 5) == brute);
    CHECK_THROWS_AS(count_pairs_double(100, 1, 0, 2), parameter_error);
}

TEST_CASE("plain and nonplain main terms agree with counts") {
    const std::uint64_t x = 1'000'000;
    const std::uint64_t count = count_pairs_double(x, 1, 2, 3);
    const double plain = plain_main_term(x, 1, 2, 3, 100'000);
    const double nonplain = nonplain_main_term(x, 1, 2, 3, 100'000);
    CHECK(plain / static_cast<double>(count) ==
          doctest::Approx(1.0).epsilon(0.02));
    // For a = 1 the restricted and unrestricted densities coincide.
    CHECK(plain == doctest::Approx(nonplain).epsilon(1e-9));

    const std::uint64_t ccount = count_pairs_double(x, 4, 3, 5, true);
    const double cmain = nonplain_main_term(x, 4, 3, 5, 100'000);
    CHECK(cmain / static_cast<double>(ccount) ==
          doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("plain and nonplain main term validation") {
    CHECK_THROWS_AS(plain_main_term(100, 1, 4, 3, 100), ekp::domain_error);
    CHECK_THROWS_AS(plain_main_term(100, 1, 2, 2, 100), ekp::domain_error);
    CHECK_THROWS_AS(nonplain_main_term(100, 1, 2, 4, 100), ekp::domain_error);
    CHECK_THROWS_AS(nonplain_main_term(100, 1, 6, 3, 100), ekp::domain_error);
}

TEST_CASE("spiro_count hand values and partition") {
    // x = 10, squarefree pairs n in {1, 2, 5, 6, 10}.
    CHECK(spiro_count(10, 0) == 1);  // n = 1
    CHECK(spiro_count(10, 1) == 2);  // n = 2, 5
    CHECK(spiro_count(10, 2) == 2);  // n = 6, 10
    CHECK(spiro_count(10, 3) == 0);
    const std::uint64_t x = 10'000;
    std::uint64_t sum = 0;
    for (std::uint32_t k = 0; k <= 8; ++k) sum += spiro_count(x, k);
    CHECK(sum == count_pairs_progression(x, 1, {1, 0}));
}
