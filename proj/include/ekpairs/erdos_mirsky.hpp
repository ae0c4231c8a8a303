#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "ekpairs/arith_engine.hpp"

namespace ekp {

struct EMParams {
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    int j = 0;
    double alpha = 10.0;
    double range_eps = 0.1;

    // L_y = sqrt(log log y)
    double L_y() const;
    // |j| <= (1 - eps) sqrt(log_2 x * log_3 x)
    bool j_in_range() const;
};

struct QuadratureGrid {
    double step = 0.01;
};

struct EMReport {
    EMParams params;
    std::uint64_t count = 0;            // S_j(x;y)
    std::uint64_t count_squarefree = 0; // S*_j(x;y)
    double reference = 0.0;             // e^{-j^2/4L_y^2} x / sqrt(log_2 x)
    double ratio = 0.0;
    double heur_main = 0.0;             // main-term scale M from the Gaussian window
    std::vector<std::string> warnings;
};

// S_j(x;y) (squarefree_only = false) or S*_j(x;y) (true): count of n <= x
// with tau_y(n) = 2^j tau_y(n+1), exact integer comparison.
std::uint64_t count_tau_ratio(std::uint64_t x, std::uint64_t y, int j,
                              bool squarefree_only, unsigned threads = 1);

// g(u) = lim_M sum_{|k|<=M} 1/(alpha + i(u/L_y + 2 pi k)/log 2), evaluated
// as a symmetric partial sum plus an integral-comparison tail correction.
struct GEval {
    std::complex<double> value;
    double tail_error = 0.0;
};
GEval g_eval(double u, double alpha, double L_y, unsigned terms);

// Closed form of the same limit via the cotangent identity; used as a
// cross-check of the series route.
std::complex<double> g_closed_form(double u, double alpha, double L_y);

struct MellinCheck {
    std::uint64_t lhs = 0;
    double rhs = 0.0;
    double rel_err = 0.0;
};

// Verifies S*_j(x;y) against the double Mellin integral with raw
// (unnormalized) pair sums, composite midpoint rule at grid.step.
MellinCheck mellin_identity_check(const EMParams& params,
                                  const QuadratureGrid& grid,
                                  unsigned threads = 1);

// Integral of e^{-(u-u')^2 - i(j/L)(u-u')} over [0, 2 pi L]^2; main term
// 2 pi^{3/2} L e^{-j^2/4L^2}.
std::complex<double> gaussian_window_integral(double L, int j,
                                              const QuadratureGrid& grid);

double gaussian_window_main_term(double L, int j);

EMReport em_report(const EMParams& params, unsigned threads = 1);

}  // namespace ekp
