#include "ekpairs/erdos_mirsky.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace ekp {

namespace {

constexpr double kLog2 = std::numbers::ln2;
constexpr double kPi = std::numbers::pi;

double log2_of(double x) { return std::log(std::log(x)); }
double log3_of(double x) { return std::log(std::log(std::log(x))); }
double log4_of(double x) {
    return std::log(std::log(std::log(std::log(x))));
}

}  // namespace

double EMParams::L_y() const {
    return std::sqrt(std::log(std::log(static_cast<double>(y))));
}

bool EMParams::j_in_range() const {
    const double xd = static_cast<double>(x);
    const double bound =
        (1.0 - range_eps) * std::sqrt(log2_of(xd) * log3_of(xd));
    return std::abs(static_cast<double>(j)) <= bound;
}

std::uint64_t count_tau_ratio(std::uint64_t x, std::uint64_t y, int j,
                              bool squarefree_only, unsigned threads) {
    if (y < 2 || y > x) throw parameter_error("count_tau_ratio: 2 <= y <= x");
    if (j < -62 || j > 62) throw parameter_error("count_tau_ratio: |j| <= 62");
    std::atomic<std::uint64_t> count{0};
    for_each_window(x, 1, y, threads, [&](const ArithTable& t, std::uint64_t lo,
                                          std::uint64_t hi) {
        std::uint64_t local = 0;
        for (std::uint64_t n = lo; n <= hi; ++n) {
            const ArithRecord& r1 = t.at(n);
            const ArithRecord& r2 = t.at(n + 1);
            if (squarefree_only) {
                // On squarefree pairs tau_y = 2^{omega_y}, so the ratio
                // condition is omega_y(n) - omega_y(n+1) = j.
                if (!r1.squarefree || !r2.squarefree) continue;
                if (static_cast<int>(r1.omega_y) -
                        static_cast<int>(r2.omega_y) == j)
                    ++local;
            } else {
                const std::uint64_t lhs = r1.tau_y;
                const std::uint64_t rhs = r2.tau_y;
                const bool eq = j >= 0 ? (lhs == (rhs << j))
                                       : ((lhs << (-j)) == rhs);
                if (eq) ++local;
            }
        }
        count.fetch_add(local);
    });
    return count.load();
}

GEval g_eval(double u, double alpha, double L_y, unsigned terms) {
    if (alpha <= 0.0) throw parameter_error("g_eval: alpha > 0");
    if (terms < 10) throw parameter_error("g_eval: terms >= 10");
    const double t = u / L_y;
    const std::complex<double> A{alpha, t / kLog2};
    const double c = 2.0 * kPi / kLog2;

    std::complex<double> sum = 1.0 / A;
    for (unsigned k = 1; k <= terms; ++k) {
        const double ck = c * static_cast<double>(k);
        sum += 2.0 * A / (A * A + ck * ck);
    }
    // Integral-comparison tail: sum_{k>K} 2A/(A^2 + c^2 k^2)
    //   ~ int_{K+1/2}^inf = (2/c)(pi/2 - atan(c(K+1/2)/A)).
    const std::complex<double> edge =
        c * (static_cast<double>(terms) + 0.5) / A;
    sum += (2.0 / c) * (kPi / 2.0 - std::atan(edge));

    GEval out;
    out.value = sum;
    const double K = static_cast<double>(terms);
    out.tail_error = 8.0 * std::abs(A) / (c * c * K * K);
    return out;
}

std::complex<double> g_closed_form(double u, double alpha, double L_y) {
    // g = (log2 / 2i) cot((t - i alpha log2)/2) with t = u/L_y, written via
    // e^{-2iz} so the exponential stays bounded.
    const double t = u / L_y;
    const std::complex<double> i{0.0, 1.0};
    const std::complex<double> w =
        std::exp(-i * t) * std::exp(-alpha * kLog2);  // e^{-2iz}
    const std::complex<double> cot = i * (1.0 + w) / (1.0 - w);
    return kLog2 / (2.0 * i) * cot;
}

MellinCheck mellin_identity_check(const EMParams& params,
                                  const QuadratureGrid& grid,
                                  unsigned threads) {
    if (grid.step <= 0.0 || grid.step > 0.05)
        throw parameter_error("mellin_identity_check: step in (0, 0.05]");
    const double L = params.L_y();

    // Histogram of d = omega_y(n) - omega_y(n+1) over squarefree pairs.
    std::map<int, std::uint64_t> diff_counts;
    std::mutex mu;
    for_each_window(params.x, 1, params.y, threads,
                    [&](const ArithTable& t, std::uint64_t lo,
                        std::uint64_t hi) {
        std::map<int, std::uint64_t> local;
        for (std::uint64_t n = lo; n <= hi; ++n) {
            const ArithRecord& r1 = t.at(n);
            const ArithRecord& r2 = t.at(n + 1);
            if (r1.squarefree && r2.squarefree)
                ++local[static_cast<int>(r1.omega_y) -
                        static_cast<int>(r2.omega_y)];
        }
        std::lock_guard<std::mutex> lock(mu);
        for (auto [d, cnt] : local) diff_counts[d] += cnt;
    });

    std::uint64_t lhs = 0;
    if (auto it = diff_counts.find(params.j); it != diff_counts.end())
        lhs = it->second;

    // rhs = (1/(pi L log2)^2) int_{[0,2piL]^2} g(u) g(u')
    //       sum_d c_d e^{i((u-u')/L)(d-j)} du du'
    const double edge = 2.0 * kPi * L;
    const std::size_t n =
        static_cast<std::size_t>(std::ceil(edge / grid.step));
    const double h = edge / static_cast<double>(n);

    // One accuracy knob: the series truncation scales with the step so that
    // refining the grid also shrinks the series tail bias.
    const unsigned terms = static_cast<unsigned>(
        std::clamp(std::lround(20.0 / h), 250L, 20000L));
    std::vector<std::complex<double>> g_axis(n);
    for (std::size_t i = 0; i < n; ++i)
        g_axis[i] = g_eval((i + 0.5) * h, params.alpha, L, terms).value;

    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i1 = 0; i1 < n; ++i1) {
        const double u1 = (i1 + 0.5) * h;
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            const double u2 = (i2 + 0.5) * h;
            const double delta = (u1 - u2) / L;
            std::complex<double> w{0.0, 0.0};
            for (auto [d, cnt] : diff_counts)
                w += static_cast<double>(cnt) *
                     std::polar(1.0, delta * static_cast<double>(d - params.j));
            acc += g_axis[i1] * g_axis[i2] * w;
        }
    }
    acc *= h * h / ((kPi * L * kLog2) * (kPi * L * kLog2));

    MellinCheck out;
    out.lhs = lhs;
    out.rhs = acc.real();
    out.rel_err = std::abs(static_cast<double>(lhs) - out.rhs) /
                  std::max<double>(static_cast<double>(lhs), 1.0);
    return out;
}

std::complex<double> gaussian_window_integral(double L, int j,
                                              const QuadratureGrid& grid) {
    if (L < 1.0) throw parameter_error("gaussian_window_integral: L >= 1");
    const double edge = 2.0 * kPi * L;
    const std::size_t n =
        static_cast<std::size_t>(std::ceil(edge / grid.step));
    const double h = edge / static_cast<double>(n);
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i1 = 0; i1 < n; ++i1) {
        const double u = (i1 + 0.5) * h;
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            const double v = (i2 + 0.5) * h;
            const double d = u - v;
            acc += std::exp(-d * d) *
                   std::polar(1.0, -static_cast<double>(j) / L * d);
        }
    }
    return acc * (h * h);
}

double gaussian_window_main_term(double L, int j) {
    return 2.0 * std::pow(kPi, 1.5) * L *
           std::exp(-static_cast<double>(j) * j / (4.0 * L * L));
}

EMReport em_report(const EMParams& params, unsigned threads) {
    EMReport rep;
    rep.params = params;
    rep.count = count_tau_ratio(params.x, params.y, params.j, false, threads);
    rep.count_squarefree =
        count_tau_ratio(params.x, params.y, params.j, true, threads);
    const double xd = static_cast<double>(params.x);
    const double L = params.L_y();
    const double gauss =
        std::exp(-static_cast<double>(params.j) * params.j / (4.0 * L * L));
    rep.reference = gauss * xd / std::sqrt(log2_of(xd));
    rep.ratio = static_cast<double>(rep.count) / rep.reference;
    // Heuristic main-term scale for S*_j/E(x): the Gaussian window integral
    // with g ~ log2/2 at large alpha.
    const QuadratureGrid g{0.02};
    const double window =
        gaussian_window_integral(std::max(L, 1.0), params.j, g).real();
    const double gfac = kLog2 / 2.0;
    rep.heur_main = gfac * gfac * window /
                    ((kPi * L * kLog2) * (kPi * L * kLog2));

    if (!params.j_in_range())
        rep.warnings.push_back("j outside the (1-eps) sqrt(log2 x log3 x) range");
    const double beta =
        std::log(xd) / std::log(static_cast<double>(params.y));
    const double A = 21.0 * log3_of(xd) / log4_of(xd);
    const double B = std::sqrt(log2_of(xd)) /
                     (log3_of(xd) * log4_of(xd) * log4_of(xd));
    if (!(beta >= A && beta <= std::exp(B)))
        rep.warnings.push_back(
            "beta outside [A(x), e^{B(x)}]; asymptotic range degenerate at this scale");
    return rep;
}

}  // namespace ekp
