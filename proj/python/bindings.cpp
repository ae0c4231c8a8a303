#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ekpairs/arith_engine.hpp"
#include "ekpairs/erdos_mirsky.hpp"
#include "ekpairs/joint_stats.hpp"
#include "ekpairs/kubilius.hpp"
#include "ekpairs/sieve_counts.hpp"

namespace py = pybind11;
using namespace ekp;

namespace {

PairFilter filter_from(const std::string& s) {
    if (s == "all") return PairFilter::kAll;
    if (s == "sf") return PairFilter::kSquarefreePair;
    if (s == "sfcoprime") return PairFilter::kSquarefreePairCoprimeA;
    throw parameter_error("filter must be all, sf or sfcoprime");
}

PairStat stat_from(const std::string& s) {
    if (s == "omega") return PairStat::kOmega;
    if (s == "omega_y") return PairStat::kOmegaY;
    throw parameter_error("stat must be omega or omega_y");
}

PairSample make_sample(std::uint64_t x, std::uint64_t a, std::uint64_t y,
                       const std::string& filter, const std::string& stat,
                       unsigned threads) {
    std::optional<std::uint64_t> yt;
    if (y > 0) yt = y;
    return collect_pairs(x, a, yt, filter_from(filter), stat_from(stat),
                         threads);
}

Normalization norm_for(std::uint64_t x, std::uint64_t a,
                       const std::string& center) {
    if (center == "log2") return log2x_normalization(x);
    if (center == "lambda") {
        const double lam = lambda_of(x, a);
        return Normalization{lam, std::sqrt(lam)};
    }
    throw parameter_error("center must be log2 or lambda");
}

py::dict law_to_dict(const DiscreteLaw2D& law) {
    py::dict d;
    for (const auto& [key, mass] : law.probabilities)
        d[py::make_tuple(key.first, key.second)] = mass;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "statistics of prime-factor counts of shifted integer pairs";

    py::register_exception<parameter_error>(m, "ParameterError",
                                            PyExc_ValueError);
    py::register_exception<domain_error>(m, "DomainError", PyExc_ValueError);
    py::register_exception<resource_error>(m, "ResourceError",
                                           PyExc_RuntimeError);

    m.def("primes_up_to",
          [](std::uint64_t limit) { return primes_up_to(limit).primes; },
          py::arg("limit"));

    m.def("sieve_range",
          [](std::uint64_t start, std::uint64_t end, std::uint64_t y) {
              const PrimeSet primes = primes_up_to(
                  static_cast<std::uint64_t>(
                      std::sqrt(static_cast<double>(end))) + 2);
              const ArithTable t =
                  sieve_window({start, end}, y, primes, end - start);
              py::list out;
              for (std::uint64_t n = start; n < end; ++n) {
                  const ArithRecord& r = t.at(n);
                  out.append(py::make_tuple(n, r.omega, r.omega_y,
                                            r.squarefree, r.tau_y));
              }
              return out;
          },
          py::arg("start"), py::arg("end"), py::arg("y"),
          "tuples (n, omega, omega_y, squarefree, tau_y) for n in [start, end)");

    m.def("collect_pairs",
          [](std::uint64_t x, std::uint64_t a, std::uint64_t y,
             const std::string& filter, const std::string& stat,
             unsigned threads) {
              const PairSample s = make_sample(x, a, y, filter, stat, threads);
              py::dict counts;
              for (const auto& [key, cnt] : s.counts)
                  counts[py::make_tuple(key.first, key.second)] = cnt;
              return py::make_tuple(counts, s.total);
          },
          py::arg("x"), py::arg("a") = 1, py::arg("y") = 0,
          py::arg("filter") = "sf", py::arg("stat") = "omega",
          py::arg("threads") = 1,
          "histogram of (stat(n), stat(n+a)) and the qualifying total");

    m.def("sup_distance",
          [](std::uint64_t x, std::uint64_t a, std::uint64_t y,
             const std::string& filter, const std::string& stat,
             const std::string& center, unsigned threads) {
              const PairSample s = make_sample(x, a, y, filter, stat, threads);
              const std::uint64_t cx =
                  stat == "omega_y" && y > 0 ? y : x;
              return sup_distance_vs_gaussian(s, norm_for(cx, a, center));
          },
          py::arg("x"), py::arg("a") = 1, py::arg("y") = 0,
          py::arg("filter") = "sf", py::arg("stat") = "omega",
          py::arg("center") = "log2", py::arg("threads") = 1);

    m.def("normal_cdf", &normal_cdf, py::arg("z"));
    m.def("gaussian2_cdf", &gaussian2_cdf, py::arg("z1"), py::arg("z2"));
    m.def("correlation_mu_y", &correlation_mu_y, py::arg("x"), py::arg("y"),
          py::arg("a") = 1, py::arg("threads") = 1);
    m.def("correlation_mu_u", &correlation_mu_u, py::arg("x"), py::arg("u"),
          py::arg("v"), py::arg("a") = 1, py::arg("threads") = 1);

    m.def("density_squarefree", &density_squarefree, py::arg("p"));
    m.def("lambda_of", &lambda_of, py::arg("y"), py::arg("a") = 1);
    m.def("model_law",
          [](std::uint64_t y, std::uint64_t a, double tail_eps) {
              return law_to_dict(model_law(make_density_table(y, a), tail_eps));
          },
          py::arg("y"), py::arg("a") = 1, py::arg("tail_eps") = 0.0);
    m.def("poisson2_law",
          [](double lam, double tail_eps) {
              return law_to_dict(poisson2_law(lam, tail_eps));
          },
          py::arg("lam"), py::arg("tail_eps") = 1e-15);
    m.def("empirical_law",
          [](std::uint64_t x, std::uint64_t y, std::uint64_t a,
             unsigned threads) {
              return law_to_dict(empirical_law(x, y, a, threads));
          },
          py::arg("x"), py::arg("y"), py::arg("a") = 1, py::arg("threads") = 1);
    m.def("tv_model_vs_poisson2",
          [](std::uint64_t y, std::uint64_t a) {
              const DensityTable t = make_density_table(y, a);
              return tv(model_law(t), poisson2_law(t.lambda));
          },
          py::arg("y"), py::arg("a") = 1);
    m.def("tv_empirical_vs_model",
          [](std::uint64_t x, std::uint64_t y, std::uint64_t a,
             unsigned threads) {
              return tv(empirical_law(x, y, a, threads),
                        model_law(make_density_table(y, a)));
          },
          py::arg("x"), py::arg("y"), py::arg("a") = 1, py::arg("threads") = 1);
    m.def("poisson_charfn", &poisson_charfn, py::arg("w"), py::arg("lam"));
    m.def("roos_bound",
          [](std::uint64_t y, std::uint64_t a) {
              return roos_bound(make_density_table(y, a));
          },
          py::arg("y"), py::arg("a") = 1);

    m.def("count_pairs_progression",
          [](std::uint64_t x, std::uint64_t a, std::uint64_t q,
             std::uint64_t c, unsigned threads) {
              return count_pairs_progression(x, a, {q, c}, threads);
          },
          py::arg("x"), py::arg("a") = 1, py::arg("q") = 1, py::arg("c") = 0,
          py::arg("threads") = 1);
    m.def("hb_main_term",
          [](std::uint64_t x, std::uint64_t a, std::uint64_t q,
             std::uint64_t c, std::uint64_t trunc) {
              return hb_main_term(x, a, {q, c}, trunc);
          },
          py::arg("x"), py::arg("a") = 1, py::arg("q") = 1, py::arg("c") = 0,
          py::arg("trunc") = 1'000'000);
    m.def("count_pairs_double", &count_pairs_double, py::arg("x"),
          py::arg("a"), py::arg("q"), py::arg("r"),
          py::arg("coprime_to_a") = false, py::arg("threads") = 1);
    m.def("plain_main_term", &plain_main_term, py::arg("x"), py::arg("a"),
          py::arg("q"), py::arg("r"), py::arg("trunc") = 1'000'000);
    m.def("nonplain_main_term", &nonplain_main_term, py::arg("x"),
          py::arg("a"), py::arg("q"), py::arg("r"),
          py::arg("trunc") = 1'000'000);
    m.def("euler_E",
          [](std::uint64_t trunc) {
              const EulerProduct ep = euler_E(trunc);
              return py::make_tuple(ep.value, ep.tail_bound);
          },
          py::arg("trunc") = 1'000'000, "(value, tail_bound)");
    m.def("spiro_count", &spiro_count, py::arg("x"), py::arg("k"),
          py::arg("threads") = 1);

    m.def("count_tau_ratio", &count_tau_ratio, py::arg("x"), py::arg("y"),
          py::arg("j"), py::arg("squarefree_only") = false,
          py::arg("threads") = 1);
    m.def("g_eval",
          [](double u, double alpha, double L_y, unsigned terms) {
              const GEval g = g_eval(u, alpha, L_y, terms);
              return py::make_tuple(g.value, g.tail_error);
          },
          py::arg("u"), py::arg("alpha"), py::arg("L_y"),
          py::arg("terms") = 2000, "(value, tail_error)");
    m.def("g_closed_form", &g_closed_form, py::arg("u"), py::arg("alpha"),
          py::arg("L_y"));
    m.def("mellin_identity_check",
          [](std::uint64_t x, std::uint64_t y, int j, double alpha,
             double step, unsigned threads) {
              EMParams p;
              p.x = x;
              p.y = y;
              p.j = j;
              p.alpha = alpha;
              const MellinCheck mc = mellin_identity_check(p, {step}, threads);
              return py::make_tuple(mc.lhs, mc.rhs, mc.rel_err);
          },
          py::arg("x"), py::arg("y"), py::arg("j"), py::arg("alpha") = 10.0,
          py::arg("step") = 0.01, py::arg("threads") = 1,
          "(lhs, rhs, rel_err)");
    m.def("gaussian_window_integral",
          [](double L, int j, double step) {
              return gaussian_window_integral(L, j, {step});
          },
          py::arg("L"), py::arg("j"), py::arg("step") = 0.01);
    m.def("em_report",
          [](std::uint64_t x, std::uint64_t y, int j, double alpha,
             unsigned threads) {
              EMParams p;
              p.x = x;
              p.y = y;
              p.j = j;
              p.alpha = alpha;
              const EMReport r = em_report(p, threads);
              py::dict d;
              d["count"] = r.count;
              d["count_squarefree"] = r.count_squarefree;
              d["reference"] = r.reference;
              d["ratio"] = r.ratio;
              d["heur_main"] = r.heur_main;
              d["warnings"] = r.warnings;
              return d;
          },
          py::arg("x"), py::arg("y"), py::arg("j"), py::arg("alpha") = 10.0,
          py::arg("threads") = 1);
}
