// arithstat: command-line front end for the pair-statistics library.
//
// Subcommands: sieve, ek2, chowla, model, sievecheck, em.
// Reports are written to --out (default stdout) as CSV or JSON and embed the
// resolved configuration, so identical configs give byte-identical files.

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ekpairs/arith_engine.hpp"
#include "ekpairs/erdos_mirsky.hpp"
#include "ekpairs/joint_stats.hpp"
#include "ekpairs/kubilius.hpp"
#include "ekpairs/sieve_counts.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using json = nlohmann::ordered_json;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t parse_count(const std::string& s, const std::string& flag) {
    char* end = nullptr;
    const long double v = std::strtold(s.c_str(), &end);
    if (end == nullptr || *end != '\0' || !(v >= 1) || v > 9.0e15L ||
        v != std::floor(v))
        throw ekp::parameter_error(flag + ": expected a positive integer (scientific notation allowed)");
    return static_cast<std::uint64_t>(v);
}

struct Output {
    std::string path;  // empty = stdout

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f) throw ekp::resource_error("cannot open output file: " + path);
        f << text;
    }
};

json config_json(const std::map<std::string, json>& extra) {
    json cfg;
    cfg["version"] = kVersion;
    for (const auto& [k, v] : extra) cfg[k] = v;
    return cfg;
}

std::string csv_header_comment(const json& cfg) {
    std::string out = "# arithstat " + std::string(kVersion) + " " + cfg.dump();
    out += "\n";
    return out;
}

std::uint64_t resolve_y(std::uint64_t x, std::uint64_t y, double beta) {
    if (y > 0) return y;
    if (beta > 0) {
        const double v = std::pow(static_cast<double>(x), 1.0 / beta);
        const std::uint64_t r = static_cast<std::uint64_t>(std::llround(v));
        return std::max<std::uint64_t>(r, 2);
    }
    return x;  // default: no truncation
}

// ---- ek2 ----------------------------------------------------------------

int run_ek2(std::uint64_t x, std::uint64_t a, std::uint64_t y, double beta,
            const std::string& center, const std::string& filter_name,
            const std::string& stat_name, double T, double step,
            unsigned threads, const std::string& format, const Output& out) {
    const std::uint64_t yr = resolve_y(x, y, beta);
    ekp::PairFilter filter = ekp::PairFilter::kSquarefreePair;
    if (filter_name == "all") filter = ekp::PairFilter::kAll;
    else if (filter_name == "sf") filter = ekp::PairFilter::kSquarefreePair;
    else if (filter_name == "sfcoprime")
        filter = ekp::PairFilter::kSquarefreePairCoprimeA;
    else throw ekp::parameter_error("ek2: unknown filter " + filter_name);

    const ekp::PairStat stat =
        stat_name == "omega_y" ? ekp::PairStat::kOmegaY : ekp::PairStat::kOmega;
    std::optional<std::uint64_t> ytrunc;
    if (stat == ekp::PairStat::kOmegaY) ytrunc = yr;

    ekp::Normalization norm;
    if (center == "log2") {
        norm = ekp::log2x_normalization(
            stat == ekp::PairStat::kOmegaY ? yr : x);
    } else if (center == "lambda") {
        const double lam = ekp::lambda_of(
            stat == ekp::PairStat::kOmegaY ? yr : x, a);
        norm = ekp::Normalization{lam, std::sqrt(lam)};
    } else {
        throw ekp::parameter_error("ek2: unknown center " + center);
    }

    const ekp::PairSample sample =
        ekp::collect_pairs(x, a, ytrunc, filter, stat, threads);
    const double sup = ekp::sup_distance_vs_gaussian(sample, norm);
    const double esseen =
        T > 0 ? ekp::esseen_diagnostic(sample, norm, T,
                                       step > 0 ? step : 0.5 / (T * T * T))
              : -1.0;

    json cfg = config_json({{"command", "ek2"},
                            {"x", x},
                            {"a", a},
                            {"y", ytrunc ? json(yr) : json(nullptr)},
                            {"center", center},
                            {"filter", filter_name},
                            {"stat", stat_name},
                            {"T", T},
                            {"threads", threads}});

    if (format == "json") {
        json rep;
        rep["config"] = cfg;
        rep["total"] = sample.total;
        rep["sup_distance"] = sup;
        if (T > 0) rep["esseen_diagnostic"] = esseen;
        json hist = json::array();
        for (const auto& [key, cnt] : sample.counts)
            hist.push_back({key.first, key.second, cnt});
        rep["histogram"] = hist;
        out.write(rep.dump(2) + "\n");
        return 0;
    }

    // CSV: right-continuous empirical CDF at the attained corner grid.
    std::set<std::uint32_t> k1s, k2s;
    for (const auto& [key, cnt] : sample.counts) {
        k1s.insert(key.first);
        k2s.insert(key.second);
    }
    std::string text = csv_header_comment(cfg);
    text += "z1,z2,F,Phi2,diff\n";
    for (std::uint32_t k1 : k1s) {
        for (std::uint32_t k2 : k2s) {
            std::uint64_t cum = 0;
            for (const auto& [key, cnt] : sample.counts)
                if (key.first <= k1 && key.second <= k2) cum += cnt;
            const double z1 = norm.apply(static_cast<double>(k1));
            const double z2 = norm.apply(static_cast<double>(k2));
            const double F = static_cast<double>(cum) /
                             static_cast<double>(sample.total);
            const double P = ekp::gaussian2_cdf(z1, z2);
            text += fmt_double(z1) + "," + fmt_double(z2) + "," +
                    fmt_double(F) + "," + fmt_double(P) + "," +
                    fmt_double(F - P) + "\n";
        }
    }
    text += "sup_distance," + fmt_double(sup) + "\n";
    if (T > 0) text += "esseen_diagnostic," + fmt_double(esseen) + "\n";
    out.write(text);
    return 0;
}

// ---- chowla -------------------------------------------------------------

int run_chowla(std::uint64_t x, std::uint64_t a, std::uint64_t y, double beta,
               double u, double v, unsigned threads, const std::string& format,
               const Output& out) {
    const std::uint64_t yr = resolve_y(x, y, beta);
    const long long num = ekp::correlation_mu_y_numerator(x, yr, a, threads);
    const double normalized =
        static_cast<double>(num) / static_cast<double>(x);
    const bool with_u = !std::isnan(u) && !std::isnan(v);
    std::complex<double> cu;
    if (with_u) cu = ekp::correlation_mu_u(x, u, v, a, threads);

    json cfg = config_json({{"command", "chowla"},
                            {"x", x},
                            {"y", yr},
                            {"a", a},
                            {"threads", threads}});
    if (with_u) {
        cfg["u"] = u;
        cfg["v"] = v;
    }
    if (format == "json") {
        json rep;
        rep["config"] = cfg;
        rep["sum"] = num;
        rep["normalized"] = normalized;
        if (with_u) {
            rep["mu_u_re"] = cu.real();
            rep["mu_u_im"] = cu.imag();
            rep["mu_u_abs"] = std::abs(cu);
        }
        out.write(rep.dump(2) + "\n");
        return 0;
    }
    std::string text = csv_header_comment(cfg);
    text += "sum,normalized\n";
    text += std::to_string(num) + "," + fmt_double(normalized) + "\n";
    if (with_u)
        text += "mu_u_re,mu_u_im\n" + fmt_double(cu.real()) + "," +
                fmt_double(cu.imag()) + "\n";
    out.write(text);
    return 0;
}

// ---- model --------------------------------------------------------------

int run_model(std::uint64_t x, std::uint64_t a, std::uint64_t y, double beta,
              double tail_eps, unsigned threads, const std::string& format,
              const Output& out) {
    const std::uint64_t yr = resolve_y(x, y, beta);
    const ekp::DensityTable table = ekp::make_density_table(yr, a);
    const ekp::DiscreteLaw2D model = ekp::model_law(table, tail_eps);
    const ekp::DiscreteLaw2D pois = ekp::poisson2_law(table.lambda);
    const ekp::DiscreteLaw2D emp = ekp::empirical_law(x, yr, a, threads);

    const double tv_em = ekp::tv(emp, model);
    const double tv_mp = ekp::tv(model, pois);
    const double roos = ekp::roos_bound(table);

    json cfg = config_json({{"command", "model"},
                            {"x", x},
                            {"y", yr},
                            {"a", a},
                            {"tail_eps", tail_eps},
                            {"threads", threads}});
    if (format == "json") {
        json rep;
        rep["config"] = cfg;
        rep["lambda"] = table.lambda;
        rep["roos_bound"] = roos;
        rep["tv_empirical_model"] = tv_em;
        rep["tv_model_poisson2"] = tv_mp;
        rep["model_tail_mass"] = model.tail_mass;
        out.write(rep.dump(2) + "\n");
        return 0;
    }
    std::string text = csv_header_comment(cfg);
    text += "law,k1,k2,mass\n";
    const auto emit = [&](const char* name, const ekp::DiscreteLaw2D& law) {
        for (const auto& [key, mass] : law.probabilities)
            text += std::string(name) + "," + std::to_string(key.first) + "," +
                    std::to_string(key.second) + "," + fmt_double(mass) + "\n";
    };
    emit("empirical", emp);
    emit("model", model);
    emit("poisson2", pois);
    text += "tv_empirical_model," + fmt_double(tv_em) + ",,\n";
    text += "tv_model_poisson2," + fmt_double(tv_mp) + ",,\n";
    text += "roos_bound," + fmt_double(roos) + ",,\n";
    out.write(text);
    return 0;
}

// ---- sieve --------------------------------------------------------------

int run_sieve(std::uint64_t x, std::uint64_t y, std::uint64_t start,
              const std::string& format, const Output& out) {
    if (x - start > 10'000'000)
        throw ekp::resource_error("sieve: dump range larger than 1e7");
    const std::uint64_t yr = y > 0 ? y : x;
    const ekp::PrimeSet primes = ekp::primes_up_to(
        static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x))) + 2);
    const ekp::ArithTable t =
        ekp::sieve_window({start, x + 1}, yr, primes, x + 1 - start);

    json cfg = config_json({{"command", "sieve"},
                            {"x", x},
                            {"y", yr},
                            {"start", start}});
    if (format == "json") {
        json rep;
        rep["config"] = cfg;
        json rows = json::array();
        for (std::uint64_t n = start; n <= x; ++n) {
            const ekp::ArithRecord& r = t.at(n);
            rows.push_back({n, r.omega, r.omega_y,
                            static_cast<int>(r.squarefree), r.tau_y});
        }
        rep["records"] = rows;
        out.write(rep.dump(2) + "\n");
        return 0;
    }
    std::string text = csv_header_comment(cfg);
    text += "n,omega,omega_y,squarefree,tau_y\n";
    for (std::uint64_t n = start; n <= x; ++n) {
        const ekp::ArithRecord& r = t.at(n);
        text += std::to_string(n) + "," + std::to_string(r.omega) + "," +
                std::to_string(r.omega_y) + "," +
                std::to_string(static_cast<int>(r.squarefree)) + "," +
                std::to_string(r.tau_y) + "\n";
    }
    out.write(text);
    return 0;
}

// ---- sievecheck ---------------------------------------------------------

struct SieveCheckRow {
    int kind = 0;  // 0: progression (q,c); 1: double plain (q,r); 2: double coprime
    std::uint64_t a = 1, q = 1, v = 0;
};

int run_sievecheck(std::uint64_t x, const std::vector<SieveCheckRow>& rows,
                   std::uint64_t trunc, unsigned threads,
                   const std::string& format, const Output& out) {
    json cfg = config_json({{"command", "sievecheck"},
                            {"x", x},
                            {"trunc", trunc},
                            {"threads", threads}});
    json results = json::array();
    std::string text = csv_header_comment(cfg);
    text += "kind,a,q,c_or_r,count,main_term,ratio\n";
    for (const SieveCheckRow& row : rows) {
        std::uint64_t count = 0;
        double main = 0.0;
        if (row.kind == 0) {
            count = ekp::count_pairs_progression(x, row.a, {row.q, row.v},
                                                 threads);
            main = ekp::hb_main_term(x, row.a, {row.q, row.v}, trunc);
        } else if (row.kind == 1) {
            count = ekp::count_pairs_double(x, row.a, row.q, row.v, false,
                                            threads);
            main = ekp::plain_main_term(x, row.a, row.q, row.v, trunc);
        } else if (row.kind == 2) {
            count = ekp::count_pairs_double(x, row.a, row.q, row.v, true,
                                            threads);
            main = ekp::nonplain_main_term(x, row.a, row.q, row.v, trunc);
        } else {
            throw ekp::parameter_error("sievecheck: kind must be 0, 1 or 2");
        }
        const double ratio =
            main != 0.0 ? static_cast<double>(count) / main : 0.0;
        results.push_back({{"kind", row.kind},
                           {"a", row.a},
                           {"q", row.q},
                           {"c_or_r", row.v},
                           {"count", count},
                           {"main_term", main},
                           {"ratio", ratio}});
        text += std::to_string(row.kind) + "," + std::to_string(row.a) + "," +
                std::to_string(row.q) + "," + std::to_string(row.v) + "," +
                std::to_string(count) + "," + fmt_double(main) + "," +
                fmt_double(ratio) + "\n";
    }
    if (format == "json") {
        json rep;
        rep["config"] = cfg;
        rep["rows"] = results;
        out.write(rep.dump(2) + "\n");
    } else {
        out.write(text);
    }
    return 0;
}

std::vector<SieveCheckRow> parse_batch(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ekp::parameter_error("sievecheck: cannot read batch file " + path);
    std::vector<SieveCheckRow> rows;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        SieveCheckRow r;
        if (!(ss >> r.kind >> r.a >> r.q >> r.v))
            throw ekp::parameter_error("sievecheck: bad batch line: " + line);
        rows.push_back(r);
    }
    return rows;
}

// ---- em -----------------------------------------------------------------

int run_em(std::uint64_t x, std::uint64_t y, double beta, int j, double alpha,
           double step, bool with_mellin, unsigned threads,
           const std::string& format, const Output& out) {
    ekp::EMParams params;
    params.x = x;
    params.y = resolve_y(x, y, beta);
    params.j = j;
    params.alpha = alpha;
    const ekp::EMReport rep = ekp::em_report(params, threads);

    json cfg = config_json({{"command", "em"},
                            {"x", x},
                            {"y", params.y},
                            {"j", j},
                            {"alpha", alpha},
                            {"step", step},
                            {"threads", threads}});
    json body;
    body["config"] = cfg;
    body["count"] = rep.count;
    body["count_squarefree"] = rep.count_squarefree;
    body["reference"] = rep.reference;
    body["ratio"] = rep.ratio;
    body["heur_main"] = rep.heur_main;
    body["warnings"] = rep.warnings;
    if (with_mellin) {
        const ekp::MellinCheck mc =
            ekp::mellin_identity_check(params, {step}, threads);
        body["mellin"] = {{"lhs", mc.lhs}, {"rhs", mc.rhs},
                          {"rel_err", mc.rel_err}};
    }
    if (format == "json") {
        out.write(body.dump(2) + "\n");
        return 0;
    }
    std::string text = csv_header_comment(cfg);
    text += "count,count_squarefree,reference,ratio,heur_main\n";
    text += std::to_string(rep.count) + "," +
            std::to_string(rep.count_squarefree) + "," +
            fmt_double(rep.reference) + "," + fmt_double(rep.ratio) + "," +
            fmt_double(rep.heur_main) + "\n";
    out.write(text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"arithstat: statistics of prime-factor counts of shifted pairs"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string x_str = "1e5";
    std::uint64_t a = 1, y = 0, start = 1, trunc = 1'000'000;
    double beta = 0.0, alpha = 10.0, T = 0.0, step = 0.01;
    double u = std::nan(""), v = std::nan(""), tail_eps = 0.0;
    int j = 0;
    unsigned threads = 1;
    std::uint64_t seed = 0;
    std::string format = "json", out_path, center = "log2", filter = "sf",
                stat = "omega", batch_path;
    bool with_mellin = false;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--x", x_str, "upper limit x (scientific notation ok)");
        sub->add_option("--threads", threads, "worker thread count");
        sub->add_option("--seed", seed, "unused; accepted for config capture");
        sub->add_option("--out", out_path, "output file (default stdout)");
        sub->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    CLI::App* sieve = app.add_subcommand("sieve", "dump per-n factorization records");
    add_common(sieve);
    sieve->add_option("--y", y, "smoothness threshold (default x)");
    sieve->add_option("--start", start, "first n (default 1)");

    CLI::App* ek2 = app.add_subcommand("ek2", "bivariate empirical CDF vs Gaussian");
    add_common(ek2);
    ek2->add_option("--a", a, "shift a");
    ek2->add_option("--y", y, "threshold for omega_y statistics");
    ek2->add_option("--beta", beta, "y = round(x^{1/beta})");
    ek2->add_option("--center", center, "log2 or lambda")
        ->check(CLI::IsMember({"log2", "lambda"}));
    ek2->add_option("--filter", filter, "all, sf, or sfcoprime")
        ->check(CLI::IsMember({"all", "sf", "sfcoprime"}));
    ek2->add_option("--stat", stat, "omega or omega_y")
        ->check(CLI::IsMember({"omega", "omega_y"}));
    ek2->add_option("--T", T, "Esseen box size (0 = skip diagnostic)");
    ek2->add_option("--step", step, "Esseen quadrature step");

    CLI::App* chowla = app.add_subcommand("chowla", "truncated Mobius correlation");
    add_common(chowla);
    chowla->add_option("--a", a, "shift a");
    chowla->add_option("--y", y, "truncation threshold");
    chowla->add_option("--beta", beta, "y = round(x^{1/beta})");
    chowla->add_option("--u", u, "phase u for the smoothed correlation");
    chowla->add_option("--v", v, "phase v for the smoothed correlation");

    CLI::App* model = app.add_subcommand("model", "independent-factor model vs data");
    add_common(model);
    model->add_option("--a", a, "shift a");
    model->add_option("--y", y, "threshold y");
    model->add_option("--beta", beta, "y = round(x^{1/beta})");
    model->add_option("--tail-eps", tail_eps, "convolution pruning budget");

    CLI::App* sievecheck =
        app.add_subcommand("sievecheck", "squarefree-pair counts vs main terms");
    add_common(sievecheck);
    sievecheck->add_option("--a", a, "shift a");
    std::uint64_t sc_q = 1, sc_v = 0;
    int sc_kind = 0;
    sievecheck->add_option("--kind", sc_kind,
                           "0: n=c (mod q); 1: q|n, r|n+a; 2: same with (n,a)=1");
    sievecheck->add_option("--q", sc_q, "modulus q");
    sievecheck->add_option("--c", sc_v, "residue c (kind 0) or modulus r (kind 1,2)");
    sievecheck->add_option("--batch", batch_path,
                           "file with lines: kind a q c_or_r");
    sievecheck->add_option("--trunc", trunc, "Euler product truncation prime");

    CLI::App* em = app.add_subcommand("em", "divisor-ratio counts and Mellin check");
    add_common(em);
    em->add_option("--y", y, "threshold y");
    em->add_option("--beta", beta, "y = round(x^{1/beta})");
    em->add_option("--j", j, "power-of-two ratio exponent");
    em->add_option("--alpha", alpha, "series damping parameter");
    em->add_option("--step", step, "quadrature step");
    em->add_flag("--mellin", with_mellin, "also run the integral identity check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const Output out{out_path};
    try {
        const std::uint64_t x = parse_count(x_str, "--x");
        if (threads < 1 || threads > 256)
            throw ekp::parameter_error("--threads: expected 1..256");
        if (sieve->parsed()) return run_sieve(x, y, start, format, out);
        if (ek2->parsed())
            return run_ek2(x, a, y, beta, center, filter, stat, T, step,
                           threads, format, out);
        if (chowla->parsed())
            return run_chowla(x, a, y, beta, u, v, threads, format, out);
        if (model->parsed())
            return run_model(x, a, y, beta, tail_eps, threads, format, out);
        if (sievecheck->parsed()) {
            std::vector<SieveCheckRow> rows;
            if (!batch_path.empty()) rows = parse_batch(batch_path);
            else rows.push_back({sc_kind, a, sc_q, sc_v});
            return run_sievecheck(x, rows, trunc, threads, format, out);
        }
        if (em->parsed())
            return run_em(x, y, beta, j, alpha, step, with_mellin, threads,
                          format, out);
        return 2;
    } catch (const ekp::parameter_error& e) {
        std::cerr << "error: parameter: " << e.what() << "\n";
        return 2;
    } catch (const ekp::domain_error& e) {
        std::cerr << "error: domain: " << e.what() << "\n";
        return 2;
    } catch (const ekp::resource_error& e) {
        std::cerr << "error: resource: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
