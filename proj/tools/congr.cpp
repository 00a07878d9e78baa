// congr: exact cohomology workbench for principal congruence subgroups.
//
//   congr compute --group gamma  --m 3 --n 0
//   congr compute --group bgamma --m 2 --n 1
//   congr predict --m 2 --n 2 --p 2
//   congr verify  --suite h1-torsion --m-max 6 --n-max 8
//
// Exit codes: 0 success, 1 verification mismatch, 2 usage/config error.

#include "congr/cohomology.hpp"
#include "congr/serialize.hpp"
#include "congr/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace congr;

struct GlobalOpts {
    std::string format = "text";
    std::string cache_dir;
    bool no_cache = false;
    int jobs = 2;
    bool timings = false;

    std::optional<std::filesystem::path> resolved_cache() const {
        if (no_cache) return std::nullopt;
        if (!cache_dir.empty()) return std::filesystem::path(cache_dir);
        if (const char* env = std::getenv("CONGR_CACHE_DIR")) return std::filesystem::path(env);
        return std::filesystem::path(".congr-cache");
    }
};

void print_cohomology(const CohomologyResult& r, const std::string& group_name,
                      const GlobalOpts& g) {
    if (g.format == "json") {
        json j = to_json(r);
        j["group"] = group_name;
        std::cout << j.dump(1) << "\n";
        return;
    }
    if (g.format == "csv") {
        std::cout << "group,m,n,degree,value\n";
        for (const auto& [k, h] : r.groups)
            std::cout << group_name << ',' << r.m << ',' << r.n << ',' << k << ','
                      << detail::csv_escape(h.to_string()) << "\n";
        return;
    }
    std::string coeff = "M_" + std::to_string(r.n);
    if (r.modulus != 0) coeff += " mod " + r.modulus.str();
    for (const auto& [k, h] : r.groups)
        std::cout << "H^" << k << "(" << r.model << "; " << coeff << ") = " << h.to_string()
                  << "\n";
}

int cmd_compute(const GlobalOpts& g, const std::string& group, long m, long n, long degree_max,
                long modulus) {
    Workspace ws(g.resolved_cache());
    if (group == "sl2mod") {
        Int enumerated = Int(enumerate_group(m).size());
        Int closed = sl2_order(m);
        if (g.format == "json") {
            std::cout << json{{"group", "sl2mod"},
                              {"m", m},
                              {"order_enumerated", static_cast<long>(enumerated)},
                              {"order_closed_form", static_cast<long>(closed)}}
                             .dump(1)
                      << "\n";
        } else if (g.format == "csv") {
            std::cout << "group,m,order_enumerated,order_closed_form\n"
                      << "sl2mod," << m << ',' << enumerated << ',' << closed << "\n";
        } else {
            std::cout << "|SL(2,Z_" << m << ")| = " << enumerated << " (closed form " << closed
                      << ")\n";
        }
        return enumerated == closed ? 0 : 1;
    }
    if (group == "gamma") {
        long kmax = degree_max >= 0 ? degree_max : (m == 2 ? 2 : 1);
        CohomologyResult r;
        if (m == 2) {
            if (modulus == 0) {
                r = gamma2_cohomology(n, kmax);
            } else {
                r.model = "Gamma(2)";
                r.m = 2;
                r.n = n;
                r.modulus = modulus;
                r.groups = gamma2_total_complex(n, kmax, modulus);
            }
        } else {
            r = presentation_cohomology(*ws.presentation(m), n, modulus);
            r.m = m;
            for (long k = 2; k <= kmax; ++k) r.groups[k] = AbelianGroup();
        }
        print_cohomology(r, "gamma", g);
        return 0;
    }
    if (group == "bgamma") {
        CohomologyResult r;
        if (m == 2) {
            r = b_gamma_cohomology(2, n, CohomologyStrategy::Auto, modulus);
        } else {
            ProductModel model;
            model.label = "B_Gamma(" + std::to_string(m) + ")";
            model.has_central = true;
            model.z_value = Mat2Z::identity();
            model.base = *ws.presentation(m);
            model.validate();
            r = b_gamma_cohomology(model, m, n, CohomologyStrategy::Auto, modulus);
        }
        print_cohomology(r, "bgamma", g);
        return 0;
    }
    fail(errc::bad_params, "unknown group '" + group + "' (expected gamma|bgamma|sl2mod)");
}

int cmd_predict(const GlobalOpts& g, bool series, long series_max, bool rank, long m, long n,
                long p) {
    if (series) {
        std::vector<long> f = sl2_free_rank_series(series_max);
        if (g.format == "json") {
            std::cout << json{{"series", f}}.dump(1) << "\n";
        } else if (g.format == "csv") {
            std::cout << "degree,coefficient\n";
            for (long k = 0; k < long(f.size()); ++k) std::cout << k << ',' << f[k] << "\n";
        } else {
            for (long k = 0; k < long(f.size()); ++k)
                if (f[k] != 0) std::cout << "t^" << k << " -> " << f[k] << "\n";
        }
        return 0;
    }
    if (rank) {
        long r = m == 2 ? 2 : closed_form_ranks(m).rank;
        long h1 = m == 2 ? gamma2_h1_free_rank(n < 0 ? 0 : n)
                         : closed_form_ranks(m).h1_rank(n < 0 ? 0 : n);
        if (g.format == "json") {
            json j{{"m", m}, {"rank", r}};
            if (n >= 0) j["h1_rank"] = h1;
            std::cout << j.dump(1) << "\n";
        } else if (n >= 0) {
            std::cout << h1 << "\n";
        } else {
            std::cout << r << "\n";
        }
        return 0;
    }
    TorsionPrediction t = predict_h1_torsion(m, n, p);
    if (g.format == "json") {
        json summands = json::array();
        for (const auto& s : t.summands)
            summands.push_back(
                {{"prime", s.prime}, {"exponent", s.exponent}, {"multiplicity", s.multiplicity}});
        std::cout << json{{"m", m},
                          {"n", n},
                          {"p", p},
                          {"degree", t.degree},
                          {"summands", summands},
                          {"group", to_json(t.group)}}
                         .dump(1)
                  << "\n";
    } else {
        std::cout << t.group.to_string() << "\n";
    }
    return 0;
}

int cmd_verify(const GlobalOpts& g, RunConfig cfg) {
    cfg.jobs = g.jobs;
    cfg.timings = g.timings;
    cfg.cache_dir = g.resolved_cache();
    Workspace ws(cfg.cache_dir, cfg.k_max);
    VerificationReport report = run_verification(ws, cfg);
    if (g.format == "json")
        std::cout << report_to_json(report, g.timings).dump(1) << "\n";
    else if (g.format == "csv")
        std::cout << report_to_csv(report, g.timings);
    else
        std::cout << report_to_text(report, g.timings);
    return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact cohomology of principal congruence subgroups and their braid preimages"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    app.add_option("--cache-dir", g.cache_dir,
                   "presentation cache directory (default $CONGR_CACHE_DIR or ./.congr-cache)");
    app.add_flag("--no-cache", g.no_cache, "disable the presentation cache");
    app.add_option("--jobs", g.jobs, "worker pool width")->check(CLI::Range(1, 64))
        ->capture_default_str();
    app.add_flag("--timings", g.timings, "include wall-clock per cell in reports");

    auto* compute = app.add_subcommand("compute", "compute cohomology tables");
    std::string group = "gamma";
    long m = 3, n = 0, degree_max = -1, modulus = 0;
    compute->add_option("--group", group, "gamma|bgamma|sl2mod")->required();
    compute->add_option("--m", m, "congruence level")->required()->check(CLI::Range(2L, 1000L));
    compute->add_option("--n", n, "coefficient degree")->check(CLI::Range(0L, 64L));
    compute->add_option("--degree-max", degree_max, "highest cohomological degree");
    compute->add_option("--modulus", modulus, "coefficients M_n mod q (0 = integral)");

    auto* predict = app.add_subcommand("predict", "emit predictor outputs only");
    bool series = false, rank = false;
    long series_max = 20, pm = 2, pn = -1, pp = 2;
    predict->add_flag("--series", series, "free-rank Poincare series");
    predict->add_option("--max", series_max, "series degree cap")->check(CLI::Range(0L, 4096L));
    predict->add_flag("--rank", rank, "closed-form ranks");
    predict->add_option("--m", pm, "congruence level")->check(CLI::Range(2L, 100000L));
    predict->add_option("--n", pn, "coefficient degree");
    predict->add_option("--p", pp, "prime");

    auto* verify = app.add_subcommand("verify", "run verification suites");
    RunConfig cfg;
    std::string suite = "all";
    verify->add_option("--suite", suite, "suite name or 'all'");
    verify->add_option("--m-max", cfg.m_max, "largest congruence level")
        ->check(CLI::Range(2L, 64L));
    verify->add_option("--n-max", cfg.n_max, "largest coefficient degree")
        ->check(CLI::Range(1L, 64L));
    verify->add_option("--k-max", cfg.k_max, "largest cohomological degree")
        ->check(CLI::Range(0L, 32L));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (compute->parsed()) return cmd_compute(g, group, m, n, degree_max, modulus);
        if (predict->parsed()) {
            if (!series && !rank && pn < 0)
                fail(errc::bad_params, "predict: need --series, --rank, or --m/--n/--p");
            return cmd_predict(g, series, series_max, rank, pm, pn, pp);
        }
        if (verify->parsed()) {
            if (suite != "all") cfg.suites = {suite};
            return cmd_verify(g, cfg);
        }
    } catch (const congr::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
