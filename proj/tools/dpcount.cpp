// dpcount: rational points of bounded height on del Pezzo surfaces.
//
// One binary, one subcommand per module; every run echoes its resolved
// configuration into the output so results are reproducible.  Exit codes:
// 0 success, 1 computation/assertion failure, 2 usage error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dpcount/arith.hpp"
#include "dpcount/chars.hpp"
#include "dpcount/constants.hpp"
#include "dpcount/gon.hpp"
#include "dpcount/picard.hpp"
#include "dpcount/repro.hpp"
#include "dpcount/segre.hpp"
#include "dpcount/surfaces.hpp"
#include "dpcount/torsor.hpp"

using nlohmann::json;
using namespace dpc;

namespace {

struct OutputSink {
    std::string path;
    std::string format = "json";

    void write(const json& j, const std::string& csv = "") const {
        std::string text = (format == "csv" && !csv.empty()) ? csv : j.dump(2) + "\n";
        if (path.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(path);
            if (!f) throw std::runtime_error("cannot open output file: " + path);
            f << text;
        }
    }
};

std::int64_t now_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

std::array<std::int64_t, 4> parse_a(const std::string& s) {
    std::array<std::int64_t, 4> a{};
    std::stringstream ss(s);
    std::string item;
    int i = 0;
    while (std::getline(ss, item, ',')) {
        if (i >= 4) throw CLI::ValidationError("--a", "expected 4 comma-separated integers");
        a[i++] = std::stoll(item);
    }
    if (i != 4) throw CLI::ValidationError("--a", "expected 4 comma-separated integers");
    return a;
}

int default_workers() {
    if (const char* env = std::getenv("DPC_WORKERS")) {
        int w = std::atoi(env);
        if (w >= 1) return w;
    }
    return 2;
}

picard::RatMatrix parse_matrix(const json& j) {
    picard::RatMatrix m;
    for (const auto& row : j) {
        std::vector<Rat> r;
        for (const auto& v : row) {
            if (v.is_number_integer()) {
                r.emplace_back(v.get<std::int64_t>());
            } else {
                std::string s = v.get<std::string>();
                auto slash = s.find('/');
                if (slash == std::string::npos) r.emplace_back(Int(s));
                else r.emplace_back(Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1))));
            }
        }
        m.push_back(std::move(r));
    }
    if (m.size() != 5 || m[0].size() != 5) throw std::runtime_error("matrices must be 5x5");
    return m;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rational points of bounded height on del Pezzo surfaces"};
    app.require_subcommand(1);

    int workers = default_workers();
    app.add_option("--workers", workers, "worker threads for partitionable loops")
        ->check(CLI::PositiveNumber);

    // ---- count ----
    auto* cmd_count = app.add_subcommand("count", "count rational points on a catalogue surface");
    std::string surface_id, a_csv = "1,1,1,1", subset = "open_u", out_path, format = "json";
    std::int64_t B = 100;
    std::uint64_t budget = 10'000'000'000ull;
    bool affine = false;
    cmd_count->add_option("--surface", surface_id, "surface id (see docs/catalogue.md)")->required();
    cmd_count->add_option("--a", a_csv, "diagonal cubic coefficients (diag_cubic only)");
    cmd_count->add_option("--B", B, "height bound")->required()->check(CLI::NonNegativeNumber);
    cmd_count->add_option("--subset", subset, "all | open_u")
        ->check(CLI::IsMember({"all", "open_u", "open_U"}));
    cmd_count->add_flag("--affine", affine, "count all nonzero integer solutions N(f;B) instead");
    cmd_count->add_option("--budget", budget, "elementary step budget");
    cmd_count->add_option("--out", out_path, "output file (default stdout)");
    cmd_count->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

    // ---- ambient ----
    auto* cmd_amb = app.add_subcommand("ambient", "count projective points of P^(n-1) up to height B");
    int amb_n = 2;
    std::int64_t amb_B = 100;
    cmd_amb->add_option("--n", amb_n, "number of coordinates")->required();
    cmd_amb->add_option("--B", amb_B, "height bound")->required();
    cmd_amb->add_option("--out", out_path, "output file");

    // ---- torsor ----
    auto* cmd_torsor = app.add_subcommand("torsor", "universal-torsor counts and bijection checks");
    cmd_torsor->require_subcommand(1);
    std::string tsurf = "d4";
    std::int64_t tB = 100;
    auto* t_count = cmd_torsor->add_subcommand("count", "count torsor points with Psi <= B");
    t_count->add_option("--surface", tsurf, "a1 | d4")->required()->check(CLI::IsMember({"a1", "d4"}));
    t_count->add_option("--B", tB, "height bound")->required();
    t_count->add_option("--out", out_path, "output file");
    auto* t_verify = cmd_torsor->add_subcommand("verify", "compare the torsor image with direct enumeration");
    t_verify->add_option("--surface", tsurf, "a1 | d4")->required()->check(CLI::IsMember({"a1", "d4"}));
    t_verify->add_option("--B", tB, "height bound (<= 200)")->required();
    t_verify->add_option("--out", out_path, "output file");

    // ---- picard ----
    auto* cmd_picard = app.add_subcommand("picard", "Picard rank of a diagonal cubic surface");
    std::string pa_csv;
    cmd_picard->add_option("--a", pa_csv, "coefficients a1,a2,a3,a4")->required();
    cmd_picard->add_option("--out", out_path, "output file");

    // ---- segre ----
    auto* cmd_segre = app.add_subcommand("segre", "Segre symbol / singularity type of a quartic del Pezzo");
    std::string seg_surface, seg_file;
    cmd_segre->add_option("--surface", seg_surface, "catalogue id dp4_i .. dp4_xv");
    cmd_segre->add_option("--matrices", seg_file, "JSON file {\"A\": 5x5, \"B\": 5x5}");
    cmd_segre->add_option("--out", out_path, "output file");

    // ---- local ----
    auto* cmd_local = app.add_subcommand("local", "local counts and identities for a diagonal cubic");
    std::string la_csv = "1,1,1,1";
    std::uint64_t lp = 7;
    int le = 1;
    cmd_local->add_option("--a", la_csv, "coefficients a1,a2,a3,a4");
    cmd_local->add_option("--p", lp, "prime")->required();
    cmd_local->add_option("--e", le, "exponent")->check(CLI::PositiveNumber);
    cmd_local->add_option("--out", out_path, "output file");

    // ---- constants ----
    auto* cmd_const = app.add_subcommand("constants", "conjectural leading constants");
    std::string which = "c1_a1";
    double tol = 1e-3;
    std::uint64_t prime_bound = 100'000;
    cmd_const->add_option("--which", which, "c1_a1 | c1_fermat | sigma_a1 | sigma_fermat | E2")
        ->required()
        ->check(CLI::IsMember({"c1_a1", "c1_fermat", "sigma_a1", "sigma_fermat", "E2"}));
    cmd_const->add_option("--tol", tol, "integration tolerance");
    cmd_const->add_option("--prime-bound", prime_bound, "Euler product truncation");
    cmd_const->add_option("--out", out_path, "output file");

    // ---- gon ----
    auto* cmd_gon = app.add_subcommand("gon", "geometry-of-numbers sweeps");
    auto* g_sweep = cmd_gon->add_subcommand("sweep", "random-instance bound checks");
    std::string lemma = "line";
    std::uint64_t seed = 1, samples = 1000;
    g_sweep->add_option("--lemma", lemma, "line | conic | rho | serre")
        ->required()
        ->check(CLI::IsMember({"line", "conic", "rho", "serre"}));
    g_sweep->add_option("--seed", seed, "RNG seed");
    g_sweep->add_option("--samples", samples, "instances per sweep");
    g_sweep->add_option("--out", out_path, "output file");
    g_sweep->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

    // ---- repro ----
    auto* cmd_repro = app.add_subcommand("repro", "run the acceptance suite");
    bool quick = false;
    cmd_repro->add_flag("--skip-determinism", quick, "run criteria 1-10 only");
    cmd_repro->add_option("--out", out_path, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    OutputSink sink;
    sink.path = out_path;
    sink.format = format;

    json config{{"workers", workers}, {"timestamp_ms", now_ms()}};

    try {
        if (*cmd_count) {
            config["command"] = "count";
            config["surface"] = surface_id;
            config["B"] = B;
            config["subset"] = subset;
            config["affine"] = affine;
            std::optional<std::array<std::int64_t, 4>> a;
            if (surface_id == "diag_cubic") {
                a = parse_a(a_csv);
                config["a"] = a_csv;
            }
            auto S = surfaces::builtin(surface_id, a);
            surfaces::CountOptions opt;
            opt.budget = budget;
            opt.workers = workers;
            auto t0 = std::chrono::steady_clock::now();
            json out{{"config", config}};
            std::uint64_t count;
            if (affine) {
                count = surfaces::count_affine(S.forms.at(0), B, opt);
            } else {
                auto sub = (subset == "all") ? surfaces::Subset::All : surfaces::Subset::OpenU;
                count = surfaces::count_surface(S, B, sub, opt);
            }
            double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            out["surface"] = surface_id;
            out["B"] = B;
            out["subset"] = affine ? "affine" : subset;
            out["count"] = count;
            out["elapsed_ms"] = ms;
            std::ostringstream csv;
            csv << "surface,B,subset,count,elapsed_ms\n"
                << surface_id << "," << B << "," << (affine ? "affine" : subset) << "," << count
                << "," << ms << "\n";
            sink.write(out, csv.str());
        } else if (*cmd_amb) {
            config["command"] = "ambient";
            config["n"] = amb_n;
            config["B"] = amb_B;
            surfaces::CountOptions opt;
            opt.workers = workers;
            auto n = surfaces::count_ambient(amb_n, amb_B, opt);
            sink.write(json{{"config", config}, {"count", n}});
        } else if (*t_count) {
            config["command"] = "torsor count";
            config["surface"] = tsurf;
            config["B"] = tB;
            std::uint64_t n = (tsurf == "a1") ? torsor::a1_count(tB, workers) : torsor::d4_count(tB);
            sink.write(json{{"config", config}, {"count", n}});
        } else if (*t_verify) {
            config["command"] = "torsor verify";
            config["surface"] = tsurf;
            config["B"] = tB;
            auto rep = torsor::verify_bijection(
                tsurf == "a1" ? torsor::TorsorSurface::A1 : torsor::TorsorSurface::D4, tB);
            json out{{"config", config},
                     {"matched", rep.matched},
                     {"missing", rep.missing.size()},
                     {"extra", rep.extra.size()},
                     {"direct", rep.direct_count},
                     {"mapped", rep.mapped_count},
                     {"ok", rep.ok}};
            if (tsurf == "a1") {
                out["N_U"] = rep.n_u;
                out["boundary_points"] = rep.boundary_points;
                out["boundary_accounted"] = rep.boundary_accounted;
            }
            sink.write(out);
            if (!rep.ok) return 1;
        } else if (*cmd_picard) {
            config["command"] = "picard";
            config["a"] = pa_csv;
            auto a = parse_a(pa_csv);
            int rank = picard::picard_rank(a);
            sink.write(json{{"config", config},
                            {"rank", rank},
                            {"segre_rank1_criterion", picard::segre_criterion_rank1(a)}});
        } else if (*cmd_segre) {
            config["command"] = "segre";
            picard::Dp4Class cls;
            if (!seg_surface.empty()) {
                config["surface"] = seg_surface;
                auto S = surfaces::builtin(seg_surface);
                if (S.forms.size() != 2) throw std::runtime_error("surface is not a quadric pencil");
                cls = picard::classify_dp4(S.forms[0], S.forms[1]);
            } else if (!seg_file.empty()) {
                config["matrices"] = seg_file;
                std::ifstream f(seg_file);
                if (!f) throw std::runtime_error("cannot open " + seg_file);
                json jm = json::parse(f);
                cls = picard::classify_symbol(picard::segre_symbol(parse_matrix(jm.at("A")), parse_matrix(jm.at("B"))));
            } else {
                throw CLI::ValidationError("segre", "one of --surface or --matrices is required");
            }
            sink.write(json{{"config", config},
                            {"symbol", cls.symbol.str()},
                            {"type", cls.singularity},
                            {"catalogue_row", cls.type},
                            {"lines", cls.lines}});
        } else if (*cmd_local) {
            config["command"] = "local";
            config["a"] = la_csv;
            config["p"] = lp;
            config["e"] = le;
            auto a = parse_a(la_csv);
            std::uint64_t q = 1;
            for (int i = 0; i < le; ++i) q *= lp;
            auto lt = chars::local_counts(a, q);
            json checks;
            if (chars::is_good_prime(a, lp)) {
                int dp = chars::delta_p(a, lp);
                checks["delta"] = dp;
                checks["eqNstar"] =
                    (lt.q != lp) ||
                    (lt.Nstar == lp * lp * lp + lp * (lp - 1) * static_cast<std::uint64_t>(dp) - 1);
                if (le >= 2) checks["hensel"] = chars::hensel_check(a, lp, le);
            }
            checks["sq_identity"] = chars::sq_identity_check(a, lp, le).ok;
            sink.write(json{{"config", config}, {"q", q}, {"N", lt.N}, {"Nstar", lt.Nstar}, {"checks", checks}});
        } else if (*cmd_const) {
            config["command"] = "constants";
            config["which"] = which;
            config["tol"] = tol;
            config["prime_bound"] = prime_bound;
            json out{{"config", config}};
            if (which == "c1_a1") {
                auto c = constants::c1_a1(tol, prime_bound);
                out["value"] = c.value;
                out["error_bar"] = c.error_bar;
                out["method"] = c.detail;
            } else if (which == "c1_fermat") {
                auto c = constants::c1_fermat(tol, prime_bound);
                out["value"] = c.value;
                out["error_bar"] = c.error_bar;
                out["method"] = c.detail;
            } else if (which == "sigma_a1") {
                auto s = constants::sigma_infty_a1(tol);
                out["value"] = s.value;
                out["error_bar"] = s.error_bar;
                out["cross_value"] = s.cross_value;
                out["method"] = s.method;
            } else if (which == "sigma_fermat") {
                auto s = constants::sigma_infty_fermat(tol);
                out["value"] = s.value;
                out["error_bar"] = s.error_bar;
                out["cross_value"] = s.cross_value;
                out["method"] = s.method;
            } else {
                auto e = constants::euler_product(constants::e2_zero_product(), prime_bound);
                out["value"] = e.value;
                out["error_bar"] = e.value * e.tail_bound;
                out["method"] = "truncated Euler product with integral tail bound";
            }
            sink.write(out);
        } else if (*g_sweep) {
            config["command"] = "gon sweep";
            config["lemma"] = lemma;
            config["seed"] = seed;
            config["samples"] = samples;
            if (lemma == "serre") {
                json levels = json::array();
                std::ostringstream csv;
                csv << "A,B,samples,valid,soluble,weighted_ratio\n";
                for (double lvl : {4.0, 16.0, 64.0, 256.0, 1024.0}) {
                    auto s = gon::conic_solvability_stats(lvl, lvl, samples, seed);
                    levels.push_back({{"A", s.A},
                                      {"B", s.B},
                                      {"valid", s.valid},
                                      {"soluble", s.soluble},
                                      {"weighted_ratio", s.weighted_ratio}});
                    csv << s.A << "," << s.B << "," << s.samples << "," << s.valid << ","
                        << s.soluble << "," << s.weighted_ratio << "\n";
                }
                sink.write(json{{"config", config}, {"levels", levels}}, csv.str());
            } else {
                gon::SweepReport rep;
                if (lemma == "line") rep = gon::check_line_bound(samples, seed, format == "csv");
                else if (lemma == "conic") rep = gon::check_conic_bound(samples, seed, format == "csv");
                else rep = gon::check_rho_bound(samples, seed, format == "csv");
                std::ostringstream csv;
                csv << "instance,count,bound,ratio\n";
                for (const auto& row : rep.rows) csv << row << "\n";
                sink.write(json{{"config", config},
                                {"lemma", rep.lemma},
                                {"instances", rep.instances},
                                {"max_ratio", rep.max_ratio},
                                {"violations", rep.violations}},
                           csv.str());
                if (rep.violations > 0) return 1;
            }
        } else if (*cmd_repro) {
            config["command"] = "repro";
            auto suite = quick ? repro::run_criteria(workers, &std::cerr)
                               : repro::run_acceptance(workers, &std::cerr);
            json out = suite.to_json();
            out["config"] = config;
            sink.write(out);
            if (!suite.all_pass()) return 1;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
