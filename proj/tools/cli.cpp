#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypcyl/acceptance.hpp"
#include "hypcyl/branching.hpp"
#include "hypcyl/cylinder_process.hpp"
#include "hypcyl/geometry.hpp"
#include "hypcyl/line_measure.hpp"
#include "hypcyl/monte_carlo.hpp"
#include "hypcyl/net.hpp"
#include "hypcyl/particles.hpp"
#include "hypcyl/serialize.hpp"

namespace hypcyl::cli {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt7(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.7f", v);
    return buf;
}

void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

/// Table results with the run configuration echoed into every file.
void emit(const std::string& path, const std::string& format, const std::string& command,
          const json& config, const json& results, const std::string& csv_body) {
    if (format == "json") {
        const json doc{{"command", command}, {"config", config}, {"results", results}};
        write_output(path, doc.dump(2) + "\n");
    } else {
        std::ostringstream out;
        out << "# hypcyl " << command << "\n";
        out << "# config: " << config.dump() << "\n";
        out << csv_body;
        write_output(path, out.str());
    }
}

json estimate_json(const Estimate& e) {
    return json{{"mean", e.mean}, {"se", e.se}, {"n", e.n}};
}

Vec parse_coords(const std::string& text) {
    Vec out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    if (out.size() < 2) throw CLI::ValidationError("--ball", "need at least 2 coordinates");
    return out;
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

struct CommonOpts {
    std::string output = "-";
    std::string format = "csv";
    std::uint64_t seed = 1;
    int workers = 1;
};

void add_io(CLI::App* sub, CommonOpts& io, bool with_seed = true) {
    sub->add_option("--output", io.output, "output file, - for stdout");
    sub->add_option("--format", io.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    if (with_seed) sub->add_option("--seed", io.seed, "master seed");
}

}  // namespace

int run(const std::vector<std::string>& args) {
    std::vector<std::string> full;
    full.reserve(args.size() + 1);
    full.push_back("hypcyl");
    full.insert(full.end(), args.begin(), args.end());
    std::vector<char*> argv;
    argv.reserve(full.size());
    for (auto& s : full) argv.push_back(s.data());
    return run(static_cast<int>(argv.size()), argv.data());
}

int run(int argc, char** argv) {
    CLI::App app{"Poisson cylinder processes in hyperbolic space"};
    app.require_subcommand(1);
    auto suite_failed = std::make_shared<bool>(false);

    // geo-dist ---------------------------------------------------------------
    {
        auto* sub = app.add_subcommand("geo-dist", "distance between two ball-model points");
        auto balls = std::make_shared<std::vector<std::string>>();
        sub->add_option("--ball", *balls, "point as comma-separated ball coordinates (twice)")
            ->expected(2);
        sub->callback([balls] {
            const Point a = Point::from_ball(parse_coords((*balls)[0]));
            const Point b = Point::from_ball(parse_coords((*balls)[1]));
            std::cout << fmt7(dist(a, b)) << "\n";
        });
    }

    // line-measure -----------------------------------------------------------
    {
        auto* sub = app.add_subcommand("line-measure", "measure of lines hitting B(o,r)");
        auto d = std::make_shared<int>(2);
        auto r = std::make_shared<double>(1.0);
        sub->add_option("--d", *d, "dimension")->required();
        sub->add_option("--r", *r, "ball radius")->required();
        sub->callback([d, r] { std::cout << fmt7(measure_hitting_ball(*d, *r)) << "\n"; });
    }

    // line-sample ------------------------------------------------------------
    {
        auto* sub = app.add_subcommand("line-sample", "sample lines hitting B(o,r)");
        auto io = std::make_shared<CommonOpts>();
        auto d = std::make_shared<int>(2);
        auto r = std::make_shared<double>(2.0);
        auto n = std::make_shared<std::uint64_t>(100);
        sub->add_option("--d", *d)->required();
        sub->add_option("--r", *r)->required();
        sub->add_option("--n", *n, "number of lines");
        add_io(sub, *io);
        sub->callback([io, d, r, n] {
            RngStream rng(io->seed, 0);
            std::vector<Geodesic> lines;
            lines.reserve(*n);
            for (std::uint64_t i = 0; i < *n; ++i)
                lines.push_back(sample_line_hitting_ball(rng, *d, *r));
            const json config{{"d", *d}, {"r", *r}, {"n", *n}, {"seed", io->seed},
                              {"format", io->format}};
            if (io->format == "json") {
                emit(io->output, "json", "line-sample", config,
                     json::parse(lines_to_json(lines)), "");
            } else {
                emit(io->output, "csv", "line-sample", config, {}, lines_to_csv(lines, *d));
            }
        });
    }

    // connect-one ------------------------------------------------------------
    {
        auto* sub = app.add_subcommand("connect-one",
                                       "one-cylinder connection probability of B(o,1), B(y,1)");
        auto io = std::make_shared<CommonOpts>();
        auto d = std::make_shared<int>(2);
        auto u = std::make_shared<double>(0.1);
        auto R = std::make_shared<double>(0.0);
        auto n = std::make_shared<std::uint64_t>(100000);
        sub->add_option("--d", *d)->required();
        sub->add_option("--u", *u, "process intensity")->required();
        sub->add_option("--R", *R, "distance between the ball centers");
        sub->add_option("--n", *n, "Monte Carlo lines");
        add_io(sub, *io);
        sub->callback([io, d, u, R, n] {
            RngStream rng(io->seed, 0);
            Vec dir(*d, 0.0);
            dir[0] = 1.0;
            const Point x = Point::origin(*d);
            const Point y = *R == 0.0 ? x : Point::from_polar(*R, dir);
            const auto res = connect_prob_one_step(*d, *u, x, y, *n, rng);
            const json config{{"d", *d}, {"u", *u}, {"R", *R}, {"n", *n}, {"seed", io->seed},
                              {"format", io->format}};
            const json results{{"p", res.p},
                               {"mu", estimate_json(res.mu)},
                               {"mu_exact", res.mu_exact},
                               {"smallness_threshold", small_intensity_threshold(*d)}};
            std::ostringstream csv;
            csv << "p,mu,mu_se,mu_exact,n\n";
            csv << fmt17(res.p) << "," << fmt17(res.mu.mean) << "," << fmt17(res.mu.se) << ","
                << (res.mu_exact ? 1 : 0) << "," << *n << "\n";
            emit(io->output, io->format, "connect-one", config, results, csv.str());
        });
    }

    // connect-m ----------------------------------------------------------------
    {
        auto* sub = app.add_subcommand("connect-m", "m-step connection probability estimate");
        auto io = std::make_shared<CommonOpts>();
        auto d = std::make_shared<int>(2);
        auto u = std::make_shared<double>(0.05);
        auto R = std::make_shared<double>(3.0);
        auto m = std::make_shared<int>(2);
        auto margin = std::make_shared<double>(2.0);
        auto reps = std::make_shared<std::uint64_t>(1000);
        auto check_margin = std::make_shared<bool>(false);
        sub->add_option("--d", *d)->required();
        sub->add_option("--u", *u)->required();
        sub->add_option("--R", *R)->required();
        sub->add_option("--m", *m, "max chain length");
        sub->add_option("--margin", *margin, "window margin beyond R");
        sub->add_option("--reps", *reps);
        sub->add_option("--workers", io->workers);
        sub->add_flag("--check-margin", *check_margin,
                      "also run at margin + 2 and flag window sensitivity");
        add_io(sub, *io);
        sub->callback([io, d, u, R, m, margin, reps, check_margin] {
            const json config{{"d", *d},       {"u", *u},          {"R", *R},
                              {"m", *m},       {"margin", *margin}, {"reps", *reps},
                              {"seed", io->seed}, {"workers", io->workers},
                              {"check_margin", *check_margin}, {"format", io->format}};
            if (*check_margin) {
                const auto probe = msteps_margin_sensitivity(io->seed, io->workers, *d, *u, *R,
                                                             *m, *margin, *reps);
                const json results{{"p", estimate_json(probe.at_margin.p)},
                                   {"p_wider_window", estimate_json(probe.at_margin_plus_2.p)},
                                   {"window_r", probe.at_margin.window_r},
                                   {"margin_sensitive", probe.flagged}};
                std::ostringstream csv;
                csv << "p,se,p_wider,se_wider,margin_sensitive\n";
                csv << fmt17(probe.at_margin.p.mean) << "," << fmt17(probe.at_margin.p.se) << ","
                    << fmt17(probe.at_margin_plus_2.p.mean) << ","
                    << fmt17(probe.at_margin_plus_2.p.se) << "," << (probe.flagged ? 1 : 0)
                    << "\n";
                emit(io->output, io->format, "connect-m", config, results, csv.str());
                return;
            }
            const auto res = estimate_connect_prob_msteps(io->seed, io->workers, *d, *u, *R, *m,
                                                          *margin, *reps);
            const json results{{"p", estimate_json(res.p)},
                               {"window_r", res.window_r},
                               {"window_truncated", res.window_truncated}};
            std::ostringstream csv;
            csv << "p,se,reps,window_r\n";
            csv << fmt17(res.p.mean) << "," << fmt17(res.p.se) << "," << *reps << ","
                << fmt17(res.window_r) << "\n";
            emit(io->output, io->format, "connect-m", config, results, csv.str());
        });
    }

    // phase-scan -----------------------------------------------------------------
    {
        auto* sub = app.add_subcommand("phase-scan", "connectivity statistics over a u grid");
        auto io = std::make_shared<CommonOpts>();
        auto d = std::make_shared<int>(2);
        auto window_r = std::make_shared<double>(6.0);
        auto grid = std::make_shared<std::string>("0.05,0.1,0.2,0.4");
        auto reps = std::make_shared<std::uint64_t>(50);
        auto s = std::make_shared<double>(1.0);
        sub->add_option("--d", *d)->required();
        sub->add_option("--window-r", *window_r);
        sub->add_option("--u-grid", *grid, "comma-separated intensities");
        sub->add_option("--reps", *reps);
        sub->add_option("--s", *s, "cylinder radius");
        sub->add_option("--workers", io->workers);
        add_io(sub, *io);
        sub->callback([io, d, window_r, grid, reps, s] {
            const auto rows =
                phase_scan(io->seed, io->workers, *d, *window_r, parse_grid(*grid), *reps, *s);
            const json config{{"d", *d},     {"window_r", *window_r}, {"u_grid", *grid},
                              {"reps", *reps}, {"s", *s},             {"seed", io->seed},
                              {"workers", io->workers}, {"format", io->format}};
            json jrows = json::array();
            std::ostringstream csv;
            csv << "u,reps,mean_components,se,largest_frac,se,pair_conn,se\n";
            for (const auto& row : rows) {
                jrows.push_back(json{{"u", row.u},
                                     {"reps", row.reps},
                                     {"mean_components", estimate_json(row.mean_components)},
                                     {"largest_frac", estimate_json(row.largest_frac)},
                                     {"pair_conn", estimate_json(row.pair_conn)},
                                     {"single_component_frac",
                                      estimate_json(row.single_component_frac)}});
                csv << fmt17(row.u) << "," << row.reps << "," << fmt17(row.mean_components.mean)
                    << "," << fmt17(row.mean_components.se) << "," << fmt17(row.largest_frac.mean)
                    << "," << fmt17(row.largest_frac.se) << "," << fmt17(row.pair_conn.mean)
                    << "," << fmt17(row.pair_conn.se) << "\n";
            }
            emit(io->output, io->format, "phase-scan", config, jrows, csv.str());
        });
    }

    // branching-table ---------------------------------------------------------------
    {
        auto* sub = app.add_subcommand("branching-table", "closed-form f_n, F_n and bounds");
        auto io = std::make_shared<CommonOpts>();
        auto u = std::make_shared<double>(0.1);
        auto R = std::make_shared<double>(2.0);
        auto n_max = std::make_shared<int>(5);
        sub->add_option("--u", *u)->required();
        sub->add_option("--R", *R)->required();
        sub->add_option("--n-max", *n_max);
        add_io(sub, *io, /*with_seed=*/false);
        sub->callback([io, u, R, n_max] {
            const json config{{"u", *u}, {"R", *R}, {"n_max", *n_max}, {"format", io->format},
                              {"criticality", criticality_label(*u)}};
            json jrows = json::array();
            std::ostringstream csv;
            csv << "n,R,u,f_n,F_n,subcritical_bound,supercritical_lower\n";
            for (int n = 1; n <= *n_max; ++n) {
                const double f = n - 1 <= kExactTableDepth ? f_n(n, *R, *u)
                                                           : std::exp(log_f_n(n, *R, *u));
                const double F = n - 1 <= kExactTableDepth ? F_n(n, *R, *u)
                                                           : std::exp(log_F_n(n, *R, *u));
                const double sub_bound =
                    *u < 0.25 && *u > 0.0 ? subcritical_bound(*R, *u)
                                          : std::numeric_limits<double>::quiet_NaN();
                const double super_low = supercritical_lower(n - 1, *R, *u);
                jrows.push_back(json{{"n", n},
                                     {"f_n", f},
                                     {"F_n", F},
                                     {"subcritical_bound", sub_bound},
                                     {"supercritical_lower", super_low}});
                csv << n << "," << fmt17(*R) << "," << fmt17(*u) << "," << fmt17(f) << ","
                    << fmt17(F) << "," << fmt17(sub_bound) << "," << fmt17(super_low) << "\n";
            }
            emit(io->output, io->format, "branching-table", config, jrows, csv.str());
        });
    }

    // branching-sim --------------------------------------------------------------------
    {
        auto* sub = app.add_subcommand("branching-sim", "Monte Carlo E[X^n_{[0,R]}] vs F_n");
        auto io = std::make_shared<CommonOpts>();
        auto u = std::make_shared<double>(0.1);
        auto R = std::make_shared<double>(2.0);
        auto gens = std::make_shared<int>(4);
        auto reps = std::make_shared<std::uint64_t>(10000);
        auto cap_delta = std::make_shared<double>(40.0);
        auto pop_cap = std::make_shared<std::uint64_t>(1000000);
        auto dump = std::make_shared<std::string>("");
        sub->add_option("--u", *u)->required();
        sub->add_option("--R", *R)->required();
        sub->add_option("--gens", *gens);
        sub->add_option("--reps", *reps);
        sub->add_option("--cap-delta", *cap_delta);
        sub->add_option("--pop-cap", *pop_cap);
        sub->add_option("--dump-generations", *dump,
                        "write one realization's (generation,type) rows to this file");
        sub->add_option("--workers", io->workers);
        add_io(sub, *io);
        sub->callback([io, u, R, gens, reps, cap_delta, pop_cap, dump] {
            const ZetaOptions opts{*u, *R, *gens, *cap_delta, *pop_cap};
            auto task = [opts](RngStream& rng) {
                const auto g = simulate_zeta(rng, opts);
                std::vector<double> counts(opts.n_gens + 1, 0.0);
                for (int n = 1; n <= opts.n_gens; ++n)
                    counts[n - 1] = static_cast<double>(g[n].count_in(0.0, opts.R));
                counts[opts.n_gens] = g.back().truncated_mass;
                return counts;
            };
            const auto est = replicate_vec(task, *gens + 1, *reps, io->seed, io->workers);
            const json config{{"u", *u},           {"R", *R},
                              {"gens", *gens},     {"reps", *reps},
                              {"cap_delta", *cap_delta}, {"pop_cap", *pop_cap},
                              {"seed", io->seed},  {"workers", io->workers},
                              {"format", io->format}};
            json jrows = json::array();
            std::ostringstream csv;
            csv << "n,R,u,estimate,se,exact_F_n,truncation_bound\n";
            for (int n = 1; n <= *gens; ++n) {
                const double exact = F_n(n, *R, *u);
                jrows.push_back(json{{"n", n},
                                     {"estimate", est[n - 1].mean},
                                     {"se", est[n - 1].se},
                                     {"exact_F_n", exact},
                                     {"truncation_bound", est[*gens].mean}});
                csv << n << "," << fmt17(*R) << "," << fmt17(*u) << "," << fmt17(est[n - 1].mean)
                    << "," << fmt17(est[n - 1].se) << "," << fmt17(exact) << ","
                    << fmt17(est[*gens].mean) << "\n";
            }
            emit(io->output, io->format, "branching-sim", config, jrows, csv.str());
            if (!dump->empty()) {
                RngStream rng(io->seed, 0);
                const auto g = simulate_zeta(rng, opts);
                std::ostringstream rows;
                rows << "generation,type\n";
                for (const auto& gen : g)
                    for (double t : gen.types) rows << gen.generation_index << "," << fmt17(t) << "\n";
                write_output(*dump, rows.str());
            }
        });
    }

    // kernel-check --------------------------------------------------------------------------
    {
        auto* sub = app.add_subcommand("kernel-check", "offspring-kernel domination constant");
        auto io = std::make_shared<CommonOpts>();
        auto kernel = std::make_shared<std::string>("mu");
        auto u = std::make_shared<double>(1.0);
        auto factor = std::make_shared<double>(1.0);
        auto d = std::make_shared<int>(2);
        auto K = std::make_shared<int>(6);
        auto L = std::make_shared<int>(6);
        auto grid_pts = std::make_shared<int>(16);
        auto cell_width = std::make_shared<double>(1.0);
        auto n_mc = std::make_shared<std::uint64_t>(1000000);
        sub->add_option("--kernel", *kernel)->check(CLI::IsMember({"mu", "mu-scaled", "tau"}));
        sub->add_option("--u", *u)->required();
        sub->add_option("--factor", *factor, "scale for mu-scaled");
        sub->add_option("--d", *d, "dimension for the tau kernel");
        sub->add_option("--K", *K, "child bin grid 0..K");
        sub->add_option("--L", *L, "parent cell grid 0..L");
        sub->add_option("--grid-pts", *grid_pts);
        sub->add_option("--cell-width", *cell_width);
        sub->add_option("--n-mc", *n_mc, "lines per tau estimate");
        add_io(sub, *io);
        sub->callback([io, kernel, u, factor, d, K, L, grid_pts, cell_width, n_mc] {
            double c_hat = 0.0;
            if (*kernel == "tau") {
                c_hat = tau_domination_constant(*d, *u, *K, *L, *grid_pts, *n_mc, io->seed);
            } else if (*kernel == "mu-scaled") {
                c_hat = kernel_domination_constant(scaled_mu_kernel(*u, *factor), *u, *K, *L,
                                                   *grid_pts, *cell_width);
            } else {
                c_hat = kernel_domination_constant(mu_kernel(*u), *u, *K, *L, *grid_pts,
                                                   *cell_width);
            }
            const json config{{"kernel", *kernel}, {"u", *u},        {"factor", *factor},
                              {"d", *d},           {"K", *K},        {"L", *L},
                              {"grid_pts", *grid_pts}, {"cell_width", *cell_width},
                              {"n_mc", *n_mc},     {"seed", io->seed}, {"format", io->format}};
            std::ostringstream csv;
            csv << "c_hat\n" << fmt17(c_hat) << "\n";
            emit(io->output, io->format, "kernel-check", config, json{{"c_hat", c_hat}},
                 csv.str());
        });
    }

    // tau-bins ------------------------------------------------------------------------------
    {
        auto* sub = app.add_subcommand("tau-bins", "shell-bin masses of the geometric kernel");
        auto io = std::make_shared<CommonOpts>();
        auto d = std::make_shared<int>(2);
        auto u = std::make_shared<double>(1.0);
        auto x = std::make_shared<double>(6.0);
        auto l_max = std::make_shared<int>(7);
        auto n = std::make_shared<std::uint64_t>(1000000);
        sub->add_option("--d", *d)->required();
        sub->add_option("--u", *u)->required();
        sub->add_option("--x", *x, "parent line distance from the origin")->required();
        sub->add_option("--l-max", *l_max);
        sub->add_option("--n", *n);
        add_io(sub, *io);
        sub->callback([io, d, u, x, l_max, n] {
            RngStream rng(io->seed, 0);
            const auto bins = estimate_tau_bins(rng, *d, *u, *x, *l_max, *n);
            const json config{{"d", *d}, {"u", *u},     {"x", *x},       {"l_max", *l_max},
                              {"n", *n}, {"seed", io->seed}, {"format", io->format}};
            json jrows = json::array();
            std::ostringstream csv;
            csv << "l,tau_hat,se\n";
            for (int l = 0; l <= *l_max; ++l) {
                jrows.push_back(json{{"l", l}, {"tau_hat", bins[l].mean}, {"se", bins[l].se}});
                csv << l << "," << fmt17(bins[l].mean) << "," << fmt17(bins[l].se) << "\n";
            }
            emit(io->output, io->format, "tau-bins", config, jrows, csv.str());
        });
    }

    // eta-sim -------------------------------------------------------------------------------
    {
        auto* sub = app.add_subcommand("eta-sim", "independent cylinder process realization");
        auto io = std::make_shared<CommonOpts>();
        auto d = std::make_shared<int>(2);
        auto u = std::make_shared<double>(0.05);
        auto gens = std::make_shared<int>(3);
        auto window_r = std::make_shared<double>(5.0);
        auto line_cap = std::make_shared<std::uint64_t>(2000000);
        sub->add_option("--d", *d)->required();
        sub->add_option("--u", *u)->required();
        sub->add_option("--gens", *gens);
        sub->add_option("--window-r", *window_r);
        sub->add_option("--line-cap", *line_cap);
        add_io(sub, *io);
        sub->callback([io, d, u, gens, window_r, line_cap] {
            RngStream rng(io->seed, 0);
            const auto eta = simulate_eta(rng, *u, *d, *gens, *window_r, *line_cap);
            const json config{{"d", *d},     {"u", *u},          {"gens", *gens},
                              {"window_r", *window_r}, {"line_cap", *line_cap},
                              {"seed", io->seed}, {"format", io->format}};
            json jgens = json::array();
            std::ostringstream csv;
            csv << "generation,count,rho_bins\n";
            for (int g = 1; g <= *gens; ++g) {
                const auto bins = eta.rho_bin_counts(g);
                json jbins = json::array();
                std::ostringstream binstr;
                for (std::size_t l = 0; l < bins.size(); ++l) {
                    jbins.push_back(bins[l]);
                    binstr << (l ? ";" : "") << bins[l];
                }
                jgens.push_back(json{{"generation", g},
                                     {"count", eta.generations[g - 1].size()},
                                     {"rho_bins", jbins}});
                csv << g << "," << eta.generations[g - 1].size() << "," << binstr.str() << "\n";
            }
            emit(io->output, io->format, "eta-sim", config, jgens, csv.str());
        });
    }

    // growth-compare --------------------------------------------------------------------------
    {
        auto* sub = app.add_subcommand("growth-compare",
                                       "eta growth rate against the ambient line rate");
        auto io = std::make_shared<CommonOpts>();
        auto d = std::make_shared<int>(2);
        auto u = std::make_shared<double>(0.01);
        auto grid = std::make_shared<std::string>("2,3,4,5,6");
        auto gens = std::make_shared<int>(3);
        auto reps = std::make_shared<std::uint64_t>(5000);
        auto margin = std::make_shared<double>(0.0);
        sub->add_option("--d", *d)->required();
        sub->add_option("--u", *u)->required();
        sub->add_option("--R-grid", *grid);
        sub->add_option("--gens", *gens);
        sub->add_option("--reps", *reps);
        sub->add_option("--margin", *margin, "declare only below (d-1) - margin");
        sub->add_option("--workers", io->workers);
        add_io(sub, *io);
        sub->callback([io, d, u, grid, gens, reps, margin] {
            const auto rep = growth_rate_comparison(io->seed, io->workers, *d, *u,
                                                    parse_grid(*grid), *gens, *reps, *margin);
            const json config{{"d", *d},     {"u", *u},       {"R_grid", *grid},
                              {"gens", *gens}, {"reps", *reps}, {"margin", *margin},
                              {"seed", io->seed}, {"workers", io->workers},
                              {"format", io->format}};
            json jrows = json::array();
            std::ostringstream csv;
            csv << "R,eta_count,se,ambient_count,se\n";
            for (std::size_t i = 0; i < rep.R_grid.size(); ++i) {
                jrows.push_back(json{{"R", rep.R_grid[i]},
                                     {"eta", estimate_json(rep.eta_counts[i])},
                                     {"ambient", estimate_json(rep.ambient_counts[i])}});
                csv << fmt17(rep.R_grid[i]) << "," << fmt17(rep.eta_counts[i].mean) << ","
                    << fmt17(rep.eta_counts[i].se) << "," << fmt17(rep.ambient_counts[i].mean)
                    << "," << fmt17(rep.ambient_counts[i].se) << "\n";
            }
            csv << "# eta_rate," << fmt17(rep.eta_fit.slope) << ",se,"
                << fmt17(rep.eta_fit.slope_se) << "\n";
            csv << "# ambient_rate," << fmt17(rep.ambient_fit.slope) << ",se,"
                << fmt17(rep.ambient_fit.slope_se) << "\n";
            csv << "# subexponential_vs_ambient," << (rep.subexponential_vs_ambient ? 1 : 0)
                << "\n";
            const json results{{"rows", jrows},
                               {"eta_rate", rep.eta_fit.slope},
                               {"eta_rate_se", rep.eta_fit.slope_se},
                               {"ambient_rate", rep.ambient_fit.slope},
                               {"ambient_rate_se", rep.ambient_fit.slope_se},
                               {"subexponential_vs_ambient", rep.subexponential_vs_ambient}};
            emit(io->output, io->format, "growth-compare", config, results, csv.str());
        });
    }

    // net-build ---------------------------------------------------------------------------------
    {
        auto* sub = app.add_subcommand("net-build", "separated net of a window or shell");
        auto io = std::make_shared<CommonOpts>();
        auto d = std::make_shared<int>(2);
        auto r = std::make_shared<double>(5.0);
        auto spacing = std::make_shared<double>(0.5);
        auto shell_R = std::make_shared<double>(0.0);
        auto max_centers = std::make_shared<std::uint64_t>(200000);
        auto dump = std::make_shared<std::string>("");
        sub->add_option("--d", *d)->required();
        sub->add_option("--r", *r, "window radius (ball mode)");
        sub->add_option("--spacing", *spacing);
        sub->add_option("--shell-R", *shell_R, "build sphere centers at radius R instead");
        sub->add_option("--max-centers", *max_centers);
        sub->add_option("--dump-centers", *dump, "write centers as JSON points to this file");
        add_io(sub, *io);
        sub->callback([io, d, r, spacing, shell_R, max_centers, dump] {
            RngStream rng(io->seed, 0);
            NetOptions opts;
            opts.max_centers = *max_centers;
            json config{{"d", *d}, {"spacing", *spacing}, {"seed", io->seed},
                        {"max_centers", *max_centers}, {"format", io->format}};
            std::vector<Point> centers;
            json results;
            std::ostringstream csv;
            if (*shell_R > 0.0) {
                centers = shell_ball_centers(rng, *d, *shell_R, opts);
                config["shell_R"] = *shell_R;
                const double c_hat = static_cast<double>(centers.size()) /
                                     std::exp((*d - 1) * *shell_R);
                results = json{{"centers", centers.size()}, {"growth_constant", c_hat}};
                csv << "centers,growth_constant\n"
                    << centers.size() << "," << fmt17(c_hat) << "\n";
            } else {
                const Net net = greedy_net(rng, *d, *r, *spacing, opts);
                centers = net.centers;
                config["r"] = *r;
                results = json{{"centers", net.centers.size()},
                               {"packing", net.packing},
                               {"covering", net.covering}};
                csv << "centers,packing,covering\n"
                    << net.centers.size() << "," << fmt17(net.packing) << ","
                    << fmt17(net.covering) << "\n";
            }
            emit(io->output, io->format, "net-build", config, results, csv.str());
            if (!dump->empty()) {
                std::ostringstream pts;
                pts << "[";
                for (std::size_t i = 0; i < centers.size(); ++i)
                    pts << (i ? "," : "") << point_to_json(centers[i]);
                pts << "]\n";
                write_output(*dump, pts.str());
            }
        });
    }

    // acceptance -----------------------------------------------------------------------------------
    {
        auto* sub = app.add_subcommand("acceptance", "run the full verification suite");
        auto seed = std::make_shared<std::uint64_t>(20150405);
        auto workers = std::make_shared<int>(1);
        auto only = std::make_shared<std::vector<int>>();
        sub->add_option("--seed", *seed);
        sub->add_option("--workers", *workers);
        sub->add_option("--only", *only, "criterion ids to run");
        sub->callback([seed, workers, only, suite_failed] {
            acceptance::Options opts;
            opts.master_seed = *seed;
            opts.workers = *workers;
            opts.only = *only;
            const auto results = acceptance::run(opts, std::cout);
            *suite_failed = !acceptance::all_passed(results);
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return *suite_failed ? 1 : 0;
}

}  // namespace hypcyl::cli
