#include "paircorr/cli.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "json.hpp"

#include "paircorr/diagnostics.hpp"
#include "paircorr/energy.hpp"
#include "paircorr/generators.hpp"
#include "paircorr/io.hpp"
#include "paircorr/pair_correlation.hpp"
#include "paircorr/torus.hpp"

namespace paircorr {

namespace {

using json = nlohmann::ordered_json;

struct RunConfig {
    std::string command;
    int dim = 1;
    std::int64_t n = 0;
    std::vector<double> s;
    std::uint64_t seed = 0;
    std::string gen = "uniform";
    std::string alpha;
    std::string family = "identity";
    std::string poly_coeffs;
    std::string in_path;
    std::string out_path;
    std::string format = "csv";
    std::int64_t qmax = 100000;
    double rho = 1.0;
    int trials = 0;
    int grid_k = 64;
    double gamma = 0.1;
    int threads = 0; // resolved from PAIRCORR_THREADS; 0 = automatic
};

double parse_alpha_token(const std::string& tok) {
    if (tok == "sqrt2") return std::sqrt(2.0);
    if (tok == "sqrt3") return std::sqrt(3.0);
    if (tok == "sqrt5") return std::sqrt(5.0);
    if (tok == "phi") return (1.0 + std::sqrt(5.0)) / 2.0;
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size() || errno == ERANGE || !std::isfinite(v)) {
        throw std::invalid_argument("cannot parse alpha component '" + tok + "'");
    }
    return v;
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) parts.push_back(tok);
    return parts;
}

AlphaVector parse_alpha_list(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("--alpha is required for this generator");
    AlphaVector a;
    for (const auto& tok : split_commas(s)) a.alphas.push_back(parse_alpha_token(tok));
    return a;
}

std::vector<std::int64_t> parse_int_list(const std::string& s, const char* what) {
    std::vector<std::int64_t> vals;
    for (const auto& tok : split_commas(s)) {
        errno = 0;
        char* end = nullptr;
        const long long v = std::strtoll(tok.c_str(), &end, 10);
        if (tok.empty() || end != tok.c_str() + tok.size() || errno == ERANGE) {
            throw std::invalid_argument(std::string("cannot parse ") + what + " '" + tok + "'");
        }
        vals.push_back(v);
    }
    if (vals.empty()) throw std::invalid_argument(std::string(what) + " list is empty");
    return vals;
}

// Builds the point source described by --gen and friends. `--in` doubles
// as the integer-sequence file when a generator is involved (family=file)
// and as a points file otherwise; callers decide which path applies.
PointSet generate_points(const RunConfig& cfg, std::int64_t n) {
    if (cfg.gen == "uniform") {
        return uniform_points(cfg.dim, n, cfg.seed);
    }
    if (cfg.gen == "kronecker") {
        const AlphaVector alpha = parse_alpha_list(cfg.alpha);
        return kronecker_points(alpha, n);
    }
    if (cfg.gen == "an_alpha") {
        const AlphaVector alpha = parse_alpha_list(cfg.alpha);
        IntegerSequence seq;
        if (cfg.family == "file") {
            if (cfg.in_path.empty()) {
                throw std::invalid_argument("--family file needs --in <sequence file>");
            }
            seq = read_integer_sequence_file(cfg.in_path);
        } else {
            seq = make_integer_sequence(parse_sequence_family(cfg.family), n);
        }
        return sequence_alpha_points(seq, alpha, n);
    }
    if (cfg.gen == "poly") {
        const AlphaVector alpha = parse_alpha_list(cfg.alpha);
        if (cfg.poly_coeffs.empty()) {
            throw std::invalid_argument("--gen poly needs --poly-coeffs c0,c1,c2,...");
        }
        return polynomial_alpha_points(parse_int_list(cfg.poly_coeffs, "polynomial coefficient"),
                                       alpha, n);
    }
    if (cfg.gen == "halton") {
        return halton_points(cfg.dim, n);
    }
    throw std::invalid_argument("unknown generator: " + cfg.gen);
}

// Points for commands that accept either --in <points file> or a
// generator specification.
PointSet resolve_points(const RunConfig& cfg, bool gen_given) {
    if (!cfg.in_path.empty() && !gen_given) {
        return read_point_set_file(cfg.in_path);
    }
    if (cfg.n < 1) throw std::invalid_argument("--n must be >= 1");
    return generate_points(cfg, cfg.n);
}

json config_json(const RunConfig& cfg) {
    json j;
    j["command"] = cfg.command;
    j["dim"] = cfg.dim;
    j["n"] = cfg.n;
    if (!cfg.s.empty()) j["s"] = cfg.s;
    j["seed"] = cfg.seed;
    j["gen"] = cfg.gen;
    if (!cfg.alpha.empty()) j["alpha"] = cfg.alpha;
    j["family"] = cfg.family;
    if (!cfg.poly_coeffs.empty()) j["poly_coeffs"] = cfg.poly_coeffs;
    if (!cfg.in_path.empty()) j["in"] = cfg.in_path;
    if (!cfg.out_path.empty()) j["out"] = cfg.out_path;
    j["format"] = cfg.format;
    j["qmax"] = cfg.qmax;
    j["rho"] = cfg.rho;
    j["trials"] = cfg.trials;
    j["grid_k"] = cfg.grid_k;
    j["gamma"] = cfg.gamma;
    j["threads"] = cfg.threads;
    return j;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(cfg.out_path);
    if (!file) throw std::runtime_error("cannot open output file: " + cfg.out_path);
    file << text;
}

void require_format(const RunConfig& cfg, const char* allowed) {
    if (cfg.format != allowed) {
        throw std::invalid_argument(cfg.command + " only supports --format " + allowed);
    }
}

json witness_json(const KroneckerWitness& w) {
    json j;
    j["q"] = w.q;
    j["theta"] = w.theta;
    j["A"] = w.a;
    j["B"] = w.b;
    j["L"] = w.l;
    j["nu_tilde"] = w.nu_tilde;
    j["N"] = w.n;
    j["lag"] = w.lag;
    j["lag_distance"] = w.lag_distance;
    j["pair_count_at_lag"] = w.pair_count_at_lag;
    j["gamma_bound"] = w.gamma_bound;
    j["sandwich_lo"] = w.sandwich_lo;
    j["sandwich_hi"] = w.sandwich_hi;
    j["sandwich_ok"] = w.sandwich_ok;
    return j;
}

int run_generate(const RunConfig& cfg, std::ostream& out) {
    if (cfg.n < 1) throw std::invalid_argument("--n must be >= 1");
    const PointSet pts = generate_points(cfg, cfg.n);
    std::ostringstream text;
    write_point_set(text, pts, config_json(cfg).dump());
    emit(cfg, text.str(), out);
    return 0;
}

int run_paircorr(const RunConfig& cfg, bool gen_given, std::ostream& out) {
    const SGrid grid = SGrid::of(cfg.s);

    if (cfg.trials > 0) {
        // Monte Carlo moment mode: resample --trials uniform sets per scale.
        if (cfg.gen != "uniform") {
            throw std::invalid_argument("--trials requires --gen uniform");
        }
        if (cfg.n < 2) throw std::invalid_argument("--n must be >= 2");
        std::vector<MomentEstimate> rows;
        for (double s : grid.values) {
            rows.push_back(monte_carlo_moments(cfg.dim, cfg.n, s, cfg.trials, cfg.seed));
        }
        if (cfg.format == "json") {
            json j;
            j["config"] = config_json(cfg);
            j["rows"] = json::array();
            for (std::size_t i = 0; i < rows.size(); ++i) {
                json r;
                r["s"] = grid.values[i];
                r["mean_F"] = rows[i].mean;
                r["variance"] = rows[i].variance;
                r["expected_F"] = expected_pair_correlation(cfg.n, grid.values[i], cfg.dim);
                r["poisson_ref"] = poisson_reference(grid.values[i], cfg.dim);
                j["rows"].push_back(r);
            }
            emit(cfg, j.dump(2) + "\n", out);
        } else {
            std::ostringstream text;
            text << "# " << config_json(cfg).dump() << "\n";
            text << "s,mean_F,variance,expected_F,poisson_ref\n";
            for (std::size_t i = 0; i < rows.size(); ++i) {
                text << format_double(grid.values[i]) << "," << format_double(rows[i].mean) << ","
                     << format_double(rows[i].variance) << ","
                     << format_double(expected_pair_correlation(cfg.n, grid.values[i], cfg.dim))
                     << "," << format_double(poisson_reference(grid.values[i], cfg.dim)) << "\n";
            }
            emit(cfg, text.str(), out);
        }
        return 0;
    }

    const PointSet pts = resolve_points(cfg, gen_given);
    const PairCorrResult result = pair_correlation_cell_list(pts, grid);
    if (cfg.format == "json") {
        json j;
        j["config"] = config_json(cfg);
        j["N"] = result.n;
        j["dim"] = result.dim;
        j["s_values"] = result.s_values;
        j["counts"] = result.counts;
        j["f_values"] = result.f_values;
        j["poisson_ref"] = result.poisson_ref;
        j["label"] = result.label;
        emit(cfg, j.dump(2) + "\n", out);
    } else {
        emit(cfg, to_csv(result, config_json(cfg).dump()), out);
    }
    return 0;
}

int run_energy(const RunConfig& cfg, std::ostream& out) {
    require_format(cfg, "json");
    if (cfg.n < 1) throw std::invalid_argument("--n must be >= 1");
    IntegerSequence seq;
    if (cfg.family == "file") {
        if (cfg.in_path.empty()) throw std::invalid_argument("--family file needs --in");
        seq = read_integer_sequence_file(cfg.in_path);
    } else {
        seq = make_integer_sequence(parse_sequence_family(cfg.family), cfg.n);
    }
    const EnergyReport report = additive_energy(seq, cfg.n);
    const RegimeThresholds thresholds;
    const EnergyRegime regime = classify_energy_regime(report, thresholds);

    // Largest representation counts first; ties broken by the difference
    // value so output is stable.
    std::vector<std::pair<std::int64_t, std::int64_t>> top(report.rep_function.begin(),
                                                           report.rep_function.end());
    std::sort(top.begin(), top.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (top.size() > 100) top.resize(100);

    json j;
    j["config"] = config_json(cfg);
    j["N"] = report.n;
    j["energy"] = report.energy;
    j["normalized"] = report.normalized;
    j["regime"] = to_string(regime);
    j["thresholds"] = {{"tau_max", thresholds.tau_max},
                       {"kappa", thresholds.kappa},
                       {"c", thresholds.c}};
    j["top_representations"] = json::array();
    for (const auto& [v, count] : top) j["top_representations"].push_back({v, count});
    emit(cfg, j.dump(2) + "\n", out);
    return 0;
}

int run_converge(const RunConfig& cfg, std::ostream& out) {
    if (cfg.n < 1) throw std::invalid_argument("--n must be >= 1");
    const SGrid grid = SGrid::of(cfg.s);
    const auto n_values = subsequence_schedule(std::min<std::int64_t>(10, cfg.n), cfg.n, cfg.gamma);
    const ConvergenceSweep sweep = convergence_sweep(
        [&](std::int64_t n) { return generate_points(cfg, n); }, grid, n_values);
    if (cfg.format == "json") {
        json j;
        j["config"] = config_json(cfg);
        j["dim"] = sweep.dim;
        j["label"] = sweep.label;
        j["s_values"] = sweep.s_values;
        j["n_values"] = sweep.n_values;
        j["f"] = sweep.f;
        j["abs_dev"] = sweep.abs_dev;
        emit(cfg, j.dump(2) + "\n", out);
    } else {
        emit(cfg, to_csv(sweep, config_json(cfg).dump()), out);
    }
    return 0;
}

int run_witness(const RunConfig& cfg, std::ostream& out) {
    require_format(cfg, "json");
    const AlphaVector alpha = parse_alpha_list(cfg.alpha);
    const auto hits = simultaneous_approx_search(alpha, cfg.qmax, cfg.rho);
    if (hits.empty()) {
        throw std::runtime_error("no q <= " + std::to_string(cfg.qmax) +
                                 " approximates alpha with theta < " + std::to_string(cfg.rho));
    }
    const auto best = std::min_element(hits.begin(), hits.end(), [](const auto& a, const auto& b) {
        if (a.theta != b.theta) return a.theta < b.theta;
        return a.q < b.q;
    });
    const KroneckerWitness w = build_kronecker_witness(alpha, best->q, best->theta, cfg.rho);
    json j;
    j["config"] = config_json(cfg);
    j.update(witness_json(w));
    emit(cfg, j.dump(2) + "\n", out);
    return 0;
}

int run_approx(const RunConfig& cfg, std::ostream& out) {
    const AlphaVector alpha = parse_alpha_list(cfg.alpha);
    const auto hits = simultaneous_approx_search(alpha, cfg.qmax, cfg.rho);
    if (cfg.format == "json") {
        json j;
        j["config"] = config_json(cfg);
        j["hits"] = json::array();
        for (const auto& h : hits) j["hits"].push_back({{"q", h.q}, {"theta", h.theta}});
        emit(cfg, j.dump(2) + "\n", out);
    } else {
        std::ostringstream text;
        text << "# " << config_json(cfg).dump() << "\n";
        text << "q,theta\n";
        for (const auto& h : hits) text << h.q << "," << format_double(h.theta) << "\n";
        emit(cfg, text.str(), out);
    }
    return 0;
}

int run_discrepancy(const RunConfig& cfg, bool gen_given, std::ostream& out) {
    const PointSet pts = resolve_points(cfg, gen_given);
    const double value = star_discrepancy_estimate(pts, cfg.grid_k);
    const bool exact = pts.dim() == 1;
    if (cfg.format == "json") {
        json j;
        j["config"] = config_json(cfg);
        j["N"] = pts.size();
        j["dim"] = pts.dim();
        j["grid_k"] = cfg.grid_k;
        j["exact"] = exact;
        j["discrepancy"] = value;
        emit(cfg, j.dump(2) + "\n", out);
    } else {
        std::ostringstream text;
        text << "# " << config_json(cfg).dump() << "\n";
        text << "N,dim,grid_k,exact,discrepancy\n";
        text << pts.size() << "," << pts.dim() << "," << cfg.grid_k << "," << (exact ? 1 : 0)
             << "," << format_double(value) << "\n";
        emit(cfg, text.str(), out);
    }
    return 0;
}

int resolve_threads() {
    const char* env = std::getenv("PAIRCORR_THREADS");
    if (env == nullptr || *env == '\0') return 0;
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || errno == ERANGE || v < 0) {
        throw std::invalid_argument(std::string("PAIRCORR_THREADS must be a non-negative integer, got '") +
                                    env + "'");
    }
#ifdef _OPENMP
    if (v > 0) omp_set_num_threads(static_cast<int>(v));
#endif
    return static_cast<int>(v);
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"pair correlation statistics for sequences on the torus"};
    app.require_subcommand(1);

    const auto add_gen_flags = [&](CLI::App* cmd) {
        cmd->add_option("--dim", cfg.dim, "dimension of the torus");
        cmd->add_option("--n", cfg.n, "number of points / sequence length");
        cmd->add_option("--seed", cfg.seed, "PRNG seed (uniform generator)");
        cmd->add_option("--gen", cfg.gen, "generator: uniform|kronecker|an_alpha|poly|halton");
        cmd->add_option("--alpha", cfg.alpha,
                        "comma list of direction components; tokens sqrt2, sqrt3, sqrt5, phi");
        cmd->add_option("--family", cfg.family,
                        "integer family: identity|squares|cubes|primes|lacunary_base2|file");
        cmd->add_option("--poly-coeffs", cfg.poly_coeffs, "ascending polynomial coefficients");
        cmd->add_option("--in", cfg.in_path, "input file (points, or integers with --family file)");
    };
    const auto add_output_flags = [&](CLI::App* cmd) {
        cmd->add_option("--out", cfg.out_path, "output path (default stdout)");
        cmd->add_option("--format", cfg.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    CLI::App* generate = app.add_subcommand("generate", "write a point set");
    add_gen_flags(generate);
    generate->add_option("--out", cfg.out_path, "output path (default stdout)");

    CLI::App* paircorr_cmd = app.add_subcommand("paircorr", "pair correlation statistic");
    add_gen_flags(paircorr_cmd);
    add_output_flags(paircorr_cmd);
    paircorr_cmd->add_option("--s", cfg.s, "comma list of scales")->delimiter(',');
    paircorr_cmd->add_option("--trials", cfg.trials,
                             "Monte Carlo mode: mean/variance over this many uniform samples");

    CLI::App* energy = app.add_subcommand("energy", "additive energy report");
    energy->add_option("--family", cfg.family, "integer family or 'file'");
    energy->add_option("--in", cfg.in_path, "integer sequence file");
    energy->add_option("--n", cfg.n, "number of leading terms");
    add_output_flags(energy);

    CLI::App* converge = app.add_subcommand("converge", "statistic over growing prefixes");
    add_gen_flags(converge);
    add_output_flags(converge);
    converge->add_option("--s", cfg.s, "comma list of scales")->delimiter(',');
    converge->add_option("--gamma", cfg.gamma, "prefix schedule exponent (N ~ M^(1+gamma))");

    CLI::App* witness = app.add_subcommand("witness", "lag-pair witness for a direction pair");
    witness->add_option("--alpha", cfg.alpha, "two components");
    witness->add_option("--qmax", cfg.qmax, "search bound");
    witness->add_option("--rho", cfg.rho, "approximation quality threshold in (0,1]");
    witness->add_option("--out", cfg.out_path, "output path (default stdout)");
    witness->add_option("--format", cfg.format, "json")->check(CLI::IsMember({"csv", "json"}));

    CLI::App* approx = app.add_subcommand("approx", "simultaneous approximation search");
    approx->add_option("--alpha", cfg.alpha, "two components");
    approx->add_option("--qmax", cfg.qmax, "search bound");
    approx->add_option("--rho", cfg.rho, "approximation quality threshold in (0,1]");
    add_output_flags(approx);

    CLI::App* discrepancy = app.add_subcommand("discrepancy", "star discrepancy");
    add_gen_flags(discrepancy);
    add_output_flags(discrepancy);
    discrepancy->add_option("--grid-k", cfg.grid_k, "grid cells per side (d >= 2)");

    std::vector<const char*> argv;
    argv.push_back("paircorr");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream msg;
        const int code = app.exit(e, out, msg);
        err << msg.str();
        return code == 0 ? 0 : 1;
    }

    try {
        cfg.threads = resolve_threads();
        CLI::App* sub = app.get_subcommands().front();
        cfg.command = sub->get_name();
        if (cfg.command == "energy" && !sub->get_option("--format")->count()) {
            cfg.format = "json";
        }
        if (cfg.command == "witness" && !sub->get_option("--format")->count()) {
            cfg.format = "json";
        }
        const bool gen_given = sub->get_option_no_throw("--gen") != nullptr &&
                               sub->get_option("--gen")->count() > 0;
        // Alpha-driven generators take their dimension from the component
        // count; resolve it so the echoed config matches the run.
        if ((cfg.gen == "kronecker" || cfg.gen == "an_alpha" || cfg.gen == "poly") &&
            !cfg.alpha.empty()) {
            cfg.dim = static_cast<int>(split_commas(cfg.alpha).size());
        }

        if (cfg.command == "generate") return run_generate(cfg, out);
        if (cfg.command == "paircorr") return run_paircorr(cfg, gen_given, out);
        if (cfg.command == "energy") return run_energy(cfg, out);
        if (cfg.command == "converge") return run_converge(cfg, out);
        if (cfg.command == "witness") return run_witness(cfg, out);
        if (cfg.command == "approx") return run_approx(cfg, out);
        if (cfg.command == "discrepancy") return run_discrepancy(cfg, gen_given, out);
        err << "error: unknown command\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace paircorr
