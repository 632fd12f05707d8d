#include "cfml/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "cfml/enumerator.hpp"
#include "cfml/equidist.hpp"
#include "cfml/errors.hpp"
#include "cfml/heuristic.hpp"
#include "cfml/io.hpp"
#include "cfml/number_theory.hpp"
#include "cfml/sl2_oracle.hpp"

namespace cfml::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

// Thrown for option values CLI11 accepts syntactically but the command rejects.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct EnumerateOptions {
    int alphabet = 5;
    std::uint64_t max_n = 0;
    int threads = 0;
    std::string out = "mult.csv";
};

struct CompareOptions {
    std::string in;
    double window = kDefaultWindowFraction;
    std::string out = "compare.csv";
    std::string plot;
};

struct EquidistOptions {
    int alphabet = 5;
    std::uint64_t max_n = 0;
    int moduli = 30;
    int threads = 0;
    std::string out = "equi.csv";
    std::string plot;
};

struct VerifyOptions {
    std::vector<int> prime_powers{2, 3, 4, 5, 8, 9, 25, 27};
    std::int64_t cbar_n_max = 12;
    std::int64_t q_max = 50;
    std::int64_t ram_n_max = 50;
    std::uint32_t avg_n_max = 1'000'000;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CFML_THREADS"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const long value = std::strtol(env, &end, 10);
        if (*end != '\0' || value < 1 || value > 4096) {
            throw UsageError(std::string("CFML_THREADS must be a positive integer, got '") + env + "'");
        }
        return static_cast<int>(value);
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

io::OutputFile emit(const fs::path& path, const std::string& content) {
    io::write_file_atomic(path, content);
    return {path.string(), io::sha256_hex(content)};
}

void emit_manifest(const fs::path& data_path, io::RunManifest manifest) {
    io::write_file_atomic(io::manifest_path_for(data_path), io::manifest_json(manifest));
}

int cmd_enumerate(const EnumerateOptions& opt, std::ostream& out) {
    if (opt.max_n < 2) {
        throw UsageError("--max-n must be >= 2");
    }
    const auto start = Clock::now();
    EnumConfig config;
    config.alphabet_bound = opt.alphabet;
    config.target_bound = opt.max_n;
    config.worker_count = resolve_threads(opt.threads);
    const auto result = enumerate(config);

    io::RunManifest manifest;
    manifest.command = "enumerate";
    manifest.alphabet = opt.alphabet;
    manifest.max_n = opt.max_n;
    manifest.threads = config.worker_count;
    manifest.outputs.push_back(emit(opt.out, io::mult_csv(result.tally)));
    manifest.seconds = seconds_since(start);
    emit_manifest(opt.out, manifest);

    out << "nodes " << result.tally.total_nodes() << " ball(" << opt.max_n
        << ") " << result.tally.ball(opt.max_n) << "\n";
    return kOk;
}

int cmd_compare(const CompareOptions& opt, std::ostream& out) {
    const auto start = Clock::now();
    const TallyTable tally = io::parse_mult_csv(io::read_file(opt.in));
    const PowerLawFit fit = fit_growth(tally, opt.window);
    const SpfSieve sieve(static_cast<std::uint32_t>(tally.bound()));
    const auto records = compare(tally, fit, sieve);
    const double partial = partial_sum_check(tally, fit, sieve, tally.bound());

    io::RunManifest manifest;
    manifest.command = "compare";
    manifest.max_n = tally.bound();
    manifest.window = opt.window;
    manifest.outputs.push_back(emit(opt.out, io::compare_csv(records)));

    std::size_t zero_targets = 0;
    for (const auto& r : records) {
        if (r.exact_mult == 0) ++zero_targets;
    }
    if (!opt.plot.empty()) {
        std::vector<double> xs;
        std::vector<double> ys;
        xs.reserve(records.size());
        ys.reserve(records.size());
        for (const auto& r : records) {
            xs.push_back(static_cast<double>(r.n));
            ys.push_back(r.ratio);
        }
        io::ScatterOptions style;
        style.title = "Multiplicity / heuristic ratio";
        style.x_label = "n";
        style.y_label = "mult(n) / heuristic(n)";
        style.reference_y = 1.0;
        manifest.outputs.push_back(emit(opt.plot, io::scatter_svg(xs, ys, style)));
    }
    manifest.seconds = seconds_since(start);
    emit_manifest(opt.out, manifest);

    out << "ratio orientation: exact / heuristic\n";
    out << "fit window [" << fit.window_lo << ", " << fit.window_hi << "] points " << fit.points << "\n";
    out << "c " << io::format_real(fit.c) << "\n";
    out << "two_delta " << io::format_real(fit.two_delta) << "\n";
    out << "rms_residual " << io::format_real(fit.rms_residual) << "\n";
    out << "partial_sum_check(" << tally.bound() << ") " << io::format_real(partial) << "\n";
    out << "zero_multiplicity_targets " << zero_targets << "\n";
    return kOk;
}

int cmd_equidist(const EquidistOptions& opt, std::ostream& out) {
    if (opt.max_n < 2) {
        throw UsageError("--max-n must be >= 2");
    }
    if (opt.moduli < 1 || static_cast<std::uint64_t>(opt.moduli) > opt.max_n) {
        throw UsageError("--moduli must lie in 1..max-n");
    }
    const auto start = Clock::now();
    EnumConfig config;
    config.alphabet_bound = opt.alphabet;
    config.target_bound = opt.max_n;
    config.worker_count = resolve_threads(opt.threads);
    config.residue_moduli_max = opt.moduli;
    const auto result = enumerate(config);
    const ResidueHistogram& h = *result.residues;
    if (h.total() == 0) {
        throw DataError("truncation is empty");
    }

    io::RunManifest manifest;
    manifest.command = "equidist";
    manifest.alphabet = opt.alphabet;
    manifest.max_n = opt.max_n;
    manifest.moduli = opt.moduli;
    manifest.threads = config.worker_count;
    manifest.outputs.push_back(emit(opt.out, io::equidist_csv(h)));
    if (!opt.plot.empty()) {
        std::vector<double> xs;
        std::vector<double> ys;
        for (int m = 1; m <= opt.moduli; ++m) {
            xs.push_back(m);
            ys.push_back(normalized_largest_error(h, m));
        }
        io::ScatterOptions style;
        style.title = "Largest residue error by modulus";
        style.x_label = "modulus m";
        style.y_label = "largest |count - |T|/m| / |T|";
        manifest.outputs.push_back(emit(opt.plot, io::scatter_svg(xs, ys, style)));
    }
    manifest.seconds = seconds_since(start);
    emit_manifest(opt.out, manifest);

    out << "truncation size " << h.total() << "\n";
    return kOk;
}

int report(json result, std::ostream& out, std::ostream& err) {
    const bool passed = result["passed"].get<bool>();
    out << result.dump(2) << "\n";
    if (!passed) {
        err << "verification failed: " << result["counterexample"].dump() << "\n";
        return kVerifyFailed;
    }
    return kOk;
}

int verify_cbar(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
    if (opt.cbar_n_max < 0) {
        throw UsageError("--n-max must be >= 0");
    }
    json result{{"check", "cbar"}, {"passed", true}, {"rows", json::array()},
                {"counterexample", nullptr}};
    for (int q : opt.prime_powers) {
        int p = 0;
        int t = 0;
        if (!as_prime_power(q, p, t) || q > kMaxOracleModulus) {
            throw UsageError("--prime-powers entry " + std::to_string(q) +
                             " is not a prime power in 2.." + std::to_string(kMaxOracleModulus));
        }
        const Sl2ModQ group = enumerate_sl2(q);
        for (std::int64_t n = 0; n <= opt.cbar_n_max; ++n) {
            const Rational brute = cbar_bruteforce(group, n);
            const Rational closed = cbar_closed(p, t, n);
            const bool ok = brute == closed;
            json row{{"q", q},
                     {"p", p},
                     {"t", t},
                     {"n", n},
                     {"bruteforce", to_string(brute)},
                     {"closed", to_string(closed)},
                     {"pass", ok}};
            if (!ok && result["passed"].get<bool>()) {
                result["passed"] = false;
                result["counterexample"] = row;
            }
            result["rows"].push_back(std::move(row));
        }
    }
    return report(std::move(result), out, err);
}

int verify_ramanujan(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
    if (opt.q_max < 1 || opt.ram_n_max < 0) {
        throw UsageError("--q-max must be >= 1 and --n-max >= 0");
    }
    constexpr double kTolerance = 1e-6;
    json result{{"check", "ramanujan"}, {"tolerance", kTolerance}, {"passed", true},
                {"rows", json::array()}, {"counterexample", nullptr}};
    for (std::int64_t q = 1; q <= opt.q_max; ++q) {
        double worst = 0.0;
        for (std::int64_t n = 0; n <= opt.ram_n_max; ++n) {
            const auto exact = ramanujan_c(q, n);
            const auto direct = ramanujan_c_direct(q, n);
            const double error = std::abs(direct - std::complex<double>(static_cast<double>(exact), 0.0));
            worst = std::max(worst, error);
            if (!(error < kTolerance) && result["passed"].get<bool>()) {
                result["passed"] = false;
                result["counterexample"] = {{"q", q}, {"n", n}, {"closed", exact},
                                            {"direct_re", direct.real()}, {"direct_im", direct.imag()}};
            }
        }
        result["rows"].push_back({{"q", q}, {"max_abs_error", worst}, {"pass", worst < kTolerance}});
    }
    return report(std::move(result), out, err);
}

int verify_avg_singular(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
    if (opt.avg_n_max < 1) {
        throw UsageError("--n-max must be >= 1");
    }
    constexpr double kTolerance = 1e-3;
    std::vector<std::uint32_t> checkpoints;
    for (std::uint64_t n = 1000; n < opt.avg_n_max; n *= 10) {
        checkpoints.push_back(static_cast<std::uint32_t>(n));
    }
    checkpoints.push_back(opt.avg_n_max);

    const SpfSieve sieve(opt.avg_n_max);
    json result{{"check", "avg-singular"}, {"tolerance", kTolerance}, {"passed", true},
                {"rows", json::array()}, {"counterexample", nullptr}};
    long double sum = 0.0L;
    std::size_t next = 0;
    double previous_error = INFINITY;
    for (std::uint32_t n = 1; n <= opt.avg_n_max; ++n) {
        sum += singular_series(n, sieve);
        if (n != checkpoints[next]) continue;
        const double average = static_cast<double>(sum / n);
        const double error = std::abs(average - 1.0);
        const bool decreasing = error < previous_error;
        const bool final_ok = n != opt.avg_n_max || error < kTolerance;
        json row{{"n", n}, {"average", average}, {"abs_error", error},
                 {"decreasing", decreasing}, {"pass", decreasing && final_ok}};
        if (!(decreasing && final_ok) && result["passed"].get<bool>()) {
            result["passed"] = false;
            result["counterexample"] = row;
        }
        result["rows"].push_back(std::move(row));
        previous_error = error;
        ++next;
    }
    return report(std::move(result), out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact multiplicity counts for bounded continued fractions and their heuristic"};
    app.name(args.empty() ? "cfml" : args.front());
    app.require_subcommand(1);

    EnumerateOptions en;
    auto* enumerate_cmd = app.add_subcommand("enumerate", "Tally mult(n) and |B_n| for n <= N");
    enumerate_cmd->add_option("--alphabet", en.alphabet, "Largest partial quotient A")
        ->capture_default_str()
        ->check(CLI::Range(1, 64));
    enumerate_cmd->add_option("--max-n", en.max_n, "Largest denominator N")->required();
    enumerate_cmd->add_option("--threads", en.threads, "Worker threads (default: $CFML_THREADS or all cores)")
        ->check(CLI::Range(1, 4096));
    enumerate_cmd->add_option("--out", en.out, "Output CSV (n,mult,ball)")->capture_default_str();

    CompareOptions co;
    auto* compare_cmd = app.add_subcommand("compare", "Compare exact multiplicities with the heuristic");
    compare_cmd->add_option("--in", co.in, "mult.csv from the enumerate command")->required();
    compare_cmd->add_option("--window", co.window, "Growth fit window as a fraction of N")
        ->capture_default_str();
    compare_cmd->add_option("--out", co.out, "Output CSV (n,mult,heuristic,singular,ratio)")
        ->capture_default_str();
    compare_cmd->add_option("--plot", co.plot, "Optional SVG scatter of ratio against n");

    EquidistOptions eq;
    auto* equidist_cmd = app.add_subcommand("equidist", "Residue-class errors of f(gamma) mod m");
    equidist_cmd->add_option("--alphabet", eq.alphabet, "Largest partial quotient A")
        ->capture_default_str()
        ->check(CLI::Range(1, 64));
    equidist_cmd->add_option("--max-n", eq.max_n, "Truncation bound on d")->required();
    equidist_cmd->add_option("--moduli", eq.moduli, "Largest modulus M")->capture_default_str();
    equidist_cmd->add_option("--threads", eq.threads, "Worker threads")->check(CLI::Range(1, 4096));
    equidist_cmd->add_option("--out", eq.out, "Output CSV (m,largest_abs_error,normalized_error)")
        ->capture_default_str();
    equidist_cmd->add_option("--plot", eq.plot, "Optional SVG of normalized error against m");

    VerifyOptions ve;
    auto* verify_cmd = app.add_subcommand("verify", "Oracle-equivalence sweeps");
    verify_cmd->require_subcommand(1);
    auto* cbar_cmd = verify_cmd->add_subcommand("cbar", "Brute-force SL2 local factors vs closed form");
    cbar_cmd->add_option("--prime-powers", ve.prime_powers, "Comma-separated moduli p^t")
        ->delimiter(',')
        ->capture_default_str();
    cbar_cmd->add_option("--n-max", ve.cbar_n_max, "Targets n = 0..n-max")->capture_default_str();
    auto* ramanujan_cmd = verify_cmd->add_subcommand("ramanujan", "Closed-form vs direct Ramanujan sums");
    ramanujan_cmd->add_option("--q-max", ve.q_max)->capture_default_str();
    ramanujan_cmd->add_option("--n-max", ve.ram_n_max)->capture_default_str();
    auto* avg_cmd = verify_cmd->add_subcommand("avg-singular", "Mean of the singular series tends to 1");
    avg_cmd->add_option("--n-max", ve.avg_n_max)->capture_default_str();

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    if (args.empty()) argv.push_back("cfml");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().back()->help());
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    }

    CLI::App* active = app.get_subcommands().front();
    try {
        if (active == enumerate_cmd) return cmd_enumerate(en, out);
        if (active == compare_cmd) return cmd_compare(co, out);
        if (active == equidist_cmd) return cmd_equidist(eq, out);
        CLI::App* check = verify_cmd->get_subcommands().front();
        if (check == cbar_cmd) return verify_cbar(ve, out, err);
        if (check == ramanujan_cmd) return verify_ramanujan(ve, out, err);
        return verify_avg_singular(ve, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << active->help();
        return kUsage;
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << "\n\n" << active->help();
        return kUsage;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << "\n";
        return kIo;
    } catch (const ParseError& e) {
        err << "parse error in input: " << e.what() << "\n";
        return kParse;
    } catch (const DataError& e) {
        err << "data error: " << e.what() << "\n";
        return kParse;
    }
}

}  // namespace cfml::cli
