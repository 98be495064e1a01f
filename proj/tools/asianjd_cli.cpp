// Command line front end: price, parity, mc, study and tables.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "asianjd/asianjd.hpp"

using namespace asianjd;

namespace {

struct Options {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out;
    std::string echo;
    std::string iterations;
    int threads = 1;
    std::optional<std::uint64_t> seed;
    bool full_scale = false;
    bool keep_going = false;
    bool antithetic = false;
    bool skip_mc = false;
    std::string sweep;
};

void apply_runtime(RunConfig& cfg, const Options& o) {
    cfg.iteration.threads = o.threads;
    cfg.mc.threads = o.threads;
    if (o.seed) cfg.mc.seed = *o.seed;
    if (o.full_scale) {
        cfg.mc.paths = 1000000;
        cfg.mc.time_steps = 1000;
    }
    if (o.antithetic) cfg.mc.antithetic = true;
}

RunConfig make_config(const Options& o) {
    RunConfig cfg = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
    for (const std::string& kv : o.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
        set_config_value(cfg, detail::trim(kv.substr(0, eq)), detail::trim(kv.substr(eq + 1)));
    }
    if (!o.out.empty()) cfg.output = o.out;
    apply_runtime(cfg, o);
    cfg.validate();
    return cfg;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write '" + path + "'");
    f << text;
}

void write_echo(const Options& o, const RunConfig& cfg) {
    if (!o.echo.empty()) emit(o.echo, to_text(cfg));
}

int run_price(const Options& o) {
    const RunConfig cfg = make_config(o);
    const PriceReport rep = price_command(cfg);
    emit(cfg.output, to_csv(std::vector<ReportRow>{rep.row}));
    write_echo(o, cfg);
    const IterationReport& it = *rep.iteration;
    if (!o.iterations.empty()) emit(o.iterations, iteration_csv(it));
    std::fprintf(stderr, "%s: price %.6f after %d iterations (last delta %.3g, bound ratio %.5f)\n",
                 cfg.id.c_str(), *rep.row.price, it.iterations,
                 it.deltas.empty() ? 0.0 : it.deltas.back(), it.contraction_factor);
    if (!it.positivity.holds())
        std::fprintf(stderr, "%s: note: %ld grid nodes with a non-positive scheme coefficient\n",
                     cfg.id.c_str(), static_cast<long>(it.positivity.violations));
    return 0;
}

int run_parity(const Options& o) {
    const RunConfig cfg = make_config(o);
    const ParityReport pr = parity_command(cfg);
    emit(cfg.output, to_csv(std::vector<ReportRow>{pr.call.row, pr.put.row}));
    write_echo(o, cfg);
    std::fprintf(stderr, "%s: C - P = %.6f, parity = %.6f, residual = %.3g\n", cfg.id.c_str(),
                 pr.c_minus_p, pr.parity_gap, pr.residual());
    return 0;
}

int run_mc(const Options& o) {
    const RunConfig cfg = make_config(o);
    const PriceReport rep = mc_command(cfg);
    emit(cfg.output, to_csv(std::vector<ReportRow>{rep.row}));
    write_echo(o, cfg);
    const MCResult& r = *rep.mc;
    std::fprintf(stderr,
                 "%s: %ld paths x %d steps, price %.6f +- %.6f, e^{-rT}E[S_T] %.4f +- %.4f\n",
                 cfg.id.c_str(), r.paths_used, cfg.mc.time_steps, r.price, r.std_error,
                 r.discounted_terminal_mean, r.discounted_terminal_stderr);
    return 0;
}

int report_study(const StudyResult& s, const Options& o, const std::string& path) {
    emit(path, to_csv(s));
    int failed = 0;
    for (const auto& r : s.rows)
        if (!r.error.empty()) {
            ++failed;
            std::fprintf(stderr, "point %s failed: %s\n", r.label.c_str(), r.error.c_str());
        }
    return failed > 0 && !o.keep_going ? 1 : 0;
}

int run_study(const Options& o) {
    const RunConfig cfg = make_config(o);
    const std::string sweep = o.sweep.empty() ? cfg.sweep : o.sweep;
    if (sweep.empty()) throw ConfigError("study: no sweep given (use --sweep or study.sweep)");
    return report_study(convergence_command(cfg, parse_sweep(sweep)), o, cfg.output);
}

std::string table_path(const Options& o, const std::string& name) {
    if (o.out.empty() || o.out == "-") return {};
    return o.out + "/" + name;
}

std::vector<ReportRow> reference_rows(const RunConfig& base_runtime, RunConfig cfg, bool with_mc) {
    cfg.iteration.threads = base_runtime.iteration.threads;
    cfg.mc = base_runtime.mc;
    const ParityReport pr = parity_command(cfg);
    ReportRow call = pr.call.row, put = pr.put.row;
    if (with_mc) {
        const MCParity mc = simulate_call_put(cfg.contract, cfg.model.build(), cfg.mc);
        call.mc_price = mc.call.price;
        call.mc_stderr = mc.call.std_error;
        put.mc_price = mc.put.price;
        put.mc_stderr = mc.put.std_error;
    }
    std::fprintf(stderr, "%s: call %.4f put %.4f residual %.4f\n", cfg.id.c_str(), *call.price,
                 *put.price, pr.residual());
    return {call, put};
}

int run_tables(const Options& o) {
    RunConfig runtime;
    apply_runtime(runtime, o);
    if (!o.out.empty() && o.out != "-") std::filesystem::create_directories(o.out);

    std::vector<ReportRow> t1, t2;
    for (const auto& row : benchmarks::kDoubleExponential)
        for (auto& r : reference_rows(runtime, benchmarks::double_exponential_case(row), !o.skip_mc))
            t1.push_back(r);
    emit(table_path(o, "table1.csv"), to_csv(t1));
    for (const auto& row : benchmarks::kLogNormal)
        for (auto& r : reference_rows(runtime, benchmarks::lognormal_case(row), !o.skip_mc))
            t2.push_back(r);
    emit(table_path(o, "table2.csv"), to_csv(t2));

    RunConfig base = benchmarks::study_base();
    base.iteration.threads = runtime.iteration.threads;
    int status = 0;
    const char* sweeps[][2] = {
        {"table3.csv", "truncation:5,8,10,12,15"},
        {"table4.csv", "quadrature:200,300,400,500,600,700,800"},
        {"table5.csv", "grid:10x40,25x100,50x200,100x400"},
    };
    for (const auto& s : sweeps)
        status |= report_study(convergence_command(base, parse_sweep(s[1])), o, table_path(o, s[0]));
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Asian option pricer under jump diffusion"};
    app.require_subcommand(1);
    Options o;

    app.add_option("--config", o.config_path, "configuration file (section.key = value)")
        ->check(CLI::ExistingFile);
    app.add_option("--set", o.overrides, "override a configuration key, e.g. --set contract.sigma=0.1");
    app.add_option("--out", o.out, "output file (tables: output directory); stdout when omitted");
    app.add_option("--echo", o.echo, "write the effective configuration to this file");
    app.add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "Monte Carlo seed");
    app.add_flag("--full-scale", o.full_scale, "Monte Carlo with 1e6 paths and 1000 steps");
    app.add_flag("--keep-going", o.keep_going, "exit 0 even if some study points fail");

    auto* price = app.add_subcommand("price", "price the configured option with the iteration scheme");
    price->add_option("--iterations", o.iterations, "write the per-iteration convergence table here");
    auto* parity = app.add_subcommand("parity", "price call and put and check put-call parity");
    auto* mc = app.add_subcommand("mc", "Monte Carlo price of the configured option");
    mc->add_flag("--antithetic", o.antithetic, "antithetic sampling");
    auto* study = app.add_subcommand("study", "convergence study over a sweep");
    study->add_option("--sweep", o.sweep, "truncation:5,8,10 | quadrature:200,400 | grid:10x40,25x100");
    auto* tables = app.add_subcommand("tables", "reproduce the reference tables");
    tables->add_flag("--skip-mc", o.skip_mc, "leave the Monte Carlo columns empty");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*price) return run_price(o);
        if (*parity) return run_parity(o);
        if (*mc) return run_mc(o);
        if (*study) return run_study(o);
        if (*tables) return run_tables(o);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
