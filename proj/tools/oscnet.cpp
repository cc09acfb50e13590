#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "oscnet/experiments.hpp"
#include "oscnet/version.hpp"

namespace {

using namespace oscnet;

// "1.5" | "0,0.5,3.14" | "start:stop:step" (stop inclusive up to roundoff)
std::vector<double> parse_value_list(const std::string& text, const std::string& what) {
    std::vector<double> values;
    if (text.find(':') != std::string::npos) {
        std::istringstream in(text);
        std::string a, b, c;
        if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, c))
            throw std::invalid_argument(what + ": expected start:stop:step");
        const double start = std::stod(a), stop = std::stod(b), step = std::stod(c);
        if (!(step > 0.0)) throw std::invalid_argument(what + ": step must be positive");
        const int count = static_cast<int>(std::floor((stop - start) / step + 1e-9));
        for (int k = 0; k <= count; ++k) values.push_back(start + k * step);
        if (values.empty()) throw std::invalid_argument(what + ": empty range");
        return values;
    }
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) values.push_back(std::stod(item));
    if (values.empty()) throw std::invalid_argument(what + ": no values given");
    return values;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
    std::vector<int> values;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) values.push_back(std::stoi(item));
    if (values.empty()) throw std::invalid_argument(what + ": no values given");
    return values;
}

struct CommonArgs {
    std::string topology;
    double r = 1.0;
    std::string delta = "0";
    double ct_max = 80.0;
    double ct_step = 0.05;
    std::vector<std::string> pairs;
    std::vector<std::string> preps;
    std::string out = "-";
    int threads = 1;
    double dsl_coupling = 1.0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--topology", args.topology,
                    "interferometric:M=<even>,c=<float> | chain:n=<int>,c=<float> | <file.dsl>")
        ->required();
    cmd->add_option("--r", args.r, "squeezing magnitude of the reference oscillators");
    cmd->add_option("--delta", args.delta,
                    "relative squeezing angle: value, comma list, or start:stop:step");
    cmd->add_option("--ct-max", args.ct_max, "time grid end, in units of ct");
    cmd->add_option("--ct-step", args.ct_step, "time grid step, in units of ct");
    cmd->add_option("--pair", args.pairs,
                    "oscillator pair <a,b> by node label; 1,M resolves symbolically")
        ->take_all();
    cmd->add_option("--prep", args.preps,
                    "override: <node>=vacuum|squeezed:r,phi|thermal:nbar|coherent")
        ->take_all();
    cmd->add_option("--out", args.out, "output CSV path ('-' = stdout)");
    cmd->add_option("--threads", args.threads, "worker threads (0 = hardware)");
    cmd->add_option("--c", args.dsl_coupling,
                    "ct-axis time unit for DSL topologies (builders carry their own c)");
}

ExperimentConfig to_config(const CommonArgs& args, const std::string& echo) {
    ExperimentConfig config;
    config.topology = parse_topology_arg(args.topology);
    if (config.topology.kind == TopologyConfig::Kind::dsl)
        config.topology.coupling = args.dsl_coupling;
    config.r = args.r;
    config.deltas = parse_value_list(args.delta, "--delta");
    config.grid = {args.ct_max, args.ct_step};
    config.threads = args.threads;
    config.echo = echo;
    for (const std::string& pair : args.pairs) {
        auto comma = pair.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("--pair expects <a,b>, got '" + pair + "'");
        config.pairs.push_back({pair.substr(0, comma), pair.substr(comma + 1)});
    }
    for (const std::string& prep : args.preps) {
        auto eq = prep.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--prep expects <node>=<spec>, got '" + prep + "'");
        config.prep_overrides.push_back({prep.substr(0, eq),
                                         parse_prep_spec(prep.substr(eq + 1))});
    }
    return config;
}

void emit(const SweepResult& result, const std::string& out_path) {
    if (out_path == "-") {
        write_csv(result, std::cout);
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open output file '" + out_path + "'");
    write_csv(result, file);
}

// config echo for the CSV metadata; output destination and thread count do
// not affect the rows and would break byte-level reproducibility across
// working directories
std::string join_args(int argc, char** argv) {
    std::string joined;
    for (int i = 1; i < argc; ++i) {
        const std::string_view arg = argv[i];
        if (arg == "--out" || arg == "--threads") {
            ++i;
            continue;
        }
        if (!joined.empty()) joined += ' ';
        joined += argv[i];
    }
    return joined;
}

}

int main(int argc, char** argv) {
    CLI::App app{"entanglement dynamics of coupled-oscillator networks"};
    app.set_version_flag("--version", std::string("oscnet v") + oscnet::version);
    app.require_subcommand(1);
    const std::string echo = join_args(argc, argv);

    CommonArgs ts_args, sd_args, sr_args;
    double sd_ct = 58.0;
    bool sd_flm = false;
    double sr_ct = 1.0;
    std::string sr_range = "0:2:0.05";

    CLI::App* ts = app.add_subcommand("timeseries", "N(ct) for each configured delta");
    add_common(ts, ts_args);

    CLI::App* sd = app.add_subcommand("sweep-delta", "N(delta) at a fixed ct");
    add_common(sd, sd_args);
    sd->add_option("--ct", sd_ct, "evaluation time (ct units)");
    sd->add_flag("--first-local-max", sd_flm,
                 "report the first local max of N over ct < ct-max instead of a fixed ct");

    CLI::App* sr = app.add_subcommand("sweep-r", "N(r) at fixed delta and ct");
    add_common(sr, sr_args);
    sr->add_option("--ct", sr_ct, "evaluation time (ct units)");
    sr->add_option("--r-range", sr_range, "r sweep grid as start:stop:step");

    auto* lc = app.add_subcommand("localize", "run the entanglement-localization test battery");
    std::string lc_m = "2,4", lc_r = "1", lc_c = "0.3", lc_out = "-";
    double lc_delta_step = 0.01, lc_ct_max = 80.0, lc_ct_step = 0.05;
    int lc_threads = 1;
    lc->add_option("--M", lc_m, "comma list of even chain lengths");
    lc->add_option("--r", lc_r, "comma list of squeezing magnitudes");
    lc->add_option("--c", lc_c, "comma list of coupling constants");
    lc->add_option("--delta-step", lc_delta_step, "delta grid step over [0, 2pi)");
    lc->add_option("--ct-max", lc_ct_max, "time grid end (ct units)");
    lc->add_option("--ct-step", lc_ct_step, "time grid step (ct units)");
    lc->add_option("--out", lc_out, "report path ('-' = stdout)");
    lc->add_option("--threads", lc_threads, "worker threads (0 = hardware)");

    auto* pc = app.add_subcommand("parse-check", "validate a topology DSL file");
    std::string pc_file;
    bool pc_emit = false;
    pc->add_option("file", pc_file, "topology DSL file")->required();
    pc->add_flag("--emit", pc_emit, "print the canonical serialization");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        if (err.get_exit_code() == 0) return app.exit(err);   // --help / --version
        app.exit(err);
        return 1;
    }

    try {
        if (ts->parsed()) {
            emit(run_time_series(to_config(ts_args, echo)), ts_args.out);
        } else if (sd->parsed()) {
            ExperimentConfig config = to_config(sd_args, echo);
            config.ct_eval = sd_ct;
            config.first_local_max_mode = sd_flm;
            emit(sweep_delta(config), sd_args.out);
        } else if (sr->parsed()) {
            ExperimentConfig config = to_config(sr_args, echo);
            config.ct_eval = sr_ct;
            config.r_values = parse_value_list(sr_range, "--r-range");
            emit(sweep_r(config), sr_args.out);
        } else if (lc->parsed()) {
            LocalizeOptions options;
            options.delta_step = lc_delta_step;
            options.grid = {lc_ct_max, lc_ct_step};
            options.threads = lc_threads;
            auto ms = parse_int_list(lc_m, "--M");
            auto rs = parse_value_list(lc_r, "--r");
            auto cs = parse_value_list(lc_c, "--c");
            LocalizationReport report = localization_suite(ms, rs, cs, options);

            std::ostringstream text;
            for (const auto& check : report.checks)
                text << (check.pass ? "[PASS] " : "[FAIL] ") << check.name
                     << (check.detail.empty() ? "" : "  -- " + check.detail) << '\n';
            text << (report.pass() ? "localization suite: PASS\n"
                                   : "localization suite: FAIL\n");
            if (lc_out == "-") {
                std::cout << text.str();
            } else {
                std::ofstream file(lc_out, std::ios::binary);
                if (!file) throw std::invalid_argument("cannot open '" + lc_out + "'");
                file << text.str();
            }
            if (!report.pass()) return 2;
        } else if (pc->parsed()) {
            TopologyConfig topo = parse_topology_arg(pc_file);
            OscillatorNetwork net = realize(topo);
            std::cout << "ok: " << net.size() << " oscillators, " << net.edges().size()
                      << " edges, " << net.reference_nodes().size() << " references, "
                      << net.hub_nodes().size() << " hubs\n";
            if (pc_emit) std::cout << serialize_topology(net);
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
    return 0;
}
