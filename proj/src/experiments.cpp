#include "oscnet/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "oscnet/version.hpp"

namespace oscnet {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double parse_double(std::string_view text, const std::string& what) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::invalid_argument("malformed " + what + ": '" + std::string(text) + "'");
    return value;
}

int parse_int(std::string_view text, const std::string& what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::invalid_argument("malformed " + what + ": '" + std::string(text) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = text.find(sep, pos);
        parts.push_back(text.substr(pos, next == std::string_view::npos ? std::string_view::npos
                                                                        : next - pos));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return parts;
}

// first exception from any worker wins; results are written by job index so
// the outcome does not depend on scheduling
void parallel_for(int jobs, int threads, const std::function<void(int)>& body) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, jobs));
    if (threads == 1) {
        for (int i = 0; i < jobs; ++i) body(i);
        return;
    }
    std::mutex mutex;
    std::exception_ptr failure;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i = w; i < jobs; i += threads) body(i);
            } catch (...) {
                std::lock_guard lock(mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

std::vector<double> ct_grid(const TimeGrid& grid, bool include_zero) {
    if (!(grid.ct_step > 0.0))
        throw std::invalid_argument("ct step must be positive");
    if (!(grid.ct_max >= grid.ct_step))
        throw std::invalid_argument("ct range is empty");
    const int count = static_cast<int>(std::floor(grid.ct_max / grid.ct_step + 1e-9));
    std::vector<double> points;
    points.reserve(count + 1);
    if (include_zero) points.push_back(0.0);
    for (int k = 1; k <= count; ++k) points.push_back(k * grid.ct_step);
    return points;
}

std::string format_float(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

}

TopologyConfig parse_topology_arg(const std::string& arg) {
    auto parse_params = [&](std::string_view params, TopologyConfig& config,
                            std::string_view size_key) {
        bool have_size = false;
        for (std::string_view item : split(params, ',')) {
            auto eq = item.find('=');
            if (eq == std::string_view::npos)
                throw std::invalid_argument("expected key=value in topology spec: '" +
                                            std::string(item) + "'");
            std::string_view key = item.substr(0, eq);
            std::string_view value = item.substr(eq + 1);
            if (key == size_key) {
                config.length = parse_int(value, std::string(size_key));
                have_size = true;
            } else if (key == "c") {
                config.coupling = parse_double(value, "coupling");
            } else {
                throw std::invalid_argument("unknown topology parameter '" +
                                            std::string(key) + "'");
            }
        }
        if (!have_size)
            throw std::invalid_argument("topology spec is missing " + std::string(size_key));
    };

    TopologyConfig config;
    if (arg.rfind("interferometric:", 0) == 0) {
        config.kind = TopologyConfig::Kind::interferometric;
        parse_params(std::string_view(arg).substr(16), config, "M");
        return config;
    }
    if (arg.rfind("chain:", 0) == 0) {
        config.kind = TopologyConfig::Kind::chain;
        parse_params(std::string_view(arg).substr(6), config, "n");
        return config;
    }

    std::ifstream file(arg, std::ios::binary);
    if (!file)
        throw std::invalid_argument("cannot open topology file '" + arg + "'");
    std::ostringstream text;
    text << file.rdbuf();
    config.kind = TopologyConfig::Kind::dsl;
    config.dsl_text = text.str();
    return config;
}

OscillatorNetwork realize(const TopologyConfig& topology) {
    switch (topology.kind) {
        case TopologyConfig::Kind::interferometric:
            return build_interferometric(topology.length, topology.coupling);
        case TopologyConfig::Kind::chain:
            return build_chain(topology.length, topology.coupling);
        case TopologyConfig::Kind::dsl:
            return parse_topology(topology.dsl_text);
    }
    throw std::logic_error("unreachable topology kind");
}

ModePreparation parse_prep_spec(const std::string& spec) {
    if (spec == "vacuum") return ModePreparation::vacuum();
    if (spec == "coherent") return ModePreparation::coherent();
    if (spec.rfind("squeezed:", 0) == 0) {
        auto parts = split(std::string_view(spec).substr(9), ',');
        if (parts.size() != 2)
            throw std::invalid_argument("expected squeezed:<r>,<phi>, got '" + spec + "'");
        return ModePreparation::squeezed(parse_double(parts[0], "squeezing magnitude"),
                                         parse_double(parts[1], "squeezing phase"));
    }
    if (spec.rfind("thermal:", 0) == 0)
        return ModePreparation::thermal(
            parse_double(std::string_view(spec).substr(8), "mean occupation"));
    throw std::invalid_argument("unknown preparation '" + spec +
                                "' (vacuum|squeezed:r,phi|thermal:nbar|coherent)");
}

std::vector<ModePreparation> build_preparations(const OscillatorNetwork& net,
                                                double r, double delta,
                                                std::span<const PrepOverride> overrides) {
    std::vector<ModePreparation> preps(net.size(), ModePreparation::vacuum());
    bool first = true;
    for (int ref : net.reference_nodes()) {
        preps[ref] = ModePreparation::squeezed(r, first ? 0.0 : delta);
        first = false;
    }
    for (const auto& item : overrides) {
        auto idx = net.index_of(item.node);
        if (!idx)
            throw std::invalid_argument("preparation override names unknown node '" +
                                        item.node + "'");
        preps[*idx] = item.prep;
    }
    return preps;
}

PairScanner::PairScanner(const SpectralPropagator& propagator,
                         const std::vector<ModePreparation>& preps,
                         std::pair<int, int> pair)
    : pair_(pair), frequencies_(propagator.frequencies()) {
    const int n = propagator.size();
    if (static_cast<int>(preps.size()) != n)
        throw std::invalid_argument("preparation list does not match mode count");
    if (pair.first == pair.second || pair.first < 0 || pair.second < 0 ||
        pair.first >= n || pair.second >= n)
        throw std::invalid_argument("invalid scan pair");

    // support of gamma(0) - I: only non-vacuum modes contribute
    std::vector<int> support;
    std::vector<Eigen::Matrix2d> blocks;
    for (int m = 0; m < n; ++m) {
        Eigen::Matrix2d block = preps[m].covariance_block();
        if ((block - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() > 0.0) {
            support.push_back(m);
            blocks.push_back(block);
        }
    }

    const int ns = static_cast<int>(support.size());
    const Eigen::MatrixXd& basis = propagator.basis();
    products_a_.resize(ns, n);
    products_b_.resize(ns, n);
    for (int j = 0; j < ns; ++j) {
        products_a_.row(j) =
            basis.row(pair.first).cwiseProduct(basis.row(support[j]));
        products_b_.row(j) =
            basis.row(pair.second).cwiseProduct(basis.row(support[j]));
    }
    block_delta_ = Eigen::MatrixXd::Zero(2 * ns, 2 * ns);
    for (int j = 0; j < ns; ++j) {
        block_delta_(j, j) = blocks[j](0, 0) - 1.0;
        block_delta_(j, ns + j) = blocks[j](0, 1);
        block_delta_(ns + j, j) = blocks[j](1, 0);
        block_delta_(ns + j, ns + j) = blocks[j](1, 1) - 1.0;
    }
}

CovarianceState PairScanner::reduced_state(double t) const {
    const int ns = static_cast<int>(products_a_.rows());
    Eigen::Matrix4d gamma = Eigen::Matrix4d::Identity();
    if (ns > 0) {
        const Eigen::ArrayXd phase = frequencies_.array() * t;
        const Eigen::VectorXd cos_phase = phase.cos();
        const Eigen::VectorXd sin_phase = phase.sin();

        // the four propagator rows of the pair, restricted to the support
        const Eigen::VectorXd ca = products_a_ * cos_phase;
        const Eigen::VectorXd sa = products_a_ * sin_phase;
        const Eigen::VectorXd cb = products_b_ * cos_phase;
        const Eigen::VectorXd sb = products_b_ * sin_phase;

        Eigen::MatrixXd w(4, 2 * ns);
        w.row(0).head(ns) = ca.transpose();
        w.row(0).tail(ns) = sa.transpose();
        w.row(1).head(ns) = cb.transpose();
        w.row(1).tail(ns) = sb.transpose();
        w.row(2).head(ns) = -sa.transpose();
        w.row(2).tail(ns) = ca.transpose();
        w.row(3).head(ns) = -sb.transpose();
        w.row(3).tail(ns) = cb.transpose();

        gamma += w * block_delta_ * w.transpose();
        gamma = (0.5 * (gamma + gamma.transpose())).eval();
    }
    return {2, gamma, t};
}

NegativityReport PairScanner::negativity(double t) const {
    NegativityReport report = log_negativity(reduced_state(t), {0, 1});
    report.pair = pair_;
    return report;
}

namespace {

int resolve_node_token(const OscillatorNetwork& net, const TopologyConfig& topology,
                       const std::string& token) {
    if (auto idx = net.index_of(token)) return *idx;
    if (token == "M" && topology.kind == TopologyConfig::Kind::interferometric)
        return *net.index_of(std::to_string(topology.length));
    throw std::invalid_argument("cannot resolve node '" + token + "' in this topology");
}

std::vector<std::pair<int, int>> resolve_pairs(const OscillatorNetwork& net,
                                               const ExperimentConfig& config) {
    std::vector<std::pair<int, int>> resolved;
    if (config.pairs.empty()) {
        switch (config.topology.kind) {
            case TopologyConfig::Kind::interferometric:
                resolved.push_back({resolve_node_token(net, config.topology, "1"),
                                    resolve_node_token(net, config.topology, "M")});
                break;
            case TopologyConfig::Kind::chain:
                resolved.push_back({0, net.size() - 1});
                break;
            case TopologyConfig::Kind::dsl:
                throw std::invalid_argument("DSL topologies need an explicit --pair");
        }
        return resolved;
    }
    for (const auto& [a, b] : config.pairs) {
        int ia = resolve_node_token(net, config.topology, a);
        int ib = resolve_node_token(net, config.topology, b);
        if (ia == ib)
            throw std::invalid_argument("pair '" + a + "," + b + "' names one node twice");
        resolved.push_back({ia, ib});
    }
    return resolved;
}

struct Engine {
    OscillatorNetwork net;
    SpectralPropagator spectral;
    std::vector<std::pair<int, int>> pairs;
    double c_ref;

    explicit Engine(const ExperimentConfig& config)
        : net(realize(config.topology)),
          spectral(assemble(net)),
          pairs(resolve_pairs(net, config)),
          c_ref(config.topology.coupling) {
        if (!(c_ref > 0.0))
            throw std::invalid_argument("time-unit coupling must be positive");
    }

    std::vector<PairScanner> scanners(const std::vector<ModePreparation>& preps) const {
        std::vector<PairScanner> out;
        out.reserve(pairs.size());
        for (auto pair : pairs) out.emplace_back(spectral, preps, pair);
        return out;
    }
};

SweepResult make_result(const ExperimentConfig& config, std::vector<SweepRow> rows) {
    return {std::move(rows), config.echo, version};
}

}

SweepResult run_time_series(const ExperimentConfig& config) {
    if (config.deltas.empty()) throw std::invalid_argument("delta list is empty");
    Engine engine(config);
    const std::vector<double> cts = ct_grid(config.grid, /*include_zero=*/true);
    const int per_delta = static_cast<int>(cts.size() * engine.pairs.size());

    std::vector<SweepRow> rows(config.deltas.size() * per_delta);
    parallel_for(static_cast<int>(config.deltas.size()), config.threads, [&](int d) {
        const double delta = config.deltas[d];
        auto preps = build_preparations(engine.net, config.r, delta, config.prep_overrides);
        auto scanners = engine.scanners(preps);
        int slot = d * per_delta;
        for (double ct : cts) {
            for (std::size_t p = 0; p < scanners.size(); ++p) {
                NegativityReport rep = scanners[p].negativity(ct / engine.c_ref);
                rows[slot++] = {delta, ct, rep.pair.first, rep.pair.second,
                                rep.N, rep.nus.front()};
            }
        }
    });
    return make_result(config, std::move(rows));
}

SweepResult sweep_delta(const ExperimentConfig& config) {
    if (config.deltas.empty()) throw std::invalid_argument("delta grid is empty");
    Engine engine(config);
    const int n_pairs = static_cast<int>(engine.pairs.size());
    const std::vector<double> cts =
        config.first_local_max_mode ? ct_grid(config.grid, /*include_zero=*/false)
                                    : std::vector<double>{};

    std::vector<SweepRow> rows(config.deltas.size() * n_pairs);
    parallel_for(static_cast<int>(config.deltas.size()), config.threads, [&](int d) {
        const double delta = config.deltas[d];
        auto preps = build_preparations(engine.net, config.r, delta, config.prep_overrides);
        auto scanners = engine.scanners(preps);
        for (int p = 0; p < n_pairs; ++p) {
            SweepRow row{};
            row.sweep_value = delta;
            if (config.first_local_max_mode) {
                std::vector<std::pair<double, double>> series;
                series.reserve(cts.size());
                for (double ct : cts) {
                    NegativityReport rep = scanners[p].negativity(ct / engine.c_ref);
                    series.emplace_back(ct, rep.N);
                }
                PeakResult peak = first_local_max(series, config.grid.ct_max);
                NegativityReport rep = scanners[p].negativity(peak.ct / engine.c_ref);
                row.ct = peak.ct;
                row.N = peak.N;
                row.nu_min = rep.nus.front();
            } else {
                NegativityReport rep = scanners[p].negativity(config.ct_eval / engine.c_ref);
                row.ct = config.ct_eval;
                row.N = rep.N;
                row.nu_min = rep.nus.front();
            }
            row.pair_a = engine.pairs[p].first;
            row.pair_b = engine.pairs[p].second;
            rows[d * n_pairs + p] = row;
        }
    });
    return make_result(config, std::move(rows));
}

SweepResult sweep_r(const ExperimentConfig& config) {
    if (config.r_values.empty()) throw std::invalid_argument("r grid is empty");
    if (config.deltas.size() != 1)
        throw std::invalid_argument("sweep_r expects exactly one fixed delta");
    Engine engine(config);
    const double delta = config.deltas.front();
    const int n_pairs = static_cast<int>(engine.pairs.size());

    std::vector<SweepRow> rows(config.r_values.size() * n_pairs);
    parallel_for(static_cast<int>(config.r_values.size()), config.threads, [&](int i) {
        const double r = config.r_values[i];
        auto preps = build_preparations(engine.net, r, delta, config.prep_overrides);
        auto scanners = engine.scanners(preps);
        for (int p = 0; p < n_pairs; ++p) {
            NegativityReport rep = scanners[p].negativity(config.ct_eval / engine.c_ref);
            rows[i * n_pairs + p] = {r, config.ct_eval, engine.pairs[p].first,
                                     engine.pairs[p].second, rep.N, rep.nus.front()};
        }
    });
    return make_result(config, std::move(rows));
}

PeakResult first_local_max(std::span<const std::pair<double, double>> series, double ct_bound) {
    if (series.size() < 3)
        throw std::invalid_argument("peak search needs at least 3 samples");
    constexpr double rise = 1e-12;
    for (std::size_t i = 1; i + 1 < series.size(); ++i) {
        if (series[i].first >= ct_bound) break;
        if (series[i].second > series[i - 1].second + rise &&
            series[i].second > series[i + 1].second + rise)
            return {series[i].first, series[i].second, true};
    }
    PeakResult best{series.front().first, series.front().second, false};
    for (const auto& [ct, value] : series) {
        if (ct >= ct_bound) break;
        if (value > best.N) best = {ct, value, false};
    }
    return best;
}

bool LocalizationReport::pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const LocalizationCheck& c) { return c.pass; });
}

namespace {

struct ScanOutcome {
    double max_n = 0.0;
    double at_ct = 0.0;
    bool exceeded = false;
};

ScanOutcome scan_max_negativity(const PairScanner& scanner, double c_ref,
                                std::span<const double> cts, double threshold,
                                bool early_exit) {
    ScanOutcome outcome;
    for (double ct : cts) {
        NegativityReport rep = scanner.negativity(ct / c_ref);
        if (rep.N > outcome.max_n) {
            outcome.max_n = rep.N;
            outcome.at_ct = ct;
        }
        if (outcome.max_n > threshold) {
            outcome.exceeded = true;
            if (early_exit) return outcome;
        }
    }
    return outcome;
}

std::string tag(int m, double r, double c) {
    std::ostringstream out;
    out << "M=" << m << " r=" << format_float(r) << " c=" << format_float(c);
    return out.str();
}

}

LocalizationReport localization_suite(std::span<const int> chain_lengths,
                                      std::span<const double> squeezings,
                                      std::span<const double> couplings,
                                      const LocalizeOptions& options) {
    if (chain_lengths.empty() || squeezings.empty() || couplings.empty())
        throw std::invalid_argument("localization suite needs nonempty M, r, c lists");
    if (!(options.delta_step > 0.0))
        throw std::invalid_argument("delta step must be positive");
    for (double r : squeezings)
        if (!(r > 0.0)) throw std::invalid_argument("suite squeezings must be positive");

    LocalizationReport report;
    const std::vector<double> cts = ct_grid(options.grid, /*include_zero=*/false);

    const int n_delta = static_cast<int>(std::floor(two_pi / options.delta_step - 1e-9)) + 1;
    std::vector<double> deltas(n_delta);
    for (int k = 0; k < n_delta; ++k) deltas[k] = k * options.delta_step;

    for (int m : chain_lengths) {
        for (double r : squeezings) {
            const double threshold_delta = delta_threshold(r);
            std::vector<char> predicted(n_delta);
            for (int k = 0; k < n_delta; ++k)
                predicted[k] = entanglement_condition(r, deltas[k]).entangling;

            std::vector<std::vector<char>> classified_per_c;
            for (double c : couplings) {
                const std::string id = tag(m, r, c);
                OscillatorNetwork net = build_interferometric(m, c);
                SpectralPropagator spectral{assemble(net)};
                const std::pair<int, int> extremes{
                    *net.index_of("1"), *net.index_of(std::to_string(m))};
                const std::pair<int, int> hubs{net.hub_nodes()[0], net.hub_nodes()[1]};

                std::vector<char> classified(n_delta, 0);
                std::vector<ScanOutcome> extreme_max(n_delta);
                std::vector<ScanOutcome> hub_max(n_delta);
                parallel_for(n_delta, options.threads, [&](int k) {
                    auto preps = build_preparations(net, r, deltas[k], {});
                    PairScanner extremes_scan(spectral, preps, extremes);
                    // entangling side only needs the first exceedance; the
                    // zero side must be proven over the whole grid
                    extreme_max[k] = scan_max_negativity(extremes_scan, c, cts,
                                                         options.zero_threshold,
                                                         /*early_exit=*/predicted[k] != 0);
                    classified[k] = extreme_max[k].exceeded;
                    if (!predicted[k]) {
                        PairScanner hub_scan(spectral, preps, hubs);
                        hub_max[k] = scan_max_negativity(hub_scan, c, cts,
                                                         options.zero_threshold,
                                                         /*early_exit=*/false);
                    }
                });

                // (a) chain extremes stay separable wherever the verdict says so
                {
                    LocalizationCheck check{id + " (a) extremes separable on zero band", true, ""};
                    double worst = -1.0;
                    for (int k = 0; k < n_delta; ++k) {
                        if (predicted[k]) continue;
                        if (extreme_max[k].max_n > worst) {
                            worst = extreme_max[k].max_n;
                            check.detail = "worst N(" + std::to_string(extremes.first) + "," +
                                           std::to_string(extremes.second) + ")=" +
                                           format_float(extreme_max[k].max_n) + " at delta=" +
                                           format_float(deltas[k]) + ", ct=" +
                                           format_float(extreme_max[k].at_ct);
                        }
                        if (extreme_max[k].exceeded) check.pass = false;
                    }
                    report.checks.push_back(std::move(check));
                }
                // (b) hub pair stays separable in the same regime
                {
                    LocalizationCheck check{id + " (b) hub pair separable on zero band", true, ""};
                    double worst = -1.0;
                    for (int k = 0; k < n_delta; ++k) {
                        if (predicted[k]) continue;
                        if (hub_max[k].max_n > worst) {
                            worst = hub_max[k].max_n;
                            check.detail = "worst N(hubs)=" + format_float(hub_max[k].max_n) +
                                           " at delta=" + format_float(deltas[k]) + ", ct=" +
                                           format_float(hub_max[k].at_ct);
                        }
                        if (hub_max[k].exceeded) check.pass = false;
                    }
                    report.checks.push_back(std::move(check));
                }
                // (c) empirical boundary within one grid step of delta*(r)
                {
                    LocalizationCheck check{id + " (c) boundary matches delta*", false, ""};
                    int lo = -1, hi = -1;
                    for (int k = 0; k < n_delta; ++k) {
                        if (!classified[k]) {
                            if (lo < 0) lo = k;
                            hi = k;
                        }
                    }
                    if (lo >= 1 && hi < n_delta - 1) {
                        bool contiguous = true;
                        for (int k = lo; k <= hi && contiguous; ++k)
                            if (classified[k]) contiguous = false;
                        const double lower_gap = std::abs(deltas[lo] - threshold_delta);
                        const double upper_gap = std::abs((two_pi - threshold_delta) - deltas[hi]);
                        check.pass = contiguous && lower_gap <= options.delta_step &&
                                     upper_gap <= options.delta_step;
                        check.detail = "zero band [" + format_float(deltas[lo]) + ", " +
                                       format_float(deltas[hi]) + "], delta*=" +
                                       format_float(threshold_delta) + ", gaps " +
                                       format_float(lower_gap) + "/" + format_float(upper_gap) +
                                       (contiguous ? "" : ", band not contiguous");
                    } else {
                        check.detail = "no interior zero band found";
                    }
                    report.checks.push_back(std::move(check));
                }
                classified_per_c.push_back(std::move(classified));
            }
            // (d) classification independent of the coupling constant
            {
                LocalizationCheck check{"M=" + std::to_string(m) + " r=" + format_float(r) +
                                            " (d) classification independent of c",
                                        true, ""};
                for (std::size_t i = 1; i < classified_per_c.size(); ++i) {
                    if (classified_per_c[i] != classified_per_c[0]) {
                        check.pass = false;
                        check.detail = "c=" + format_float(couplings[i]) +
                                       " disagrees with c=" + format_float(couplings[0]);
                        break;
                    }
                }
                report.checks.push_back(std::move(check));
            }
        }
    }

    // (e) classical preparations never entangle anything, anywhere
    struct Baseline {
        std::string name;
        OscillatorNetwork net;
        double c_ref;
        std::vector<ModePreparation> preps;
    };
    std::vector<Baseline> baselines;
    {
        OscillatorNetwork chain = build_chain(10, 1.0);
        OscillatorNetwork ring = build_interferometric(4, 0.3);
        auto chain_all = [&](ModePreparation prep) {
            return std::vector<ModePreparation>(chain.size(), prep);
        };
        auto ring_refs = [&](ModePreparation prep) {
            std::vector<ModePreparation> preps(ring.size(), ModePreparation::vacuum());
            for (int ref : ring.reference_nodes()) preps[ref] = prep;
            return preps;
        };
        baselines.push_back({"chain n=10 coherent", chain, 1.0,
                             chain_all(ModePreparation::coherent())});
        baselines.push_back({"interferometric M=4 coherent references", ring, 0.3,
                             ring_refs(ModePreparation::coherent())});
        for (double nbar : options.thermal_occupations) {
            baselines.push_back({"chain n=10 thermal nbar=" + format_float(nbar), chain, 1.0,
                                 chain_all(ModePreparation::thermal(nbar))});
            baselines.push_back({"interferometric M=4 thermal nbar=" + format_float(nbar),
                                 ring, 0.3, ring_refs(ModePreparation::thermal(nbar))});
        }
    }
    for (const Baseline& baseline : baselines) {
        LocalizationCheck check{"(e) classical baseline: " + baseline.name, true, ""};
        SpectralPropagator spectral{assemble(baseline.net)};
        std::vector<std::pair<int, int>> all_pairs;
        for (int a = 0; a < baseline.net.size(); ++a)
            for (int b = a + 1; b < baseline.net.size(); ++b) all_pairs.push_back({a, b});

        std::vector<ScanOutcome> outcomes(all_pairs.size());
        parallel_for(static_cast<int>(all_pairs.size()), options.threads, [&](int p) {
            PairScanner scanner(spectral, baseline.preps, all_pairs[p]);
            outcomes[p] = scan_max_negativity(scanner, baseline.c_ref, cts,
                                              options.baseline_threshold,
                                              /*early_exit=*/false);
        });
        double worst = -1.0;
        for (std::size_t p = 0; p < all_pairs.size(); ++p) {
            if (outcomes[p].max_n > worst) {
                worst = outcomes[p].max_n;
                check.detail = "worst N(" + std::to_string(all_pairs[p].first) + "," +
                               std::to_string(all_pairs[p].second) + ")=" +
                               format_float(outcomes[p].max_n) + " at ct=" +
                               format_float(outcomes[p].at_ct);
            }
            if (outcomes[p].exceeded) check.pass = false;
        }
        report.checks.push_back(std::move(check));
    }

    return report;
}

void write_csv(const SweepResult& result, std::ostream& out) {
    out << "# oscnet v" << result.tool_version << '\n';
    if (!result.config_echo.empty()) out << "# config: " << result.config_echo << '\n';
    out << "sweep_value,ct,pair_a,pair_b,N,nu_min\n";
    for (const SweepRow& row : result.rows) {
        out << format_float(row.sweep_value) << ',' << format_float(row.ct) << ','
            << row.pair_a << ',' << row.pair_b << ',' << format_float(row.N) << ','
            << format_float(row.nu_min) << '\n';
    }
}

std::string to_csv(const SweepResult& result) {
    std::ostringstream out;
    write_csv(result, out);
    return out.str();
}

}
