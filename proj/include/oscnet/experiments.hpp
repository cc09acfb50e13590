#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "oscnet/analytic.hpp"
#include "oscnet/negativity.hpp"

namespace oscnet {

/// Where a topology comes from: a uniform-coupling builder or DSL text.
/// `coupling` is the builder's c; for DSL topologies (per-edge weights) it
/// only fixes the time unit of the dimensionless ct axis.
struct TopologyConfig {
    enum class Kind { interferometric, chain, dsl };
    Kind kind = Kind::interferometric;
    int length = 2;            // M for interferometric, n for chain
    double coupling = 1.0;
    std::string dsl_text;
};

/// Accepts "interferometric:M=38,c=0.3", "chain:n=10,c=1.0", or a DSL file
/// path (loaded here). Throws std::invalid_argument on malformed specs.
TopologyConfig parse_topology_arg(const std::string& arg);

OscillatorNetwork realize(const TopologyConfig& topology);

/// "vacuum" | "coherent" | "squeezed:<r>,<phi>" | "thermal:<nbar>"
ModePreparation parse_prep_spec(const std::string& spec);

struct PrepOverride {
    std::string node;          // label in the topology
    ModePreparation prep;
};

/// Default preparation: vacuum everywhere, squeezed(r, 0) on the first
/// reference node and squeezed(r, delta) on the remaining ones, then any
/// explicit overrides on top.
std::vector<ModePreparation> build_preparations(const OscillatorNetwork& net,
                                                double r, double delta,
                                                std::span<const PrepOverride> overrides = {});

struct TimeGrid {
    double ct_max = 80.0;
    double ct_step = 0.05;
};

struct ExperimentConfig {
    TopologyConfig topology;
    double r = 1.0;
    std::vector<double> deltas{0.0};   // series per delta (timeseries), grid (sweep_delta), fixed (sweep_r)
    TimeGrid grid;
    double ct_eval = 58.0;             // fixed evaluation time for the delta/r sweeps
    bool first_local_max_mode = false; // sweep_delta: report the first local max over ct < grid.ct_max
    std::vector<double> r_values;      // sweep_r axis
    std::vector<std::pair<std::string, std::string>> pairs;   // symbolic; empty selects defaults
    std::vector<PrepOverride> prep_overrides;
    int threads = 1;
    std::string echo;                  // free-form config echo for the CSV metadata
};

struct SweepRow {
    double sweep_value;
    double ct;
    int pair_a;
    int pair_b;
    double N;
    double nu_min;
};

struct SweepResult {
    std::vector<SweepRow> rows;        // sweep-major, then time, then pair
    std::string config_echo;
    std::string tool_version;
};

/// N(pair, ct) on the time grid for each configured delta. The assembled
/// Hamiltonian is decomposed once; the eigenbasis is reused across the grid.
SweepResult run_time_series(const ExperimentConfig& config);

/// N(delta) at the fixed ct_eval, or at the first local max of each series
/// when first_local_max_mode is set.
SweepResult sweep_delta(const ExperimentConfig& config);

/// N(r) at fixed delta (config.deltas.front()) and fixed ct_eval.
SweepResult sweep_r(const ExperimentConfig& config);

struct PeakResult {
    double ct = 0.0;
    double N = 0.0;
    bool strict_peak = false;   // false: no strict interior peak, global max returned
};

/// Earliest interior point strictly above both neighbours by more than
/// 1e-12, considering only ct < ct_bound; plateau points never qualify.
/// Falls back to the (earliest) global max with strict_peak = false.
PeakResult first_local_max(std::span<const std::pair<double, double>> series, double ct_bound);

struct LocalizeOptions {
    double delta_step = 0.01;
    TimeGrid grid;
    double zero_threshold = 1e-9;      // operational "no entanglement"
    double baseline_threshold = 1e-12; // classical states must stay below this
    std::vector<double> thermal_occupations{0.5, 2.0};
    int threads = 1;
};

struct LocalizationCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct LocalizationReport {
    std::vector<LocalizationCheck> checks;
    bool pass() const;
};

/// End-to-end localization test battery over every (M, r, c) combination:
/// the numerical entangling/non-entangling classification of the chain
/// extremes must equal the analytic verdict on the whole delta grid, the
/// hub pair must stay separable wherever the verdict is non-entangling,
/// the empirical boundary must land within one grid step of delta*(r),
/// the classification must not depend on c, and classical (coherent and
/// thermal) preparations must produce no entanglement anywhere, both on a
/// 10-oscillator chain and on the M=4 arrangement.
LocalizationReport localization_suite(std::span<const int> chain_lengths,
                                      std::span<const double> squeezings,
                                      std::span<const double> couplings,
                                      const LocalizeOptions& options = {});

/// Evolves just one pair's 4x4 marginal out of the 2n x 2n dynamics:
/// gamma_red(t) = I + W(t) D W(t)^T with W the four propagator rows of the
/// pair restricted to the columns of the non-vacuum modes. Identical to
/// evolve-then-reduce up to roundoff, O(n |S|) per time instead of O(n^3).
class PairScanner {
public:
    PairScanner(const SpectralPropagator& propagator,
                const std::vector<ModePreparation>& preps,
                std::pair<int, int> pair);

    std::pair<int, int> pair() const { return pair_; }
    CovarianceState reduced_state(double t) const;
    NegativityReport negativity(double t) const;

private:
    std::pair<int, int> pair_;
    Eigen::VectorXd frequencies_;
    Eigen::MatrixXd products_a_;   // |S| x n: O(a,k) O(s,k)
    Eigen::MatrixXd products_b_;
    Eigen::MatrixXd block_delta_;  // 2|S| x 2|S|: initial covariance minus identity on S
};

void write_csv(const SweepResult& result, std::ostream& out);
std::string to_csv(const SweepResult& result);

}
