#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace oscnet {

/// Undirected weighted edge, stored once with a < b.
struct Edge {
    int a;
    int b;
    double weight;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Error raised by the topology DSL parser, carrying the offending position.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, int line, int column);

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// A labeled network of coupled oscillators. Immutable after construction;
/// safe to share across threads.
///
/// Node indices run over [0, size()). Edges carry the coupling constant of
/// the (w/4)[(q_i - q_j)^2 + (p_i - p_j)^2] interaction term, in units of
/// the oscillator frequency. Reference and hub nodes are disjoint role sets.
class OscillatorNetwork {
public:
    OscillatorNetwork(std::vector<std::string> labels,
                      std::vector<Edge> edges,
                      std::vector<int> reference_nodes = {},
                      std::vector<int> hub_nodes = {});

    int size() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& reference_nodes() const { return reference_nodes_; }
    const std::vector<int>& hub_nodes() const { return hub_nodes_; }

    std::optional<int> index_of(std::string_view label) const;

    friend bool operator==(const OscillatorNetwork&, const OscillatorNetwork&) = default;

private:
    std::vector<std::string> labels_;
    std::vector<Edge> edges_;            // canonical: a < b, sorted lexicographically
    std::vector<int> reference_nodes_;   // ascending
    std::vector<int> hub_nodes_;         // ascending
};

/// The ring-plus-two-chains arrangement: two reference oscillators r1, r2
/// (indices 0 and 1), each coupled to the two hubs of a broken chain of
/// even length M (chain oscillator k sits at index k + 1). All couplings
/// equal. The hubs are chain positions M/2 and (M+2)/2; the chain bond
/// between them is absent, so the ring r1-hub-r2-hub is the only cycle.
OscillatorNetwork build_interferometric(int chain_length, double coupling);

/// Open chain of n oscillators with uniform nearest-neighbour coupling.
/// No reference or hub designation; labels are "0".."n-1".
OscillatorNetwork build_chain(int n, double coupling);

/// Parse the line-oriented topology DSL:
///
///   node <name>
///   edge <name> <name> <positive-float>
///   reference <name>
///   hub <name>
///
/// '#' starts a comment; blank lines are ignored. Node indices follow
/// declaration order. Throws ParseError with line/column on any violation.
OscillatorNetwork parse_topology(std::string_view text);

/// Emit a network in the DSL; parse_topology(serialize_topology(n)) == n.
std::string serialize_topology(const OscillatorNetwork& net);

}
