#include "oscnet/network.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace oscnet {

ParseError::ParseError(std::string message, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + std::move(message)),
      line_(line), column_(column) {}

OscillatorNetwork::OscillatorNetwork(std::vector<std::string> labels,
                                     std::vector<Edge> edges,
                                     std::vector<int> reference_nodes,
                                     std::vector<int> hub_nodes)
    : labels_(std::move(labels)),
      edges_(std::move(edges)),
      reference_nodes_(std::move(reference_nodes)),
      hub_nodes_(std::move(hub_nodes)) {
    const int n = size();

    std::unordered_set<std::string_view> seen;
    for (const auto& label : labels_) {
        if (!seen.insert(label).second)
            throw std::invalid_argument("duplicate node label '" + label + "'");
    }

    std::set<std::pair<int, int>> keys;
    for (auto& e : edges_) {
        if (e.a > e.b) std::swap(e.a, e.b);
        if (e.a < 0 || e.b >= n)
            throw std::invalid_argument("edge index out of range");
        if (e.a == e.b)
            throw std::invalid_argument("self-loop on node " + std::to_string(e.a));
        if (!(e.weight > 0.0) || !std::isfinite(e.weight))
            throw std::invalid_argument("edge weight must be positive and finite");
        if (!keys.insert({e.a, e.b}).second)
            throw std::invalid_argument("duplicate edge (" + std::to_string(e.a) +
                                        ", " + std::to_string(e.b) + ")");
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& x, const Edge& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });

    auto check_roles = [n](std::vector<int>& roles, const char* what) {
        std::sort(roles.begin(), roles.end());
        for (std::size_t i = 0; i < roles.size(); ++i) {
            if (roles[i] < 0 || roles[i] >= n)
                throw std::invalid_argument(std::string(what) + " index out of range");
            if (i > 0 && roles[i] == roles[i - 1])
                throw std::invalid_argument(std::string("duplicate ") + what + " index");
        }
    };
    check_roles(reference_nodes_, "reference");
    check_roles(hub_nodes_, "hub");
    for (int ref : reference_nodes_)
        if (std::binary_search(hub_nodes_.begin(), hub_nodes_.end(), ref))
            throw std::invalid_argument("node " + std::to_string(ref) +
                                        " is both reference and hub");
}

std::optional<int> OscillatorNetwork::index_of(std::string_view label) const {
    for (int i = 0; i < size(); ++i)
        if (labels_[i] == label) return i;
    return std::nullopt;
}

OscillatorNetwork build_interferometric(int chain_length, double coupling) {
    const int m = chain_length;
    if (m < 2 || m % 2 != 0)
        throw std::invalid_argument("chain length must be an even integer >= 2, got " +
                                    std::to_string(m));
    if (!(coupling > 0.0) || !std::isfinite(coupling))
        throw std::invalid_argument("coupling must be positive");

    // index 0 = r1, index 1 = r2, chain oscillator k at index k + 1
    std::vector<std::string> labels;
    labels.reserve(m + 2);
    labels.emplace_back("r1");
    labels.emplace_back("r2");
    for (int k = 1; k <= m; ++k) labels.push_back(std::to_string(k));

    const int hub_lo = m / 2;
    const int hub_hi = (m + 2) / 2;
    std::vector<Edge> edges;
    edges.reserve(4 + (m - 2));
    for (int ref : {0, 1}) {
        edges.push_back({ref, hub_lo + 1, coupling});
        edges.push_back({ref, hub_hi + 1, coupling});
    }
    // chain bonds, with the one between the hubs removed
    for (int i = 1; i <= m - 1; ++i) {
        if (i == m / 2) continue;
        edges.push_back({i + 1, i + 2, coupling});
    }

    return OscillatorNetwork(std::move(labels), std::move(edges),
                             {0, 1}, {hub_lo + 1, hub_hi + 1});
}

OscillatorNetwork build_chain(int n, double coupling) {
    if (n < 2)
        throw std::invalid_argument("chain needs at least 2 oscillators");
    if (!(coupling > 0.0) || !std::isfinite(coupling))
        throw std::invalid_argument("coupling must be positive");

    std::vector<std::string> labels;
    labels.reserve(n);
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    std::vector<Edge> edges;
    edges.reserve(n - 1);
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, coupling});
    return OscillatorNetwork(std::move(labels), std::move(edges));
}

namespace {

struct Token {
    std::string text;
    int column;   // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) { ++i; continue; }
        if (line[i] == '#') break;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
               line[i] != '#')
            ++i;
        tokens.push_back({std::string(line.substr(start, i - start)),
                          static_cast<int>(start) + 1});
    }
    return tokens;
}

}

OscillatorNetwork parse_topology(std::string_view text) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, int> index;
    std::vector<Edge> edges;
    std::set<std::pair<int, int>> edge_keys;
    std::vector<int> references;
    std::vector<int> hubs;

    auto lookup = [&](const Token& tok, int line) {
        auto it = index.find(tok.text);
        if (it == index.end())
            throw ParseError("unknown node '" + tok.text + "'", line, tok.column);
        return it->second;
    };

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;

        auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        const std::string& kw = tokens[0].text;

        if (kw == "node") {
            if (tokens.size() != 2)
                throw ParseError("expected: node <name>", line_no, tokens[0].column);
            if (index.count(tokens[1].text))
                throw ParseError("duplicate node '" + tokens[1].text + "'",
                                 line_no, tokens[1].column);
            index.emplace(tokens[1].text, static_cast<int>(labels.size()));
            labels.push_back(tokens[1].text);
        } else if (kw == "edge") {
            if (tokens.size() != 4)
                throw ParseError("expected: edge <name> <name> <positive-float>",
                                 line_no, tokens[0].column);
            int a = lookup(tokens[1], line_no);
            int b = lookup(tokens[2], line_no);
            if (a == b)
                throw ParseError("self-loop on node '" + tokens[1].text + "'",
                                 line_no, tokens[2].column);
            double w = 0.0;
            const std::string& ws = tokens[3].text;
            auto [ptr, ec] = std::from_chars(ws.data(), ws.data() + ws.size(), w);
            if (ec != std::errc{} || ptr != ws.data() + ws.size())
                throw ParseError("malformed weight '" + ws + "'", line_no, tokens[3].column);
            if (!(w > 0.0) || !std::isfinite(w))
                throw ParseError("weight must be positive, got '" + ws + "'",
                                 line_no, tokens[3].column);
            auto key = std::minmax(a, b);
            if (!edge_keys.insert({key.first, key.second}).second)
                throw ParseError("duplicate edge '" + tokens[1].text + " " +
                                 tokens[2].text + "'", line_no, tokens[1].column);
            edges.push_back({key.first, key.second, w});
        } else if (kw == "reference" || kw == "hub") {
            if (tokens.size() != 2)
                throw ParseError("expected: " + kw + " <name>", line_no, tokens[0].column);
            int node = lookup(tokens[1], line_no);
            auto& list = (kw == "reference") ? references : hubs;
            if (std::find(list.begin(), list.end(), node) != list.end())
                throw ParseError("duplicate " + kw + " '" + tokens[1].text + "'",
                                 line_no, tokens[1].column);
            list.push_back(node);
        } else {
            throw ParseError("unknown statement '" + kw + "'", line_no, tokens[0].column);
        }
    }

    try {
        return OscillatorNetwork(std::move(labels), std::move(edges),
                                 std::move(references), std::move(hubs));
    } catch (const std::invalid_argument& err) {
        throw ParseError(err.what(), line_no, 1);
    }
}

namespace {

std::string format_weight(double w) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), w);
    return std::string(buf, ptr);
}

}

std::string serialize_topology(const OscillatorNetwork& net) {
    std::ostringstream out;
    for (const auto& label : net.labels()) out << "node " << label << '\n';
    for (const auto& e : net.edges())
        out << "edge " << net.labels()[e.a] << ' ' << net.labels()[e.b] << ' '
            << format_weight(e.weight) << '\n';
    for (int ref : net.reference_nodes()) out << "reference " << net.labels()[ref] << '\n';
    for (int hub : net.hub_nodes()) out << "hub " << net.labels()[hub] << '\n';
    return out.str();
}

}
