#pragma once

#include <map>
#include <sstream>

#include "ansatzlab/observable.hpp"

namespace ansatzlab {

/// Simple undirected weighted graph, vertices 0..n-1.
struct Graph {
    int n = 0;
    std::vector<std::tuple<int, int, double>> edges;  // (u, v, weight)
};

/// Text format: first line "n m", then m lines "u v [w]" (w defaults to 1).
inline Graph parse_graph(std::istream& in) {
    Graph g;
    int m = 0;
    if (!(in >> g.n >> m)) fail(ErrorKind::ParseError, "graph header: expected \"n m\"");
    for (int k = 0; k < m; ++k) {
        int u, v;
        if (!(in >> u >> v)) fail(ErrorKind::ParseError, "graph edge " + std::to_string(k));
        double w = 1.0;
        // optional weight: peek the rest of the line
        std::string rest;
        std::getline(in, rest);
        std::istringstream rs(rest);
        rs >> w;
        if (rs.fail()) w = 1.0;
        if (u < 0 || u >= g.n || v < 0 || v >= g.n || u == v)
            fail(ErrorKind::ParseError, "graph edge endpoints out of range");
        g.edges.emplace_back(u, v, w);
    }
    return g;
}

inline Graph load_graph(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail(ErrorKind::IoError, "cannot open " + path);
    return parse_graph(f);
}

/// Square distance matrix parsed from CSV.
inline std::vector<std::vector<double>> load_distance_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail(ErrorKind::IoError, "cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    for (const auto& r : rows)
        if (r.size() != rows.size()) fail(ErrorKind::ParseError, "distance matrix must be square");
    return rows;
}

// -- QUBO -> Z-basis observable -------------------------------------------------

/// Binary quadratic form over x in {0,1}^n; mapped to a diagonal observable via
/// x_i = (1 - Z_i) / 2.
struct Qubo {
    int n = 0;
    double constant = 0.0;
    std::vector<double> linear;                 // c_i x_i
    std::map<std::pair<int, int>, double> quad;  // c_ij x_i x_j, i < j

    explicit Qubo(int n_) : n(n_), linear(n_, 0.0) {}

    void add_linear(int i, double c) { linear[i] += c; }
    void add_quadratic(int i, int j, double c) {
        if (i == j) {
            linear[i] += c;  // x^2 = x
            return;
        }
        quad[{std::min(i, j), std::max(i, j)}] += c;
    }
};

inline Observable qubo_to_observable(const Qubo& q) {
    Observable obs;
    obs.n = q.n;
    obs.offset = q.constant;
    std::vector<double> z(q.n, 0.0);  // single-Z coefficients
    for (int i = 0; i < q.n; ++i) {
        obs.offset += 0.5 * q.linear[i];
        z[i] -= 0.5 * q.linear[i];
    }
    for (const auto& [ij, c] : q.quad) {
        const auto [i, j] = ij;
        obs.offset += 0.25 * c;
        z[i] -= 0.25 * c;
        z[j] -= 0.25 * c;
        std::string letters(q.n, 'I');
        letters[i] = 'Z';
        letters[j] = 'Z';
        obs.terms.emplace_back(0.25 * c, PauliString{std::move(letters)});
    }
    for (int i = 0; i < q.n; ++i) {
        if (z[i] == 0.0) continue;
        std::string letters(q.n, 'I');
        letters[i] = 'Z';
        obs.terms.emplace_back(z[i], PauliString{std::move(letters)});
    }
    return obs;
}

// -- problem encoders -------------------------------------------------------------

/// How to present optimized energies to the user.
enum class CostOrientation { Direct, NegateForReport };

struct EncodedProblem {
    Observable obs;
    CostOrientation orientation = CostOrientation::Direct;
    std::string kind;
};

/// Max-cut: minimum eigenvalue is -(max cut value); reported cost is the cut.
inline EncodedProblem encode_maxcut(const Graph& g) {
    if (g.edges.empty()) fail(ErrorKind::EmptyGraph, "max-cut needs at least one edge");
    Observable obs;
    obs.n = g.n;
    double wsum = 0.0;
    for (const auto& [u, v, w] : g.edges) {
        if (w < 0) fail(ErrorKind::InvalidSpec, "max-cut weights must be >= 0");
        wsum += w;
        std::string letters(g.n, 'I');
        letters[u] = 'Z';
        letters[v] = 'Z';
        obs.terms.emplace_back(0.5 * w, PauliString{std::move(letters)});
    }
    obs.offset = -0.5 * wsum;
    return {std::move(obs), CostOrientation::NegateForReport, "maxcut"};
}

/// Vertex cover with unit vertex weights: A * sum_edges (1-x_u)(1-x_v) + sum_v x_v.
/// A > 1 makes every cover constraint dominate.
inline EncodedProblem encode_vertex_cover(const Graph& g, double penalty = 2.0) {
    if (g.edges.empty()) fail(ErrorKind::EmptyGraph, "vertex cover needs at least one edge");
    if (penalty <= 1.0) fail(ErrorKind::PenaltyTooSmall, "penalty must exceed the unit vertex weight");
    Qubo q(g.n);
    for (int v = 0; v < g.n; ++v) q.add_linear(v, 1.0);
    for (const auto& [u, v, w] : g.edges) {
        (void)w;
        q.constant += penalty;
        q.add_linear(u, -penalty);
        q.add_linear(v, -penalty);
        q.add_quadratic(u, v, penalty);
    }
    return {qubo_to_observable(q), CostOrientation::Direct, "vertex-cover"};
}

/// One-hot TSP on n_c cities (n_c^2 qubits, so n_c <= 3): qubit v*n_c + p means
/// city v visited at position p. Tour cost plus row/column one-hot penalties.
inline EncodedProblem encode_tsp(const std::vector<std::vector<double>>& dist, double penalty = 0.0) {
    const int nc = static_cast<int>(dist.size());
    if (nc < 2) fail(ErrorKind::InvalidSpec, "need at least two cities");
    if (nc * nc > 12) fail(ErrorKind::TooManyQubits, "one-hot TSP needs n_c^2 <= 12 qubits");
    double dmax = 0.0;
    for (const auto& row : dist)
        for (double d : row) dmax = std::max(dmax, d);
    if (penalty == 0.0) penalty = 2.0 * nc * dmax;
    if (penalty <= nc * dmax) fail(ErrorKind::PenaltyTooSmall, "penalty must exceed n_c * max distance");

    Qubo q(nc * nc);
    auto var = [nc](int city, int pos) { return city * nc + pos; };
    for (int u = 0; u < nc; ++u)
        for (int v = 0; v < nc; ++v) {
            if (u == v) continue;
            for (int p = 0; p < nc; ++p)
                q.add_quadratic(var(u, p), var(v, (p + 1) % nc), dist[u][v]);
        }
    // (1 - sum x)^2 = 1 - sum x + 2 sum_{i<j} x_i x_j
    auto one_hot = [&](const std::vector<int>& vars) {
        q.constant += penalty;
        for (int a : vars) q.add_linear(a, -penalty);
        for (size_t a = 0; a < vars.size(); ++a)
            for (size_t b = a + 1; b < vars.size(); ++b) q.add_quadratic(vars[a], vars[b], 2.0 * penalty);
    };
    for (int v = 0; v < nc; ++v) {
        std::vector<int> row(nc);
        for (int p = 0; p < nc; ++p) row[p] = var(v, p);
        one_hot(row);
    }
    for (int p = 0; p < nc; ++p) {
        std::vector<int> col(nc);
        for (int v = 0; v < nc; ++v) col[v] = var(v, p);
        one_hot(col);
    }
    return {qubo_to_observable(q), CostOrientation::Direct, "tsp"};
}

}  // namespace ansatzlab
