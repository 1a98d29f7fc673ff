/*
 * Copyright 2026 The circorbits Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CIRCORBITS_GRAPH_HPP
#define CIRCORBITS_GRAPH_HPP

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <circorbits/errors.hpp>
#include <circorbits/numeric.hpp>

namespace circorbits {

using Vertex = int;

// A directed edge of a circulant graph, identified by its origin and its arc.
// The terminal vertex depends on n and is obtained from the graph.
struct Bond {
    Vertex origin = 0;
    int arc = 0;

    friend auto operator<=>(const Bond &, const Bond &) = default;
};

class CirculantGraph;
CirculantGraph make_graph(int n, int a1, int a2);

// The 4-regular directed circulant graph C_n^+(a1, a2), 0 < a1 < a2 < n.
// Every vertex v has the two outgoing bonds (v, v + a1) and (v, v + a2).
class CirculantGraph {
public:
    int n() const noexcept
    {
        return n_;
    }
    int a1() const noexcept
    {
        return a1_;
    }
    int a2() const noexcept
    {
        return a2_;
    }
    // d = a2 - a1.
    int gap() const noexcept
    {
        return a2_ - a1_;
    }
    std::array<int, 2> arcs() const noexcept
    {
        return {a1_, a2_};
    }
    std::size_t bond_count() const noexcept
    {
        return 2 * static_cast<std::size_t>(n_);
    }

    bool has_arc(int arc) const noexcept
    {
        return arc == a1_ || arc == a2_;
    }

    // 0 for a1, 1 for a2.
    int arc_selector(int arc) const
    {
        if (!has_arc(arc)) {
            throw PreconditionError("arc " + std::to_string(arc) + " is not an arc of " + name());
        }
        return arc == a1_ ? 0 : 1;
    }

    Vertex step(Vertex v, int arc) const noexcept
    {
        return static_cast<Vertex>(mod(static_cast<std::int64_t>(v) + arc, n_));
    }

    Vertex terminal(const Bond &b) const noexcept
    {
        return step(b.origin, b.arc);
    }

    bool contains(const Bond &b) const noexcept
    {
        return b.origin >= 0 && b.origin < n_ && has_arc(b.arc);
    }

    Bond bond(Vertex origin, int arc) const
    {
        const Bond b{origin, arc};
        if (!contains(b)) {
            throw PreconditionError("(" + std::to_string(origin) + ", arc " + std::to_string(arc)
                                    + ") is not a bond of " + name());
        }
        return b;
    }

    // The arc of the bond from `from` to `to`, if there is one.
    std::optional<int> arc_between(Vertex from, Vertex to) const noexcept
    {
        const auto diff = static_cast<int>(mod(static_cast<std::int64_t>(to) - from, n_));
        if (diff == a1_ || diff == a2_) {
            return diff;
        }
        return std::nullopt;
    }

    // Bond b = (v, arc) has index 2v + arc_selector(arc).
    std::size_t bond_index(const Bond &b) const
    {
        return 2 * static_cast<std::size_t>(b.origin) + static_cast<std::size_t>(arc_selector(b.arc));
    }

    Bond bond_at(std::size_t index) const noexcept
    {
        return Bond{static_cast<Vertex>(index / 2), index % 2 == 0 ? a1_ : a2_};
    }

    std::vector<Bond> bonds() const
    {
        std::vector<Bond> out;
        out.reserve(bond_count());
        for (std::size_t i = 0; i < bond_count(); ++i) {
            out.push_back(bond_at(i));
        }
        return out;
    }

    std::string name() const
    {
        return "C_" + std::to_string(n_) + "^+(" + std::to_string(a1_) + "," + std::to_string(a2_) + ")";
    }

    friend bool operator==(const CirculantGraph &, const CirculantGraph &) = default;

private:
    CirculantGraph(int n, int a1, int a2) : n_(n), a1_(a1), a2_(a2) {}
    friend CirculantGraph make_graph(int, int, int);

    int n_;
    int a1_;
    int a2_;
};

// Validates and builds C_n^+(a1, a2). Out-of-range arcs are rejected, never
// reduced mod n.
inline CirculantGraph make_graph(int n, int a1, int a2)
{
    const std::string label = "C_" + std::to_string(n) + "^+(" + std::to_string(a1) + "," + std::to_string(a2) + ")";
    if (n < 1) {
        throw GraphError(label + ": vertex count must be positive");
    }
    if (mod(a1, n) == 0 || mod(a2, n) == 0) {
        throw LoopError(label + ": an arc congruent to 0 mod n creates loops");
    }
    if (a1 < 0 || a2 < 0) {
        throw GraphError(label + ": arcs must be positive");
    }
    if (n <= a1 || n <= a2) {
        throw TooSmallError(label + ": need n > a2");
    }
    if (a1 == a2) {
        throw MultiEdgeError(label + ": equal arcs create multiple bonds");
    }
    if (a1 > a2) {
        throw GraphError(label + ": arcs must be given as a1 < a2");
    }
    return CirculantGraph(n, a1, a2);
}

inline SquareMatrix<int> adjacency_matrix(const CirculantGraph &g)
{
    SquareMatrix<int> a(static_cast<std::size_t>(g.n()));
    for (Vertex v = 0; v < g.n(); ++v) {
        for (const int arc : g.arcs()) {
            a(static_cast<std::size_t>(v), static_cast<std::size_t>(g.step(v, arc))) = 1;
        }
    }
    return a;
}

template <typename T>
bool is_circulant(const SquareMatrix<T> &a)
{
    const auto n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (a(i, j) != a((i + 1) % n, (j + 1) % n)) {
                return false;
            }
        }
    }
    return true;
}

// Directed reachability from vertex 0.
inline bool is_connected(const CirculantGraph &g)
{
    std::vector<char> seen(static_cast<std::size_t>(g.n()), 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        for (const int arc : g.arcs()) {
            const Vertex w = g.step(v, arc);
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == static_cast<std::size_t>(g.n());
}

// b passes v when (v - o(b)) mod n < arc(b). The origin is always passed.
inline bool bond_passes(const CirculantGraph &g, const Bond &b, Vertex v)
{
    return mod(static_cast<std::int64_t>(v) - b.origin, g.n()) < b.arc;
}

inline std::int64_t walk_sum(std::span<const int> arcs)
{
    return std::accumulate(arcs.begin(), arcs.end(), std::int64_t{0});
}

} // namespace circorbits

#endif
