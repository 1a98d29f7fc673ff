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

#ifndef CIRCORBITS_ORBITS_HPP
#define CIRCORBITS_ORBITS_HPP

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <circorbits/errors.hpp>
#include <circorbits/graph.hpp>
#include <circorbits/numeric.hpp>
#include <circorbits/parallel.hpp>

namespace circorbits {

// A closed walk v_0, v_1, ..., v_l = v_0. `vertices` holds v_0..v_{l-1};
// arcs[i] is the arc of the bond (v_i, v_{i+1}).
struct Circuit {
    std::vector<Vertex> vertices;
    std::vector<int> arcs;

    Vertex origin() const
    {
        return vertices.front();
    }
    std::size_t length() const noexcept
    {
        return arcs.size();
    }

    friend bool operator==(const Circuit &, const Circuit &) = default;
};

// Lexicographically smallest rotation.
inline std::vector<Vertex> minimal_rotation(std::span<const Vertex> seq)
{
    std::vector<Vertex> best(seq.begin(), seq.end());
    std::vector<Vertex> candidate(seq.size());
    for (std::size_t shift = 1; shift < seq.size(); ++shift) {
        std::rotate_copy(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(shift), seq.end(), candidate.begin());
        if (candidate < best) {
            best = candidate;
        }
    }
    return best;
}

// Renders a vertex string the way orbit listings do: bare digits when every
// vertex is a single digit, dot-separated otherwise.
inline std::string vertex_string(std::span<const Vertex> seq, int n)
{
    std::string out;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (n > 10 && i > 0) {
            out += '.';
        }
        out += std::to_string(seq[i]);
    }
    return out;
}

// Rotation class of a circuit, represented by its minimal rotation.
struct PeriodicOrbit {
    std::vector<Vertex> canonical;
    std::int64_t walk_sum = 0;

    std::size_t length() const noexcept
    {
        return canonical.size();
    }

    static PeriodicOrbit from_circuit(const Circuit &c)
    {
        return PeriodicOrbit{minimal_rotation(c.vertices), circorbits::walk_sum(c.arcs)};
    }

    // Ordered by length, then lexicographically.
    friend std::strong_ordering operator<=>(const PeriodicOrbit &a, const PeriodicOrbit &b)
    {
        if (const auto c = a.canonical.size() <=> b.canonical.size(); c != 0) {
            return c;
        }
        return a.canonical <=> b.canonical;
    }
    friend bool operator==(const PeriodicOrbit &a, const PeriodicOrbit &b)
    {
        return a.canonical == b.canonical;
    }
};

// Builds the orbit through the given vertices (closing bond implied) and
// checks every step is a bond of g.
inline PeriodicOrbit make_orbit(const CirculantGraph &g, std::span<const Vertex> vertices)
{
    if (vertices.empty()) {
        throw PreconditionError("an orbit needs at least one vertex");
    }
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const Vertex v = vertices[i];
        const Vertex w = vertices[(i + 1) % vertices.size()];
        if (v < 0 || v >= g.n() || w < 0 || w >= g.n()) {
            throw PreconditionError("vertex out of range for " + g.name());
        }
        const auto arc = g.arc_between(v, w);
        if (!arc) {
            throw PreconditionError("no bond " + std::to_string(v) + "->" + std::to_string(w) + " in " + g.name());
        }
        sum += *arc;
    }
    return PeriodicOrbit{minimal_rotation(vertices), sum};
}

inline std::vector<Bond> orbit_bonds(const CirculantGraph &g, const PeriodicOrbit &orbit)
{
    std::vector<Bond> out;
    out.reserve(orbit.length());
    const auto &c = orbit.canonical;
    for (std::size_t i = 0; i < c.size(); ++i) {
        out.push_back(Bond{c[i], *g.arc_between(c[i], c[(i + 1) % c.size()])});
    }
    return out;
}

inline std::string to_string(const PeriodicOrbit &orbit, int n)
{
    return vertex_string(orbit.canonical, n);
}

// A set of distinct periodic orbits, kept sorted. The empty set is the null
// pseudo orbit of length 0.
struct PseudoOrbit {
    std::vector<PeriodicOrbit> orbits;

    static PseudoOrbit from_orbits(std::vector<PeriodicOrbit> orbits)
    {
        std::sort(orbits.begin(), orbits.end());
        if (std::adjacent_find(orbits.begin(), orbits.end()) != orbits.end()) {
            throw PreconditionError("a primitive pseudo orbit cannot repeat a periodic orbit");
        }
        return PseudoOrbit{std::move(orbits)};
    }

    std::size_t length() const noexcept
    {
        std::size_t l = 0;
        for (const auto &o : orbits) {
            l += o.length();
        }
        return l;
    }

    std::int64_t walk_sum() const noexcept
    {
        std::int64_t s = 0;
        for (const auto &o : orbits) {
            s += o.walk_sum;
        }
        return s;
    }

    friend auto operator<=>(const PseudoOrbit &, const PseudoOrbit &) = default;
    friend bool operator==(const PseudoOrbit &, const PseudoOrbit &) = default;
};

// "(03, 0125)"; the null pseudo orbit prints as "()".
inline std::string to_string(const PseudoOrbit &p, int n)
{
    std::string out = "(";
    for (std::size_t i = 0; i < p.orbits.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += to_string(p.orbits[i], n);
    }
    return out + ")";
}

// Bonds of all member orbits, counted once per member occurrence.
inline std::vector<Bond> pseudo_orbit_bonds(const CirculantGraph &g, const PseudoOrbit &p)
{
    std::vector<Bond> out;
    for (const auto &o : p.orbits) {
        const auto b = orbit_bonds(g, o);
        out.insert(out.end(), b.begin(), b.end());
    }
    return out;
}

// Self-intersection class of a primitive pseudo orbit.
struct EncounterProfile {
    enum class Kind { no_self_intersection, two_encounters_length_zero, other };

    Kind kind = Kind::no_self_intersection;
    // N, the number of 2-encounters of length zero; 0 unless
    // kind == two_encounters_length_zero.
    int encounters = 0;

    // none | enc2_0_N<k> | other
    std::string class_name() const
    {
        switch (kind) {
            case Kind::no_self_intersection:
                return "none";
            case Kind::two_encounters_length_zero:
                return "enc2_0_N" + std::to_string(encounters);
            case Kind::other:
                break;
        }
        return "other";
    }

    friend bool operator==(const EncounterProfile &, const EncounterProfile &) = default;
};

// Multiplicity-based classification: a repeated bond is an encounter of
// length >= 1 and a vertex seen three or more times is an l-encounter with
// l > 2; otherwise each twice-seen vertex is one 2-encounter of length 0.
inline EncounterProfile classify(const PseudoOrbit &p)
{
    std::map<Vertex, int> vertex_mult;
    std::map<std::pair<Vertex, Vertex>, int> bond_mult;
    for (const auto &orbit : p.orbits) {
        const auto &c = orbit.canonical;
        for (std::size_t i = 0; i < c.size(); ++i) {
            ++vertex_mult[c[i]];
            ++bond_mult[{c[i], c[(i + 1) % c.size()]}];
        }
    }
    int max_bond = 0;
    for (const auto &[bond, count] : bond_mult) {
        max_bond = std::max(max_bond, count);
    }
    int max_vertex = 0;
    int twice = 0;
    for (const auto &[vertex, count] : vertex_mult) {
        max_vertex = std::max(max_vertex, count);
        twice += count == 2 ? 1 : 0;
    }
    if (max_bond > 1 || max_vertex > 2) {
        return {EncounterProfile::Kind::other, 0};
    }
    if (twice == 0) {
        return {EncounterProfile::Kind::no_self_intersection, 0};
    }
    return {EncounterProfile::Kind::two_encounters_length_zero, twice};
}

// Number of bonds of the orbit that pass v.
inline std::int64_t passing_count(const CirculantGraph &g, const PeriodicOrbit &orbit, Vertex v)
{
    std::int64_t count = 0;
    for (const auto &b : orbit_bonds(g, orbit)) {
        count += bond_passes(g, b, v) ? 1 : 0;
    }
    return count;
}

// All circuits of length l with the given origin, each exactly once, found by
// depth-first extension over the two outgoing arcs. Branches whose remaining
// steps cannot reach a multiple of n are cut early.
inline std::vector<Circuit> enumerate_circuits(const CirculantGraph &g, int l, Vertex origin)
{
    if (l < 1) {
        throw PreconditionError("circuit length must be >= 1");
    }
    if (origin < 0 || origin >= g.n()) {
        throw PreconditionError("origin out of range for " + g.name());
    }
    std::vector<Circuit> out;
    Circuit current;
    current.vertices.reserve(static_cast<std::size_t>(l));
    current.arcs.reserve(static_cast<std::size_t>(l));
    const std::int64_t n = g.n();

    std::function<void(Vertex, std::int64_t)> extend = [&](Vertex v, std::int64_t sum) {
        const auto depth = static_cast<std::int64_t>(current.arcs.size());
        if (depth == l) {
            if (v == origin) {
                out.push_back(current);
            }
            return;
        }
        const auto remaining = l - depth;
        const auto lo = sum + remaining * g.a1();
        const auto hi = sum + remaining * g.a2();
        if (ceil_div(lo, n) * n > hi) {
            return;
        }
        for (const int arc : g.arcs()) {
            current.vertices.push_back(v);
            current.arcs.push_back(arc);
            extend(g.step(v, arc), sum + arc);
            current.vertices.pop_back();
            current.arcs.pop_back();
        }
    };
    extend(origin, 0);
    return out;
}

// Primitive iff the circuit is not a shorter closed circuit repeated, i.e. the
// vertex sequence has no proper period. A periodic arc sequence alone is not
// enough: on C_8^+(1,3) the arcs of 0,3,4,7 repeat with period 2 but the
// 2-step prefix does not close.
inline bool is_primitive(const Circuit &c)
{
    const auto l = c.vertices.size();
    for (std::size_t p = 1; p < l; ++p) {
        if (l % p != 0) {
            continue;
        }
        bool periodic = true;
        for (std::size_t i = p; i < l && periodic; ++i) {
            periodic = c.vertices[i] == c.vertices[i - p];
        }
        if (periodic) {
            return false;
        }
    }
    return true;
}

// Distinct primitive periodic orbits of length exactly l, sorted.
inline std::vector<PeriodicOrbit> enumerate_primitive_pos(const CirculantGraph &g, int l)
{
    if (l < 1) {
        throw PreconditionError("orbit length must be >= 1");
    }
    std::vector<std::vector<PeriodicOrbit>> per_origin(static_cast<std::size_t>(g.n()));
    parallel_for(per_origin.size(), [&](std::size_t origin) {
        for (const auto &c : enumerate_circuits(g, l, static_cast<Vertex>(origin))) {
            if (is_primitive(c)) {
                per_origin[origin].push_back(PeriodicOrbit::from_circuit(c));
            }
        }
    });
    std::vector<PeriodicOrbit> out;
    for (auto &chunk : per_origin) {
        out.insert(out.end(), std::make_move_iterator(chunk.begin()), std::make_move_iterator(chunk.end()));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// PO(1..max_length) from Tr(A^l) = sum_{w | l} w * PO(w), solved upward in
// exact arithmetic. Entry 0 is unused and zero.
inline std::vector<BigInt> trace_po_table(const CirculantGraph &g, int max_length)
{
    if (max_length < 1) {
        throw PreconditionError("orbit length must be >= 1");
    }
    const auto a = adjacency_matrix(g).cast<BigInt>();
    std::vector<BigInt> po(static_cast<std::size_t>(max_length) + 1, 0);
    auto power = a;
    for (std::int64_t l = 1; l <= max_length; ++l) {
        BigInt rest = 0;
        for (const auto w : divisors(l)) {
            if (w != l) {
                rest += w * po[static_cast<std::size_t>(w)];
            }
        }
        const BigInt primitive_circuits = power.trace() - rest;
        if (primitive_circuits % l != 0) {
            throw DivisionError("trace recursion is not divisible by l = " + std::to_string(l) + " on " + g.name());
        }
        po[static_cast<std::size_t>(l)] = primitive_circuits / l;
        if (l < max_length) {
            power = power * a;
        }
    }
    return po;
}

inline BigInt trace_po_oracle(const CirculantGraph &g, int l)
{
    return trace_po_table(g, l).back();
}

// Upper bound on the DFS leaves visited when enumerating every primitive
// periodic orbit up to length l.
inline double estimated_enumeration_size(const CirculantGraph &g, int l)
{
    double leaves = 0;
    for (int j = 1; j <= l; ++j) {
        leaves += std::ldexp(1.0, j);
    }
    return leaves * g.n();
}

struct PsoOptions {
    // Lengths above n are outside the range the closed forms cover.
    bool allow_beyond_n = false;
};

// Every set of distinct primitive periodic orbits with total length l, sorted.
// l = 0 gives the null pseudo orbit alone.
inline std::vector<PseudoOrbit> enumerate_primitive_psos(const CirculantGraph &g, int l, PsoOptions options = {})
{
    if (l < 0) {
        throw PreconditionError("pseudo orbit length must be >= 0");
    }
    if (l > g.n() && !options.allow_beyond_n) {
        throw PreconditionError("pseudo orbit length " + std::to_string(l) + " exceeds n = " + std::to_string(g.n())
                                + "; set allow_beyond_n to lift the cap");
    }
    std::vector<PeriodicOrbit> pool;
    for (int j = 2; j <= l; ++j) {
        auto orbits = enumerate_primitive_pos(g, j);
        pool.insert(pool.end(), orbits.begin(), orbits.end());
    }

    std::vector<PseudoOrbit> out;
    std::vector<PeriodicOrbit> chosen;
    std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start, std::size_t remaining) {
        if (remaining == 0) {
            out.push_back(PseudoOrbit::from_orbits(chosen));
            return;
        }
        for (std::size_t i = start; i < pool.size() && pool[i].length() <= remaining; ++i) {
            chosen.push_back(pool[i]);
            choose(i + 1, remaining - pool[i].length());
            chosen.pop_back();
        }
    };
    choose(0, static_cast<std::size_t>(l));
    std::sort(out.begin(), out.end());
    return out;
}

// All pseudo orbits that use exactly the given bonds, each once. The orbits
// are traced bond by bond; the first time a twice-used vertex is reached
// there are two ways to continue (two outgoing bonds, or closing versus
// leaving by the other bond at the starting vertex), and every other step is
// forced. Yields 2^N pseudo orbits for N twice-used vertices.
inline std::vector<PseudoOrbit> pseudo_orbits_from_bonds(const CirculantGraph &g, std::span<const Bond> bonds)
{
    if (bonds.empty()) {
        throw PreconditionError("bond set must be nonempty");
    }
    std::vector<Bond> set(bonds.begin(), bonds.end());
    std::sort(set.begin(), set.end());
    if (std::adjacent_find(set.begin(), set.end()) != set.end()) {
        throw PreconditionError("bonds must be distinct");
    }
    std::vector<int> out_degree(static_cast<std::size_t>(g.n()), 0);
    std::vector<int> in_degree(static_cast<std::size_t>(g.n()), 0);
    for (const auto &b : set) {
        if (!g.contains(b)) {
            throw PreconditionError("bond (" + std::to_string(b.origin) + ", arc " + std::to_string(b.arc)
                                    + ") is not in " + g.name());
        }
        ++out_degree[static_cast<std::size_t>(b.origin)];
        ++in_degree[static_cast<std::size_t>(g.terminal(b))];
    }
    if (out_degree != in_degree) {
        throw PreconditionError("origin and terminal multisets differ");
    }
    if (std::any_of(out_degree.begin(), out_degree.end(), [](int d) { return d > 2; })) {
        throw PreconditionError("a vertex is the origin of more than two bonds");
    }

    // Outgoing bonds per vertex, as positions in `set`.
    std::vector<std::vector<std::size_t>> outgoing(static_cast<std::size_t>(g.n()));
    for (std::size_t i = 0; i < set.size(); ++i) {
        outgoing[static_cast<std::size_t>(set[i].origin)].push_back(i);
    }

    std::vector<PseudoOrbit> results;
    std::vector<char> used(set.size(), 0);
    std::vector<PeriodicOrbit> finished;
    std::vector<Vertex> walk;

    std::function<void()> start_orbit;
    std::function<void(std::size_t, std::size_t)> follow;

    start_orbit = [&] {
        const auto first = std::find(used.begin(), used.end(), 0);
        if (first == used.end()) {
            results.push_back(PseudoOrbit::from_orbits(finished));
            return;
        }
        const auto b0 = static_cast<std::size_t>(first - used.begin());
        used[b0] = 1;
        walk.assign(1, set[b0].origin);
        follow(b0, b0);
        used[b0] = 0;
    };

    // `current` was just traversed; `start` opened the orbit being traced.
    follow = [&](std::size_t start, std::size_t current) {
        const Vertex v = g.terminal(set[current]);
        std::vector<std::size_t> options;
        if (v == set[start].origin) {
            options.push_back(start); // close the orbit
        }
        for (const auto i : outgoing[static_cast<std::size_t>(v)]) {
            if (!used[i]) {
                options.push_back(i);
            }
        }
        for (const auto next : options) {
            if (next == start) {
                const auto saved_walk = walk;
                finished.push_back(make_orbit(g, walk));
                start_orbit();
                finished.pop_back();
                walk = saved_walk;
            } else {
                used[next] = 1;
                walk.push_back(v);
                follow(start, next);
                walk.pop_back();
                used[next] = 0;
            }
        }
    };

    start_orbit();
    return results;
}

} // namespace circorbits

#endif
