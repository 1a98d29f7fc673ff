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


#include <random>
#include <set>

#include <gtest/gtest.h>

#include <circorbits/counting.hpp>
#include <circorbits/embedded_data.hpp>
#include <circorbits/fixtures.hpp>
#include <circorbits/orbits.hpp>

#include "oracles.hpp"

using namespace circorbits;

namespace {

Circuit circuit_from_vertices(const CirculantGraph &g, std::vector<Vertex> vertices)
{
    Circuit c;
    c.vertices = vertices;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        c.arcs.push_back(*g.arc_between(vertices[i], vertices[(i + 1) % vertices.size()]));
    }
    return c;
}

PseudoOrbit pso(const CirculantGraph &g, std::initializer_list<std::vector<Vertex>> orbits)
{
    std::vector<PeriodicOrbit> members;
    for (const auto &o : orbits) {
        members.push_back(make_orbit(g, o));
    }
    return PseudoOrbit::from_orbits(members);
}

} // namespace

TEST(Circuits, MatchBruteForceWords)
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        const auto g = oracle::random_graph(rng, 4, 9);
        const int l = std::uniform_int_distribution<int>(1, 10)(rng);
        const Vertex origin = std::uniform_int_distribution<int>(0, g.n() - 1)(rng);
        std::set<std::vector<Vertex>> found;
        for (const auto &c : enumerate_circuits(g, l, origin)) {
            EXPECT_EQ(c.origin(), origin);
            EXPECT_EQ(c.length(), static_cast<std::size_t>(l));
            EXPECT_TRUE(found.insert(c.vertices).second) << "duplicate circuit";
        }
        const auto expected = oracle::closed_walks(g, l, origin);
        EXPECT_EQ(found, std::set<std::vector<Vertex>>(expected.begin(), expected.end())) << g.name() << " l=" << l;
    }
}

TEST(Circuits, Examples)
{
    const auto g5 = make_graph(5, 1, 2);
    int walk_sum_five = 0;
    for (const auto &c : enumerate_circuits(g5, 5, 0)) {
        walk_sum_five += walk_sum(c.arcs) == 5 ? 1 : 0;
    }
    EXPECT_EQ(walk_sum_five, 1);

    EXPECT_TRUE(enumerate_circuits(make_graph(7, 1, 2), 1, 3).empty());

    const auto c = enumerate_circuits(make_graph(5, 1, 3), 4, 0);
    EXPECT_EQ(c.size(), 4u);
    for (const auto &x : c) {
        const auto s = walk_sum(x.arcs);
        EXPECT_TRUE(s == 5 || s == 10) << s;
    }
    EXPECT_THROW(enumerate_circuits(g5, 0, 0), PreconditionError);
}

TEST(Primitive, Examples)
{
    const auto g6 = make_graph(6, 1, 2);
    EXPECT_FALSE(is_primitive(circuit_from_vertices(g6, {0, 2, 4, 0, 2, 4})));
    const auto g8 = make_graph(8, 1, 3);
    EXPECT_FALSE(is_primitive(circuit_from_vertices(g8, {0, 3, 4, 7, 0, 3, 4, 7})));
    // arcs 3,1,3,1 repeat with period 2 but the circuit does not
    EXPECT_TRUE(is_primitive(circuit_from_vertices(g8, {0, 3, 4, 7})));
}

TEST(Primitive, PrimeLengthsWithTwoArcValues)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = oracle::random_graph(rng, 4, 9);
        for (const int l : {2, 3, 5, 7}) {
            for (const auto &c : enumerate_circuits(g, l, 0)) {
                const bool mixed = std::adjacent_find(c.arcs.begin(), c.arcs.end(), std::not_equal_to<>())
                                   != c.arcs.end();
                if (mixed) {
                    EXPECT_TRUE(is_primitive(c));
                }
            }
        }
    }
}

TEST(Canonical, RotationInvariant)
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = oracle::random_graph(rng, 4, 9);
        for (const auto &c : enumerate_circuits(g, 6, 0)) {
            const auto orbit = PeriodicOrbit::from_circuit(c);
            for (std::size_t r = 1; r < c.length(); ++r) {
                auto rotated = c.vertices;
                std::rotate(rotated.begin(), rotated.begin() + static_cast<std::ptrdiff_t>(r), rotated.end());
                EXPECT_EQ(make_orbit(g, rotated), orbit);
            }
            EXPECT_EQ(orbit.canonical, *oracle::rotations(c.vertices).begin());
        }
    }
}

TEST(PrimitiveOrbits, Examples)
{
    EXPECT_EQ(enumerate_primitive_pos(make_graph(7, 1, 2), 4).size(), 7u);
    EXPECT_EQ(enumerate_primitive_pos(make_graph(6, 1, 3), 3).size(), 0u);
    EXPECT_EQ(enumerate_primitive_pos(make_graph(9, 1, 4), 6).size(), 27u);
}

TEST(PrimitiveOrbits, MatchOracleAndHaveDistinctRotations)
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        const auto g = oracle::random_graph(rng, 4, 9);
        const int l = std::uniform_int_distribution<int>(2, 10)(rng);
        const auto orbits = enumerate_primitive_pos(g, l);
        std::set<std::vector<Vertex>> got;
        for (const auto &o : orbits) {
            got.insert(o.canonical);
            EXPECT_EQ(oracle::rotations(o.canonical).size(), o.length());
        }
        EXPECT_EQ(got, oracle::primitive_orbits(g, l)) << g.name() << " l=" << l;
        EXPECT_TRUE(std::is_sorted(orbits.begin(), orbits.end()));
    }
}

TEST(PrimitiveOrbits, WalkSumWindow)
{
    for (int n = 4; n <= 9; ++n) {
        for (int a1 = 1; a1 < n; ++a1) {
            for (int a2 = a1 + 1; a2 < n; ++a2) {
                const auto g = make_graph(n, a1, a2);
                for (int l = 2; l <= 8; ++l) {
                    for (const auto &o : enumerate_primitive_pos(g, l)) {
                        ASSERT_EQ(o.walk_sum % n, 0);
                        const auto m = o.walk_sum / n;
                        EXPECT_GE(m, ceil_div(a1 * l, n));
                        EXPECT_LE(m, floor_div(a2 * l, n));
                    }
                }
            }
        }
    }
}

TEST(TraceOracle, Examples)
{
    EXPECT_EQ(trace_po_oracle(make_graph(7, 1, 2), 7), 2);
    EXPECT_EQ(trace_po_oracle(make_graph(10, 1, 3), 10), 254);
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        EXPECT_EQ(trace_po_oracle(oracle::random_graph(rng, 3, 30), 1), 0);
    }
    EXPECT_THROW(trace_po_oracle(make_graph(7, 1, 2), 0), PreconditionError);
}

TEST(TraceOracle, MatchesEnumerationForSmallGraphs)
{
    for (int n = 3; n <= 10; ++n) {
        for (int a1 = 1; a1 < n; ++a1) {
            for (int a2 = a1 + 1; a2 < n; ++a2) {
                const auto g = make_graph(n, a1, a2);
                const auto table = trace_po_table(g, 10);
                for (int l = 2; l <= 10; ++l) {
                    EXPECT_EQ(table[static_cast<std::size_t>(l)], enumerate_primitive_pos(g, l).size())
                        << g.name() << " l=" << l;
                }
            }
        }
    }
}

TEST(TraceOracle, TraceOfPowerMatchesWalkCount)
{
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = oracle::random_graph(rng, 4, 9);
        auto a = adjacency_matrix(g).cast<BigInt>();
        auto power = a;
        for (int l = 1; l <= 9; ++l) {
            EXPECT_EQ(power.trace(), oracle::trace_of_power(g, l));
            power = power * a;
        }
    }
}

TEST(PseudoOrbits, Examples)
{
    EXPECT_EQ(enumerate_primitive_psos(make_graph(6, 1, 2), 6).size(), 2u);
    EXPECT_EQ(enumerate_primitive_psos(make_graph(6, 1, 3), 6).size(), 40u);
    const auto null = enumerate_primitive_psos(make_graph(9, 2, 5), 0);
    ASSERT_EQ(null.size(), 1u);
    EXPECT_TRUE(null.front().orbits.empty());
    EXPECT_EQ(null.front().length(), 0u);
    EXPECT_EQ(to_string(null.front(), 9), "()");
}

TEST(PseudoOrbits, CapAtNUnlessLifted)
{
    const auto g = make_graph(5, 1, 3);
    EXPECT_THROW(enumerate_primitive_psos(g, 6), PreconditionError);
    EXPECT_NO_THROW(enumerate_primitive_psos(g, 6, PsoOptions{true}));
}

TEST(PseudoOrbits, MembersDistinctPrimitiveAndLengthsAddUp)
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = oracle::random_graph(rng, 4, 9);
        const int l = std::uniform_int_distribution<int>(0, g.n())(rng);
        const auto all = enumerate_primitive_psos(g, l);
        EXPECT_TRUE(std::adjacent_find(all.begin(), all.end()) == all.end());
        for (const auto &p : all) {
            EXPECT_EQ(p.length(), static_cast<std::size_t>(l));
            for (std::size_t i = 0; i < p.orbits.size(); ++i) {
                EXPECT_EQ(oracle::rotations(p.orbits[i].canonical).size(), p.orbits[i].length());
                if (i > 0) {
                    EXPECT_LT(p.orbits[i - 1], p.orbits[i]);
                }
            }
        }
    }
}

TEST(PseudoOrbits, DuplicateMembersRejected)
{
    const auto g = make_graph(7, 1, 3);
    EXPECT_THROW(pso(g, {{0, 1, 4}, {1, 4, 0}}), PreconditionError);
}

TEST(PseudoOrbits, PrintedLikeTheListings)
{
    const auto g = make_graph(6, 1, 3);
    EXPECT_EQ(to_string(pso(g, {{1, 2, 5, 0}, {0, 3}}), 6), "(03, 0125)");
    const auto big = make_graph(12, 1, 3);
    EXPECT_EQ(to_string(make_orbit(big, std::vector<Vertex>{0, 3, 6, 9}), 12), "0.3.6.9");
}

TEST(Classify, Examples)
{
    const auto g = make_graph(7, 1, 3);
    EXPECT_EQ(classify(pso(g, {{0, 1, 4}, {2, 3, 6}})).kind, EncounterProfile::Kind::no_self_intersection);
    const auto one = classify(pso(g, {{0, 1, 2, 5, 1, 4}}));
    EXPECT_EQ(one.kind, EncounterProfile::Kind::two_encounters_length_zero);
    EXPECT_EQ(one.encounters, 1);
    EXPECT_EQ(one.class_name(), "enc2_0_N1");
    EXPECT_EQ(classify(pso(g, {{0, 1, 4}, {0, 3, 4}})).kind, EncounterProfile::Kind::other);
    EXPECT_EQ(classify(PseudoOrbit{}).class_name(), "none");
}

TEST(Classify, MultiplicityDefinition)
{
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = oracle::random_graph(rng, 4, 9);
        const int l = std::uniform_int_distribution<int>(1, g.n())(rng);
        for (const auto &p : enumerate_primitive_psos(g, l)) {
            std::map<Vertex, int> seen;
            std::set<Bond> bonds;
            bool bond_repeat = false;
            for (const auto &b : pseudo_orbit_bonds(g, p)) {
                ++seen[b.origin];
                bond_repeat = !bonds.insert(b).second || bond_repeat;
            }
            int twice = 0;
            int most = 0;
            for (const auto &[v, c] : seen) {
                twice += c == 2;
                most = std::max(most, c);
            }
            const auto profile = classify(p);
            if (most <= 1) {
                EXPECT_EQ(profile.kind, EncounterProfile::Kind::no_self_intersection);
            } else if (most == 2 && !bond_repeat) {
                EXPECT_EQ(profile.kind, EncounterProfile::Kind::two_encounters_length_zero);
                EXPECT_EQ(profile.encounters, twice);
            } else {
                EXPECT_EQ(profile.kind, EncounterProfile::Kind::other);
            }
        }
    }
}

// Every listed pseudo orbit is enumerated and lands in the listed class, and
// the listing covers the whole enumeration.
TEST(MemberListing, MembersMatchEnumeration)
{
    const auto members = parse_member_records(embedded::class_members);
    ASSERT_FALSE(members.empty());
    std::map<std::pair<int, int>, std::set<std::pair<std::string, std::string>>> listed;
    for (const auto &m : members) {
        const auto g = make_graph(m.n, 1, 3);
        std::vector<PeriodicOrbit> orbits;
        for (const auto &o : m.orbits) {
            std::vector<Vertex> vertices;
            for (const char c : o) {
                vertices.push_back(c - '0');
            }
            orbits.push_back(make_orbit(g, vertices));
        }
        const auto p = PseudoOrbit::from_orbits(orbits);
        EXPECT_EQ(p.length(), static_cast<std::size_t>(m.l));
        const auto key = std::make_pair(m.n, m.l);
        EXPECT_TRUE(listed[key].insert({m.cls, to_string(p, m.n)}).second) << "duplicate listing";
    }
    const auto counts = parse_count_records(embedded::class_counts_csv);
    std::set<std::pair<int, int>> cells;
    for (const auto &r : counts) {
        cells.insert({r.n, r.l});
    }
    for (const auto &[n, l] : cells) {
        const auto g = make_graph(n, 1, 3);
        std::set<std::pair<std::string, std::string>> enumerated;
        for (const auto &p : enumerate_primitive_psos(g, l)) {
            enumerated.insert({classify(p).class_name(), to_string(p, n)});
        }
        EXPECT_EQ(enumerated, listed[std::make_pair(n, l)]) << "n=" << n << " l=" << l;
    }
}
