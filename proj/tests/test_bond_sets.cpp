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

#include <circorbits/orbits.hpp>

#include "oracles.hpp"

using namespace circorbits;

namespace {

// All valid graphs with n <= 9.
std::vector<CirculantGraph> small_graphs()
{
    std::vector<CirculantGraph> out;
    for (int n = 3; n <= 9; ++n) {
        for (int a1 = 1; a1 < n; ++a1) {
            for (int a2 = a1 + 1; a2 < n; ++a2) {
                out.push_back(make_graph(n, a1, a2));
            }
        }
    }
    return out;
}

std::int64_t passing_total(const CirculantGraph &g, const PseudoOrbit &p, Vertex v)
{
    std::int64_t total = 0;
    for (const auto &o : p.orbits) {
        total += passing_count(g, o, v);
    }
    return total;
}

int twice_used_origins(const std::vector<Bond> &bonds)
{
    std::map<Vertex, int> count;
    for (const auto &b : bonds) {
        ++count[b.origin];
    }
    int twice = 0;
    for (const auto &[v, c] : count) {
        twice += c == 2;
    }
    return twice;
}

void expect_bond_set_count(const CirculantGraph &g, const std::vector<Bond> &bonds)
{
    const auto results = pseudo_orbits_from_bonds(g, bonds);
    const int big_n = twice_used_origins(bonds);
    EXPECT_EQ(results.size(), std::size_t{1} << big_n);
    std::multiset<Bond> want(bonds.begin(), bonds.end());
    for (const auto &p : results) {
        const auto used = pseudo_orbit_bonds(g, p);
        EXPECT_EQ(std::multiset<Bond>(used.begin(), used.end()), want);
    }
    const std::set<PseudoOrbit> distinct(results.begin(), results.end());
    EXPECT_EQ(distinct.size(), results.size());
    EXPECT_EQ(distinct, oracle::pseudo_orbits_by_pairings(g, bonds));
}

} // namespace

// Every closed walk has a positive walk sum divisible by n.
TEST(WalkSums, CircuitsAreMultiplesOfN)
{
    for (const auto &g : small_graphs()) {
        for (int l = 1; l <= 8; ++l) {
            for (Vertex origin = 0; origin < g.n(); ++origin) {
                for (const auto &c : enumerate_circuits(g, l, origin)) {
                    const auto s = walk_sum(c.arcs);
                    ASSERT_GT(s, 0);
                    ASSERT_EQ(s % g.n(), 0) << g.name();
                }
            }
        }
    }
}

// A circuit with walk sum m n passes every vertex exactly m times.
TEST(Passing, CircuitsPassEveryVertexMTimes)
{
    for (const auto &g : small_graphs()) {
        for (int l = 2; l <= 8; ++l) {
            for (Vertex origin = 0; origin < g.n(); ++origin) {
                for (const auto &c : enumerate_circuits(g, l, origin)) {
                    const auto m = walk_sum(c.arcs) / g.n();
                    for (Vertex v = 0; v < g.n(); ++v) {
                        std::int64_t passes = 0;
                        for (std::size_t i = 0; i < c.arcs.size(); ++i) {
                            passes += bond_passes(g, Bond{c.vertices[i], c.arcs[i]}, v) ? 1 : 0;
                        }
                        ASSERT_EQ(passes, m) << g.name() << " v=" << v;
                    }
                }
            }
        }
    }
}

TEST(Passing, PseudoOrbitsPassEveryVertexMTimes)
{
    for (const auto &g : small_graphs()) {
        for (int l = 0; l <= std::min(8, g.n()); ++l) {
            for (const auto &p : enumerate_primitive_psos(g, l)) {
                ASSERT_EQ(p.walk_sum() % g.n(), 0);
                const auto m = p.walk_sum() / g.n();
                for (Vertex v = 0; v < g.n(); ++v) {
                    ASSERT_EQ(passing_total(g, p, v), m) << g.name() << " " << to_string(p, g.n());
                }
            }
        }
    }
}

TEST(BondSets, SingleCircuit)
{
    const auto g = make_graph(5, 1, 2);
    const auto orbit = make_orbit(g, std::vector<Vertex>{0, 1, 2, 4});
    const auto result = pseudo_orbits_from_bonds(g, orbit_bonds(g, orbit));
    ASSERT_EQ(result.size(), 1u);
    ASSERT_EQ(result.front().orbits.size(), 1u);
    EXPECT_EQ(result.front().orbits.front(), orbit);
}

TEST(BondSets, EveryBondOfSixVertexSecondFamily)
{
    const auto g = make_graph(6, 1, 3);
    const std::vector<Bond> bonds{{0, 1}, {1, 3}, {4, 1}, {5, 3}, {2, 1}, {3, 3},
                                  {0, 3}, {3, 1}, {4, 3}, {1, 1}, {2, 3}, {5, 1}};
    EXPECT_EQ(pseudo_orbits_from_bonds(g, bonds).size(), 64u);
    expect_bond_set_count(g, bonds);
}

TEST(BondSets, EveryBondOfFiveVertexFirstFamily)
{
    const auto g = make_graph(5, 1, 2);
    expect_bond_set_count(g, g.bonds());
}

TEST(BondSets, Preconditions)
{
    const auto g = make_graph(6, 1, 3);
    EXPECT_THROW(pseudo_orbits_from_bonds(g, std::vector<Bond>{}), PreconditionError);
    EXPECT_THROW(pseudo_orbits_from_bonds(g, std::vector<Bond>{{0, 2}}), PreconditionError);
    // unbalanced: 0 -> 1 -> 4 never returns
    EXPECT_THROW(pseudo_orbits_from_bonds(g, std::vector<Bond>{{0, 1}, {1, 3}}), PreconditionError);
    // a vertex used three times as an origin needs a repeated bond
    EXPECT_THROW(pseudo_orbits_from_bonds(g, std::vector<Bond>{{0, 1}, {0, 3}, {0, 1}, {1, 1}, {3, 3}, {4, 3},
                                                               {1, 3}, {3, 1}, {4, 1}, {5, 1}}),
                 PreconditionError);
}

// Bond sets of every pseudo orbit whose vertices repeat at most twice and
// whose bonds are distinct, on all graphs with n <= 9 and l <= 8.
TEST(BondSets, ExhaustiveOnSmallGraphs)
{
    int sets = 0;
    for (const auto &g : small_graphs()) {
        std::set<std::vector<Bond>> seen;
        for (int l = 1; l <= std::min(8, g.n()); ++l) {
            for (const auto &p : enumerate_primitive_psos(g, l)) {
                if (classify(p).kind == EncounterProfile::Kind::other) {
                    continue;
                }
                auto bonds = pseudo_orbit_bonds(g, p);
                std::sort(bonds.begin(), bonds.end());
                if (!seen.insert(bonds).second) {
                    continue;
                }
                ++sets;
                const auto results = pseudo_orbits_from_bonds(g, bonds);
                ASSERT_EQ(results.size(), std::size_t{1} << twice_used_origins(bonds)) << g.name();
                EXPECT_TRUE(std::find(results.begin(), results.end(), p) != results.end());
            }
        }
    }
    EXPECT_GT(sets, 1000);
}

// Random unions of bond-disjoint orbits, checked against the pairing oracle.
TEST(BondSets, RandomisedAgainstPairingOracle)
{
    std::mt19937_64 rng(31);
    int checked = 0;
    while (checked < 150) {
        const auto g = oracle::random_graph(rng, 4, 12);
        std::vector<PeriodicOrbit> pool;
        for (int l = 2; l <= std::min(g.n(), 7); ++l) {
            const auto orbits = enumerate_primitive_pos(g, l);
            pool.insert(pool.end(), orbits.begin(), orbits.end());
        }
        if (pool.empty()) {
            continue;
        }
        std::set<Bond> bonds;
        std::map<Vertex, int> origins;
        const int picks = std::uniform_int_distribution<int>(1, 4)(rng);
        for (int k = 0; k < picks; ++k) {
            const auto &o = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
            const auto ob = orbit_bonds(g, o);
            bool fits = std::set<Bond>(ob.begin(), ob.end()).size() == ob.size();
            auto trial_origins = origins;
            for (const auto &b : ob) {
                fits = fits && !bonds.contains(b) && ++trial_origins[b.origin] <= 2;
            }
            if (fits) {
                bonds.insert(ob.begin(), ob.end());
                origins = trial_origins;
            }
        }
        if (bonds.empty()) {
            continue;
        }
        expect_bond_set_count(g, std::vector<Bond>(bonds.begin(), bonds.end()));
        ++checked;
    }
}
