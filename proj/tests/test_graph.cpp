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


#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include <circorbits/graph.hpp>

#include "oracles.hpp"

using namespace circorbits;

TEST(MakeGraph, AcceptsValidGraphs)
{
    const auto g = make_graph(7, 1, 2);
    EXPECT_EQ(g.n(), 7);
    EXPECT_EQ(g.a1(), 1);
    EXPECT_EQ(g.a2(), 2);
    EXPECT_EQ(g.gap(), 1);
    EXPECT_EQ(g.bond_count(), 14u);
    EXPECT_EQ(g.name(), "C_7^+(1,2)");
    EXPECT_NO_THROW(make_graph(6, 2, 4));
    EXPECT_NO_THROW(make_graph(3, 1, 2));
}

TEST(MakeGraph, RejectsInvalidGraphs)
{
    EXPECT_THROW(make_graph(5, 1, 6), TooSmallError);
    EXPECT_THROW(make_graph(5, 1, 5), LoopError);
    EXPECT_THROW(make_graph(5, 0, 2), LoopError);
    EXPECT_THROW(make_graph(5, 2, 2), MultiEdgeError);
    EXPECT_THROW(make_graph(5, 3, 2), GraphError);
    EXPECT_THROW(make_graph(5, -1, 2), GraphError);
    EXPECT_THROW(make_graph(0, 1, 2), GraphError);
    EXPECT_THROW(make_graph(4, 1, 4), LoopError);
}

TEST(Bonds, TerminalAndIndex)
{
    const auto g = make_graph(7, 1, 2);
    EXPECT_EQ(g.terminal(Bond{5, 2}), 0);
    EXPECT_EQ(g.terminal(Bond{6, 1}), 0);
    EXPECT_EQ(g.bond_index(Bond{3, 1}), 6u);
    EXPECT_EQ(g.bond_index(Bond{3, 2}), 7u);
    for (std::size_t i = 0; i < g.bond_count(); ++i) {
        EXPECT_EQ(g.bond_index(g.bond_at(i)), i);
    }
    EXPECT_THROW(g.bond(0, 3), PreconditionError);
    EXPECT_THROW(g.bond(7, 1), PreconditionError);
    EXPECT_EQ(g.arc_between(5, 0), 2);
    EXPECT_FALSE(g.arc_between(0, 5).has_value());
}

TEST(Adjacency, SevenVertexFirstFamily)
{
    const auto a = adjacency_matrix(make_graph(7, 1, 2));
    for (std::size_t i = 0; i < 7; ++i) {
        for (std::size_t j = 0; j < 7; ++j) {
            const int expected = (j == (i + 1) % 7 || j == (i + 2) % 7) ? 1 : 0;
            EXPECT_EQ(a(i, j), expected) << i << "," << j;
        }
    }
}

TEST(Adjacency, FourVertexRowZero)
{
    const auto a = adjacency_matrix(make_graph(4, 1, 2));
    EXPECT_EQ(a(0, 0), 0);
    EXPECT_EQ(a(0, 1), 1);
    EXPECT_EQ(a(0, 2), 1);
    EXPECT_EQ(a(0, 3), 0);
}

TEST(Adjacency, CirculantWithDegreeTwoEverywhere)
{
    for (int n = 3; n <= 14; ++n) {
        for (int a1 = 1; a1 < n; ++a1) {
            for (int a2 = a1 + 1; a2 < n; ++a2) {
                const auto a = adjacency_matrix(make_graph(n, a1, a2));
                EXPECT_TRUE(is_circulant(a));
                for (std::size_t i = 0; i < a.size(); ++i) {
                    int row = 0;
                    int col = 0;
                    for (std::size_t j = 0; j < a.size(); ++j) {
                        row += a(i, j);
                        col += a(j, i);
                    }
                    EXPECT_EQ(row, 2);
                    EXPECT_EQ(col, 2);
                }
            }
        }
    }
}

TEST(Connectivity, Examples)
{
    EXPECT_FALSE(is_connected(make_graph(6, 2, 4)));
    EXPECT_TRUE(is_connected(make_graph(7, 1, 2)));
    EXPECT_FALSE(is_connected(make_graph(10, 2, 4)));
}

TEST(Connectivity, AgreesWithGcd)
{
    for (int n = 4; n <= 14; ++n) {
        for (int a1 = 1; a1 < n; ++a1) {
            for (int a2 = a1 + 1; a2 < n; ++a2) {
                const bool gcd_test = std::gcd(std::gcd(a1, a2), n) == 1;
                EXPECT_EQ(is_connected(make_graph(n, a1, a2)), gcd_test) << n << "," << a1 << "," << a2;
            }
        }
    }
}

TEST(Passing, Examples)
{
    const auto g7 = make_graph(7, 1, 2);
    EXPECT_TRUE(bond_passes(g7, Bond{5, 2}, 6));
    EXPECT_FALSE(bond_passes(g7, Bond{5, 1}, 6));
    EXPECT_TRUE(bond_passes(g7, Bond{5, 1}, 5));

    const auto g5 = make_graph(5, 1, 3);
    for (const Vertex v : {4, 0, 1}) {
        EXPECT_TRUE(bond_passes(g5, Bond{4, 3}, v)) << v;
    }
    for (const Vertex v : {2, 3}) {
        EXPECT_FALSE(bond_passes(g5, Bond{4, 3}, v)) << v;
    }
}

TEST(Passing, EachBondPassesArcManyVertices)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = oracle::random_graph(rng, 4, 20);
        for (const auto &b : g.bonds()) {
            int passed = 0;
            for (Vertex v = 0; v < g.n(); ++v) {
                passed += bond_passes(g, b, v) ? 1 : 0;
            }
            EXPECT_EQ(passed, b.arc);
        }
    }
}

TEST(WalkSum, Examples)
{
    const std::vector<int> all_twos(7, 2);
    EXPECT_EQ(walk_sum(all_twos), 14);
    EXPECT_EQ(walk_sum(std::vector<int>{}), 0);
    EXPECT_EQ(walk_sum(std::vector<int>{1, 1, 3}), 5);
}
