/*
 * Copyright 2026 The glass authors
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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <iterator>

#include "core/chain.hpp"
#include "core/error.hpp"
#include "support/oracles.hpp"

using namespace glass;

namespace {

/// L1 - u1 - ... - u_{n_segments-1} - L2 with unit weights.
WeightedGraph unit_path(int n_segments) {
    std::vector<Edge> edges;
    auto name = [n_segments](int i) {
        if (i == 0) return std::string("A_left");
        if (i == n_segments) return std::string("Z_right");
        return "u" + std::to_string(i);
    };
    for (int i = 0; i < n_segments; ++i) edges.push_back({name(i), name(i + 1), 1.0});
    return WeightedGraph::build(edges, {{"A_left", "K1"}, {"Z_right", "K2"}});
}

std::size_t transient_pos(const AbsorbingChain& chain, const NodeId& id) {
    for (std::size_t i = 0; i < chain.transient_ids.size(); ++i)
        if (chain.transient_ids[i] == id) return i;
    REQUIRE(false);
    return 0;
}

std::size_t absorbing_pos(const AbsorbingChain& chain, const NodeId& id) {
    for (std::size_t i = 0; i < chain.absorbing_ids.size(); ++i)
        if (chain.absorbing_ids[i] == id) return i;
    REQUIRE(false);
    return 0;
}

}  // namespace

TEST_CASE("triangle rows normalise by weighted degree") {
    const WeightedGraph g = WeightedGraph::build(
        {{"u1", "L1", 1.0}, {"u1", "u2", 1.0}, {"u2", "L1", 1.0}}, {{"L1", "K1"}});
    const AbsorbingChain chain = to_absorbing_chain(g);
    const std::size_t u1 = transient_pos(chain, "u1");
    const std::size_t u2 = transient_pos(chain, "u2");
    const std::size_t l1 = absorbing_pos(chain, "L1");
    CHECK(chain.p_uu(u1, u2) == doctest::Approx(0.5));
    CHECK(chain.p_ul(u1, l1) == doctest::Approx(0.5));
    CHECK(chain.p_uu(u1, u1) == 0.0);
}

TEST_CASE("unequal weights split proportionally") {
    const WeightedGraph g =
        WeightedGraph::build({{"u1", "L1", 3.0}, {"u1", "u2", 1.0}, {"u2", "L1", 1.0}},
                             {{"L1", "K1"}});
    const AbsorbingChain chain = to_absorbing_chain(g);
    CHECK(chain.p_ul(transient_pos(chain, "u1"), absorbing_pos(chain, "L1")) ==
          doctest::Approx(0.75));
}

TEST_CASE("global weight scaling leaves the chain unchanged") {
    const WeightedGraph base = oracle::random_connected_graph({12, 2, 5, 0.3, true});
    std::vector<Edge> scaled_edges;
    for (std::size_t i = 0; i < base.node_count(); ++i)
        for (const auto& [j, w] : base.neighbours(i))
            if (j > i) scaled_edges.push_back({base.node(i), base.node(j), 7.0 * w});
    std::vector<std::pair<NodeId, Label>> labels;
    for (std::size_t i = 0; i < base.node_count(); ++i)
        if (const Label* l = base.label_of(i)) labels.push_back({base.node(i), *l});
    const WeightedGraph scaled = WeightedGraph::build(scaled_edges, labels);

    const AbsorbingChain c1 = to_absorbing_chain(base);
    const AbsorbingChain c2 = to_absorbing_chain(scaled);
    CHECK(Matrix::max_abs_diff(c1.p_uu, c2.p_uu) < 1e-14);
    CHECK(Matrix::max_abs_diff(c1.p_ul, c2.p_ul) < 1e-14);
}

TEST_CASE("construction preconditions") {
    SUBCASE("no labelled nodes") {
        const WeightedGraph g = WeightedGraph::build({{"a", "b", 1.0}}, {});
        CHECK_THROWS_AS(to_absorbing_chain(g), Error);
    }
    SUBCASE("stranded node present") {
        const WeightedGraph g = WeightedGraph::build(
            {{"L", "u", 1.0}, {"v", "w", 1.0}}, {{"L", "K1"}});
        CHECK_THROWS_AS(to_absorbing_chain(g), Error);
    }
    SUBCASE("isolated unlabelled node has zero degree") {
        const WeightedGraph g =
            WeightedGraph::build({{"L", "u", 1.0}}, {{"L", "K1"}}, {"iso"});
        CHECK_THROWS_AS(to_absorbing_chain(g), Error);
    }
}

TEST_CASE("rows of [p_uu p_ul] sum to one") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const WeightedGraph g = oracle::random_connected_graph(
            {6 + static_cast<int>(seed % 14), 1 + static_cast<int>(seed % 4), seed, 0.25, true});
        const AbsorbingChain chain = to_absorbing_chain(g);
        for (std::size_t i = 0; i < chain.transient_count(); ++i) {
            double sum = 0.0;
            for (std::size_t j = 0; j < chain.transient_count(); ++j) sum += chain.p_uu(i, j);
            for (std::size_t j = 0; j < chain.absorbing_count(); ++j) sum += chain.p_ul(i, j);
            CHECK(std::abs(sum - 1.0) <= kRowSumTol);
        }
    }
}

TEST_CASE("gambler's ruin closed form on the unit path") {
    const WeightedGraph g = unit_path(3);
    const AbsorbingChain chain = to_absorbing_chain(g);
    const AbsorptionResult res = solve_absorption(chain);
    const std::size_t left = absorbing_pos(chain, "A_left");
    const std::size_t u1 = transient_pos(chain, "u1");
    const std::size_t u2 = transient_pos(chain, "u2");
    CHECK(res.h(u1, left) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(res.h(u2, left) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(res.t[u1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(res.t[u2] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(res.residual_h <= kResidualTol);
    CHECK(res.residual_t <= kResidualTol);
}

TEST_CASE("single transient node is absorbed in one step") {
    SUBCASE("equal pull") {
        const WeightedGraph g = WeightedGraph::build(
            {{"u", "L1", 1.0}, {"u", "L2", 1.0}}, {{"L1", "K1"}, {"L2", "K2"}});
        const AbsorbingChain chain = to_absorbing_chain(g);
        const AbsorptionResult res = solve_absorption(chain);
        CHECK(res.t[0] == doctest::Approx(1.0));
        CHECK(res.h(0, 0) == doctest::Approx(0.5));
        CHECK(res.h(0, 1) == doctest::Approx(0.5));
    }
    SUBCASE("weighted pull") {
        const WeightedGraph g = WeightedGraph::build(
            {{"u", "L1", 1.0}, {"u", "L2", 3.0}}, {{"L1", "K1"}, {"L2", "K2"}});
        const AbsorbingChain chain = to_absorbing_chain(g);
        const ProbabilityResult res = absorption_probabilities(chain);
        CHECK(res.h(0, absorbing_pos(chain, "L1")) == doctest::Approx(0.25));
        CHECK(res.h(0, absorbing_pos(chain, "L2")) == doctest::Approx(0.75));
    }
}

TEST_CASE("expected time grows with distance along a path") {
    const int segments = 9;
    std::vector<Edge> edges;
    // one absorbing end only: L - u1 - u2 - ... - u8, reflecting tail
    edges.push_back({"L", "u1", 1.0});
    for (int i = 1; i < segments - 1; ++i)
        edges.push_back({"u" + std::to_string(i), "u" + std::to_string(i + 1), 1.0});
    const WeightedGraph g = WeightedGraph::build(edges, {{"L", "K1"}});
    const AbsorbingChain chain = to_absorbing_chain(g);
    const TimeResult res = expected_absorption_times(chain);

    // brute-force solve of the same tridiagonal system by the oracle
    const oracle::DenseAbsorption ref = oracle::absorption_by_oracle(g);
    for (std::size_t i = 0; i < chain.transient_count(); ++i) {
        const std::size_t ri = std::distance(
            ref.transient.begin(),
            std::find(ref.transient.begin(), ref.transient.end(), chain.transient_ids[i]));
        CHECK(res.t[i] == doctest::Approx(ref.t[ri]).epsilon(1e-10));
    }
    double prev = 0.0;
    for (int i = 1; i < segments; ++i) {
        const double t = res.t[transient_pos(chain, "u" + std::to_string(i))];
        CHECK(t > prev);
        prev = t;
    }
}

TEST_CASE("exact solves match the dense oracle on random graphs") {
    for (std::uint64_t seed = 100; seed < 106; ++seed) {
        const WeightedGraph g = oracle::random_connected_graph(
            {10 + static_cast<int>(seed % 8), 2, seed, 0.3, true});
        const AbsorbingChain chain = to_absorbing_chain(g);
        const AbsorptionResult res = solve_absorption(chain);
        const oracle::DenseAbsorption ref = oracle::absorption_by_oracle(g);
        REQUIRE(ref.transient == chain.transient_ids);
        REQUIRE(ref.absorbing == chain.absorbing_ids);
        for (std::size_t i = 0; i < chain.transient_count(); ++i) {
            CHECK(res.t[i] == doctest::Approx(ref.t[i]).epsilon(1e-9));
            double row = 0.0;
            for (std::size_t j = 0; j < chain.absorbing_count(); ++j) {
                CHECK(res.h(i, j) == doctest::Approx(ref.h[i][j]).epsilon(1e-9));
                CHECK(res.h(i, j) >= 0.0);
                CHECK(res.h(i, j) <= 1.0);
                row += res.h(i, j);
            }
            CHECK(std::abs(row - 1.0) <= kProbRowSumTol);
            CHECK(res.t[i] >= 1.0 - 1e-9);
        }
    }
}

TEST_CASE("transition blocks serialise with headers and exact rows") {
    const WeightedGraph g = WeightedGraph::build(
        {{"u1", "L1", 1.0}, {"u1", "u2", 1.0}, {"u2", "L1", 1.0}}, {{"L1", "K1"}});
    const AbsorbingChain chain = to_absorbing_chain(g);
    const std::string uu = chain_block_csv(chain, true);
    const std::string ul = chain_block_csv(chain, false);
    CHECK(uu == "state,u1,u2\nu1,0,0.5\nu2,0.5,0\n");
    CHECK(ul == "state,L1\nu1,0.5\nu2,0.5\n");
}

TEST_CASE("deterministic chain absorbs immediately") {
    const WeightedGraph g = WeightedGraph::build({{"u", "L1", 5.0}}, {{"L1", "K1"}});
    const AbsorbingChain chain = to_absorbing_chain(g);
    const WalkOutcome out = simulate_walk(chain, "u", 123, 10);
    REQUIRE(out.absorbed_at.has_value());
    CHECK(*out.absorbed_at == "L1");
    CHECK(out.steps == 1);
}

TEST_CASE("walk rejects bad arguments") {
    const WeightedGraph g = WeightedGraph::build({{"u", "L1", 1.0}}, {{"L1", "K1"}});
    const AbsorbingChain chain = to_absorbing_chain(g);
    CHECK_THROWS_AS(simulate_walk(chain, "u", 1, 0), Error);
    CHECK_THROWS_AS(simulate_walk(chain, "L1", 1, 10), Error);
    CHECK_THROWS_AS(simulate_walk(chain, "nope", 1, 10), Error);
}

TEST_CASE("walks are deterministic for a fixed seed") {
    const WeightedGraph g = unit_path(4);
    const AbsorbingChain chain = to_absorbing_chain(g);
    const WalkOutcome a = simulate_walk(chain, "u2", 777, 100000);
    const WalkOutcome b = simulate_walk(chain, "u2", 777, 100000);
    CHECK(a.absorbed_at == b.absorbed_at);
    CHECK(a.steps == b.steps);
}

TEST_CASE("Monte Carlo frequencies straddle the exact probabilities") {
    const WeightedGraph g = unit_path(3);
    const AbsorbingChain chain = to_absorbing_chain(g);
    const int walks = 20000;
    int left = 0;
    long long steps = 0;
    for (int k = 0; k < walks; ++k) {
        const WalkOutcome out = simulate_walk(chain, "u1", 9000 + k, 1 << 20);
        REQUIRE(out.absorbed_at.has_value());
        if (*out.absorbed_at == "A_left") ++left;
        steps += out.steps;
    }
    const double p = 2.0 / 3.0;
    const double freq = static_cast<double>(left) / walks;
    const double se = std::sqrt(p * (1.0 - p) / walks);
    CHECK(std::abs(freq - p) <= 3.0 * se);
    const double mean_steps = static_cast<double>(steps) / walks;
    CHECK(std::abs(mean_steps - 2.0) <= 0.1);
}

TEST_CASE("timeout is a value, not an error") {
    const WeightedGraph g = unit_path(8);
    const AbsorbingChain chain = to_absorbing_chain(g);
    const WalkOutcome out = simulate_walk(chain, "u4", 5, 1);
    CHECK(!out.absorbed_at.has_value());
    CHECK(out.steps == 1);
}
