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

#include <cmath>

#include "core/error.hpp"
#include "core/metrics.hpp"
#include "support/oracles.hpp"

using namespace glass;

namespace {

std::map<NodeId, Label> labelled(std::initializer_list<std::pair<const char*, const char*>> xs) {
    std::map<NodeId, Label> out;
    for (const auto& [k, v] : xs) out[k] = v;
    return out;
}

}  // namespace

TEST_CASE("confusion counts") {
    const auto truth = labelled({{"a", "P"}, {"b", "P"}, {"c", "N"}, {"d", "N"}});
    SUBCASE("perfect estimates") {
        const ConfusionMatrix cm = confusion_matrix(truth, truth, "P");
        CHECK(cm.tp == 2);
        CHECK(cm.tn == 2);
        CHECK(cm.fp == 0);
        CHECK(cm.fn == 0);
        CHECK(f1_score(cm) == doctest::Approx(1.0));
    }
    SUBCASE("all flipped") {
        const auto est = labelled({{"a", "N"}, {"b", "N"}, {"c", "P"}, {"d", "P"}});
        const ConfusionMatrix cm = confusion_matrix(est, truth, "P");
        CHECK(cm.tp == 0);
        CHECK(cm.tn == 0);
        CHECK(cm.fp == 2);
        CHECK(cm.fn == 2);
        CHECK(f1_score(cm) == doctest::Approx(0.0));
    }
    SUBCASE("ten-node fixture") {
        std::map<NodeId, Label> t, e;
        // 4 true positives in truth: n0..n3; estimates hit 3, miss 1, and
        // one negative is dragged in
        for (int i = 0; i < 10; ++i) t["n" + std::to_string(i)] = i < 4 ? "P" : "N";
        for (int i = 0; i < 10; ++i) e["n" + std::to_string(i)] = "N";
        e["n0"] = e["n1"] = e["n2"] = "P";
        e["n5"] = "P";
        const ConfusionMatrix cm = confusion_matrix(e, t, "P");
        CHECK(cm.tp == 3);
        CHECK(cm.fp == 1);
        CHECK(cm.fn == 1);
        CHECK(cm.tn == 5);
        CHECK(cm.total() == 10);
        CHECK(f1_score(cm) == doctest::Approx(0.75));
    }
    SUBCASE("node set mismatch") {
        const auto est = labelled({{"a", "P"}});
        CHECK_THROWS_AS(confusion_matrix(est, truth, "P"), Error);
    }
}

TEST_CASE("F1 is undefined with no positives anywhere") {
    ConfusionMatrix cm;
    cm.tn = 10;
    CHECK_THROWS_AS(f1_score(cm), Error);
}

TEST_CASE("F1 is invariant under node order") {
    std::map<NodeId, Label> t, e;
    std::mt19937_64 gen(5);
    for (int i = 0; i < 30; ++i) {
        t["z" + std::to_string(i)] = oracle::uniform(gen) < 0.5 ? "P" : "N";
        e["z" + std::to_string(i)] = oracle::uniform(gen) < 0.5 ? "P" : "N";
    }
    // maps iterate in key order regardless of insertion; rebuild reversed
    std::map<NodeId, Label> t2(t.rbegin(), t.rend()), e2(e.rbegin(), e.rend());
    CHECK(f1_score(confusion_matrix(e, t, "P")) ==
          doctest::Approx(f1_score(confusion_matrix(e2, t2, "P"))));
}

TEST_CASE("standardisation against the hand-computed fixture") {
    const std::vector<double> probs{0.8, 0.9, 1.0, 0.0, 0.1, 0.2};
    const std::vector<bool> group1{true, true, true, false, false, false};
    const std::vector<double> z = standardise_probs(probs, group1);
    const std::vector<double> ref = oracle::standardise_ref(probs, group1);
    for (std::size_t i = 0; i < z.size(); ++i)
        CHECK(z[i] == doctest::Approx(ref[i]).epsilon(1e-12));
    // grand mean 0.5, pooled sd 0.1: z = (3,4,5,-5,-4,-3)
    CHECK(z[0] == doctest::Approx(3.0));
    CHECK(z[2] == doctest::Approx(5.0));
    CHECK(z[3] == doctest::Approx(-5.0));

    const double gap = separation_gap(z, group1);
    CHECK(gap == doctest::Approx(z[0] - z[5]));
    CHECK(gap == doctest::Approx(6.0));
}

TEST_CASE("standardised values keep overall mean zero") {
    std::mt19937_64 gen(17);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> probs;
        std::vector<bool> group1;
        const int n = 8 + rep;
        for (int i = 0; i < n; ++i) {
            probs.push_back(oracle::uniform(gen));
            group1.push_back(i % 2 == 0);
        }
        const std::vector<double> z = standardise_probs(probs, group1);
        double sum = 0.0;
        for (double v : z) sum += v;
        CHECK(std::abs(sum / n) <= 1e-12);
    }
}

TEST_CASE("standardisation degenerate inputs") {
    SUBCASE("zero variance in both groups") {
        CHECK_THROWS_AS(
            standardise_probs({1.0, 1.0, 0.0, 0.0}, {true, true, false, false}), Error);
    }
    SUBCASE("tiny groups") {
        CHECK_THROWS_AS(standardise_probs({1.0, 0.4, 0.2}, {true, false, false}), Error);
    }
    SUBCASE("symmetric probabilities give symmetric z") {
        const std::vector<double> probs{0.9, 0.7, 0.3, 0.1};
        const std::vector<bool> g1{true, true, false, false};
        const std::vector<double> z = standardise_probs(probs, g1);
        CHECK(z[0] == doctest::Approx(-z[3]));
        CHECK(z[1] == doctest::Approx(-z[2]));
    }
}

TEST_CASE("gap sign tracks overlap") {
    SUBCASE("disjoint supports give a positive gap") {
        const std::vector<double> z =
            standardise_probs({0.9, 0.8, 0.7, 0.3, 0.2, 0.1},
                              {true, true, true, false, false, false});
        CHECK(separation_gap(z, {true, true, true, false, false, false}) > 0.0);
    }
    SUBCASE("identical value sets force overlap") {
        const std::vector<double> probs{0.2, 0.5, 0.8, 0.2, 0.5, 0.8};
        const std::vector<bool> g1{true, true, true, false, false, false};
        const std::vector<double> z = standardise_probs(probs, g1);
        CHECK(separation_gap(z, g1) < 0.0);
    }
    SUBCASE("one empty group is an error") {
        CHECK_THROWS_AS(separation_gap({1.0, 2.0}, {true, true}), Error);
    }
}
