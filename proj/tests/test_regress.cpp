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
#include <random>

#include "core/error.hpp"
#include "core/regress.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace glass;

namespace {

/// Alternating factor pattern covering every 2^3 cell.
std::vector<ControlRecord> full_coverage_records(std::size_t n) {
    std::vector<ControlRecord> out;
    for (std::size_t i = 0; i < n; ++i) {
        ControlRecord r;
        r.congress = static_cast<int>(74 + i);
        r.house = (i & 1) ? Party::rep : Party::dem;
        r.senate = (i & 2) ? Party::rep : Party::dem;
        r.president = (i & 4) ? Party::rep : Party::dem;
        out.push_back(r);
    }
    return out;
}

std::vector<double> noise(std::size_t n, std::uint64_t seed, double scale = 1.0) {
    std::mt19937_64 gen(seed);
    std::vector<double> out(n);
    for (auto& v : out) v = scale * oracle::uniform(gen);
    return out;
}

}  // namespace

TEST_CASE("design shapes and coding") {
    const std::vector<ControlRecord> records = full_coverage_records(16);
    const std::vector<double> f1 = noise(16, 3);

    const Design full = build_design(records, f1, Chamber::house,
                                     RegressionModel::full_three_factor);
    CHECK(full.x.cols() == 8);
    CHECK(full.terms.size() == 8);
    CHECK(full.terms[0] == "(Intercept)");
    CHECK(full.terms[7] == "H:S:P");

    const Design agree = build_design(records, f1, Chamber::house,
                                      RegressionModel::agreement_two_factor);
    CHECK(agree.x.cols() == 4);
    CHECK(agree.terms[1] == "senate_differs");

    // hand-checked row: record 3 has H=R, S=R, P=D
    const ControlRecord& r3 = records[3];
    REQUIRE(r3.house == Party::rep);
    REQUIRE(r3.senate == Party::rep);
    REQUIRE(r3.president == Party::dem);
    CHECK(full.x(3, 0) == 1.0);  // intercept
    CHECK(full.x(3, 1) == 1.0);  // H
    CHECK(full.x(3, 2) == 1.0);  // S
    CHECK(full.x(3, 3) == 0.0);  // P
    CHECK(full.x(3, 4) == 1.0);  // H:S
    CHECK(full.x(3, 5) == 0.0);  // H:P
    CHECK(full.x(3, 6) == 0.0);  // S:P
    CHECK(full.x(3, 7) == 0.0);  // H:S:P
    // agreement row for the house: senate same (0), president differs (1)
    CHECK(agree.x(3, 1) == 0.0);
    CHECK(agree.x(3, 2) == 1.0);
    CHECK(agree.x(3, 3) == 0.0);
}

TEST_CASE("a constant factor is rejected by name") {
    std::vector<ControlRecord> records = full_coverage_records(8);
    for (auto& r : records) r.senate = Party::dem;
    const std::vector<double> f1 = noise(8, 4);
    CHECK_THROWS_WITH_AS(
        build_design(records, f1, Chamber::house, RegressionModel::full_three_factor),
        doctest::Contains("senate_majority"), Error);
}

TEST_CASE("exact linear data is recovered exactly") {
    // y = 1 + 2 x: encode x as the H dummy
    std::vector<ControlRecord> records = full_coverage_records(12);
    std::vector<double> y;
    Matrix x(12, 2);
    std::vector<std::string> terms{"(Intercept)", "x"};
    for (std::size_t i = 0; i < 12; ++i) {
        const double xv = records[i].house == Party::rep ? 1.0 : 0.0;
        x(i, 0) = 1.0;
        x(i, 1) = xv;
        y.push_back(1.0 + 2.0 * xv);
    }
    const OlsFit fit = ols_fit(x, y, terms);
    CHECK(fit.terms[0].estimate == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.terms[1].estimate == doctest::Approx(2.0).epsilon(1e-12));
    for (double r : fit.residuals) CHECK(std::abs(r) < 1e-12);
    CHECK(fit.terms[1].p == doctest::Approx(0.0));  // exact fit: zero variance
}

TEST_CASE("constant response gives zero slopes and the mean as intercept") {
    Matrix x(10, 2);
    std::vector<double> y(10, 3.5);
    std::mt19937_64 gen(9);
    for (std::size_t i = 0; i < 10; ++i) {
        x(i, 0) = 1.0;
        x(i, 1) = oracle::uniform(gen);
    }
    const OlsFit fit = ols_fit(x, y, {"(Intercept)", "x"});
    CHECK(fit.terms[0].estimate == doctest::Approx(3.5).epsilon(1e-12));
    CHECK(std::abs(fit.terms[1].estimate) < 1e-12);
}

TEST_CASE("estimates match the normal-equations oracle on a 42x4 problem") {
    Matrix x(42, 4);
    std::mt19937_64 gen(31);
    for (std::size_t i = 0; i < 42; ++i) {
        x(i, 0) = 1.0;
        for (std::size_t j = 1; j < 4; ++j) x(i, j) = oracle::uniform(gen);
    }
    const std::vector<double> y = noise(42, 32);
    const OlsFit fit = ols_fit(x, y, {"(Intercept)", "a", "b", "c"});
    const std::vector<double> ref = oracle::ols_normal_equations(x, y);
    for (std::size_t j = 0; j < 4; ++j)
        CHECK(std::abs(fit.terms[j].estimate - ref[j]) <= 1e-10);
}

TEST_CASE("residuals are orthogonal to every design column") {
    Matrix x(30, 3);
    std::mt19937_64 gen(77);
    for (std::size_t i = 0; i < 30; ++i) {
        x(i, 0) = 1.0;
        x(i, 1) = oracle::uniform(gen);
        x(i, 2) = oracle::uniform(gen) * 3.0 - 1.0;
    }
    const std::vector<double> y = noise(30, 78);
    const OlsFit fit = ols_fit(x, y, {"(Intercept)", "a", "b"});
    for (std::size_t j = 0; j < 3; ++j) {
        double dot = 0.0;
        for (std::size_t i = 0; i < 30; ++i) dot += x(i, j) * fit.residuals[i];
        CHECK(std::abs(dot) <= 1e-9);
    }
}

TEST_CASE("strict fitter rejects collinear designs, fit_model aliases them") {
    Matrix x(10, 3);
    std::mt19937_64 gen(5);
    for (std::size_t i = 0; i < 10; ++i) {
        x(i, 0) = 1.0;
        x(i, 1) = oracle::uniform(gen);
        x(i, 2) = 2.0 * x(i, 1);  // exact duplicate direction
    }
    const std::vector<double> y = noise(10, 6);
    CHECK_THROWS_AS(ols_fit(x, y, {"(Intercept)", "a", "a2"}), Error);

    Design d;
    d.x = x;
    d.response = y;
    d.terms = {"(Intercept)", "a", "a2"};
    const OlsFit fit = fit_model(d);
    REQUIRE(fit.terms.size() == 3);
    CHECK(!fit.terms[1].aliased);
    CHECK(fit.terms[2].aliased);
    CHECK(fit.dropped == std::vector<std::string>{"a2"});
    CHECK(fit.rank == 2);
}

TEST_CASE("empty factorial cells alias interactions instead of failing") {
    // only six of the eight (H,S,P) cells occur, as in the observed
    // control history; the saturated design cannot have full rank
    std::vector<ControlRecord> records;
    auto add = [&records](Party h, Party s, Party p, int reps) {
        for (int i = 0; i < reps; ++i) {
            ControlRecord r;
            r.congress = static_cast<int>(records.size()) + 74;
            r.house = h;
            r.senate = s;
            r.president = p;
            records.push_back(r);
        }
    };
    add(Party::dem, Party::dem, Party::dem, 10);
    add(Party::dem, Party::dem, Party::rep, 10);
    add(Party::dem, Party::rep, Party::rep, 3);
    add(Party::rep, Party::dem, Party::dem, 2);
    add(Party::rep, Party::rep, Party::dem, 5);
    add(Party::rep, Party::rep, Party::rep, 6);

    const std::vector<double> f1 = noise(records.size(), 41, 0.1);
    const Design design =
        build_design(records, f1, Chamber::house, RegressionModel::full_three_factor);
    CHECK_THROWS_AS(ols_fit(design.x, design.response, design.terms), Error);

    const OlsFit fit = fit_model(design);
    CHECK(fit.rank == 6);
    CHECK(fit.dropped.size() == 2);
    std::size_t finite_terms = 0;
    for (const auto& t : fit.terms)
        if (!t.aliased) {
            CHECK(std::isfinite(t.estimate));
            CHECK(std::isfinite(t.p));
            ++finite_terms;
        }
    CHECK(finite_terms == 6);
}

TEST_CASE("significance report flags p below the level, boundary included") {
    Matrix x(20, 2);
    std::vector<double> y(20);
    for (std::size_t i = 0; i < 20; ++i) {
        x(i, 0) = 1.0;
        x(i, 1) = static_cast<double>(i % 4);
        y[i] = 0.1 * x(i, 1);
    }
    OlsFit fit = ols_fit(x, y, {"(Intercept)", "x"});
    fit.terms[0].p = 0.5;
    fit.terms[1].p = 0.049;
    const auto report = significance_report(fit, 0.05);
    REQUIRE(report.size() == 2);
    CHECK(!report[0].significant);
    CHECK(report[1].significant);

    fit.terms[1].p = 0.05;  // strict inequality
    CHECK(!significance_report(fit, 0.05)[1].significant);
}

TEST_CASE("a planted strong effect is detected, pure noise is not") {
    std::vector<ControlRecord> records = full_coverage_records(40);
    std::mt19937_64 gen(55);
    std::vector<double> y;
    for (const auto& r : records)
        y.push_back(0.5 + 0.3 * (r.house == Party::rep ? 1.0 : 0.0) +
                    0.01 * (oracle::uniform(gen) - 0.5));
    const Design d =
        build_design(records, y, Chamber::house, RegressionModel::full_three_factor);
    const OlsFit fit = fit_model(d);
    bool h_significant = false;
    for (const auto& s : significance_report(fit, 0.05))
        if (s.term == "H") h_significant = s.significant;
    CHECK(h_significant);

    std::vector<double> pure = noise(records.size(), 77, 0.02);
    const Design d2 =
        build_design(records, pure, Chamber::house, RegressionModel::full_three_factor);
    const OlsFit fit2 = fit_model(d2);
    std::size_t count = 0;
    for (const auto& s : significance_report(fit2, 0.001))
        if (s.significant && s.term != "(Intercept)") ++count;
    CHECK(count == 0);
}

TEST_CASE("relabelling the parties preserves the set of significant terms") {
    std::vector<ControlRecord> records = full_coverage_records(32);
    std::mt19937_64 gen(91);
    std::vector<double> y;
    for (const auto& r : records)
        y.push_back(0.6 + 0.2 * (r.senate == Party::rep ? 1.0 : 0.0) +
                    0.05 * oracle::uniform(gen));
    auto significant_count = [&](const std::vector<ControlRecord>& recs) {
        const Design d =
            build_design(recs, y, Chamber::house, RegressionModel::full_three_factor);
        std::size_t n = 0;
        for (const auto& s : significance_report(fit_model(d), 0.05))
            if (s.significant && s.term != "(Intercept)") ++n;
        return n;
    };
    std::vector<ControlRecord> flipped = records;
    for (auto& r : flipped) {
        r.house = r.house == Party::dem ? Party::rep : Party::dem;
        r.senate = r.senate == Party::dem ? Party::rep : Party::dem;
        r.president = r.president == Party::dem ? Party::rep : Party::dem;
    }
    CHECK(significant_count(records) == significant_count(flipped));
}

TEST_CASE("controls file round trip and validation") {
    fixtures::TempDir dir("controls");
    const std::string good = dir.file("controls.csv",
                                      "congress,house_majority,senate_majority,president_party\n"
                                      "74,D,D,D\n"
                                      "80,R,Republican,dem\n");
    const std::vector<ControlRecord> records = read_controls(good);
    REQUIRE(records.size() == 2);
    CHECK(records[1].house == Party::rep);
    CHECK(records[1].senate == Party::rep);
    CHECK(records[1].president == Party::dem);

    const std::string dup = dir.file("dup.csv",
                                     "congress,house_majority,senate_majority,president_party\n"
                                     "74,D,D,D\n74,D,D,D\n");
    CHECK_THROWS_AS(read_controls(dup), Error);
    const std::string bad = dir.file("bad.csv",
                                     "congress,house_majority,senate_majority,president_party\n"
                                     "74,D,D,Green\n");
    CHECK_THROWS_AS(read_controls(bad), Error);
    const std::string missing =
        dir.file("missing.csv", "congress,house_majority,senate_majority\n74,D,D\n");
    CHECK_THROWS_AS(read_controls(missing), Error);
}

TEST_CASE("series reader accepts batch output") {
    fixtures::TempDir dir("series");
    const std::string path = dir.file("series.csv",
                                      "# run_config={} input_hash=abc\n"
                                      "congress,chamber,f1,gap\n"
                                      "74,house,0.95,1.2\n"
                                      "74,senate,0.9,\n");
    const std::vector<SeriesPoint> points = read_series_csv(path);
    REQUIRE(points.size() == 2);
    CHECK(points[0].chamber == Chamber::house);
    CHECK(points[1].f1 == doctest::Approx(0.9));
}

TEST_CASE("regression report json whole path") {
    std::vector<ControlRecord> records = full_coverage_records(20);
    std::vector<SeriesPoint> series;
    std::mt19937_64 gen(13);
    for (const auto& r : records) {
        SeriesPoint p;
        p.congress = r.congress;
        p.chamber = Chamber::house;
        p.f1 = 0.9 + 0.05 * oracle::uniform(gen);
        series.push_back(p);
    }
    const std::string json =
        regression_report_json(records, series, Chamber::house, 0.05, "{}", "deadbeef");
    CHECK(json.find("full_three_factor") != std::string::npos);
    CHECK(json.find("agreement_two_factor") != std::string::npos);
    CHECK(json.find("\"chamber\": \"house\"") != std::string::npos);

    // a series congress without a control record is an error
    series.push_back({999, Chamber::house, 0.5});
    CHECK_THROWS_AS(
        regression_report_json(records, series, Chamber::house, 0.05, "{}", "x"), Error);
}
