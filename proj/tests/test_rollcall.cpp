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
#include <random>

#include "core/batch.hpp"
#include "core/error.hpp"
#include "core/rollcall.hpp"
#include "support/fixtures.hpp"

using namespace glass;

namespace {

const MemberRecord* find_member(const std::vector<MemberRecord>& ms, int icpsr) {
    for (const auto& m : ms)
        if (m.icpsr == icpsr) return &m;
    return nullptr;
}

const RuleStats& rule(const CleaningStats& stats, const std::string& name) {
    for (const auto& r : stats.rules)
        if (r.rule == name) return r;
    REQUIRE(false);
    static RuleStats dummy;
    return dummy;
}

CleanDataset clean_mini(const fixtures::TempDir& dir, const fixtures::MiniCongress& mini,
                        bool include_agreeing = false, bool with_dates = false) {
    const std::string members = dir.file("members.csv", mini.members_csv);
    const std::string votes = dir.file("votes.csv", mini.votes_csv);
    const std::string leaders = dir.file("leaders.csv", mini.leaders_csv);
    IngestRequest req;
    req.paths.members_csv = members;
    req.paths.votes_csv = votes;
    if (with_dates) req.paths.rollcalls_csv = dir.file("rollcalls.csv", mini.rollcalls_csv);
    req.paths.leaders_csv = leaders;
    req.congress = 99;
    req.chamber = Chamber::house;
    req.cleaning.include_agreeing = include_agreeing;
    return ingest_network(req);
}

}  // namespace

TEST_CASE("member parsing maps the documented party codes") {
    fixtures::TempDir dir("members");
    fixtures::MiniCongress mini;
    const std::string path = dir.file("members.csv", mini.members_csv);
    const std::vector<MemberRecord> ms = parse_members(path);
    REQUIRE(ms.size() == 7);
    CHECK(find_member(ms, 101)->party_code == 100);  // Democrat
    CHECK(find_member(ms, 102)->party_code == 200);  // Republican
    CHECK(find_member(ms, 107)->party_code == 328);  // Independent: kept at parse
    CHECK(find_member(ms, 101)->name == "ALPHA, Ada");
}

TEST_CASE("parser errors carry the file and line") {
    fixtures::TempDir dir("badrows");
    SUBCASE("missing column") {
        const std::string path = dir.file("m.csv", "congress,chamber,icpsr\n99,House,1\n");
        CHECK_THROWS_WITH_AS(parse_members(path), doctest::Contains("party_code"), Error);
    }
    SUBCASE("malformed integer names the line") {
        const std::string path =
            dir.file("m.csv", "congress,chamber,icpsr,party_code\n99,House,xx,100\n");
        CHECK_THROWS_WITH_AS(parse_members(path), doctest::Contains(":2:"), Error);
    }
    SUBCASE("votes with a bad cast code") {
        const std::string path = dir.file(
            "v.csv", "congress,chamber,rollnumber,icpsr,cast_code\n99,House,1,101,yes\n");
        CHECK_THROWS_AS(parse_votes(path), Error);
    }
}

TEST_CASE("vote parsing keeps raw cast codes and drops only code zero") {
    fixtures::TempDir dir("votes");
    const std::string path = dir.file("v.csv",
                                      "congress,chamber,rollnumber,icpsr,cast_code\n"
                                      "99,House,1,101,1\n"
                                      "99,House,1,102,9\n"
                                      "99,House,1,103,0\n"
                                      "99,President,1,104,1\n");
    const std::vector<VoteRecord> vs = parse_votes(path);
    REQUIRE(vs.size() == 2);  // code 0 and the executive row are not votes
    CHECK(vs[0].cast_code == 1);
    CHECK(vs[1].cast_code == 9);
}

TEST_CASE("empty vote file parses to an empty list") {
    fixtures::TempDir dir("emptyvotes");
    const std::string path =
        dir.file("v.csv", "congress,chamber,rollnumber,icpsr,cast_code\n");
    CHECK(parse_votes(path).empty());
}

TEST_CASE("cleaning the mini congress applies the rules in order") {
    fixtures::TempDir dir("clean");
    fixtures::MiniCongress mini;
    const CleanDataset ds = clean_mini(dir, mini);

    // raw: 7 members, 27 rows, 4 roll calls
    CHECK(ds.stats.raw_members == 7);
    CHECK(ds.stats.raw_votes == 27);
    CHECK(ds.stats.raw_rollcalls == 4);

    // rule 1 removes the two "not voting" rows by member 107
    const RuleStats& r1 = rule(ds.stats, "rule1");
    CHECK(r1.votes_before == 27);
    CHECK(r1.votes_after == 25);
    CHECK(r1.members_after == 7);

    // rule 2 removes the Independent member's remaining row
    const RuleStats& r2 = rule(ds.stats, "rule2");
    CHECK(r2.members_before == 7);
    CHECK(r2.members_after == 6);
    CHECK(r2.votes_after == 24);

    // rule 5 drops the leader-agreeing roll call 3
    const RuleStats& r5 = rule(ds.stats, "rule5");
    CHECK(r5.rollcalls_before == 4);
    CHECK(r5.rollcalls_after == 3);
    CHECK(ds.stats.agreeing_rollcalls == 1);

    CHECK(ds.members.size() == 6);
    CHECK(ds.rollcalls.size() == 3);
    REQUIRE(ds.leader_labels.size() == 2);
    CHECK(ds.leader_labels.at(101) == Party::dem);
    CHECK(ds.leader_labels.at(102) == Party::rep);
}

TEST_CASE("the agreeing-votes toggle keeps roll call 3") {
    fixtures::TempDir dir("agree");
    fixtures::MiniCongress mini;
    const CleanDataset with = clean_mini(dir, mini, /*include_agreeing=*/true);
    CHECK(with.rollcalls.size() == 4);
    CHECK(with.stats.agreeing_rollcalls == 0);
    const CleanDataset without = clean_mini(dir, mini, /*include_agreeing=*/false);
    CHECK(without.rollcalls.size() == 3);
}

TEST_CASE("cleaning is idempotent on the considered vote set") {
    fixtures::TempDir dir("idem");
    fixtures::MiniCongress mini;
    const CleanDataset once = clean_mini(dir, mini);

    // feed the considered votes back through the rules
    std::vector<VoteRecord> again;
    for (const auto& rc : once.rollcalls) {
        for (auto idx : rc.yeas)
            again.push_back({99, Chamber::house, rc.rollnumber, once.members[idx].icpsr, 1,
                             rc.date});
        for (auto idx : rc.nays)
            again.push_back({99, Chamber::house, rc.rollnumber, once.members[idx].icpsr, 6,
                             rc.date});
    }
    const std::string members = dir.file("members.csv", mini.members_csv);
    const std::string leaders = dir.file("leaders.csv", mini.leaders_csv);
    const CleanDataset twice =
        apply_cleaning_rules(parse_members(members), again, parse_leaders(leaders), {}, 99,
                             Chamber::house);
    REQUIRE(twice.rollcalls.size() == once.rollcalls.size());
    CHECK(twice.members.size() == once.members.size());
    for (std::size_t i = 0; i < once.rollcalls.size(); ++i) {
        CHECK(twice.rollcalls[i].rollnumber == once.rollcalls[i].rollnumber);
        CHECK(twice.rollcalls[i].yeas == once.rollcalls[i].yeas);
        CHECK(twice.rollcalls[i].nays == once.rollcalls[i].nays);
    }
}

TEST_CASE("leaders disagree on every considered roll call") {
    fixtures::TempDir dir("soundness");
    fixtures::MiniCongress mini;
    const CleanDataset ds = clean_mini(dir, mini);
    std::size_t dem_pos = 0, rep_pos = 0;
    for (std::size_t i = 0; i < ds.members.size(); ++i) {
        if (ds.members[i].icpsr == 101) dem_pos = i;
        if (ds.members[i].icpsr == 102) rep_pos = i;
    }
    for (const auto& rc : ds.rollcalls) {
        const bool dem_yea =
            std::find(rc.yeas.begin(), rc.yeas.end(), dem_pos) != rc.yeas.end();
        const bool rep_yea =
            std::find(rc.yeas.begin(), rc.yeas.end(), rep_pos) != rc.yeas.end();
        CHECK(dem_yea != rep_yea);
    }
}

TEST_CASE("a leader who skipped a roll call leaves it retained and logged") {
    fixtures::TempDir dir("skip");
    fixtures::MiniCongress mini;
    // drop the Republican leader's ballot on roll 4
    const std::string marker = "99,House,4,102,6\n";
    const std::size_t at = mini.votes_csv.find(marker);
    REQUIRE(at != std::string::npos);
    mini.votes_csv.erase(at, marker.size());

    const CleanDataset ds = clean_mini(dir, mini);
    bool roll4_present = false;
    for (const auto& rc : ds.rollcalls) roll4_present |= rc.rollnumber == 4;
    CHECK(roll4_present);
    CHECK(ds.stats.leader_vote_missing == 1);
    CHECK(!ds.stats.warnings.empty());
}

TEST_CASE("duplicate ballots on one roll call are rejected") {
    fixtures::TempDir dir("dup");
    fixtures::MiniCongress mini;
    mini.votes_csv += "99,House,4,103,6\n";  // 103 already voted yea on roll 4
    CHECK_THROWS_WITH_AS(clean_mini(dir, mini), doctest::Contains("multiple ballots"), Error);
}

TEST_CASE("party switchers keep their first roster record") {
    fixtures::TempDir dir("switch");
    fixtures::MiniCongress mini;
    // member 105 re-registered mid-term: a second roster row as Democrat
    mini.members_csv += "99,House,105,100,\"ECHO, Eve\"\n";
    const CleanDataset ds = clean_mini(dir, mini);
    CHECK(ds.stats.party_switches == 1);
    for (const auto& m : ds.members)
        if (m.icpsr == 105) CHECK(m.party == Party::rep);
}

TEST_CASE("mid-congress leadership change uses the vote-date leader") {
    fixtures::TempDir dir("midterm");
    fixtures::MiniCongress mini;
    // Democrat leadership passes from 101 to 103 for the 1986 roll calls;
    // roll 3 (both leaders yea under 101) now compares 103, who voted yea
    // too, so the roll stays agreeing; roll 4 compares 103 (yea) vs 102
    // (nay) and stays considered.
    mini.leaders_csv =
        "congress,chamber,member_id,party,role,start_date,end_date,name\n"
        "99,house,101,D,leader,1985-01-03,1985-12-31,\n"
        "99,house,103,D,leader,1986-01-01,1987-01-03,\n"
        "99,house,102,R,leader,,,\n";
    const CleanDataset ds = clean_mini(dir, mini, false, /*with_dates=*/true);
    CHECK(ds.rollcalls.size() == 3);
    CHECK(ds.stats.agreeing_rollcalls == 1);
    // both Democrat leaders become labelled nodes
    REQUIRE(ds.leader_labels.size() == 3);
    CHECK(ds.leader_labels.at(103) == Party::dem);

    SUBCASE("multiple leaders without dates is an error") {
        fixtures::TempDir dir2("midterm2");
        fixtures::MiniCongress mini2;
        mini2.leaders_csv = mini.leaders_csv;
        CHECK_THROWS_WITH_AS(clean_mini(dir2, mini2, false, /*with_dates=*/false),
                             doctest::Contains("dates"), Error);
    }
    SUBCASE("a date not covered by any range is an error") {
        fixtures::TempDir dir3("midterm3");
        fixtures::MiniCongress mini3;
        mini3.leaders_csv =
            "congress,chamber,member_id,party,role,start_date,end_date,name\n"
            "99,house,101,D,leader,1985-01-03,1985-12-31,\n"
            "99,house,102,R,leader,,,\n";
        CHECK_THROWS_WITH_AS(clean_mini(dir3, mini3, false, true),
                             doctest::Contains("no active Democrat leader"), Error);
    }
}

TEST_CASE("rule 7 removes the first speaker's votes and node") {
    fixtures::TempDir dir("speaker");
    fixtures::MiniCongress mini;
    // 104 presides first, then 103; only 104's votes vanish
    mini.leaders_csv =
        "congress,chamber,member_id,party,role,start_date,end_date,name\n"
        "99,house,101,D,leader,,,\n"
        "99,house,102,R,leader,,,\n"
        "99,house,104,D,speaker,1985-01-03,1986-01-01,\n"
        "99,house,103,D,speaker,1986-01-02,1987-01-03,\n";
    const CleanDataset ds = clean_mini(dir, mini, false, /*with_dates=*/true);
    CHECK(ds.stats.speaker_excluded == std::vector<int>{104});
    for (const auto& m : ds.members) CHECK(m.icpsr != 104);
    bool found_103 = false;
    for (const auto& m : ds.members) found_103 |= m.icpsr == 103;
    CHECK(found_103);
    const RuleStats& r7 = rule(ds.stats, "rule7");
    CHECK(r7.members_before == 6);
    CHECK(r7.members_after == 5);
}

TEST_CASE("leader entries resolve by name with party screening") {
    fixtures::TempDir dir("resolve");
    fixtures::MiniCongress mini;
    const CleanDataset ds = clean_mini(dir, mini);  // BRAVO resolved by name
    CHECK(ds.leader_labels.count(102) == 1);

    SUBCASE("unknown name") {
        fixtures::TempDir dir2("resolve2");
        fixtures::MiniCongress mini2;
        mini2.leaders_csv =
            "congress,chamber,member_id,party,role,start_date,end_date,name\n"
            "99,house,101,D,leader,,,\n"
            "99,house,,R,leader,,,\"NOBODY, Ned\"\n";
        CHECK_THROWS_WITH_AS(clean_mini(dir2, mini2), doctest::Contains("not found"), Error);
    }
    SUBCASE("ambiguous prefix") {
        fixtures::TempDir dir3("resolve3");
        fixtures::MiniCongress mini3;
        mini3.members_csv += "99,House,108,200,\"BRAVO, Bill\"\n";
        mini3.votes_csv += "99,House,1,108,6\n";
        mini3.leaders_csv =
            "congress,chamber,member_id,party,role,start_date,end_date,name\n"
            "99,house,101,D,leader,,,\n"
            "99,house,,R,leader,,,BRAVO\n";
        CHECK_THROWS_WITH_AS(clean_mini(dir3, mini3), doctest::Contains("ambiguous"), Error);
    }
    SUBCASE("missing leader pair") {
        fixtures::TempDir dir4("resolve4");
        fixtures::MiniCongress mini4;
        mini4.leaders_csv =
            "congress,chamber,member_id,party,role,start_date,end_date,name\n"
            "99,house,101,D,leader,,,\n";
        CHECK_THROWS_WITH_AS(clean_mini(dir4, mini4), doctest::Contains("leader"), Error);
    }
}

TEST_CASE("network weights count same-way votes") {
    CleanDataset ds;
    ds.congress = 99;
    ds.chamber = Chamber::house;
    ds.members = {{1, "A", Party::dem}, {2, "B", Party::rep}};
    ds.leader_labels = {{1, Party::dem}, {2, Party::rep}};
    // (yea,yea), (nay,nay), (yea,nay): two same-way roll calls
    ds.rollcalls.push_back({1, {}, {0, 1}, {}});
    ds.rollcalls.push_back({2, {}, {}, {0, 1}});
    ds.rollcalls.push_back({3, {}, {0}, {1}});
    const WeightedGraph g = build_vote_network(ds);
    CHECK(g.node_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.weighted_degree(*g.index_of("1")) == doctest::Approx(2.0));

    SUBCASE("never voting alike leaves no edge, the node stays") {
        CleanDataset ds2 = ds;
        ds2.rollcalls.clear();
        ds2.rollcalls.push_back({1, {}, {0}, {1}});
        const WeightedGraph g2 = build_vote_network(ds2);
        CHECK(g2.node_count() == 2);
        CHECK(g2.edge_count() == 0);
    }
}

TEST_CASE("mini network end to end: weights are integers bounded by roll calls") {
    fixtures::TempDir dir("network");
    fixtures::MiniCongress mini;
    const CleanDataset ds = clean_mini(dir, mini);
    const WeightedGraph g = build_vote_network(ds);
    CHECK(g.node_count() == ds.members.size());
    CHECK(g.labelled_count() == 2);
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        for (const auto& [j, w] : g.neighbours(i)) {
            CHECK(w == doctest::Approx(std::round(w)));
            CHECK(w >= 1.0);
            CHECK(w <= static_cast<double>(ds.rollcalls.size()));
        }
    }
}

TEST_CASE("stats serialise with zero reductions when nothing is removed") {
    fixtures::TempDir dir("zerostats");
    fixtures::MiniCongress mini;
    // strip member 107 and the not-voting rows and the agreeing roll call
    mini.members_csv =
        "congress,chamber,icpsr,party_code,bioname\n"
        "99,House,101,100,\"ALPHA, Ada\"\n"
        "99,House,102,200,\"BRAVO, Bob\"\n"
        "99,House,103,100,\"CHARLIE, Cal\"\n";
    mini.votes_csv =
        "congress,chamber,rollnumber,icpsr,cast_code\n"
        "99,House,1,101,1\n99,House,1,102,6\n99,House,1,103,1\n"
        "99,House,2,101,6\n99,House,2,102,1\n99,House,2,103,6\n";
    const CleanDataset ds = clean_mini(dir, mini);
    for (const auto& r : ds.stats.rules) {
        CHECK(r.member_reduction_pct() == doctest::Approx(0.0));
        CHECK(r.vote_reduction_pct() == doctest::Approx(0.0));
    }
    const std::string json = cleaning_stats_json(ds.stats);
    CHECK(json.find("\"rule\": \"rule1\"") != std::string::npos);
    CHECK(json.find("\"vote_reduction_pct\": 0.0") != std::string::npos);
}

TEST_CASE("evaluate_dataset scores the mini congress") {
    fixtures::TempDir dir("evaluate");
    fixtures::MiniCongress mini;
    const CleanDataset ds = clean_mini(dir, mini);
    const NetworkEvaluation ev =
        evaluate_dataset(ds, FilterPolicy::off(), false, "Democrat");
    CHECK(ev.ok);
    CHECK(ev.n == 6);
    CHECK(ev.ell == 2);
    CHECK(ev.u == 4);
    CHECK(ev.m == 2);  // two unlabelled true Republicans
    CHECK(ev.f1_dem_pos > 0.0);
    CHECK(ev.estimates.size() == 4);
    CHECK(ev.dem_members == 2);
    CHECK(ev.rep_members == 2);
}

TEST_CASE("batch runs every selected network and isolates failures") {
    fixtures::TempDir dir("batch");
    fixtures::MiniCongress mini;
    BatchRequest req;
    req.paths.members_csv = dir.file("members.csv", mini.members_csv);
    req.paths.votes_csv = dir.file("votes.csv", mini.votes_csv);
    req.paths.leaders_csv = dir.file("leaders.csv", mini.leaders_csv);
    req.congresses = {99, 100};  // congress 100 has no data: per-row failure
    req.chambers = {Chamber::house};
    req.jobs = 1;
    const EvaluationReport report = batch_analyse(req);
    REQUIRE(report.networks.size() == 2);
    CHECK(report.networks[0].ok);
    CHECK(report.networks[0].congress == 99);
    CHECK(!report.networks[1].ok);
    CHECK(!report.networks[1].error.empty());

    const std::string json = report_json(report, "{}", "cafe");
    CHECK(json.find("\"congress\": 99") != std::string::npos);
    CHECK(json.find("\"ok\": false") != std::string::npos);
    const std::string csv = report_series_csv(report, "{}", "cafe");
    CHECK(csv.find("99,house,") != std::string::npos);
    // the failed network contributes no series row
    CHECK(csv.find("100,house") == std::string::npos);
}

TEST_CASE("sensitivity pairs the two arms and correlates them") {
    fixtures::TempDir dir("sens");
    fixtures::MiniCongress mini;
    IngestRequest req;
    req.paths.members_csv = dir.file("members.csv", mini.members_csv);
    req.paths.votes_csv = dir.file("votes.csv", mini.votes_csv);
    req.paths.leaders_csv = dir.file("leaders.csv", mini.leaders_csv);
    req.congress = 99;
    req.chamber = Chamber::house;
    const SensitivityResult res =
        sensitivity_analysis(req, FilterPolicy::off(), false, "Democrat");
    CHECK(res.paired_nodes == 4);
    CHECK(res.pearson <= 1.0);
    CHECK(res.pearson >= -1.0);
    CHECK(res.without_agreeing.considered_rollcalls == 3);
    CHECK(res.with_agreeing.considered_rollcalls == 4);

    const std::string json = sensitivity_json(res, "{}", "f00d");
    CHECK(json.find("\"pearson\"") != std::string::npos);
    const std::string csv = sensitivity_paired_csv(res, "{}", "f00d");
    CHECK(csv.find("node,truth,prob_without_agreeing,prob_with_agreeing") != std::string::npos);
}

TEST_CASE("a positive separation gap forces a perfect score") {
    // random voting tables across polarisation levels: whenever the
    // standardised supports are disjoint, the true-ratio classifier must
    // recover every label
    std::mt19937_64 gen(2024);
    auto uniform = [&gen]() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
    int positive_gaps = 0;
    for (int rep = 0; rep < 12; ++rep) {
        const double polarisation = 0.05 + 0.45 * (rep / 11.0);
        CleanDataset ds;
        ds.congress = 99;
        ds.chamber = Chamber::senate;
        const int n = 24;
        for (int i = 0; i < n; ++i)
            ds.members.push_back({100 + i, "m", i < n / 2 ? Party::dem : Party::rep});
        ds.leader_labels = {{100, Party::dem}, {100 + n - 1, Party::rep}};
        for (int roll = 1; roll <= 40; ++roll) {
            ConsideredRollcall rc;
            rc.rollnumber = roll;
            for (int i = 0; i < n; ++i) {
                double p_yea = ds.members[i].party == Party::dem ? 0.5 + polarisation
                                                                 : 0.5 - polarisation;
                if (i == 0) p_yea = 1.0;          // leaders always split
                if (i == n - 1) p_yea = 0.0;
                (uniform() < p_yea ? rc.yeas : rc.nays).push_back(i);
            }
            if (rc.yeas.empty() || rc.nays.empty()) continue;
            ds.rollcalls.push_back(rc);
        }
        const NetworkEvaluation ev =
            evaluate_dataset(ds, FilterPolicy::off(), false, "Democrat");
        REQUIRE(ev.ok);
        if (ev.gap && *ev.gap > 0.0) {
            ++positive_gaps;
            CHECK(ev.f1_dem_pos == doctest::Approx(1.0));
            CHECK(ev.f1_rep_pos == doctest::Approx(1.0));
        }
    }
    CHECK(positive_gaps > 0);  // the strongly polarised end must separate
}

TEST_CASE("identical arms correlate exactly when no roll call agrees") {
    fixtures::TempDir dir("sensid");
    fixtures::MiniCongress mini;
    // remove the agreeing roll call entirely
    std::string votes;
    for (const char* row :
         {"congress,chamber,rollnumber,icpsr,cast_code\n",
          "99,House,1,101,1\n99,House,1,102,6\n99,House,1,103,1\n99,House,1,104,1\n",
          "99,House,1,105,6\n99,House,1,106,6\n",
          "99,House,2,101,6\n99,House,2,102,1\n99,House,2,103,6\n99,House,2,104,1\n",
          "99,House,2,105,1\n99,House,2,106,1\n"})
        votes += row;
    mini.votes_csv = votes;
    IngestRequest req;
    req.paths.members_csv = dir.file("members.csv", mini.members_csv);
    req.paths.votes_csv = dir.file("votes.csv", mini.votes_csv);
    req.paths.leaders_csv = dir.file("leaders.csv", mini.leaders_csv);
    req.congress = 99;
    req.chamber = Chamber::house;
    const SensitivityResult res =
        sensitivity_analysis(req, FilterPolicy::off(), false, "Democrat");
    CHECK(res.pearson == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(res.spearman == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(res.without_agreeing.f1_dem_pos ==
          doctest::Approx(res.with_agreeing.f1_dem_pos));
}
