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

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core/congress.hpp"
#include "core/graph.hpp"

namespace glass {

/// One service record from the member roster. A member who switches party
/// mid-Congress appears once per party; the first record (roster order) is
/// taken as their party at election time.
struct MemberRecord {
    int icpsr = 0;
    int congress = 0;
    Chamber chamber = Chamber::house;
    int party_code = 0;
    std::string name;  // roster bioname, "SURNAME, Given ..."
};

/// One recorded position of one member on one roll call. Cast codes are
/// preserved raw; interpreting them is the cleaning step's job.
struct VoteRecord {
    int congress = 0;
    Chamber chamber = Chamber::house;
    int rollnumber = 0;
    int icpsr = 0;
    int cast_code = 0;
    std::optional<Date> date;
};

enum class LeaderRole { leader, speaker };

/// Curated leadership entry. Either an explicit member id or a name prefix
/// resolved against the roster of that congress/chamber/party.
struct LeaderEntry {
    int congress = 0;
    Chamber chamber = Chamber::house;
    std::optional<int> icpsr;
    std::string name;
    Party party = Party::dem;
    LeaderRole role = LeaderRole::leader;
    std::optional<Date> start;  // active range, inclusive; absent = whole congress
    std::optional<Date> end;
};

using RowFilter = std::function<bool(int congress, Chamber chamber)>;

/// Roster CSV (header required): columns congress, chamber, icpsr,
/// party_code and optionally bioname. Rows whose chamber is neither house
/// nor senate (e.g. executive records in combined files) are skipped;
/// malformed rows are errors carrying the line number.
std::vector<MemberRecord> parse_members(const std::string& path, const RowFilter& keep = {});

/// Vote CSV (header required): columns congress, chamber, rollnumber,
/// icpsr, cast_code, optional date. Cast code 0 marks a seat not yet held
/// and is not a cast vote; such rows are dropped here.
std::vector<VoteRecord> parse_votes(const std::string& path, const RowFilter& keep = {});
void stream_votes(const std::string& path, const RowFilter& keep,
                  const std::function<void(const VoteRecord&)>& sink);

/// Roll-call metadata CSV: congress, chamber, rollnumber, date. Used to
/// attach dates to votes when the vote file itself has no date column.
std::map<std::tuple<int, int, int>, Date> parse_rollcall_dates(const std::string& path,
                                                               const RowFilter& keep = {});

/// Leaders CSV (header required): congress, chamber, member_id, party,
/// role, start_date, end_date, name. member_id may be blank when a name is
/// given.
std::vector<LeaderEntry> parse_leaders(const std::string& path);

/// Cast-code and party-code sets; the defaults follow the standard roll
/// call data dictionary (1 = yea, 6 = nay, 100 = Democrat,
/// 200 = Republican). Strict codes only: paired and announced positions
/// stay out unless explicitly configured in.
struct CleaningOptions {
    bool include_agreeing = false;
    std::set<int> yea_codes{1};
    std::set<int> nay_codes{6};
    std::set<int> dem_codes{100};
    std::set<int> rep_codes{200};
};

struct RuleStats {
    std::string rule;
    std::string summary;
    std::size_t members_before = 0, members_after = 0;
    std::size_t votes_before = 0, votes_after = 0;
    std::size_t rollcalls_before = 0, rollcalls_after = 0;

    double member_reduction_pct() const;
    double vote_reduction_pct() const;
};

struct CleaningStats {
    int congress = 0;
    Chamber chamber = Chamber::house;
    std::size_t raw_members = 0, raw_votes = 0, raw_rollcalls = 0;
    std::vector<RuleStats> rules;           // one entry per rule, in order
    std::size_t agreeing_rollcalls = 0;     // dropped (or flagged) by rule 5
    std::size_t leader_vote_missing = 0;    // roll calls a leader skipped
    std::size_t party_switches = 0;         // members resolved by rule 3
    std::vector<int> speaker_excluded;      // member ids removed by rule 7
    std::vector<std::string> warnings;
};

struct MemberInfo {
    int icpsr = 0;
    std::string name;
    Party party = Party::dem;
};

struct ConsideredRollcall {
    int rollnumber = 0;
    std::optional<Date> date;
    std::vector<std::uint32_t> yeas;  // indices into CleanDataset::members
    std::vector<std::uint32_t> nays;
};

/// Output of the rule 1-7 pipeline for one congress/chamber.
struct CleanDataset {
    int congress = 0;
    Chamber chamber = Chamber::house;
    std::vector<MemberInfo> members;          // retained, ascending icpsr
    std::vector<ConsideredRollcall> rollcalls;
    std::map<int, Party> leader_labels;       // icpsr -> party, role=leader only
    CleaningStats stats;
};

/// Applies the cleaning rules in order:
///   1. keep only yea/nay cast codes
///   2. keep only Democrat and Republican members
///   3. party switchers keep their at-election party (first roster record)
///   4. replacement members are retained as distinct members
///   5. drop roll calls where both party leaders voted the same way
///      (skipped when include_agreeing is set; a leader with no recorded
///      vote on a roll call leaves it retained, logged)
///   6. leader comparisons use the leader active on the vote date
///   7. House only: all votes of the chronologically first Speaker are
///      removed, later Speakers' votes kept
CleanDataset apply_cleaning_rules(const std::vector<MemberRecord>& members,
                                  const std::vector<VoteRecord>& votes,
                                  const std::vector<LeaderEntry>& leaders,
                                  const CleaningOptions& options, int congress, Chamber chamber);

/// Agreement network: nodes are retained members, the weight of (i, j)
/// counts considered roll calls where both voted the same way. Leaders
/// carry their party as label; everyone else is unlabelled. Members with
/// no same-way pair stay as isolated nodes.
WeightedGraph build_vote_network(const CleanDataset& dataset);

/// Per-rule reduction report as JSON.
std::string cleaning_stats_json(const CleaningStats& stats);

/// True party of every retained member, keyed by node id.
std::map<NodeId, Label> dataset_truth(const CleanDataset& dataset);

}  // namespace glass
