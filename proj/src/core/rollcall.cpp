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

#include "core/rollcall.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "core/csv.hpp"
#include "core/error.hpp"

namespace glass {

namespace {

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

}  // namespace

std::vector<MemberRecord> parse_members(const std::string& path, const RowFilter& keep) {
    CsvReader reader(path);
    const std::size_t c_congress = reader.require_column("congress");
    const std::size_t c_chamber = reader.require_column("chamber");
    const std::size_t c_icpsr = reader.require_column("icpsr");
    const std::size_t c_party = reader.require_column("party_code");
    const auto c_name = reader.find_column("bioname");

    std::vector<MemberRecord> out;
    reader.for_each_record([&](const std::vector<std::string>& f, std::size_t line_no) {
        if (c_congress >= f.size() || c_chamber >= f.size() || c_icpsr >= f.size() ||
            c_party >= f.size())
            raise_parse(path + ":" + std::to_string(line_no) + ": too few fields");
        auto chamber = try_parse_chamber(f[c_chamber]);
        if (!chamber) return;  // executive or other non-chamber record
        MemberRecord r;
        r.congress = static_cast<int>(reader.to_int(f[c_congress], line_no, "congress"));
        r.chamber = *chamber;
        if (keep && !keep(r.congress, r.chamber)) return;
        r.icpsr = static_cast<int>(reader.to_int(f[c_icpsr], line_no, "icpsr"));
        r.party_code = static_cast<int>(reader.to_int(f[c_party], line_no, "party_code"));
        if (c_name && *c_name < f.size()) r.name = f[*c_name];
        out.push_back(std::move(r));
    });
    return out;
}

void stream_votes(const std::string& path, const RowFilter& keep,
                  const std::function<void(const VoteRecord&)>& sink) {
    CsvReader reader(path);
    const std::size_t c_congress = reader.require_column("congress");
    const std::size_t c_chamber = reader.require_column("chamber");
    const std::size_t c_roll = reader.require_column("rollnumber");
    const std::size_t c_icpsr = reader.require_column("icpsr");
    const std::size_t c_cast = reader.require_column("cast_code");
    const auto c_date = reader.find_column("date");

    reader.for_each_record([&](const std::vector<std::string>& f, std::size_t line_no) {
        if (c_congress >= f.size() || c_chamber >= f.size() || c_roll >= f.size() ||
            c_icpsr >= f.size() || c_cast >= f.size())
            raise_parse(path + ":" + std::to_string(line_no) + ": too few fields");
        auto chamber = try_parse_chamber(f[c_chamber]);
        if (!chamber) return;
        VoteRecord r;
        r.congress = static_cast<int>(reader.to_int(f[c_congress], line_no, "congress"));
        r.chamber = *chamber;
        if (keep && !keep(r.congress, r.chamber)) return;
        r.rollnumber = static_cast<int>(reader.to_int(f[c_roll], line_no, "rollnumber"));
        r.icpsr = static_cast<int>(reader.to_int(f[c_icpsr], line_no, "icpsr"));
        r.cast_code = static_cast<int>(reader.to_int(f[c_cast], line_no, "cast_code"));
        if (r.cast_code == 0) return;  // seat not held: not a cast vote
        if (c_date && *c_date < f.size() && !f[*c_date].empty()) {
            auto d = try_parse_date(f[*c_date]);
            if (!d)
                raise_parse(path + ":" + std::to_string(line_no) + ": bad date '" + f[*c_date] +
                            "'");
            r.date = d;
        }
        sink(r);
    });
}

std::vector<VoteRecord> parse_votes(const std::string& path, const RowFilter& keep) {
    std::vector<VoteRecord> out;
    stream_votes(path, keep, [&out](const VoteRecord& r) { out.push_back(r); });
    return out;
}

std::map<std::tuple<int, int, int>, Date> parse_rollcall_dates(const std::string& path,
                                                               const RowFilter& keep) {
    CsvReader reader(path);
    const std::size_t c_congress = reader.require_column("congress");
    const std::size_t c_chamber = reader.require_column("chamber");
    const std::size_t c_roll = reader.require_column("rollnumber");
    const std::size_t c_date = reader.require_column("date");

    std::map<std::tuple<int, int, int>, Date> out;
    reader.for_each_record([&](const std::vector<std::string>& f, std::size_t line_no) {
        if (c_congress >= f.size() || c_chamber >= f.size() || c_roll >= f.size() ||
            c_date >= f.size())
            raise_parse(path + ":" + std::to_string(line_no) + ": too few fields");
        auto chamber = try_parse_chamber(f[c_chamber]);
        if (!chamber) return;
        const int congress = static_cast<int>(reader.to_int(f[c_congress], line_no, "congress"));
        if (keep && !keep(congress, *chamber)) return;
        const int roll = static_cast<int>(reader.to_int(f[c_roll], line_no, "rollnumber"));
        auto d = try_parse_date(f[c_date]);
        if (!d)
            raise_parse(path + ":" + std::to_string(line_no) + ": bad date '" + f[c_date] + "'");
        out[{congress, static_cast<int>(*chamber), roll}] = *d;
    });
    return out;
}

std::vector<LeaderEntry> parse_leaders(const std::string& path) {
    CsvReader reader(path);
    const std::size_t c_congress = reader.require_column("congress");
    const std::size_t c_chamber = reader.require_column("chamber");
    const std::size_t c_id = reader.require_column("member_id");
    const std::size_t c_party = reader.require_column("party");
    const std::size_t c_role = reader.require_column("role");
    const std::size_t c_start = reader.require_column("start_date");
    const std::size_t c_end = reader.require_column("end_date");
    const auto c_name = reader.find_column("name");

    std::vector<LeaderEntry> out;
    reader.for_each_record([&](const std::vector<std::string>& f, std::size_t line_no) {
        if (c_end >= f.size())
            raise_parse(path + ":" + std::to_string(line_no) + ": too few fields");
        LeaderEntry e;
        e.congress = static_cast<int>(reader.to_int(f[c_congress], line_no, "congress"));
        e.chamber = parse_chamber(f[c_chamber]);
        if (!f[c_id].empty())
            e.icpsr = static_cast<int>(reader.to_int(f[c_id], line_no, "member_id"));
        auto party = try_parse_party(f[c_party]);
        if (!party)
            raise_parse(path + ":" + std::to_string(line_no) + ": bad party '" + f[c_party] + "'");
        e.party = *party;
        const std::string role = f[c_role];
        if (role == "leader") e.role = LeaderRole::leader;
        else if (role == "speaker") e.role = LeaderRole::speaker;
        else
            raise_parse(path + ":" + std::to_string(line_no) + ": bad role '" + role +
                        "', expected leader or speaker");
        if (!f[c_start].empty()) {
            auto d = try_parse_date(f[c_start]);
            if (!d) raise_parse(path + ":" + std::to_string(line_no) + ": bad start_date");
            e.start = d;
        }
        if (!f[c_end].empty()) {
            auto d = try_parse_date(f[c_end]);
            if (!d) raise_parse(path + ":" + std::to_string(line_no) + ": bad end_date");
            e.end = d;
        }
        if (c_name && *c_name < f.size()) e.name = f[*c_name];
        if (!e.icpsr && e.name.empty())
            raise_parse(path + ":" + std::to_string(line_no) +
                        ": leader entry needs member_id or name");
        if (e.role == LeaderRole::speaker && e.chamber != Chamber::house)
            raise_parse(path + ":" + std::to_string(line_no) + ": speaker entries are House-only");
        out.push_back(std::move(e));
    });
    return out;
}

double RuleStats::member_reduction_pct() const {
    if (members_before == 0) return 0.0;
    return 100.0 * static_cast<double>(members_before - members_after) /
           static_cast<double>(members_before);
}

double RuleStats::vote_reduction_pct() const {
    if (votes_before == 0) return 0.0;
    return 100.0 * static_cast<double>(votes_before - votes_after) /
           static_cast<double>(votes_before);
}

namespace {

struct Snapshot {
    std::size_t members;
    std::size_t votes;
    std::size_t rollcalls;
};

struct WorkingVote {
    int rollnumber;
    int icpsr;
    int cast_code;
    std::optional<Date> date;
};

Snapshot snapshot(const std::vector<WorkingVote>& votes) {
    std::unordered_set<int> members;
    std::unordered_set<int> rolls;
    for (const auto& v : votes) {
        members.insert(v.icpsr);
        rolls.insert(v.rollnumber);
    }
    return {members.size(), votes.size(), rolls.size()};
}

RuleStats make_stage(const std::string& rule, const std::string& summary, const Snapshot& before,
                     const Snapshot& after) {
    RuleStats s;
    s.rule = rule;
    s.summary = summary;
    s.members_before = before.members;
    s.members_after = after.members;
    s.votes_before = before.votes;
    s.votes_after = after.votes;
    s.rollcalls_before = before.rollcalls;
    s.rollcalls_after = after.rollcalls;
    return s;
}

/// Leader entries of one party resolved to member ids, with activity test.
struct ResolvedLeader {
    int icpsr;
    std::optional<Date> start, end;

    bool active_on(const std::optional<Date>& date) const {
        if (!start && !end) return true;
        if (!date) return true;  // dateless data with a single dateless range
        if (start && *date < *start) return false;
        if (end && *end < *date) return false;
        return true;
    }
};

int resolve_leader_id(const LeaderEntry& entry, const std::vector<MemberRecord>& roster,
                      const std::unordered_map<int, Party>& party_of) {
    if (entry.icpsr) {
        for (const auto& m : roster)
            if (m.icpsr == *entry.icpsr) return *entry.icpsr;
        raise_data("leader member_id " + std::to_string(*entry.icpsr) +
                   " not found in the roster of congress " + std::to_string(entry.congress));
    }
    const std::string prefix = upper(entry.name);
    std::set<int> hits;
    std::vector<std::string> hit_names;
    for (const auto& m : roster) {
        if (upper(m.name).rfind(prefix, 0) != 0) continue;
        auto it = party_of.find(m.icpsr);
        if (it == party_of.end() || it->second != entry.party) continue;
        if (hits.insert(m.icpsr).second) hit_names.push_back(m.name);
    }
    if (hits.empty())
        raise_data("leader '" + entry.name + "' (" + to_string(entry.party) +
                   ") not found in the roster of congress " + std::to_string(entry.congress));
    if (hits.size() > 1) {
        std::string list;
        for (const auto& n : hit_names) list += (list.empty() ? "" : "; ") + n;
        raise_data("leader name '" + entry.name + "' is ambiguous: " + list);
    }
    return *hits.begin();
}

}  // namespace

CleanDataset apply_cleaning_rules(const std::vector<MemberRecord>& members,
                                  const std::vector<VoteRecord>& votes,
                                  const std::vector<LeaderEntry>& leaders,
                                  const CleaningOptions& options, int congress, Chamber chamber) {
    CleanDataset out;
    out.congress = congress;
    out.chamber = chamber;
    out.stats.congress = congress;
    out.stats.chamber = chamber;

    std::vector<MemberRecord> roster;
    for (const auto& m : members)
        if (m.congress == congress && m.chamber == chamber) roster.push_back(m);

    std::vector<WorkingVote> work;
    work.reserve(votes.size());
    for (const auto& v : votes)
        if (v.congress == congress && v.chamber == chamber)
            work.push_back({v.rollnumber, v.icpsr, v.cast_code, v.date});
    if (work.empty()) raise_data("no vote records for congress " + std::to_string(congress) +
                                 " " + to_string(chamber));

    Snapshot raw = snapshot(work);
    out.stats.raw_members = raw.members;
    out.stats.raw_votes = raw.votes;
    out.stats.raw_rollcalls = raw.rollcalls;

    // rule 1: strict yea/nay ballots only
    auto is_yea = [&options](int c) { return options.yea_codes.count(c) > 0; };
    auto is_nay = [&options](int c) { return options.nay_codes.count(c) > 0; };
    std::erase_if(work, [&](const WorkingVote& v) {
        return !is_yea(v.cast_code) && !is_nay(v.cast_code);
    });
    Snapshot after1 = snapshot(work);
    out.stats.rules.push_back(make_stage("rule1", "keep only yea and nay ballots", raw, after1));

    // rules 2+3: party at election, Democrats and Republicans only.
    // The first roster record per member is the at-election affiliation.
    std::unordered_map<int, Party> party_of;
    std::unordered_map<int, std::string> name_of;
    std::unordered_map<int, int> first_code;
    for (const auto& m : roster) {
        if (first_code.count(m.icpsr)) {
            if (first_code[m.icpsr] != m.party_code) ++out.stats.party_switches;
            continue;
        }
        first_code[m.icpsr] = m.party_code;
        name_of[m.icpsr] = m.name;
        if (options.dem_codes.count(m.party_code)) party_of[m.icpsr] = Party::dem;
        else if (options.rep_codes.count(m.party_code)) party_of[m.icpsr] = Party::rep;
    }
    {
        std::unordered_set<int> unknown;
        for (const auto& v : work)
            if (!first_code.count(v.icpsr)) unknown.insert(v.icpsr);
        if (!unknown.empty()) {
            std::string ids;
            std::size_t shown = 0;
            for (int id : unknown) {
                if (shown++ == 5) break;
                ids += (ids.empty() ? "" : ", ") + std::to_string(id);
            }
            raise_data("votes by " + std::to_string(unknown.size()) +
                       " member id(s) absent from the roster (" + ids + ")");
        }
    }
    std::erase_if(work, [&](const WorkingVote& v) { return !party_of.count(v.icpsr); });
    Snapshot after2 = snapshot(work);
    out.stats.rules.push_back(
        make_stage("rule2", "keep only Democrat and Republican members", after1, after2));
    out.stats.rules.push_back(make_stage(
        "rule3", "party switchers keep their at-election party", after2, after2));
    out.stats.rules.push_back(
        make_stage("rule4", "replacement members retained", after2, after2));

    // resolve leadership config for this network
    std::vector<ResolvedLeader> dem_leaders, rep_leaders, speakers;
    std::vector<std::pair<int, std::optional<Date>>> speaker_order;  // (icpsr, start)
    for (const auto& e : leaders) {
        if (e.congress != congress || e.chamber != chamber) continue;
        const int icpsr = resolve_leader_id(e, roster, party_of);
        ResolvedLeader rl{icpsr, e.start, e.end};
        if (e.role == LeaderRole::speaker) {
            speakers.push_back(rl);
            speaker_order.push_back({icpsr, e.start});
        } else {
            (e.party == Party::dem ? dem_leaders : rep_leaders).push_back(rl);
            out.leader_labels[icpsr] = e.party;
        }
    }

    const bool dates_available = [&work] {
        for (const auto& v : work)
            if (!v.date) return false;
        return !work.empty();
    }();
    if (!dates_available && (dem_leaders.size() > 1 || rep_leaders.size() > 1))
        raise_data("multiple leaders configured for congress " + std::to_string(congress) +
                   " but vote dates are unavailable; supply a roll-call date file");

    // rule 5 (using rule 6's date-active leader): drop roll calls where the
    // two party leaders voted the same way
    Snapshot before5 = after2;
    if (!options.include_agreeing && !dem_leaders.empty() && !rep_leaders.empty()) {
        struct RollInfo {
            std::optional<Date> date;
            std::optional<bool> dem_yea, rep_yea;
        };
        std::map<int, RollInfo> rolls;
        for (const auto& v : work) {
            RollInfo& info = rolls[v.rollnumber];
            if (v.date) info.date = v.date;
        }
        auto active_leader = [&](const std::vector<ResolvedLeader>& list,
                                 const std::optional<Date>& date, const char* party_name) {
            const ResolvedLeader* found = nullptr;
            for (const auto& rl : list) {
                if (!rl.active_on(date)) continue;
                if (found)
                    raise_data(std::string("two ") + party_name +
                               " leaders active on the same date in congress " +
                               std::to_string(congress));
                found = &rl;
            }
            if (!found)
                raise_data(std::string("no active ") + party_name + " leader on " +
                           (date ? to_string(*date) : std::string("(no date)")) +
                           " in congress " + std::to_string(congress));
            return found->icpsr;
        };
        std::map<int, std::pair<int, int>> roll_leader_ids;
        for (auto& [roll, info] : rolls) {
            roll_leader_ids[roll] = {active_leader(dem_leaders, info.date, "Democrat"),
                                     active_leader(rep_leaders, info.date, "Republican")};
        }
        for (const auto& v : work) {
            auto& info = rolls[v.rollnumber];
            const auto& [dem_id, rep_id] = roll_leader_ids[v.rollnumber];
            if (v.icpsr == dem_id) info.dem_yea = is_yea(v.cast_code);
            if (v.icpsr == rep_id) info.rep_yea = is_yea(v.cast_code);
        }
        std::unordered_set<int> drop;
        for (const auto& [roll, info] : rolls) {
            if (!info.dem_yea || !info.rep_yea) {
                ++out.stats.leader_vote_missing;
                continue;  // no leader comparison possible: retain
            }
            if (*info.dem_yea == *info.rep_yea) drop.insert(roll);
        }
        out.stats.agreeing_rollcalls = drop.size();
        if (out.stats.leader_vote_missing > 0)
            out.stats.warnings.push_back(std::to_string(out.stats.leader_vote_missing) +
                                         " roll call(s) retained because a leader cast no "
                                         "yea/nay vote on them");
        std::erase_if(work, [&drop](const WorkingVote& v) { return drop.count(v.rollnumber); });
    } else if (!options.include_agreeing) {
        raise_data("leaders config has no Democrat/Republican leader pair for congress " +
                   std::to_string(congress) + " " + to_string(chamber));
    }
    Snapshot after5 = snapshot(work);
    out.stats.rules.push_back(make_stage(
        "rule5",
        options.include_agreeing ? "skipped: agreeing roll calls kept by request"
                                 : "drop roll calls where both party leaders voted the same way",
        before5, after5));
    out.stats.rules.push_back(make_stage(
        "rule6", "leader comparisons use the leader active on the vote date", after5, after5));

    // rule 7: votes of the first Speaker are not considered (House only)
    Snapshot before7 = after5;
    std::optional<int> excluded_speaker;
    if (chamber == Chamber::house && !speakers.empty()) {
        std::stable_sort(speaker_order.begin(), speaker_order.end(),
                         [](const auto& a, const auto& b) {
                             if (a.second && b.second) return *a.second < *b.second;
                             return static_cast<bool>(a.second) && !b.second;
                         });
        excluded_speaker = speaker_order.front().first;
        out.stats.speaker_excluded.push_back(*excluded_speaker);
        std::erase_if(work,
                      [&](const WorkingVote& v) { return v.icpsr == *excluded_speaker; });
    } else if (chamber == Chamber::house) {
        out.stats.warnings.push_back("no speaker configured; rule 7 had no effect");
    }
    Snapshot after7 = snapshot(work);
    out.stats.rules.push_back(make_stage(
        "rule7", "votes of the first Speaker are not considered", before7, after7));

    // materialise the dataset: members surviving rules 1-2 stay in the node
    // set even when every roll call they touched was dropped later
    std::unordered_set<int> member_ids;
    {
        std::vector<WorkingVote> basis;
        for (const auto& v : votes)
            if (v.congress == congress && v.chamber == chamber &&
                (is_yea(v.cast_code) || is_nay(v.cast_code)) && party_of.count(v.icpsr))
                basis.push_back({v.rollnumber, v.icpsr, v.cast_code, v.date});
        for (const auto& v : basis) member_ids.insert(v.icpsr);
        if (excluded_speaker) member_ids.erase(*excluded_speaker);
    }
    std::vector<int> sorted_ids(member_ids.begin(), member_ids.end());
    std::sort(sorted_ids.begin(), sorted_ids.end());
    std::unordered_map<int, std::uint32_t> member_index;
    for (int id : sorted_ids) {
        member_index[id] = static_cast<std::uint32_t>(out.members.size());
        out.members.push_back({id, name_of[id], party_of.at(id)});
    }

    std::map<int, ConsideredRollcall> rolls;
    {
        std::set<std::pair<int, int>> seen;  // (rollnumber, member)
        for (const auto& v : work) {
            if (!seen.insert({v.rollnumber, v.icpsr}).second)
                raise_data("member " + std::to_string(v.icpsr) +
                           " has multiple ballots on roll call " +
                           std::to_string(v.rollnumber) + " of congress " +
                           std::to_string(congress));
            ConsideredRollcall& rc = rolls[v.rollnumber];
            rc.rollnumber = v.rollnumber;
            if (v.date) rc.date = v.date;
            (is_yea(v.cast_code) ? rc.yeas : rc.nays).push_back(member_index.at(v.icpsr));
        }
    }
    out.rollcalls.reserve(rolls.size());
    for (auto& [roll, rc] : rolls) {
        std::sort(rc.yeas.begin(), rc.yeas.end());
        std::sort(rc.nays.begin(), rc.nays.end());
        out.rollcalls.push_back(std::move(rc));
    }

    // leaders must survive as labelled nodes
    for (auto it = out.leader_labels.begin(); it != out.leader_labels.end();) {
        if (!member_ids.count(it->first)) {
            out.stats.warnings.push_back("leader " + std::to_string(it->first) +
                                         " cast no considered vote and is not a node");
            it = out.leader_labels.erase(it);
        } else {
            ++it;
        }
    }
    bool has_dem = false, has_rep = false;
    for (const auto& [id, party] : out.leader_labels) {
        (party == Party::dem ? has_dem : has_rep) = true;
    }
    if (!has_dem || !has_rep)
        raise_data("network for congress " + std::to_string(congress) + " " + to_string(chamber) +
                   " lacks a labelled leader for each party");

    return out;
}

WeightedGraph build_vote_network(const CleanDataset& dataset) {
    const std::size_t m = dataset.members.size();
    if (m == 0) raise_data("empty dataset: no retained members");

    // triangular pair-count accumulator, indexed i<j
    std::vector<std::uint32_t> counts(m * (m - 1) / 2, 0);
    auto tri = [m](std::size_t i, std::size_t j) {
        // requires i < j
        return (i * (2 * m - i - 1)) / 2 + (j - i - 1);
    };
    auto bump_group = [&](const std::vector<std::uint32_t>& group) {
        for (std::size_t a = 0; a < group.size(); ++a)
            for (std::size_t b = a + 1; b < group.size(); ++b)
                ++counts[tri(group[a], group[b])];
    };
    for (const auto& rc : dataset.rollcalls) {
        bump_group(rc.yeas);
        bump_group(rc.nays);
    }

    std::vector<NodeId> ids(m);
    for (std::size_t i = 0; i < m; ++i) ids[i] = std::to_string(dataset.members[i].icpsr);

    std::vector<Edge> edges;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const std::uint32_t c = counts[tri(i, j)];
            if (c > 0) edges.push_back({ids[i], ids[j], static_cast<double>(c)});
        }
    }

    std::vector<std::pair<NodeId, Label>> labels;
    for (const auto& [icpsr, party] : dataset.leader_labels)
        labels.push_back({std::to_string(icpsr), to_string(party)});

    return WeightedGraph::build(edges, labels, ids);
}

std::string cleaning_stats_json(const CleaningStats& stats) {
    nlohmann::ordered_json j;
    j["congress"] = stats.congress;
    j["chamber"] = to_string(stats.chamber);
    j["raw"] = {{"members", stats.raw_members},
                {"votes", stats.raw_votes},
                {"rollcalls", stats.raw_rollcalls}};
    j["rules"] = nlohmann::ordered_json::array();
    for (const auto& r : stats.rules) {
        nlohmann::ordered_json stage;
        stage["rule"] = r.rule;
        stage["summary"] = r.summary;
        stage["members_before"] = r.members_before;
        stage["members_after"] = r.members_after;
        stage["member_reduction_pct"] = r.member_reduction_pct();
        stage["votes_before"] = r.votes_before;
        stage["votes_after"] = r.votes_after;
        stage["vote_reduction_pct"] = r.vote_reduction_pct();
        stage["rollcalls_before"] = r.rollcalls_before;
        stage["rollcalls_after"] = r.rollcalls_after;
        j["rules"].push_back(stage);
    }
    j["agreeing_rollcalls"] = stats.agreeing_rollcalls;
    j["leader_vote_missing"] = stats.leader_vote_missing;
    j["party_switches"] = stats.party_switches;
    j["speaker_excluded"] = stats.speaker_excluded;
    j["warnings"] = stats.warnings;
    return j.dump(2) + "\n";
}

std::map<NodeId, Label> dataset_truth(const CleanDataset& dataset) {
    std::map<NodeId, Label> truth;
    for (const auto& m : dataset.members)
        truth[std::to_string(m.icpsr)] = to_string(m.party);
    return truth;
}

}  // namespace glass
