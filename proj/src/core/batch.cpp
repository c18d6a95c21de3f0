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

#include "core/batch.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "core/csv.hpp"
#include "core/error.hpp"
#include "core/metrics.hpp"
#include "core/stats.hpp"

namespace glass {

std::vector<std::string> DataPaths::present() const {
    std::vector<std::string> out;
    for (const auto& p : {members_csv, votes_csv, rollcalls_csv, leaders_csv})
        if (!p.empty()) out.push_back(p);
    return out;
}

namespace {

void attach_dates(std::vector<VoteRecord>& votes,
                  const std::map<std::tuple<int, int, int>, Date>& dates) {
    if (dates.empty()) return;
    for (auto& v : votes) {
        if (v.date) continue;
        auto it = dates.find({v.congress, static_cast<int>(v.chamber), v.rollnumber});
        if (it != dates.end()) v.date = it->second;
    }
}

}  // namespace

CleanDataset ingest_network(const IngestRequest& request) {
    const int congress = request.congress;
    const Chamber chamber = request.chamber;
    auto filter = [congress, chamber](int c, Chamber ch) {
        return c == congress && ch == chamber;
    };

    std::vector<MemberRecord> members = parse_members(request.paths.members_csv, filter);
    std::vector<VoteRecord> votes = parse_votes(request.paths.votes_csv, filter);
    if (!request.paths.rollcalls_csv.empty())
        attach_dates(votes, parse_rollcall_dates(request.paths.rollcalls_csv, filter));
    std::vector<LeaderEntry> leaders = parse_leaders(request.paths.leaders_csv);

    return apply_cleaning_rules(members, votes, leaders, request.cleaning, congress, chamber);
}

NetworkEvaluation evaluate_dataset(const CleanDataset& dataset, const FilterPolicy& filter,
                                   bool break_ties, const Label& positive) {
    NetworkEvaluation ev;
    ev.congress = dataset.congress;
    ev.chamber = dataset.chamber;
    ev.cleaning = dataset.stats;
    ev.considered_rollcalls = dataset.rollcalls.size();

    const WeightedGraph graph = build_vote_network(dataset);
    ev.n = graph.node_count();
    ev.ell = graph.labelled_count();
    ev.u = graph.unlabelled_count();
    for (const auto& [id, party] : dataset.leader_labels)
        (party == Party::dem ? ev.dem_leaders : ev.rep_leaders) += 1;
    const std::map<NodeId, Label> truth_all = dataset_truth(dataset);
    for (const auto& m : dataset.members) {
        if (dataset.leader_labels.count(m.icpsr)) continue;
        (m.party == Party::dem ? ev.dem_members : ev.rep_members) += 1;
    }

    GlassOptions options;
    options.k1 = positive;
    options.truth = truth_all;
    options.filter = filter;
    options.break_ties = break_ties;

    const GlassResult result = glass_run(graph, options);
    ev.alpha = result.alpha;
    ev.m = result.m;
    ev.stranded = result.stranded.size();
    ev.warnings = result.warnings;

    for (std::size_t i = 0; i < result.distribution.node_ids.size(); ++i)
        ev.probs[result.distribution.node_ids[i]] = result.distribution.p_k1[i];
    for (const auto& [id, label] : result.estimates) {
        ev.estimates[id] = label;
        ev.truth[id] = truth_all.at(id);
    }
    if (ev.estimates.empty()) raise_data("no nodes were labelled");

    const ConfusionMatrix cm_pos = confusion_matrix(ev.estimates, ev.truth, positive);
    ev.f1_dem_pos = f1_score(cm_pos);
    const Label other = result.distribution.k2 == positive ? result.distribution.k1
                                                           : result.distribution.k2;
    const ConfusionMatrix cm_neg = confusion_matrix(ev.estimates, ev.truth, other);
    ev.f1_rep_pos = f1_score(cm_neg);
    ev.macro_f1 = 0.5 * (ev.f1_dem_pos + ev.f1_rep_pos);

    // standardised separation between the true groups
    try {
        std::vector<double> probs;
        std::vector<bool> is_positive;
        for (const auto& [id, p] : ev.probs) {
            probs.push_back(p);
            is_positive.push_back(ev.truth.at(id) == positive);
        }
        const std::vector<double> z = standardise_probs(probs, is_positive);
        ev.gap = separation_gap(z, is_positive);
    } catch (const Error& e) {
        ev.warnings.push_back(std::string("separation gap unavailable: ") + e.what());
    }

    ev.ok = true;
    return ev;
}

namespace {

struct CompactVote {
    int rollnumber;
    int icpsr;
    int cast_code;
};

}  // namespace

EvaluationReport batch_analyse(const BatchRequest& request) {
    std::set<int> congress_set(request.congresses.begin(), request.congresses.end());
    std::set<Chamber> chamber_set(request.chambers.begin(), request.chambers.end());
    if (congress_set.empty()) raise_invalid("batch: no congresses selected");
    if (chamber_set.empty()) raise_invalid("batch: no chambers selected");

    auto filter = [&](int c, Chamber ch) {
        return congress_set.count(c) > 0 && chamber_set.count(ch) > 0;
    };

    const std::vector<MemberRecord> members = parse_members(request.paths.members_csv, filter);
    const std::vector<LeaderEntry> leaders = parse_leaders(request.paths.leaders_csv);
    std::map<std::tuple<int, int, int>, Date> dates;
    if (!request.paths.rollcalls_csv.empty())
        dates = parse_rollcall_dates(request.paths.rollcalls_csv, filter);

    // one pass over the vote file, rows grouped per network
    std::map<std::pair<int, Chamber>, std::vector<CompactVote>> grouped;
    stream_votes(request.paths.votes_csv, filter, [&grouped](const VoteRecord& v) {
        grouped[{v.congress, v.chamber}].push_back({v.rollnumber, v.icpsr, v.cast_code});
    });

    std::vector<std::pair<int, Chamber>> jobs_list;
    for (int c : congress_set)
        for (Chamber ch : chamber_set) jobs_list.push_back({c, ch});
    std::sort(jobs_list.begin(), jobs_list.end());

    EvaluationReport report;
    report.networks.resize(jobs_list.size());

    unsigned jobs = request.jobs > 0 ? static_cast<unsigned>(request.jobs)
                                     : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, jobs_list.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs_list.size()) return;
            const auto [congress, chamber] = jobs_list[i];
            NetworkEvaluation& slot = report.networks[i];
            slot.congress = congress;
            slot.chamber = chamber;
            try {
                auto it = grouped.find({congress, chamber});
                if (it == grouped.end())
                    raise_data("no vote records for congress " + std::to_string(congress) + " " +
                               to_string(chamber));
                std::vector<VoteRecord> votes;
                votes.reserve(it->second.size());
                for (const CompactVote& cv : it->second) {
                    VoteRecord v;
                    v.congress = congress;
                    v.chamber = chamber;
                    v.rollnumber = cv.rollnumber;
                    v.icpsr = cv.icpsr;
                    v.cast_code = cv.cast_code;
                    if (!dates.empty()) {
                        auto dit = dates.find({congress, static_cast<int>(chamber), cv.rollnumber});
                        if (dit != dates.end()) v.date = dit->second;
                    }
                    votes.push_back(v);
                }
                CleanDataset dataset = apply_cleaning_rules(members, votes, leaders,
                                                            request.cleaning, congress, chamber);
                slot = evaluate_dataset(dataset, request.filter, request.break_ties,
                                        request.positive);
            } catch (const Error& e) {
                slot.ok = false;
                slot.error = e.what();
            } catch (const std::exception& e) {
                slot.ok = false;
                slot.error = std::string("unexpected: ") + e.what();
            }
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return report;
}

namespace {

nlohmann::ordered_json network_json(const NetworkEvaluation& ev) {
    nlohmann::ordered_json j;
    j["congress"] = ev.congress;
    j["chamber"] = to_string(ev.chamber);
    if (!ev.ok) {
        j["ok"] = false;
        j["error"] = ev.error;
        return j;
    }
    j["ok"] = true;
    j["n"] = ev.n;
    j["u"] = ev.u;
    j["ell"] = ev.ell;
    j["m"] = ev.m;
    j["f1_dem_pos"] = ev.f1_dem_pos;
    j["f1_rep_pos"] = ev.f1_rep_pos;
    j["macro_f1"] = ev.macro_f1;
    if (ev.gap) j["gap"] = *ev.gap;
    else j["gap"] = nullptr;
    j["stranded_count"] = ev.stranded;
    j["warnings"] = ev.warnings;
    j["dem_members"] = ev.dem_members;
    j["rep_members"] = ev.rep_members;
    j["dem_leaders"] = ev.dem_leaders;
    j["rep_leaders"] = ev.rep_leaders;
    j["considered_rollcalls"] = ev.considered_rollcalls;
    j["alpha"] = std::isfinite(ev.alpha) ? nlohmann::ordered_json(ev.alpha)
                                         : nlohmann::ordered_json(nullptr);
    j["cleaning"] = nlohmann::ordered_json::parse(cleaning_stats_json(ev.cleaning));
    return j;
}

}  // namespace

std::string report_json(const EvaluationReport& report, const std::string& config_json,
                        const std::string& input_digest) {
    nlohmann::ordered_json j;
    j["run_config"] = nlohmann::ordered_json::parse(config_json);
    j["input_hash"] = input_digest;
    j["networks"] = nlohmann::ordered_json::array();
    for (const auto& ev : report.networks) j["networks"].push_back(network_json(ev));
    return j.dump(2) + "\n";
}

std::string report_series_csv(const EvaluationReport& report, const std::string& config_json,
                              const std::string& input_digest) {
    std::ostringstream out;
    out << "# run_config=" << config_json << " input_hash=" << input_digest << "\n";
    out << "congress,chamber,f1,gap\n";
    for (const auto& ev : report.networks) {
        if (!ev.ok) continue;
        out << ev.congress << ',' << to_string(ev.chamber) << ',' << format_double(ev.f1_dem_pos)
            << ',';
        if (ev.gap) out << format_double(*ev.gap);
        out << '\n';
    }
    return out.str();
}

SensitivityResult sensitivity_analysis(const IngestRequest& request, const FilterPolicy& filter,
                                       bool break_ties, const Label& positive) {
    SensitivityResult res;

    IngestRequest arm = request;
    arm.cleaning.include_agreeing = false;
    res.without_agreeing = evaluate_dataset(ingest_network(arm), filter, break_ties, positive);

    arm.cleaning.include_agreeing = true;
    res.with_agreeing = evaluate_dataset(ingest_network(arm), filter, break_ties, positive);

    std::vector<double> a, b;
    for (const auto& [id, p] : res.without_agreeing.probs) {
        auto it = res.with_agreeing.probs.find(id);
        if (it == res.with_agreeing.probs.end()) continue;
        a.push_back(p);
        b.push_back(it->second);
    }
    res.paired_nodes = a.size();
    if (a.size() < 2) raise_data("sensitivity: fewer than two paired nodes");
    res.pearson = pearson(a, b);
    res.spearman = spearman(a, b);
    return res;
}

std::string sensitivity_json(const SensitivityResult& result, const std::string& config_json,
                             const std::string& input_digest) {
    nlohmann::ordered_json j;
    j["run_config"] = nlohmann::ordered_json::parse(config_json);
    j["input_hash"] = input_digest;
    j["pearson"] = result.pearson;
    j["spearman"] = result.spearman;
    j["paired_nodes"] = result.paired_nodes;
    j["without_agreeing"] = network_json(result.without_agreeing);
    j["with_agreeing"] = network_json(result.with_agreeing);
    return j.dump(2) + "\n";
}

std::string sensitivity_paired_csv(const SensitivityResult& result,
                                   const std::string& config_json,
                                   const std::string& input_digest) {
    std::ostringstream out;
    out << "# run_config=" << config_json << " input_hash=" << input_digest << "\n";
    out << "node,truth,prob_without_agreeing,prob_with_agreeing\n";
    for (const auto& [id, p] : result.without_agreeing.probs) {
        auto it = result.with_agreeing.probs.find(id);
        if (it == result.with_agreeing.probs.end()) continue;
        const auto t = result.without_agreeing.truth.find(id);
        out << csv_escape(id) << ',' << (t != result.without_agreeing.truth.end() ? t->second : "")
            << ',' << format_double(p) << ',' << format_double(it->second) << '\n';
    }
    return out.str();
}

}  // namespace glass
