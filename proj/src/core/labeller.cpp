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

#include "core/labeller.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "core/csv.hpp"
#include "core/error.hpp"
#include "core/stats.hpp"

namespace glass {

FilterPolicy FilterPolicy::iqr(double k) {
    if (k < 0.0) raise_invalid("iqr filter requires k >= 0");
    FilterPolicy p;
    p.kind = Kind::iqr;
    p.k = k;
    return p;
}

FilterPolicy FilterPolicy::parse(const std::string& text) {
    if (text == "off" || text.empty()) return off();
    if (text.rfind("iqr:", 0) == 0) {
        errno = 0;
        char* end = nullptr;
        const double k = std::strtod(text.c_str() + 4, &end);
        if (end == text.c_str() + 4 || *end != '\0')
            raise_invalid("bad filter spec '" + text + "', expected off or iqr:K");
        return iqr(k);
    }
    raise_invalid("bad filter spec '" + text + "', expected off or iqr:K");
}

std::string FilterPolicy::to_string() const {
    if (kind == Kind::off) return "off";
    return "iqr:" + format_double(k);
}

FilterDecision filter_by_time(const std::vector<double>& times, const FilterPolicy& policy) {
    FilterDecision d;
    d.cutoff = std::numeric_limits<double>::infinity();
    if (policy.kind == FilterPolicy::Kind::off || times.empty()) {
        d.retained.resize(times.size());
        for (std::size_t i = 0; i < times.size(); ++i) d.retained[i] = i;
        return d;
    }
    const double q1 = quantile(times, 0.25);
    const double q3 = quantile(times, 0.75);
    d.cutoff = q3 + policy.k * (q3 - q1);
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] > d.cutoff) d.removed.push_back(i);
        else d.retained.push_back(i);
    }
    return d;
}

LabelDistribution label_distribution(const Matrix& h, const std::vector<NodeId>& transient_ids,
                                     const std::vector<NodeId>& absorbing_ids,
                                     const std::map<NodeId, Label>& absorbing_labels,
                                     const Label& k1) {
    if (h.rows() != transient_ids.size() || h.cols() != absorbing_ids.size())
        raise_invalid("label_distribution: shape mismatch");

    std::set<Label> values;
    for (const NodeId& id : absorbing_ids) {
        auto it = absorbing_labels.find(id);
        if (it == absorbing_labels.end())
            raise_invalid("absorbing node '" + id + "' has no label");
        values.insert(it->second);
    }
    if (values.size() > 2)
        raise_invalid("binary labelling requires at most two label values, got " +
                      std::to_string(values.size()));

    LabelDistribution dist;
    if (k1.empty()) {
        if (values.empty()) raise_invalid("no absorbing labels present");
        dist.k1 = *values.begin();
    } else {
        dist.k1 = k1;
        if (!absorbing_ids.empty() && !values.count(k1))
            raise_invalid("label '" + k1 + "' does not occur among the absorbing nodes");
    }
    for (const Label& v : values)
        if (v != dist.k1) dist.k2 = v;

    dist.node_ids = transient_ids;
    dist.p_k1.assign(transient_ids.size(), 0.0);
    for (std::size_t i = 0; i < h.rows(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < h.cols(); ++j) {
            if (absorbing_labels.at(absorbing_ids[j]) == dist.k1) acc += h(i, j);
        }
        dist.p_k1[i] = acc;
    }
    return dist;
}

double threshold_alpha(std::vector<double> probs, std::size_t m) {
    if (m > probs.size())
        raise_invalid("threshold count m = " + std::to_string(m) + " exceeds node count " +
                      std::to_string(probs.size()));
    if (m == 0) return -std::numeric_limits<double>::infinity();
    std::sort(probs.begin(), probs.end());
    return probs[m - 1];
}

std::vector<Label> classify(const LabelDistribution& dist, double alpha) {
    std::vector<Label> out(dist.node_ids.size());
    for (std::size_t i = 0; i < dist.node_ids.size(); ++i)
        out[i] = dist.p_k1[i] > alpha ? dist.k1 : dist.k2;
    return out;
}

namespace {

std::size_t resolve_m(const GlassOptions& options, const LabelDistribution& dist) {
    if (options.m && !options.truth.empty())
        raise_invalid("supply either an explicit m or truth labels, not both");
    if (options.m) {
        if (*options.m > dist.node_ids.size())
            raise_invalid("m = " + std::to_string(*options.m) + " exceeds retained node count " +
                          std::to_string(dist.node_ids.size()));
        return *options.m;
    }
    if (options.truth.empty())
        raise_invalid("no m source: set m or provide truth labels");
    std::size_t count = 0;
    for (const NodeId& id : dist.node_ids) {
        auto it = options.truth.find(id);
        if (it == options.truth.end())
            raise_invalid("truth label missing for node '" + id + "'");
        if (it->second == dist.k2) ++count;
        else if (it->second != dist.k1)
            raise_invalid("truth label '" + it->second + "' for node '" + id +
                          "' is neither '" + dist.k1 + "' nor '" + dist.k2 + "'");
    }
    return count;
}

}  // namespace

GlassResult glass_run(const WeightedGraph& graph, const GlassOptions& options) {
    if (graph.labelled_count() == 0)
        raise_invalid("labelling requires at least one labelled node");

    GlassResult result;

    std::map<NodeId, Label> absorbing_labels;
    for (std::size_t i = 0; i < graph.node_count(); ++i)
        if (const Label* l = graph.label_of(i)) absorbing_labels[graph.node(i)] = *l;

    if (graph.unlabelled_count() == 0) {
        // nothing to estimate
        const auto values = graph.label_values();
        result.distribution.k1 = options.k1.empty() ? values.front() : options.k1;
        for (const auto& v : values)
            if (v != result.distribution.k1) result.distribution.k2 = v;
        result.alpha = -std::numeric_limits<double>::infinity();
        return result;
    }

    // exclude nodes that cannot reach any labelled node
    Reachability reach = graph.reachable_to_labelled();
    const WeightedGraph* working = &graph;
    WeightedGraph reduced;
    if (!reach.stranded.empty()) {
        for (std::size_t idx : reach.stranded) result.stranded.push_back(graph.node(idx));
        result.warnings.push_back(std::to_string(reach.stranded.size()) +
                                  " unlabelled node(s) cannot reach any labelled node; "
                                  "they are reported unlabelled");
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < graph.node_count(); ++i)
            if (graph.label_of(i)) keep.push_back(i);
        keep.insert(keep.end(), reach.reachable.begin(), reach.reachable.end());
        std::sort(keep.begin(), keep.end());
        reduced = graph.induced_subgraph(keep);
        working = &reduced;
    }

    if (working->unlabelled_count() == 0) {
        const auto values = graph.label_values();
        result.distribution.k1 = options.k1.empty() ? values.front() : options.k1;
        for (const auto& v : values)
            if (v != result.distribution.k1) result.distribution.k2 = v;
        result.alpha = -std::numeric_limits<double>::infinity();
        return result;
    }

    AbsorbingChain chain = to_absorbing_chain(*working);
    TimeResult times = expected_absorption_times(chain);
    result.times.reserve(chain.transient_count());
    for (std::size_t i = 0; i < chain.transient_count(); ++i)
        result.times.push_back({chain.transient_ids[i], times.t[i]});

    FilterDecision filter = filter_by_time(times.t, options.filter);
    result.filter_cutoff = filter.cutoff;

    const AbsorbingChain* final_chain = &chain;
    AbsorbingChain refit;
    if (!filter.removed.empty()) {
        for (std::size_t i : filter.removed)
            result.filtered_out.push_back(chain.transient_ids[i]);
        result.warnings.push_back("time filter " + options.filter.to_string() + " removed " +
                                  std::to_string(filter.removed.size()) + " node(s)");

        std::set<NodeId> drop(result.filtered_out.begin(), result.filtered_out.end());
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < working->node_count(); ++i)
            if (!drop.count(working->node(i))) keep.push_back(i);
        WeightedGraph filtered = working->induced_subgraph(keep);

        // filtering can strand survivors; exclude them too
        Reachability reach2 = filtered.reachable_to_labelled();
        if (!reach2.stranded.empty()) {
            std::vector<std::size_t> keep2;
            for (std::size_t i = 0; i < filtered.node_count(); ++i)
                if (filtered.label_of(i)) keep2.push_back(i);
            keep2.insert(keep2.end(), reach2.reachable.begin(), reach2.reachable.end());
            std::sort(keep2.begin(), keep2.end());
            for (std::size_t idx : reach2.stranded) result.stranded.push_back(filtered.node(idx));
            result.warnings.push_back(std::to_string(reach2.stranded.size()) +
                                      " node(s) stranded by the time filter");
            filtered = filtered.induced_subgraph(keep2);
        }
        reduced = std::move(filtered);
        working = &reduced;
        refit = to_absorbing_chain(*working);
        final_chain = &refit;
    }

    ProbabilityResult probs = absorption_probabilities(*final_chain);
    result.distribution = label_distribution(probs.h, final_chain->transient_ids,
                                             final_chain->absorbing_ids, absorbing_labels,
                                             options.k1);

    result.m = resolve_m(options, result.distribution);
    result.alpha = threshold_alpha(result.distribution.p_k1, result.m);
    std::vector<Label> estimates = classify(result.distribution, result.alpha);

    const std::size_t retained = result.distribution.node_ids.size();
    std::size_t k1_count = 0;
    for (const Label& l : estimates)
        if (l == result.distribution.k1) ++k1_count;

    if (k1_count != retained - result.m) {
        for (std::size_t i = 0; i < retained; ++i)
            if (result.distribution.p_k1[i] == result.alpha)
                result.tied.push_back(result.distribution.node_ids[i]);
        std::ostringstream warn;
        warn << "ties at alpha broke the count contract: expected " << (retained - result.m)
             << " '" << result.distribution.k1 << "' assignments, got " << k1_count << " ("
             << result.tied.size() << " tied node(s))";
        result.warnings.push_back(warn.str());
        if (options.break_ties) {
            // deterministic repair: the m smallest by (probability, id) get k2
            std::vector<std::size_t> order(retained);
            for (std::size_t i = 0; i < retained; ++i) order[i] = i;
            std::sort(order.begin(), order.end(), [&result](std::size_t a, std::size_t b) {
                if (result.distribution.p_k1[a] != result.distribution.p_k1[b])
                    return result.distribution.p_k1[a] < result.distribution.p_k1[b];
                return node_id_less(result.distribution.node_ids[a],
                                    result.distribution.node_ids[b]);
            });
            for (std::size_t r = 0; r < retained; ++r)
                estimates[order[r]] = r < result.m ? result.distribution.k2
                                                   : result.distribution.k1;
            result.warnings.push_back("ties broken by node id to restore the split");
        }
    }

    result.estimates.reserve(retained);
    for (std::size_t i = 0; i < retained; ++i)
        result.estimates.push_back({result.distribution.node_ids[i], estimates[i]});
    return result;
}

std::string labelling_csv(const WeightedGraph& graph, const GlassResult& result) {
    std::unordered_map<NodeId, double> prob;
    std::unordered_map<NodeId, Label> estimate;
    std::unordered_map<NodeId, double> time;
    for (std::size_t i = 0; i < result.distribution.node_ids.size(); ++i)
        prob[result.distribution.node_ids[i]] = result.distribution.p_k1[i];
    for (const auto& [id, label] : result.estimates) estimate[id] = label;
    for (const auto& [id, t] : result.times) time[id] = t;

    std::ostringstream out;
    out << "node,prob_k1,t,estimate\n";
    for (std::size_t i = 0; i < graph.node_count(); ++i) {
        if (graph.label_of(i)) continue;
        const NodeId& id = graph.node(i);
        out << csv_escape(id) << ',';
        if (auto it = prob.find(id); it != prob.end()) out << format_double(it->second);
        out << ',';
        if (auto it = time.find(id); it != time.end()) out << format_double(it->second);
        out << ',';
        if (auto it = estimate.find(id); it != estimate.end()) out << csv_escape(it->second);
        out << '\n';
    }
    return out.str();
}

std::string labelling_json(const GlassResult& result, const std::string& config_json,
                           const std::string& input_digest) {
    nlohmann::ordered_json j;
    j["run_config"] = nlohmann::ordered_json::parse(config_json);
    j["input_hash"] = input_digest;
    j["k1"] = result.distribution.k1;
    j["k2"] = result.distribution.k2;
    j["m"] = result.m;
    j["alpha"] = std::isfinite(result.alpha) ? nlohmann::ordered_json(result.alpha)
                                             : nlohmann::ordered_json(nullptr);
    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    std::unordered_map<NodeId, double> time;
    for (const auto& [id, t] : result.times) time[id] = t;
    for (std::size_t i = 0; i < result.distribution.node_ids.size(); ++i) {
        nlohmann::ordered_json n;
        const NodeId& id = result.distribution.node_ids[i];
        n["node"] = id;
        n["prob_k1"] = result.distribution.p_k1[i];
        if (auto it = time.find(id); it != time.end()) n["t"] = it->second;
        n["estimate"] = result.estimates[i].second;
        nodes.push_back(n);
    }
    j["nodes"] = nodes;
    j["filtered_out"] = result.filtered_out;
    j["stranded"] = result.stranded;
    j["tied"] = result.tied;
    j["warnings"] = result.warnings;
    return j.dump(2) + "\n";
}

}  // namespace glass
