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

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/chain.hpp"
#include "core/graph.hpp"

namespace glass {

/// Optional exclusion of nodes whose expected absorption time is extreme
/// relative to the rest. `iqr(k)` drops nodes with t > Q3 + k * IQR; `off`
/// keeps everything.
struct FilterPolicy {
    enum class Kind { off, iqr };
    Kind kind = Kind::off;
    double k = 1.5;

    static FilterPolicy off() { return {}; }
    static FilterPolicy iqr(double k);
    /// Accepts "off" or "iqr:K".
    static FilterPolicy parse(const std::string& text);
    std::string to_string() const;
};

struct FilterDecision {
    std::vector<std::size_t> retained;  // indices into the input vector
    std::vector<std::size_t> removed;
    double cutoff;  // +inf when nothing is filtered
};

FilterDecision filter_by_time(const std::vector<double>& times, const FilterPolicy& policy);

/// Per-node two-class distribution aggregated from absorption
/// probabilities: P(Y = k1) sums the h-columns of the absorbing nodes that
/// carry label k1. P(Y = k2) is the complement.
struct LabelDistribution {
    Label k1;
    Label k2;  // empty when the graph carries a single label value
    std::vector<NodeId> node_ids;
    std::vector<double> p_k1;
};

/// `absorbing_labels` must cover every absorbing id with one of at most two
/// label values. When `k1` is empty the lexicographically smaller label is
/// used as k1.
LabelDistribution label_distribution(const Matrix& h, const std::vector<NodeId>& transient_ids,
                                     const std::vector<NodeId>& absorbing_ids,
                                     const std::map<NodeId, Label>& absorbing_labels,
                                     const Label& k1 = {});

/// m-th smallest probability (1-indexed); m = 0 yields -infinity so that
/// every node clears the threshold.
double threshold_alpha(std::vector<double> probs, std::size_t m);

/// Strict-inequality rule: label k1 iff P(Y = k1) > alpha.
std::vector<Label> classify(const LabelDistribution& dist, double alpha);

struct GlassOptions {
    /// Count of nodes to assign the k2 label. Exactly one source: an
    /// explicit value, or (when truth is non-empty) the number of retained
    /// nodes whose true label is k2.
    std::optional<std::size_t> m;
    std::map<NodeId, Label> truth;

    Label k1;  // empty -> smaller label value of the graph
    FilterPolicy filter;
    /// Restores the (u' - m)/m split under probability ties at alpha by
    /// ordering tied nodes by id; off by default, matching the strict rule.
    bool break_ties = false;
};

struct GlassResult {
    LabelDistribution distribution;                 // retained nodes only
    double alpha = 0.0;
    std::size_t m = 0;
    std::vector<std::pair<NodeId, Label>> estimates;  // retained nodes, sorted
    std::vector<NodeId> filtered_out;                 // removed by the time filter
    std::vector<NodeId> stranded;                     // no path to any labelled node
    std::vector<std::pair<NodeId, double>> times;     // pre-filter expected times
    double filter_cutoff = 0.0;
    std::vector<NodeId> tied;  // nodes at alpha when ties break the count contract
    std::vector<std::string> warnings;
};

/// The full pipeline: chain construction, expected times, optional time
/// filter (with chain recomputation on the retained subgraph), absorption
/// probabilities, label distribution, order-statistic threshold, binary
/// classification.
GlassResult glass_run(const WeightedGraph& graph, const GlassOptions& options);

/// Plot-ready per-node table: `node,prob_k1,t,estimate` with a header row.
/// Filtered or stranded nodes keep whatever columns are defined for them.
std::string labelling_csv(const WeightedGraph& graph, const GlassResult& result);

/// Full result serialisation with the run configuration and input digest
/// embedded.
std::string labelling_json(const GlassResult& result, const std::string& config_json,
                           const std::string& input_digest);

}  // namespace glass
