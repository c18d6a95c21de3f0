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
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace glass {

/// Node identifiers are opaque strings. Ordering is numeric-aware so that
/// "9" < "10" for integer-like ids, which keeps matrix row order intuitive
/// for numeric datasets; the order is total either way.
using NodeId = std::string;
using Label = std::string;

bool node_id_less(const NodeId& a, const NodeId& b);

struct Edge {
    NodeId a;
    NodeId b;
    double weight;
};

/// Which unlabelled nodes can reach the labelled set.
struct Reachability {
    std::vector<std::size_t> reachable;  // unlabelled node indices, ascending
    std::vector<std::size_t> stranded;   // unlabelled, no path to any label
};

/// Immutable undirected graph with positive edge weights and a partial
/// label map. Construction sums duplicate undirected pairs, rejects
/// self-loops and non-positive weights, and fixes node order to the sorted
/// order of ids so downstream matrices are reproducible.
class WeightedGraph {
  public:
    WeightedGraph() = default;  // empty graph

    /// Node set is the union of edge endpoints and `extra_nodes`; the latter
    /// lets callers keep isolated nodes (they surface as stranded later
    /// instead of silently vanishing).
    static WeightedGraph build(const std::vector<Edge>& edges,
                               const std::vector<std::pair<NodeId, Label>>& labels,
                               const std::vector<NodeId>& extra_nodes = {});

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t labelled_count() const { return labelled_count_; }
    std::size_t unlabelled_count() const { return nodes_.size() - labelled_count_; }
    std::size_t edge_count() const { return edge_count_; }

    const std::vector<NodeId>& nodes() const { return nodes_; }
    const NodeId& node(std::size_t idx) const { return nodes_[idx]; }
    std::optional<std::size_t> index_of(const NodeId& id) const;

    /// nullptr when the node is unlabelled.
    const Label* label_of(std::size_t idx) const;

    /// Neighbours as (node index, weight), ascending by index.
    const std::vector<std::pair<std::size_t, double>>& neighbours(std::size_t idx) const {
        return adjacency_[idx];
    }
    double weighted_degree(std::size_t idx) const { return weighted_degree_[idx]; }

    /// Distinct label values, sorted.
    std::vector<Label> label_values() const;

    Reachability reachable_to_labelled() const;

    /// Subgraph on the given node indices (edges between kept nodes only;
    /// labels carried over). Node order stays sorted.
    WeightedGraph induced_subgraph(const std::vector<std::size_t>& keep) const;

  private:
    std::vector<NodeId> nodes_;
    std::unordered_map<NodeId, std::size_t> index_;
    std::vector<std::optional<Label>> labels_;
    std::vector<std::vector<std::pair<std::size_t, double>>> adjacency_;
    std::vector<double> weighted_degree_;
    std::size_t labelled_count_ = 0;
    std::size_t edge_count_ = 0;
};

/// Edge-list file: one `node_a,node_b,weight` per line, no header.
/// Label file: one `node,label` per line, no header. Blank lines and lines
/// starting with '#' are ignored in both.
std::vector<Edge> read_edge_file(const std::string& path);
std::vector<std::pair<NodeId, Label>> read_label_file(const std::string& path);
WeightedGraph load_graph(const std::string& edges_path,
                         const std::optional<std::string>& labels_path);
std::string edges_to_text(const WeightedGraph& g);
std::string labels_to_text(const WeightedGraph& g);

}  // namespace glass
