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

#include "core/graph.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <cctype>
#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "core/csv.hpp"
#include "core/error.hpp"

namespace glass {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

bool node_id_less(const NodeId& a, const NodeId& b) {
    const bool na = all_digits(a), nb = all_digits(b);
    if (na != nb) return na;  // numeric ids order before everything else
    if (na && nb) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
    return a < b;
}

WeightedGraph WeightedGraph::build(const std::vector<Edge>& edges,
                                   const std::vector<std::pair<NodeId, Label>>& labels,
                                   const std::vector<NodeId>& extra_nodes) {
    std::set<NodeId, bool (*)(const NodeId&, const NodeId&)> ids(node_id_less);
    for (const Edge& e : edges) {
        if (e.a == e.b) raise_invalid("self-loop on node '" + e.a + "'");
        if (!(e.weight > 0.0))
            raise_invalid("non-positive edge weight " + format_double(e.weight) + " on (" + e.a +
                          ", " + e.b + ")");
        ids.insert(e.a);
        ids.insert(e.b);
    }
    ids.insert(extra_nodes.begin(), extra_nodes.end());

    WeightedGraph g;
    g.nodes_.assign(ids.begin(), ids.end());
    g.index_.reserve(g.nodes_.size());
    for (std::size_t i = 0; i < g.nodes_.size(); ++i) g.index_[g.nodes_[i]] = i;

    g.labels_.assign(g.nodes_.size(), std::nullopt);
    for (const auto& [id, label] : labels) {
        auto it = g.index_.find(id);
        if (it == g.index_.end()) raise_invalid("label on unknown node '" + id + "'");
        if (g.labels_[it->second] && *g.labels_[it->second] != label)
            raise_invalid("conflicting labels for node '" + id + "'");
        if (!g.labels_[it->second]) ++g.labelled_count_;
        g.labels_[it->second] = label;
    }

    // accumulate duplicate undirected pairs
    std::map<std::pair<std::size_t, std::size_t>, double> acc;
    for (const Edge& e : edges) {
        std::size_t i = g.index_[e.a], j = g.index_[e.b];
        if (j < i) std::swap(i, j);
        acc[{i, j}] += e.weight;
    }

    g.adjacency_.assign(g.nodes_.size(), {});
    g.weighted_degree_.assign(g.nodes_.size(), 0.0);
    for (const auto& [pair, w] : acc) {
        g.adjacency_[pair.first].emplace_back(pair.second, w);
        g.adjacency_[pair.second].emplace_back(pair.first, w);
        g.weighted_degree_[pair.first] += w;
        g.weighted_degree_[pair.second] += w;
    }
    for (auto& nbrs : g.adjacency_) std::sort(nbrs.begin(), nbrs.end());
    g.edge_count_ = acc.size();
    return g;
}

std::optional<std::size_t> WeightedGraph::index_of(const NodeId& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

const Label* WeightedGraph::label_of(std::size_t idx) const {
    const auto& slot = labels_[idx];
    return slot ? &*slot : nullptr;
}

std::vector<Label> WeightedGraph::label_values() const {
    std::set<Label> vals;
    for (const auto& slot : labels_)
        if (slot) vals.insert(*slot);
    return {vals.begin(), vals.end()};
}

Reachability WeightedGraph::reachable_to_labelled() const {
    std::vector<char> seen(nodes_.size(), 0);
    std::deque<std::size_t> frontier;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (labels_[i]) {
            seen[i] = 1;
            frontier.push_back(i);
        }
    }
    while (!frontier.empty()) {
        const std::size_t cur = frontier.front();
        frontier.pop_front();
        for (const auto& [nbr, w] : adjacency_[cur]) {
            (void)w;
            if (!seen[nbr]) {
                seen[nbr] = 1;
                frontier.push_back(nbr);
            }
        }
    }
    Reachability r;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (labels_[i]) continue;
        if (seen[i]) r.reachable.push_back(i);
        else r.stranded.push_back(i);
    }
    return r;
}

WeightedGraph WeightedGraph::induced_subgraph(const std::vector<std::size_t>& keep) const {
    std::vector<char> kept(nodes_.size(), 0);
    for (std::size_t idx : keep) {
        if (idx >= nodes_.size()) raise_invalid("induced_subgraph: node index out of range");
        kept[idx] = 1;
    }
    std::vector<Edge> edges;
    std::vector<NodeId> kept_ids;
    std::vector<std::pair<NodeId, Label>> labels;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!kept[i]) continue;
        kept_ids.push_back(nodes_[i]);
        if (labels_[i]) labels.push_back({nodes_[i], *labels_[i]});
        for (const auto& [j, w] : adjacency_[i]) {
            if (j > i && kept[j]) edges.push_back({nodes_[i], nodes_[j], w});
        }
    }
    return build(edges, labels, kept_ids);
}

namespace {

std::vector<std::vector<std::string>> read_simple_rows(const std::string& path,
                                                       std::size_t expect_fields,
                                                       const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise_io("cannot open file: " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#' || (line.size() == 1 && line[0] == '\r')) continue;
        std::vector<std::string> fields = split_csv_record(line);
        if (fields.size() != expect_fields)
            raise_parse(path + ":" + std::to_string(line_no) + ": expected " +
                        std::to_string(expect_fields) + " fields for " + what + ", got " +
                        std::to_string(fields.size()));
        rows.push_back(std::move(fields));
    }
    return rows;
}

}  // namespace

std::vector<Edge> read_edge_file(const std::string& path) {
    std::vector<Edge> edges;
    for (const auto& fields : read_simple_rows(path, 3, "edge record")) {
        errno = 0;
        char* end = nullptr;
        const double w = std::strtod(fields[2].c_str(), &end);
        if (end == fields[2].c_str() || *end != '\0')
            raise_parse(path + ": bad edge weight '" + fields[2] + "'");
        edges.push_back({fields[0], fields[1], w});
    }
    return edges;
}

std::vector<std::pair<NodeId, Label>> read_label_file(const std::string& path) {
    std::vector<std::pair<NodeId, Label>> labels;
    for (const auto& fields : read_simple_rows(path, 2, "label record"))
        labels.push_back({fields[0], fields[1]});
    return labels;
}

WeightedGraph load_graph(const std::string& edges_path,
                         const std::optional<std::string>& labels_path) {
    std::vector<Edge> edges = read_edge_file(edges_path);
    std::vector<std::pair<NodeId, Label>> labels;
    if (labels_path) labels = read_label_file(*labels_path);
    return WeightedGraph::build(edges, labels);
}

std::string edges_to_text(const WeightedGraph& g) {
    std::ostringstream out;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        for (const auto& [j, w] : g.neighbours(i)) {
            if (j <= i) continue;
            out << csv_escape(g.node(i)) << ',' << csv_escape(g.node(j)) << ','
                << format_double(w) << '\n';
        }
    }
    return out.str();
}

std::string labels_to_text(const WeightedGraph& g) {
    std::ostringstream out;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        if (const Label* l = g.label_of(i))
            out << csv_escape(g.node(i)) << ',' << csv_escape(*l) << '\n';
    }
    return out.str();
}

}  // namespace glass
