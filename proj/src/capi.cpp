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

#include "glass/glass.h"

#include <cstdlib>
#include <cstring>
#include <limits>
#include <memory>
#include <set>
#include <string>

#include <json.hpp>

#include "core/batch.hpp"
#include "core/csv.hpp"
#include "core/error.hpp"
#include "core/labeller.hpp"
#include "core/provenance.hpp"
#include "core/regress.hpp"
#include "core/rollcall.hpp"

namespace {

thread_local std::string t_last_error;

glass_status status_of(glass::ErrorCode code) {
    switch (code) {
        case glass::ErrorCode::invalid_argument: return GLASS_ERR_INVALID;
        case glass::ErrorCode::parse: return GLASS_ERR_PARSE;
        case glass::ErrorCode::data: return GLASS_ERR_DATA;
        case glass::ErrorCode::numeric: return GLASS_ERR_NUMERIC;
        case glass::ErrorCode::io: return GLASS_ERR_IO;
    }
    return GLASS_ERR_INVALID;
}

template <typename Fn>
glass_status guarded(Fn&& fn) {
    try {
        fn();
        t_last_error.clear();
        return GLASS_OK;
    } catch (const glass::Error& e) {
        t_last_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return GLASS_ERR_INVALID;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void require(bool cond, const char* message) {
    if (!cond) glass::raise_invalid(message);
}

std::set<int> parse_code_set(const char* text, const char* fallback) {
    const std::string spec = text && *text ? text : fallback;
    std::set<int> out;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        std::size_t comma = spec.find(',', pos);
        if (comma == std::string::npos) comma = spec.size();
        const std::string tok = spec.substr(pos, comma - pos);
        if (!tok.empty()) {
            char* end = nullptr;
            const long v = std::strtol(tok.c_str(), &end, 10);
            if (end == tok.c_str() || *end != '\0')
                glass::raise_invalid("bad code '" + tok + "' in code list '" + spec + "'");
            out.insert(static_cast<int>(v));
        }
        pos = comma + 1;
    }
    if (out.empty()) glass::raise_invalid("empty code list '" + spec + "'");
    return out;
}

std::vector<int> parse_congress_list(const char* text) {
    require(text && *text, "congress selection required");
    std::vector<int> out;
    const std::string spec = text;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        std::size_t comma = spec.find(',', pos);
        if (comma == std::string::npos) comma = spec.size();
        std::string tok = spec.substr(pos, comma - pos);
        if (!tok.empty()) {
            const std::size_t dash = tok.find('-');
            auto to_int = [&tok](const std::string& s) {
                char* end = nullptr;
                const long v = std::strtol(s.c_str(), &end, 10);
                if (end == s.c_str() || *end != '\0')
                    glass::raise_invalid("bad congress token '" + tok + "'");
                return static_cast<int>(v);
            };
            if (dash == std::string::npos) {
                out.push_back(to_int(tok));
            } else {
                const int lo = to_int(tok.substr(0, dash));
                const int hi = to_int(tok.substr(dash + 1));
                if (hi < lo) glass::raise_invalid("bad congress range '" + tok + "'");
                for (int c = lo; c <= hi; ++c) out.push_back(c);
            }
        }
        pos = comma + 1;
    }
    return out;
}

std::vector<glass::Chamber> parse_chamber_list(const char* text) {
    const std::string spec = text && *text ? text : "both";
    if (spec == "both" || spec == "all")
        return {glass::Chamber::house, glass::Chamber::senate};
    return {glass::parse_chamber(spec)};
}

glass::CleaningOptions cleaning_from(const glass_ingest_options& o) {
    glass::CleaningOptions c;
    c.include_agreeing = o.include_agreeing != 0;
    c.yea_codes = parse_code_set(o.yea_codes, "1");
    c.nay_codes = parse_code_set(o.nay_codes, "6");
    c.dem_codes = parse_code_set(o.dem_codes, "100");
    c.rep_codes = parse_code_set(o.rep_codes, "200");
    return c;
}

glass::IngestRequest ingest_request_from(const glass_ingest_options& o) {
    require(o.members_csv && *o.members_csv, "members_csv required");
    require(o.votes_csv && *o.votes_csv, "votes_csv required");
    require(o.leaders_csv && *o.leaders_csv, "leaders_csv required");
    require(o.chamber && *o.chamber, "chamber required");
    require(o.congress > 0, "congress must be positive");
    glass::IngestRequest r;
    r.paths.members_csv = o.members_csv;
    r.paths.votes_csv = o.votes_csv;
    r.paths.rollcalls_csv = o.rollcalls_csv ? o.rollcalls_csv : "";
    r.paths.leaders_csv = o.leaders_csv;
    r.congress = o.congress;
    r.chamber = glass::parse_chamber(o.chamber);
    r.cleaning = cleaning_from(o);
    return r;
}

nlohmann::ordered_json ingest_config_json(const glass_ingest_options& o) {
    nlohmann::ordered_json j;
    j["members_csv"] = o.members_csv ? o.members_csv : "";
    j["votes_csv"] = o.votes_csv ? o.votes_csv : "";
    j["rollcalls_csv"] = o.rollcalls_csv ? o.rollcalls_csv : "";
    j["leaders_csv"] = o.leaders_csv ? o.leaders_csv : "";
    j["congress"] = o.congress;
    j["chamber"] = o.chamber ? o.chamber : "";
    j["include_agreeing"] = o.include_agreeing != 0;
    j["yea_codes"] = o.yea_codes ? o.yea_codes : "1";
    j["nay_codes"] = o.nay_codes ? o.nay_codes : "6";
    j["dem_codes"] = o.dem_codes ? o.dem_codes : "100";
    j["rep_codes"] = o.rep_codes ? o.rep_codes : "200";
    return j;
}

nlohmann::ordered_json run_options_json(const glass_run_options& o) {
    nlohmann::ordered_json j;
    if (o.truth_labels_csv && *o.truth_labels_csv) j["truth_labels_csv"] = o.truth_labels_csv;
    else j["m"] = o.m;
    j["positive_label"] = o.positive_label ? o.positive_label : "";
    j["filter"] = o.filter ? o.filter : "off";
    j["break_ties"] = o.break_ties != 0;
    return j;
}

}  // namespace

struct glass_graph {
    glass::WeightedGraph g;
};

struct glass_labelling {
    glass::GlassResult result;
    std::string csv;
    std::string json;
};

struct glass_dataset {
    glass::CleanDataset data;
    std::string config_json;
    std::string input_digest;
};

extern "C" {

const char* glass_version(void) { return "1.0.0"; }

const char* glass_status_name(glass_status status) {
    switch (status) {
        case GLASS_OK: return "ok";
        case GLASS_ERR_INVALID: return "invalid_argument";
        case GLASS_ERR_PARSE: return "parse_error";
        case GLASS_ERR_DATA: return "data_error";
        case GLASS_ERR_NUMERIC: return "numeric_error";
        case GLASS_ERR_IO: return "io_error";
    }
    return "unknown";
}

const char* glass_last_error(void) { return t_last_error.c_str(); }

void glass_string_free(char* s) { std::free(s); }

/* ---- graphs ---- */

glass_status glass_graph_load(const char* edges_csv_path, const char* labels_csv_path,
                              glass_graph** out) {
    return guarded([&] {
        require(edges_csv_path && out, "edges path and out handle required");
        std::optional<std::string> labels;
        if (labels_csv_path && *labels_csv_path) labels = labels_csv_path;
        auto* handle = new glass_graph{glass::load_graph(edges_csv_path, labels)};
        *out = handle;
    });
}

glass_status glass_graph_build(const char* const* edge_a, const char* const* edge_b,
                               const double* weight, size_t n_edges,
                               const char* const* label_node, const char* const* label_value,
                               size_t n_labels, glass_graph** out) {
    return guarded([&] {
        require(out, "out handle required");
        require(n_edges == 0 || (edge_a && edge_b && weight), "edge arrays required");
        require(n_labels == 0 || (label_node && label_value), "label arrays required");
        std::vector<glass::Edge> edges;
        edges.reserve(n_edges);
        for (size_t i = 0; i < n_edges; ++i)
            edges.push_back({edge_a[i], edge_b[i], weight[i]});
        std::vector<std::pair<glass::NodeId, glass::Label>> labels;
        labels.reserve(n_labels);
        for (size_t i = 0; i < n_labels; ++i) labels.push_back({label_node[i], label_value[i]});
        *out = new glass_graph{glass::WeightedGraph::build(edges, labels)};
    });
}

void glass_graph_free(glass_graph* graph) { delete graph; }

int64_t glass_graph_node_count(const glass_graph* graph) {
    return graph ? static_cast<int64_t>(graph->g.node_count()) : -1;
}

int64_t glass_graph_edge_count(const glass_graph* graph) {
    return graph ? static_cast<int64_t>(graph->g.edge_count()) : -1;
}

int64_t glass_graph_labelled_count(const glass_graph* graph) {
    return graph ? static_cast<int64_t>(graph->g.labelled_count()) : -1;
}

int64_t glass_graph_stranded_count(const glass_graph* graph) {
    if (!graph) return -1;
    return static_cast<int64_t>(graph->g.reachable_to_labelled().stranded.size());
}

glass_status glass_graph_write(const glass_graph* graph, const char* edges_csv_path,
                               const char* labels_csv_path) {
    return guarded([&] {
        require(graph && edges_csv_path, "graph and edges path required");
        glass::write_file(edges_csv_path, glass::edges_to_text(graph->g));
        if (labels_csv_path && *labels_csv_path)
            glass::write_file(labels_csv_path, glass::labels_to_text(graph->g));
    });
}

glass_status glass_graph_chain_csv(const glass_graph* graph, char** p_uu_csv, char** p_ul_csv) {
    return guarded([&] {
        require(graph, "graph required");
        const glass::AbsorbingChain chain = glass::to_absorbing_chain(graph->g);
        if (p_uu_csv) *p_uu_csv = dup_string(glass::chain_block_csv(chain, true));
        if (p_ul_csv) *p_ul_csv = dup_string(glass::chain_block_csv(chain, false));
    });
}

/* ---- labelling ---- */

void glass_run_options_init(glass_run_options* options) {
    if (!options) return;
    options->m = 0;
    options->truth_labels_csv = nullptr;
    options->positive_label = nullptr;
    options->filter = nullptr;
    options->break_ties = 0;
}

namespace {

glass_labelling* run_labelling(const glass::WeightedGraph& graph,
                               const glass_run_options& options, const std::string& config_json,
                               const std::string& digest) {
    glass::GlassOptions opts;
    if (options.truth_labels_csv && *options.truth_labels_csv) {
        for (auto& [id, label] : glass::read_label_file(options.truth_labels_csv))
            opts.truth[id] = label;
    } else {
        require(options.m >= 0, "m must be non-negative");
        opts.m = static_cast<std::size_t>(options.m);
    }
    if (options.positive_label && *options.positive_label) opts.k1 = options.positive_label;
    opts.filter = glass::FilterPolicy::parse(options.filter ? options.filter : "off");
    opts.break_ties = options.break_ties != 0;

    auto handle = std::make_unique<glass_labelling>();
    handle->result = glass::glass_run(graph, opts);
    handle->csv = glass::labelling_csv(graph, handle->result);
    handle->json = glass::labelling_json(handle->result, config_json, digest);
    return handle.release();
}

}  // namespace

glass_status glass_label_graph(const glass_graph* graph, const glass_run_options* options,
                               glass_labelling** out) {
    return guarded([&] {
        require(graph && options && out, "graph, options and out handle required");
        *out = run_labelling(graph->g, *options, run_options_json(*options).dump(), "");
    });
}

glass_status glass_label_files(const char* edges_csv_path, const char* labels_csv_path,
                               const glass_run_options* options, glass_labelling** out) {
    return guarded([&] {
        require(edges_csv_path && options && out, "edges path, options and out handle required");
        std::optional<std::string> labels;
        if (labels_csv_path && *labels_csv_path) labels = labels_csv_path;
        const glass::WeightedGraph graph = glass::load_graph(edges_csv_path, labels);

        nlohmann::ordered_json config = run_options_json(*options);
        config["edges_csv"] = edges_csv_path;
        config["labels_csv"] = labels ? *labels : "";
        std::vector<std::string> inputs{edges_csv_path};
        if (labels) inputs.push_back(*labels);
        if (options->truth_labels_csv && *options->truth_labels_csv)
            inputs.push_back(options->truth_labels_csv);
        *out = run_labelling(graph, *options, config.dump(), glass::hash_inputs(inputs));
    });
}

void glass_labelling_free(glass_labelling* labelling) { delete labelling; }

double glass_labelling_alpha(const glass_labelling* labelling) {
    return labelling ? labelling->result.alpha : std::numeric_limits<double>::quiet_NaN();
}

int64_t glass_labelling_m(const glass_labelling* labelling) {
    return labelling ? static_cast<int64_t>(labelling->result.m) : -1;
}

int64_t glass_labelling_estimated_count(const glass_labelling* labelling) {
    return labelling ? static_cast<int64_t>(labelling->result.estimates.size()) : -1;
}

int64_t glass_labelling_filtered_count(const glass_labelling* labelling) {
    return labelling ? static_cast<int64_t>(labelling->result.filtered_out.size()) : -1;
}

int64_t glass_labelling_stranded_count(const glass_labelling* labelling) {
    return labelling ? static_cast<int64_t>(labelling->result.stranded.size()) : -1;
}

glass_status glass_labelling_prob(const glass_labelling* labelling, const char* node,
                                  double* out) {
    return guarded([&] {
        require(labelling && node && out, "labelling, node and out required");
        const auto& dist = labelling->result.distribution;
        for (std::size_t i = 0; i < dist.node_ids.size(); ++i) {
            if (dist.node_ids[i] == node) {
                *out = dist.p_k1[i];
                return;
            }
        }
        glass::raise_invalid("node '" + std::string(node) + "' was not estimated");
    });
}

glass_status glass_labelling_estimate(const glass_labelling* labelling, const char* node,
                                      char** out) {
    return guarded([&] {
        require(labelling && node && out, "labelling, node and out required");
        for (const auto& [id, label] : labelling->result.estimates) {
            if (id == node) {
                *out = dup_string(label);
                return;
            }
        }
        glass::raise_invalid("node '" + std::string(node) + "' was not estimated");
    });
}

glass_status glass_labelling_csv(const glass_labelling* labelling, char** out) {
    return guarded([&] {
        require(labelling && out, "labelling and out required");
        *out = dup_string(labelling->csv);
    });
}

glass_status glass_labelling_json(const glass_labelling* labelling, char** out) {
    return guarded([&] {
        require(labelling && out, "labelling and out required");
        *out = dup_string(labelling->json);
    });
}

/* ---- roll-call ingestion ---- */

void glass_ingest_options_init(glass_ingest_options* options) {
    if (!options) return;
    std::memset(options, 0, sizeof(*options));
}

glass_status glass_ingest(const glass_ingest_options* options, glass_dataset** out) {
    return guarded([&] {
        require(options && out, "options and out handle required");
        const glass::IngestRequest request = ingest_request_from(*options);
        auto handle = std::make_unique<glass_dataset>();
        handle->data = glass::ingest_network(request);
        handle->config_json = ingest_config_json(*options).dump();
        handle->input_digest = glass::hash_inputs(request.paths.present());
        *out = handle.release();
    });
}

void glass_dataset_free(glass_dataset* dataset) { delete dataset; }

int64_t glass_dataset_member_count(const glass_dataset* dataset) {
    return dataset ? static_cast<int64_t>(dataset->data.members.size()) : -1;
}

int64_t glass_dataset_rollcall_count(const glass_dataset* dataset) {
    return dataset ? static_cast<int64_t>(dataset->data.rollcalls.size()) : -1;
}

int64_t glass_dataset_leader_count(const glass_dataset* dataset) {
    return dataset ? static_cast<int64_t>(dataset->data.leader_labels.size()) : -1;
}

glass_status glass_dataset_graph(const glass_dataset* dataset, glass_graph** out) {
    return guarded([&] {
        require(dataset && out, "dataset and out handle required");
        *out = new glass_graph{glass::build_vote_network(dataset->data)};
    });
}

glass_status glass_dataset_edges_csv(const glass_dataset* dataset, char** out) {
    return guarded([&] {
        require(dataset && out, "dataset and out required");
        *out = dup_string(glass::edges_to_text(glass::build_vote_network(dataset->data)));
    });
}

glass_status glass_dataset_labels_csv(const glass_dataset* dataset, char** out) {
    return guarded([&] {
        require(dataset && out, "dataset and out required");
        *out = dup_string(glass::labels_to_text(glass::build_vote_network(dataset->data)));
    });
}

glass_status glass_dataset_truth_csv(const glass_dataset* dataset, char** out) {
    return guarded([&] {
        require(dataset && out, "dataset and out required");
        std::string text;
        for (const auto& [id, label] : glass::dataset_truth(dataset->data))
            text += glass::csv_escape(id) + "," + glass::csv_escape(label) + "\n";
        *out = dup_string(text);
    });
}

glass_status glass_dataset_stats_json(const glass_dataset* dataset, char** out) {
    return guarded([&] {
        require(dataset && out, "dataset and out required");
        nlohmann::ordered_json j =
            nlohmann::ordered_json::parse(glass::cleaning_stats_json(dataset->data.stats));
        j["run_config"] = nlohmann::ordered_json::parse(dataset->config_json);
        j["input_hash"] = dataset->input_digest;
        *out = dup_string(j.dump(2) + "\n");
    });
}

/* ---- batch ---- */

void glass_batch_options_init(glass_batch_options* options) {
    if (!options) return;
    std::memset(options, 0, sizeof(*options));
}

glass_status glass_batch(const glass_batch_options* options, char** report_json_out,
                         char** series_csv_out) {
    return guarded([&] {
        require(options && report_json_out, "options and report out required");
        require(options->members_csv && *options->members_csv, "members_csv required");
        require(options->votes_csv && *options->votes_csv, "votes_csv required");
        require(options->leaders_csv && *options->leaders_csv, "leaders_csv required");

        glass::BatchRequest request;
        request.paths.members_csv = options->members_csv;
        request.paths.votes_csv = options->votes_csv;
        request.paths.rollcalls_csv = options->rollcalls_csv ? options->rollcalls_csv : "";
        request.paths.leaders_csv = options->leaders_csv;
        request.congresses = parse_congress_list(options->congresses);
        request.chambers = parse_chamber_list(options->chambers);
        glass_ingest_options tmp;
        glass_ingest_options_init(&tmp);
        tmp.include_agreeing = options->include_agreeing;
        tmp.yea_codes = options->yea_codes;
        tmp.nay_codes = options->nay_codes;
        tmp.dem_codes = options->dem_codes;
        tmp.rep_codes = options->rep_codes;
        request.cleaning = cleaning_from(tmp);
        request.filter = glass::FilterPolicy::parse(options->filter ? options->filter : "off");
        request.break_ties = options->break_ties != 0;
        if (options->positive_label && *options->positive_label)
            request.positive = options->positive_label;
        request.jobs = options->jobs;

        nlohmann::ordered_json config;
        config["members_csv"] = request.paths.members_csv;
        config["votes_csv"] = request.paths.votes_csv;
        config["rollcalls_csv"] = request.paths.rollcalls_csv;
        config["leaders_csv"] = request.paths.leaders_csv;
        config["congresses"] = options->congresses;
        config["chambers"] = options->chambers ? options->chambers : "both";
        config["include_agreeing"] = options->include_agreeing != 0;
        config["filter"] = request.filter.to_string();
        config["break_ties"] = request.break_ties;
        config["positive_label"] = request.positive;
        config["jobs"] = request.jobs;

        const std::string digest = glass::hash_inputs(request.paths.present());
        const glass::EvaluationReport report = glass::batch_analyse(request);
        *report_json_out = dup_string(glass::report_json(report, config.dump(), digest));
        if (series_csv_out)
            *series_csv_out = dup_string(glass::report_series_csv(report, config.dump(), digest));
    });
}

/* ---- sensitivity ---- */

glass_status glass_sensitivity(const glass_ingest_options* options, const char* filter,
                               char** json_out, char** paired_csv_out) {
    return guarded([&] {
        require(options && json_out, "options and json out required");
        const glass::IngestRequest request = ingest_request_from(*options);
        const glass::FilterPolicy policy = glass::FilterPolicy::parse(filter ? filter : "off");

        nlohmann::ordered_json config = ingest_config_json(*options);
        config["filter"] = policy.to_string();
        const std::string digest = glass::hash_inputs(request.paths.present());

        const glass::SensitivityResult result =
            glass::sensitivity_analysis(request, policy, false, "Democrat");
        *json_out = dup_string(glass::sensitivity_json(result, config.dump(), digest));
        if (paired_csv_out)
            *paired_csv_out =
                dup_string(glass::sensitivity_paired_csv(result, config.dump(), digest));
    });
}

/* ---- regression ---- */

glass_status glass_regress(const char* series_csv_path, const char* controls_csv_path,
                           const char* chamber, double significance_level, char** json_out) {
    return guarded([&] {
        require(series_csv_path && controls_csv_path && chamber && json_out,
                "series, controls, chamber and out required");
        const glass::Chamber ch = glass::parse_chamber(chamber);
        const double level = significance_level > 0.0 ? significance_level : 0.05;
        const std::vector<glass::ControlRecord> controls =
            glass::read_controls(controls_csv_path);
        const std::vector<glass::SeriesPoint> series = glass::read_series_csv(series_csv_path);

        nlohmann::ordered_json config;
        config["series_csv"] = series_csv_path;
        config["controls_csv"] = controls_csv_path;
        config["chamber"] = glass::to_string(ch);
        config["significance_level"] = level;
        const std::string digest =
            glass::hash_inputs({series_csv_path, controls_csv_path});

        *json_out = dup_string(glass::regression_report_json(controls, series, ch, level,
                                                             config.dump(), digest));
    });
}

} /* extern "C" */
