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

// Command-line front end. Everything goes through the public C API in
// glass/glass.h; the core library is never linked directly.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "glass/glass.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUserError = 1;
constexpr int kExitDataError = 2;

int exit_code_for(glass_status status) {
    switch (status) {
        case GLASS_OK: return kExitOk;
        case GLASS_ERR_INVALID:
        case GLASS_ERR_IO: return kExitUserError;
        case GLASS_ERR_PARSE:
        case GLASS_ERR_DATA:
        case GLASS_ERR_NUMERIC: return kExitDataError;
    }
    return kExitUserError;
}

[[noreturn]] void fail(glass_status status) {
    std::cerr << "error (" << glass_status_name(status) << "): " << glass_last_error() << "\n";
    std::exit(exit_code_for(status));
}

void check(glass_status status) {
    if (status != GLASS_OK) fail(status);
}

struct OwnedString {
    char* value = nullptr;
    ~OwnedString() { glass_string_free(value); }
    const char* get() const { return value ? value : ""; }
};

void write_text(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        std::exit(kExitUserError);
    }
    out << content;
}

std::string data_dir() {
    const char* env = std::getenv("GLASS_DATA_DIR");
    return env && *env ? env : "data";
}

std::string default_path(const std::string& name) {
    return (std::filesystem::path(data_dir()) / name).string();
}

struct IngestArgs {
    std::string members, votes, rollcalls, leaders;
    std::string rollcalls_default;
    int congress = 0;
    std::string chamber;
    bool include_agreeing = false;
    std::string yea_codes, nay_codes, dem_codes, rep_codes;

    void attach(CLI::App* cmd, bool with_network = true) {
        cmd->add_option("--members", members, "member roster CSV")
            ->default_val(default_path("HSall_members.csv"));
        cmd->add_option("--votes", votes, "vote record CSV")
            ->default_val(default_path("HSall_votes.csv"));
        rollcalls_default = default_path("HSall_rollcalls.csv");
        cmd->add_option("--rollcalls", rollcalls,
                        "roll-call metadata CSV supplying vote dates (optional)")
            ->default_val(rollcalls_default);
        cmd->add_option("--leaders", leaders, "party leadership CSV")
            ->default_val(default_path("leaders.csv"));
        if (with_network) {
            cmd->add_option("--congress", congress, "congress number")->required();
            cmd->add_option("--chamber", chamber, "house or senate")->required();
        }
        cmd->add_flag("--include-agreeing", include_agreeing,
                      "keep roll calls where both party leaders voted alike");
        cmd->add_option("--yea-codes", yea_codes, "cast codes counted as yea (default 1)");
        cmd->add_option("--nay-codes", nay_codes, "cast codes counted as nay (default 6)");
        cmd->add_option("--dem-codes", dem_codes, "Democrat party codes (default 100)");
        cmd->add_option("--rep-codes", rep_codes, "Republican party codes (default 200)");
    }

    // an untouched default roll-call path that does not exist is treated
    // as absent; an explicit path is always honoured (and may error)
    void resolve_defaults() {
        if (rollcalls == rollcalls_default && !std::filesystem::exists(rollcalls))
            rollcalls.clear();
    }

    glass_ingest_options options() const {
        glass_ingest_options o;
        glass_ingest_options_init(&o);
        o.members_csv = members.c_str();
        o.votes_csv = votes.c_str();
        o.rollcalls_csv = rollcalls.empty() ? nullptr : rollcalls.c_str();
        o.leaders_csv = leaders.c_str();
        o.congress = congress;
        o.chamber = chamber.c_str();
        o.include_agreeing = include_agreeing ? 1 : 0;
        o.yea_codes = yea_codes.empty() ? nullptr : yea_codes.c_str();
        o.nay_codes = nay_codes.empty() ? nullptr : nay_codes.c_str();
        o.dem_codes = dem_codes.empty() ? nullptr : dem_codes.c_str();
        o.rep_codes = rep_codes.empty() ? nullptr : rep_codes.c_str();
        return o;
    }

    std::string prefix() const {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%s%03d", chamber.c_str(), congress);
        return buf;
    }
};

int cmd_ingest(const IngestArgs& args, const std::string& out_dir) {
    const glass_ingest_options opts = args.options();
    glass_dataset* dataset = nullptr;
    check(glass_ingest(&opts, &dataset));
    std::unique_ptr<glass_dataset, decltype(&glass_dataset_free)> guard(dataset,
                                                                        glass_dataset_free);

    const std::filesystem::path dir(out_dir);
    OwnedString edges, labels, truth, stats;
    check(glass_dataset_edges_csv(dataset, &edges.value));
    check(glass_dataset_labels_csv(dataset, &labels.value));
    check(glass_dataset_truth_csv(dataset, &truth.value));
    check(glass_dataset_stats_json(dataset, &stats.value));

    const std::string prefix = args.prefix();
    write_text((dir / (prefix + "_edges.csv")).string(), edges.get());
    write_text((dir / (prefix + "_labels.csv")).string(), labels.get());
    write_text((dir / (prefix + "_truth.csv")).string(), truth.get());
    write_text((dir / (prefix + "_stats.json")).string(), stats.get());

    std::printf("%s: %lld members, %lld considered roll calls, %lld leaders\n", prefix.c_str(),
                static_cast<long long>(glass_dataset_member_count(dataset)),
                static_cast<long long>(glass_dataset_rollcall_count(dataset)),
                static_cast<long long>(glass_dataset_leader_count(dataset)));
    std::printf("wrote %s_{edges,labels,truth}.csv and %s_stats.json under %s\n", prefix.c_str(),
                prefix.c_str(), out_dir.c_str());
    return kExitOk;
}

int cmd_stats(const IngestArgs& args, const std::string& out_file) {
    const glass_ingest_options opts = args.options();
    glass_dataset* dataset = nullptr;
    check(glass_ingest(&opts, &dataset));
    std::unique_ptr<glass_dataset, decltype(&glass_dataset_free)> guard(dataset,
                                                                        glass_dataset_free);
    OwnedString stats;
    check(glass_dataset_stats_json(dataset, &stats.value));
    if (out_file.empty()) std::fputs(stats.get(), stdout);
    else write_text(out_file, stats.get());
    return kExitOk;
}

int cmd_label(const std::string& edges, const std::string& labels, const std::string& truth,
              long long m, bool m_set, const std::string& positive, const std::string& filter,
              bool break_ties, bool dump_chain, const std::string& out_dir) {
    if (truth.empty() && !m_set) {
        std::cerr << "error: supply either --m or --truth\n";
        return kExitUserError;
    }
    glass_run_options opts;
    glass_run_options_init(&opts);
    if (!truth.empty()) opts.truth_labels_csv = truth.c_str();
    else opts.m = m;
    if (!positive.empty()) opts.positive_label = positive.c_str();
    if (!filter.empty()) opts.filter = filter.c_str();
    opts.break_ties = break_ties ? 1 : 0;

    glass_labelling* labelling = nullptr;
    check(glass_label_files(edges.c_str(), labels.empty() ? nullptr : labels.c_str(), &opts,
                            &labelling));
    std::unique_ptr<glass_labelling, decltype(&glass_labelling_free)> guard(
        labelling, glass_labelling_free);

    const std::filesystem::path dir(out_dir);
    OwnedString csv, json;
    check(glass_labelling_csv(labelling, &csv.value));
    check(glass_labelling_json(labelling, &json.value));
    write_text((dir / "nodes.csv").string(), csv.get());
    write_text((dir / "labelling.json").string(), json.get());

    if (dump_chain) {
        glass_graph* graph = nullptr;
        check(glass_graph_load(edges.c_str(), labels.empty() ? nullptr : labels.c_str(),
                               &graph));
        std::unique_ptr<glass_graph, decltype(&glass_graph_free)> gguard(graph,
                                                                         glass_graph_free);
        OwnedString p_uu, p_ul;
        check(glass_graph_chain_csv(graph, &p_uu.value, &p_ul.value));
        write_text((dir / "p_uu.csv").string(), p_uu.get());
        write_text((dir / "p_ul.csv").string(), p_ul.get());
        std::printf("wrote transition blocks p_uu.csv and p_ul.csv\n");
    }

    std::printf("estimated %lld node(s), threshold alpha = %.6g, m = %lld\n",
                static_cast<long long>(glass_labelling_estimated_count(labelling)),
                glass_labelling_alpha(labelling),
                static_cast<long long>(glass_labelling_m(labelling)));
    const long long filtered = glass_labelling_filtered_count(labelling);
    const long long stranded = glass_labelling_stranded_count(labelling);
    if (filtered > 0) std::printf("filtered out %lld node(s) by expected time\n", filtered);
    if (stranded > 0) std::printf("%lld node(s) stranded (reported unlabelled)\n", stranded);
    std::printf("wrote nodes.csv and labelling.json under %s\n", out_dir.c_str());
    return kExitOk;
}

int cmd_batch(const IngestArgs& args, const std::string& congresses,
              const std::string& chambers, const std::string& filter, bool break_ties,
              const std::string& positive, int jobs, const std::string& out_dir) {
    glass_batch_options opts;
    glass_batch_options_init(&opts);
    opts.members_csv = args.members.c_str();
    opts.votes_csv = args.votes.c_str();
    opts.rollcalls_csv = args.rollcalls.empty() ? nullptr : args.rollcalls.c_str();
    opts.leaders_csv = args.leaders.c_str();
    opts.congresses = congresses.c_str();
    opts.chambers = chambers.c_str();
    opts.include_agreeing = args.include_agreeing ? 1 : 0;
    opts.filter = filter.empty() ? nullptr : filter.c_str();
    opts.break_ties = break_ties ? 1 : 0;
    opts.positive_label = positive.empty() ? nullptr : positive.c_str();
    opts.jobs = jobs;
    opts.yea_codes = args.yea_codes.empty() ? nullptr : args.yea_codes.c_str();
    opts.nay_codes = args.nay_codes.empty() ? nullptr : args.nay_codes.c_str();
    opts.dem_codes = args.dem_codes.empty() ? nullptr : args.dem_codes.c_str();
    opts.rep_codes = args.rep_codes.empty() ? nullptr : args.rep_codes.c_str();

    OwnedString report, series;
    check(glass_batch(&opts, &report.value, &series.value));

    const std::filesystem::path dir(out_dir);
    write_text((dir / "report.json").string(), report.get());
    write_text((dir / "series.csv").string(), series.get());

    // per-network summary on stdout: series rows, numerics at 6 digits
    std::printf("congress,chamber,f1,gap\n");
    const std::string text = series.get();
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        const std::string line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (line.empty() || line[0] == '#' || line.rfind("congress,", 0) == 0) continue;
        std::string out_line;
        std::size_t field = 0, start = 0;
        while (start <= line.size()) {
            std::size_t comma = line.find(',', start);
            if (comma == std::string::npos) comma = line.size();
            const std::string cell = line.substr(start, comma - start);
            if (field >= 2 && !cell.empty()) {
                char buf[32];
                std::snprintf(buf, sizeof(buf), "%.6g", std::strtod(cell.c_str(), nullptr));
                out_line += buf;
            } else {
                out_line += cell;
            }
            if (comma < line.size()) out_line += ',';
            start = comma + 1;
            ++field;
        }
        std::printf("%s\n", out_line.c_str());
    }
    std::printf("wrote report.json and series.csv under %s\n", out_dir.c_str());
    return kExitOk;
}

int cmd_sensitivity(const IngestArgs& args, const std::string& filter,
                    const std::string& out_dir) {
    const glass_ingest_options opts = args.options();
    OwnedString json, paired;
    check(glass_sensitivity(&opts, filter.empty() ? nullptr : filter.c_str(), &json.value,
                            &paired.value));
    const std::filesystem::path dir(out_dir);
    const std::string prefix = args.prefix();
    write_text((dir / (prefix + "_sensitivity.json")).string(), json.get());
    write_text((dir / (prefix + "_paired.csv")).string(), paired.get());

    // pull the two headline numbers back out for the console
    const std::string text = json.get();
    auto find_number = [&text](const std::string& key) {
        const std::size_t at = text.find("\"" + key + "\":");
        if (at == std::string::npos) return std::string("?");
        std::size_t from = text.find(':', at) + 1;
        std::size_t to = text.find_first_of(",\n", from);
        return text.substr(from, to - from);
    };
    std::printf("%s: pearson=%s spearman=%s\n", prefix.c_str(), find_number("pearson").c_str(),
                find_number("spearman").c_str());
    std::printf("wrote %s_sensitivity.json and %s_paired.csv under %s\n", prefix.c_str(),
                prefix.c_str(), out_dir.c_str());
    return kExitOk;
}

int cmd_regress(const std::string& series, const std::string& controls,
                const std::string& chamber, double level, const std::string& out_dir) {
    OwnedString json;
    check(glass_regress(series.c_str(), controls.c_str(), chamber.c_str(), level, &json.value));
    const std::filesystem::path dir(out_dir);
    const std::string path = (dir / ("regress_" + chamber + ".json")).string();
    write_text(path, json.get());

    const std::string text = json.get();
    long long predictors = 0;
    std::size_t searched = 0;
    const std::string key = "\"significant_predictors\": ";
    while ((searched = text.find(key, searched)) != std::string::npos) {
        searched += key.size();
        predictors += std::strtoll(text.c_str() + searched, nullptr, 10);
    }
    std::printf("%s: %lld significant predictor(s) at the requested level\n", chamber.c_str(),
                predictors);
    std::printf("wrote %s\n", path.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"glass — exact random-walk graph labelling and roll-call analysis"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(glass_version()));

    std::string out_dir = "out";

    // ingest
    IngestArgs ingest_args;
    auto* ingest = app.add_subcommand("ingest", "clean one congress and write its network files");
    ingest_args.attach(ingest);
    ingest->add_option("-o,--out", out_dir, "output directory")->default_val("out");

    // stats
    IngestArgs stats_args;
    std::string stats_out;
    auto* stats = app.add_subcommand("stats", "print cleaning statistics for one congress");
    stats_args.attach(stats);
    stats->add_option("-o,--out", stats_out, "write JSON here instead of stdout");

    // label
    std::string edges_path, labels_path, truth_path, positive, filter;
    long long m_value = 0;
    bool break_ties = false, dump_chain = false;
    auto* label = app.add_subcommand("label", "run the labelling pipeline on a graph");
    label->add_option("--edges", edges_path, "edge list CSV")->required();
    label->add_option("--labels", labels_path, "label CSV (node,label)");
    auto* m_opt = label->add_option("--m", m_value, "number of nodes for the second label");
    label->add_option("--truth", truth_path, "true labels CSV; m derived from it");
    label->add_option("--positive-label", positive, "label treated as K1");
    label->add_option("--filter", filter, "off or iqr:K");
    label->add_flag("--break-ties", break_ties, "restore the split under threshold ties");
    label->add_flag("--dump-chain", dump_chain,
                    "also write the transition blocks p_uu.csv and p_ul.csv");
    label->add_option("-o,--out", out_dir, "output directory")->default_val("out");

    // batch
    IngestArgs batch_args;
    std::string congresses = "74-115", chambers = "both", batch_filter, batch_positive;
    bool batch_break_ties = false;
    int jobs = 0;
    auto* batch = app.add_subcommand("batch", "evaluate many networks and emit plot series");
    batch_args.attach(batch, /*with_network=*/false);
    batch->add_option("--congress", congresses, "selection, e.g. 74-115 or 90,94")
        ->default_val("74-115");
    batch->add_option("--chamber", chambers, "house, senate or both")->default_val("both");
    batch->add_option("--filter", batch_filter, "off or iqr:K");
    batch->add_flag("--break-ties", batch_break_ties, "restore splits under threshold ties");
    batch->add_option("--positive-label", batch_positive, "label treated as K1");
    batch->add_option("--jobs", jobs, "parallel networks (0 = machine cores)")->default_val(0);
    batch->add_option("-o,--out", out_dir, "output directory")->default_val("out");

    // sensitivity
    IngestArgs sens_args;
    std::string sens_filter;
    auto* sens = app.add_subcommand(
        "sensitivity", "compare one network with and without leader-agreeing roll calls");
    sens_args.attach(sens);
    sens->add_option("--filter", sens_filter, "off or iqr:K");
    sens->add_option("-o,--out", out_dir, "output directory")->default_val("out");

    // regress
    std::string series_path, controls_path, regress_chamber;
    double level = 0.05;
    auto* regress = app.add_subcommand("regress", "fit the partisanship factor models");
    regress->add_option("--series", series_path, "series CSV from batch")->required();
    regress->add_option("--controls", controls_path, "control-factor CSV")
        ->default_val(default_path("controls.csv"));
    regress->add_option("--chamber", regress_chamber, "house or senate")->required();
    regress->add_option("--level", level, "significance level")->default_val(0.05);
    regress->add_option("-o,--out", out_dir, "output directory")->default_val("out");

    CLI11_PARSE(app, argc, argv);

    ingest_args.resolve_defaults();
    stats_args.resolve_defaults();
    batch_args.resolve_defaults();
    sens_args.resolve_defaults();

    if (ingest->parsed()) return cmd_ingest(ingest_args, out_dir);
    if (stats->parsed()) return cmd_stats(stats_args, stats_out);
    if (label->parsed())
        return cmd_label(edges_path, labels_path, truth_path, m_value, m_opt->count() > 0,
                         positive, filter, break_ties, dump_chain, out_dir);
    if (batch->parsed())
        return cmd_batch(batch_args, congresses, chambers, batch_filter, batch_break_ties,
                         batch_positive, jobs, out_dir);
    if (sens->parsed()) return cmd_sensitivity(sens_args, sens_filter, out_dir);
    if (regress->parsed())
        return cmd_regress(series_path, controls_path, regress_chamber, level, out_dir);
    return kExitUserError;
}
