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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/labeller.hpp"
#include "core/rollcall.hpp"

namespace glass {

struct DataPaths {
    std::string members_csv;
    std::string votes_csv;
    std::string rollcalls_csv;  // optional; supplies vote dates when set
    std::string leaders_csv;

    std::vector<std::string> present() const;
};

struct IngestRequest {
    DataPaths paths;
    int congress = 0;
    Chamber chamber = Chamber::house;
    CleaningOptions cleaning;
};

/// Loads the (filtered) inputs, joins roll-call dates onto votes when a
/// roll-call file is configured, and runs the cleaning rules.
CleanDataset ingest_network(const IngestRequest& request);

/// One labelled-and-scored network.
struct NetworkEvaluation {
    int congress = 0;
    Chamber chamber = Chamber::house;
    bool ok = false;
    std::string error;

    std::size_t n = 0;    // nodes
    std::size_t u = 0;    // unlabelled
    std::size_t ell = 0;  // labelled
    std::size_t m = 0;    // true second-class count among evaluated nodes
    std::size_t dem_members = 0, rep_members = 0;  // unlabelled, by true party
    std::size_t dem_leaders = 0, rep_leaders = 0;
    std::size_t considered_rollcalls = 0;
    std::size_t stranded = 0;

    double f1_dem_pos = 0.0;
    double f1_rep_pos = 0.0;
    double macro_f1 = 0.0;
    std::optional<double> gap;

    double alpha = 0.0;
    std::map<NodeId, double> probs;      // P(Y = positive) per evaluated node
    std::map<NodeId, Label> estimates;   // evaluated nodes only
    std::map<NodeId, Label> truth;       // evaluated nodes only
    std::vector<std::string> warnings;
    CleaningStats cleaning;
};

/// Labels one cleaned network with the true class ratio and scores the
/// estimates against the withheld party labels.
NetworkEvaluation evaluate_dataset(const CleanDataset& dataset, const FilterPolicy& filter,
                                   bool break_ties, const Label& positive);

struct BatchRequest {
    DataPaths paths;
    std::vector<int> congresses;
    std::vector<Chamber> chambers;
    CleaningOptions cleaning;
    FilterPolicy filter;
    bool break_ties = false;
    Label positive = "Democrat";
    int jobs = 0;  // 0 = hardware concurrency
};

struct EvaluationReport {
    std::vector<NetworkEvaluation> networks;  // ordered by congress, chamber
};

/// Ingests, labels and evaluates every requested network. Per-network
/// failures are recorded on their row; the batch always completes.
EvaluationReport batch_analyse(const BatchRequest& request);

/// Report JSON (one object per network) with the run configuration and an
/// input-content digest embedded.
std::string report_json(const EvaluationReport& report, const std::string& config_json,
                        const std::string& input_digest);

/// Plot series `congress,chamber,f1,gap`; the leading comment line carries
/// the run configuration and input digest.
std::string report_series_csv(const EvaluationReport& report, const std::string& config_json,
                              const std::string& input_digest);

struct SensitivityResult {
    NetworkEvaluation without_agreeing;
    NetworkEvaluation with_agreeing;
    double pearson = 0.0;
    double spearman = 0.0;
    std::size_t paired_nodes = 0;
};

/// Re-analyses one network with agreeing roll calls included and compares
/// the two probability orderings.
SensitivityResult sensitivity_analysis(const IngestRequest& request, const FilterPolicy& filter,
                                       bool break_ties, const Label& positive);

std::string sensitivity_json(const SensitivityResult& result, const std::string& config_json,
                             const std::string& input_digest);
/// `node,truth,prob_without_agreeing,prob_with_agreeing` for paired nodes.
std::string sensitivity_paired_csv(const SensitivityResult& result,
                                   const std::string& config_json,
                                   const std::string& input_digest);

}  // namespace glass
