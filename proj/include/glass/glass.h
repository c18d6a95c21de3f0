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

/*
 * glass — semi-supervised graph labelling via exact absorbing random walks,
 * plus a congressional roll-call voting pipeline built on top of it.
 *
 * C API conventions:
 *   - every fallible call returns a glass_status; GLASS_OK is 0
 *   - on failure, glass_last_error() describes the problem (thread-local)
 *   - objects are opaque handles released with their *_free function
 *   - strings returned through char** are owned by the caller and must be
 *     released with glass_string_free()
 */

#ifndef GLASS_GLASS_H
#define GLASS_GLASS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GLASS_API __declspec(dllexport)
#else
#define GLASS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum glass_status {
    GLASS_OK = 0,
    GLASS_ERR_INVALID = 1, /* caller broke a precondition */
    GLASS_ERR_PARSE = 2,   /* malformed input file */
    GLASS_ERR_DATA = 3,    /* semantically bad data */
    GLASS_ERR_NUMERIC = 4, /* solver failure or residual above tolerance */
    GLASS_ERR_IO = 5,      /* file system problem */
} glass_status;

GLASS_API const char* glass_version(void);
GLASS_API const char* glass_status_name(glass_status status);

/* Message for the most recent failure on this thread; empty if none. */
GLASS_API const char* glass_last_error(void);

/* Releases strings returned through char** out-parameters. */
GLASS_API void glass_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Graphs                                                              */
/* ------------------------------------------------------------------ */

typedef struct glass_graph glass_graph;

/*
 * Loads an undirected weighted graph. The edge file holds one
 * `node_a,node_b,weight` record per line (no header); the optional label
 * file holds `node,label` records. Duplicate undirected pairs are summed;
 * self-loops and non-positive weights are rejected.
 */
GLASS_API glass_status glass_graph_load(const char* edges_csv_path,
                                        const char* labels_csv_path /* nullable */,
                                        glass_graph** out);

/* In-memory construction from parallel arrays. */
GLASS_API glass_status glass_graph_build(const char* const* edge_a, const char* const* edge_b,
                                         const double* weight, size_t n_edges,
                                         const char* const* label_node,
                                         const char* const* label_value, size_t n_labels,
                                         glass_graph** out);

GLASS_API void glass_graph_free(glass_graph* graph);

GLASS_API int64_t glass_graph_node_count(const glass_graph* graph);
GLASS_API int64_t glass_graph_edge_count(const glass_graph* graph);
GLASS_API int64_t glass_graph_labelled_count(const glass_graph* graph);
/* Unlabelled nodes with no path to any labelled node. */
GLASS_API int64_t glass_graph_stranded_count(const glass_graph* graph);

GLASS_API glass_status glass_graph_write(const glass_graph* graph, const char* edges_csv_path,
                                         const char* labels_csv_path);

/* Debug dump of the walk structure: the transient-to-transient and
 * transient-to-absorbing transition blocks as CSV tables (header row of
 * target ids, one row per transient state). Either out-pointer may be
 * NULL to skip that block. */
GLASS_API glass_status glass_graph_chain_csv(const glass_graph* graph, char** p_uu_csv,
                                             char** p_ul_csv);

/* ------------------------------------------------------------------ */
/* Labelling                                                           */
/* ------------------------------------------------------------------ */

typedef struct glass_labelling glass_labelling;

typedef struct glass_run_options {
    /* Number of nodes to assign the second label. Ignored when
     * truth_labels_csv is set, in which case m is the count of retained
     * nodes whose true label is the non-positive class. */
    int64_t m;
    const char* truth_labels_csv; /* nullable: node,label file */
    /* Label treated as the positive class K1; NULL picks the
     * lexicographically smaller label value. */
    const char* positive_label;
    /* "off" (default) or "iqr:K": drop nodes whose expected absorption
     * time exceeds Q3 + K * IQR, then recompute on the reduced graph. */
    const char* filter;
    /* Nonzero restores the exact (u-m)/m split when probabilities tie at
     * the threshold, breaking ties by node id. */
    int break_ties;
} glass_run_options;

GLASS_API void glass_run_options_init(glass_run_options* options);

/* Runs the full labelling pipeline on a graph handle. */
GLASS_API glass_status glass_label_graph(const glass_graph* graph,
                                         const glass_run_options* options,
                                         glass_labelling** out);

/* Convenience wrapper: load the graph from files, label it, and embed the
 * file digest in the JSON report. */
GLASS_API glass_status glass_label_files(const char* edges_csv_path,
                                         const char* labels_csv_path /* nullable */,
                                         const glass_run_options* options,
                                         glass_labelling** out);

GLASS_API void glass_labelling_free(glass_labelling* labelling);

/* Threshold chosen by the order-statistic rule (-inf when m = 0). */
GLASS_API double glass_labelling_alpha(const glass_labelling* labelling);
GLASS_API int64_t glass_labelling_m(const glass_labelling* labelling);
GLASS_API int64_t glass_labelling_estimated_count(const glass_labelling* labelling);
GLASS_API int64_t glass_labelling_filtered_count(const glass_labelling* labelling);
GLASS_API int64_t glass_labelling_stranded_count(const glass_labelling* labelling);

/* P(label = positive class) for one node; GLASS_ERR_INVALID when the node
 * was not estimated (filtered, stranded, labelled or unknown). */
GLASS_API glass_status glass_labelling_prob(const glass_labelling* labelling, const char* node,
                                            double* out);
GLASS_API glass_status glass_labelling_estimate(const glass_labelling* labelling,
                                                const char* node, char** out);

/* Per-node table `node,prob_k1,t,estimate` (header included). */
GLASS_API glass_status glass_labelling_csv(const glass_labelling* labelling, char** out);
/* Full result as JSON: options, threshold, estimates, filtered/stranded
 * nodes, warnings. */
GLASS_API glass_status glass_labelling_json(const glass_labelling* labelling, char** out);

/* ------------------------------------------------------------------ */
/* Roll-call ingestion                                                 */
/* ------------------------------------------------------------------ */

typedef struct glass_dataset glass_dataset;

typedef struct glass_ingest_options {
    const char* members_csv;   /* roster: congress,chamber,icpsr,party_code[,bioname] */
    const char* votes_csv;     /* congress,chamber,rollnumber,icpsr,cast_code[,date] */
    const char* rollcalls_csv; /* nullable: congress,chamber,rollnumber,date */
    const char* leaders_csv;   /* congress,chamber,member_id,party,role,start_date,end_date[,name] */
    int congress;
    const char* chamber; /* "house" or "senate" */
    /* Nonzero keeps roll calls where both party leaders voted alike. */
    int include_agreeing;
    /* Comma-separated cast/party code sets; NULL means the standard
     * defaults: yea "1", nay "6", Democrat "100", Republican "200". */
    const char* yea_codes;
    const char* nay_codes;
    const char* dem_codes;
    const char* rep_codes;
} glass_ingest_options;

GLASS_API void glass_ingest_options_init(glass_ingest_options* options);

/* Parses the inputs and applies the cleaning rules for one network. */
GLASS_API glass_status glass_ingest(const glass_ingest_options* options, glass_dataset** out);

GLASS_API void glass_dataset_free(glass_dataset* dataset);

GLASS_API int64_t glass_dataset_member_count(const glass_dataset* dataset);
GLASS_API int64_t glass_dataset_rollcall_count(const glass_dataset* dataset);
GLASS_API int64_t glass_dataset_leader_count(const glass_dataset* dataset);

/* Agreement network of the cleaned data as a graph handle. */
GLASS_API glass_status glass_dataset_graph(const glass_dataset* dataset, glass_graph** out);

/* Network files in the graph formats above. */
GLASS_API glass_status glass_dataset_edges_csv(const glass_dataset* dataset, char** out);
GLASS_API glass_status glass_dataset_labels_csv(const glass_dataset* dataset, char** out);
/* True party of every retained member (`node,label`), for evaluation. */
GLASS_API glass_status glass_dataset_truth_csv(const glass_dataset* dataset, char** out);

/* Per-rule reduction statistics as JSON. */
GLASS_API glass_status glass_dataset_stats_json(const glass_dataset* dataset, char** out);

/* ------------------------------------------------------------------ */
/* Batch evaluation                                                    */
/* ------------------------------------------------------------------ */

typedef struct glass_batch_options {
    const char* members_csv;
    const char* votes_csv;
    const char* rollcalls_csv; /* nullable */
    const char* leaders_csv;
    /* Selection: "74-115", "90", or "74,90-93"; chambers is "house",
     * "senate" or "both". */
    const char* congresses;
    const char* chambers;
    int include_agreeing;
    const char* filter;         /* as in glass_run_options */
    int break_ties;
    const char* positive_label; /* default "Democrat" */
    int jobs;                   /* parallel networks; 0 = machine cores */
    const char* yea_codes;
    const char* nay_codes;
    const char* dem_codes;
    const char* rep_codes;
} glass_batch_options;

GLASS_API void glass_batch_options_init(glass_batch_options* options);

/*
 * Ingests, labels and scores every selected network. Per-network failures
 * are recorded in the report; the batch itself still succeeds. The JSON
 * report carries one object per network (counts, F1 scores with either
 * party as positive class, separation gap, warnings, cleaning statistics)
 * plus the run configuration and an input digest. The series CSV holds
 * `congress,chamber,f1,gap` rows for plotting.
 */
GLASS_API glass_status glass_batch(const glass_batch_options* options, char** report_json_out,
                                   char** series_csv_out /* nullable */);

/* ------------------------------------------------------------------ */
/* Sensitivity                                                         */
/* ------------------------------------------------------------------ */

/*
 * Analyses one network twice — excluding and including roll calls on
 * which both party leaders voted alike — and reports Pearson and Spearman
 * correlations between the two probability vectors, both F1 scores, and a
 * paired per-node CSV.
 */
GLASS_API glass_status glass_sensitivity(const glass_ingest_options* options,
                                         const char* filter /* nullable */,
                                         char** json_out,
                                         char** paired_csv_out /* nullable */);

/* ------------------------------------------------------------------ */
/* Regression                                                          */
/* ------------------------------------------------------------------ */

/*
 * Fits the partisanship factor models for one chamber: the full
 * three-factor model (chamber majorities and presidency with all
 * interactions) and the two-factor agreement model, both against the F1
 * series produced by glass_batch. Collinear columns arising from empty
 * factorial cells are reported as aliased rather than failing the fit.
 *
 * series_csv_path: `congress,chamber,f1,gap` (glass_batch output)
 * controls_csv_path: `congress,house_majority,senate_majority,president_party`
 */
GLASS_API glass_status glass_regress(const char* series_csv_path, const char* controls_csv_path,
                                     const char* chamber, double significance_level,
                                     char** json_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GLASS_GLASS_H */
