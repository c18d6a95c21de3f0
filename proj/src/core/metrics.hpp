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
#include <string>
#include <vector>

#include "core/graph.hpp"

namespace glass {

struct ConfusionMatrix {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;

    std::size_t total() const { return tp + fp + fn + tn; }
};

/// Counts against a designated positive class. Estimates and truth must
/// cover exactly the same nodes.
ConfusionMatrix confusion_matrix(const std::map<NodeId, Label>& estimates,
                                 const std::map<NodeId, Label>& truth, const Label& positive);

/// F1 = 2TP / (2TP + FP + FN). Undefined (error) when TP = FP = FN = 0.
double f1_score(const ConfusionMatrix& cm);

/// Standardises probabilities with the grand mean and the two groups'
/// pooled within-group variance: z_i = (p_i - mean) / s_pooled with
/// s_pooled^2 = ((n1-1) s1^2 + (n2-1) s2^2) / (n1 + n2 - 2).
/// `in_group1[i]` says which group value i belongs to. Both groups need at
/// least two members and the pooled variance must be positive.
std::vector<double> standardise_probs(const std::vector<double>& probs,
                                      const std::vector<bool>& in_group1);

/// Smallest standardised value in group 1 minus the largest in group 2.
/// Positive means the groups' supports are disjoint.
double separation_gap(const std::vector<double>& z, const std::vector<bool>& in_group1);

}  // namespace glass
