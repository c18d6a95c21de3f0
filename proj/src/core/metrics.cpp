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

#include "core/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/error.hpp"
#include "core/stats.hpp"

namespace glass {

ConfusionMatrix confusion_matrix(const std::map<NodeId, Label>& estimates,
                                 const std::map<NodeId, Label>& truth, const Label& positive) {
    if (estimates.size() != truth.size())
        raise_invalid("confusion_matrix: estimate and truth node sets differ in size");
    ConfusionMatrix cm;
    for (const auto& [id, est] : estimates) {
        auto it = truth.find(id);
        if (it == truth.end())
            raise_invalid("confusion_matrix: node '" + id + "' missing from truth");
        const bool est_pos = est == positive;
        const bool true_pos = it->second == positive;
        if (est_pos && true_pos) ++cm.tp;
        else if (est_pos && !true_pos) ++cm.fp;
        else if (!est_pos && true_pos) ++cm.fn;
        else ++cm.tn;
    }
    return cm;
}

double f1_score(const ConfusionMatrix& cm) {
    const std::size_t denom = 2 * cm.tp + cm.fp + cm.fn;
    if (denom == 0)
        raise_invalid("F1 undefined: no positive instances in truth or estimates");
    return 2.0 * static_cast<double>(cm.tp) / static_cast<double>(denom);
}

std::vector<double> standardise_probs(const std::vector<double>& probs,
                                      const std::vector<bool>& in_group1) {
    if (probs.size() != in_group1.size())
        raise_invalid("standardise_probs: length mismatch");
    std::vector<double> g1, g2;
    for (std::size_t i = 0; i < probs.size(); ++i)
        (in_group1[i] ? g1 : g2).push_back(probs[i]);
    if (g1.size() < 2 || g2.size() < 2)
        raise_invalid("standardisation requires at least two members per group");

    const double grand_mean = mean(probs);
    const double s1 = sample_variance(g1);
    const double s2 = sample_variance(g2);
    const double df = static_cast<double>(g1.size() + g2.size() - 2);
    const double pooled =
        ((static_cast<double>(g1.size()) - 1.0) * s1 + (static_cast<double>(g2.size()) - 1.0) * s2) /
        df;
    if (!(pooled > 0.0)) raise_invalid("standardisation undefined: zero pooled variance");
    const double scale = std::sqrt(pooled);

    std::vector<double> z(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) z[i] = (probs[i] - grand_mean) / scale;
    return z;
}

double separation_gap(const std::vector<double>& z, const std::vector<bool>& in_group1) {
    if (z.size() != in_group1.size()) raise_invalid("separation_gap: length mismatch");
    double min1 = std::numeric_limits<double>::infinity();
    double max2 = -std::numeric_limits<double>::infinity();
    bool any1 = false, any2 = false;
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (in_group1[i]) {
            min1 = std::min(min1, z[i]);
            any1 = true;
        } else {
            max2 = std::max(max2, z[i]);
            any2 = true;
        }
    }
    if (!any1 || !any2) raise_invalid("separation_gap requires both groups nonempty");
    return min1 - max2;
}

}  // namespace glass
