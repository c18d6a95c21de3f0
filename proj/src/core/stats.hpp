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

#include <vector>

namespace glass {

double mean(const std::vector<double>& xs);

/// Unbiased sample variance (n-1 denominator). Requires n >= 2.
double sample_variance(const std::vector<double>& xs);

/// Linear-interpolation quantile (the common "type 7" rule), p in [0,1].
double quantile(std::vector<double> xs, double p);

/// Product-moment correlation. Requires equal lengths >= 2 and nonzero
/// variance on both sides.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

/// Rank correlation: Pearson applied to average-tied ranks.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

/// Ranks 1..n with ties replaced by their average rank.
std::vector<double> average_ranks(const std::vector<double>& xs);

/// Regularised incomplete beta function I_x(a, b).
double incomplete_beta(double a, double b, double x);

/// CDF of Student's t with df degrees of freedom.
double student_t_cdf(double t, double df);

/// Two-sided p-value for a t statistic with df degrees of freedom.
double student_t_two_sided_p(double t, double df);

}  // namespace glass
