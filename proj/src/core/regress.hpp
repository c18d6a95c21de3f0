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

#include <string>
#include <vector>

#include "core/congress.hpp"
#include "core/matrix.hpp"

namespace glass {

/// Which party controlled each branch during one Congress.
struct ControlRecord {
    int congress = 0;
    Party house = Party::dem;
    Party senate = Party::dem;
    Party president = Party::dem;
};

/// CSV with header `congress,house_majority,senate_majority,president_party`.
std::vector<ControlRecord> read_controls(const std::string& path);

enum class RegressionModel {
    /// F ~ H + S + P with all two- and three-way interactions.
    full_three_factor,
    /// F ~ (other chamber same?) + (president same?) + interaction,
    /// relative to the modelled chamber's own majority.
    agreement_two_factor,
};

struct Design {
    Matrix x;
    std::vector<double> response;
    std::vector<std::string> terms;  // column names, intercept first
};

/// Treatment coding with Democrat control (or "same party") as the
/// reference level. Raises when a factor is constant over the sample,
/// naming the offending column.
Design build_design(const std::vector<ControlRecord>& records, const std::vector<double>& f1,
                    Chamber chamber, RegressionModel model);

struct OlsTerm {
    std::string name;
    double estimate = 0.0;
    double se = 0.0;
    double t = 0.0;
    double p = 1.0;
    bool aliased = false;  // dropped for collinearity; statistics are NaN
};

struct OlsFit {
    std::vector<OlsTerm> terms;
    std::size_t n = 0;
    std::size_t rank = 0;
    double df_residual = 0.0;
    double sigma2 = 0.0;
    double r_squared = 0.0;
    std::vector<double> residuals;
    std::vector<std::string> dropped;  // names of aliased columns
};

/// Plain least squares via Householder QR. Requires full column rank;
/// raises ErrorCode::numeric otherwise. Standard errors from
/// s^2 (X^T X)^{-1}; p-values from the t distribution with n-k df.
OlsFit ols_fit(const Matrix& x, const std::vector<double>& y,
               const std::vector<std::string>& terms);

/// ols_fit with aliased-column handling: collinear columns (detected in
/// order, earlier columns win) are dropped from the fit and reported as
/// aliased instead of failing, mirroring how standard regression software
/// treats factorial designs with empty cells.
OlsFit fit_model(const Design& design);

struct SignificanceEntry {
    std::string term;
    double p = 1.0;
    bool significant = false;
};

/// Flags every non-aliased term with p < level.
std::vector<SignificanceEntry> significance_report(const OlsFit& fit, double level = 0.05);

/// One row of the batch series output.
struct SeriesPoint {
    int congress = 0;
    Chamber chamber = Chamber::house;
    double f1 = 0.0;
};

/// Reads `congress,chamber,f1[,gap]` (header required, '#' lines skipped).
std::vector<SeriesPoint> read_series_csv(const std::string& path);

/// Fits both factor models for one chamber against its F1 series and
/// serialises estimates, standard errors, t statistics, p-values and the
/// significance verdicts. Controls and series are joined on congress;
/// every series row must have a control record.
std::string regression_report_json(const std::vector<ControlRecord>& controls,
                                   const std::vector<SeriesPoint>& series, Chamber chamber,
                                   double level, const std::string& config_json,
                                   const std::string& input_digest);

}  // namespace glass
