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

#include "core/regress.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include <json.hpp>

#include "core/csv.hpp"
#include "core/error.hpp"
#include "core/stats.hpp"

namespace glass {

std::vector<ControlRecord> read_controls(const std::string& path) {
    CsvReader reader(path);
    const std::size_t c_congress = reader.require_column("congress");
    const std::size_t c_house = reader.require_column("house_majority");
    const std::size_t c_senate = reader.require_column("senate_majority");
    const std::size_t c_president = reader.require_column("president_party");

    std::vector<ControlRecord> out;
    std::set<int> seen;
    reader.for_each_record([&](const std::vector<std::string>& f, std::size_t line_no) {
        ControlRecord r;
        r.congress = static_cast<int>(reader.to_int(f.at(c_congress), line_no, "congress"));
        auto field = [&](std::size_t col, const char* what) {
            auto p = try_parse_party(f.at(col));
            if (!p)
                raise_parse(path + ":" + std::to_string(line_no) + ": bad " + std::string(what) +
                            " '" + f.at(col) + "'");
            return *p;
        };
        r.house = field(c_house, "house majority");
        r.senate = field(c_senate, "senate majority");
        r.president = field(c_president, "president party");
        if (!seen.insert(r.congress).second)
            raise_parse(path + ": duplicate congress " + std::to_string(r.congress));
        out.push_back(r);
    });
    return out;
}

namespace {

void check_factor_varies(const std::vector<double>& column, const std::string& name) {
    for (std::size_t i = 1; i < column.size(); ++i)
        if (column[i] != column[0]) return;
    raise_invalid("factor '" + name + "' is constant over the sample; design is rank deficient");
}

}  // namespace

Design build_design(const std::vector<ControlRecord>& records, const std::vector<double>& f1,
                    Chamber chamber, RegressionModel model) {
    if (records.size() != f1.size())
        raise_invalid("build_design: records and response lengths differ");
    if (records.size() < 2) raise_invalid("build_design: need at least two observations");

    const std::size_t n = records.size();
    Design design;
    design.response = f1;

    if (model == RegressionModel::full_three_factor) {
        // indicator 1 = Republican control, reference level Democrat
        std::vector<double> h(n), s(n), p(n);
        for (std::size_t i = 0; i < n; ++i) {
            h[i] = records[i].house == Party::rep ? 1.0 : 0.0;
            s[i] = records[i].senate == Party::rep ? 1.0 : 0.0;
            p[i] = records[i].president == Party::rep ? 1.0 : 0.0;
        }
        check_factor_varies(h, "house_majority");
        check_factor_varies(s, "senate_majority");
        check_factor_varies(p, "president_party");
        design.terms = {"(Intercept)", "H", "S", "P", "H:S", "H:P", "S:P", "H:S:P"};
        design.x = Matrix(n, 8, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            design.x(i, 0) = 1.0;
            design.x(i, 1) = h[i];
            design.x(i, 2) = s[i];
            design.x(i, 3) = p[i];
            design.x(i, 4) = h[i] * s[i];
            design.x(i, 5) = h[i] * p[i];
            design.x(i, 6) = s[i] * p[i];
            design.x(i, 7) = h[i] * s[i] * p[i];
        }
        return design;
    }

    // agreement model: indicator 1 = controlled by a different party than
    // the modelled chamber's majority, reference level "same"
    std::vector<double> other(n), pres(n);
    std::string other_name =
        chamber == Chamber::house ? "senate_differs" : "house_differs";
    for (std::size_t i = 0; i < n; ++i) {
        const Party own = chamber == Chamber::house ? records[i].house : records[i].senate;
        const Party oth = chamber == Chamber::house ? records[i].senate : records[i].house;
        other[i] = oth != own ? 1.0 : 0.0;
        pres[i] = records[i].president != own ? 1.0 : 0.0;
    }
    check_factor_varies(other, other_name);
    check_factor_varies(pres, "president_differs");
    design.terms = {"(Intercept)", other_name, "president_differs",
                    other_name + ":president_differs"};
    design.x = Matrix(n, 4, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        design.x(i, 0) = 1.0;
        design.x(i, 1) = other[i];
        design.x(i, 2) = pres[i];
        design.x(i, 3) = other[i] * pres[i];
    }
    return design;
}

OlsFit ols_fit(const Matrix& x, const std::vector<double>& y,
               const std::vector<std::string>& terms) {
    const std::size_t n = x.rows(), k = x.cols();
    if (n < k) raise_invalid("ols_fit: fewer observations than columns");
    if (y.size() != n) raise_invalid("ols_fit: response length mismatch");
    if (terms.size() != k) raise_invalid("ols_fit: term name count mismatch");
    for (double v : x.data())
        if (!std::isfinite(v)) raise_invalid("ols_fit: non-finite design entry");
    for (double v : y)
        if (!std::isfinite(v)) raise_invalid("ols_fit: non-finite response entry");

    const QrFactor qr(x);
    double max_diag = 0.0;
    for (double d : qr.r_diagonal()) max_diag = std::max(max_diag, std::abs(d));
    for (std::size_t j = 0; j < k; ++j) {
        if (std::abs(qr.r_diagonal()[j]) <= 1e-10 * max_diag)
            raise_numeric("rank-deficient design: column '" + terms[j] +
                          "' is collinear with its predecessors");
    }

    OlsFit fit;
    fit.n = n;
    fit.rank = k;
    fit.df_residual = static_cast<double>(n - k);

    const std::vector<double> beta = qr.solve(y);
    fit.residuals.resize(n);
    double rss = 0.0, tss = 0.0;
    const double ybar = mean(y);
    for (std::size_t i = 0; i < n; ++i) {
        double fitted = 0.0;
        for (std::size_t j = 0; j < k; ++j) fitted += x(i, j) * beta[j];
        fit.residuals[i] = y[i] - fitted;
        rss += fit.residuals[i] * fit.residuals[i];
        tss += (y[i] - ybar) * (y[i] - ybar);
    }
    fit.sigma2 = fit.df_residual > 0.0 ? rss / fit.df_residual : 0.0;
    fit.r_squared = tss > 0.0 ? 1.0 - rss / tss : 1.0;

    const Matrix cov = qr.xtx_inverse();
    fit.terms.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        OlsTerm& term = fit.terms[j];
        term.name = terms[j];
        term.estimate = beta[j];
        term.se = std::sqrt(std::max(0.0, fit.sigma2 * cov(j, j)));
        if (term.se > 0.0) {
            term.t = term.estimate / term.se;
            term.p = fit.df_residual > 0.0 ? student_t_two_sided_p(term.t, fit.df_residual)
                                           : std::numeric_limits<double>::quiet_NaN();
        } else {
            // zero residual variance: estimates are exact
            term.t = term.estimate == 0.0 ? 0.0
                                          : std::copysign(
                                                std::numeric_limits<double>::infinity(),
                                                term.estimate);
            term.p = term.estimate == 0.0 ? 1.0 : 0.0;
        }
    }
    return fit;
}

OlsFit fit_model(const Design& design) {
    const std::size_t n = design.x.rows(), k = design.x.cols();

    // detect collinear columns in order (earlier columns win) with
    // modified Gram-Schmidt; the survivors go to the strict fitter
    std::vector<std::vector<double>> basis;
    std::vector<std::size_t> kept;
    std::vector<std::size_t> dropped;
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<double> v(n);
        double orig_norm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = design.x(i, j);
            orig_norm2 += v[i] * v[i];
        }
        for (const auto& q : basis) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += q[i] * v[i];
            for (std::size_t i = 0; i < n; ++i) v[i] -= dot * q[i];
        }
        double norm2 = 0.0;
        for (double vi : v) norm2 += vi * vi;
        if (orig_norm2 == 0.0 || norm2 <= 1e-16 * orig_norm2) {
            dropped.push_back(j);
            continue;
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (double& vi : v) vi *= inv;
        basis.push_back(std::move(v));
        kept.push_back(j);
    }

    Matrix xr(n, kept.size());
    std::vector<std::string> names;
    for (std::size_t c = 0; c < kept.size(); ++c) {
        names.push_back(design.terms[kept[c]]);
        for (std::size_t i = 0; i < n; ++i) xr(i, c) = design.x(i, kept[c]);
    }

    OlsFit fit = ols_fit(xr, design.response, names);

    // merge aliased terms back, in design order, with NaN statistics
    std::vector<OlsTerm> merged;
    merged.reserve(k);
    std::size_t next_kept = 0;
    for (std::size_t j = 0; j < k; ++j) {
        if (next_kept < kept.size() && kept[next_kept] == j) {
            merged.push_back(fit.terms[next_kept]);
            ++next_kept;
        } else {
            OlsTerm t;
            t.name = design.terms[j];
            t.aliased = true;
            t.estimate = t.se = t.t = t.p = std::numeric_limits<double>::quiet_NaN();
            merged.push_back(t);
            fit.dropped.push_back(design.terms[j]);
        }
    }
    fit.terms = std::move(merged);
    return fit;
}

std::vector<SignificanceEntry> significance_report(const OlsFit& fit, double level) {
    if (!(level > 0.0 && level < 1.0)) raise_invalid("significance level must be in (0,1)");
    std::vector<SignificanceEntry> out;
    for (const OlsTerm& term : fit.terms) {
        if (term.aliased) continue;
        SignificanceEntry e;
        e.term = term.name;
        e.p = term.p;
        e.significant = std::isfinite(term.p) ? term.p < level : false;
        out.push_back(e);
    }
    return out;
}

std::vector<SeriesPoint> read_series_csv(const std::string& path) {
    CsvReader reader(path);
    const std::size_t c_congress = reader.require_column("congress");
    const std::size_t c_chamber = reader.require_column("chamber");
    const std::size_t c_f1 = reader.require_column("f1");

    std::vector<SeriesPoint> out;
    reader.for_each_record([&](const std::vector<std::string>& f, std::size_t line_no) {
        SeriesPoint p;
        p.congress = static_cast<int>(reader.to_int(f.at(c_congress), line_no, "congress"));
        auto chamber = try_parse_chamber(f.at(c_chamber));
        if (!chamber)
            raise_parse(path + ":" + std::to_string(line_no) + ": bad chamber '" +
                        f.at(c_chamber) + "'");
        p.chamber = *chamber;
        p.f1 = reader.to_double(f.at(c_f1), line_no, "f1");
        out.push_back(p);
    });
    return out;
}

namespace {

nlohmann::ordered_json fit_to_json(const OlsFit& fit, double level) {
    auto num = [](double v) {
        return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
    };
    nlohmann::ordered_json j;
    j["n"] = fit.n;
    j["rank"] = fit.rank;
    j["df_residual"] = fit.df_residual;
    j["sigma2"] = num(fit.sigma2);
    j["r_squared"] = num(fit.r_squared);
    j["dropped"] = fit.dropped;
    j["terms"] = nlohmann::ordered_json::array();
    for (const OlsTerm& t : fit.terms) {
        nlohmann::ordered_json term;
        term["term"] = t.name;
        term["aliased"] = t.aliased;
        term["estimate"] = num(t.estimate);
        term["se"] = num(t.se);
        term["t"] = num(t.t);
        term["p"] = num(t.p);
        term["significant"] = t.aliased ? false : (std::isfinite(t.p) && t.p < level);
        j["terms"].push_back(term);
    }
    std::size_t significant = 0, predictors = 0;
    for (const auto& s : significance_report(fit, level)) {
        if (!s.significant) continue;
        ++significant;
        if (s.term != "(Intercept)") ++predictors;
    }
    j["significant_terms"] = significant;
    j["significant_predictors"] = predictors;  // intercept excluded
    return j;
}

}  // namespace

std::string regression_report_json(const std::vector<ControlRecord>& controls,
                                   const std::vector<SeriesPoint>& series, Chamber chamber,
                                   double level, const std::string& config_json,
                                   const std::string& input_digest) {
    std::map<int, ControlRecord> by_congress;
    for (const auto& r : controls) by_congress[r.congress] = r;

    std::vector<ControlRecord> records;
    std::vector<double> f1;
    std::vector<SeriesPoint> filtered;
    for (const auto& p : series)
        if (p.chamber == chamber) filtered.push_back(p);
    std::sort(filtered.begin(), filtered.end(),
              [](const SeriesPoint& a, const SeriesPoint& b) { return a.congress < b.congress; });
    for (const auto& p : filtered) {
        auto it = by_congress.find(p.congress);
        if (it == by_congress.end())
            raise_data("no control record for congress " + std::to_string(p.congress));
        records.push_back(it->second);
        f1.push_back(p.f1);
    }
    if (records.empty()) raise_data("series has no rows for chamber " + to_string(chamber));

    const OlsFit full = fit_model(build_design(records, f1, chamber,
                                               RegressionModel::full_three_factor));
    const OlsFit agreement = fit_model(build_design(records, f1, chamber,
                                                    RegressionModel::agreement_two_factor));

    nlohmann::ordered_json j;
    j["run_config"] = nlohmann::ordered_json::parse(config_json);
    j["input_hash"] = input_digest;
    j["chamber"] = to_string(chamber);
    j["observations"] = records.size();
    j["significance_level"] = level;
    j["models"] = nlohmann::ordered_json::array();
    {
        nlohmann::ordered_json m;
        m["model"] = "full_three_factor";
        m["fit"] = fit_to_json(full, level);
        j["models"].push_back(m);
    }
    {
        nlohmann::ordered_json m;
        m["model"] = "agreement_two_factor";
        m["fit"] = fit_to_json(agreement, level);
        j["models"].push_back(m);
    }
    return j.dump(2) + "\n";
}

}  // namespace glass
