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

#include "core/chain.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <unordered_map>

#include "core/csv.hpp"
#include "core/error.hpp"

namespace glass {

AbsorbingChain to_absorbing_chain(const WeightedGraph& graph) {
    if (graph.labelled_count() == 0)
        raise_invalid("cannot build an absorbing chain without labelled nodes");

    const std::size_t n = graph.node_count();
    std::vector<std::size_t> transient, absorbing;
    transient.reserve(graph.unlabelled_count());
    absorbing.reserve(graph.labelled_count());
    for (std::size_t i = 0; i < n; ++i) {
        if (graph.label_of(i)) absorbing.push_back(i);
        else transient.push_back(i);
    }

    for (std::size_t idx : transient) {
        if (!(graph.weighted_degree(idx) > 0.0))
            raise_invalid("unlabelled node '" + graph.node(idx) + "' has zero weighted degree");
    }
    Reachability reach = graph.reachable_to_labelled();
    if (!reach.stranded.empty()) {
        std::string names;
        for (std::size_t k = 0; k < reach.stranded.size() && k < 5; ++k) {
            if (k) names += ", ";
            names += graph.node(reach.stranded[k]);
        }
        raise_invalid("stranded unlabelled nodes present (exclude them first): " + names +
                      (reach.stranded.size() > 5 ? ", ..." : ""));
    }

    // position of each graph index inside its block
    std::vector<std::size_t> pos(n, 0);
    for (std::size_t k = 0; k < transient.size(); ++k) pos[transient[k]] = k;
    for (std::size_t k = 0; k < absorbing.size(); ++k) pos[absorbing[k]] = k;

    AbsorbingChain chain;
    chain.transient_ids.reserve(transient.size());
    for (std::size_t idx : transient) chain.transient_ids.push_back(graph.node(idx));
    chain.absorbing_ids.reserve(absorbing.size());
    for (std::size_t idx : absorbing) chain.absorbing_ids.push_back(graph.node(idx));

    const std::size_t u = transient.size(), l = absorbing.size();
    chain.p_uu = Matrix(u, u, 0.0);
    chain.p_ul = Matrix(u, l, 0.0);

    for (std::size_t k = 0; k < u; ++k) {
        const std::size_t idx = transient[k];
        const double degree = graph.weighted_degree(idx);
        double row_sum = 0.0;
        for (const auto& [nbr, w] : graph.neighbours(idx)) {
            const double p = w / degree;
            if (graph.label_of(nbr)) chain.p_ul(k, pos[nbr]) += p;
            else chain.p_uu(k, pos[nbr]) += p;
            row_sum += p;
        }
        if (std::abs(row_sum - 1.0) > kRowSumTol)
            raise_numeric("transition row for node '" + graph.node(idx) +
                          "' sums to " + format_double(row_sum));
    }
    return chain;
}

namespace {

void check_probability_rows(const AbsorbingChain& chain, Matrix& h) {
    constexpr double kBoundSlack = 1e-9;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        double row_sum = 0.0;
        for (std::size_t j = 0; j < h.cols(); ++j) {
            double v = h(i, j);
            if (v < -kBoundSlack || v > 1.0 + kBoundSlack)
                raise_numeric("absorption probability out of bounds for node '" +
                              chain.transient_ids[i] + "': " + format_double(v));
            v = std::min(1.0, std::max(0.0, v));
            h(i, j) = v;
            row_sum += v;
        }
        if (std::abs(row_sum - 1.0) > kProbRowSumTol)
            raise_numeric("absorption probabilities for node '" + chain.transient_ids[i] +
                          "' sum to " + format_double(row_sum) + ", expected 1");
    }
}

void check_times(const AbsorbingChain& chain, const std::vector<double>& t) {
    constexpr double kOneSlack = 1e-9;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < 1.0 - kOneSlack)
            raise_numeric("expected absorption time below 1 for node '" +
                          chain.transient_ids[i] + "': " + format_double(t[i]));
    }
}

Matrix i_minus_puu(const AbsorbingChain& chain) {
    const std::size_t u = chain.transient_count();
    Matrix m(u, u, 0.0);
    for (std::size_t i = 0; i < u; ++i) {
        for (std::size_t j = 0; j < u; ++j) m(i, j) = -chain.p_uu(i, j);
        m(i, i) += 1.0;
    }
    return m;
}

}  // namespace

ProbabilityResult absorption_probabilities(const AbsorbingChain& chain) {
    const Matrix system = i_minus_puu(chain);
    const LuFactor lu(system);
    Matrix h = lu.solve(chain.p_ul);
    const double residual = max_residual(system, h, chain.p_ul);
    if (residual > kResidualTol)
        raise_numeric("absorption solve residual " + format_double(residual) +
                      " above tolerance " + format_double(kResidualTol));
    check_probability_rows(chain, h);
    return {std::move(h), residual};
}

TimeResult expected_absorption_times(const AbsorbingChain& chain) {
    const Matrix system = i_minus_puu(chain);
    const LuFactor lu(system);
    const std::vector<double> ones(chain.transient_count(), 1.0);
    std::vector<double> t = lu.solve(ones);
    const double residual = max_residual(system, t, ones);
    if (residual > kResidualTol)
        raise_numeric("absorption-time solve residual " + format_double(residual) +
                      " above tolerance " + format_double(kResidualTol));
    check_times(chain, t);
    return {std::move(t), residual};
}

AbsorptionResult solve_absorption(const AbsorbingChain& chain) {
    const Matrix system = i_minus_puu(chain);
    const LuFactor lu(system);

    Matrix h = lu.solve(chain.p_ul);
    const double residual_h = max_residual(system, h, chain.p_ul);
    if (residual_h > kResidualTol)
        raise_numeric("absorption solve residual " + format_double(residual_h) +
                      " above tolerance " + format_double(kResidualTol));
    check_probability_rows(chain, h);

    const std::vector<double> ones(chain.transient_count(), 1.0);
    std::vector<double> t = lu.solve(ones);
    const double residual_t = max_residual(system, t, ones);
    if (residual_t > kResidualTol)
        raise_numeric("absorption-time solve residual " + format_double(residual_t) +
                      " above tolerance " + format_double(kResidualTol));
    check_times(chain, t);

    return {std::move(h), std::move(t), residual_h, residual_t};
}

std::string chain_block_csv(const AbsorbingChain& chain, bool transient_block) {
    std::ostringstream out;
    const Matrix& block = transient_block ? chain.p_uu : chain.p_ul;
    const std::vector<NodeId>& cols =
        transient_block ? chain.transient_ids : chain.absorbing_ids;
    out << "state";
    for (const NodeId& id : cols) out << ',' << csv_escape(id);
    out << '\n';
    for (std::size_t i = 0; i < chain.transient_count(); ++i) {
        out << csv_escape(chain.transient_ids[i]);
        for (std::size_t j = 0; j < block.cols(); ++j) out << ',' << format_double(block(i, j));
        out << '\n';
    }
    return out.str();
}

WalkOutcome simulate_walk(const AbsorbingChain& chain, const NodeId& start, std::uint64_t seed,
                          std::int64_t max_steps) {
    if (max_steps < 1) raise_invalid("simulate_walk requires max_steps >= 1");
    std::size_t state = chain.transient_count();
    for (std::size_t i = 0; i < chain.transient_count(); ++i) {
        if (chain.transient_ids[i] == start) {
            state = i;
            break;
        }
    }
    if (state == chain.transient_count())
        raise_invalid("simulate_walk start node '" + start + "' is not a transient state");

    std::mt19937_64 gen(seed);
    // top 53 bits -> [0,1); <random> distributions are not bit-identical
    // across standard libraries, this mapping is
    auto next_uniform = [&gen]() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };

    const std::size_t u = chain.transient_count(), l = chain.absorbing_count();
    for (std::int64_t step = 1; step <= max_steps; ++step) {
        const double draw = next_uniform();
        double cum = 0.0;
        std::size_t next_state = u;       // sentinel: nothing chosen yet
        bool absorbed = false;
        std::size_t absorbed_at = 0;
        // walk the row's cumulative distribution: transient block first
        for (std::size_t j = 0; j < u && next_state == u && !absorbed; ++j) {
            const double p = chain.p_uu(state, j);
            if (p <= 0.0) continue;
            cum += p;
            if (draw < cum) next_state = j;
        }
        if (next_state == u) {
            for (std::size_t j = 0; j < l && !absorbed; ++j) {
                const double p = chain.p_ul(state, j);
                if (p <= 0.0) continue;
                cum += p;
                if (draw < cum) {
                    absorbed = true;
                    absorbed_at = j;
                }
            }
        }
        if (!absorbed && next_state == u) {
            // rounding pushed the draw past the accumulated mass; take the
            // last positive entry of the row
            for (std::size_t j = l; j-- > 0;) {
                if (chain.p_ul(state, j) > 0.0) {
                    absorbed = true;
                    absorbed_at = j;
                    break;
                }
            }
            if (!absorbed) {
                for (std::size_t j = u; j-- > 0;) {
                    if (chain.p_uu(state, j) > 0.0) {
                        next_state = j;
                        break;
                    }
                }
            }
        }
        if (absorbed) return {chain.absorbing_ids[absorbed_at], step};
        state = next_state;
    }
    return {std::nullopt, max_steps};
}

}  // namespace glass
