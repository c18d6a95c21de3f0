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

#include <cstdint>
#include <optional>
#include <vector>

#include "core/graph.hpp"
#include "core/matrix.hpp"

namespace glass {

/// Row-stochastic random-walk structure of a partially labelled graph.
/// Unlabelled nodes become transient states, labelled nodes absorbing
/// states. Absorbing rows are the identity by definition and are never
/// stored; only the transient blocks are materialised:
///
///   p_uu — transitions among transient states (u x u)
///   p_ul — transitions from transient into absorbing states (u x l)
struct AbsorbingChain {
    std::vector<NodeId> transient_ids;  // sorted, size u
    std::vector<NodeId> absorbing_ids;  // sorted, size l
    Matrix p_uu;
    Matrix p_ul;

    std::size_t transient_count() const { return transient_ids.size(); }
    std::size_t absorbing_count() const { return absorbing_ids.size(); }
};

/// Tolerances enforced by construction and after every solve.
inline constexpr double kRowSumTol = 1e-12;      // [p_uu | p_ul] row sums
inline constexpr double kResidualTol = 1e-10;    // max-norm residual of solves
inline constexpr double kProbRowSumTol = 1e-9;   // absorption rows sum to 1

/// Normalises edge weights into transition probabilities, one row per
/// transient node. Preconditions: at least one labelled node, no stranded
/// unlabelled node (callers exclude those first), every unlabelled node has
/// positive weighted degree.
AbsorbingChain to_absorbing_chain(const WeightedGraph& graph);

struct ProbabilityResult {
    Matrix h;         // u x l, row i = absorption distribution of transient i
    double residual;  // max-norm residual of the linear solve
};

struct TimeResult {
    std::vector<double> t;  // expected steps to absorption per transient node
    double residual;
};

/// Exact absorption probabilities: solves (I - p_uu) H = p_ul and verifies
/// the residual, entry bounds and unit row sums.
ProbabilityResult absorption_probabilities(const AbsorbingChain& chain);

/// Exact expected steps to absorption: solves (I - p_uu) t = 1.
TimeResult expected_absorption_times(const AbsorbingChain& chain);

/// Both solves off a single factorisation.
struct AbsorptionResult {
    Matrix h;
    std::vector<double> t;
    double residual_h;
    double residual_t;
};
AbsorptionResult solve_absorption(const AbsorbingChain& chain);

/// Debug view of the transient blocks: `state,targets...` rows with a
/// header of target ids, one file's worth of text per block.
std::string chain_block_csv(const AbsorbingChain& chain, bool transient_block);

/// One seeded random walk; the Monte Carlo oracle for the exact solvers.
/// Returns the absorbing node reached and the step count, or nullopt if
/// max_steps elapsed first. Fully deterministic for a given seed.
struct WalkOutcome {
    std::optional<NodeId> absorbed_at;
    std::int64_t steps;
};
WalkOutcome simulate_walk(const AbsorbingChain& chain, const NodeId& start, std::uint64_t seed,
                          std::int64_t max_steps);

}  // namespace glass
