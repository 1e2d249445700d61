#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "phidim/dimension_function.hpp"
#include "phidim/gap_sequence.hpp"
#include "phidim/level_stats.hpp"
#include "phidim/oracle.hpp"

namespace phidim {

/// One audit-trail row: a run of consecutive levels governed by the same
/// construction rule (for schedule builders the levels are dissection
/// levels; for the block-tree builder they are cluster levels).
struct ScheduleBlock {
    std::int64_t start = 0; // first level of the run (1-based)
    std::int64_t len = 0;
    std::string rule;  // which construction case produced the run
    double value = 0;  // the ratio (or length) used on the run
};

/// What a constructor produced, with enough detail to re-audit it: the
/// level schedule (when one exists), a rule trail partitioning the levels,
/// the constants instantiated from the construction's inequalities, and
/// the closed-form target values the construction is designed to hit.
struct ConstructionReport {
    std::string name;
    RatioSchedule schedule;
    std::vector<ScheduleBlock> trail;
    std::map<std::string, double> constants;
    std::map<std::string, double> targets;
    std::vector<std::string> notes;

    /// Throws HypothesisViolated unless the trail rows are contiguous from
    /// level 1 and (when a schedule is present) cover it exactly.
    void check_trail_partition() const;
};

/// Gap lengths 3^{-(m+1)} on dyadic index block m, continued geometrically,
/// so level sums are exact at any depth: s_n = 3^{-n}, total mass 1.
GapSequence middle_third_gaps(std::int64_t blocks);

/// The decreasing arrangement: one point at every tail sum of the gap
/// sequence (indices 1..n_points), plus the accumulation point 0.
FiniteApproximation decreasing_rearrangement(const GapSequence& gaps,
                                             std::int64_t n_points,
                                             std::string gap_id);

/// Points x_n = n^{-ln n}, with the dimension function whose scale rule
/// x_n^{1+phi(x_n)} equals the gap length at index 4n, extended
/// piecewise-constant between consecutive points. The product
/// phi(x_n) * ln n converges to 1 + 2 ln 4.
struct DecreasingExampleSet {
    FiniteApproximation points; // x_1..x_{n_points} and 0
    DimensionFunction phi;
    double phi_floor = 0; // 1/(1 + 2 ln 4): eventual dimension lower bound
    double phi_ceil = 0;  // 1/(1 + ln 3): eventual dimension upper bound
};
DecreasingExampleSet log_squared_decay_set(std::int64_t n_points);
double log_squared_decay_point(std::int64_t n); // x_n
double log_squared_decay_phi(std::int64_t n);   // phi(x_n), n >= 2

/// Streamed audit that the consecutive differences x_n - x_{n+1} never
/// increase. Returns the first n where monotonicity fails, or 0 when it
/// holds up to n_limit.
std::int64_t first_nonmonotone_decay_gap(std::int64_t n_limit);

/// Schedule separating two dimension functions: ratio rho on bursts whose
/// length is the depth of the burst start under phi2, ratio tau elsewhere,
/// burst starts n_1, 16 n_1, ... The phi2 dimension lands exactly on
/// log2/|log rho| while the phi1 dimension stays below log2/|log sigma|
/// for the blended sigma recorded in the report.
ConstructionReport dimension_gap_schedule(const DimensionFunction& phi1,
                                          const DimensionFunction& phi2,
                                          double tau, double rho, double xi,
                                          std::int64_t n1, std::int64_t N);

/// Schedule hitting a distinct dimension target for each sampled exponent
/// of the power-log family Phi_p(x) = |log x|^{p-1}: ratio f(p) = 2^{-1/d(p)}
/// on one burst per sample (samples cycled while the budget allows),
/// a^2 = 2^{-2/alpha} elsewhere. Optional pinning runs (ratio a on
/// (2 m_j, 4 m_j]) force the quasi-Assouad value up to alpha.
struct FamilyTarget {
    double p = 0; // power-log exponent in (0,1)
    double d = 0; // target dimension for that exponent, in [alpha, beta]
};
ConstructionReport family_target_schedule(std::vector<FamilyTarget> targets,
                                          double alpha, double beta,
                                          std::int64_t N, bool pinning);

/// Schedule with ratio 1/3 on short bursts and 1/27 elsewhere, bursts
/// placed sparsely against a sublinear depth rule so that the Assouad
/// dimension is log2/log3 while every scaled-down copy of the derived
/// dimension function sees at most log2/log9. The schedule is built past
/// the nominal N so that depths at level N still resolve.
struct SparseBurstSchedule {
    ConstructionReport report;
    DimensionFunction phi;   // derived from the depth rule on the levels
    std::int64_t levels = 0; // nominal N (the schedule itself is longer)
};
SparseBurstSchedule sparse_burst_schedule(
    const std::function<std::int64_t(std::int64_t)>& depth_rule,
    const std::function<std::int64_t(std::int64_t)>& burst_len,
    std::int64_t N);

/// Reads a dimension function off a schedule: phi(s_n) is fixed by how many
/// extra levels the depth rule demands at n (s_n^{1+phi(s_n)} = s_{n+rule(n)}),
/// attached piecewise-constant to the level points. Requires stats deep
/// enough to reach last_level + rule(last_level).
DimensionFunction dimension_function_from_depth_rule(
    const LevelStats& stats,
    const std::function<std::int64_t(std::int64_t)>& depth_rule,
    std::int64_t first_level, std::int64_t last_level);

/// Block-tree arrangement: a self-similar point cluster whose level-j
/// separators are J_j adjacent gaps of one dyadic block (sized so each
/// separator is comparable to alpha_m beta^j, beta = 2^{-1/d}), placed to
/// the right of a tree of the residual gaps. The cluster realizes
/// quasi-Assouad dimension d inside a set using the same gap multiset.
struct BlockTreeArrangement {
    ConstructionReport report;
    FiniteApproximation whole;   // residual tree + separator gap + cluster
    FiniteApproximation cluster; // the cluster alone, same coordinates
    double beta = 0;
    double cluster_diameter = 0;
    std::vector<std::int64_t> block_repeat;  // J_j per cluster level j
    std::vector<std::int64_t> block_index;   // i(j) per cluster level j
    std::vector<std::int64_t> gaps_used;     // per dyadic offset k, gaps consumed
};
BlockTreeArrangement block_tree_arrangement(const GapSequence& gaps, double d,
                                            std::int64_t m1,
                                            std::int64_t levels,
                                            std::int64_t residual_stage);

/// Splits a summable decreasing sequence into a thinned subsequence b
/// (with box dimension gamma * sigma by construction) and the remaining
/// gaps. Tower indices n_k = 2, 4, 16, 65536, ... are kept verbatim inside
/// their bracket; every other b_m samples at floor(m^{1/gamma}).
struct SubsequenceSplit {
    GapSequence b;
    GapSequence remainder;
    std::vector<std::int64_t> consumed; // original indices used by b
    double sigma = 0;                   // box dimension of the input gaps
    double gamma = 0;                   // d (1 - theta) / sigma
    ConstructionReport report;
};
SubsequenceSplit subsequence_split(const GapSequence& gaps, double d,
                                   double theta, std::int64_t b_count);

/// How gaps are assigned to the nodes of a dissection tree. Node i of the
/// stage-L heap (i = 1 .. 2^L - 1) removes gap a_{order[i-1]}; the
/// canonical tree uses the identity order. BlockTree arrangements carry
/// their own geometry and are realized by block_tree_arrangement.
struct Arrangement {
    enum class Kind { CantorTree, DecreasingOrder, ExplicitOrder, BlockTree };
    Kind kind = Kind::CantorTree;
    std::uint64_t seed = 0;            // ExplicitOrder provenance
    std::vector<std::int64_t> order;   // ExplicitOrder only
};

/// Seeded uniformly random permutation of the first 2^stage - 1 gap
/// indices, as an ExplicitOrder arrangement. Deterministic per seed.
Arrangement random_rearrangement(std::uint64_t seed, std::int64_t stage);

/// Realizes a tree arrangement of the gap sequence at the given stage:
/// 2^stage closed intervals of width s_stage separated by the 2^stage - 1
/// placed gaps. Requires a block-constant sequence (the only case where
/// stage intervals have the exact common width s_stage).
FiniteApproximation realize_arrangement(const GapSequence& gaps,
                                        const Arrangement& arrangement,
                                        std::int64_t stage,
                                        std::string gap_id);

/// Canonical tree arrangement shorthand.
FiniteApproximation cantor_tree_approximation(const GapSequence& gaps,
                                              std::int64_t stage,
                                              std::string gap_id);

/// Stage intervals of a central construction: 2^stage intervals of length
/// s_stage placed at the ends of their parents.
FiniteApproximation central_cantor_approximation(const LevelStats& stats,
                                                 std::int64_t stage,
                                                 std::string gap_id);

} // namespace phidim
