// disc.hpp — discrepancy estimators: cost-sensitive S-disc, d_H, exact grid
// oracles, the X-disc SDP data builder, and source ranking.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "disckit/core.hpp"
#include "disckit/learner.hpp"

namespace disckit {

enum class Measure { sdisc, dh, xdisc_bruteforce };

const char* measure_name(Measure m);
Measure measure_from_name(const std::string& name);

struct DiscDiagnostics {
    double j_value{0.0};       // objective at the returned hypothesis
    double j_raw{0.0};         // objective at the trained minimizer h''
    double term_T{0.0};        // target-side risk of the witness
    double term_S{0.0};        // source-side risk of the witness
    bool clamped{false};       // candidate fallback replaced h''
    std::string method;        // "cost_sensitive" | "grid" | "pair_grid"
};

struct DiscrepancyReport {
    Measure measure{Measure::sdisc};
    double value{0.0};                       // always in [0, 1]
    std::optional<Hypothesis> reference;     // trained source classifier
    std::vector<Hypothesis> witness;         // achiever: one h, or a pair
    DiscDiagnostics diagnostics;
};

// ------------------------------------------------------------- grids

// All threshold classifiers sign(x - t) over an affine basis on 1-D inputs:
// thresholds at midpoints of consecutive distinct values plus one sentinel
// below the minimum and one above the maximum, closed under negation. The
// 0-1 risk of a threshold rule is piecewise constant between data points,
// so this grid is exact for the threshold class.
std::vector<Hypothesis> make_threshold_grid(const BasisSpec& basis,
                                            std::span<const double> pooled_values);

// Class spec with an exact threshold grid for 1-D instances. Lambda grows to
// cover the sentinel members when the default bound would not.
HypothesisClassSpec make_threshold_class(std::span<const double> pooled_values);

// Direction-net grid for d >= 2: quasi-uniform unit directions (golden-angle
// in 2-D, Fibonacci sphere in 3-D, seeded low-discrepancy beyond) crossed
// with biases at midpoints of the projected pooled data. An approximation;
// used only by oracles and tests.
std::vector<Hypothesis> make_direction_grid(const BasisSpec& basis,
                                            const Matrix& pooled,
                                            std::size_t n_directions,
                                            std::size_t max_members);

// ------------------------------------------------------------- estimators

struct FixedRefResult {
    double value{0.0};
    Hypothesis witness;
};

// sup over the grid of |R1(h, sign h_ref) - R2(h, sign h_ref)| under 0-1
// loss, computed in integer counts. Grid must be nonempty and symmetric.
FixedRefResult fixed_ref_disc(const Hypothesis& h_ref, const UnlabeledDataset& X1,
                              const UnlabeledDataset& X2,
                              const HypothesisClassSpec& klass);

// Trains the source classifier, then takes the exact grid supremum with that
// classifier as the fixed reference.
DiscrepancyReport sdisc_bruteforce(const LabeledDataset& S, const UnlabeledDataset& T,
                                   const HypothesisClassSpec& klass,
                                   const TrainConfig& cfg);

// Cost-sensitive estimator: train h_S on S, pseudo-label S_X with sign h_S
// and T with -sign h_S, train h'' on the weighted union, report
// 1 - min J_01 over {h'', h_S, -h_S}. J_01(h_S) = 1 exactly, so the value
// always lands in [0, 1]; a fired fallback is surfaced via diagnostics.
DiscrepancyReport estimate_sdisc(const LabeledDataset& S, const UnlabeledDataset& T,
                                 const HypothesisClassSpec& klass,
                                 const TrainConfig& cfg);

// Domain-separator proxy: target pseudo-labeled -1, source +1; value is
// 1 - min over {h'', -h'', 0} of [R_T(h, -1) + R_S(h, +1)] under 0-1 loss.
DiscrepancyReport estimate_dh(const UnlabeledDataset& S_X, const UnlabeledDataset& T,
                              const HypothesisClassSpec& klass,
                              const TrainConfig& cfg);

// Exact pairwise grid supremum of |R_T(h, h') - R_S(h, h')| with 0-1 loss.
// Auto-builds the exact threshold grid for 1-D affine classes when the spec
// carries no grid. Pair enumeration is capped: grids larger than
// max_grid_members are rejected with a size error advising subsampling.
DiscrepancyReport xdisc_bruteforce(const UnlabeledDataset& S_X,
                                   const UnlabeledDataset& T,
                                   const HypothesisClassSpec& klass,
                                   std::size_t max_grid_members = 2000);

// ------------------------------------------------------------- sdp data

// Problem data of the semidefinite relaxation for hinge-loss X-disc:
// z = [xi; beta; beta'], objective c.z, constraints f_i.z >= 0 and
// z'Phi_i z + f_i.z >= 1. Construction only; no solver here.
struct SdpProblemData {
    std::size_t n_T{0}, n_S{0}, p{0};
    std::vector<double> a;               // N = n_T + n_S entries
    std::vector<double> c;               // N + 2p entries
    std::vector<std::vector<double>> f;  // N unit vectors of length N + 2p
    std::vector<Matrix> Phi;             // N symmetric (N+2p) x (N+2p) matrices

    std::size_t N() const { return n_T + n_S; }
};

SdpProblemData build_xdisc_sdp(const UnlabeledDataset& S_X, const UnlabeledDataset& T,
                               const BasisSpec& basis);

// ------------------------------------------------------------- ranking

struct SourceScore {
    std::size_t input_index{0};
    double value{0.0};
    bool ok{true};
    std::string error;
};

struct SourceRanking {
    std::vector<SourceScore> scores;          // input order
    std::vector<std::size_t> order;           // ascending by value; ties by
                                              // input order; failures last
    std::vector<std::vector<std::size_t>> tie_groups;  // explicit tie sets
    std::optional<int> clean_in_top_k;        // when clean tags supplied
};

SourceRanking rank_sources(const UnlabeledDataset& T,
                           const std::vector<LabeledDataset>& sources,
                           Measure measure, const HypothesisClassSpec& klass,
                           const TrainConfig& cfg,
                           const std::vector<bool>* clean_tags = nullptr,
                           std::size_t top_k = 5);

}  // namespace disckit
