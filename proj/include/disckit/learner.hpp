// learner.hpp — deterministic weighted empirical risk minimization over the
// linear-in-parameter class.
#pragma once

#include <cstdint>
#include <vector>

#include "disckit/core.hpp"

namespace disckit {

struct TrainConfig {
    LossKind surrogate{LossKind::hinge};  // hinge or logistic
    std::size_t max_epochs{2000};
    double eta0{1.0};              // step eta_t = eta0 / (G sqrt(t+1)), with G
                                   // the subgradient scale sum_i w_i ||phi_i||
    double tolerance{1e-7};        // minimal objective improvement to count
    std::size_t patience{0};       // epochs without improvement before an early
                                   // stop; 0 runs the full epoch budget
    double norm_bound{0.0};        // Lambda; 0 -> take it from the class spec
    double l2{0.0};                // optional ridge (l2/2)||w||^2 added to the
                                   // training objective; > 0 switches to the
                                   // strongly-convex step eta0/(l2 (t+1)) and
                                   // pins a unique optimum on flat hinge
                                   // landscapes (the reference experiments'
                                   // SVC with C corresponds to l2 = 1/C on
                                   // unit-total-weight samples)
    std::uint64_t seed{0};         // reserved for shuffling; unused full-batch
};

// Features with +/-1 targets and per-example nonnegative weights.
struct WeightedSample {
    Matrix features;
    std::vector<double> labels;
    std::vector<double> weights;

    std::size_t size() const { return features.rows; }
};

// Validates shapes, label values, weight signs; at least one weight > 0.
WeightedSample make_weighted(Matrix features, std::vector<double> labels,
                             std::vector<double> weights);

// Uniform weights 1/n per example (the cost-sensitive scheme of one domain).
WeightedSample make_pseudo_sample(Matrix features, std::vector<double> labels);

// Weighted surrogate objective sum_i w_i * loss(h(x_i), y_i).
double weighted_objective(const Hypothesis& h, const WeightedSample& sample,
                          LossKind loss);

// Full-batch projected subgradient descent from w = 0 over ||w|| <= Lambda.
// Deterministic given (sample order, cfg); returns the best iterate seen, so
// the achieved surrogate objective never exceeds the objective at w = 0.
Hypothesis train(const WeightedSample& sample, const HypothesisClassSpec& klass,
                 const TrainConfig& cfg);

// Two-term cost-sensitive objective: sum of the two weighted empirical risks,
// with pseudo_S carrying weights 1/n_S and pseudo_T weights 1/n_T (enforced).
double cost_sensitive_objective(const Hypothesis& h, const WeightedSample& pseudo_S,
                                const WeightedSample& pseudo_T, LossKind loss);

}  // namespace disckit
