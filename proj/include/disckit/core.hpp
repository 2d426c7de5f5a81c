// core.hpp — domain types, loss functions, empirical risk.
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace disckit {

// ---------------------------------------------------------------- errors

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent data shapes (mismatched lengths, bad labels).
struct ShapeError : Error {
    using Error::Error;
};

// Byte-level parse failures; offset is where the stream became invalid.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t at) : Error(msg), offset(at) {}
    std::size_t offset{0};
};

// Bad run configuration (unknown keys, invalid option values).
struct ConfigError : Error {
    using Error::Error;
};

// Numeric failure during optimization (divergence, non-finite objective).
struct TrainError : Error {
    using Error::Error;
};

// ---------------------------------------------------------------- matrix

// Dense row-major matrix; one example per row.
struct Matrix {
    std::size_t rows{0};
    std::size_t cols{0};
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    std::span<const double> row(std::size_t r) const {
        return {data.data() + r * cols, cols};
    }
    std::span<double> row(std::size_t r) {
        return {data.data() + r * cols, cols};
    }
};

bool all_finite(const Matrix& m);

// ---------------------------------------------------------------- datasets

// Labeled sample: features plus labels in {+1, -1}.
struct LabeledDataset {
    Matrix features;
    std::vector<double> labels;

    std::size_t size() const { return features.rows; }
    std::size_t dim() const { return features.cols; }
};

// Unlabeled sample: features only.
struct UnlabeledDataset {
    Matrix features;

    std::size_t size() const { return features.rows; }
    std::size_t dim() const { return features.cols; }
};

// Validated constructors; throw ShapeError on any invariant violation.
LabeledDataset make_labeled(Matrix features, std::vector<double> labels);
UnlabeledDataset make_unlabeled(Matrix features);

// Drops the labels.
UnlabeledDataset inputs_of(const LabeledDataset& d);

// ---------------------------------------------------------------- basis

// sign with sign(0) = +1, so every prediction is a definite label.
inline double sign_pm(double v) { return v >= 0.0 ? 1.0 : -1.0; }

enum class BasisKind { identity, affine, precomputed };

// Fixed basis map phi: R^d -> R^p.
//   identity/precomputed: phi(x) = x            (p = d)
//   affine:               phi(x) = [x; 1]       (p = d + 1)
// feature_bound is the per-example Euclidean bound sup_x ||phi(x)||_2.
struct BasisSpec {
    BasisKind kind{BasisKind::identity};
    std::size_t output_dim{0};
    double feature_bound{0.0};

    std::size_t input_dim() const {
        return kind == BasisKind::affine ? output_dim - 1 : output_dim;
    }
    void apply(std::span<const double> x, std::vector<double>& out) const;
};

BasisSpec identity_basis(std::size_t d, double feature_bound);
BasisSpec affine_basis(std::size_t d, double feature_bound);

// max_i ||phi(x_i)||_2 over the rows of the given feature matrix.
double max_phi_norm(const BasisSpec& basis, const Matrix& features);

// Throws ShapeError if some row violates ||phi(x)||_2 <= feature_bound.
void validate_feature_bound(const BasisSpec& basis, const Matrix& features);

// ---------------------------------------------------------------- hypothesis

// Linear-in-parameter classifier h(x) = w . phi(x).
struct Hypothesis {
    std::vector<double> weights;
    BasisSpec basis;

    double score(std::span<const double> x) const;
    double predict(std::span<const double> x) const { return sign_pm(score(x)); }
    std::vector<double> scores(const Matrix& features) const;
};

Hypothesis negate(const Hypothesis& h);

double weight_norm(const Hypothesis& h);

// The class H: basis, norm bound, and (for oracles) an optional finite grid.
struct HypothesisClassSpec {
    BasisSpec basis;
    double norm_bound{0.0};  // Lambda
    std::vector<Hypothesis> grid;

    bool has_grid() const { return !grid.empty(); }
};

// Lambda default when the caller does not configure one.
double default_norm_bound(double feature_bound);

// Checks norm bounds of every grid member and closure under negation.
// Throws ShapeError when violated.
void validate_grid(const HypothesisClassSpec& spec);

// ---------------------------------------------------------------- losses

enum class LossKind { zero_one, hinge, logistic };

// 0-1 loss on the sign convention: (1 - sign(y) sign(y')) / 2.
inline double zero_one_loss(double y, double yref) {
    return (1.0 - sign_pm(y) * sign_pm(yref)) * 0.5;
}

inline double hinge_loss(double y, double yref) {
    return std::max(0.0, 1.0 - y * yref);
}

// log(1 + exp(-y yref)), overflow-safe.
double logistic_loss(double y, double yref);

double eval_loss(LossKind kind, double y, double yref);

const char* loss_name(LossKind kind);

// ---------------------------------------------------------------- risk

// (1/n) sum_i loss(h(x_i), ref_i) against a +/-1 label vector.
double empirical_risk(const Hypothesis& h, const Matrix& features,
                      std::span<const double> ref_labels, LossKind loss);

// Reference hypothesis hardened to sign(ref(x)) before evaluation.
double empirical_risk(const Hypothesis& h, const Matrix& features,
                      const Hypothesis& ref, LossKind loss);

// Exact 0-1 mismatch count against +/-1 labels; shared by the grid oracles
// so that derived discrepancy values stay in integer arithmetic.
std::int64_t zero_one_mismatches(const Hypothesis& h, const Matrix& features,
                                 std::span<const double> ref_labels);

// Hardened predictions sign(ref(x_i)) as a label vector.
std::vector<double> hardened_labels(const Hypothesis& ref, const Matrix& features);

}  // namespace disckit
