#include "disckit/core.hpp"

#include <algorithm>
#include <cmath>

namespace disckit {

bool all_finite(const Matrix& m) {
    return std::all_of(m.data.begin(), m.data.end(),
                       [](double v) { return std::isfinite(v); });
}

LabeledDataset make_labeled(Matrix features, std::vector<double> labels) {
    if (features.rows == 0) throw ShapeError("labeled dataset must have n >= 1 rows");
    if (features.rows != labels.size())
        throw ShapeError("feature rows (" + std::to_string(features.rows) +
                         ") != label count (" + std::to_string(labels.size()) + ")");
    if (!all_finite(features)) throw ShapeError("non-finite feature value");
    for (double y : labels)
        if (y != 1.0 && y != -1.0)
            throw ShapeError("label must be exactly +1 or -1, got " + std::to_string(y));
    return LabeledDataset{std::move(features), std::move(labels)};
}

UnlabeledDataset make_unlabeled(Matrix features) {
    if (features.rows == 0) throw ShapeError("unlabeled dataset must have n >= 1 rows");
    if (!all_finite(features)) throw ShapeError("non-finite feature value");
    return UnlabeledDataset{std::move(features)};
}

UnlabeledDataset inputs_of(const LabeledDataset& d) {
    return UnlabeledDataset{d.features};
}

// ---------------------------------------------------------------- basis

void BasisSpec::apply(std::span<const double> x, std::vector<double>& out) const {
    switch (kind) {
        case BasisKind::identity:
        case BasisKind::precomputed:
            if (x.size() != output_dim)
                throw ShapeError("basis input dim " + std::to_string(x.size()) +
                                 " != " + std::to_string(output_dim));
            out.assign(x.begin(), x.end());
            break;
        case BasisKind::affine:
            if (x.size() + 1 != output_dim)
                throw ShapeError("affine basis input dim " + std::to_string(x.size()) +
                                 " != " + std::to_string(output_dim - 1));
            out.assign(x.begin(), x.end());
            out.push_back(1.0);
            break;
    }
}

BasisSpec identity_basis(std::size_t d, double feature_bound) {
    return BasisSpec{BasisKind::identity, d, feature_bound};
}

BasisSpec affine_basis(std::size_t d, double feature_bound) {
    return BasisSpec{BasisKind::affine, d + 1, feature_bound};
}

double max_phi_norm(const BasisSpec& basis, const Matrix& features) {
    std::vector<double> phi;
    double worst = 0.0;
    for (std::size_t i = 0; i < features.rows; ++i) {
        basis.apply(features.row(i), phi);
        double sq = 0.0;
        for (double v : phi) sq += v * v;
        worst = std::max(worst, std::sqrt(sq));
    }
    return worst;
}

void validate_feature_bound(const BasisSpec& basis, const Matrix& features) {
    double worst = max_phi_norm(basis, features);
    if (worst > basis.feature_bound)
        throw ShapeError("feature bound violated: max ||phi(x)|| = " +
                         std::to_string(worst) + " > D_phi = " +
                         std::to_string(basis.feature_bound));
}

// ---------------------------------------------------------------- hypothesis

double Hypothesis::score(std::span<const double> x) const {
    thread_local std::vector<double> phi;
    basis.apply(x, phi);
    if (phi.size() != weights.size())
        throw ShapeError("weight dim " + std::to_string(weights.size()) +
                         " != basis dim " + std::to_string(phi.size()));
    double s = 0.0;
    for (std::size_t j = 0; j < phi.size(); ++j) s += weights[j] * phi[j];
    return s;
}

std::vector<double> Hypothesis::scores(const Matrix& features) const {
    std::vector<double> out(features.rows);
    for (std::size_t i = 0; i < features.rows; ++i) out[i] = score(features.row(i));
    return out;
}

Hypothesis negate(const Hypothesis& h) {
    Hypothesis out = h;
    for (double& w : out.weights) w = -w;
    return out;
}

double weight_norm(const Hypothesis& h) {
    double sq = 0.0;
    for (double w : h.weights) sq += w * w;
    return std::sqrt(sq);
}

double default_norm_bound(double feature_bound) {
    return 100.0 * (1.0 + 1.0 / feature_bound);
}

void validate_grid(const HypothesisClassSpec& spec) {
    if (spec.grid.empty()) return;
    for (const Hypothesis& h : spec.grid) {
        if (weight_norm(h) > spec.norm_bound * (1.0 + 1e-12))
            throw ShapeError("grid member violates ||w|| <= Lambda");
    }
    // Closure under negation: sort weight vectors, look up each negation.
    std::vector<std::vector<double>> keys;
    keys.reserve(spec.grid.size());
    for (const Hypothesis& h : spec.grid) keys.push_back(h.weights);
    std::sort(keys.begin(), keys.end());
    for (const Hypothesis& h : spec.grid) {
        std::vector<double> neg(h.weights.size());
        for (std::size_t j = 0; j < neg.size(); ++j) neg[j] = -h.weights[j];
        if (!std::binary_search(keys.begin(), keys.end(), neg))
            throw ShapeError("grid not closed under negation");
    }
}

// ---------------------------------------------------------------- losses

double logistic_loss(double y, double yref) {
    double z = -y * yref;
    if (z > 35.0) return z;  // log1p(exp(z)) ~ z, avoids overflow
    return std::log1p(std::exp(z));
}

double eval_loss(LossKind kind, double y, double yref) {
    switch (kind) {
        case LossKind::zero_one: return zero_one_loss(y, yref);
        case LossKind::hinge: return hinge_loss(y, yref);
        case LossKind::logistic: return logistic_loss(y, yref);
    }
    throw ConfigError("unknown loss kind");
}

const char* loss_name(LossKind kind) {
    switch (kind) {
        case LossKind::zero_one: return "zero_one";
        case LossKind::hinge: return "hinge";
        case LossKind::logistic: return "logistic";
    }
    return "?";
}

// ---------------------------------------------------------------- risk

double empirical_risk(const Hypothesis& h, const Matrix& features,
                      std::span<const double> ref_labels, LossKind loss) {
    if (features.rows == 0) throw ShapeError("empirical risk over empty data");
    if (features.rows != ref_labels.size())
        throw ShapeError("feature rows (" + std::to_string(features.rows) +
                         ") != reference length (" + std::to_string(ref_labels.size()) + ")");
    if (loss == LossKind::zero_one) {
        // Integer mismatch count keeps grid-oracle identities exact.
        std::int64_t m = zero_one_mismatches(h, features, ref_labels);
        return static_cast<double>(m) / static_cast<double>(features.rows);
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < features.rows; ++i)
        acc += eval_loss(loss, h.score(features.row(i)), ref_labels[i]);
    return acc / static_cast<double>(features.rows);
}

double empirical_risk(const Hypothesis& h, const Matrix& features,
                      const Hypothesis& ref, LossKind loss) {
    std::vector<double> refs = hardened_labels(ref, features);
    return empirical_risk(h, features, refs, loss);
}

std::int64_t zero_one_mismatches(const Hypothesis& h, const Matrix& features,
                                 std::span<const double> ref_labels) {
    if (features.rows != ref_labels.size())
        throw ShapeError("feature rows != reference length");
    std::int64_t m = 0;
    for (std::size_t i = 0; i < features.rows; ++i)
        if (sign_pm(h.score(features.row(i))) != sign_pm(ref_labels[i])) ++m;
    return m;
}

std::vector<double> hardened_labels(const Hypothesis& ref, const Matrix& features) {
    std::vector<double> out(features.rows);
    for (std::size_t i = 0; i < features.rows; ++i)
        out[i] = sign_pm(ref.score(features.row(i)));
    return out;
}

}  // namespace disckit
