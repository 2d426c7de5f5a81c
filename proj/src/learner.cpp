#include "disckit/learner.hpp"

#include <algorithm>
#include <cmath>

namespace disckit {

WeightedSample make_weighted(Matrix features, std::vector<double> labels,
                             std::vector<double> weights) {
    if (features.rows == 0) throw ShapeError("weighted sample must be nonempty");
    if (labels.size() != features.rows || weights.size() != features.rows)
        throw ShapeError("weighted sample: rows, labels, weights must align");
    for (double y : labels)
        if (y != 1.0 && y != -1.0) throw ShapeError("target labels must be +/-1");
    bool any_positive = false;
    for (double w : weights) {
        if (!std::isfinite(w) || w < 0.0)
            throw ShapeError("weights must be finite and nonnegative");
        if (w > 0.0) any_positive = true;
    }
    if (!any_positive) throw ShapeError("at least one weight must be positive");
    return WeightedSample{std::move(features), std::move(labels), std::move(weights)};
}

WeightedSample make_pseudo_sample(Matrix features, std::vector<double> labels) {
    std::size_t n = features.rows;
    if (n == 0) throw ShapeError("pseudo sample must be nonempty");
    std::vector<double> w(n, 1.0 / static_cast<double>(n));
    return make_weighted(std::move(features), std::move(labels), std::move(w));
}

double weighted_objective(const Hypothesis& h, const WeightedSample& sample,
                          LossKind loss) {
    double acc = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i)
        acc += sample.weights[i] *
               eval_loss(loss, h.score(sample.features.row(i)), sample.labels[i]);
    return acc;
}

namespace {

void project_ball(std::vector<double>& w, double radius) {
    double sq = 0.0;
    for (double v : w) sq += v * v;
    double nrm = std::sqrt(sq);
    if (nrm > radius) {
        double scale = radius / nrm;
        for (double& v : w) v *= scale;
    }
}

// Deterministic cyclic dual coordinate descent for the ridge-hinge objective
// sum_i c_i max(0, 1 - y_i w.phi_i) + (l2/2)||w||^2, liblinear style: the
// dual box is 0 <= alpha_i <= c_i / l2 and w = sum_i alpha_i y_i phi_i.
// Reaches the unique optimum in a few dozen sweeps.
std::vector<double> solve_hinge_dcd(const Matrix& phi, std::span<const double> labels,
                                    std::span<const double> weights, double l2,
                                    std::size_t max_sweeps) {
    const std::size_t n = phi.rows, p = phi.cols;
    std::vector<double> w(p, 0.0), alpha(n, 0.0), qii(n), box(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto row = phi.row(i);
        double sq = 0.0;
        for (double v : row) sq += v * v;
        qii[i] = sq;
        box[i] = weights[i] / l2;
    }
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        double max_violation = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (box[i] <= 0.0 || qii[i] <= 0.0) continue;
            auto row = phi.row(i);
            double s = 0.0;
            for (std::size_t j = 0; j < p; ++j) s += w[j] * row[j];
            const double g = labels[i] * s - 1.0;
            double pg = g;
            if (alpha[i] <= 0.0)
                pg = std::min(g, 0.0);
            else if (alpha[i] >= box[i])
                pg = std::max(g, 0.0);
            if (std::abs(pg) > 1e-12) {
                double next = std::clamp(alpha[i] - g / qii[i], 0.0, box[i]);
                double delta = (next - alpha[i]) * labels[i];
                alpha[i] = next;
                for (std::size_t j = 0; j < p; ++j) w[j] += delta * row[j];
            }
            max_violation = std::max(max_violation, std::abs(pg));
        }
        if (max_violation < 1e-10) break;
    }
    return w;
}

}  // namespace

Hypothesis train(const WeightedSample& sample, const HypothesisClassSpec& klass,
                 const TrainConfig& cfg) {
    if (sample.size() == 0) throw ShapeError("train: empty sample");
    if (cfg.surrogate != LossKind::hinge && cfg.surrogate != LossKind::logistic)
        throw ConfigError("train: surrogate must be hinge or logistic");
    if (cfg.eta0 <= 0.0) throw ConfigError("train: eta0 must be positive");
    if (cfg.tolerance < 0.0) throw ConfigError("train: tolerance must be >= 0");
    const double lambda = cfg.norm_bound > 0.0 ? cfg.norm_bound : klass.norm_bound;
    if (lambda <= 0.0) throw ConfigError("train: norm bound must be positive");

    const std::size_t n = sample.size();
    const std::size_t p = klass.basis.output_dim;

    // Materialize phi(X) once; the loops below are plain dot products.
    Matrix phi(n, p);
    {
        std::vector<double> buf;
        for (std::size_t i = 0; i < n; ++i) {
            klass.basis.apply(sample.features.row(i), buf);
            std::copy(buf.begin(), buf.end(), phi.row(i).begin());
        }
    }

    // Subgradient scale sum_i w_i ||phi_i||; steps are measured against it so
    // eta0 = 1 behaves the same across data scales.
    double grad_scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        auto row = phi.row(i);
        double sq = 0.0;
        for (double v : row) sq += v * v;
        grad_scale += sample.weights[i] * std::sqrt(sq);
    }
    if (!std::isfinite(grad_scale))
        throw TrainError("train: non-finite inputs");
    if (grad_scale <= 0.0) grad_scale = 1.0;

    auto objective = [&](const std::vector<double>& w) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            auto row = phi.row(i);
            double s = 0.0;
            for (std::size_t j = 0; j < p; ++j) s += w[j] * row[j];
            if (!std::isfinite(s))
                throw TrainError("train: non-finite score; check inputs and eta0");
            acc += sample.weights[i] * eval_loss(cfg.surrogate, s, sample.labels[i]);
        }
        if (cfg.l2 > 0.0) {
            double sq = 0.0;
            for (double v : w) sq += v * v;
            acc += 0.5 * cfg.l2 * sq;
        }
        return acc;
    };

    if (cfg.l2 > 0.0 && cfg.surrogate == LossKind::hinge) {
        // The ridge-hinge problem has a unique optimum; the dual coordinate
        // solver reaches it far inside the epoch budget.
        std::vector<double> w =
            solve_hinge_dcd(phi, sample.labels, sample.weights, cfg.l2, cfg.max_epochs);
        for (double v : w)
            if (!std::isfinite(v)) throw TrainError("train: non-finite solution");
        project_ball(w, lambda);
        return Hypothesis{std::move(w), klass.basis};
    }

    std::vector<double> w(p, 0.0), grad(p), best = w;
    double best_obj = objective(w);
    std::size_t last_improvement = 0;

    for (std::size_t t = 0; t < cfg.max_epochs; ++t) {
        std::fill(grad.begin(), grad.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            auto row = phi.row(i);
            double s = 0.0;
            for (std::size_t j = 0; j < p; ++j) s += w[j] * row[j];
            const double y = sample.labels[i];
            const double wt = sample.weights[i];
            double g;  // d loss / d score
            if (cfg.surrogate == LossKind::hinge) {
                // Subgradient at the kink (margin exactly 1) takes the 0 branch.
                g = (y * s < 1.0) ? -y : 0.0;
            } else {
                g = -y / (1.0 + std::exp(y * s));
            }
            if (g != 0.0) {
                const double c = wt * g;
                for (std::size_t j = 0; j < p; ++j) grad[j] += c * row[j];
            }
        }
        double eta;
        if (cfg.l2 > 0.0) {
            for (std::size_t j = 0; j < p; ++j) grad[j] += cfg.l2 * w[j];
            eta = cfg.eta0 / (cfg.l2 * static_cast<double>(t + 1));
        } else {
            eta = cfg.eta0 / (grad_scale * std::sqrt(static_cast<double>(t + 1)));
        }
        for (std::size_t j = 0; j < p; ++j) w[j] -= eta * grad[j];
        project_ball(w, lambda);

        double obj = objective(w);
        if (!std::isfinite(obj))
            throw TrainError("train: objective diverged (non-finite); lower eta0");
        if (obj < best_obj - cfg.tolerance) {
            best_obj = obj;
            best = w;
            last_improvement = t;
        } else if (obj < best_obj) {
            best_obj = obj;  // keep the strictly better iterate either way
            best = w;
        }
        if (cfg.patience > 0 && t - last_improvement >= cfg.patience) break;
    }

    return Hypothesis{std::move(best), klass.basis};
}

double cost_sensitive_objective(const Hypothesis& h, const WeightedSample& pseudo_S,
                                const WeightedSample& pseudo_T, LossKind loss) {
    auto check_scheme = [](const WeightedSample& s, const char* which) {
        const double expect = 1.0 / static_cast<double>(s.size());
        for (double w : s.weights)
            if (w != expect)
                throw ShapeError(std::string("cost_sensitive_objective: ") + which +
                                 " weights must all equal 1/n");
    };
    check_scheme(pseudo_S, "source");
    check_scheme(pseudo_T, "target");
    if (loss == LossKind::zero_one) {
        // count/n per side keeps identities like J(h_S) = 1 exact
        return empirical_risk(h, pseudo_S.features, pseudo_S.labels, loss) +
               empirical_risk(h, pseudo_T.features, pseudo_T.labels, loss);
    }
    return weighted_objective(h, pseudo_S, loss) + weighted_objective(h, pseudo_T, loss);
}

}  // namespace disckit
