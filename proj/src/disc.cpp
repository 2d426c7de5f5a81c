#include "disckit/disc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

#include "disckit/rng.hpp"

namespace disckit {

const char* measure_name(Measure m) {
    switch (m) {
        case Measure::sdisc: return "sdisc";
        case Measure::dh: return "dh";
        case Measure::xdisc_bruteforce: return "xdisc_bruteforce";
    }
    return "?";
}

Measure measure_from_name(const std::string& name) {
    if (name == "sdisc") return Measure::sdisc;
    if (name == "dh") return Measure::dh;
    if (name == "xdisc" || name == "xdisc_bruteforce") return Measure::xdisc_bruteforce;
    throw ConfigError("unknown measure: " + name);
}

// ------------------------------------------------------------- grids

std::vector<Hypothesis> make_threshold_grid(const BasisSpec& basis,
                                            std::span<const double> pooled_values) {
    if (basis.kind != BasisKind::affine || basis.output_dim != 2)
        throw ShapeError("threshold grid needs a 1-D affine basis");
    if (pooled_values.empty()) throw ShapeError("threshold grid over empty data");

    std::vector<double> sorted(pooled_values.begin(), pooled_values.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    std::vector<double> thresholds;
    thresholds.push_back(sorted.front() - 1.0);
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
        thresholds.push_back(0.5 * (sorted[i] + sorted[i + 1]));
    thresholds.push_back(sorted.back() + 1.0);

    std::vector<Hypothesis> grid;
    grid.reserve(2 * thresholds.size());
    for (double t : thresholds) {
        grid.push_back(Hypothesis{{1.0, -t}, basis});   // sign(x - t)
        grid.push_back(Hypothesis{{-1.0, t}, basis});   // its negation
    }
    return grid;
}

HypothesisClassSpec make_threshold_class(std::span<const double> pooled_values) {
    double max_abs = 0.0;
    for (double v : pooled_values) max_abs = std::max(max_abs, std::abs(v));
    double d_phi = std::sqrt(max_abs * max_abs + 1.0);
    BasisSpec basis = affine_basis(1, d_phi);
    HypothesisClassSpec klass;
    klass.basis = basis;
    klass.grid = make_threshold_grid(basis, pooled_values);
    double max_member = 0.0;
    for (const auto& h : klass.grid) max_member = std::max(max_member, weight_norm(h));
    klass.norm_bound = std::max(default_norm_bound(d_phi), max_member);
    validate_grid(klass);
    return klass;
}

namespace {

// Quasi-uniform unit directions in R^d.
std::vector<std::vector<double>> direction_net(std::size_t d, std::size_t count) {
    std::vector<std::vector<double>> dirs;
    dirs.reserve(count);
    if (d == 2) {
        // Evenly spaced angles cover the circle exactly.
        for (std::size_t k = 0; k < count; ++k) {
            double th = 2.0 * std::numbers::pi * static_cast<double>(k) /
                        static_cast<double>(count);
            dirs.push_back({std::cos(th), std::sin(th)});
        }
    } else if (d == 3) {
        // Fibonacci sphere.
        const double ga = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (std::size_t k = 0; k < count; ++k) {
            double z = 1.0 - 2.0 * (static_cast<double>(k) + 0.5) / static_cast<double>(count);
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            double th = ga * static_cast<double>(k);
            dirs.push_back({r * std::cos(th), r * std::sin(th), z});
        }
    } else {
        // Seeded deterministic directions for d > 3.
        Rng rng(0xD15C0000u + d);
        for (std::size_t k = 0; k < count; ++k) {
            std::vector<double> u(d);
            double sq = 0.0;
            for (double& v : u) {
                v = rng.normal();
                sq += v * v;
            }
            double nrm = std::sqrt(sq);
            for (double& v : u) v /= nrm;
            dirs.push_back(std::move(u));
        }
    }
    return dirs;
}

}  // namespace

std::vector<Hypothesis> make_direction_grid(const BasisSpec& basis,
                                            const Matrix& pooled,
                                            std::size_t n_directions,
                                            std::size_t max_members) {
    const std::size_t d = pooled.cols;
    if (d < 2) throw ShapeError("direction grid is for d >= 2; use the threshold grid");
    if (basis.kind != BasisKind::affine || basis.input_dim() != d)
        throw ShapeError("direction grid needs an affine basis over the raw inputs");

    auto dirs = direction_net(d, n_directions);

    // Biases at midpoints of consecutive distinct projections, plus sentinels.
    std::vector<Hypothesis> grid;
    std::vector<double> proj(pooled.rows);
    for (const auto& u : dirs) {
        for (std::size_t i = 0; i < pooled.rows; ++i) {
            auto row = pooled.row(i);
            double s = 0.0;
            for (std::size_t j = 0; j < d; ++j) s += u[j] * row[j];
            proj[i] = s;
        }
        std::sort(proj.begin(), proj.end());
        auto add = [&](double t) {
            std::vector<double> w(u);
            w.push_back(-t);
            grid.push_back(Hypothesis{std::move(w), basis});
        };
        add(proj.front() - 1.0);
        for (std::size_t i = 0; i + 1 < proj.size(); ++i)
            if (proj[i] != proj[i + 1]) add(0.5 * (proj[i] + proj[i + 1]));
        add(proj.back() + 1.0);
    }

    // Negations close the grid; thin deterministically if over budget.
    if (2 * grid.size() > max_members) {
        std::size_t keep = std::max<std::size_t>(1, max_members / 2);
        std::vector<Hypothesis> thinned;
        thinned.reserve(keep);
        double stride = static_cast<double>(grid.size()) / static_cast<double>(keep);
        for (std::size_t k = 0; k < keep; ++k)
            thinned.push_back(grid[static_cast<std::size_t>(k * stride)]);
        grid = std::move(thinned);
    }
    std::size_t base = grid.size();
    grid.reserve(2 * base);
    for (std::size_t i = 0; i < base; ++i) grid.push_back(negate(grid[i]));
    return grid;
}

// ------------------------------------------------------------- estimators

FixedRefResult fixed_ref_disc(const Hypothesis& h_ref, const UnlabeledDataset& X1,
                              const UnlabeledDataset& X2,
                              const HypothesisClassSpec& klass) {
    if (!klass.has_grid())
        throw ShapeError("fixed_ref_disc: class spec carries no grid");
    validate_grid(klass);

    const std::vector<double> ref1 = hardened_labels(h_ref, X1.features);
    const std::vector<double> ref2 = hardened_labels(h_ref, X2.features);
    const auto n1 = static_cast<std::int64_t>(X1.size());
    const auto n2 = static_cast<std::int64_t>(X2.size());

    // Exact arithmetic: gap = |m1*n2 - m2*n1| / (n1*n2).
    std::int64_t best_num = -1;
    std::size_t best_idx = 0;
    for (std::size_t g = 0; g < klass.grid.size(); ++g) {
        const Hypothesis& h = klass.grid[g];
        std::int64_t m1 = zero_one_mismatches(h, X1.features, ref1);
        std::int64_t m2 = zero_one_mismatches(h, X2.features, ref2);
        std::int64_t num = std::abs(m1 * n2 - m2 * n1);
        if (num > best_num) {
            best_num = num;
            best_idx = g;
        }
    }
    double value = static_cast<double>(best_num) / static_cast<double>(n1 * n2);
    return FixedRefResult{value, klass.grid[best_idx]};
}

namespace {

// Source learning averages losses (weights 1/n_S), so an l2 configured for
// the unit-total-weight cost-sensitive step scales down by n_S here.
Hypothesis train_source_classifier(const LabeledDataset& S,
                                   const HypothesisClassSpec& klass,
                                   const TrainConfig& cfg) {
    TrainConfig src_cfg = cfg;
    src_cfg.l2 = cfg.l2 / static_cast<double>(S.size());
    return train(make_pseudo_sample(S.features, S.labels), klass, src_cfg);
}

}  // namespace

DiscrepancyReport sdisc_bruteforce(const LabeledDataset& S, const UnlabeledDataset& T,
                                   const HypothesisClassSpec& klass,
                                   const TrainConfig& cfg) {
    Hypothesis h_s = train_source_classifier(S, klass, cfg);
    FixedRefResult r = fixed_ref_disc(h_s, T, inputs_of(S), klass);

    DiscrepancyReport rep;
    rep.measure = Measure::sdisc;
    rep.value = r.value;
    rep.reference = h_s;
    rep.witness = {r.witness};
    rep.diagnostics.method = "grid";
    rep.diagnostics.j_value = 1.0 - r.value;  // Theorem-1 identity
    rep.diagnostics.j_raw = rep.diagnostics.j_value;
    rep.diagnostics.term_T =
        empirical_risk(r.witness, T.features, h_s, LossKind::zero_one);
    rep.diagnostics.term_S =
        empirical_risk(r.witness, S.features, h_s, LossKind::zero_one);
    return rep;
}

DiscrepancyReport estimate_sdisc(const LabeledDataset& S, const UnlabeledDataset& T,
                                 const HypothesisClassSpec& klass,
                                 const TrainConfig& cfg) {
    if (S.size() == 0 || T.size() == 0)
        throw ShapeError("estimate_sdisc: empty dataset");

    Hypothesis h_s = train_source_classifier(S, klass, cfg);

    // Pseudo labels: sign h_S on source inputs, -sign h_S on target inputs.
    std::vector<double> s_labels = hardened_labels(h_s, S.features);
    std::vector<double> t_labels = hardened_labels(h_s, T.features);
    for (double& y : t_labels) y = -y;

    WeightedSample pseudo_S = make_pseudo_sample(S.features, s_labels);
    WeightedSample pseudo_T = make_pseudo_sample(T.features, t_labels);

    // Cost-sensitive learning over the weighted union.
    const std::size_t n_S = S.size(), n_T = T.size(), d = S.dim();
    Matrix joint(n_S + n_T, d);
    std::copy(S.features.data.begin(), S.features.data.end(), joint.data.begin());
    std::copy(T.features.data.begin(), T.features.data.end(),
              joint.data.begin() + static_cast<std::ptrdiff_t>(n_S * d));
    std::vector<double> joint_labels(s_labels);
    joint_labels.insert(joint_labels.end(), t_labels.begin(), t_labels.end());
    std::vector<double> joint_weights(n_S, 1.0 / static_cast<double>(n_S));
    joint_weights.insert(joint_weights.end(), n_T, 1.0 / static_cast<double>(n_T));

    Hypothesis h_cs =
        train(make_weighted(std::move(joint), std::move(joint_labels),
                            std::move(joint_weights)),
              klass, cfg);

    // Candidate set guards against surrogate failure: J_01(h_S) = 1 exactly.
    const Hypothesis h_neg = negate(h_s);
    const Hypothesis* candidates[3] = {&h_cs, &h_s, &h_neg};
    double j_raw = 0.0, j_best = 0.0;
    const Hypothesis* best = nullptr;
    for (const Hypothesis* h : candidates) {
        double j = cost_sensitive_objective(*h, pseudo_S, pseudo_T, LossKind::zero_one);
        if (h == &h_cs) j_raw = j;
        if (best == nullptr || j < j_best) {
            best = h;
            j_best = j;
        }
    }

    DiscrepancyReport rep;
    rep.measure = Measure::sdisc;
    rep.value = 1.0 - j_best;
    rep.reference = h_s;
    rep.witness = {*best};
    rep.diagnostics.method = "cost_sensitive";
    rep.diagnostics.j_value = j_best;
    rep.diagnostics.j_raw = j_raw;
    rep.diagnostics.clamped = best != &h_cs;
    rep.diagnostics.term_S =
        empirical_risk(*best, S.features, s_labels, LossKind::zero_one);
    rep.diagnostics.term_T =
        empirical_risk(*best, T.features, t_labels, LossKind::zero_one);
    return rep;
}

DiscrepancyReport estimate_dh(const UnlabeledDataset& S_X, const UnlabeledDataset& T,
                              const HypothesisClassSpec& klass,
                              const TrainConfig& cfg) {
    if (S_X.size() == 0 || T.size() == 0)
        throw ShapeError("estimate_dh: empty dataset");
    const std::size_t n_S = S_X.size(), n_T = T.size(), d = S_X.dim();
    if (T.dim() != d) throw ShapeError("estimate_dh: dimension mismatch");

    // Domain separator: target -1, source +1, weights 1/n each side.
    Matrix joint(n_S + n_T, d);
    std::copy(S_X.features.data.begin(), S_X.features.data.end(), joint.data.begin());
    std::copy(T.features.data.begin(), T.features.data.end(),
              joint.data.begin() + static_cast<std::ptrdiff_t>(n_S * d));
    std::vector<double> labels(n_S, 1.0);
    labels.insert(labels.end(), n_T, -1.0);
    std::vector<double> weights(n_S, 1.0 / static_cast<double>(n_S));
    weights.insert(weights.end(), n_T, 1.0 / static_cast<double>(n_T));

    Hypothesis h_cs = train(
        make_weighted(std::move(joint), std::move(labels), std::move(weights)),
        klass, cfg);

    const std::vector<double> minus(n_T, -1.0), plus(n_S, 1.0);
    auto bracket = [&](const Hypothesis& h) {
        return empirical_risk(h, T.features, minus, LossKind::zero_one) +
               empirical_risk(h, S_X.features, plus, LossKind::zero_one);
    };

    // The zero hypothesis scores the bracket at exactly 1, pinning the value
    // into [0, 1] regardless of how the surrogate training went.
    Hypothesis h_zero{std::vector<double>(klass.basis.output_dim, 0.0), klass.basis};
    const Hypothesis h_neg = negate(h_cs);
    const Hypothesis* candidates[3] = {&h_cs, &h_neg, &h_zero};
    double j_raw = 0.0, j_best = 0.0;
    const Hypothesis* best = nullptr;
    for (const Hypothesis* h : candidates) {
        double b = bracket(*h);
        if (h == &h_cs) j_raw = b;
        if (best == nullptr || b < j_best) {
            best = h;
            j_best = b;
        }
    }

    DiscrepancyReport rep;
    rep.measure = Measure::dh;
    rep.value = 1.0 - j_best;
    rep.witness = {*best};
    rep.diagnostics.method = "cost_sensitive";
    rep.diagnostics.j_value = j_best;
    rep.diagnostics.j_raw = j_raw;
    rep.diagnostics.clamped = best != &h_cs;
    rep.diagnostics.term_T = empirical_risk(*best, T.features, minus, LossKind::zero_one);
    rep.diagnostics.term_S = empirical_risk(*best, S_X.features, plus, LossKind::zero_one);
    return rep;
}

namespace {

// Packed +/-1 predictions (bit set = predicted +1).
std::vector<std::uint64_t> prediction_bits(const Hypothesis& h, const Matrix& x) {
    std::vector<std::uint64_t> bits((x.rows + 63) / 64, 0);
    for (std::size_t i = 0; i < x.rows; ++i)
        if (sign_pm(h.score(x.row(i))) > 0.0) bits[i / 64] |= (1ULL << (i % 64));
    return bits;
}

std::int64_t mismatch_count(const std::vector<std::uint64_t>& a,
                            const std::vector<std::uint64_t>& b) {
    std::int64_t m = 0;
    for (std::size_t w = 0; w < a.size(); ++w)
        m += std::popcount(a[w] ^ b[w]);
    return m;
}

}  // namespace

DiscrepancyReport xdisc_bruteforce(const UnlabeledDataset& S_X,
                                   const UnlabeledDataset& T,
                                   const HypothesisClassSpec& klass,
                                   std::size_t max_grid_members) {
    std::vector<Hypothesis> grid = klass.grid;
    if (grid.empty()) {
        if (T.dim() == 1 && klass.basis.kind == BasisKind::affine) {
            std::vector<double> pooled;
            pooled.reserve(T.size() + S_X.size());
            for (std::size_t i = 0; i < T.size(); ++i) pooled.push_back(T.features.at(i, 0));
            for (std::size_t i = 0; i < S_X.size(); ++i)
                pooled.push_back(S_X.features.at(i, 0));
            grid = make_threshold_grid(klass.basis, pooled);
        } else {
            throw ShapeError("xdisc_bruteforce: class spec carries no grid");
        }
    }
    if (grid.size() > max_grid_members)
        throw ShapeError("xdisc_bruteforce: grid of " + std::to_string(grid.size()) +
                         " members exceeds the cap of " +
                         std::to_string(max_grid_members) + " (" +
                         std::to_string(grid.size() * grid.size()) +
                         " pairs); subsample the grid or raise the cap");

    const auto n_T = static_cast<std::int64_t>(T.size());
    const auto n_S = static_cast<std::int64_t>(S_X.size());

    std::vector<std::vector<std::uint64_t>> pred_T(grid.size()), pred_S(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        pred_T[g] = prediction_bits(grid[g], T.features);
        pred_S[g] = prediction_bits(grid[g], S_X.features);
    }

    // 0-1 loss against a hardened reference is a sign mismatch, symmetric in
    // the pair, so the unordered upper triangle covers every ordered pair.
    std::int64_t best_num = -1;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = i; j < grid.size(); ++j) {
            std::int64_t mt = mismatch_count(pred_T[i], pred_T[j]);
            std::int64_t ms = mismatch_count(pred_S[i], pred_S[j]);
            std::int64_t num = std::abs(mt * n_S - ms * n_T);
            if (num > best_num) {
                best_num = num;
                bi = i;
                bj = j;
            }
        }
    }

    DiscrepancyReport rep;
    rep.measure = Measure::xdisc_bruteforce;
    rep.value = static_cast<double>(best_num) / static_cast<double>(n_T * n_S);
    rep.witness = {grid[bi], grid[bj]};
    rep.diagnostics.method = "pair_grid";
    rep.diagnostics.term_T = static_cast<double>(mismatch_count(pred_T[bi], pred_T[bj])) /
                             static_cast<double>(n_T);
    rep.diagnostics.term_S = static_cast<double>(mismatch_count(pred_S[bi], pred_S[bj])) /
                             static_cast<double>(n_S);
    return rep;
}

// ------------------------------------------------------------- sdp data

SdpProblemData build_xdisc_sdp(const UnlabeledDataset& S_X, const UnlabeledDataset& T,
                               const BasisSpec& basis) {
    const std::size_t n_T = T.size(), n_S = S_X.size();
    const std::size_t N = n_T + n_S;
    const std::size_t p = basis.output_dim;
    const std::size_t side = N + 2 * p;
    if (N * side * side > 50'000'000)
        throw ShapeError("build_xdisc_sdp: problem data would exceed the size guard");

    SdpProblemData out;
    out.n_T = n_T;
    out.n_S = n_S;
    out.p = p;

    out.a.assign(N, 0.0);
    for (std::size_t i = 0; i < N; ++i)
        out.a[i] = i < n_T ? 1.0 / static_cast<double>(n_T)
                           : -1.0 / static_cast<double>(n_S);

    out.c = out.a;
    out.c.resize(side, 0.0);

    out.f.assign(N, std::vector<double>(side, 0.0));
    for (std::size_t i = 0; i < N; ++i) out.f[i][i] = 1.0;

    // Pooled inputs follow the weight vector: target block first.
    std::vector<double> phi;
    out.Phi.reserve(N);
    for (std::size_t i = 0; i < N; ++i) {
        auto row = i < n_T ? T.features.row(i) : S_X.features.row(i - n_T);
        basis.apply(row, phi);
        Matrix m(side, side);
        for (std::size_t j = 0; j < p; ++j) {
            for (std::size_t k = 0; k < p; ++k) {
                double v = 0.5 * phi[j] * phi[k];
                m.at(N + j, N + p + k) = v;
                m.at(N + p + k, N + j) = v;
            }
        }
        out.Phi.push_back(std::move(m));
    }
    return out;
}

// ------------------------------------------------------------- ranking

SourceRanking rank_sources(const UnlabeledDataset& T,
                           const std::vector<LabeledDataset>& sources,
                           Measure measure, const HypothesisClassSpec& klass,
                           const TrainConfig& cfg,
                           const std::vector<bool>* clean_tags, std::size_t top_k) {
    if (sources.empty()) throw ShapeError("rank_sources: need at least one source");
    if (clean_tags && clean_tags->size() != sources.size())
        throw ShapeError("rank_sources: clean tag count != source count");

    SourceRanking out;
    out.scores.reserve(sources.size());
    for (std::size_t i = 0; i < sources.size(); ++i) {
        SourceScore s;
        s.input_index = i;
        try {
            switch (measure) {
                case Measure::sdisc:
                    s.value = estimate_sdisc(sources[i], T, klass, cfg).value;
                    break;
                case Measure::dh:
                    s.value = estimate_dh(inputs_of(sources[i]), T, klass, cfg).value;
                    break;
                case Measure::xdisc_bruteforce:
                    s.value = xdisc_bruteforce(inputs_of(sources[i]), T, klass).value;
                    break;
            }
        } catch (const Error& e) {
            s.ok = false;
            s.error = e.what();
            s.value = std::numeric_limits<double>::quiet_NaN();
        }
        out.scores.push_back(std::move(s));
    }

    out.order.resize(sources.size());
    for (std::size_t i = 0; i < sources.size(); ++i) out.order[i] = i;
    std::stable_sort(out.order.begin(), out.order.end(),
                     [&](std::size_t a, std::size_t b) {
                         const auto& sa = out.scores[a];
                         const auto& sb = out.scores[b];
                         if (sa.ok != sb.ok) return sa.ok;  // failures last
                         if (!sa.ok) return false;
                         return sa.value < sb.value;
                     });

    // Explicit tie groups among successful entries.
    for (std::size_t i = 0; i < out.order.size();) {
        std::size_t j = i + 1;
        while (j < out.order.size() && out.scores[out.order[j]].ok &&
               out.scores[out.order[i]].ok &&
               out.scores[out.order[j]].value == out.scores[out.order[i]].value)
            ++j;
        if (j - i >= 2) {
            std::vector<std::size_t> group(out.order.begin() + static_cast<std::ptrdiff_t>(i),
                                           out.order.begin() + static_cast<std::ptrdiff_t>(j));
            out.tie_groups.push_back(std::move(group));
        }
        i = j;
    }

    if (clean_tags) {
        int count = 0;
        std::size_t k = std::min(top_k, out.order.size());
        for (std::size_t i = 0; i < k; ++i)
            if ((*clean_tags)[out.order[i]]) ++count;
        out.clean_in_top_k = count;
    }
    return out;
}

}  // namespace disckit
