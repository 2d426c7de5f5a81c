// disckit — CLI for discrepancy estimation, experiment harnesses, ranking,
// and benchmarking. Exit codes: 0 success, 1 usage, 2 data/parse, 3 numeric.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "disckit/core.hpp"
#include "disckit/disc.hpp"
#include "disckit/ingest.hpp"
#include "disckit/io.hpp"
#include "disckit/learner.hpp"
#include "disckit/rng.hpp"
#include "disckit/theory.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct GlobalOpts {
    std::uint64_t seed = 1;
    std::string out = ".";
    std::string format = "json";
};

disckit::LossKind parse_surrogate(const std::string& s) {
    if (s == "hinge") return disckit::LossKind::hinge;
    if (s == "logistic") return disckit::LossKind::logistic;
    throw disckit::ConfigError("surrogate must be hinge or logistic");
}

disckit::HypothesisClassSpec affine_class_for(
    const std::vector<const disckit::Matrix*>& mats, double lambda) {
    if (mats.empty() || mats.front()->cols == 0)
        throw disckit::ShapeError("cannot build a class over empty data");
    std::size_t d = mats.front()->cols;
    disckit::BasisSpec basis = disckit::affine_basis(d, 1.0);
    double d_phi = 0.0;
    for (const auto* m : mats) d_phi = std::max(d_phi, disckit::max_phi_norm(basis, *m));
    basis.feature_bound = d_phi;
    disckit::HypothesisClassSpec klass;
    klass.basis = basis;
    klass.norm_bound = lambda > 0.0 ? lambda : disckit::default_norm_bound(d_phi);
    return klass;
}

void ensure_out_dir(const std::string& out) {
    if (!out.empty() && out != ".") fs::create_directories(out);
}

std::string path_join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

// ----------------------------------------------------------------- toy

// Class-conditional means of the three toy domains.
struct ToyMeans {
    std::vector<double> s1_pos{5.0, -5.0}, s1_neg{-5.0, -5.0};
    std::vector<double> s2_pos{2.0, -3.0}, s2_neg{0.0, 3.0};
    std::vector<double> t_pos{5.0, -3.0}, t_neg{-5.0, -3.0};
};

struct ToyResult {
    double sdisc_s1, sdisc_s2, dh_s1, dh_s2, loss_s1, loss_s2;
};

ToyResult run_toy(std::uint64_t seed, std::size_t n_per_class,
                  const disckit::TrainConfig& cfg_in,
                  disckit::LabeledDataset* out_s1 = nullptr,
                  disckit::LabeledDataset* out_s2 = nullptr,
                  disckit::LabeledDataset* out_t = nullptr) {
    using namespace disckit;
    ToyMeans mu;
    auto gen = [&](const std::vector<double>& pos, const std::vector<double>& neg,
                   std::uint64_t stream) {
        return gen_gaussian_domain(
            {pos, neg, n_per_class, derive_seed(seed, stream)});
    };
    LabeledDataset s1 = gen(mu.s1_pos, mu.s1_neg, 1);
    LabeledDataset s2 = gen(mu.s2_pos, mu.s2_neg, 2);
    LabeledDataset t = gen(mu.t_pos, mu.t_neg, 3);

    HypothesisClassSpec klass =
        affine_class_for({&s1.features, &s2.features, &t.features}, 0.0);
    TrainConfig cfg = cfg_in;
    cfg.norm_bound = 0.0;  // take the class default unless caller overrode

    UnlabeledDataset t_x = inputs_of(t);
    ToyResult r{};
    r.sdisc_s1 = estimate_sdisc(s1, t_x, klass, cfg).value;
    r.sdisc_s2 = estimate_sdisc(s2, t_x, klass, cfg).value;
    r.dh_s1 = estimate_dh(inputs_of(s1), t_x, klass, cfg).value;
    r.dh_s2 = estimate_dh(inputs_of(s2), t_x, klass, cfg).value;

    Hypothesis h1 = train(make_pseudo_sample(s1.features, s1.labels), klass, cfg);
    Hypothesis h2 = train(make_pseudo_sample(s2.features, s2.labels), klass, cfg);
    r.loss_s1 = empirical_risk(h1, t.features, t.labels, LossKind::zero_one);
    r.loss_s2 = empirical_risk(h2, t.features, t.labels, LossKind::zero_one);

    if (out_s1) *out_s1 = std::move(s1);
    if (out_s2) *out_s2 = std::move(s2);
    if (out_t) *out_t = std::move(t);
    return r;
}

int cmd_toy(const GlobalOpts& g, std::size_t n_per_class,
            const disckit::TrainConfig& cfg) {
    using namespace disckit;
    ensure_out_dir(g.out);
    LabeledDataset s1, s2, t;
    ToyResult r = run_toy(g.seed, n_per_class, cfg, &s1, &s2, &t);

    json results{{"seed", g.seed},
                 {"n_per_class", n_per_class},
                 {"sdisc", {{"S1", r.sdisc_s1}, {"S2", r.sdisc_s2}}},
                 {"dh", {{"S1", r.dh_s1}, {"S2", r.dh_s2}}},
                 {"target_loss", {{"S1", r.loss_s1}, {"S2", r.loss_s2}}}};
    if (g.format == "json") {
        write_text_file(path_join(g.out, "toy_results.json"), results.dump(2) + "\n");
    } else {
        std::ostringstream csv;
        csv << "quantity,S1,S2\n";
        csv << "sdisc," << r.sdisc_s1 << ',' << r.sdisc_s2 << '\n';
        csv << "dh," << r.dh_s1 << ',' << r.dh_s2 << '\n';
        csv << "target_loss," << r.loss_s1 << ',' << r.loss_s2 << '\n';
        write_text_file(path_join(g.out, "toy_results.csv"), csv.str());
    }

    std::ostringstream pts;
    pts << "domain,x1,x2,label\n";
    auto dump = [&pts](const LabeledDataset& d, const char* name) {
        for (std::size_t i = 0; i < d.size(); ++i)
            pts << name << ',' << d.features.at(i, 0) << ',' << d.features.at(i, 1)
                << ',' << (d.labels[i] > 0 ? "+1" : "-1") << '\n';
    };
    dump(s1, "S1");
    dump(s2, "S2");
    dump(t, "T");
    write_text_file(path_join(g.out, "toy_points.csv"), pts.str());

    std::cout << results.dump(2) << std::endl;
    return 0;
}

// ----------------------------------------------------------------- convergence

// Ten-cluster synthetic "digit" mixture in 4-D; labels are even/odd parity.
disckit::LabeledDataset sample_digit_mixture(std::size_t n, std::uint64_t seed,
                                             int max_digit,
                                             std::vector<int>* digits_out = nullptr) {
    using namespace disckit;
    Rng rng(seed);
    Matrix x(n, 4);
    std::vector<int> digits(n);
    for (std::size_t i = 0; i < n; ++i) {
        int digit = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_digit) + 1));
        digits[i] = digit;
        double a = 2.0 * std::numbers::pi * digit / 10.0;
        double centers[4] = {3.0 * std::cos(a), 3.0 * std::sin(a),
                             1.5 * std::cos(2.0 * a), 1.5 * std::sin(2.0 * a)};
        for (std::size_t j = 0; j < 4; ++j) x.at(i, j) = centers[j] + rng.normal();
    }
    std::vector<double> labels = even_odd_labels(digits);
    if (digits_out) *digits_out = std::move(digits);
    return make_labeled(std::move(x), std::move(labels));
}

int cmd_convergence(const GlobalOpts& g, const std::vector<std::size_t>& n_grid,
                    std::size_t trials, const disckit::TrainConfig& cfg) {
    using namespace disckit;
    if (n_grid.empty()) throw ConfigError("convergence: empty n grid");
    ensure_out_dir(g.out);

    struct Row {
        std::size_t n;
        std::string pairing, measure;
        double value;
    };
    std::vector<Row> rows;

    std::uint64_t stream = 0;
    for (std::size_t n : n_grid) {
        std::vector<double> v_ident_sdisc, v_ident_dh, v_bias_sdisc, v_bias_dh;
        for (std::size_t trial = 0; trial < trials; ++trial) {
            LabeledDataset target =
                sample_digit_mixture(n, derive_seed(g.seed, ++stream), 9);
            LabeledDataset ident =
                sample_digit_mixture(n, derive_seed(g.seed, ++stream), 9);
            // Selection bias: oversample, keep digits 0..7, truncate to n.
            std::vector<int> digits;
            LabeledDataset pool = sample_digit_mixture(
                n + n / 2 + 64, derive_seed(g.seed, ++stream), 9, &digits);
            LabeledDataset biased =
                selection_bias_filter(pool, digits, {0, 1, 2, 3, 4, 5, 6, 7});
            if (biased.size() < n)
                throw ShapeError("convergence: biased pool came up short");
            Matrix bx(n, biased.dim());
            std::copy(biased.features.data.begin(),
                      biased.features.data.begin() +
                          static_cast<std::ptrdiff_t>(n * biased.dim()),
                      bx.data.begin());
            biased = make_labeled(std::move(bx), {biased.labels.begin(),
                                                  biased.labels.begin() +
                                                      static_cast<std::ptrdiff_t>(n)});

            HypothesisClassSpec klass = affine_class_for(
                {&target.features, &ident.features, &biased.features}, 0.0);
            UnlabeledDataset t_x = inputs_of(target);
            v_ident_sdisc.push_back(estimate_sdisc(ident, t_x, klass, cfg).value);
            v_ident_dh.push_back(estimate_dh(inputs_of(ident), t_x, klass, cfg).value);
            v_bias_sdisc.push_back(estimate_sdisc(biased, t_x, klass, cfg).value);
            v_bias_dh.push_back(estimate_dh(inputs_of(biased), t_x, klass, cfg).value);
        }
        auto median = [](std::vector<double> v) {
            std::sort(v.begin(), v.end());
            std::size_t m = v.size() / 2;
            return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
        };
        rows.push_back({n, "identical", "sdisc", median(v_ident_sdisc)});
        rows.push_back({n, "identical", "dh", median(v_ident_dh)});
        rows.push_back({n, "biased", "sdisc", median(v_bias_sdisc)});
        rows.push_back({n, "biased", "dh", median(v_bias_dh)});
    }

    if (g.format == "csv") {
        std::ostringstream csv;
        csv << "n,pairing,measure,value\n";
        for (const auto& r : rows)
            csv << r.n << ',' << r.pairing << ',' << r.measure << ',' << r.value << '\n';
        write_text_file(path_join(g.out, "convergence.csv"), csv.str());
        std::cout << csv.str();
    } else {
        json j = json::array();
        for (const auto& r : rows)
            j.push_back({{"n", r.n},
                         {"pairing", r.pairing},
                         {"measure", r.measure},
                         {"value", r.value}});
        write_text_file(path_join(g.out, "convergence.json"), j.dump(2) + "\n");
        std::cout << j.dump(2) << std::endl;
    }
    return 0;
}

// ----------------------------------------------------------------- rank

int cmd_rank(const GlobalOpts& g, const std::string& target_path,
             const std::vector<std::string>& source_paths, const std::string& measure,
             const std::string& tags_csv, std::size_t top_k, double lambda,
             const disckit::TrainConfig& cfg) {
    using namespace disckit;
    if (source_paths.empty()) throw ConfigError("rank: need at least one --source");
    ensure_out_dir(g.out);

    UnlabeledDataset target = load_unlabeled_instance(target_path);
    std::vector<LabeledDataset> sources;
    sources.reserve(source_paths.size());
    for (const auto& p : source_paths) sources.push_back(load_labeled_instance(p));

    std::vector<bool> tags;
    if (!tags_csv.empty()) {
        std::stringstream ss(tags_csv);
        std::string item;
        while (std::getline(ss, item, ','))
            tags.push_back(item == "clean" || item == "c" || item == "1");
        if (tags.size() != sources.size())
            throw ConfigError("rank: --tags count must match --source count");
    }

    std::vector<const Matrix*> mats{&target.features};
    for (const auto& s : sources) mats.push_back(&s.features);
    HypothesisClassSpec klass = affine_class_for(mats, lambda);

    SourceRanking ranking =
        rank_sources(target, sources, measure_from_name(measure), klass, cfg,
                     tags.empty() ? nullptr : &tags, top_k);

    std::string payload = ranking_to_json(ranking) + "\n";
    write_text_file(path_join(g.out, "ranking.json"), payload);
    if (g.format == "csv") {
        std::ostringstream csv;
        csv << "rank,input_index,value,ok\n";
        for (std::size_t i = 0; i < ranking.order.size(); ++i) {
            const auto& s = ranking.scores[ranking.order[i]];
            csv << (i + 1) << ',' << s.input_index << ',' << s.value << ',' << s.ok
                << '\n';
        }
        write_text_file(path_join(g.out, "ranking.csv"), csv.str());
    }
    std::cout << payload;
    return 0;
}

// ----------------------------------------------------------------- bench

int cmd_bench(const GlobalOpts& g, const std::vector<std::size_t>& sizes,
              std::size_t reps, std::size_t grid_cap, std::size_t directions,
              const disckit::TrainConfig& cfg) {
    using namespace disckit;
    if (sizes.empty()) throw ConfigError("bench: empty size list");
    if (reps < 1) throw ConfigError("bench: reps must be >= 1");
    ensure_out_dir(g.out);

    auto wall_ms = [](auto&& fn) {
        auto t0 = std::chrono::steady_clock::now();
        fn();
        auto t1 = std::chrono::steady_clock::now();
        return std::chrono::duration<double, std::milli>(t1 - t0).count();
    };
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        std::size_t m = v.size() / 2;
        return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
    };

    std::ostringstream csv;
    csv << "n_per_domain,measure,median_ms,reps,note\n";
    json jrows = json::array();

    for (std::size_t n : sizes) {
        std::size_t per_class = std::max<std::size_t>(1, n / 2);
        LabeledDataset s = gen_gaussian_domain(
            {{2.0, 0.0}, {-2.0, 0.0}, per_class, derive_seed(g.seed, 2 * n)});
        LabeledDataset t_lab = gen_gaussian_domain(
            {{2.5, 0.5}, {-1.5, 0.5}, per_class, derive_seed(g.seed, 2 * n + 1)});
        UnlabeledDataset t = inputs_of(t_lab);
        HypothesisClassSpec klass = affine_class_for({&s.features, &t.features}, 0.0);

        HypothesisClassSpec with_grid = klass;
        Matrix pooled(s.size() + t.size(), 2);
        std::copy(s.features.data.begin(), s.features.data.end(), pooled.data.begin());
        std::copy(t.features.data.begin(), t.features.data.end(),
                  pooled.data.begin() + static_cast<std::ptrdiff_t>(s.size() * 2));
        with_grid.grid = make_direction_grid(klass.basis, pooled, directions, grid_cap);

        struct Entry {
            const char* name;
            std::function<void()> fn;
            const char* note;
        };
        std::vector<Entry> entries{
            {"sdisc", [&] { estimate_sdisc(s, t, klass, cfg); },
             "cost-sensitive estimator"},
            {"dh", [&] { estimate_dh(inputs_of(s), t, klass, cfg); },
             "domain-separator estimator"},
            {"xdisc_bruteforce",
             [&] { xdisc_bruteforce(inputs_of(s), t, with_grid, grid_cap); },
             "pair enumeration over the capped grid (stands in for the SDP route)"}};

        for (auto& e : entries) {
            std::vector<double> times;
            for (std::size_t r = 0; r < reps; ++r) times.push_back(wall_ms(e.fn));
            double med = median(times);
            csv << n << ',' << e.name << ',' << med << ',' << reps << ',' << e.note
                << '\n';
            jrows.push_back({{"n_per_domain", n},
                             {"measure", e.name},
                             {"median_ms", med},
                             {"reps", reps},
                             {"note", e.note}});
        }
    }

    if (g.format == "csv") {
        write_text_file(path_join(g.out, "bench.csv"), csv.str());
        std::cout << csv.str();
    } else {
        write_text_file(path_join(g.out, "bench.json"), jrows.dump(2) + "\n");
        std::cout << jrows.dump(2) << std::endl;
    }
    return 0;
}

// ----------------------------------------------------------------- estimate

int cmd_estimate(const std::string& source_path, const std::string& target_path,
                 const std::string& measure, bool source_labeled, double lambda,
                 std::size_t directions, std::size_t grid_cap,
                 const disckit::TrainConfig& cfg) {
    using namespace disckit;
    Measure m = measure_from_name(measure);
    UnlabeledDataset target = load_unlabeled_instance(target_path);

    DiscrepancyReport rep;
    if (m == Measure::sdisc) {
        LabeledDataset source = load_labeled_instance(source_path);
        HypothesisClassSpec klass =
            affine_class_for({&source.features, &target.features}, lambda);
        rep = estimate_sdisc(source, target, klass, cfg);
    } else {
        UnlabeledDataset source =
            source_labeled ? inputs_of(load_labeled_instance(source_path))
                           : load_unlabeled_instance(source_path);
        HypothesisClassSpec klass =
            affine_class_for({&source.features, &target.features}, lambda);
        if (m == Measure::dh) {
            rep = estimate_dh(source, target, klass, cfg);
        } else {
            if (target.dim() >= 2) {
                Matrix pooled(source.size() + target.size(), target.dim());
                std::copy(source.features.data.begin(), source.features.data.end(),
                          pooled.data.begin());
                std::copy(target.features.data.begin(), target.features.data.end(),
                          pooled.data.begin() +
                              static_cast<std::ptrdiff_t>(source.size() * target.dim()));
                klass.grid =
                    make_direction_grid(klass.basis, pooled, directions, grid_cap);
            }
            rep = xdisc_bruteforce(source, target, klass, grid_cap);
        }
    }
    std::cout << report_to_json(rep) << std::endl;
    return 0;
}

std::vector<std::size_t> parse_size_list(const std::string& csv) {
    std::vector<std::size_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(static_cast<std::size_t>(std::stoull(item)));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"disckit — source-guided discrepancy estimation toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand name
    app.set_config("--config", "", "key=value config file; flags take precedence");
    app.allow_config_extras(false);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "global seed");
    app.add_option("--out", g.out, "output directory");
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));

    std::string surrogate = "hinge";
    disckit::TrainConfig cfg;
    app.add_option("--surrogate", surrogate, "surrogate loss: hinge|logistic");
    app.add_option("--epochs", cfg.max_epochs, "max training epochs");
    app.add_option("--eta0", cfg.eta0, "initial step size");
    app.add_option("--lambda", cfg.norm_bound,
                   "norm bound Lambda (0 = class default)");

    auto* toy = app.add_subcommand("toy", "two-source Gaussian illustration");
    std::size_t toy_n = 200;
    toy->add_option("--n-per-class", toy_n, "points per class per domain");

    auto* conv = app.add_subcommand("convergence", "estimator convergence sweep");
    std::string conv_grid = "250,500,1000,2000";
    std::size_t conv_trials = 1;
    conv->add_option("--n-grid", conv_grid, "comma-separated sample sizes");
    conv->add_option("--trials", conv_trials, "trials per point (median reported)");

    auto* rank = app.add_subcommand("rank", "rank sources by discrepancy to a target");
    std::string rank_target, rank_measure = "sdisc", rank_tags;
    std::vector<std::string> rank_sources_paths;
    std::size_t rank_topk = 5;
    rank->add_option("--target", rank_target, "unlabeled target instance file")
        ->required();
    rank->add_option("--source", rank_sources_paths, "labeled source instance file(s)")
        ->required();
    rank->add_option("--measure", rank_measure, "sdisc|dh|xdisc");
    rank->add_option("--tags", rank_tags, "comma list: clean|noisy per source");
    rank->add_option("--top-k", rank_topk, "top-k for the clean count");

    auto* bench = app.add_subcommand("bench", "timing comparison across sizes");
    std::string bench_sizes = "100,200,400";
    std::size_t bench_reps = 5, bench_cap = 2000, bench_dirs = 44;
    bench->add_option("--sizes", bench_sizes, "comma-separated per-domain sizes");
    bench->add_option("--reps", bench_reps, "repetitions per measurement");
    bench->add_option("--grid-cap", bench_cap, "grid member cap for brute force");
    bench->add_option("--directions", bench_dirs, "direction count for the net");

    auto* est = app.add_subcommand("estimate", "one-shot estimation, JSON to stdout");
    std::string est_source, est_target, est_measure = "sdisc";
    bool est_source_labeled = false;
    std::size_t est_dirs = 720, est_cap = 2000;
    est->add_option("--source", est_source, "source instance file")->required();
    est->add_option("--target", est_target, "unlabeled target instance file")
        ->required();
    est->add_option("--measure", est_measure, "sdisc|dh|xdisc");
    est->add_flag("--source-labeled", est_source_labeled,
                  "treat the source file as labeled for dh/xdisc");
    est->add_option("--directions", est_dirs, "direction count for d>=2 xdisc grids");
    est->add_option("--grid-cap", est_cap, "grid member cap");

    try {
        app.parse(argc, argv);
        cfg.surrogate = parse_surrogate(surrogate);

        if (*toy) return cmd_toy(g, toy_n, cfg);
        if (*conv) return cmd_convergence(g, parse_size_list(conv_grid), conv_trials, cfg);
        if (*rank)
            return cmd_rank(g, rank_target, rank_sources_paths, rank_measure, rank_tags,
                            rank_topk, cfg.norm_bound, cfg);
        if (*bench)
            return cmd_bench(g, parse_size_list(bench_sizes), bench_reps, bench_cap,
                             bench_dirs, cfg);
        if (*est)
            return cmd_estimate(est_source, est_target, est_measure, est_source_labeled,
                                cfg.norm_bound, est_dirs, est_cap, cfg);
        std::cerr << "no subcommand selected\n";
        return 1;
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;  // help/version exit 0, usage errors exit 1
    } catch (const disckit::ConfigError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const disckit::ParseError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const disckit::ShapeError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const disckit::TrainError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
