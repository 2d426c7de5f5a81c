// theory.hpp — closed-form deviation and generalization bound calculators.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "disckit/core.hpp"

namespace disckit {

// Shared inputs of the bound calculators.
struct ComplexityInput {
    double lambda{1.0};       // norm bound of the class
    double d_phi{1.0};        // feature bound
    std::size_t n_T{1};
    std::size_t n_S{1};
    double delta{0.05};       // confidence level, in (0, 1)
    double c_hh{0.0};         // product-class complexity constant;
                              // 0 -> default lambda^2 * d_phi^2
    double loss_bound{1.0};   // M

    double c_hh_or_default() const {
        return c_hh > 0.0 ? c_hh : lambda * lambda * d_phi * d_phi;
    }
    void validate() const;
};

// A bound value with each additive term itemized; value is the exact running
// sum of the terms in order.
struct BoundReport {
    std::string bound_name;
    double value{0.0};
    std::vector<std::pair<std::string, double>> terms;
    std::vector<std::string> notes;

    void add(std::string name, double term) {
        value += term;
        terms.emplace_back(std::move(name), term);
    }
};

// Product-class Rademacher bound for linear-in-parameter models:
// lambda^2 d_phi^2 / sqrt(m).
double rademacher_linear_product(const ComplexityInput& in, std::size_t m);

// 0-1-loss deviation rate: c/sqrt(n_T) + c/sqrt(n_S) + two sqrt-log tails
// with log(4/delta).
BoundReport sdisc_deviation_bound(const ComplexityInput& in);

// General-loss deviation: 2 rad_T + 2 rad_S + M-scaled sqrt-log tails.
BoundReport sdisc_deviation_bound_general(const ComplexityInput& in, double rad_T,
                                          double rad_S);

// Proxy-measure deviation; tails are sqrt(2 log(4/delta) / n).
BoundReport dh_deviation_bound(const ComplexityInput& in, double rad_T, double rad_S);

// Pair-supremum deviation; same shape as the general S-disc bound.
BoundReport xdisc_deviation_bound(const ComplexityInput& in, double rad_T, double rad_S);

// Population target-regret bound: three risk/discrepancy terms.
BoundReport target_regret_bound_population(double source_risk, double cross_risk_proxy,
                                           double sdisc_value);

// Finite-sample target-regret bound: the three terms plus complexity and
// sqrt-log(5/delta) tails. cross_risk_proxy is caller-supplied; it has no
// estimator without target labels.
BoundReport target_regret_bound(double source_emp_risk, double cross_risk_proxy,
                                double sdisc_emp, const ComplexityInput& in);

}  // namespace disckit
