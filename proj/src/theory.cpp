#include "disckit/theory.hpp"

#include <cmath>

namespace disckit {

void ComplexityInput::validate() const {
    if (lambda <= 0.0 || d_phi <= 0.0) throw ConfigError("lambda and d_phi must be > 0");
    if (n_T < 1 || n_S < 1) throw ConfigError("n_T and n_S must be >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
    if (loss_bound <= 0.0) throw ConfigError("loss bound M must be > 0");
    if (c_hh < 0.0) throw ConfigError("c_hh must be >= 0");
}

double rademacher_linear_product(const ComplexityInput& in, std::size_t m) {
    in.validate();
    if (m < 1) throw ConfigError("m must be >= 1");
    return in.lambda * in.lambda * in.d_phi * in.d_phi /
           std::sqrt(static_cast<double>(m));
}

namespace {

double tail(double log_num, double delta, std::size_t n) {
    return std::sqrt(std::log(log_num / delta) / (2.0 * static_cast<double>(n)));
}

}  // namespace

BoundReport sdisc_deviation_bound(const ComplexityInput& in) {
    in.validate();
    const double c = in.c_hh_or_default();
    BoundReport r;
    r.bound_name = "sdisc_deviation_01";
    r.add("C_HxH/sqrt(n_T)", c / std::sqrt(static_cast<double>(in.n_T)));
    r.add("C_HxH/sqrt(n_S)", c / std::sqrt(static_cast<double>(in.n_S)));
    r.add("sqrt(log(4/delta)/(2*n_T))", tail(4.0, in.delta, in.n_T));
    r.add("sqrt(log(4/delta)/(2*n_S))", tail(4.0, in.delta, in.n_S));
    return r;
}

BoundReport sdisc_deviation_bound_general(const ComplexityInput& in, double rad_T,
                                          double rad_S) {
    in.validate();
    if (rad_T < 0.0 || rad_S < 0.0) throw ConfigError("Rademacher terms must be >= 0");
    BoundReport r;
    r.bound_name = "sdisc_deviation_general";
    r.add("2*Rad_T(loss(HxH))", 2.0 * rad_T);
    r.add("2*Rad_S(loss(HxH))", 2.0 * rad_S);
    r.add("M*sqrt(log(4/delta)/(2*n_T))", in.loss_bound * tail(4.0, in.delta, in.n_T));
    r.add("M*sqrt(log(4/delta)/(2*n_S))", in.loss_bound * tail(4.0, in.delta, in.n_S));
    return r;
}

BoundReport dh_deviation_bound(const ComplexityInput& in, double rad_T, double rad_S) {
    in.validate();
    if (rad_T < 0.0 || rad_S < 0.0) throw ConfigError("Rademacher terms must be >= 0");
    BoundReport r;
    r.bound_name = "dh_deviation";
    r.add("2*Rad_T(H)", 2.0 * rad_T);
    r.add("2*Rad_S(H)", 2.0 * rad_S);
    // Tail constant differs from the general bound: sqrt(2 log(4/delta) / n).
    r.add("sqrt(2*log(4/delta)/n_T)",
          std::sqrt(2.0 * std::log(4.0 / in.delta) / static_cast<double>(in.n_T)));
    r.add("sqrt(2*log(4/delta)/n_S)",
          std::sqrt(2.0 * std::log(4.0 / in.delta) / static_cast<double>(in.n_S)));
    return r;
}

BoundReport xdisc_deviation_bound(const ComplexityInput& in, double rad_T,
                                  double rad_S) {
    BoundReport r = sdisc_deviation_bound_general(in, rad_T, rad_S);
    r.bound_name = "xdisc_deviation";
    return r;
}

BoundReport target_regret_bound_population(double source_risk, double cross_risk_proxy,
                                           double sdisc_value) {
    if (source_risk < 0.0 || source_risk > 1.0 || cross_risk_proxy < 0.0 ||
        cross_risk_proxy > 1.0 || sdisc_value < 0.0 || sdisc_value > 1.0)
        throw ConfigError("risk inputs must lie in [0, 1]");
    BoundReport r;
    r.bound_name = "target_regret_population";
    r.add("R_S(h,h_S*)", source_risk);
    r.add("R_T(h_S*,h_T*)", cross_risk_proxy);
    r.add("sdisc(P_T,P_S)", sdisc_value);
    r.notes.push_back(
        "R_T(h_S*,h_T*) is caller-supplied: it is unobservable without target labels");
    return r;
}

BoundReport target_regret_bound(double source_emp_risk, double cross_risk_proxy,
                                double sdisc_emp, const ComplexityInput& in) {
    in.validate();
    if (source_emp_risk < 0.0 || source_emp_risk > 1.0 || cross_risk_proxy < 0.0 ||
        cross_risk_proxy > 1.0 || sdisc_emp < 0.0 || sdisc_emp > 1.0)
        throw ConfigError("risk inputs must lie in [0, 1]");
    const double c = in.c_hh_or_default();
    BoundReport r;
    r.bound_name = "target_regret_finite_sample";
    r.add("R_S_hat(h,h_S*)", source_emp_risk);
    r.add("R_T(h_S*,h_T*)", cross_risk_proxy);
    r.add("sdisc_hat(P_T,P_S)", sdisc_emp);
    r.add("C_HxH/sqrt(n_T)", c / std::sqrt(static_cast<double>(in.n_T)));
    r.add("C_HxH/sqrt(n_S)", c / std::sqrt(static_cast<double>(in.n_S)));
    r.add("sqrt(log(5/delta)/(2*n_T))", tail(5.0, in.delta, in.n_T));
    r.add("2*sqrt(log(5/delta)/(2*n_S))", 2.0 * tail(5.0, in.delta, in.n_S));
    r.notes.push_back(
        "R_T(h_S*,h_T*) is caller-supplied: it is unobservable without target labels");
    return r;
}

}  // namespace disckit
