#pragma once
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace resum {

// Weight-sequence families M = (M_p).  Tables are generated and stored in log
// space; factorial-type entries overflow doubles near p = 170 otherwise.
class sequence_family {
  public:
    static sequence_family gevrey(double alpha);
    static sequence_family gevrey_log(double alpha, double beta);
    static sequence_family qpower(double q);
    static sequence_family product(sequence_family a, sequence_family b);
    // termwise M_p^s; pass 1/s yourself for the root convention
    static sequence_family power(sequence_family base, double s);
    static sequence_family explicit_values(std::vector<double> values);
    static sequence_family explicit_logs(std::string name, std::vector<double> log_values);

    std::vector<double> log_table(std::size_t depth) const;
    const std::string& name() const { return name_; }

  private:
    sequence_family() = default;
    std::string name_;
    std::function<double(std::size_t)> log_at_;
    std::size_t max_depth_ = SIZE_MAX;
};

struct order_estimate {
    double rho = 0.0;        // limsup log n / log m_n over the tail half
    double omega = 0.0;      // 1 / rho
    double tail_spread = 0.0;
    bool finite = false;
};

// Log-convex table with increasing quotients m_p = M_{p+1}/M_p.
class sequence_table {
  public:
    sequence_table(sequence_family family, std::size_t depth);
    static sequence_table from_logs(std::string name, std::vector<double> log_values);

    std::size_t depth() const { return logM_.size() - 1; } // entries 0..depth
    double log_M(std::size_t p) const { return logM_.at(p); }
    double log_m(std::size_t p) const { return logm_.at(p); } // p <= depth-1
    double m(std::size_t p) const;
    const std::string& name() const { return name_; }
    const std::vector<double>& log_values() const { return logM_; }

    // flatness gauge h(t) = inf_p M_p t^p, piecewise M_p t^p between quotient
    // breakpoints; 1 for t >= 1/m_0; throws depth_error below 1/m_{N-1}
    double h(double t) const;
    double log_h(double t) const;
    // M(t) = sup_p log(t^p / M_p) = -log h(1/t); throws depth_error past m_{N-1}
    double big_m(double t) const;

  private:
    sequence_table() = default;
    std::string name_;
    std::vector<double> logM_;
    std::vector<double> logm_;
    std::size_t locate(double log_t) const;
};

struct axiom_check {
    bool holds = false;
    double witness = 0.0; // constant A (moderate growth) or B (tail bound)
    std::optional<std::size_t> first_violation;
    std::string note;
};

struct axiom_report {
    axiom_check log_convex;      // M_p^2 <= M_{p-1} M_{p+1}
    axiom_check moderate_growth; // M_{p+l} <= A^{p+l} M_p M_l, A on a 1.05^k grid
    axiom_check tail_bound;      // sum_{l>=p} M_l/((l+1) M_{l+1}) <= B M_p/M_{p+1}
    std::size_t depth = 0;
    bool strongly_regular() const {
        return log_convex.holds && moderate_growth.holds && tail_bound.holds;
    }
};

axiom_report check_axioms(const sequence_table& t);

order_estimate order_and_omega(const sequence_table& t);

// Cached evaluators bundle used by the transform and summation layers.
struct growth_maps {
    std::shared_ptr<const sequence_table> table;
    order_estimate order;
    double h(double t) const { return table->h(t); }
    double big_m(double t) const { return table->big_m(t); }
};

growth_maps make_growth_maps(sequence_table t);

struct equivalence_result {
    bool equivalent = false;
    double low = 0.0;  // best L with L^p M_p <= M'_p
    double high = 0.0; // best H with M'_p <= H^p M_p
    double tail_drift = 0.0;
    std::string note;
};

// Finite-depth heuristic: equivalent unless the ratio trend is monotonically
// drifting through the tail half.
equivalence_result equivalence_check(const sequence_table& a, const sequence_table& b);

struct rho_witness {
    bool found = false;
    double rho = 0.0;
    double s = 0.0;
    std::size_t grid_points = 0;
};

// Smallest grid rho >= 1 with h(t) <= h(rho t)^s across a log-spaced grid of
// the table's valid range.
rho_witness rho_of_s(const sequence_table& t, double s, double rho_max = 1024.0);

struct proximate_order_report {
    std::vector<double> ratio_criterion;    // (p+1)/M(m_p), tends to 1/omega
    std::vector<double> quotient_gaps;      // p*(log m_p - log m_{p-1}), tends to omega
    double ratio_tail_mean = 0.0;
    double gap_tail_mean = 0.0;
    double ratio_tail_spread = 0.0;
    double gap_tail_spread = 0.0;
    bool consistent = false;
};

proximate_order_report proximate_order_diagnostic(const sequence_table& t,
                                                  double spread_band = 0.1);

} // namespace resum
