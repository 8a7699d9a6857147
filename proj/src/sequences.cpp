#include "resum/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "resum/errors.hpp"

namespace resum {

namespace {
std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}
} // namespace

sequence_family sequence_family::gevrey(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("gevrey: alpha must be positive");
    sequence_family f;
    f.name_ = "gevrey(" + num(alpha) + ")";
    f.log_at_ = [alpha](std::size_t p) { return alpha * std::lgamma(double(p) + 1.0); };
    return f;
}

sequence_family sequence_family::gevrey_log(double alpha, double beta) {
    if (!(alpha > 0.0)) throw std::invalid_argument("gevrey_log: alpha must be positive");
    sequence_family f;
    f.name_ = "gevrey_log(" + num(alpha) + "," + num(beta) + ")";
    f.log_at_ = [alpha, beta](std::size_t p) {
        double s = 0.0;
        for (std::size_t m = 0; m <= p; ++m) s += std::log(std::log(std::exp(1.0) + double(m)));
        return alpha * std::lgamma(double(p) + 1.0) + beta * s;
    };
    return f;
}

sequence_family sequence_family::qpower(double q) {
    if (!(q > 1.0)) throw std::invalid_argument("qpower: q must exceed 1");
    sequence_family f;
    f.name_ = "qpower(" + num(q) + ")";
    f.log_at_ = [q](std::size_t p) { return double(p) * double(p) * std::log(q); };
    return f;
}

sequence_family sequence_family::product(sequence_family a, sequence_family b) {
    sequence_family f;
    f.name_ = "product(" + a.name_ + "," + b.name_ + ")";
    auto fa = a.log_at_, fb = b.log_at_;
    f.log_at_ = [fa, fb](std::size_t p) { return fa(p) + fb(p); };
    f.max_depth_ = std::min(a.max_depth_, b.max_depth_);
    return f;
}

sequence_family sequence_family::power(sequence_family base, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("power: exponent must be positive");
    sequence_family f;
    f.name_ = "power(" + base.name_ + "," + num(s) + ")";
    auto fb = base.log_at_;
    f.log_at_ = [fb, s](std::size_t p) { return s * fb(p); };
    f.max_depth_ = base.max_depth_;
    return f;
}

sequence_family sequence_family::explicit_values(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("explicit: empty table");
    if (values[0] != 1.0) throw std::invalid_argument("explicit: M_0 must be 1");
    std::vector<double> logs(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0) || !std::isfinite(values[i]))
            throw std::invalid_argument("explicit: entries must be positive and finite");
        logs[i] = std::log(values[i]);
    }
    return explicit_logs("explicit(" + std::to_string(values.size()) + ")", std::move(logs));
}

sequence_family sequence_family::explicit_logs(std::string name, std::vector<double> log_values) {
    if (log_values.empty()) throw std::invalid_argument("explicit: empty table");
    sequence_family f;
    f.name_ = std::move(name);
    f.max_depth_ = log_values.size() - 1;
    auto tbl = std::make_shared<std::vector<double>>(std::move(log_values));
    f.log_at_ = [tbl](std::size_t p) { return tbl->at(p); };
    return f;
}

std::vector<double> sequence_family::log_table(std::size_t depth) const {
    if (depth > max_depth_)
        throw std::invalid_argument("sequence_family: requested depth exceeds stored table");
    std::vector<double> out(depth + 1);
    for (std::size_t p = 0; p <= depth; ++p) out[p] = log_at_(p);
    return out;
}

sequence_table::sequence_table(sequence_family family, std::size_t depth) {
    if (depth < 2) throw std::invalid_argument("sequence_table: depth must be at least 2");
    name_ = family.name();
    logM_ = family.log_table(depth);
    logM_[0] = 0.0; // families are normalized; pin exactly
    logm_.resize(depth);
    for (std::size_t p = 0; p < depth; ++p) {
        logm_[p] = logM_[p + 1] - logM_[p];
        if (p > 0 && logm_[p] < logm_[p - 1] - 1e-12)
            throw std::invalid_argument("sequence_table: quotients must be non-decreasing (" +
                                        name_ + " at p=" + std::to_string(p) + ")");
    }
}

sequence_table sequence_table::from_logs(std::string name, std::vector<double> log_values) {
    std::size_t d = log_values.empty() ? 0 : log_values.size() - 1;
    return sequence_table(sequence_family::explicit_logs(std::move(name), std::move(log_values)), d);
}

double sequence_table::m(std::size_t p) const { return std::exp(logm_.at(p)); }

// smallest p with log m_p >= -log t, i.e. t >= 1/m_p
std::size_t sequence_table::locate(double log_t) const {
    auto it = std::lower_bound(logm_.begin(), logm_.end(), -log_t);
    return std::size_t(it - logm_.begin());
}

double sequence_table::log_h(double t) const {
    if (!(t >= 0.0)) throw std::invalid_argument("h: t must be nonnegative");
    if (t == 0.0) return -INFINITY;
    double lt = std::log(t);
    std::size_t p = locate(lt);
    if (p == 0) return 0.0; // t >= 1/m_0
    if (p == logm_.size())
        throw depth_error("h: t below 1/m_{N-1}, table depth insufficient");
    return logM_[p] + double(p) * lt;
}

double sequence_table::h(double t) const {
    double lh = log_h(t);
    return lh == -INFINITY ? 0.0 : std::exp(lh);
}

double sequence_table::big_m(double t) const {
    if (!(t > 0.0)) throw std::invalid_argument("big_m: t must be positive");
    return -log_h(1.0 / t);
}

axiom_report check_axioms(const sequence_table& t) {
    axiom_report rep;
    const std::size_t N = t.depth();
    rep.depth = N;

    // log-convexity: 2 log M_p <= log M_{p-1} + log M_{p+1}
    rep.log_convex.holds = true;
    for (std::size_t p = 1; p < N; ++p) {
        double slack = t.log_M(p - 1) + t.log_M(p + 1) - 2.0 * t.log_M(p);
        if (slack < -1e-10) {
            rep.log_convex.holds = false;
            rep.log_convex.first_violation = p;
            rep.log_convex.note = "convexity gap " + std::to_string(slack) + " at p=" + std::to_string(p);
            break;
        }
    }

    // moderate growth: find the largest required log A over stored pairs, then
    // the smallest grid point 1.05^k that covers it
    double need = 0.0;
    std::size_t worst = 0;
    for (std::size_t p = 1; p < N; ++p) {
        for (std::size_t l = p; p + l <= N; ++l) {
            double req = (t.log_M(p + l) - t.log_M(p) - t.log_M(l)) / double(p + l);
            if (req > need) {
                need = req;
                worst = p + l;
            }
        }
    }
    const double grid_step = std::log(1.05);
    const double grid_cap = std::log(1e6);
    if (need <= grid_cap) {
        rep.moderate_growth.holds = true;
        double k = std::ceil(need / grid_step - 1e-12);
        rep.moderate_growth.witness = std::exp(std::max(0.0, k) * grid_step);
    } else {
        rep.moderate_growth.holds = false;
        rep.moderate_growth.first_violation = worst;
        rep.moderate_growth.witness = std::exp(need);
        rep.moderate_growth.note = "required constant grows with depth; demanded A ~ " +
                                   std::to_string(std::exp(std::min(need, 700.0)));
    }

    // tail bound: T_p = sum_{l=p}^{N-1} 1/((l+1) m_l) <= B / m_p.
    // Truncated tails always fit some B; flag failure when B_p = T_p m_p keeps
    // growing through the tail half instead of stabilizing.
    std::vector<double> tails(N, 0.0);
    double acc = 0.0;
    for (std::size_t l = N; l-- > 0;) {
        acc += std::exp(-t.log_m(l)) / double(l + 1);
        tails[l] = acc;
    }
    double B = 0.0;
    std::size_t argB = 0;
    std::vector<double> bp(N);
    for (std::size_t p = 0; p < N; ++p) {
        bp[p] = tails[p] * std::exp(t.log_m(p));
        if (bp[p] > B) {
            B = bp[p];
            argB = p;
        }
    }
    rep.tail_bound.witness = B;
    double mid = bp[N / 2], end = bp[N - 1];
    if (end > 1.5 * mid + 1e-9) {
        rep.tail_bound.holds = false;
        rep.tail_bound.first_violation = argB;
        rep.tail_bound.note = "tail constant still growing at depth " + std::to_string(N);
    } else {
        rep.tail_bound.holds = true;
        rep.tail_bound.note = "finite-depth estimate";
    }
    return rep;
}

order_estimate order_and_omega(const sequence_table& t) {
    order_estimate est;
    const std::size_t N = t.depth();
    std::size_t lo = std::max<std::size_t>(2, N / 2);
    double rho = 0.0, rho_min = INFINITY;
    for (std::size_t n = lo; n < N; ++n) {
        double lm = t.log_m(n);
        if (lm <= 0.0) { // quotients not yet above 1: order unbounded here
            rho = INFINITY;
            continue;
        }
        double r = std::log(double(n)) / lm;
        rho = std::max(rho, r);
        rho_min = std::min(rho_min, r);
    }
    est.rho = rho;
    est.tail_spread = (std::isfinite(rho) && std::isfinite(rho_min)) ? rho - rho_min : INFINITY;
    est.omega = (rho > 0.0) ? 1.0 / rho : INFINITY;
    est.finite = std::isfinite(rho) && rho > 0.02 && rho < 50.0;
    return est;
}

growth_maps make_growth_maps(sequence_table t) {
    growth_maps g;
    g.table = std::make_shared<sequence_table>(std::move(t));
    g.order = order_and_omega(*g.table);
    return g;
}

equivalence_result equivalence_check(const sequence_table& a, const sequence_table& b) {
    if (a.depth() != b.depth())
        throw std::invalid_argument("equivalence_check: tables must have equal depth");
    const std::size_t N = a.depth();
    equivalence_result out;
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t p = 1; p <= N; ++p) {
        double r = (b.log_M(p) - a.log_M(p)) / double(p);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    out.low = std::exp(lo);
    out.high = std::exp(hi);
    double mid = (b.log_M(N / 2) - a.log_M(N / 2)) / double(N / 2);
    double end = (b.log_M(N) - a.log_M(N)) / double(N);
    out.tail_drift = end - mid;
    if (std::abs(out.tail_drift) > 0.1) {
        out.equivalent = false;
        out.note = "ratio drifts through the tail (finite-depth heuristic)";
    } else {
        out.equivalent = true;
        out.note = "bounded ratio, finite-depth heuristic";
    }
    return out;
}

rho_witness rho_of_s(const sequence_table& t, double s, double rho_max) {
    if (!(s > 1.0)) throw std::invalid_argument("rho_of_s: s must exceed 1");
    rho_witness w;
    w.s = s;
    const std::size_t N = t.depth();
    // valid h range: t in [1/m_{N-1}, 1/m_0); sample logs uniformly inside
    double lt_lo = -t.log_m(N - 1) + 1e-9;
    double lt_hi = -t.log_m(0) - 1e-9;
    if (lt_hi <= lt_lo) throw std::invalid_argument("rho_of_s: degenerate table range");
    const int G = 160;
    std::vector<double> grid(G);
    for (int i = 0; i < G; ++i) grid[i] = lt_lo + (lt_hi - lt_lo) * double(i) / double(G - 1);
    w.grid_points = G;
    for (double lr = 0.0; lr <= std::log(rho_max) + 1e-12; lr += std::log(1.05)) {
        bool ok = true;
        for (double lt : grid) {
            double lhs = t.log_h(std::exp(lt));
            double rt = lt + lr;
            double rhs = (rt >= lt_hi) ? 0.0 : t.log_h(std::exp(rt));
            if (lhs > s * rhs + 1e-12) {
                ok = false;
                break;
            }
        }
        if (ok) {
            w.found = true;
            w.rho = std::exp(lr);
            return w;
        }
    }
    return w;
}

proximate_order_report proximate_order_diagnostic(const sequence_table& t, double spread_band) {
    proximate_order_report rep;
    const std::size_t N = t.depth();
    for (std::size_t p = 1; p < N; ++p) {
        double mp = std::exp(t.log_m(p));
        double Mv;
        try {
            Mv = t.big_m(mp);
        } catch (const depth_error&) {
            break;
        }
        rep.ratio_criterion.push_back(Mv > 0.0 ? (double(p) + 1.0) / Mv : INFINITY);
        rep.quotient_gaps.push_back(double(p) * (t.log_m(p) - t.log_m(p - 1)));
    }
    auto tail_stats = [](const std::vector<double>& v, double& mean, double& spread) {
        if (v.empty()) {
            mean = spread = INFINITY;
            return;
        }
        std::size_t lo = v.size() - v.size() / 4 - 1;
        double mn = INFINITY, mx = -INFINITY, s = 0.0;
        std::size_t n = 0;
        for (std::size_t i = lo; i < v.size(); ++i) {
            mn = std::min(mn, v[i]);
            mx = std::max(mx, v[i]);
            s += v[i];
            ++n;
        }
        mean = s / double(n);
        spread = mx - mn;
    };
    tail_stats(rep.ratio_criterion, rep.ratio_tail_mean, rep.ratio_tail_spread);
    tail_stats(rep.quotient_gaps, rep.gap_tail_mean, rep.gap_tail_spread);
    rep.consistent = std::isfinite(rep.ratio_tail_spread) && rep.ratio_tail_spread <= spread_band &&
                     std::isfinite(rep.gap_tail_spread) &&
                     rep.gap_tail_spread <= spread_band * (std::abs(rep.gap_tail_mean) + 1.0);
    return rep;
}

} // namespace resum
