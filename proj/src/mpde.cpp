#include "resum/mpde.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace resum {

namespace {

constexpr double pi = 3.14159265358979323846;

// m(hi)/m(lo) as a product of closed-form quotients
double moment_ratio(const moment_sequence& ms, std::size_t hi, std::size_t lo) {
    double acc = 1.0;
    for (std::size_t i = lo; i < hi; ++i) {
        acc *= ms.source().moment_quotient(i);
        if (!std::isfinite(acc)) break;
    }
    return acc;
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double den = double(n) * sxx - sx * sx;
    if (den == 0.0) return 0.0;
    return (double(n) * sxy - sx * sy) / den;
}

// envelope witness for y_j <= log c + j log a: tail-slope fit plus drift gate
struct linear_witness {
    bool stable = false;
    double log_a = 0.0;
    double log_c = 0.0;
    double drift = 0.0;
};

linear_witness fit_linear_witness(const std::vector<double>& j, const std::vector<double>& y) {
    linear_witness w;
    std::size_t n = j.size();
    if (n < 8) return w;
    for (double v : y)
        if (!std::isfinite(v)) return w;
    auto slice_slope = [&](std::size_t a, std::size_t b) {
        std::vector<double> xs(j.begin() + long(a), j.begin() + long(b));
        std::vector<double> ys(y.begin() + long(a), y.begin() + long(b));
        return ls_slope(xs, ys);
    };
    double early = slice_slope(n / 4, n / 2);
    double late = slice_slope(n / 2, n);
    w.drift = late - early;
    w.log_a = late;
    double c = -INFINITY;
    for (std::size_t i = 0; i < n; ++i) c = std::max(c, y[i] - w.log_a * j[i]);
    w.log_c = c;
    w.stable = w.drift <= 0.1;
    return w;
}

double sup_proxy_of(const formal_series& s, double r0) {
    double acc = 0.0;
    double rp = 1.0;
    for (std::size_t p = 0; p < s.size(); ++p, rp *= r0) acc += std::abs(s.at(p)) * rp;
    return acc;
}

} // namespace

rational_q rational_q::reduced(long n, long d) {
    if (d == 0) throw std::invalid_argument("rational_q: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    long g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    return rational_q{n / g, d / g};
}

symbol symbol::polynomial(std::vector<cplx> c, std::optional<rational_q> q_override) {
    while (c.size() > 1 && std::abs(c.back()) == 0.0) c.pop_back();
    if (c.empty()) c.push_back(cplx(0.0));
    symbol s;
    s.coeff = std::move(c);
    s.q = q_override ? *q_override : rational_q{long(s.coeff.size()) - 1, 1};
    return s;
}

std::size_t mpde_problem::order() const {
    std::size_t n = 0;
    for (const mpde_factor& f : factors) n += f.multiplicity;
    return n;
}

bool mpde_problem::assumption_a() const {
    if (factors.empty()) return false;
    rational_q q0 = common_q();
    for (const mpde_factor& f : factors) {
        rational_q q = rational_q::reduced(f.lambda.q.num, f.lambda.q.den);
        if (q.num != q0.num || q.den != q0.den) return false;
    }
    return true;
}

rational_q mpde_problem::common_q() const {
    if (q_override) return rational_q::reduced(q_override->num, q_override->den);
    if (factors.empty()) throw std::invalid_argument("mpde_problem: no factors");
    return rational_q::reduced(factors.front().lambda.q.num, factors.front().lambda.q.den);
}

formal_series moment_derivative(const formal_series& s, const moment_sequence& m, std::size_t n) {
    if (n == 0) return s;
    if (s.size() < n + 1)
        throw depth_error("moment_derivative: order " + std::to_string(n) +
                          " exhausts a truncation of " + std::to_string(s.size()) +
                          " coefficients");
    std::vector<cplx> out(s.size() - n);
    for (std::size_t p = 0; p < out.size(); ++p)
        out[p] = s.at(p + n) * moment_ratio(m, p + n, p);
    return formal_series(std::move(out));
}

formal_series apply_symbol_power(const symbol& lambda, std::size_t j, const formal_series& phi,
                                 const moment_sequence& m2) {
    std::vector<cplx> c = poly_power(lambda.coeff, unsigned(j));
    std::size_t deg = c.size() - 1;
    if (phi.size() <= deg)
        throw depth_error("apply_symbol_power: symbol power has degree " + std::to_string(deg) +
                          "; the data truncation needs at least " + std::to_string(deg + 1) +
                          " coefficients");
    std::vector<cplx> out(phi.size() - deg, cplx(0.0));
    for (std::size_t p = 0; p < out.size(); ++p) {
        double ratio = 1.0; // m2(p+k)/m2(p), advanced with k
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (k > 0) ratio *= m2.source().moment_quotient(p + k - 1);
            if (c[k] != cplx(0.0)) out[p] += c[k] * phi.at(p + k) * ratio;
        }
    }
    return formal_series(std::move(out));
}

formal_solution_2d formal_solution_single(std::size_t beta, const symbol& lambda,
                                          const formal_series& phi, const moment_sequence& m1,
                                          const moment_sequence& m2, std::size_t j_max,
                                          std::size_t n_z, double r0) {
    if (beta == 0) throw std::invalid_argument("formal_solution_single: beta >= 1");
    std::size_t need = n_z + 1 + j_max * lambda.degree();
    if (phi.size() < need)
        throw depth_error("formal_solution_single: data truncated at " +
                          std::to_string(phi.size()) + " coefficients; needs " +
                          std::to_string(need));
    formal_solution_2d sol;
    sol.r0 = r0;
    sol.depth_z = n_z;
    for (std::size_t j = 0; j <= j_max; ++j) {
        if (j + 1 < beta) {
            sol.u.emplace_back(std::vector<cplx>(n_z + 1, cplx(0.0)));
            sol.sup_proxy.push_back(0.0);
            continue;
        }
        formal_series lam = apply_symbol_power(lambda, j, phi, m2);
        double scale = binomial_t<double>(j, beta - 1) / moment_ratio(m1, j, 0);
        std::vector<cplx> coeff(n_z + 1, cplx(0.0));
        for (std::size_t p = 0; p <= n_z && p < lam.size(); ++p) coeff[p] = lam.at(p) * scale;
        sol.u.emplace_back(std::move(coeff));
        sol.sup_proxy.push_back(sup_proxy_of(sol.u.back(), r0));
    }
    return sol;
}

formal_solution_2d superpose(const std::vector<formal_solution_2d>& parts) {
    if (parts.empty()) throw std::invalid_argument("superpose: nothing to combine");
    formal_solution_2d out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const formal_solution_2d& p = parts[i];
        if (p.u.size() != out.u.size() || p.depth_z != out.depth_z || p.r0 != out.r0)
            throw std::invalid_argument("superpose: truncation mismatch between subsolutions");
        for (std::size_t j = 0; j < out.u.size(); ++j) {
            std::vector<cplx> sum(out.depth_z + 1, cplx(0.0));
            for (std::size_t k = 0; k <= out.depth_z; ++k)
                sum[k] = out.u[j].at(k) + p.u[j].at(k);
            out.u[j] = formal_series(std::move(sum));
        }
    }
    for (std::size_t j = 0; j < out.u.size(); ++j) out.sup_proxy[j] = sup_proxy_of(out.u[j], out.r0);
    return out;
}

classification_report growth_classify(const formal_solution_2d& sol, const moment_sequence& m1,
                                      const moment_sequence& m2, rational_q q,
                                      const std::optional<moment_sequence>& candidate) {
    classification_report rep;
    std::size_t j_max = sol.u.empty() ? 0 : sol.u.size() - 1;
    if (j_max < 8) {
        rep.note = "solution truncation too short to classify";
        return rep;
    }
    double qv = q.value();

    std::vector<double> js, lr;
    bool ratios_finite = true;
    for (std::size_t j = 1; j <= j_max; ++j) {
        double l2 = m2.source().log_moment(qv * double(j));
        double l1 = m1.source().log_moment(double(j));
        double root = std::exp((l2 - l1) / double(j));
        rep.evidence.ratio_root.push_back(root);
        if (!std::isfinite(root)) ratios_finite = false;
        js.push_back(double(j));
        lr.push_back(root);
    }
    if (ratios_finite) {
        double mid = 0.0, tail = 0.0;
        for (std::size_t i = js.size() / 4; i < js.size() / 2; ++i) mid = std::max(mid, lr[i]);
        for (std::size_t i = js.size() / 2; i < js.size(); ++i) tail = std::max(tail, lr[i]);
        rep.ratio_bounded = tail <= 1.05 * mid + 1e-9;
    }

    if (candidate) {
        const moment_sequence& mc = *candidate;
        std::vector<double> y27, y28, ye;
        for (std::size_t j = 1; j <= j_max; ++j) {
            double l2q = m2.source().log_moment(qv * double(j));
            double l1 = m1.source().log_moment(double(j));
            double lm = mc.source().log_moment(double(j));
            y27.push_back(l2q - lm - l1);
            double jq = double(j) / qv;
            y28.push_back(mc.source().log_moment(jq) + m1.source().log_moment(jq) -
                          m2.source().log_moment(double(j)));
            ye.push_back(l2q + lm - l1);
        }
        linear_witness w27 = fit_linear_witness(js, y27);
        linear_witness w28 = fit_linear_witness(js, y28);
        linear_witness we = fit_linear_witness(js, ye);
        rep.evidence.a0 = std::exp(w27.log_a);
        rep.evidence.log_c0 = w27.log_c;
        rep.evidence.a1 = std::exp(w28.log_a);
        rep.evidence.log_c1 = w28.log_c;
        rep.evidence.entire_d = std::exp(we.log_a);
        rep.evidence.entire_log_c = we.log_c;
        for (std::size_t i = 0; i < js.size(); ++i) {
            rep.evidence.ineq27_slack.push_back(w27.log_c + w27.log_a * js[i] - y27[i]);
            rep.evidence.ineq28_slack.push_back(w28.log_c + w28.log_a * js[i] - y28[i]);
        }
        rep.entire_ok = we.stable;

        std::vector<double> lv;
        for (std::size_t j = 1; j <= j_max; ++j) {
            double s = sol.sup_proxy[j];
            lv.push_back(s > 0.0 ? std::log(s) : -INFINITY);
        }
        rep.evidence.proxy_growth = fit_envelope(
            js, lv,
            [&mc](double d, double j) { return j * std::log(d) + mc.log_value(std::size_t(j)); },
            1.0 / 1024.0, 1024.0, 61);
        rep.candidate_ok = w27.stable && w28.stable && rep.evidence.proxy_growth.member;
    }

    if (rep.ratio_bounded) {
        rep.verdict = solution_class::convergent;
        rep.note = "coefficient ratio roots stay bounded through the tail";
    } else if (candidate && rep.entire_ok) {
        rep.verdict = solution_class::entire_with_growth;
        rep.note = "entire-growth inequality admits stable witnesses";
    } else if (candidate && rep.candidate_ok) {
        rep.verdict = solution_class::summability_candidate;
        rep.note = "divergent, with stable moment-inequality witnesses for the candidate";
    } else {
        rep.verdict = solution_class::unclassified;
        rep.note = candidate ? "no stable witnesses for the candidate sequence"
                             : "divergent; no candidate sequence supplied";
    }
    return rep;
}

direction_verdict summability_2var_check(const formal_solution_2d& sol, const moment_sequence& m,
                                         double d, double r0) {
    direction_verdict out;
    std::size_t j_max = sol.u.empty() ? 0 : sol.u.size() - 1;
    std::vector<cplx> sigma(j_max + 1);
    bool all_zero = true;
    for (std::size_t j = 0; j <= j_max; ++j) {
        double s = sup_proxy_of(sol.u[j], r0) * std::exp(-m.log_value(j));
        sigma[j] = cplx(s, 0.0);
        out.proxy.push_back(s);
        if (s != 0.0) all_zero = false;
    }
    if (all_zero) {
        out.certified = true;
        out.reason = "zero solution";
        return out;
    }
    continuation cont = continue_borel(formal_series(sigma), d, sum_method::pade());
    out.clearance = cont.clearance;
    out.radius_estimate = cont.radius_estimate;
    if (cont.clearance.blocked) {
        out.reason = "pole-on-ray";
        return out;
    }
    double re = std::isfinite(cont.radius_estimate) ? cont.radius_estimate : 1.0;
    sector ray{d, 0.08, INFINITY};
    growth_fit_options gopt;
    gopt.radius_lo = re / 64.0;
    gopt.radius_hi = re * 50.0;
    gopt.radii = 26;
    gopt.rays = 3;
    sequence_table table = m.as_table();
    out.growth = growth_class_fit(cont.eval, ray, table, gopt);
    if (!out.growth.member) {
        out.reason = "ray-growth";
        return out;
    }
    out.certified = true;
    return out;
}

assumption_a_report assumption_a_classify(const mpde_problem& problem,
                                          const std::optional<moment_sequence>& candidate, double d,
                                          std::size_t j_max, std::size_t n_z) {
    if (!problem.assumption_a())
        throw std::invalid_argument(
            "assumption_a_classify: factor pole orders disagree; the direction bookkeeping "
            "needs a common order");
    assumption_a_report rep;
    rep.assumption_holds = true;
    rep.q = problem.common_q();

    std::size_t max_deg = 0;
    for (const mpde_factor& f : problem.factors) max_deg = std::max(max_deg, f.lambda.degree());
    std::size_t depth2 = n_z + j_max * max_deg + 4;
    moment_sequence ms1(problem.m1, j_max + 4);
    moment_sequence ms2(problem.m2, depth2);

    std::vector<formal_solution_2d> parts;
    for (std::size_t a = 0; a < problem.factors.size(); ++a) {
        const mpde_factor& f = problem.factors[a];
        for (std::size_t beta = 1; beta <= f.multiplicity; ++beta) {
            formal_series phi;
            if (!problem.decomposed.empty()) {
                if (a >= problem.decomposed.size() || beta - 1 >= problem.decomposed[a].size())
                    throw std::invalid_argument(
                        "assumption_a_classify: decomposed data missing for a factor");
                phi = problem.decomposed[a][beta - 1];
            } else if (problem.factors.size() == 1 && f.multiplicity == 1 &&
                       problem.data.size() == 1) {
                phi = problem.data[0];
            } else {
                throw std::invalid_argument(
                    "assumption_a_classify: multi-factor problems need caller-decomposed data "
                    "(the normalization operators are input, not derived here)");
            }
            parts.push_back(formal_solution_single(beta, f.lambda, phi, ms1, ms2, j_max, n_z,
                                                   problem.r0));
        }
    }
    formal_solution_2d sol = superpose(parts);
    rep.classification = growth_classify(sol, ms1, ms2, rep.q, candidate);

    long mu = rep.q.num, nu = rep.q.den;
    for (long n = 0; n < nu; ++n) {
        direction_entry e;
        e.type = direction_entry::kind::solution_ray;
        e.angle = d + 2.0 * pi * double(n) / double(nu);
        if (candidate) {
            e.verdict = summability_2var_check(sol, *candidate, e.angle, problem.r0);
            e.note = e.verdict->certified ? "certified" : e.verdict->reason;
        } else {
            e.note = "no candidate sequence supplied";
        }
        rep.directions.push_back(std::move(e));
    }
    for (std::size_t a = 0; a < problem.factors.size(); ++a) {
        cplx lead = problem.factors[a].lambda.leading();
        if (lead == cplx(0.0)) {
            direction_entry e;
            e.type = direction_entry::kind::data_ray;
            e.factor_index = a;
            e.note = "zero symbol: no data direction";
            rep.directions.push_back(std::move(e));
            continue;
        }
        for (long k = 0; k < mu; ++k) {
            direction_entry e;
            e.type = direction_entry::kind::data_ray;
            e.factor_index = a;
            e.angle = (d + std::arg(lead)) / rep.q.value() + 2.0 * pi * double(k) / double(mu);
            e.note = "data continuation along this ray is a theorem hypothesis; a truncated "
                     "series cannot certify it";
            rep.directions.push_back(std::move(e));
        }
    }
    return rep;
}

} // namespace resum
