#include "resum/summation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "resum/parallel.hpp"

namespace resum {

namespace {

constexpr double pi = 3.14159265358979323846;

// lift a plain complex point onto the sheet closest to the working direction
polar near_direction(cplx z, double d) {
    double a = std::arg(z);
    while (a - d > pi) a -= 2.0 * pi;
    while (d - a > pi) a += 2.0 * pi;
    return polar{std::abs(z), a};
}

envelope_fit kernel_decay_fit(const kernel& e, const sequence_table& table) {
    double half = e.omega() * pi / 2.0;
    std::vector<double> radii, lv;
    for (int i = 0; i < 30; ++i) {
        double r = std::exp(std::log(1e-2) + (std::log(1e2) - std::log(1e-2)) * i / 29.0);
        double worst = -INFINITY;
        bool hard = false;
        for (int j = 0; j < 5; ++j) {
            double th = half * 0.9 * (2.0 * j / 4.0 - 1.0);
            cplx v = e.e(polar{r, th});
            double m = std::abs(v);
            if (!std::isfinite(m)) {
                hard = true;
                break;
            }
            if (m > 0.0) worst = std::max(worst, std::log(m));
        }
        radii.push_back(r);
        lv.push_back(hard ? INFINITY : worst);
    }
    return fit_envelope(
        radii, lv, [&table](double k, double r) { return table.log_h(k / r); }, 1.0 / 1024.0,
        1024.0, 61, 0.5, k_preference::smallest);
}

} // namespace

coefficient_fit coefficient_class(const formal_series& fhat, const moment_sequence& m) {
    coefficient_fit out;
    if (fhat.size() < 4) return out;
    std::vector<double> idx, la;
    for (std::size_t p = 0; p < fhat.size(); ++p) {
        double v = std::abs(fhat.at(p));
        idx.push_back(double(p));
        la.push_back(v > 0.0 ? std::log(v) : -INFINITY);
    }
    envelope_fit fit = fit_envelope(
        idx, la,
        [&m](double a, double p) { return p * std::log(a) + m.log_value(std::size_t(p)); },
        1.0 / 1024.0, 1024.0, 81);
    out.in_class = fit.member;
    out.log_c = fit.log_c;
    out.a = fit.k;
    out.trend = fit.trend;
    return out;
}

sum_method sum_method::pade(int l, int m) {
    sum_method s;
    s.kind = type::pade;
    s.l = l;
    s.m = m;
    return s;
}

sum_method sum_method::closed_form(std::string name, ray_evaluator g) {
    sum_method s;
    s.kind = type::closed;
    s.closed = std::move(g);
    s.closed_name = std::move(name);
    return s;
}

continuation continue_borel(const formal_series& bhat, double direction,
                            const sum_method& method) {
    continuation c;
    if (method.kind == sum_method::type::closed) {
        if (!method.closed)
            throw std::invalid_argument("continue_borel: closed method without an evaluator");
        c.eval = method.closed;
        c.clearance.nearest = INFINITY;
        return c;
    }
    int n = int(bhat.size());
    if (n < 3) throw std::invalid_argument("continue_borel: series too short for a rational fit");
    int m = method.m > 0 ? method.m : (n - 1) / 2;
    int l = method.l > 0 ? method.l : n - 1 - m;
    if (l + m + 1 > n)
        throw std::invalid_argument("continue_borel: degrees need l+m+1 coefficients");
    pade_approximant pa = robust_pade(bhat.coefficients(), l, m);
    c.poles = pa.poles();
    c.clearance = poles_near_ray(c.poles, direction);
    c.effective_l = pa.effective_l;
    c.effective_m = pa.effective_m;
    for (const cplx& p : c.poles) c.radius_estimate = std::min(c.radius_estimate, std::abs(p));
    c.eval = [pa](polar u) { return pa.eval(u.value()); };
    return c;
}

summability_report m_sum(const formal_series& fhat, const kernel& e, double direction,
                         const sum_method& method, const std::vector<cplx>& points,
                         const summation_options& opt) {
    summability_report rep;

    bool all_zero = true;
    for (std::size_t p = 0; p < fhat.size() && all_zero; ++p)
        if (fhat.at(p) != cplx(0.0)) all_zero = false;
    if (all_zero) { // the zero series sums to zero everywhere, no fits needed
        rep.coeff.in_class = true;
        rep.ray_growth.member = true;
        rep.kernel_decay.member = true;
        rep.rho2.found = true;
        rep.rho2.rho = 1.0;
        rep.certified = true;
        rep.certified_radius = INFINITY;
        for (cplx zc : points) {
            point_value pv;
            pv.z = zc;
            pv.converged = true;
            pv.inside_certified = true;
            rep.points.push_back(pv);
        }
        return rep;
    }

    std::size_t depth = opt.depth > 0 ? opt.depth : fhat.size() + 8;
    moment_sequence ms(e, depth);
    sequence_table table = ms.as_table();

    rep.coeff = coefficient_class(fhat, ms);
    if (!rep.coeff.in_class) rep.failure = "coefficient-class";

    formal_series bhat = formal_borel(fhat, ms);
    continuation cont = continue_borel(bhat, direction, method);
    rep.clearance = cont.clearance;
    rep.pole_free = !cont.clearance.blocked;
    if (!rep.pole_free && rep.failure.empty()) rep.failure = "pole-on-ray";

    if (rep.pole_free) {
        sector ray{direction, 0.1, INFINITY};
        growth_fit_options gopt;
        gopt.radius_hi = opt.ray_radius_hi;
        gopt.radii = opt.ray_samples;
        gopt.rays = 3;
        gopt.pref = k_preference::largest;
        rep.ray_growth = growth_class_fit(cont.eval, ray, table, gopt);
        if (!rep.ray_growth.member && rep.failure.empty()) rep.failure = "ray-growth";
    }

    rep.kernel_decay = kernel_decay_fit(e, table);
    if (!rep.kernel_decay.member && rep.failure.empty()) rep.failure = "kernel-decay";

    rep.rho2 = rho_of_s(table, 2.0);
    if (!rep.rho2.found && rep.failure.empty()) rep.failure = "regularity-constant";

    rep.certified = rep.coeff.in_class && rep.pole_free && rep.ray_growth.member &&
                    rep.kernel_decay.member && rep.rho2.found;
    if (rep.certified)
        rep.certified_radius = rep.ray_growth.k / (rep.rho2.rho * rep.kernel_decay.k);

    // degree-jittered twin for the error estimate (rational method only)
    std::optional<continuation> twin;
    if (method.kind == sum_method::type::pade && rep.pole_free) {
        int n = int(bhat.size());
        int m = (method.m > 0 ? method.m : (n - 1) / 2) - 1;
        int l = (method.l > 0 ? method.l : n - 1 - (m + 1)) - 1;
        if (l >= 1 && m >= 1) {
            try {
                continuation t2 = continue_borel(bhat, direction, sum_method::pade(l, m));
                if (!t2.clearance.blocked) twin = std::move(t2);
            } catch (const std::exception&) {
                // twin is advisory only
            }
        }
    }

    double half = e.omega() * pi / 2.0;
    rep.points.assign(points.size(), point_value{});
    parallel_for(points.size(), opt.workers, [&](std::size_t i) {
        point_value pv;
        pv.z = points[i];
        polar z = near_direction(points[i], direction);
        if (!(std::abs(z.arg - direction) < half) || !(z.mod > 0.0)) {
            pv.err_estimate = INFINITY;
            rep.points[i] = pv;
            return;
        }
        transform_result tr = laplace_ray(cont.eval, e, direction, z, opt.tol);
        pv.value = tr.value;
        pv.err_estimate = tr.abs_error;
        pv.converged = tr.converged;
        pv.inside_certified = rep.certified && z.mod <= rep.certified_radius;
        if (twin) {
            transform_result t2 = laplace_ray(twin->eval, e, direction, z, opt.tol);
            pv.err_estimate += std::abs(t2.value - tr.value);
        }
        rep.points[i] = pv;
    });
    return rep;
}

independence_report kernel_independence(const formal_series& fhat, const kernel& e1,
                                        const kernel& e2, double direction,
                                        const sum_method& method, const std::vector<cplx>& points,
                                        const summation_options& opt) {
    independence_report rep;
    rep.first = m_sum(fhat, e1, direction, method, points, opt);
    rep.second = m_sum(fhat, e2, direction, method, points, opt);
    rep.comparable = rep.first.certified && rep.second.certified;
    for (std::size_t i = 0; i < rep.first.points.size() && i < rep.second.points.size(); ++i) {
        const point_value& a = rep.first.points[i];
        const point_value& b = rep.second.points[i];
        if (!a.converged || !b.converged) {
            rep.comparable = false;
            continue;
        }
        rep.max_deviation = std::max(rep.max_deviation, std::abs(a.value - b.value));
    }
    return rep;
}

} // namespace resum
