#include "resum/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "resum/errors.hpp"
#include "resum/quadrature.hpp"

namespace resum {

namespace {

constexpr double pi = 3.14159265358979323846;

std::vector<double> log_spaced(double lo, double hi, int n) {
    std::vector<double> out;
    out.reserve(std::size_t(n));
    double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i)
        out.push_back(std::exp(llo + (lhi - llo) * (n > 1 ? double(i) / double(n - 1) : 0.5)));
    return out;
}

// fan of ray angles covering fraction `cover` of the sector's half-opening
std::vector<double> ray_fan(double direction, double half_opening, int rays, double cover) {
    std::vector<double> out;
    if (rays <= 1) {
        out.push_back(direction);
        return out;
    }
    for (int j = 0; j < rays; ++j)
        out.push_back(direction + half_opening * cover * (2.0 * j / double(rays - 1) - 1.0));
    return out;
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

} // namespace

bool sector::contains(const polar& z) const {
    return std::abs(z.arg - direction) < opening * pi / 2.0 && z.mod < radius;
}

transform_result laplace_ray(const ray_evaluator& f, const kernel& k, double tau, polar z,
                             double rel_tol) {
    if (!(z.mod > 0.0)) throw std::invalid_argument("laplace_ray: z must be nonzero");
    double half = k.omega() * pi / 2.0;
    if (!(std::abs(z.arg - tau) < half))
        throw std::invalid_argument("laplace_ray: arg(z) outside the half-aperture around tau");
    integrand g = [&f, &k, tau, &z](double t) -> cplx {
        cplx ev = k.e(polar{t / z.mod, tau - z.arg});
        if (ev == cplx(0.0, 0.0)) return ev; // kernel tail underflow; skip f
        return ev * f(polar{t, tau}) / t;
    };
    quad_result q = ray_integral(g, z.mod, rel_tol);
    return {q.value, q.abs_error, q.evaluations, q.converged};
}

transform_result borel_path(const ray_evaluator& f, const kernel& k, const path_spec& path,
                            polar u, double rel_tol, double domain_radius) {
    if (!(u.mod > 0.0)) throw std::invalid_argument("borel_path: u must be nonzero");
    double omega = k.omega();
    if (omega >= 2.0) {
        const kernel* b = k.base();
        if (b == nullptr)
            throw std::invalid_argument(
                "borel_path: aperture omega >= 2 leaves no room for the return legs; build the "
                "kernel with rescale() so the path can run in the base variable");
        double s = k.rescale_factor();
        ray_evaluator lifted = [&f, s](polar z) { return f(z.pow(s)); };
        path_spec down = path;
        down.direction = path.direction / s;
        down.arc_radius = path.arc_radius > 0.0 ? std::pow(path.arc_radius, 1.0 / s) : 0.0;
        double dom = std::isfinite(domain_radius) ? std::pow(domain_radius, 1.0 / s) : INFINITY;
        return borel_path(lifted, *b, down, u.pow(1.0 / s), rel_tol, dom);
    }

    double eps = path.eps;
    if (eps <= 0.0) eps = std::min(pi / 4.0, 0.9 * pi * (2.0 - omega) / omega);
    if (eps >= 2.0 * pi * (2.0 - omega) / omega)
        throw std::invalid_argument("borel_path: eps pushes the legs out of the companion's "
                                    "decay sector");
    double r2 = path.arc_radius;
    if (r2 <= 0.0) {
        r2 = u.mod / 4.0;
        if (std::isfinite(domain_radius)) r2 = std::min(r2, 0.45 * domain_radius);
    }

    double phi = omega * (pi + eps) / 2.0;
    double th1 = path.direction + phi;
    double th3 = path.direction - phi;

    auto F = [&f, &k, &u](polar z) -> cplx {
        polar w = u / z;
        ml_result E = k.E(w.value());
        return E.value * f(z);
    };

    double piece_tol = rel_tol / 3.0;
    quad_result leg1 =
        origin_integral([&F, th1](double t) { return F(polar{t, th1}) / t; }, r2, piece_tol);
    quad_result leg3 =
        origin_integral([&F, th3](double t) { return F(polar{t, th3}) / t; }, r2, piece_tol);

    // arc |z| = r2, theta3 -> theta1 (the path traverses it the other way)
    integrand arcg = [&F, r2](double th) { return F(polar{r2, th}) * cplx(0.0, 1.0); };
    double gmax = 0.0;
    for (int i = 0; i < 9; ++i) {
        double th = th3 + (th1 - th3) * (double(i) + 0.5) / 9.0;
        gmax = std::max(gmax, std::abs(arcg(th)));
    }
    quad_result arc =
        gk_adaptive(arcg, th3, th1, std::max(gmax * (th1 - th3), 1e-300) * piece_tol);

    cplx pathval = leg1.value - arc.value - leg3.value;
    cplx value = -pathval / (cplx(0.0, 2.0 * pi) );
    double err = (leg1.abs_error + leg3.abs_error + arc.abs_error) / (2.0 * pi);
    long evals = leg1.evaluations + leg3.evaluations + arc.evaluations;
    bool ok = leg1.converged && leg3.converged && arc.converged;
    return {value, err, evals, ok};
}

double reproducing_residual(const kernel& k, polar z, polar w, double tau, double rel_tol) {
    if (!(z.mod > 0.0) || !(w.mod > 0.0))
        throw std::invalid_argument("reproducing_residual: z, w must be nonzero");
    cplx target = w.value() / (w.value() - z.value());
    integrand g = [&k, &z, &w, tau](double t) -> cplx {
        cplx ev = k.e(polar{t / z.mod, tau - z.arg});
        if (ev == cplx(0.0, 0.0)) return ev;
        ml_result E = k.E(polar{t / w.mod, tau - w.arg}.value());
        return ev * E.value / t;
    };
    quad_result q = ray_integral(g, z.mod, rel_tol);
    return std::abs(q.value - target);
}

envelope_fit growth_class_fit(const ray_evaluator& f, const sector& s, const sequence_table& table,
                              const growth_fit_options& opt) {
    double hi = opt.radius_hi;
    if (std::isfinite(s.radius)) hi = std::min(hi, 0.95 * s.radius);
    std::vector<double> radii = log_spaced(opt.radius_lo, hi, opt.radii);
    std::vector<double> rays = ray_fan(s.direction, s.opening * pi / 2.0, opt.rays, 0.9);
    std::vector<double> lv(radii.size(), -INFINITY);
    for (std::size_t i = 0; i < radii.size(); ++i) {
        for (double th : rays) {
            cplx v = f(polar{radii[i], th});
            double m = std::abs(v);
            if (!std::isfinite(m)) {
                lv[i] = INFINITY;
                break;
            }
            if (m > 0.0) lv[i] = std::max(lv[i], std::log(m));
        }
    }
    return fit_envelope(
        radii, lv, [&table](double kk, double r) { return -table.log_h(kk / r); }, opt.k_lo,
        opt.k_hi, opt.k_steps, 0.5, opt.pref);
}

duality_report entire_duality_check(const formal_series& a, const sequence_table& table) {
    duality_report rep;
    std::size_t n = std::min(a.size(), table.depth() + 1);
    if (n < 8) {
        rep.note = "too few coefficients to fit";
        return rep;
    }
    std::vector<double> idx, la;
    for (std::size_t p = 1; p < n; ++p) {
        double m = std::abs(a.at(p));
        idx.push_back(double(p));
        la.push_back(m > 0.0 ? std::log(m) : -INFINITY);
    }
    rep.coefficient_side = fit_envelope(
        idx, la,
        [&table](double k, double p) {
            return p * std::log(k) - table.log_M(std::size_t(p));
        },
        1.0 / 1024.0, 1024.0, 61);

    // convergence-radius probe from the coefficient tail slopes
    std::vector<double> xs_mid, ys_mid, xs_late, ys_late;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (!std::isfinite(la[i])) continue;
        if (i >= idx.size() / 3 && i < 2 * idx.size() / 3) {
            xs_mid.push_back(idx[i]);
            ys_mid.push_back(la[i]);
        } else if (i >= 2 * idx.size() / 3) {
            xs_late.push_back(idx[i]);
            ys_late.push_back(la[i]);
        }
    }
    if (xs_late.size() < 3 || xs_mid.size() < 3) {
        rep.note = "coefficient tail too sparse for the radius probe";
        return rep;
    }
    double slope_mid = ls_slope(xs_mid, ys_mid);
    double slope_late = ls_slope(xs_late, ys_late);
    rep.entire_like = slope_late <= slope_mid - 0.05 || slope_late < -13.0;
    rep.radius_estimate = rep.entire_like ? INFINITY : std::exp(-slope_late);

    if (!rep.entire_like) {
        rep.consistent = false;
        rep.note = "coefficients indicate a finite convergence radius near " +
                   std::to_string(rep.radius_estimate) + "; global growth bound not applicable";
        return rep;
    }

    // function side on circles where the truncation is trustworthy
    std::vector<double> radii, lf;
    for (double r : log_spaced(1e-2, 1e6, 33)) {
        double max_term = -INFINITY, last_term = -INFINITY;
        for (std::size_t p = 0; p < n; ++p) {
            double m = std::abs(a.at(p));
            double lt = m > 0.0 ? std::log(m) + double(p) * std::log(r) : -INFINITY;
            max_term = std::max(max_term, lt);
            last_term = lt;
        }
        if (!(last_term < max_term + std::log(1e-14))) break; // truncation noise takes over
        double best = -INFINITY;
        for (int j = 0; j < 8; ++j) {
            cplx v = a.eval(std::polar(r, -pi + 2.0 * pi * (j + 0.5) / 8.0));
            double m = std::abs(v);
            if (m > 0.0) best = std::max(best, std::log(m));
        }
        radii.push_back(r);
        lf.push_back(best);
    }
    if (radii.size() >= 6) {
        rep.function_side = fit_envelope(
            radii, lf, [&table](double k, double r) { return table.big_m(k * r); }, 1.0 / 64.0,
            64.0, 43);
    } else {
        rep.note = "truncation leaves too small a disc for the function-side fit";
    }
    rep.consistent = rep.coefficient_side.member && rep.function_side.member;
    return rep;
}

asymptotic_report asymptotic_fit(const ray_evaluator& f, const formal_series& s,
                                 const sequence_table& table, const sector& sub, int order,
                                 int radii, int rays, double radius_hi) {
    asymptotic_report rep;
    int max_order = int(std::min<std::size_t>(std::size_t(order), s.size()));
    if (max_order < 3) {
        rep.note = "series too short";
        return rep;
    }
    std::vector<polar> zs;
    std::vector<cplx> fz;
    for (double r : log_spaced(radius_hi / 64.0, radius_hi, radii))
        for (double th : ray_fan(sub.direction, sub.opening * pi / 2.0, rays, 0.8)) {
            polar z{r, th};
            zs.push_back(z);
            fz.push_back(f(z));
        }
    double fscale = 0.0;
    for (const cplx& v : fz) fscale = std::max(fscale, std::abs(v));
    double floor_log = std::log(std::max(fscale, 1.0)) + std::log(1e-12);

    std::vector<double> ns, lr;
    for (int nn = 1; nn <= max_order; ++nn) {
        double worst = -INFINITY;
        bool any = false;
        for (std::size_t i = 0; i < zs.size(); ++i) {
            double expected = table.log_M(std::size_t(nn)) + nn * std::log(zs[i].mod);
            if (expected < floor_log) continue; // remainder below what f was computed to
            cplx diff = fz[i] - s.eval_partial(zs[i].value(), std::size_t(nn));
            double m = std::abs(diff);
            if (m <= 0.0) continue;
            worst = std::max(worst, std::log(m) - expected);
            any = true;
        }
        if (!any) break; // every sample under the numeric floor from here on
        ns.push_back(double(nn));
        lr.push_back(worst);
        rep.remainder_log.push_back(worst);
    }
    if (ns.size() < 3) {
        rep.note = "remainders fell below the numeric floor before a fit was possible";
        return rep;
    }
    bool finite = true;
    for (double v : lr)
        if (!std::isfinite(v)) finite = false;
    if (!finite) {
        rep.note = "remainder envelope diverges: no finite geometric constants";
        return rep;
    }
    double slope = ls_slope(ns, lr);
    if (slope > 50.0) {
        rep.note = "remainder ratios explode super-geometrically";
        return rep;
    }
    rep.a = std::exp(slope);
    double c = -INFINITY;
    for (std::size_t i = 0; i < ns.size(); ++i) c = std::max(c, lr[i] - slope * ns[i]);
    rep.log_c = c;
    rep.bounded = true;
    return rep;
}

sequence_table product_table(const sequence_table& a, const sequence_table& b) {
    std::size_t d = std::min(a.depth(), b.depth());
    std::vector<double> logs(d + 1);
    for (std::size_t p = 0; p <= d; ++p) logs[p] = a.log_M(p) + b.log_M(p);
    return sequence_table::from_logs(a.name() + "*" + b.name(), std::move(logs));
}

sequence_table quotient_table(const sequence_table& a, const sequence_table& b) {
    std::size_t d = std::min(a.depth(), b.depth());
    std::vector<double> logs(d + 1);
    for (std::size_t p = 0; p <= d; ++p) logs[p] = a.log_M(p) - b.log_M(p);
    try {
        return sequence_table::from_logs(a.name() + "/" + b.name(), std::move(logs));
    } catch (const std::invalid_argument& ex) {
        throw std::invalid_argument(std::string("quotient table ") + a.name() + "/" + b.name() +
                                    ": " + ex.what());
    }
}

transform_asymptotics_report transform_asymptotics_check(
    const ray_evaluator& f, const formal_series& s, const kernel& k, const sequence_table& base,
    const sequence_table& extra, double tau, int order, double radius_hi) {
    transform_asymptotics_report rep;
    moment_sequence ms(k, s.size() >= 2 ? s.size() : 2);

    sequence_table prod = product_table(base, extra);
    formal_series direct_series = formal_laplace(s, ms);
    ray_evaluator direct = [&f, &k, tau](polar z) {
        return laplace_ray(f, k, tau, z, 1e-10).value;
    };
    sector zsub{tau, 0.35 * k.omega(), INFINITY};
    rep.direct = asymptotic_fit(direct, direct_series, prod, zsub, order, 8, 3, radius_hi);
    rep.product_ok = rep.direct.bounded;

    sequence_table quot = quotient_table(extra, base);
    formal_series inverse_series = formal_borel(s, ms);
    ray_evaluator inverse = [&f, &k, tau](polar u) {
        path_spec p;
        p.direction = tau;
        return borel_path(f, k, p, u, 1e-9).value;
    };
    sector usub{tau, 0.2, INFINITY};
    rep.inverse = asymptotic_fit(inverse, inverse_series, quot, usub, order, 8, 3, radius_hi);
    rep.quotient_ok = rep.inverse.bounded;
    return rep;
}

} // namespace resum
