// Command-line front end: sequence diagnostics, kernel validation, series
// resummation, moment-PDE classification, and the cross-module identity suite.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "resum/errors.hpp"
#include "resum/io.hpp"
#include "resum/kernels.hpp"
#include "resum/mpde.hpp"
#include "resum/parallel.hpp"
#include "resum/sequences.hpp"
#include "resum/special.hpp"
#include "resum/summation.hpp"
#include "resum/transforms.hpp"

namespace fs = std::filesystem;
using namespace resum;

namespace {

constexpr double pi = 3.14159265358979323846;

std::string outpath(const std::string& dir, const std::string& name) {
    if (dir.empty() || dir == ".") return name;
    fs::create_directories(dir);
    return (fs::path(dir) / name).string();
}

std::vector<cplx> parse_points(const std::string& list) {
    std::vector<cplx> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        std::size_t comma = cur.find(',');
        double re = std::stod(cur.substr(0, comma));
        double im = comma == std::string::npos ? 0.0 : std::stod(cur.substr(comma + 1));
        out.emplace_back(re, im);
        cur.clear();
    };
    for (char c : list) {
        if (c == ';') {
            flush();
        } else {
            cur += c;
        }
    }
    flush();
    if (out.empty()) throw parse_error("--points: no points parsed from '" + list + "'");
    return out;
}

sum_method parse_method(const std::string& s) {
    if (s.rfind("pade", 0) == 0) {
        std::size_t colon = s.find(':');
        if (colon == std::string::npos) return sum_method::pade();
        std::size_t comma = s.find(',', colon);
        if (comma == std::string::npos) throw parse_error("--method pade:L,M needs two degrees");
        int l = std::stoi(s.substr(colon + 1, comma - colon - 1));
        int m = std::stoi(s.substr(comma + 1));
        return sum_method::pade(l, m);
    }
    if (s.rfind("closed:", 0) == 0) {
        std::string name = s.substr(7);
        if (name == "geometric")
            return sum_method::closed_form("geometric", [](polar u) {
                return cplx(1.0) / (cplx(1.0) - u.value());
            });
        if (name == "alt_geometric")
            return sum_method::closed_form("alt_geometric", [](polar u) {
                return cplx(1.0) / (cplx(1.0) + u.value());
            });
        if (name == "exp")
            return sum_method::closed_form("exp", [](polar u) { return std::exp(u.value()); });
        throw parse_error("--method closed:NAME knows geometric, alt_geometric, exp");
    }
    throw parse_error("--method must be pade[:L,M] or closed:NAME");
}

const char* verdict_name(solution_class v) {
    switch (v) {
    case solution_class::convergent: return "convergent";
    case solution_class::entire_with_growth: return "entire-with-growth";
    case solution_class::summability_candidate: return "divergent-summability-candidate";
    default: return "unclassified";
    }
}

// ---------------------------------------------------------------------------
// seq
// ---------------------------------------------------------------------------
int run_seq(const std::string& spec_path, const std::string& family_expr, std::size_t depth,
            const std::string& out) {
    std::string expr = family_expr;
    std::size_t run_depth = depth;
    if (!spec_path.empty()) {
        spec_file sf = read_spec_file(spec_path);
        std::string fam = sf.get("family");
        if (fam.find('(') == std::string::npos && sf.has("params"))
            fam += "(" + sf.get("params") + ")";
        expr = fam;
        if (depth == 0) run_depth = std::size_t(std::stoul(sf.get_or("depth", "120")));
    }
    if (expr.empty()) throw parse_error("seq: need --spec FILE or --family EXPR");
    if (run_depth == 0) run_depth = 120;

    sequence_table table(parse_family(expr), run_depth);
    axiom_report ax = check_axioms(table);
    order_estimate ord = order_and_omega(table);
    proximate_order_report po = proximate_order_diagnostic(table);

    std::printf("sequence %s, depth %zu\n", table.name().c_str(), table.depth());
    auto line = [](const char* name, const axiom_check& c) {
        std::printf("  %-16s %s", name, c.holds ? "holds" : "FAILS");
        if (c.holds && c.witness > 0.0) std::printf(" (witness %.6g)", c.witness);
        if (!c.holds && c.first_violation)
            std::printf(" (first violation at p = %zu)", *c.first_violation);
        if (!c.note.empty()) std::printf(" — %s", c.note.c_str());
        std::printf("\n");
    };
    line("log-convexity", ax.log_convex);
    line("moderate growth", ax.moderate_growth);
    line("tail bound", ax.tail_bound);
    std::printf("  order rho = %.6g, omega = %.6g (tail spread %.3g)\n", ord.rho, ord.omega,
                ord.tail_spread);
    std::printf("  proximate-order ratio tail %.6g +/- %.3g, quotient-gap tail %.6g +/- %.3g%s\n",
                po.ratio_tail_mean, po.ratio_tail_spread, po.gap_tail_mean, po.gap_tail_spread,
                po.consistent ? "" : " (inconsistent)");

    std::vector<std::vector<double>> rows;
    for (std::size_t p = 0; p <= table.depth(); ++p) {
        std::vector<double> r{double(p), table.log_M(p)};
        if (p < table.depth()) r.push_back(table.m(p));
        rows.push_back(std::move(r));
    }
    write_csv(outpath(out, "seq_table.csv"), "p, logM_p, m_p", rows);

    rows.clear();
    double t_lo = 1.02 / table.m(table.depth() - 1);
    double t_hi = 2.0 / table.m(0);
    int samples = 80;
    for (int i = 0; i < samples; ++i) {
        double t = t_lo * std::pow(t_hi / t_lo, double(i) / double(samples - 1));
        try {
            rows.push_back({t, table.h(t), table.big_m(1.0 / t)});
        } catch (const depth_error&) {
            continue;
        }
    }
    write_csv(outpath(out, "seq_samples.csv"), "t, h_of_t, bigM_of_1_over_t", rows);

    rows.clear();
    for (std::size_t i = 0; i < po.ratio_criterion.size(); ++i)
        rows.push_back({double(i + 1), po.ratio_criterion[i], po.quotient_gaps[i]});
    write_csv(outpath(out, "seq_diagnostics.csv"), "p, order_ratio, quotient_gap", rows);

    return ax.strongly_regular() ? 0 : 2;
}

// ---------------------------------------------------------------------------
// kernel
// ---------------------------------------------------------------------------
int run_kernel(const std::string& spec_path, const std::string& kernel_expr,
               const std::string& table_expr, std::size_t depth, double tol,
               const std::string& out) {
    std::string expr = kernel_expr;
    if (!spec_path.empty()) {
        spec_file sf = read_spec_file(spec_path);
        std::string k = sf.has("kernel") ? sf.get("kernel") : sf.get("tag");
        if (k.find('(') == std::string::npos && sf.has("params"))
            k += "(" + sf.get("params") + ")";
        expr = k;
    }
    if (expr.empty()) throw parse_error("kernel: need --spec FILE or --kernel EXPR");
    if (depth < 2) depth = 30;

    kernel k = parse_kernel(expr);
    moment_sequence ms(k, depth, tol);
    std::printf("kernel %s, omega = %.6g, moments to p = %zu\n", k.describe().c_str(), k.omega(),
                ms.depth());
    std::printf("  moment positivity %s, log-convexity %s\n", ms.positive_ok() ? "ok" : "FAILS",
                ms.log_convex_ok() ? "ok" : "FAILS");

    std::vector<std::vector<double>> rows;
    for (std::size_t p = 0; p <= ms.depth(); ++p)
        rows.push_back({double(p), ms.value(p), ms.quad_error(p)});
    write_csv(outpath(out, "kernel_moments.csv"), "p, m_p, quad_error", rows);

    bool ok = ms.positive_ok() && ms.log_convex_ok();
    if (!table_expr.empty()) {
        sequence_table table(parse_family(table_expr), std::max<std::size_t>(depth, 60));
        kernel_validation val = validate_kernel(k, table);
        for (const condition_report& c : val.conditions) {
            const char* v = c.verdict == condition_verdict::pass    ? "pass"
                            : c.verdict == condition_verdict::fail ? "FAIL"
                                                                    : "assumed";
            std::printf("  %-34s %s", c.name.c_str(), v);
            if (c.k > 0.0) std::printf(" (c = %.4g, k = %.4g)", c.c, c.k);
            if (!c.note.empty()) std::printf(" — %s", c.note.c_str());
            std::printf("\n");
        }
        std::printf("  omega: kernel %.4g vs table %.4g — %s\n", val.omega_kernel, val.omega_table,
                    val.omega_consistent ? "consistent" : "MISMATCH");
        equivalence_result eq = moment_equivalence(k, table, std::max<std::size_t>(depth, 60), tol);
        std::printf("  moment equivalence vs table: %s (L = %.4g, H = %.4g)%s%s\n",
                    eq.equivalent ? "equivalent" : "NOT equivalent", eq.low, eq.high,
                    eq.note.empty() ? "" : " — ", eq.note.c_str());
        ok = ok && val.admissible && eq.equivalent;
    }
    return ok ? 0 : 2;
}

// ---------------------------------------------------------------------------
// sum
// ---------------------------------------------------------------------------
int run_sum(const std::string& series_path, const std::string& kernel_expr, double direction,
            const std::string& method_str, const std::string& points_str,
            const std::string& normalization, double tol, std::size_t depth,
            const std::string& out, std::size_t workers) {
    formal_series input = read_series_csv(series_path);
    if (normalization == "factorial") {
        std::vector<cplx> a(input.size());
        double lg = 0.0; // log p!
        for (std::size_t p = 0; p < input.size(); ++p) {
            if (p > 0) lg += std::log(double(p));
            a[p] = input.at(p) * std::exp(-lg);
        }
        input = formal_series(std::move(a));
    } else if (normalization != "monomial") {
        throw parse_error("--normalization must be monomial or factorial");
    }

    kernel k = parse_kernel(kernel_expr);
    sum_method method = parse_method(method_str);
    std::vector<cplx> points = parse_points(points_str);
    summation_options opt;
    opt.tol = tol;
    opt.depth = depth;
    opt.workers = workers;

    summability_report rep = m_sum(input, k, direction, method, points, opt);

    std::printf("sum: %zu coefficients, kernel %s, direction %.6g\n", input.size(),
                k.describe().c_str(), direction);
    std::printf("  coefficient class: %s (c = %.4g, a = %.4g)\n",
                rep.coeff.in_class ? "member" : "FAILS", std::exp(rep.coeff.log_c), rep.coeff.a);
    if (!rep.pole_free)
        std::printf("  continuation blocked: pole at %.6g%+.6gi, %.4g rad off the ray\n",
                    rep.clearance.blocking_pole.real(), rep.clearance.blocking_pole.imag(),
                    rep.clearance.nearest);
    std::printf("  ray growth: %s (c = %.4g, k1 = %.4g)\n", rep.ray_growth.member ? "fit" : "FAILS",
                std::exp(rep.ray_growth.log_c), rep.ray_growth.k);
    std::printf("  kernel decay: %s (c = %.4g, k2 = %.4g)\n",
                rep.kernel_decay.member ? "fit" : "FAILS", std::exp(rep.kernel_decay.log_c),
                rep.kernel_decay.k);
    if (rep.rho2.found) std::printf("  regularity constant rho(2) = %.6g\n", rep.rho2.rho);
    if (rep.certified)
        std::printf("  CERTIFIED, radius %.6g\n", rep.certified_radius);
    else
        std::printf("  NOT certified (%s)\n", rep.failure.c_str());

    std::vector<std::vector<double>> rows;
    for (const point_value& pv : rep.points)
        rows.push_back({pv.z.real(), pv.z.imag(), pv.value.real(), pv.value.imag(),
                        pv.err_estimate});
    write_csv(outpath(out, "sum_points.csv"), "z_re, z_im, sum_re, sum_im, err_est", rows);

    for (const point_value& pv : rep.points)
        std::printf("  z = %.6g%+.6gi -> %.12g%+.12gi (err %.3g%s)\n", pv.z.real(), pv.z.imag(),
                    pv.value.real(), pv.value.imag(), pv.err_estimate,
                    pv.converged ? "" : ", NOT converged");
    return rep.certified ? 0 : 2;
}

// ---------------------------------------------------------------------------
// mpde
// ---------------------------------------------------------------------------
int run_mpde(const std::string& spec_path, std::size_t j_max_flag, const std::string& out) {
    mpde_spec spec = read_problem_spec(spec_path);
    if (j_max_flag > 0) spec.j_max = j_max_flag;
    std::optional<moment_sequence> candidate;
    if (spec.candidate) candidate.emplace(*spec.candidate, spec.j_max + 2);

    assumption_a_report rep =
        assumption_a_classify(spec.problem, candidate, spec.direction, spec.j_max, spec.n_z);

    std::printf("problem: %zu factor(s), order %zu, q = %ld/%ld\n", spec.problem.factors.size(),
                spec.problem.order(), rep.q.num, rep.q.den);
    const classification_report& cl = rep.classification;
    std::printf("classification: %s — %s\n", verdict_name(cl.verdict), cl.note.c_str());
    if (cl.candidate_ok || cl.verdict == solution_class::summability_candidate)
        std::printf("  witnesses: A0 = %.6g (C0 = %.4g), A1 = %.6g (C1 = %.4g)\n", cl.evidence.a0,
                    std::exp(cl.evidence.log_c0), cl.evidence.a1, std::exp(cl.evidence.log_c1));
    if (cl.entire_ok)
        std::printf("  entire growth: D = %.6g (C = %.4g)\n", cl.evidence.entire_d,
                    std::exp(cl.evidence.entire_log_c));

    bool any_ray_failed = false;
    for (const direction_entry& e : rep.directions) {
        if (e.type == direction_entry::kind::solution_ray) {
            std::printf("  solution ray arg t = %.6g: %s\n", e.angle, e.note.c_str());
            if (e.verdict && !e.verdict->certified) any_ray_failed = true;
        } else {
            std::printf("  data ray factor %zu, arg z = %.6g: %s\n", e.factor_index, e.angle,
                        e.note.c_str());
        }
    }

    std::vector<std::vector<double>> rows;
    const classification_evidence& ev = cl.evidence;
    for (std::size_t i = 0; i < ev.ratio_root.size(); ++i) {
        std::vector<double> r{double(i + 1), ev.ratio_root[i]};
        r.push_back(i < ev.ineq27_slack.size() ? ev.ineq27_slack[i] : NAN);
        r.push_back(i < ev.ineq28_slack.size() ? ev.ineq28_slack[i] : NAN);
        rows.push_back(std::move(r));
    }
    write_csv(outpath(out, "mpde_evidence.csv"), "j, ratio_root, ineq27_slack, ineq28_slack", rows);

    if (cl.verdict == solution_class::unclassified) return 2;
    return any_ray_failed ? 2 : 0;
}

// ---------------------------------------------------------------------------
// verify: cross-module identity suite
// ---------------------------------------------------------------------------
int run_verify(const std::string& kernel_expr, double tol, bool inject_moment_error) {
    int failures = 0;
    auto item = [&](const std::string& name, bool ok, const std::string& detail) {
        std::printf("[%s] %-34s %s\n", ok ? "ok" : "FAIL", name.c_str(), detail.c_str());
        if (!ok) ++failures;
    };
    char buf[160];

    kernel k = parse_kernel(kernel_expr);

    // 1. closed moments against quadrature
    {
        double worst = 0.0;
        for (int p = 0; p <= 12; ++p) {
            moment_value closed = k.moment(cplx(double(p)), tol);
            moment_value quad = k.moment(cplx(double(p)), tol, true);
            double rel = std::abs(closed.value - quad.value) / std::abs(closed.value);
            worst = std::max(worst, rel);
        }
        std::snprintf(buf, sizeof buf, "max rel dev %.3g over p = 0..12", worst);
        item("moments vs quadrature", worst < 1e-7, buf);
    }

    // 2. moment table positivity and log-convexity
    moment_sequence ms(k, 40, tol);
    item("moment table shape",
         ms.positive_ok() && ms.log_convex_ok(), "positivity + log-convexity to p = 40");

    // 3. forward transform on monomials
    {
        double worst = 0.0;
        for (int p = 0; p <= 5; ++p) {
            auto f = [p](polar u) { return cpow(u, cplx(double(p))); };
            for (double tau : {0.0, 0.4}) {
                polar z{0.7, tau + 0.1};
                transform_result tr = laplace_ray(f, k, tau, z, 1e-10);
                cplx expect = std::exp(ms.log_value(std::size_t(p))) * cpow(z, cplx(double(p)));
                worst = std::max(worst, std::abs(tr.value - expect) / std::abs(expect));
            }
        }
        std::snprintf(buf, sizeof buf, "max rel dev %.3g over p = 0..5, two rays", worst);
        item("transform on monomials", worst < 1e-7, buf);
    }

    // 4. inverse transform on monomials
    {
        double worst = 0.0;
        for (int p = 0; p <= 3; ++p) {
            auto f = [p](polar z) { return cpow(z, cplx(double(p))); };
            polar u{0.5, 0.0};
            transform_result tr = borel_path(f, k, path_spec{0.0, 0.0, 0.0}, u, 1e-9);
            cplx expect = cpow(u, cplx(double(p))) / std::exp(ms.log_value(std::size_t(p)));
            worst = std::max(worst, std::abs(tr.value - expect) / std::abs(expect));
        }
        std::snprintf(buf, sizeof buf, "max rel dev %.3g over p = 0..3", worst);
        item("inverse transform on monomials", worst < 1e-6, buf);
    }

    // 5. analytic round trip on 1/(1-z)
    {
        auto f = [](polar z) { return cplx(1.0) / (cplx(1.0) - z.value()); };
        double worst = 0.0;
        for (double r : {0.05, 0.1}) {
            polar z{r, 0.05};
            auto g = [&](polar u) {
                return borel_path(f, k, path_spec{0.0, 0.0, 0.0}, u, 1e-9, 0.9).value;
            };
            transform_result tr = laplace_ray(g, k, 0.0, z, 1e-7);
            worst = std::max(worst, std::abs(tr.value - f(z)));
        }
        std::snprintf(buf, sizeof buf, "max abs dev %.3g at two points", worst);
        item("round trip on a rational point", worst < 1e-5, buf);
    }

    // 6. kernel-pair reproducing identity
    {
        double r1 = reproducing_residual(k, polar{0.3, 0.0}, polar{0.8, 0.0}, 0.0, 1e-9);
        double r2 = reproducing_residual(k, polar{0.2, 0.1}, polar{0.9, -0.1}, 0.0, 1e-9);
        double worst = std::max(r1, r2);
        std::snprintf(buf, sizeof buf, "max residual %.3g at two point pairs", worst);
        item("reproducing identity", worst < 1e-6, buf);
    }

    // 7. termwise pair is exactly inverse (optionally sabotaged)
    {
        moment_sequence back = ms;
        if (inject_moment_error) {
            auto wrong = [](cplx lam) {
                return std::exp(std::lgamma(1.0 + lam.real()) + 0.01 * lam.real());
            };
            kernel bad = kernel::custom("sabotaged", [](polar t) { return std::exp(-t.value()); },
                                        1.0, moment_closed_form([wrong](cplx l) { return cplx(wrong(l)); }));
            back = moment_sequence(bad, 40, tol);
        }
        std::vector<cplx> c;
        for (int p = 0; p < 24; ++p)
            c.emplace_back(std::cos(1.7 * p) * std::pow(1.9, p % 7), std::sin(0.9 * p));
        formal_series s(c);
        formal_series round = formal_laplace(formal_borel(s, ms), back);
        bool exact = round.size() == s.size();
        for (std::size_t p = 0; exact && p < s.size(); ++p)
            exact = round.at(p) == s.at(p);
        item("termwise pair inverse", exact,
             inject_moment_error ? "with an injected moment error (must fail)"
                                 : "bitwise on 24 coefficients");
    }

    // 8. moment table vs its generating class
    {
        sequence_table gt(parse_family("gevrey(1)"), 60);
        equivalence_result eq = moment_equivalence(kernel::classical(1.0), gt, 60, tol);
        std::snprintf(buf, sizeof buf, "L = %.4g, H = %.4g", eq.low, eq.high);
        item("moment-class equivalence", eq.equivalent, buf);
    }

    // 9. two kernels, one sum
    {
        std::vector<cplx> euler;
        double f = 1.0;
        for (int n = 0; n < 24; ++n) {
            euler.emplace_back((n % 2 ? -f : f), 0.0);
            f *= double(n + 1);
        }
        independence_report ir = kernel_independence(
            formal_series(euler), kernel::classical(1.0), kernel::gamma_power(1.5), 0.0,
            sum_method::pade(), {cplx(0.05, 0.0), cplx(0.1, 0.0)}, summation_options{});
        std::snprintf(buf, sizeof buf, "max deviation %.3g%s", ir.max_deviation,
                      ir.comparable ? "" : " (not comparable)");
        item("kernel independence", ir.comparable && ir.max_deviation < 1e-6, buf);
    }

    // 10. regularity constant exists
    {
        sequence_table gt(parse_family("gevrey(1)"), 200);
        rho_witness w = rho_of_s(gt, 2.0);
        std::snprintf(buf, sizeof buf, "rho(2) = %.4g over %zu grid points", w.rho, w.grid_points);
        item("power-law regularity witness", w.found, buf);
    }

    std::printf("%s: %d failure(s)\n", failures ? "FAIL" : "ok", failures);
    return failures ? 2 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Summability toolkit: weight sequences, kernels, resummation, moment-PDEs"};
    app.require_subcommand(1);

    std::string spec, family, kexpr, table, series, method = "pade", points, norm = "monomial";
    std::string out = ".";
    std::size_t depth = 0, jmax = 0, workers = 0;
    double tol = 1e-8, direction = 0.0;
    bool inject = false;

    CLI::App* seq = app.add_subcommand("seq", "weight-sequence diagnostics");
    seq->add_option("--spec", spec, "sequence spec file");
    seq->add_option("--family", family, "family expression, e.g. gevrey(1)");
    seq->add_option("--depth", depth, "table depth");
    seq->add_option("--out", out, "output directory");

    CLI::App* ker = app.add_subcommand("kernel", "kernel moments and validation");
    ker->add_option("--spec", spec, "kernel spec file");
    ker->add_option("--kernel", kexpr, "kernel expression, e.g. gevrey(1)");
    ker->add_option("--table", table, "family expression to validate against");
    ker->add_option("--depth", depth, "moment depth");
    ker->add_option("--tol", tol, "quadrature tolerance");
    ker->add_option("--out", out, "output directory");

    CLI::App* sum = app.add_subcommand("sum", "resummation of a divergent series");
    sum->add_option("--series", series, "series CSV: p, re[, im]")->required();
    sum->add_option("--kernel", kexpr, "kernel expression")->required();
    sum->add_option("--direction", direction, "ray direction, radians");
    sum->add_option("--method", method, "pade[:L,M] or closed:NAME");
    sum->add_option("--points", points, "evaluation points 're,im;re,im;...'")->required();
    sum->add_option("--normalization", norm, "monomial | factorial");
    sum->add_option("--tol", tol, "target tolerance");
    sum->add_option("--depth", depth, "moment depth override");
    sum->add_option("--workers", workers, "per-point worker threads");
    sum->add_option("--out", out, "output directory");

    CLI::App* mp = app.add_subcommand("mpde", "moment-PDE classification");
    mp->add_option("--spec", spec, "problem spec file")->required();
    mp->add_option("--jmax", jmax, "time-coefficient depth override");
    mp->add_option("--out", out, "output directory");

    CLI::App* ver = app.add_subcommand("verify", "cross-module identity suite");
    ver->add_option("--kernel", kexpr, "kernel expression (default gevrey(1))");
    ver->add_option("--tol", tol, "quadrature tolerance");
    ver->add_flag("--inject-moment-error", inject,
                  "sabotage the termwise pair to prove the suite catches it");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (seq->parsed()) return run_seq(spec, family, depth, out);
        if (ker->parsed()) return run_kernel(spec, kexpr, table, depth, tol, out);
        if (sum->parsed())
            return run_sum(series, kexpr, direction, method, points, norm, tol, depth, out,
                           workers);
        if (mp->parsed()) return run_mpde(spec, jmax, out);
        if (ver->parsed()) return run_verify(kexpr.empty() ? "gevrey(1)" : kexpr, tol, inject);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
