#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "resum/errors.hpp"
#include "resum/mpde.hpp"

using namespace resum;
using rational = boost::multiprecision::cpp_rational;

namespace {

rational rat_factorial(std::size_t n) {
    rational f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= rational(long(i));
    return f;
}

// geometric data 1/(1-z) truncated at n coefficients
formal_series geometric(std::size_t n, double scale = 1.0) {
    return formal_series(std::vector<cplx>(n, cplx(scale, 0.0)));
}

const double pi_v = 3.14159265358979323846;

} // namespace

TEST_SUITE("mpde") {

TEST_CASE("rational bookkeeping for pole orders and symbols") {
    rational_q a = rational_q::reduced(4, 6);
    CHECK(a.num == 2);
    CHECK(a.den == 3);
    rational_q b = rational_q::reduced(-2, -4);
    CHECK(b.num == 1);
    CHECK(b.den == 2);
    rational_q c = rational_q::reduced(3, -6);
    CHECK(c.num == -1);
    CHECK(c.den == 2);

    symbol s = symbol::polynomial({cplx(1.0), cplx(2.0), cplx(0.0), cplx(0.0)});
    CHECK(s.degree() == 1);
    CHECK(s.q.num == 1);
    CHECK(s.q.den == 1);
    CHECK(s.leading() == cplx(2.0));

    symbol heat = symbol::polynomial({cplx(0.0), cplx(0.0), cplx(1.0)});
    CHECK(heat.degree() == 2);
    CHECK(heat.q.num == 2);

    symbol frac = symbol::polynomial({cplx(0.0), cplx(1.0)}, rational_q{3, 2});
    CHECK(frac.q.num == 3);
    CHECK(frac.q.den == 2);

    mpde_problem prob;
    prob.factors = {{symbol::polynomial({cplx(0.0), cplx(1.0)}), 2},
                    {symbol::polynomial({cplx(1.0), cplx(2.0)}), 1}};
    CHECK(prob.order() == 3);
    CHECK(prob.assumption_a()); // both factors have pole order one
    prob.factors[1] = {symbol::polynomial({cplx(0.0), cplx(0.0), cplx(1.0)}), 1};
    CHECK_FALSE(prob.assumption_a());
}

TEST_CASE("exact rational engine reproduces the diffusion coefficients") {
    // weighted basis: data 1/(1-z) has entries phi_p * p!
    const std::size_t j_max = 15, len = 40;
    weighted_series<rational> phi;
    for (std::size_t p = 0; p < len; ++p) phi.f.push_back(rat_factorial(p));
    std::vector<rational> sym = {rational(0), rational(0), rational(1)}; // second derivative

    weighted_solution<rational> u = weighted_formal_solution<rational>(1, sym, phi, j_max);
    REQUIRE(u.level.size() == j_max + 1);
    for (std::size_t j = 0; j <= j_max; ++j) {
        CAPTURE(j);
        REQUIRE_FALSE(u.level[j].f.empty());
        // t-coefficient of t^j at z = 0 is level_j(0)/j! = f[0]/j!
        rational at0 = u.level[j].f[0] / rat_factorial(j);
        rational want = rat_factorial(2 * j) / (rat_factorial(j) * rat_factorial(j));
        want *= rat_factorial(j); // (2j)!/j! = binom(2j,j) * j!
        CHECK(at0 == want);
        // and every stored entry is the exact shifted factorial
        for (std::size_t p = 0; p < u.level[j].f.size() && p < 6; ++p)
            CHECK(u.level[j].f[p] == rat_factorial(p + 2 * j));
    }

    // the operator applied back to the solution vanishes identically
    std::vector<weighted_series<rational>> res = weighted_residual(u, sym);
    REQUIRE_FALSE(res.empty());
    for (const auto& level : res)
        for (const rational& v : level.f) CHECK(v == 0);
}

TEST_CASE("repeated factors keep exact residuals and binomial fronts") {
    // (D_t - P)^2 with P = 1 + xi over integer data
    std::vector<rational> sym = {rational(1), rational(1)};
    weighted_series<rational> phi;
    for (std::size_t p = 0; p < 24; ++p) phi.f.push_back(rational(long(p * p + 1)));
    weighted_solution<rational> u = weighted_formal_solution<rational>(2, sym, phi, 10);

    CHECK(u.level[0].f.empty()); // data sits in position beta-1 = 1
    REQUIRE_FALSE(u.level[1].f.empty());
    CHECK(u.level[1].f[0] == phi.f[0] + phi.f[1]); // (1 + xi) phi at p = 0
    CHECK(u.level[3].f.size() == 24 - 3);          // truncation shrinks with the power

    std::vector<weighted_series<rational>> res = weighted_residual(u, sym);
    REQUIRE(res.size() >= 8);
    for (const auto& level : res)
        for (const rational& v : level.f) CHECK(v == 0);

    CHECK(binomial_t<rational>(10, 3) == rational(120));
    CHECK(binomial_t<rational>(3, 7) == rational(0));
}

TEST_CASE("truncation only shrinks, never zero-fills") {
    weighted_series<rational> s;
    for (long p = 0; p < 5; ++p) s.f.push_back(rational(p + 1));
    weighted_series<rational> shifted = weighted_shift(s, 2);
    REQUIRE(shifted.f.size() == 3);
    CHECK(shifted.f[0] == rational(3));

    std::vector<rational> quad = {rational(1), rational(0), rational(1)};
    weighted_series<rational> applied = weighted_apply(quad, s);
    REQUIRE(applied.f.size() == 3); // degree-two symbol eats two entries
    CHECK(applied.f[0] == rational(1 + 3));
    CHECK(applied.f[2] == rational(3 + 5));

    weighted_series<rational> gone = weighted_apply(quad, shifted);
    CHECK(gone.f.size() == 1);
    weighted_series<rational> empty = weighted_apply(quad, gone);
    CHECK(empty.f.empty());
}

TEST_CASE("factorial moment derivative is the ordinary derivative") {
    moment_sequence ms(kernel::gevrey(1.0), 20);
    std::vector<cplx> c = {cplx(2.0, 1.0),  cplx(-1.0, 0.5), cplx(0.25, 0.0),
                           cplx(3.0, -2.0), cplx(1.5, 1.5),  cplx(-0.5, 0.25)};
    formal_series s(c);
    formal_series d2 = moment_derivative(s, ms, 2);
    REQUIRE(d2.size() == 4);
    for (std::size_t p = 0; p < d2.size(); ++p) {
        cplx want = c[p + 2] * double((p + 1) * (p + 2));
        CHECK(d2.at(p).real() == want.real());
        CHECK(d2.at(p).imag() == want.imag());
    }
    formal_series d0 = moment_derivative(s, ms, 0);
    CHECK(d0.size() == s.size());
    CHECK_THROWS_AS((void)moment_derivative(formal_series({cplx(1.0), cplx(2.0)}), ms, 3),
                    depth_error);
}

TEST_CASE("polynomial symbols act with exact moment ratios") {
    moment_sequence ms(kernel::gevrey(1.0), 20);
    symbol lam = symbol::polynomial({cplx(1.0), cplx(1.0)});
    formal_series phi(std::vector<cplx>(5, cplx(1.0, 0.0)));
    formal_series out = apply_symbol_power(lam, 2, phi, ms);
    REQUIRE(out.size() == 3);
    // (1 + d/dz)^2 on the all-ones series: 1 + 2(p+1) + (p+1)(p+2)
    CHECK(out.at(0) == cplx(5.0, 0.0));
    CHECK(out.at(1) == cplx(11.0, 0.0));
    CHECK(out.at(2) == cplx(19.0, 0.0));
    CHECK_THROWS_AS((void)apply_symbol_power(lam, 7, phi, ms), depth_error);
}

TEST_CASE("double-precision diffusion solution tracks the exact one") {
    const std::size_t j_max = 20, n_z = 10;
    moment_sequence ms(kernel::gevrey(1.0), 60);
    symbol lam = symbol::polynomial({cplx(0.0), cplx(0.0), cplx(1.0)});
    formal_series phi = geometric(n_z + 1 + 2 * j_max);
    formal_solution_2d sol = formal_solution_single(1, lam, phi, ms, ms, j_max, n_z);
    REQUIRE(sol.u.size() == j_max + 1);
    for (std::size_t j = 0; j <= j_max; ++j) {
        CAPTURE(j);
        for (std::size_t p = 0; p <= n_z; p += 3) {
            rational want = rat_factorial(p + 2 * j) / (rat_factorial(p) * rat_factorial(j));
            double w = double(want);
            CHECK(sol.u[j].at(p).real() == doctest::Approx(w).epsilon(1e-12));
            CHECK(sol.u[j].at(p).imag() == 0.0);
        }
    }
    // data truncated too short for the requested window
    CHECK_THROWS_AS(
        (void)formal_solution_single(1, lam, geometric(20), ms, ms, j_max, n_z), depth_error);
}

TEST_CASE("repeated-factor solutions place the data at the top slot") {
    const std::size_t beta = 3, j_max = 10, n_z = 12;
    moment_sequence ms(kernel::gevrey(1.0), 40);
    symbol lam = symbol::polynomial({cplx(1.0), cplx(1.0)});
    formal_series phi = geometric(n_z + 1 + j_max, 1.0);
    formal_solution_2d sol = formal_solution_single(beta, lam, phi, ms, ms, j_max, n_z);
    // levels below beta-1 vanish
    for (std::size_t j = 0; j + 1 < beta; ++j)
        for (std::size_t p = 0; p <= n_z; ++p) CHECK(sol.u[j].at(p) == cplx(0.0));
    // level beta-1 carries lambda^{beta-1} applied to the data, divided by m1(beta-1)
    formal_series expect = apply_symbol_power(lam, beta - 1, phi, ms);
    double m1b = 2.0; // 2! for factorial moments
    for (std::size_t p = 0; p + beta - 1 <= n_z && p < expect.size(); ++p) {
        CHECK(sol.u[beta - 1].at(p).real() == expect.at(p).real() / m1b);
        CHECK(sol.u[beta - 1].at(p).imag() == expect.at(p).imag() / m1b);
    }
}

TEST_CASE("two transport factors superpose to the wave solution") {
    const std::size_t j_max = 12, n_z = 24;
    moment_sequence ms(kernel::gevrey(1.0), 60);
    symbol right = symbol::polynomial({cplx(0.0), cplx(1.0)});
    symbol left = symbol::polynomial({cplx(0.0), cplx(-1.0)});
    std::size_t len = n_z + 1 + j_max;
    formal_series half_data = geometric(len, 0.5);
    formal_solution_2d a = formal_solution_single(1, right, half_data, ms, ms, j_max, n_z);
    formal_solution_2d b = formal_solution_single(1, left, half_data, ms, ms, j_max, n_z);
    formal_solution_2d sol = superpose({a, b});

    // brute Taylor recursion for u_tt = u_zz, u(0,z) = 1/(1-z), u_t(0,z) = 0
    std::vector<std::vector<double>> c(j_max + 1, std::vector<double>(len, 0.0));
    for (std::size_t p = 0; p < len; ++p) c[0][p] = 1.0;
    for (std::size_t j = 0; j + 2 <= j_max; ++j)
        for (std::size_t p = 0; p + 2 < len; ++p)
            c[j + 2][p] =
                c[j][p + 2] * double((p + 1) * (p + 2)) / double((j + 1) * (j + 2));

    for (std::size_t j = 0; j <= j_max; ++j) {
        CAPTURE(j);
        for (std::size_t p = 0; p <= n_z; ++p) {
            CAPTURE(p);
            CHECK(sol.u[j].at(p).real() == doctest::Approx(c[j][p]).epsilon(1e-12));
        }
    }

    // mismatched truncations refuse to combine
    formal_solution_2d other = formal_solution_single(1, right, half_data, ms, ms, j_max, 20);
    CHECK_THROWS_AS((void)superpose({a, other}), std::invalid_argument);
}

TEST_CASE("growth classification separates convergent, candidate, and short input") {
    moment_sequence m1(kernel::gevrey(1.0), 40);
    moment_sequence candidate(kernel::gevrey(1.0), 40);

    // transport problem q = 1: moments cancel, coefficients stay geometric
    symbol lam1 = symbol::polynomial({cplx(0.0), cplx(1.0)});
    formal_series phi1 = geometric(61 + 24);
    formal_solution_2d conv = formal_solution_single(1, lam1, phi1, m1, m1, 24, 60);
    classification_report rc =
        growth_classify(conv, m1, m1, rational_q{1, 1}, std::nullopt);
    CHECK(rc.verdict == solution_class::convergent);
    CHECK(rc.ratio_bounded);

    // diffusion q = 2: divergent, but the factorial candidate stabilizes it
    symbol lam2 = symbol::polynomial({cplx(0.0), cplx(0.0), cplx(1.0)});
    formal_series phi2 = geometric(61 + 48);
    formal_solution_2d heat = formal_solution_single(1, lam2, phi2, m1, m1, 24, 60);
    classification_report rh =
        growth_classify(heat, m1, m1, rational_q{2, 1}, candidate);
    CHECK(rh.verdict == solution_class::summability_candidate);
    CHECK_FALSE(rh.ratio_bounded);
    CHECK_FALSE(rh.entire_ok);
    CHECK(rh.candidate_ok);
    CHECK(rh.evidence.a0 <= 4.05); // the exact growth ratio is 4
    CHECK(rh.evidence.a0 >= 3.0);
    for (double s : rh.evidence.ineq27_slack) CHECK(s >= -1e-9);
    for (double s : rh.evidence.ineq28_slack) CHECK(s >= -1e-9);

    // without a candidate the divergent case stays unclassified
    classification_report rn =
        growth_classify(heat, m1, m1, rational_q{2, 1}, std::nullopt);
    CHECK(rn.verdict == solution_class::unclassified);

    // too short to say anything
    formal_solution_2d stub = formal_solution_single(1, lam2, phi2, m1, m1, 5, 10);
    classification_report rs = growth_classify(stub, m1, m1, rational_q{2, 1}, candidate);
    CHECK(rs.verdict == solution_class::unclassified);
    CHECK(rs.note == "solution truncation too short to classify");
}

TEST_CASE("level proxies match the closed central-binomial values") {
    moment_sequence m1(kernel::gevrey(1.0), 40);
    symbol lam = symbol::polynomial({cplx(0.0), cplx(0.0), cplx(1.0)});
    formal_series phi = geometric(61 + 48);
    formal_solution_2d sol = formal_solution_single(1, lam, phi, m1, m1, 24, 60, 0.1);

    direction_verdict up = summability_2var_check(sol, m1, pi_v / 2.0, 0.1);
    REQUIRE(up.proxy.size() == 25);
    for (std::size_t j = 0; j <= 12; ++j) {
        CAPTURE(j);
        rational binom = rat_factorial(2 * j) / (rat_factorial(j) * rat_factorial(j));
        double want = double(binom) * std::pow(10.0 / 9.0, double(2 * j + 1));
        CHECK(up.proxy[j] == doctest::Approx(want).epsilon(1e-9));
    }
    CHECK(up.certified);
    CHECK_FALSE(up.clearance.blocked);
    CHECK(up.growth.member);

    // the generating function has its singularity on the positive axis
    direction_verdict flat = summability_2var_check(sol, m1, 0.0, 0.1);
    CHECK_FALSE(flat.certified);
    CHECK(flat.reason == "pole-on-ray");
    CHECK(flat.radius_estimate >= 0.15);
    CHECK(flat.radius_estimate <= 0.27);
}

TEST_CASE("direction bookkeeping under a common pole order") {
    mpde_problem prob;
    prob.factors = {{symbol::polynomial({cplx(0.0), cplx(0.0), cplx(1.0)}), 1}};
    prob.m1 = kernel::gevrey(1.0);
    prob.m2 = kernel::gevrey(1.0);
    prob.data = {geometric(41 + 32)};
    prob.r0 = 0.1;
    moment_sequence candidate(kernel::gevrey(1.0), 40);

    assumption_a_report rep = assumption_a_classify(prob, candidate, 0.0, 16, 40);
    CHECK(rep.assumption_holds);
    CHECK(rep.q.num == 2);
    CHECK(rep.q.den == 1);
    CHECK(rep.classification.verdict == solution_class::summability_candidate);

    std::size_t solution_rays = 0, data_rays = 0;
    for (const direction_entry& e : rep.directions) {
        if (e.type == direction_entry::kind::solution_ray) {
            ++solution_rays;
            REQUIRE(e.verdict.has_value());
            CHECK_FALSE(e.verdict->certified); // d = 0 looks straight at the pole
        } else {
            ++data_rays;
            CHECK(e.note.find("theorem hypothesis") != std::string::npos);
        }
    }
    CHECK(solution_rays == 1); // nu = 1
    CHECK(data_rays == 2);     // mu = 2 data directions: d/2 and d/2 + pi
    CHECK(rep.directions[1].angle == doctest::Approx(0.0));
    CHECK(rep.directions[2].angle == doctest::Approx(pi_v));

    // fractional pole order spreads the solution rays instead
    mpde_problem frac;
    frac.factors = {{symbol::polynomial({cplx(0.0), cplx(1.0)}, rational_q{3, 2}), 1}};
    frac.m1 = kernel::gevrey(1.0);
    frac.m2 = kernel::gevrey(1.0);
    frac.data = {geometric(41 + 16)};
    assumption_a_report rf = assumption_a_classify(frac, std::nullopt, 0.3, 16, 40);
    std::size_t sol_rays = 0, dat_rays = 0;
    for (const direction_entry& e : rf.directions) {
        if (e.type == direction_entry::kind::solution_ray) {
            CHECK_FALSE(e.verdict.has_value());
            ++sol_rays;
        } else {
            ++dat_rays;
        }
    }
    CHECK(sol_rays == 2); // nu = 2
    CHECK(dat_rays == 3); // mu = 3
    CHECK(rf.directions[0].angle == doctest::Approx(0.3));
    CHECK(rf.directions[1].angle == doctest::Approx(0.3 + pi_v));
    CHECK(rf.directions[2].angle == doctest::Approx(0.2)); // (d + 0)/q

    // disagreeing pole orders are refused up front
    mpde_problem mixed;
    mixed.factors = {{symbol::polynomial({cplx(0.0), cplx(1.0)}), 1},
                     {symbol::polynomial({cplx(0.0), cplx(0.0), cplx(1.0)}), 1}};
    mixed.m1 = kernel::gevrey(1.0);
    mixed.m2 = kernel::gevrey(1.0);
    mixed.data = {geometric(60)};
    CHECK_THROWS_AS((void)assumption_a_classify(mixed, std::nullopt, 0.0, 8, 20),
                    std::invalid_argument);

    // multi-factor problems must come with caller-decomposed data
    mpde_problem multi;
    multi.factors = {{symbol::polynomial({cplx(0.0), cplx(1.0)}), 1},
                     {symbol::polynomial({cplx(0.0), cplx(-1.0)}), 1}};
    multi.m1 = kernel::gevrey(1.0);
    multi.m2 = kernel::gevrey(1.0);
    multi.data = {geometric(60)};
    CHECK_THROWS_AS((void)assumption_a_classify(multi, std::nullopt, 0.0, 8, 20),
                    std::invalid_argument);
}

} // TEST_SUITE
