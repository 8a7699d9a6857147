#include <cmath>
#include <vector>

#include "doctest.h"
#include "resum/errors.hpp"
#include "resum/sequences.hpp"

using namespace resum;

namespace {

// closed-form log M_p recomputed without the library, for oracle comparisons
double log_gevrey(double alpha, std::size_t p) { return alpha * std::lgamma(double(p) + 1.0); }

double log_gevrey_log(double alpha, double beta, std::size_t p) {
    double s = 0.0;
    for (std::size_t m = 0; m <= p; ++m) s += std::log(std::log(std::exp(1.0) + double(m)));
    return alpha * std::lgamma(double(p) + 1.0) + beta * s;
}

// brute-force inf_p M_p t^p from a raw log table (in log space to dodge overflow)
double brute_log_h(const std::vector<double>& logM, double t) {
    double lt = std::log(t);
    double best = logM[0];
    for (std::size_t p = 0; p < logM.size(); ++p) best = std::min(best, logM[p] + double(p) * lt);
    return best;
}

} // namespace

TEST_SUITE("sequences") {

TEST_CASE("flatness gauge matches the brute-force minimum on four families") {
    struct family_case {
        sequence_family fam;
        std::vector<double> logs;
    };
    const std::size_t N = 60;
    std::vector<family_case> cases;
    {
        std::vector<double> l1(N + 1), l2(N + 1), l3(N + 1), l4(N + 1);
        for (std::size_t p = 0; p <= N; ++p) {
            l1[p] = log_gevrey(1.0, p);
            l2[p] = log_gevrey(0.5, p);
            l3[p] = log_gevrey(1.0, p) + log_gevrey(0.5, p);
            l4[p] = log_gevrey_log(1.0, 1.0, p);
        }
        cases.push_back({sequence_family::gevrey(1.0), l1});
        cases.push_back({sequence_family::gevrey(0.5), l2});
        cases.push_back(
            {sequence_family::product(sequence_family::gevrey(1.0), sequence_family::gevrey(0.5)),
             l3});
        cases.push_back({sequence_family::gevrey_log(1.0, 1.0), l4});
    }

    for (auto& c : cases) {
        CAPTURE(c.fam.name());
        sequence_table tbl(c.fam, N);
        // valid h range: [1/m_{N-1}, infinity); sample 100 points across it and
        // a little beyond the flat region h = 1
        double lt_lo = -(c.logs[N] - c.logs[N - 1]) + 1e-6;
        double lt_hi = std::log(2.0);
        for (int i = 0; i < 100; ++i) {
            double lt = lt_lo + (lt_hi - lt_lo) * double(i) / 99.0;
            double t = std::exp(lt);
            double got = tbl.h(t);
            double want = std::exp(brute_log_h(c.logs, t));
            CHECK(got == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("gauge spot values are exact for the factorial family") {
    sequence_table t(sequence_family::gevrey(1.0), 40);
    // quotients are m_p = p+1; at t = 1/2 the minimizing index is p = 1
    CHECK(t.h(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    // at t = 1/6 the minimizing index is p = 5: 5! / 6^5
    CHECK(t.h(1.0 / 6.0) == doctest::Approx(120.0 / 7776.0).epsilon(1e-13));
    CHECK(t.h(1.5) == 1.0);
    CHECK(t.h(0.0) == 0.0);
    CHECK(t.big_m(6.0) == doctest::Approx(5.0 * std::log(6.0) - std::log(120.0)).epsilon(1e-13));
    CHECK(t.log_h(0.0) == -INFINITY);
    CHECK_THROWS_AS((void)t.h(-0.25), std::invalid_argument);
}

TEST_CASE("gauge evaluation past the stored range reports a depth error") {
    sequence_table t(sequence_family::gevrey(1.0), 10); // m_9 = 10
    CHECK_THROWS_AS((void)t.h(0.05), depth_error);
    CHECK_THROWS_AS((void)t.big_m(25.0), depth_error);
    CHECK_NOTHROW((void)t.h(0.11));
}

TEST_CASE("tables reject decreasing quotients") {
    CHECK_THROWS_AS(sequence_table::from_logs("bad", {0.0, 1.0, 1.5}), std::invalid_argument);
    CHECK_THROWS_AS((void)sequence_family::gevrey(0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)sequence_family::qpower(1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)sequence_family::explicit_values({2.0, 4.0}), std::invalid_argument);
}

TEST_CASE("factorial family passes every axiom with the expected witnesses") {
    sequence_table t(sequence_family::gevrey(1.0), 400);
    axiom_report rep = check_axioms(t);
    CHECK(rep.log_convex.holds);
    CHECK(rep.moderate_growth.holds);
    CHECK(rep.tail_bound.holds);
    CHECK(rep.strongly_regular());
    // growth constant approaches 2 (central binomial); grid rounding stays below 2.1
    CHECK(rep.moderate_growth.witness >= 1.9);
    CHECK(rep.moderate_growth.witness <= 2.1);
    // tail constant approaches pi^2/6 = 1.6449... from below at finite depth
    CHECK(rep.tail_bound.witness >= 1.60);
    CHECK(rep.tail_bound.witness <= 1.65);
}

TEST_CASE("super-factorial growth breaks the moderate-growth axiom") {
    sequence_table t(sequence_family::qpower(2.0), 60);
    axiom_report rep = check_axioms(t);
    CHECK(rep.log_convex.holds);
    CHECK_FALSE(rep.moderate_growth.holds);
    CHECK_FALSE(rep.strongly_regular());
}

TEST_CASE("quotients sit between the root and the growth-constant envelope") {
    // m_p in [M_p^{1/p}, A^2 M_p^{1/p}] with A the moderate-growth witness
    std::vector<sequence_family> fams = {
        sequence_family::gevrey(0.5), sequence_family::gevrey(1.0), sequence_family::gevrey(2.0),
        sequence_family::product(sequence_family::gevrey(1.0), sequence_family::gevrey(1.0)),
        sequence_family::gevrey_log(1.0, 1.0)};
    for (auto& f : fams) {
        CAPTURE(f.name());
        sequence_table t(f, 120);
        axiom_report rep = check_axioms(t);
        REQUIRE(rep.strongly_regular());
        double two_log_a = 2.0 * std::log(rep.moderate_growth.witness);
        for (std::size_t p = 1; p < t.depth(); ++p) {
            double root = t.log_M(p) / double(p);
            CHECK(t.log_m(p) >= root - 1e-11);
            CHECK(t.log_m(p) <= root + two_log_a + 1e-11);
        }
    }
}

TEST_CASE("growth index recovery across the power scale") {
    for (double alpha : {0.5, 1.0, 2.0}) {
        CAPTURE(alpha);
        sequence_table t(sequence_family::gevrey(alpha), 400);
        order_estimate est = order_and_omega(t);
        CHECK(est.finite);
        CHECK(std::abs(est.omega - alpha) <= 0.05);
    }
    sequence_table prod(
        sequence_family::product(sequence_family::gevrey(1.0), sequence_family::gevrey(1.0)), 400);
    order_estimate est = order_and_omega(prod);
    CHECK(est.finite);
    CHECK(std::abs(est.omega - 2.0) <= 0.1);
}

TEST_CASE("equivalence accepts geometric rescaling and rejects different growth") {
    const std::size_t N = 120;
    std::vector<double> scaled(N + 1);
    for (std::size_t p = 0; p <= N; ++p) scaled[p] = log_gevrey(1.0, p) + double(p) * std::log(3.0);
    sequence_table a(sequence_family::gevrey(1.0), N);
    sequence_table b = sequence_table::from_logs("scaled", scaled);
    equivalence_result eq = equivalence_check(a, b);
    CHECK(eq.equivalent);
    CHECK(eq.high == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(eq.low <= 3.0 + 1e-9);

    sequence_table c(sequence_family::gevrey(1.3), N);
    equivalence_result ne = equivalence_check(a, c);
    CHECK_FALSE(ne.equivalent);
    CHECK(ne.tail_drift > 0.1);
}

TEST_CASE("gauge rescaling witnesses exist and grow with the exponent") {
    sequence_table t(sequence_family::gevrey(1.0), 200);
    rho_witness w2 = rho_of_s(t, 2.0);
    rho_witness w3 = rho_of_s(t, 3.0);
    REQUIRE(w2.found);
    REQUIRE(w3.found);
    // for factorial growth h(t) ~ exp(-1/t) near 0, so the witness tracks s;
    // a finite grid admits values slightly under the asymptotic exponent
    CHECK(w2.rho >= 1.9);
    CHECK(w2.rho <= 8.0);
    CHECK(w3.rho >= w2.rho);
    CHECK_THROWS_AS((void)rho_of_s(t, 1.0), std::invalid_argument);
}

TEST_CASE("proximate-order diagnostics settle at the growth index") {
    sequence_table t(sequence_family::gevrey(1.0), 400);
    proximate_order_report rep = proximate_order_diagnostic(t);
    REQUIRE_FALSE(rep.ratio_criterion.empty());
    CHECK(std::abs(rep.ratio_tail_mean - 1.0) <= 0.05);
    CHECK(std::abs(rep.gap_tail_mean - 1.0) <= 0.05);
    CHECK(rep.consistent);
}

} // TEST_SUITE
