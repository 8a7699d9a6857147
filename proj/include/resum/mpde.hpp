#pragma once
#include <optional>
#include <string>
#include <vector>

#include "resum/envelope.hpp"
#include "resum/errors.hpp"
#include "resum/kernels.hpp"
#include "resum/pade.hpp"
#include "resum/series.hpp"
#include "resum/summation.hpp"

namespace resum {

// ---------------------------------------------------------------------------
// Scalar-generic formal engine.
//
// A z-series is kept in the weighted basis S(z) = sum_p f[p] z^p / m(p), where
// m is the working moment sequence.  In that basis the moment derivative is a
// pure index shift, so every solution manipulation below is division-free in
// the series scalar T and can run over exact rationals as well as complex
// doubles.  Entries whose value would depend on coefficients beyond the
// truncation are dropped rather than zero-filled: lengths shrink, they never
// lie.
// ---------------------------------------------------------------------------

template <class T>
struct weighted_series {
    std::vector<T> f;
};

template <class T>
weighted_series<T> weighted_shift(const weighted_series<T>& s, std::size_t n) {
    weighted_series<T> out;
    if (s.f.size() > n) out.f.assign(s.f.begin() + static_cast<long>(n), s.f.end());
    return out;
}

// polynomial multiplication, ascending coefficients
template <class T>
std::vector<T> poly_mul(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<T> out(a.size() + b.size() - 1, T(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

template <class T>
std::vector<T> poly_power(std::vector<T> base, unsigned j) {
    std::vector<T> acc{T(1)};
    while (j > 0) {
        if (j & 1u) acc = poly_mul(acc, base);
        j >>= 1u;
        if (j > 0) base = poly_mul(base, base);
    }
    return acc;
}

// P(d) S for P(xi) = sum_k poly[k] xi^k; keeps only fully-determined entries
template <class T>
weighted_series<T> weighted_apply(const std::vector<T>& poly, const weighted_series<T>& s) {
    weighted_series<T> out;
    if (poly.empty()) return out;
    std::size_t deg = poly.size() - 1;
    if (s.f.size() <= deg) return out;
    out.f.assign(s.f.size() - deg, T(0));
    for (std::size_t p = 0; p < out.f.size(); ++p)
        for (std::size_t k = 0; k < poly.size(); ++k) out.f[p] += poly[k] * s.f[p + k];
    return out;
}

// binomial coefficient built by the multiplicative formula; exact whenever T
// divides exactly (rationals) and correct to rounding for floating T
template <class T>
T binomial_t(std::size_t j, std::size_t k) {
    if (k > j) return T(0);
    T acc(1);
    for (std::size_t i = 1; i <= k; ++i) {
        acc *= T(static_cast<long>(j - k + i));
        acc /= T(static_cast<long>(i));
    }
    return acc;
}

// Formal solution of (d_{m1,t} - P(d_{m2,z}))^beta u = 0 with the data
// concentrated in position beta-1.  Levels are kept in the t-weighted basis
// u(t,z) = sum_j t^j/m1(j) * level[j](z): level_j = C(j,beta-1) P^j(d) phi, so
// neither moment sequence's values enter the level arithmetic at all.
template <class T>
struct weighted_solution {
    std::size_t beta = 1;
    std::vector<weighted_series<T>> level; // index j = 0..J
};

template <class T>
weighted_solution<T> weighted_formal_solution(std::size_t beta, const std::vector<T>& symbol,
                                              const weighted_series<T>& phi, std::size_t j_max) {
    if (beta == 0) throw std::invalid_argument("weighted_formal_solution: beta >= 1");
    weighted_solution<T> out;
    out.beta = beta;
    out.level.resize(j_max + 1);
    std::vector<T> power{T(1)};
    for (std::size_t j = 0; j <= j_max; ++j) {
        if (j >= beta - 1) {
            weighted_series<T> lj = weighted_apply(power, phi);
            T b = binomial_t<T>(j, beta - 1);
            for (T& v : lj.f) v *= b;
            out.level[j] = std::move(lj);
        }
        if (j < j_max) power = poly_mul(power, symbol);
    }
    return out;
}

// residual of (d_{m1,t} - P(d_{m2,z}))^beta applied to the solution; all
// fully-determined entries of a true solution are exactly zero
template <class T>
std::vector<weighted_series<T>> weighted_residual(const weighted_solution<T>& u,
                                                  const std::vector<T>& symbol) {
    std::size_t beta = u.beta;
    std::size_t jmax = u.level.size();
    std::vector<weighted_series<T>> out;
    if (jmax < beta) return out;
    // expand (D_t - P)^beta = sum_i C(beta,i) (-1)^(beta-i) D_t^i P^(beta-i)
    std::vector<std::vector<T>> ppow(beta + 1);
    for (std::size_t i = 0; i <= beta; ++i) ppow[i] = poly_power(symbol, unsigned(i));
    for (std::size_t j = 0; j + beta < jmax; ++j) {
        weighted_series<T> acc;
        bool first = true;
        for (std::size_t i = 0; i <= beta; ++i) {
            weighted_series<T> term = weighted_apply(ppow[beta - i], u.level[j + i]);
            T c = binomial_t<T>(beta, i);
            if ((beta - i) % 2 == 1) c = -c;
            for (T& v : term.f) v *= c;
            if (first) {
                acc = std::move(term);
                first = false;
            } else {
                if (term.f.size() < acc.f.size()) acc.f.resize(term.f.size());
                for (std::size_t p = 0; p < acc.f.size(); ++p) acc.f[p] += term.f[p];
            }
        }
        out.push_back(std::move(acc));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Double-precision pipeline types
// ---------------------------------------------------------------------------

struct rational_q {
    long num = 1;
    long den = 1;
    double value() const { return double(num) / double(den); }
    static rational_q reduced(long n, long d);
};

struct symbol {
    std::vector<cplx> coeff; // ascending powers of xi, top coefficient nonzero
    rational_q q;            // pole order; degree for polynomials unless overridden
    cplx leading() const { return coeff.empty() ? cplx(0.0) : coeff.back(); }
    std::size_t degree() const { return coeff.empty() ? 0 : coeff.size() - 1; }

    static symbol polynomial(std::vector<cplx> coeff,
                             std::optional<rational_q> q_override = std::nullopt);
};

struct mpde_factor {
    symbol lambda;
    std::size_t multiplicity = 1;
};

struct mpde_problem {
    std::vector<mpde_factor> factors;
    kernel m1 = kernel::gevrey(1.0); // placeholder defaults; specs overwrite
    kernel m2 = kernel::gevrey(1.0);
    std::vector<formal_series> data;                    // phi_j, j = 0..n-1
    std::vector<std::vector<formal_series>> decomposed; // [alpha][beta-1], optional
    double r0 = 0.1;
    std::optional<rational_q> q_override;

    std::size_t order() const; // n = sum of multiplicities
    bool assumption_a() const; // all factor pole orders equal
    rational_q common_q() const;
};

struct formal_solution_2d {
    std::vector<formal_series> u;  // u[j](z), plain monomial coefficients
    std::vector<double> sup_proxy; // sum_p |coeff| r0^p per level
    double r0 = 0.1;
    std::size_t depth_z = 0;
};

// a'_p = a_{p+n} m(p+n)/m(p); closed moment ratios are used where finite so
// factorial moments reproduce the ordinary derivative to the last bit
formal_series moment_derivative(const formal_series& s, const moment_sequence& m, std::size_t n);

// lambda^j(d) phi with polynomial symbol; output keeps fully-determined
// coefficients only and reports the depth it would need otherwise
formal_series apply_symbol_power(const symbol& lambda, std::size_t j, const formal_series& phi,
                                 const moment_sequence& m2);

formal_solution_2d formal_solution_single(std::size_t beta, const symbol& lambda,
                                          const formal_series& phi, const moment_sequence& m1,
                                          const moment_sequence& m2, std::size_t j_max,
                                          std::size_t n_z, double r0 = 0.1);

formal_solution_2d superpose(const std::vector<formal_solution_2d>& parts);

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

enum class solution_class { convergent, entire_with_growth, summability_candidate, unclassified };

struct classification_evidence {
    std::vector<double> ratio_root;   // (m2(qj)/m1(j))^(1/j), j = 1..J
    std::vector<double> ineq27_slack; // fitted bound minus lhs, logs, >= 0 when held
    std::vector<double> ineq28_slack;
    double a0 = 0.0, log_c0 = 0.0; // m2(qj) <= C0 A0^j m(j) m1(j)
    double a1 = 0.0, log_c1 = 0.0; // m(j/q) m1(j/q) <= C1 A1^j m2(j)
    double entire_d = 0.0, entire_log_c = 0.0;
    envelope_fit proxy_growth; // sup-proxy_j <= c D^j m(j)
};

struct classification_report {
    solution_class verdict = solution_class::unclassified;
    bool ratio_bounded = false;
    bool entire_ok = false;
    bool candidate_ok = false;
    classification_evidence evidence;
    std::string note;
};

classification_report growth_classify(const formal_solution_2d& sol, const moment_sequence& m1,
                                      const moment_sequence& m2, rational_q q,
                                      const std::optional<moment_sequence>& candidate);

// ray verdict for the v-series continuation, mirroring the summation policy
struct direction_verdict {
    bool certified = false;
    std::string reason;
    ray_clearance clearance;
    envelope_fit growth;
    double radius_estimate = INFINITY;
    std::vector<double> proxy; // v-level proxies actually used
};

direction_verdict summability_2var_check(const formal_solution_2d& sol, const moment_sequence& m,
                                         double d, double r0);

struct direction_entry {
    enum class kind { solution_ray, data_ray };
    kind type = kind::solution_ray;
    double angle = 0.0;
    std::size_t factor_index = 0; // data rays only
    std::string note;
    std::optional<direction_verdict> verdict; // solution rays with a candidate
};

struct assumption_a_report {
    bool assumption_holds = false;
    rational_q q;
    classification_report classification;
    std::vector<direction_entry> directions;
};

assumption_a_report assumption_a_classify(const mpde_problem& problem,
                                          const std::optional<moment_sequence>& candidate, double d,
                                          std::size_t j_max, std::size_t n_z);

} // namespace resum
