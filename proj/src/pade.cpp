#include "resum/pade.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace resum {

namespace {

cplx horner(const std::vector<cplx>& c, cplx x) {
    cplx acc(0.0, 0.0);
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * M_PI);
    if (a > M_PI) a -= 2.0 * M_PI;
    if (a <= -M_PI) a += 2.0 * M_PI;
    return a;
}

} // namespace

cplx pade_approximant::eval(cplx t) const { return horner(num, t) / horner(den, t); }

std::vector<cplx> pade_approximant::poles() const {
    int m = int(den.size()) - 1;
    while (m > 0 && std::abs(den[std::size_t(m)]) == 0.0) --m;
    if (m <= 0) return {};
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(m, m);
    for (int i = 1; i < m; ++i) c(i, i - 1) = 1.0;
    for (int i = 0; i < m; ++i) c(i, m - 1) -= den[std::size_t(i)] / den[std::size_t(m)];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(c, false);
    std::vector<cplx> out;
    for (int i = 0; i < m; ++i) {
        cplx r = es.eigenvalues()(i);
        if (std::isfinite(r.real()) && std::isfinite(r.imag())) out.push_back(r);
    }
    return out;
}

pade_approximant robust_pade(const std::vector<cplx>& coeff, int l, int m, double tol) {
    if (l < 0 || m < 0) throw std::invalid_argument("robust_pade: degrees must be nonnegative");
    if (coeff.size() < std::size_t(l + m + 1))
        throw std::invalid_argument("robust_pade: need l+m+1 coefficients");

    pade_approximant out;
    out.requested_l = l;
    out.requested_m = m;

    // argument rescaling t -> t/s so the working coefficients are O(1)
    double s = 0.0;
    for (int k = 1; k <= l + m; ++k) {
        double a = std::abs(coeff[std::size_t(k)]);
        if (a > 0.0) s = std::max(s, std::pow(a, 1.0 / double(k)));
    }
    if (s == 0.0) { // polynomial data: constant numerator
        out.num = {coeff.empty() ? cplx(0.0) : coeff[0]};
        out.den = {cplx(1.0)};
        out.effective_l = 0;
        out.effective_m = 0;
        return out;
    }
    std::vector<cplx> ch(std::size_t(l + m + 1));
    {
        double f = 1.0;
        for (int k = 0; k <= l + m; ++k, f /= s) ch[std::size_t(k)] = coeff[std::size_t(k)] * f;
    }

    std::vector<cplx> q; // scaled denominator
    for (int guard = 0; guard <= out.requested_l + out.requested_m + 2; ++guard) {
        if (m == 0) {
            q = {cplx(1.0)};
            break;
        }
        Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(m, m + 1);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j <= m; ++j) {
                int idx = l + 1 + i - j;
                if (idx >= 0 && idx <= out.requested_l + out.requested_m)
                    b(i, j) = ch[std::size_t(idx)];
            }
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        double top = sv.size() > 0 ? sv(0) : 0.0;
        int rank = 0;
        for (int i = 0; i < sv.size(); ++i)
            if (sv(i) > tol * std::max(top, 1e-300)) ++rank;
        int defect = m - rank;
        if (top == 0.0) { // tail of the window vanished: pure polynomial
            m = 0;
            continue;
        }
        if (defect > 0) {
            l = std::max(l - defect, 0);
            m = std::max(m - defect, 0);
            continue;
        }
        Eigen::VectorXcd qv = svd.matrixV().col(m);
        double qmax = 0.0;
        for (int i = 0; i <= m; ++i) qmax = std::max(qmax, std::abs(qv(i)));
        if (std::abs(qv(0)) <= 1e-10 * qmax) { // denominator vanishing at 0: reducible
            l = std::max(l - 1, 0);
            m = std::max(m - 1, 0);
            continue;
        }
        q.assign(std::size_t(m + 1), cplx(0.0));
        for (int i = 0; i <= m; ++i) q[std::size_t(i)] = qv(i);
        break;
    }
    if (q.empty()) q = {cplx(1.0)};

    int mq = int(q.size()) - 1;
    std::vector<cplx> p(std::size_t(l + 1), cplx(0.0));
    for (int k = 0; k <= l; ++k)
        for (int j = 0; j <= std::min(k, mq); ++j) p[std::size_t(k)] += q[std::size_t(j)] * ch[std::size_t(k - j)];

    // strip trailing coefficients that are dead while still in the scaled
    // frame, where everything is O(1) and a relative threshold is meaningful
    auto strip_scaled = [&](std::vector<cplx>& v) {
        while (v.size() > 1) {
            double ref = 0.0;
            for (const cplx& c : v) ref = std::max(ref, std::abs(c));
            if (std::abs(v.back()) <= tol * std::max(ref, 1e-300))
                v.pop_back();
            else
                break;
        }
    };
    strip_scaled(p);
    strip_scaled(q);

    // normalize q(0) = 1 and map the argument back: the scaled variable is
    // s*t, so degree-k coefficients pick up s^k
    cplx q0 = q[0];
    double f = 1.0;
    for (std::size_t k = 0; k < p.size(); ++k, f *= s) p[k] *= f / q0;
    f = 1.0;
    for (std::size_t k = 0; k < q.size(); ++k, f *= s) q[k] *= f / q0;

    out.num = std::move(p);
    out.den = std::move(q);
    out.effective_l = int(out.num.size()) - 1;
    out.effective_m = int(out.den.size()) - 1;
    return out;
}

ray_clearance poles_near_ray(const std::vector<cplx>& poles, double d, double angular_tol,
                             double radius_cap) {
    ray_clearance rc;
    rc.nearest = INFINITY;
    for (const cplx& p : poles) {
        double r = std::abs(p);
        if (r == 0.0) {
            rc.blocked = true;
            rc.nearest = 0.0;
            rc.blocking_pole = p;
            return rc;
        }
        if (r > radius_cap) continue;
        double ang = std::abs(wrap_angle(std::arg(p) - d));
        if (ang < rc.nearest) {
            rc.nearest = ang;
            rc.blocking_pole = p;
        }
    }
    if (rc.nearest < angular_tol) rc.blocked = true;
    return rc;
}

} // namespace resum
