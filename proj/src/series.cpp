#include "resum/series.hpp"

#include <cmath>

namespace resum {

namespace {

bool same_weights(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

std::vector<double> weight_snapshot(const moment_sequence& m, std::size_t n) {
    std::vector<double> w(n);
    for (std::size_t p = 0; p < n; ++p) w[p] = m.log_value(p);
    return w;
}

formal_series rescaled(const formal_series& s, const moment_sequence& m, int direction) {
    std::vector<cplx> out(s.coefficients());
    for (std::size_t p = 0; p < out.size(); ++p) {
        double w = std::exp(m.log_value(p));
        out[p] = direction > 0 ? out[p] * w : out[p] / w;
    }
    return formal_series(std::move(out));
}

} // namespace

cplx formal_series::factorial_normalized(std::size_t p) const {
    if (p >= a_.size()) return cplx(0.0);
    return a_[p] * std::tgamma(static_cast<double>(p) + 1.0);
}

cplx formal_series::eval(cplx z) const {
    cplx acc(0.0);
    for (std::size_t i = a_.size(); i-- > 0;) acc = acc * z + a_[i];
    return acc;
}

cplx formal_series::eval_partial(cplx z, std::size_t order) const {
    cplx acc(0.0);
    std::size_t n = std::min(order, a_.size());
    for (std::size_t i = n; i-- > 0;) acc = acc * z + a_[i];
    return acc;
}

formal_series formal_laplace(const formal_series& s, const moment_sequence& m) {
    std::vector<double> w = weight_snapshot(m, s.size());
    if (s.prov_ && s.prov_->direction == -1 && same_weights(s.prov_->weights_log, w))
        return formal_series(std::vector<cplx>(*s.prov_->source));
    formal_series out = rescaled(s, m, +1);
    auto prov = std::make_shared<formal_series::provenance>();
    prov->source = std::make_shared<const std::vector<cplx>>(s.coefficients());
    prov->weights_log = std::move(w);
    prov->direction = +1;
    out.prov_ = std::move(prov);
    return out;
}

formal_series formal_borel(const formal_series& s, const moment_sequence& m) {
    std::vector<double> w = weight_snapshot(m, s.size());
    if (s.prov_ && s.prov_->direction == +1 && same_weights(s.prov_->weights_log, w))
        return formal_series(std::vector<cplx>(*s.prov_->source));
    formal_series out = rescaled(s, m, -1);
    auto prov = std::make_shared<formal_series::provenance>();
    prov->source = std::make_shared<const std::vector<cplx>>(s.coefficients());
    prov->weights_log = std::move(w);
    prov->direction = -1;
    out.prov_ = std::move(prov);
    return out;
}

} // namespace resum
