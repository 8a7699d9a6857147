#pragma once
#include <memory>
#include <optional>
#include <vector>

#include "resum/kernels.hpp"
#include "resum/polar.hpp"

namespace resum {

// Finite power series sum a_p z^p.  The termwise transform pair below rescales
// coefficients by integer moments; each result remembers its source so that
// applying the inverse restores the original coefficients bit for bit instead
// of re-rounding through a multiply/divide cycle.
class formal_series {
  public:
    formal_series() = default;
    explicit formal_series(std::vector<cplx> coeff) : a_(std::move(coeff)) {}

    std::size_t size() const { return a_.size(); } // coefficients 0..size-1
    cplx at(std::size_t p) const { return p < a_.size() ? a_[p] : cplx(0.0); }
    const std::vector<cplx>& coefficients() const { return a_; }

    // factorial-normalized view f_p = p! a_p (overflows past p ~ 170)
    cplx factorial_normalized(std::size_t p) const;

    cplx eval(cplx z) const; // Horner
    cplx eval_partial(cplx z, std::size_t order) const;

  private:
    std::vector<cplx> a_;

    struct provenance {
        std::shared_ptr<const std::vector<cplx>> source;
        std::vector<double> weights_log; // log m(p) snapshot of the sequence used
        int direction = 0;               // +1 multiplied, -1 divided
    };
    std::shared_ptr<const provenance> prov_;

    friend formal_series formal_laplace(const formal_series&, const moment_sequence&);
    friend formal_series formal_borel(const formal_series&, const moment_sequence&);
};

// a_p -> m(p) a_p
formal_series formal_laplace(const formal_series& s, const moment_sequence& m);
// a_p -> a_p / m(p)
formal_series formal_borel(const formal_series& s, const moment_sequence& m);

} // namespace resum
