#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "resum/kernels.hpp"
#include "resum/mpde.hpp"
#include "resum/sequences.hpp"
#include "resum/series.hpp"

namespace resum {

// Deterministic shortest-round-trip formatting (%.17g); CSVs must be
// byte-identical across runs.
std::string fmt17(double v);
std::string fmt17(cplx v); // "re, im" pair

// ---------------------------------------------------------------------------
// Expression parsers.  Case-insensitive names, nested calls, e.g.
//   gevrey(1)   gevreylog(1, 2)   qpower(2)
//   product(gevrey(1), gevrey(1))   power(gevrey(1), 0.5)
//   explicit(1, 1, 2, 6, 24)
// and for kernels
//   gevrey(1)   classical(2)   gamma_power(1.5)   rescale(gevrey(1), 2)
// Errors carry the offending position.
// ---------------------------------------------------------------------------
sequence_family parse_family(const std::string& expr);
kernel parse_kernel(const std::string& expr);

// ---------------------------------------------------------------------------
// Line-oriented key-value spec files:
//   key = value          (# starts a comment, blank lines ignored)
// Repeated keys append in order.
// ---------------------------------------------------------------------------
struct spec_file {
    std::vector<std::pair<std::string, std::string>> entries;
    std::string dir; // directory of the file, for relative path resolution

    bool has(const std::string& key) const;
    // single-valued access; throws parse_error when repeated or missing
    const std::string& get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;
    std::vector<std::string> all(const std::string& key) const;
};
spec_file read_spec_file(const std::string& path);

// Series CSV: header optional, rows "p, re, im" (im optional), p dense from 0.
formal_series read_series_csv(const std::string& path);
void write_series_csv(const std::string& path, const formal_series& s);

// Generic CSV table writer: one header line, then rows of fmt17 numbers.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows);

// Problem assembled from a spec file:
//   factor = c0, c1, ..., cd ^ multiplicity     (repeatable; symbol in xi)
//   m1 = <kernel expr>        m2 = <kernel expr>
//   data = <series csv path> | coeffs: a0, a1, ... | geometric: N
//   truncation = J, N         r0 = 0.1          direction = 0
//   candidate = <kernel expr>                    (optional)
//   q = num / den                                (optional override)
struct mpde_spec {
    mpde_problem problem;
    std::optional<kernel> candidate;
    double direction = 0.0;
    std::size_t j_max = 24;
    std::size_t n_z = 40;
};
mpde_spec read_problem_spec(const std::string& path);

} // namespace resum
