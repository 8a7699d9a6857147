#pragma once
#include <stdexcept>
#include <string>

namespace resum {

// Table or moment cache does not reach far enough for the requested evaluation.
struct depth_error : std::runtime_error {
    explicit depth_error(const std::string& what) : std::runtime_error(what) {}
};

// Adaptive quadrature exhausted its budget before reaching the tolerance.
struct quadrature_error : std::runtime_error {
    explicit quadrature_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed spec file / CSV / expression.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace resum
