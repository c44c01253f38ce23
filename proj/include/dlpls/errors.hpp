#pragma once

#include <stdexcept>
#include <string>

namespace dlpls {

/// Malformed input: files, schemas, dimension mismatches, invalid options.
class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure: factorization breakdown, divergence, non-convergence.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace dlpls
