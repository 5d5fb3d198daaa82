#pragma once

#include <stdexcept>
#include <string>

namespace fel {

// Bad user-supplied configuration (unknown key, violated precondition).
// The CLI maps this to exit code 2.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure at runtime (root not bracketed, integrator divergence,
// insufficient statistics). The CLI maps this to exit code 3.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

class root_not_found_error : public numerical_error {
public:
    explicit root_not_found_error(const std::string& what) : numerical_error(what) {}
};

class divergence_error : public numerical_error {
public:
    explicit divergence_error(const std::string& what) : numerical_error(what) {}
};

class statistics_error : public numerical_error {
public:
    explicit statistics_error(const std::string& what) : numerical_error(what) {}
};

}  // namespace fel
