#pragma once

#include <stdexcept>
#include <string>

namespace dcc {

/// Invalid parameters, mismatched contexts, violated preconditions.
class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

/// An enumeration/sampling budget was exceeded.
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dcc
