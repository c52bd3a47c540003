#pragma once

#include <stdexcept>
#include <string>

namespace lam {

/// Thrown when an operation would exceed its configured memory or search
/// budget. Callers can retry with a larger budget or a smaller input.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace lam
