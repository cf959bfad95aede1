// error.hpp — Exception types shared by every corrtcl module

#pragma once

#include <stdexcept>
#include <string>

namespace corrtcl {

// Input rejected by a precondition check (bad parameter, dimension mismatch).
class InvalidArgument : public std::invalid_argument {
public:
    explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical guard tripped at runtime (non-convergence, trace drift, Z' <= 0).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw InvalidArgument(msg);
}

} // namespace detail
} // namespace corrtcl
