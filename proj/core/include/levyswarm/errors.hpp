#pragma once

#include <stdexcept>
#include <string>

namespace levyswarm {

// Bad parameters, bad config files, violated preconditions.  The CLI maps
// this to exit code 2.
struct ValidationError : std::invalid_argument {
    explicit ValidationError(const std::string& msg) : std::invalid_argument(msg) {}
};

// A solve that started fine but broke down (non-finite values, iteration
// failed to converge, singular mobility).  The CLI maps this to exit code 3.
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace levyswarm
