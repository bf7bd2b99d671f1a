#pragma once

#include <stdexcept>
#include <string>

namespace followgraph {

// Bad input: malformed files, unresolved ids, invalid flag values,
// preconditions violated by the data itself. The CLI maps these to exit 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical or model failure: rank deficiency, non-finite likelihoods,
// arithmetic overflow. The CLI maps these to exit 3.
class ModelError : public std::runtime_error {
public:
    explicit ModelError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace followgraph
