#pragma once

#include <stdexcept>
#include <string>

namespace riss {

/// Invalid parameters or an unsupported combination of scheme options.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation that cannot produce a meaningful result: a derivative sample
/// that does not exist, or a root-find that did not converge.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace riss
