#pragma once

#include <stdexcept>
#include <string>

namespace tiadc {

/// Invalid configuration: a type invariant or precondition is violated.
/// The message names the failing invariant. CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Conditioning parameters that cannot be realized (probabilities outside
/// [0,1], modulator overload). Message names the channel and the violated
/// bound. CLI maps this to exit code 3.
class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem/stream failure while reading configs or writing artifacts.
/// CLI maps this to exit code 1.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tiadc
