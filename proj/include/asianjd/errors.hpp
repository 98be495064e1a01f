#pragma once

#include <stdexcept>
#include <string>

namespace asianjd {

/// Rejected model, contract, grid or run configuration.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// SOR sweep limit reached before the update norm fell below tolerance.
class SorError : public std::runtime_error {
public:
    SorError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Fixed-point iteration hit its iteration cap.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double last_delta)
        : std::runtime_error(what), last_delta_(last_delta) {}

    double last_delta() const noexcept { return last_delta_; }

private:
    double last_delta_;
};

}  // namespace asianjd
