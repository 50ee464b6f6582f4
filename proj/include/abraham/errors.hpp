#pragma once

#include <stdexcept>
#include <string>

namespace abraham {

struct NonSkewInput : std::runtime_error {
    explicit NonSkewInput(const std::string& msg) : std::runtime_error(msg) {}
};

struct QuadratureNotConverged : std::runtime_error {
    explicit QuadratureNotConverged(const std::string& msg) : std::runtime_error(msg) {}
};

struct ProfileTooWide : std::runtime_error {
    explicit ProfileTooWide(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonZeroMean : std::runtime_error {
    explicit NonZeroMean(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonSolenoidalB : std::runtime_error {
    explicit NonSolenoidalB(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericalBlowup : std::runtime_error {
    explicit NumericalBlowup(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace abraham
