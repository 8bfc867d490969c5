#pragma once

#include <stdexcept>
#include <string>

namespace tvspec {

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

struct UnsupportedCombination : std::runtime_error {
    explicit UnsupportedCombination(const std::string& what) : std::runtime_error(what) {}
};

struct InsufficientData : std::runtime_error {
    explicit InsufficientData(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroLambda : std::runtime_error {
    explicit ZeroLambda(const std::string& what) : std::runtime_error(what) {}
};

struct SpectrumLambda : std::runtime_error {
    explicit SpectrumLambda(const std::string& what) : std::runtime_error(what) {}
};

struct NonCommuting : std::runtime_error {
    explicit NonCommuting(const std::string& what) : std::runtime_error(what) {}
};

struct PreconditionFailed : std::runtime_error {
    explicit PreconditionFailed(const std::string& what) : std::runtime_error(what) {}
};

struct NoCover : std::runtime_error {
    explicit NoCover(const std::string& what) : std::runtime_error(what) {}
};

struct NoClosedForm : std::runtime_error {
    explicit NoClosedForm(const std::string& what) : std::runtime_error(what) {}
};

struct OverflowError : std::runtime_error {
    explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace tvspec
