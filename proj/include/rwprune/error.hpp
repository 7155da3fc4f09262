#pragma once

#include <stdexcept>
#include <string>

namespace rwprune {

// Root of every error the library raises on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid generator parameters, malformed experiment configs, bad flags.
class ConfigError : public Error {
public:
    using Error::Error;
};

// A caller broke a documented precondition (edge not in graph, missing weight).
class ContractViolation : public Error {
public:
    using Error::Error;
};

// A metric whose denominator vanishes (precision with no predicted positives,
// modularity of an edgeless graph, AUC with a single class).
class UndefinedMetricError : public Error {
public:
    using Error::Error;
};

// Compression ratio or speedup against a network with zero parameters/FLOPs.
class DegenerateNetworkError : public Error {
public:
    using Error::Error;
};

// Transport between measures that live in different connected components.
class DisconnectedMeasuresError : public Error {
public:
    using Error::Error;
};

// External evaluator misbehaved: timeout, nonzero exit, malformed response.
class EvaluationError : public Error {
public:
    explicit EvaluationError(const std::string& what, std::string diagnostics = {})
        : Error(what), diagnostics_(std::move(diagnostics)) {}

    const std::string& diagnostics() const noexcept { return diagnostics_; }

private:
    std::string diagnostics_;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace rwprune
