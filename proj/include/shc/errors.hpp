#pragma once

#include <stdexcept>
#include <string>

namespace shc {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or out-of-domain arguments (bad dimensions, non-finite input, ...).
class InvalidInputError : public Error {
public:
    using Error::Error;
};

/// A matrix required to be invertible is singular.
class SingularMatrixError : public Error {
public:
    using Error::Error;
};

/// The center multiplier product around a loop is too close to one, so the
/// center fixed-point equation has no (stable) solution.
class ResonanceError : public Error {
public:
    ResonanceError(const std::string& what, double product)
        : Error(what), product_(product) {}
    double product() const { return product_; }

private:
    double product_;
};

/// A block of the loop fixed-point system is singular.
class DegenerateLoopError : public Error {
public:
    DegenerateLoopError(const std::string& what, std::string block)
        : Error(what), block_(std::move(block)) {}
    const std::string& block() const { return block_; }

private:
    std::string block_;
};

/// A point left the region where a step map is defined.  `block` names the
/// coordinate block (stable / center / unstable) that violated the bound.
class RegionError : public Error {
public:
    RegionError(const std::string& what, std::string block)
        : Error(what), block_(std::move(block)) {}
    const std::string& block() const { return block_; }

private:
    std::string block_;
};

/// Enumeration would examine more itineraries than the configured budget.
class BudgetExceededError : public Error {
public:
    BudgetExceededError(const std::string& what, long long required, long long budget)
        : Error(what), required_(required), budget_(budget) {}
    long long required() const { return required_; }
    long long budget() const { return budget_; }

private:
    long long required_;
    long long budget_;
};

/// A perturbation does not fit inside the requested C1 budget.  Carries the
/// budget that would have been needed.
class PerturbationBudgetError : public Error {
public:
    PerturbationBudgetError(const std::string& what, double required)
        : Error(what), required_(required) {}
    double required_epsilon() const { return required_; }

private:
    double required_;
};

/// A planner search ran past its cap without finding an admissible pair.
class SearchExhaustedError : public Error {
public:
    using Error::Error;
};

/// Config file problems: syntax, schema, or model-axiom violations.  `where`
/// holds a location hint (field path or byte offset).
class ConfigError : public Error {
public:
    ConfigError(const std::string& what, std::string where)
        : Error(what + " [at " + where + "]"), where_(std::move(where)) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

} // namespace shc
