#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tic {

/// Base of every error raised by the solver core.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inputs failed validation; `issues()` lists one message per violated field.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> issues)
        : Error(join(issues)), issues_(std::move(issues)) {}

    const std::vector<std::string>& issues() const noexcept { return issues_; }

private:
    static std::string join(const std::vector<std::string>& issues) {
        std::string out;
        for (const auto& s : issues) {
            if (!out.empty()) out += "; ";
            out += s;
        }
        return out;
    }

    std::vector<std::string> issues_;
};

/// A hypothesised certificate regime does not verify (e.g. negative binding price).
class RegimeInconsistent : public Error {
public:
    using Error::Error;
};

/// No regime hypothesis verified. Indicates a solver bug.
class NoEquilibriumFound : public Error {
public:
    using Error::Error;
};

/// The discretized market admits no clearing with positive trade.
class AutarkyOnly : public Error {
public:
    using Error::Error;
};

/// Closed-form strategic results do not apply to the given preferences.
class AssumptionViolated : public Error {
public:
    using Error::Error;
};

/// A result failed one of the identities it must satisfy (solver bug).
class IdentityViolated : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class NonConvergence : public Error {
public:
    NonConvergence(const std::string& what, std::vector<double> last_iterate)
        : Error(what), last_(std::move(last_iterate)) {}

    const std::vector<double>& last_iterate() const noexcept { return last_; }

private:
    std::vector<double> last_;
};

}  // namespace tic
