#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace specprobe {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value or argument violates a documented invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Shapes that cannot be combined (channel mismatch, NSM crop request, ...).
class DimensionError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// A call outside an operation's domain, e.g. asking NSM for a kernel weight.
class ContractError : public Error {
public:
    using Error::Error;
};

/// Malformed FMAP file. `kind()` tells the cases apart.
class FormatError : public Error {
public:
    enum class Kind { BadMagic, UnsupportedVersion, Truncated, NonFiniteValue, TrailingBytes };

    FormatError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// CSV/JSON input that cannot be parsed. `row()` is 1-based over data rows, 0 when not applicable.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t row = 0) : Error(what), row_(row) {}
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

/// Why a statistic has no value. These are results, not failures: callers
/// that assemble records catch UndefinedMetric and store the reason.
enum class UndefinedReason {
    UndefinedCorrelation,
    UndefinedDistribution,
    FitUnderdetermined,
    UndefinedCoherence,
    UndefinedRatio,
    InsufficientSamples,
};

std::string_view to_string(UndefinedReason reason) noexcept;

class UndefinedMetric : public Error {
public:
    UndefinedMetric(UndefinedReason reason, const std::string& detail)
        : Error(std::string(to_string(reason)) + ": " + detail), reason_(reason) {}
    UndefinedReason reason() const noexcept { return reason_; }

private:
    UndefinedReason reason_;
};

}  // namespace specprobe
