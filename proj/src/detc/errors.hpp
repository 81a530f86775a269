#pragma once

#include <stdexcept>
#include <string>

namespace detc {

/// Invalid problem definition: dimension mismatch, nonpositive design
/// parameter, malformed threshold table.
class SpecError : public std::runtime_error {
public:
    explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

/// A plant or controller function produced a non-finite value. Carries the
/// subsystem/channel (one-based) and the simulation time where it appeared.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, int subsystem, int channel, double time)
        : std::runtime_error(what), subsystem(subsystem), channel(channel), time(time) {}
    int subsystem;
    int channel;  ///< 0 when no single channel is implicated
    double time;
};

/// Caller broke a calling contract: non-monotone ETM time, wrong controller
/// kind, mismatched grids, index out of range.
class ContractError : public std::logic_error {
public:
    explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Violated internal invariant (e.g. the two transform-matrix constructions
/// disagreeing). Indicates a bug, not bad input.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace detc
