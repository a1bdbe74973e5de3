#pragma once

#include <stdexcept>
#include <string>

namespace lldram {

struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Byte address or index outside the topology bounds.
struct AddressError : SimError {
    using SimError::SimError;
};

// Command incompatible with the current bank state.
struct IllegalCommand : SimError {
    using SimError::SimError;
};

struct ConfigError : SimError {
    using SimError::SimError;
};

// Inter-segment transfer endpoints not on the same bitline group.
struct TransferError : SimError {
    using SimError::SimError;
};

// Malformed trace input; carries the 1-based line number.
struct TraceError : SimError {
    TraceError(const std::string& msg, int line_no)
        : SimError(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
    int line;
};

// Module fails the spec even at standard settings.
struct ModuleRejected : SimError {
    using SimError::SimError;
};

}  // namespace lldram
