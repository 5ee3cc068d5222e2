#pragma once

#include <stdexcept>
#include <string>

namespace qsvm {

// Error categories, mirrored one-to-one by the C API status codes.
enum class ErrorCode {
    invalid_argument,  // bad input data, dimension mismatch, bad config
    io,                // file open/read/write failure
    parse,             // malformed CSV / JSON / QUBO document
    capacity,          // variable budget or enumeration cap exceeded
    integrity,         // declared sample energies disagree with recomputation
    provenance,        // sample set does not belong to this problem
    internal,          // invariant violation inside the library
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace qsvm
