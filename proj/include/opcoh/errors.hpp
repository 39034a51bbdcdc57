#ifndef OPCOH_ERRORS_HPP
#define OPCOH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace opcoh {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotASubspace : Error {
    using Error::Error;
};
struct UnsupportedArity : Error {
    using Error::Error;
};
struct SlotOutOfRange : Error {
    using Error::Error;
};
struct NotQuadratic : Error {
    using Error::Error;
};
struct WrongKind : Error {
    using Error::Error;
};
struct NotPlusMinusOne : Error {
    using Error::Error;
};
struct OrientationMissing : Error {
    using Error::Error;
};
struct MissingLabel : Error {
    using Error::Error;
};
struct InternalInconsistency : Error {
    using Error::Error;
};

struct NoConsistentOrientation : Error {
    // edge indices of the first inconsistent cycle
    std::vector<long> witness_cycle;
    NoConsistentOrientation(const std::string& msg, std::vector<long> witness)
        : Error(msg), witness_cycle(std::move(witness)) {}
};

struct ParseError : Error {
    long line;
    ParseError(const std::string& msg, long line_no)
        : Error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
};

} // namespace opcoh

#endif
