#pragma once

#include <stdexcept>
#include <string>

namespace mzvrg {

enum class errc {
    domain_error,        // bad argument (precondition violation)
    usage_error,         // malformed CLI / API usage
    unsupported,         // valid input outside the implemented domain
    singular_point,      // continuation requested at a singular word
    unsupported_letter,  // letter outside a scheme kernel's domain
    divergent_sum,       // infinite sum of an undamped term
    not_invertible,      // Laurent series with no visible leading coefficient
    pole_present,        // finite part requested of a series with poles
    insufficient_truncation,
    bound_exceeded,      // character evaluated outside its table bound
    incomplete_table,
    invalid_solution,    // table failed solution verification
    invalid_transfer,    // map failed renormalisation-group membership
    parse_error,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::domain_error: return "DomainError";
        case errc::usage_error: return "UsageError";
        case errc::unsupported: return "Unsupported";
        case errc::singular_point: return "SingularPoint";
        case errc::unsupported_letter: return "UnsupportedLetter";
        case errc::divergent_sum: return "DivergentSum";
        case errc::not_invertible: return "NotInvertible";
        case errc::pole_present: return "PolePresent";
        case errc::insufficient_truncation: return "InsufficientTruncation";
        case errc::bound_exceeded: return "BoundExceeded";
        case errc::incomplete_table: return "IncompleteTable";
        case errc::invalid_solution: return "InvalidSolution";
        case errc::invalid_transfer: return "InvalidTransfer";
        case errc::parse_error: return "ParseError";
    }
    return "Error";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace mzvrg
