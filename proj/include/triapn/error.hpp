#pragma once

#include <stdexcept>
#include <string>

namespace triapn {

// Error codes shared by all modules. The CLI maps these onto exit codes.
enum class errc {
    bad_argument,
    not_irreducible,
    degree_mismatch,
    division_by_zero,
    not_a_divisor,
    ctx_mismatch,
    division_by_zero_poly,
    both_zero,
    zero_input,
    zero_a,
    bad_twist,
    too_large,
    zero_scalar,
    not_coprime,
    oracle_disagreement,
    singular,
    width_mismatch,
    zero_direction,
    refused_unverified,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::bad_argument:          return "BadArgument";
        case errc::not_irreducible:       return "NotIrreducible";
        case errc::degree_mismatch:       return "DegreeMismatch";
        case errc::division_by_zero:      return "DivisionByZero";
        case errc::not_a_divisor:         return "NotADivisor";
        case errc::ctx_mismatch:          return "CtxMismatch";
        case errc::division_by_zero_poly: return "DivisionByZeroPoly";
        case errc::both_zero:             return "BothZero";
        case errc::zero_input:            return "ZeroInput";
        case errc::zero_a:                return "ZeroA";
        case errc::bad_twist:             return "BadTwist";
        case errc::too_large:             return "TooLarge";
        case errc::zero_scalar:           return "ZeroScalar";
        case errc::not_coprime:           return "NotCoprime";
        case errc::oracle_disagreement:   return "OracleDisagreement";
        case errc::singular:              return "Singular";
        case errc::width_mismatch:        return "WidthMismatch";
        case errc::zero_direction:        return "ZeroDirection";
        case errc::refused_unverified:    return "RefusedUnverified";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
    throw Error(code, what);
}

} // namespace triapn
