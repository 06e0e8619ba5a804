#pragma once

#include <stdexcept>
#include <string>

namespace tapkit {

// Base for everything thrown by the library. `code()` is stable and used by
// the CLI to pick exit codes and emit machine-readable error records.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// Bad user input: malformed spec parameters, non-coprime fractions, schema
// violations. CLI exit code 2.
class InvalidInput : public Error {
public:
    using Error::Error;
};

// A computation that started from valid input could not finish: inexact
// division, singular residues, diverged searches. CLI exit code 3.
class ComputationError : public Error {
public:
    using Error::Error;
};

inline InvalidInput spec_invariant_violation(const std::string& msg) {
    return InvalidInput("SpecInvariantViolation", msg);
}
inline InvalidInput not_coprime(const std::string& msg) { return InvalidInput("NotCoprime", msg); }
inline InvalidInput not_case2(const std::string& msg) { return InvalidInput("NotCase2", msg); }
inline InvalidInput unsupported_family(const std::string& msg) {
    return InvalidInput("UnsupportedFamily", msg);
}
inline InvalidInput unknown_generator(const std::string& msg) {
    return InvalidInput("UnknownGenerator", msg);
}
inline InvalidInput deficiency_mismatch(const std::string& msg) {
    return InvalidInput("DeficiencyMismatch", msg);
}
inline InvalidInput non_square(const std::string& msg) { return InvalidInput("NonSquare", msg); }
inline InvalidInput index_out_of_range(const std::string& msg) {
    return InvalidInput("IndexOutOfRange", msg);
}
inline InvalidInput parse_error(const std::string& msg) { return InvalidInput("ParseError", msg); }

inline ComputationError division_by_zero(const std::string& msg) {
    return ComputationError("DivisionByZero", msg);
}
inline ComputationError non_invertible_residue(const std::string& msg) {
    return ComputationError("NonInvertibleResidue", msg);
}
inline ComputationError inexact_division(const std::string& msg) {
    return ComputationError("InexactDivision", msg);
}
inline ComputationError zero_polynomial(const std::string& msg) {
    return ComputationError("ZeroPolynomial", msg);
}
inline ComputationError non_cyclic_abelianization(const std::string& msg) {
    return ComputationError("NonCyclicAbelianization", msg);
}
inline ComputationError not_sl2(const std::string& msg) { return ComputationError("NotSL2", msg); }
inline ComputationError relator_violation(const std::string& msg) {
    return ComputationError("RelatorViolation", msg);
}
inline ComputationError all_denominators_zero(const std::string& msg) {
    return ComputationError("AllDenominatorsZero", msg);
}
inline ComputationError did_not_converge(const std::string& msg) {
    return ComputationError("DidNotConverge", msg);
}
inline ComputationError no_nonabelian_root(const std::string& msg) {
    return ComputationError("NoNonabelianRoot", msg);
}

} // namespace tapkit
