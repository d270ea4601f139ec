#pragma once

#include <stdexcept>
#include <string>

namespace qorbit {

// Base for all domain errors.  The CLI maps these to exit code 1; malformed
// command lines map to exit code 2 before any Error can be thrown.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {
inline std::string with_detail(const char* phrase, const std::string& detail) {
    return detail.empty() ? std::string(phrase) : std::string(phrase) + ": " + detail;
}
} // namespace detail

// Each error's what() begins with a fixed phrase so callers (and tests) can
// match on it exactly.

#define QORBIT_DEFINE_ERROR(Name, phrase)                                     \
    class Name : public Error {                                               \
    public:                                                                   \
        explicit Name(const std::string& detail = "")                         \
            : Error(detail::with_detail(phrase, detail)) {}                   \
        static constexpr const char* kPhrase = phrase;                        \
    }

QORBIT_DEFINE_ERROR(InvalidArgument, "invalid argument");
QORBIT_DEFINE_ERROR(NotInvertible, "not invertible");
QORBIT_DEFINE_ERROR(IrrationalRoot, "irrational square root");
QORBIT_DEFINE_ERROR(InconsistentConstantTerm, "inconsistent constant term");
QORBIT_DEFINE_ERROR(TrivialQuotient, "trivial quotient");
QORBIT_DEFINE_ERROR(RecursionSingular, "recursion system singular");
QORBIT_DEFINE_ERROR(ModuleNotClosed, "module did not close");
QORBIT_DEFINE_ERROR(NonGenericParameters, "non-generic parameters");
QORBIT_DEFINE_ERROR(NonMonomialEigenvalue, "non-monomial Cartan eigenvalue");
QORBIT_DEFINE_ERROR(DecompositionFailed, "decomposition failed");
QORBIT_DEFINE_ERROR(ResourceLimit, "resource limit exceeded");

#undef QORBIT_DEFINE_ERROR

} // namespace qorbit
