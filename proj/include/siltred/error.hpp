#ifndef SILTRED_ERROR_HPP
#define SILTRED_ERROR_HPP

#include <stdexcept>
#include <string>

namespace siltred {

enum class ErrorKind {
    InvariantViolation,
    IdempotentSearchIncomplete,
    MalformedSpec,
    InfiniteDimensional,
    RealizationUnavailable,
    RankUnknown,
    ApproximationNotMinimalizable,
    MutationUndefined,
    BudgetExceeded,
    NoSiltingExtension,
    NonUniqueExtremum,
    WitnessSearchExhausted,
    UndecidedIdentity,
    RewritingFailed,
    HomCountBudgetExceeded,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

inline void require(bool cond, ErrorKind k, const std::string& msg) {
    if (!cond) fail(k, msg);
}

}  // namespace siltred

#endif
