#include "siltred/rational.hpp"

#include <ostream>
#include <stdexcept>

#include "siltred/error.hpp"

namespace siltred {

Rat Rat::from_string(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty()) fail(ErrorKind::MalformedSpec, "empty rational literal");
    try {
        mpq_class q(t, 10);
        q.canonicalize();
        return Rat(q);
    } catch (const std::invalid_argument&) {
        fail(ErrorKind::MalformedSpec, "bad rational literal '" + s + "'");
    }
}

Rat Rat::inv() const {
    if (is_zero()) fail(ErrorKind::InvariantViolation, "division by zero rational");
    Rat r;
    r.v_ = 1 / v_;
    return r;
}

std::string Rat::str() const { return v_.get_str(); }

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.v_; }

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvariantViolation: return "InvariantViolation";
        case ErrorKind::IdempotentSearchIncomplete: return "IdempotentSearchIncomplete";
        case ErrorKind::MalformedSpec: return "MalformedSpec";
        case ErrorKind::InfiniteDimensional: return "InfiniteDimensional";
        case ErrorKind::RealizationUnavailable: return "RealizationUnavailable";
        case ErrorKind::RankUnknown: return "RankUnknown";
        case ErrorKind::ApproximationNotMinimalizable: return "ApproximationNotMinimalizable";
        case ErrorKind::MutationUndefined: return "MutationUndefined";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::NoSiltingExtension: return "NoSiltingExtension";
        case ErrorKind::NonUniqueExtremum: return "NonUniqueExtremum";
        case ErrorKind::WitnessSearchExhausted: return "WitnessSearchExhausted";
        case ErrorKind::UndecidedIdentity: return "UndecidedIdentity";
        case ErrorKind::RewritingFailed: return "RewritingFailed";
        case ErrorKind::HomCountBudgetExceeded: return "HomCountBudgetExceeded";
    }
    return "Error";
}

}  // namespace siltred
