#ifndef SILTRED_ALGEBRA_HPP
#define SILTRED_ALGEBRA_HPP

#include <vector>

#include "siltred/matrix.hpp"

namespace siltred {

// Finite-dimensional associative unital Q-algebra given by structure
// constants: basis b_0..b_{d-1}, b_i * b_j = sum_k mult[i][j][k] b_k.
class FinDimAlgebra {
public:
    FinDimAlgebra() = default;
    FinDimAlgebra(int dim, std::vector<std::vector<QVec>> mult, QVec unit);

    int dim() const { return dim_; }
    const QVec& unit() const { return unit_; }

    QVec mul(const QVec& x, const QVec& y) const;
    QMat left_mult_matrix(const QVec& x) const;

    // Associativity on all basis triples and two-sided unit law.
    void check_invariants() const;
    bool invariants_ok() const;

    // Jacobson radical basis via the trace form of the regular representation
    // (valid in characteristic zero). Runs the spec'd post-check: the span is
    // a nilpotent two-sided ideal and the quotient has zero radical.
    std::vector<QVec> radical() const;

    // Quotient by the span of `ideal` (must be a two-sided ideal).
    // Returns the quotient algebra plus the projection matrix old->new coords.
    struct Quotient;
    Quotient quotient_by(const std::vector<QVec>& ideal) const;

    // Monic minimal polynomial of x, low-degree-first coefficient vector
    // (c_0, c_1, ..., c_m=1).
    QVec min_poly(const QVec& x) const;

    // Complete set of orthogonal primitive idempotents summing to 1.
    // Deterministic; throws IdempotentSearchIncomplete when a non-local corner
    // cannot be split by the bounded rational-root search.
    std::vector<QVec> primitive_idempotents() const;

    bool is_idempotent(const QVec& e) const;

    // dim of A / rad(A); the algebra is (split) local iff this equals 1.
    int semisimple_dim() const;
    bool is_local() const;

private:
    std::vector<QVec> radical_no_check() const;
    // Nontrivial idempotent of a semisimple algebra found by factoring minimal
    // polynomials of basis elements and small-integer combinations; empty when
    // no split is found.
    QVec split_idempotent_semisimple() const;

    int dim_ = 0;
    std::vector<std::vector<QVec>> mult_;
    QVec unit_;
    mutable bool invariants_checked_ = false;
};

struct FinDimAlgebra::Quotient {
    FinDimAlgebra algebra;
    QMat projection;          // dim(quot) x dim
    std::vector<QVec> lifts;  // one representative per quotient basis vector
};

// Distinct rational roots of the polynomial with low-degree-first rational
// coefficients, via the rational root theorem after clearing denominators.
std::vector<Rat> rational_roots(const QVec& poly);

// Evaluate poly at x inside an algebra (Horner).
QVec eval_poly(const FinDimAlgebra& A, const QVec& poly, const QVec& x);

}  // namespace siltred

#endif
