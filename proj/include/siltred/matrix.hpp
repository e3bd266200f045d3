#ifndef SILTRED_MATRIX_HPP
#define SILTRED_MATRIX_HPP

#include <optional>
#include <string>
#include <vector>

#include "siltred/rational.hpp"

namespace siltred {

using QVec = std::vector<Rat>;

// Dense matrix over the rationals. Row-major; all elimination routines are
// deterministic (leftmost pivot, topmost row), so reduced echelon forms and
// the bases derived from them are reproducible.
class QMat {
public:
    QMat() : rows_(0), cols_(0) {}
    QMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static QMat identity(int n);
    static QMat zero(int rows, int cols) { return QMat(rows, cols); }
    static QMat from_rows(const std::vector<QVec>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rat& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const Rat& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    QVec row(int r) const;
    void set_row(int r, const QVec& v);

    QMat transpose() const;
    QMat operator*(const QMat& o) const;
    QMat operator+(const QMat& o) const;
    QMat operator-(const QMat& o) const;
    QVec apply(const QVec& v) const;  // this * v
    bool operator==(const QMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool is_zero() const;

    // In-place Gauss-Jordan to reduced row echelon form; returns pivot columns.
    std::vector<int> rref();

    int rank() const;

    // Basis of the null space, one vector per free column, in column order.
    // The convention matches hand row-reduction: free variable set to 1,
    // pivot variables solved for.
    std::vector<QVec> kernel_basis() const;

    std::string str() const;

private:
    int rows_, cols_;
    std::vector<Rat> a_;
};

struct SolveResult {
    bool consistent = false;
    QVec particular;             // one solution with free variables at zero
    std::vector<QVec> kernel;    // basis of Null(A)
};

// Exact solution space of A x = b. Inconsistency is a valid return, not an error.
SolveResult solve(const QMat& A, const QVec& b);

// Columns of B solved simultaneously; nullopt if any column is inconsistent.
std::optional<QMat> solve_matrix(const QMat& A, const QMat& B);

// Span utilities: vectors are rows. Returns a deterministic RREF basis.
std::vector<QVec> row_space_basis(const std::vector<QVec>& vecs);
int span_rank(const std::vector<QVec>& vecs);
bool in_span(const std::vector<QVec>& span, const QVec& v);

// Coordinates of v in the given (independent) spanning set, if it lies in the span.
std::optional<QVec> coordinates_in(const std::vector<QVec>& basis, const QVec& v);

// Basis of a complement: vectors e_i (standard basis of Q^dim) whose classes
// complete `subspace` to the full space. Deterministic.
std::vector<int> complement_coords(const std::vector<QVec>& subspace, int dim);

// Integer matrices and Smith normal form (used for abelianizations).
class ZMat {
public:
    ZMat() : rows_(0), cols_(0) {}
    ZMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    mpz_class& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const mpz_class& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    // Diagonal of the Smith normal form, nonnegative, each dividing the next,
    // padded with zeros up to min(rows, cols).
    std::vector<mpz_class> smith_diagonal() const;

private:
    int rows_, cols_;
    std::vector<mpz_class> a_;
};

}  // namespace siltred

#endif
