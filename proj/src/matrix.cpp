#include "siltred/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "siltred/error.hpp"

namespace siltred {

QMat QMat::identity(int n) {
    QMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Rat(1);
    return m;
}

QMat QMat::from_rows(const std::vector<QVec>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    QMat m(r, c);
    for (int i = 0; i < r; ++i) {
        require(static_cast<int>(rows[i].size()) == c, ErrorKind::InvariantViolation, "ragged rows");
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

QVec QMat::row(int r) const {
    QVec v(cols_);
    for (int j = 0; j < cols_; ++j) v[j] = at(r, j);
    return v;
}

void QMat::set_row(int r, const QVec& v) {
    for (int j = 0; j < cols_; ++j) at(r, j) = v[j];
}

QMat QMat::transpose() const {
    QMat m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
}

QMat QMat::operator*(const QMat& o) const {
    require(cols_ == o.rows_, ErrorKind::InvariantViolation, "matrix product shape mismatch");
    QMat m(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rat& aik = at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) {
                if (o.at(k, j).is_zero()) continue;
                m.at(i, j) += aik * o.at(k, j);
            }
        }
    return m;
}

QMat QMat::operator+(const QMat& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, ErrorKind::InvariantViolation, "matrix sum shape mismatch");
    QMat m(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
    return m;
}

QMat QMat::operator-(const QMat& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, ErrorKind::InvariantViolation, "matrix diff shape mismatch");
    QMat m(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
    return m;
}

QVec QMat::apply(const QVec& v) const {
    require(static_cast<int>(v.size()) == cols_, ErrorKind::InvariantViolation, "apply shape mismatch");
    QVec out(rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (!at(i, j).is_zero()) out[i] += at(i, j) * v[j];
    return out;
}

bool QMat::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Rat& r) { return r.is_zero(); });
}

std::vector<int> QMat::rref() {
    std::vector<int> pivots;
    int lead = 0;
    for (int r = 0; r < rows_ && lead < cols_; ++r) {
        int pr = -1;
        for (; lead < cols_; ++lead) {
            for (int i = r; i < rows_; ++i)
                if (!at(i, lead).is_zero()) { pr = i; break; }
            if (pr >= 0) break;
        }
        if (lead == cols_) break;
        if (pr != r)
            for (int j = 0; j < cols_; ++j) std::swap(at(pr, j), at(r, j));
        Rat inv = at(r, lead).inv();
        for (int j = lead; j < cols_; ++j) at(r, j) *= inv;
        for (int i = 0; i < rows_; ++i) {
            if (i == r || at(i, lead).is_zero()) continue;
            Rat f = at(i, lead);
            for (int j = lead; j < cols_; ++j) at(i, j) -= f * at(r, j);
        }
        pivots.push_back(lead);
        ++lead;
    }
    return pivots;
}

int QMat::rank() const {
    QMat m = *this;
    return static_cast<int>(m.rref().size());
}

std::vector<QVec> QMat::kernel_basis() const {
    QMat m = *this;
    std::vector<int> pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<QVec> basis;
    for (int c = 0; c < cols_; ++c) {
        if (is_pivot[c]) continue;
        QVec v(cols_);
        v[c] = Rat(1);
        for (size_t pi = 0; pi < pivots.size(); ++pi) v[pivots[pi]] = -m.at(static_cast<int>(pi), c);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::string QMat::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        os << (i == 0 ? "[" : " ");
        for (int j = 0; j < cols_; ++j) os << at(i, j) << (j + 1 < cols_ ? " " : "");
        os << (i + 1 < rows_ ? ";\n" : "]");
    }
    return os.str();
}

SolveResult solve(const QMat& A, const QVec& b) {
    require(static_cast<int>(b.size()) == A.rows(), ErrorKind::InvariantViolation, "solve shape mismatch");
    QMat aug(A.rows(), A.cols() + 1);
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < A.cols(); ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols()) = b[i];
    }
    std::vector<int> pivots = aug.rref();
    SolveResult res;
    for (int p : pivots)
        if (p == A.cols()) return res;  // row (0 ... 0 | 1): inconsistent
    res.consistent = true;
    res.particular.assign(A.cols(), Rat());
    for (size_t pi = 0; pi < pivots.size(); ++pi)
        res.particular[pivots[pi]] = aug.at(static_cast<int>(pi), A.cols());
    res.kernel = A.kernel_basis();
    return res;
}

std::optional<QMat> solve_matrix(const QMat& A, const QMat& B) {
    require(A.rows() == B.rows(), ErrorKind::InvariantViolation, "solve_matrix shape mismatch");
    QMat X(A.cols(), B.cols());
    for (int j = 0; j < B.cols(); ++j) {
        QVec col(B.rows());
        for (int i = 0; i < B.rows(); ++i) col[i] = B.at(i, j);
        SolveResult r = solve(A, col);
        if (!r.consistent) return std::nullopt;
        for (int i = 0; i < A.cols(); ++i) X.at(i, j) = r.particular[i];
    }
    return X;
}

std::vector<QVec> row_space_basis(const std::vector<QVec>& vecs) {
    if (vecs.empty()) return {};
    QMat m = QMat::from_rows(vecs);
    std::vector<int> pivots = m.rref();
    std::vector<QVec> basis;
    for (size_t i = 0; i < pivots.size(); ++i) basis.push_back(m.row(static_cast<int>(i)));
    return basis;
}

int span_rank(const std::vector<QVec>& vecs) {
    if (vecs.empty()) return 0;
    return QMat::from_rows(vecs).rank();
}

bool in_span(const std::vector<QVec>& span, const QVec& v) {
    bool vzero = std::all_of(v.begin(), v.end(), [](const Rat& r) { return r.is_zero(); });
    if (vzero) return true;
    if (span.empty()) return false;
    std::vector<QVec> all = span;
    all.push_back(v);
    return span_rank(span) == span_rank(all);
}

std::optional<QVec> coordinates_in(const std::vector<QVec>& basis, const QVec& v) {
    if (basis.empty()) {
        bool vzero = std::all_of(v.begin(), v.end(), [](const Rat& r) { return r.is_zero(); });
        if (vzero) return QVec{};
        return std::nullopt;
    }
    QMat A = QMat::from_rows(basis).transpose();
    SolveResult r = solve(A, v);
    if (!r.consistent) return std::nullopt;
    return r.particular;
}

std::vector<int> complement_coords(const std::vector<QVec>& subspace, int dim) {
    std::vector<QVec> span = row_space_basis(subspace);
    std::vector<int> extra;
    for (int c = 0; c < dim; ++c) {
        QVec e(dim);
        e[c] = Rat(1);
        if (!in_span(span, e)) {
            span.push_back(e);
            span = row_space_basis(span);
            extra.push_back(c);
        }
    }
    return extra;
}

std::vector<mpz_class> ZMat::smith_diagonal() const {
    int r = rows_, c = cols_;
    std::vector<std::vector<mpz_class>> m(r, std::vector<mpz_class>(c));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m[i][j] = at(i, j);

    int n = std::min(r, c);
    std::vector<mpz_class> diag(n, 0);
    int t = 0;
    while (t < n) {
        // locate smallest nonzero entry in the remaining block
        int pi = -1, pj = -1;
        for (int i = t; i < r; ++i)
            for (int j = t; j < c; ++j)
                if (m[i][j] != 0 && (pi < 0 || abs(m[i][j]) < abs(m[pi][pj]))) { pi = i; pj = j; }
        if (pi < 0) break;
        std::swap(m[t], m[pi]);
        for (int i = 0; i < r; ++i) std::swap(m[i][t], m[i][pj]);

        bool clean = true;
        for (int i = t + 1; i < r; ++i) {
            if (m[i][t] == 0) continue;
            mpz_class q = m[i][t] / m[t][t];
            for (int j = t; j < c; ++j) m[i][j] -= q * m[t][j];
            if (m[i][t] != 0) clean = false;
        }
        for (int j = t + 1; j < c; ++j) {
            if (m[t][j] == 0) continue;
            mpz_class q = m[t][j] / m[t][t];
            for (int i = t; i < r; ++i) m[i][j] -= q * m[i][t];
            if (m[t][j] != 0) clean = false;
        }
        if (!clean) continue;

        // divisibility: pivot must divide every remaining entry
        bool fixed = false;
        for (int i = t + 1; i < r && !fixed; ++i)
            for (int j = t + 1; j < c && !fixed; ++j)
                if (m[i][j] % m[t][t] != 0) {
                    for (int jj = t; jj < c; ++jj) m[t][jj] += m[i][jj];
                    fixed = true;
                }
        if (fixed) continue;

        diag[t] = abs(m[t][t]);
        ++t;
    }
    return diag;
}

}  // namespace siltred
