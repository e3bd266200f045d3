#include "siltred/twoterm.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "siltred/algebra.hpp"
#include "siltred/error.hpp"

namespace siltred {

namespace {

void place_submatrix(QMat& big, const QMat& small, int r0, int c0) {
    for (int i = 0; i < small.rows(); ++i)
        for (int j = 0; j < small.cols(); ++j) big.at(r0 + i, c0 + j) = small.at(i, j);
}

// corner-coordinate description of all module maps ⊕P(src) -> ⊕P(dst)
struct CornerSpace {
    struct Unknown {
        int row_copy, col_copy;  // dst copy, src copy
        int corner_basis_index;  // global path-basis index
    };
    std::vector<Unknown> unknowns;
};

CornerSpace corner_space(const BoundQuiverAlgebra& alg, const std::vector<int>& src,
                         const std::vector<int>& dst) {
    CornerSpace cs;
    for (size_t i = 0; i < dst.size(); ++i)
        for (size_t j = 0; j < src.size(); ++j)
            for (int k : alg.corner(dst[i], src[j]))
                cs.unknowns.push_back({static_cast<int>(i), static_cast<int>(j), k});
    return cs;
}

}  // namespace

// ---------- construction ----------

TwoTermModel::TwoTermModel(BoundQuiverAlgebra alg, std::string name)
    : alg_(std::move(alg)), name_(std::move(name)) {
    int n = alg_.num_vertices();
    pbasis_.assign(n, {});
    ppos_.assign(alg_.dim(), -1);
    for (int k = 0; k < alg_.dim(); ++k) {
        int v = alg_.basis_src(k);
        ppos_[k] = static_cast<int>(pbasis_[v].size());
        pbasis_[v].push_back(k);
    }
    for (int v = 0; v < n; ++v) {
        Complex c;
        c.deg0 = {v};
        c.d.assign(1, std::vector<QVec>{});
        RegEntry e;
        e.cx = c;
        e.info = IndecInfo{"P(" + alg_.vertex_name(v) + ")", true, false};
        registry_.push_back(std::move(e));
    }
    for (int v = 0; v < n; ++v) {
        Complex c;
        c.deg1 = {v};
        RegEntry e;
        e.cx = c;
        e.info = IndecInfo{"SP(" + alg_.vertex_name(v) + ")", false, true};
        registry_.push_back(std::move(e));
    }
}

// ---------- path-coordinate machinery ----------

QMat TwoTermModel::element_matrix(const QVec& u, int src_vertex, int dst_vertex) const {
    QMat M(pdim(dst_vertex), pdim(src_vertex));
    for (int c = 0; c < pdim(src_vertex); ++c) {
        QVec p(alg_.dim());
        p[pbasis_[src_vertex][c]] = Rat(1);
        QVec up = alg_.mul(u, p);
        for (int k = 0; k < alg_.dim(); ++k) {
            if (up[k].is_zero()) continue;
            require(alg_.basis_src(k) == dst_vertex, ErrorKind::InvariantViolation,
                    "element matrix lands outside the target projective");
            M.at(ppos_[k], c) = up[k];
        }
    }
    return M;
}

QMat TwoTermModel::module_map_matrix(const std::vector<std::vector<QVec>>& entries,
                                     const std::vector<int>& src,
                                     const std::vector<int>& dst) const {
    std::vector<int> roff(dst.size() + 1, 0), coff(src.size() + 1, 0);
    for (size_t i = 0; i < dst.size(); ++i) roff[i + 1] = roff[i] + pdim(dst[i]);
    for (size_t j = 0; j < src.size(); ++j) coff[j + 1] = coff[j] + pdim(src[j]);
    QMat M(roff.back(), coff.back());
    for (size_t i = 0; i < dst.size(); ++i)
        for (size_t j = 0; j < src.size(); ++j) {
            if (entries.size() <= i || entries[i].size() <= j) continue;
            const QVec& u = entries[i][j];
            if (u.empty()) continue;
            place_submatrix(M, element_matrix(u, src[j], dst[i]), roff[i], coff[j]);
        }
    return M;
}

namespace {

// corner entries of a module-map Q-matrix: entry = image of the trivial path
std::vector<std::vector<QVec>> matrix_to_entries(const BoundQuiverAlgebra& alg,
                                                 const std::vector<std::vector<int>>& pbasis,
                                                 const QMat& F, const std::vector<int>& src,
                                                 const std::vector<int>& dst) {
    auto pd = [&](int v) { return static_cast<int>(pbasis[v].size()); };
    std::vector<int> roff(dst.size() + 1, 0), coff(src.size() + 1, 0);
    for (size_t i = 0; i < dst.size(); ++i) roff[i + 1] = roff[i] + pd(dst[i]);
    for (size_t j = 0; j < src.size(); ++j) coff[j + 1] = coff[j] + pd(src[j]);
    std::vector<std::vector<QVec>> entries(dst.size(), std::vector<QVec>(src.size(), QVec(alg.dim())));
    for (size_t j = 0; j < src.size(); ++j) {
        int triv_local = -1;
        for (int a = 0; a < pd(src[j]); ++a)
            if (pbasis[src[j]][a] == alg.trivial_path(src[j])) triv_local = a;
        require(triv_local >= 0, ErrorKind::InvariantViolation, "missing trivial path");
        for (size_t i = 0; i < dst.size(); ++i) {
            QVec u(alg.dim());
            for (int a = 0; a < pd(dst[i]); ++a) {
                const Rat& val = F.at(roff[i] + a, coff[j] + triv_local);
                if (!val.is_zero()) u[pbasis[dst[i]][a]] = val;
            }
            entries[i][j] = u;
        }
    }
    return entries;
}

// flat corner-coordinate vector of a module-map matrix
QVec corner_flat(const BoundQuiverAlgebra& alg, const std::vector<std::vector<int>>& pbasis,
                 const CornerSpace& cs, const QMat& F, const std::vector<int>& src,
                 const std::vector<int>& dst) {
    auto entries = matrix_to_entries(alg, pbasis, F, src, dst);
    QVec flat(cs.unknowns.size());
    for (size_t k = 0; k < cs.unknowns.size(); ++k) {
        const auto& u = cs.unknowns[k];
        flat[k] = entries[u.row_copy][u.col_copy][u.corner_basis_index];
    }
    return flat;
}

}  // namespace

// ---------- minimalization ----------

namespace {

// three-term complex c2 -> c1 -> c0 of projectives with algebra-element entries
struct Cx3 {
    std::vector<int> c2, c1, c0;
    std::vector<std::vector<QVec>> d2;  // [c1 row][c2 col]
    std::vector<std::vector<QVec>> d1;  // [c0 row][c1 col]
};

bool vec_zero(const QVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x.is_zero(); });
}

class Minimalizer {
public:
    Minimalizer(const BoundQuiverAlgebra& alg, Cx3 cx) : alg_(alg), cx_(std::move(cx)) {
        pad();
        check_complex();
    }

    Cx3 run() {
        while (eliminate_once()) check_complex();
        return cx_;
    }

private:
    const BoundQuiverAlgebra& alg_;
    Cx3 cx_;

    void pad() {
        cx_.d2.resize(cx_.c1.size());
        for (auto& row : cx_.d2) row.resize(cx_.c2.size(), QVec(alg_.dim()));
        for (auto& row : cx_.d2)
            for (auto& e : row)
                if (e.empty()) e = QVec(alg_.dim());
        cx_.d1.resize(cx_.c0.size());
        for (auto& row : cx_.d1) row.resize(cx_.c1.size(), QVec(alg_.dim()));
        for (auto& row : cx_.d1)
            for (auto& e : row)
                if (e.empty()) e = QVec(alg_.dim());
    }

    bool unit_entry(const QVec& u, int rv, int cv) const {
        if (rv != cv) return false;
        return !u[alg_.trivial_path(rv)].is_zero();
    }

    QVec corner_inverse(const QVec& u, int v) const {
        const std::vector<int>& cb = alg_.corner(v, v);
        QMat M(static_cast<int>(cb.size()), static_cast<int>(cb.size()));
        for (size_t s = 0; s < cb.size(); ++s) {
            QVec b(alg_.dim());
            b[cb[s]] = Rat(1);
            QVec prod = alg_.mul(u, b);
            for (size_t t = 0; t < cb.size(); ++t)
                M.at(static_cast<int>(t), static_cast<int>(s)) = prod[cb[t]];
        }
        QVec rhs(cb.size());
        for (size_t t = 0; t < cb.size(); ++t)
            rhs[t] = Rat(cb[t] == alg_.trivial_path(v) ? 1 : 0);
        SolveResult r = solve(M, rhs);
        require(r.consistent, ErrorKind::InvariantViolation, "corner unit has no inverse");
        QVec inv(alg_.dim());
        for (size_t s = 0; s < cb.size(); ++s) inv[cb[s]] = r.particular[s];
        QVec e(alg_.dim());
        e[alg_.trivial_path(v)] = Rat(1);
        require(alg_.mul(u, inv) == e && alg_.mul(inv, u) == e, ErrorKind::InvariantViolation,
                "corner inverse is one-sided");
        return inv;
    }

    void check_complex() const {
        for (size_t r = 0; r < cx_.c0.size(); ++r)
            for (size_t c = 0; c < cx_.c2.size(); ++c) {
                QVec acc(alg_.dim());
                for (size_t k = 0; k < cx_.c1.size(); ++k) {
                    QVec p = alg_.mul(cx_.d1[r][k], cx_.d2[k][c]);
                    for (int t = 0; t < alg_.dim(); ++t) acc[t] += p[t];
                }
                require(vec_zero(acc), ErrorKind::InvariantViolation,
                        "d1*d2 != 0 during minimalization");
            }
    }

    void eliminate_d2(int r, int c) {
        int v = cx_.c1[r];
        QVec u = cx_.d2[r][c];
        QVec uinv = corner_inverse(u, v);
        int n2 = static_cast<int>(cx_.c2.size()), n1 = static_cast<int>(cx_.c1.size()),
            n0 = static_cast<int>(cx_.c0.size());

        // clear row r of d2: col c' -= col c * (uinv * d2[r][c'])
        for (int c2 = 0; c2 < n2; ++c2) {
            if (c2 == c) continue;
            QVec lam = alg_.mul(uinv, cx_.d2[r][c2]);
            if (vec_zero(lam)) continue;
            for (int rr = 0; rr < n1; ++rr) {
                QVec sub = alg_.mul(cx_.d2[rr][c], lam);
                for (int t = 0; t < alg_.dim(); ++t) cx_.d2[rr][c2][t] -= sub[t];
            }
        }
        // clear col c of d2; adjust d1 accordingly
        std::vector<QVec> lambdas(n1);
        for (int r2 = 0; r2 < n1; ++r2)
            lambdas[r2] = r2 == r ? QVec(alg_.dim()) : alg_.mul(cx_.d2[r2][c], uinv);
        for (int r2 = 0; r2 < n1; ++r2) {
            if (r2 == r || vec_zero(lambdas[r2])) continue;
            for (int c2 = 0; c2 < n2; ++c2) {
                QVec sub = alg_.mul(lambdas[r2], cx_.d2[r][c2]);
                for (int t = 0; t < alg_.dim(); ++t) cx_.d2[r2][c2][t] -= sub[t];
            }
            for (int r0 = 0; r0 < n0; ++r0) {
                QVec add = alg_.mul(cx_.d1[r0][r2], lambdas[r2]);
                for (int t = 0; t < alg_.dim(); ++t) cx_.d1[r0][r][t] += add[t];
            }
        }
        for (int r0 = 0; r0 < n0; ++r0)
            require(vec_zero(cx_.d1[r0][r]), ErrorKind::InvariantViolation,
                    "stray d1 column after d2 elimination");
        // drop c2 copy c and c1 copy r
        cx_.c2.erase(cx_.c2.begin() + c);
        for (auto& row : cx_.d2) row.erase(row.begin() + c);
        cx_.c1.erase(cx_.c1.begin() + r);
        cx_.d2.erase(cx_.d2.begin() + r);
        for (auto& row : cx_.d1) row.erase(row.begin() + r);
    }

    void eliminate_d1(int r, int c) {
        int v = cx_.c0[r];
        QVec u = cx_.d1[r][c];
        QVec uinv = corner_inverse(u, v);
        int n2 = static_cast<int>(cx_.c2.size()), n1 = static_cast<int>(cx_.c1.size()),
            n0 = static_cast<int>(cx_.c0.size());

        // clear row r of d1 (col ops on c1); adjust d2: row c += lambda_{c1} * row c1
        std::vector<QVec> lambdas(n1);
        for (int c1 = 0; c1 < n1; ++c1)
            lambdas[c1] = c1 == c ? QVec(alg_.dim()) : alg_.mul(uinv, cx_.d1[r][c1]);
        for (int c1 = 0; c1 < n1; ++c1) {
            if (c1 == c || vec_zero(lambdas[c1])) continue;
            for (int r0 = 0; r0 < n0; ++r0) {
                QVec sub = alg_.mul(cx_.d1[r0][c], lambdas[c1]);
                for (int t = 0; t < alg_.dim(); ++t) cx_.d1[r0][c1][t] -= sub[t];
            }
            for (int c2 = 0; c2 < n2; ++c2) {
                QVec add = alg_.mul(lambdas[c1], cx_.d2[c1][c2]);
                for (int t = 0; t < alg_.dim(); ++t) cx_.d2[c][c2][t] += add[t];
            }
        }
        // clear col c of d1 (row ops on c0)
        for (int r2 = 0; r2 < n0; ++r2) {
            if (r2 == r) continue;
            QVec lam = alg_.mul(cx_.d1[r2][c], uinv);
            if (vec_zero(lam)) continue;
            for (int c1 = 0; c1 < n1; ++c1) {
                QVec sub = alg_.mul(lam, cx_.d1[r][c1]);
                for (int t = 0; t < alg_.dim(); ++t) cx_.d1[r2][c1][t] -= sub[t];
            }
        }
        for (int c2 = 0; c2 < n2; ++c2)
            require(vec_zero(cx_.d2[c][c2]), ErrorKind::InvariantViolation,
                    "stray d2 row after d1 elimination");
        // drop c0 copy r and c1 copy c
        cx_.c0.erase(cx_.c0.begin() + r);
        cx_.d1.erase(cx_.d1.begin() + r);
        cx_.c1.erase(cx_.c1.begin() + c);
        cx_.d2.erase(cx_.d2.begin() + c);
        for (auto& row : cx_.d1) row.erase(row.begin() + c);
    }

    bool eliminate_once() {
        for (size_t r = 0; r < cx_.c1.size(); ++r)
            for (size_t c = 0; c < cx_.c2.size(); ++c)
                if (unit_entry(cx_.d2[r][c], cx_.c1[r], cx_.c2[c])) {
                    eliminate_d2(static_cast<int>(r), static_cast<int>(c));
                    return true;
                }
        for (size_t r = 0; r < cx_.c0.size(); ++r)
            for (size_t c = 0; c < cx_.c1.size(); ++c)
                if (unit_entry(cx_.d1[r][c], cx_.c0[r], cx_.c1[c])) {
                    eliminate_d1(static_cast<int>(r), static_cast<int>(c));
                    return true;
                }
        return false;
    }
};

Cx3 as_cx3(const TwoTermModel::Complex& c) {
    Cx3 x;
    x.c1 = c.deg1;
    x.c0 = c.deg0;
    x.d1 = c.d;
    return x;
}

TwoTermModel::Complex cx3_lower_part(const Cx3& x) {
    TwoTermModel::Complex c;
    c.deg1 = x.c1;
    c.deg0 = x.c0;
    c.d = x.d1;
    return c;
}

// canonical copy order: sort copies by vertex, permuting the differential
TwoTermModel::Complex normalize_copy_order(const TwoTermModel::Complex& c, int dim) {
    std::vector<int> p1(c.deg1.size()), p0(c.deg0.size());
    for (size_t i = 0; i < p1.size(); ++i) p1[i] = static_cast<int>(i);
    for (size_t i = 0; i < p0.size(); ++i) p0[i] = static_cast<int>(i);
    std::stable_sort(p1.begin(), p1.end(), [&](int a, int b) { return c.deg1[a] < c.deg1[b]; });
    std::stable_sort(p0.begin(), p0.end(), [&](int a, int b) { return c.deg0[a] < c.deg0[b]; });
    TwoTermModel::Complex out;
    for (int i : p1) out.deg1.push_back(c.deg1[i]);
    for (int i : p0) out.deg0.push_back(c.deg0[i]);
    out.d.assign(out.deg0.size(), std::vector<QVec>(out.deg1.size(), QVec(dim)));
    for (size_t r = 0; r < out.deg0.size(); ++r)
        for (size_t j = 0; j < out.deg1.size(); ++j) {
            size_t orow = p0[r], ocol = p1[j];
            if (orow < c.d.size() && ocol < c.d[orow].size() && !c.d[orow][ocol].empty())
                out.d[r][j] = c.d[orow][ocol];
        }
    return out;
}

}  // namespace

TwoTermModel::Complex TwoTermModel::minimalized(const Complex& c) const {
    Minimalizer mz(alg_, as_cx3(c));
    return normalize_copy_order(cx3_lower_part(mz.run()), alg_.dim());
}

// ---------- hom / ext spaces ----------

TwoTermModel::HomData& TwoTermModel::hom_data(ObjId x, ObjId y) {
    auto key = std::make_pair(x, y);
    auto it = hom_cache_.find(key);
    if (it != hom_cache_.end()) return it->second;

    Complex X = registry_[x].cx;
    Complex Y = registry_[y].cx;
    CornerSpace u1 = corner_space(alg_, X.deg1, Y.deg1);
    CornerSpace u0 = corner_space(alg_, X.deg0, Y.deg0);
    int n1 = static_cast<int>(u1.unknowns.size());
    int n0 = static_cast<int>(u0.unknowns.size());

    QMat dX = module_map_matrix(X.d, X.deg1, X.deg0);
    QMat dY = module_map_matrix(Y.d, Y.deg1, Y.deg0);

    auto unknown_matrix = [&](const CornerSpace& cs, int k, const std::vector<int>& src,
                              const std::vector<int>& dst) {
        const auto& u = cs.unknowns[k];
        std::vector<std::vector<QVec>> entries(dst.size(), std::vector<QVec>(src.size()));
        QVec e(alg_.dim());
        e[u.corner_basis_index] = Rat(1);
        entries[u.row_copy][u.col_copy] = e;
        return module_map_matrix(entries, src, dst);
    };

    int eq_rows = dY.rows() * dX.cols();
    QMat A(eq_rows, n1 + n0);
    for (int k = 0; k < n1; ++k) {
        QMat M = dY * unknown_matrix(u1, k, X.deg1, Y.deg1);
        int idx = 0;
        for (int i = 0; i < M.rows(); ++i)
            for (int j = 0; j < M.cols(); ++j) A.at(idx++, k) = M.at(i, j);
    }
    for (int k = 0; k < n0; ++k) {
        QMat M = unknown_matrix(u0, k, X.deg0, Y.deg0) * dX;
        int idx = 0;
        for (int i = 0; i < M.rows(); ++i)
            for (int j = 0; j < M.cols(); ++j) A.at(idx++, n1 + k) = -M.at(i, j);
    }
    std::vector<QVec> sol = A.kernel_basis();

    // homotopies h : X0 -> Y1 give (f1, f0) = (h∘dX, dY∘h)
    CornerSpace uh = corner_space(alg_, X.deg0, Y.deg1);
    std::vector<QVec> htpy;
    for (size_t k = 0; k < uh.unknowns.size(); ++k) {
        QMat H = unknown_matrix(uh, static_cast<int>(k), X.deg0, Y.deg1);
        QVec f1 = corner_flat(alg_, pbasis_, u1, H * dX, X.deg1, Y.deg1);
        QVec f0 = corner_flat(alg_, pbasis_, u0, dY * H, X.deg0, Y.deg0);
        f1.insert(f1.end(), f0.begin(), f0.end());
        htpy.push_back(std::move(f1));
    }

    HomData hd;
    hd.flat_size = n1 + n0;
    hd.htpy_span = row_space_basis(htpy);
    std::vector<QVec> acc = hd.htpy_span;
    for (const QVec& s : sol) {
        if (in_span(acc, s)) continue;
        acc.push_back(s);
        acc = row_space_basis(acc);
        hd.rep_flat.push_back(s);
    }
    hd.dim = static_cast<int>(hd.rep_flat.size());
    for (const QVec& s : hd.rep_flat) {
        std::vector<std::vector<QVec>> e1(Y.deg1.size(),
                                          std::vector<QVec>(X.deg1.size(), QVec(alg_.dim())));
        std::vector<std::vector<QVec>> e0(Y.deg0.size(),
                                          std::vector<QVec>(X.deg0.size(), QVec(alg_.dim())));
        for (int k = 0; k < n1; ++k)
            if (!s[k].is_zero())
                e1[u1.unknowns[k].row_copy][u1.unknowns[k].col_copy][u1.unknowns[k].corner_basis_index] =
                    s[k];
        for (int k = 0; k < n0; ++k)
            if (!s[n1 + k].is_zero())
                e0[u0.unknowns[k].row_copy][u0.unknowns[k].col_copy][u0.unknowns[k].corner_basis_index] =
                    s[n1 + k];
        hd.reps.push_back(
            {module_map_matrix(e1, X.deg1, Y.deg1), module_map_matrix(e0, X.deg0, Y.deg0)});
    }
    return hom_cache_[key] = std::move(hd);
}

TwoTermModel::ExtData& TwoTermModel::ext_data(ObjId x, ObjId y) {
    auto key = std::make_pair(x, y);
    auto it = ext_cache_.find(key);
    if (it != ext_cache_.end()) return it->second;

    Complex X = registry_[x].cx;
    Complex Y = registry_[y].cx;
    CornerSpace ug = corner_space(alg_, X.deg1, Y.deg0);
    int ng = static_cast<int>(ug.unknowns.size());

    QMat dX = module_map_matrix(X.d, X.deg1, X.deg0);
    QMat dY = module_map_matrix(Y.d, Y.deg1, Y.deg0);

    auto unknown_matrix = [&](const CornerSpace& cs, int k, const std::vector<int>& src,
                              const std::vector<int>& dst) {
        const auto& u = cs.unknowns[k];
        std::vector<std::vector<QVec>> entries(dst.size(), std::vector<QVec>(src.size()));
        QVec e(alg_.dim());
        e[u.corner_basis_index] = Rat(1);
        entries[u.row_copy][u.col_copy] = e;
        return module_map_matrix(entries, src, dst);
    };

    std::vector<QVec> span;
    CornerSpace uh1 = corner_space(alg_, X.deg1, Y.deg1);
    for (size_t k = 0; k < uh1.unknowns.size(); ++k) {
        QMat H = unknown_matrix(uh1, static_cast<int>(k), X.deg1, Y.deg1);
        span.push_back(corner_flat(alg_, pbasis_, ug, dY * H, X.deg1, Y.deg0));
    }
    CornerSpace uh0 = corner_space(alg_, X.deg0, Y.deg0);
    for (size_t k = 0; k < uh0.unknowns.size(); ++k) {
        QMat H = unknown_matrix(uh0, static_cast<int>(k), X.deg0, Y.deg0);
        span.push_back(corner_flat(alg_, pbasis_, ug, H * dX, X.deg1, Y.deg0));
    }

    ExtData ed;
    ed.flat_size = ng;
    ed.span = row_space_basis(span);
    for (int t : complement_coords(ed.span, ng)) {
        QVec rep(ng);
        rep[t] = Rat(1);
        ed.reps.push_back(rep);
    }
    ed.dim = static_cast<int>(ed.reps.size());
    return ext_cache_[key] = std::move(ed);
}

int TwoTermModel::hom_dim(ObjId x, ObjId y) { return hom_data(x, y).dim; }
int TwoTermModel::ext_dim(ObjId x, ObjId y) { return ext_data(x, y).dim; }

QVec TwoTermModel::hom_class_coords(ObjId x, ObjId y, const QVec& flat) {
    HomData& hd = hom_data(x, y);
    std::vector<QVec> basis = hd.rep_flat;
    for (const QVec& h : hd.htpy_span) basis.push_back(h);
    auto coords = coordinates_in(basis, flat);
    require(coords.has_value(), ErrorKind::InvariantViolation,
            "chain map does not lie in the hom space");
    QVec out(hd.dim);
    for (int i = 0; i < hd.dim; ++i) out[i] = (*coords)[i];
    return out;
}

QVec TwoTermModel::compose_basis(ObjId x, ObjId y, ObjId z, int i, int j) {
    auto key = std::make_tuple(x, y, z);
    auto it = comp_cache_.find(key);
    if (it == comp_cache_.end()) {
        HomData& f = hom_data(x, y);
        HomData& g = hom_data(y, z);
        Complex X = registry_[x].cx;
        Complex Z = registry_[z].cx;
        CornerSpace u1 = corner_space(alg_, X.deg1, Z.deg1);
        CornerSpace u0 = corner_space(alg_, X.deg0, Z.deg0);
        std::vector<std::vector<QVec>> table(f.dim, std::vector<QVec>(g.dim));
        for (int a = 0; a < f.dim; ++a)
            for (int b = 0; b < g.dim; ++b) {
                QVec c1 = corner_flat(alg_, pbasis_, u1, g.reps[b].first * f.reps[a].first, X.deg1,
                                      Z.deg1);
                QVec c0 = corner_flat(alg_, pbasis_, u0, g.reps[b].second * f.reps[a].second,
                                      X.deg0, Z.deg0);
                c1.insert(c1.end(), c0.begin(), c0.end());
                table[a][b] = hom_class_coords(x, z, c1);
            }
        it = comp_cache_.emplace(key, std::move(table)).first;
    }
    return it->second[i][j];
}

QVec TwoTermModel::id_coords(ObjId x) {
    Complex X = registry_[x].cx;
    CornerSpace u1 = corner_space(alg_, X.deg1, X.deg1);
    CornerSpace u0 = corner_space(alg_, X.deg0, X.deg0);
    QVec flat(u1.unknowns.size() + u0.unknowns.size());
    for (size_t k = 0; k < u1.unknowns.size(); ++k) {
        const auto& u = u1.unknowns[k];
        if (u.row_copy == u.col_copy &&
            u.corner_basis_index == alg_.trivial_path(X.deg1[u.row_copy]))
            flat[k] = Rat(1);
    }
    for (size_t k = 0; k < u0.unknowns.size(); ++k) {
        const auto& u = u0.unknowns[k];
        if (u.row_copy == u.col_copy &&
            u.corner_basis_index == alg_.trivial_path(X.deg0[u.row_copy]))
            flat[u1.unknowns.size() + k] = Rat(1);
    }
    return hom_class_coords(x, x, flat);
}

// ---------- direct sums, middles, cones ----------

TwoTermModel::Complex TwoTermModel::direct_sum(const std::vector<ObjId>& copies) const {
    Complex out;
    for (ObjId id : copies) {
        const Complex& c = registry_[id].cx;
        size_t r0 = out.deg0.size(), c0 = out.deg1.size();
        out.deg1.insert(out.deg1.end(), c.deg1.begin(), c.deg1.end());
        out.deg0.insert(out.deg0.end(), c.deg0.begin(), c.deg0.end());
        out.d.resize(out.deg0.size());
        for (auto& row : out.d) row.resize(out.deg1.size(), QVec(alg_.dim()));
        for (size_t r = 0; r < c.deg0.size(); ++r)
            for (size_t j = 0; j < c.deg1.size(); ++j)
                if (r < c.d.size() && j < c.d[r].size() && !c.d[r][j].empty())
                    out.d[r0 + r][c0 + j] = c.d[r][j];
    }
    out.d.resize(out.deg0.size());
    for (auto& row : out.d) row.resize(out.deg1.size(), QVec(alg_.dim()));
    return out;
}

Obj TwoTermModel::middle(const ExtClass& xi) {
    std::string ckey;
    for (const Rat& r : xi.coords) ckey += r.str() + ",";
    auto cache_key = std::make_tuple(xi.c, xi.a, ckey);
    auto hit = middle_cache_.find(cache_key);
    if (hit != middle_cache_.end()) return hit->second;

    auto ccopies = xi.c.copies();
    auto acopies = xi.a.copies();
    Complex A = direct_sum(acopies);
    Complex C = direct_sum(ccopies);

    std::vector<std::vector<QVec>> g(A.deg0.size(),
                                     std::vector<QVec>(C.deg1.size(), QVec(alg_.dim())));
    std::vector<int> aoff0(acopies.size() + 1, 0);
    for (size_t j = 0; j < acopies.size(); ++j)
        aoff0[j + 1] = aoff0[j] + static_cast<int>(registry_[acopies[j]].cx.deg0.size());
    std::vector<int> coff1(ccopies.size() + 1, 0);
    for (size_t i = 0; i < ccopies.size(); ++i)
        coff1[i + 1] = coff1[i] + static_cast<int>(registry_[ccopies[i]].cx.deg1.size());

    int off = 0;
    for (size_t ci = 0; ci < ccopies.size(); ++ci)
        for (size_t aj = 0; aj < acopies.size(); ++aj) {
            ExtData& ed = ext_data(ccopies[ci], acopies[aj]);
            CornerSpace ug = corner_space(alg_, registry_[ccopies[ci]].cx.deg1,
                                          registry_[acopies[aj]].cx.deg0);
            for (int t = 0; t < ed.dim; ++t) {
                Rat coef = xi.coords.at(off + t);
                if (coef.is_zero()) continue;
                const QVec& rep = ed.reps[t];
                for (size_t k = 0; k < ug.unknowns.size(); ++k) {
                    if (rep[k].is_zero()) continue;
                    const auto& un = ug.unknowns[k];
                    g[aoff0[aj] + un.row_copy][coff1[ci] + un.col_copy][un.corner_basis_index] +=
                        coef * rep[k];
                }
            }
            off += ed.dim;
        }
    require(off == static_cast<int>(xi.coords.size()), ErrorKind::InvariantViolation,
            "extension class coordinate length mismatch");

    Complex E;
    E.deg1 = A.deg1;
    E.deg1.insert(E.deg1.end(), C.deg1.begin(), C.deg1.end());
    E.deg0 = A.deg0;
    E.deg0.insert(E.deg0.end(), C.deg0.begin(), C.deg0.end());
    E.d.assign(E.deg0.size(), std::vector<QVec>(E.deg1.size(), QVec(alg_.dim())));
    for (size_t r = 0; r < A.deg0.size(); ++r) {
        for (size_t j = 0; j < A.deg1.size(); ++j) E.d[r][j] = A.d[r][j];
        for (size_t j = 0; j < C.deg1.size(); ++j) E.d[r][A.deg1.size() + j] = g[r][j];
    }
    for (size_t r = 0; r < C.deg0.size(); ++r)
        for (size_t j = 0; j < C.deg1.size(); ++j)
            E.d[A.deg0.size() + r][A.deg1.size() + j] = C.d[r][j];

    return middle_cache_[cache_key] = register_complex(E);
}

std::pair<QMat, QMat> TwoTermModel::blockmap_chain_matrices(const BlockMap& f) {
    auto sc = f.src.copies(), dc = f.dst.copies();
    Complex X = direct_sum(sc), B = direct_sum(dc);
    auto dims = [&](const std::vector<int>& verts) {
        int s = 0;
        for (int v : verts) s += pdim(v);
        return s;
    };
    QMat F1(dims(B.deg1), dims(X.deg1));
    QMat F0(dims(B.deg0), dims(X.deg0));
    auto offsets = [&](const std::vector<ObjId>& ids, bool deg1) {
        std::vector<int> off(ids.size() + 1, 0);
        for (size_t i = 0; i < ids.size(); ++i)
            off[i + 1] = off[i] + dims(deg1 ? registry_[ids[i]].cx.deg1 : registry_[ids[i]].cx.deg0);
        return off;
    };
    auto so1 = offsets(sc, true), so0 = offsets(sc, false);
    auto do1 = offsets(dc, true), do0 = offsets(dc, false);
    for (size_t i = 0; i < sc.size(); ++i)
        for (size_t j = 0; j < dc.size(); ++j) {
            const QVec& coords = f.blocks[i][j];
            HomData& hd = hom_data(sc[i], dc[j]);
            for (size_t t = 0; t < coords.size(); ++t) {
                if (coords[t].is_zero()) continue;
                const auto& rep = hd.reps[t];
                for (int a = 0; a < rep.first.rows(); ++a)
                    for (int b = 0; b < rep.first.cols(); ++b)
                        if (!rep.first.at(a, b).is_zero())
                            F1.at(do1[j] + a, so1[i] + b) += coords[t] * rep.first.at(a, b);
                for (int a = 0; a < rep.second.rows(); ++a)
                    for (int b = 0; b < rep.second.cols(); ++b)
                        if (!rep.second.at(a, b).is_zero())
                            F0.at(do0[j] + a, so0[i] + b) += coords[t] * rep.second.at(a, b);
            }
        }
    return {F1, F0};
}

std::optional<Obj> TwoTermModel::cone_of_map(const BlockMap& f) {
    auto [F1, F0] = blockmap_chain_matrices(f);
    Complex X = direct_sum(f.src.copies());
    Complex B = direct_sum(f.dst.copies());
    auto e1 = matrix_to_entries(alg_, pbasis_, F1, X.deg1, B.deg1);
    auto e0 = matrix_to_entries(alg_, pbasis_, F0, X.deg0, B.deg0);

    // cone: X1 -> X0 ⊕ B1 -> B0 with d2 = (dX ; F1), d1 = (-F0 | dB)
    Cx3 cone;
    cone.c2 = X.deg1;
    cone.c1 = X.deg0;
    cone.c1.insert(cone.c1.end(), B.deg1.begin(), B.deg1.end());
    cone.c0 = B.deg0;
    cone.d2.assign(cone.c1.size(), std::vector<QVec>(cone.c2.size(), QVec(alg_.dim())));
    cone.d1.assign(cone.c0.size(), std::vector<QVec>(cone.c1.size(), QVec(alg_.dim())));
    for (size_t r = 0; r < X.deg0.size(); ++r)
        for (size_t c = 0; c < X.deg1.size(); ++c) cone.d2[r][c] = X.d[r][c];
    for (size_t r = 0; r < B.deg1.size(); ++r)
        for (size_t c = 0; c < X.deg1.size(); ++c) cone.d2[X.deg0.size() + r][c] = e1[r][c];
    for (size_t r = 0; r < B.deg0.size(); ++r) {
        for (size_t c = 0; c < X.deg0.size(); ++c) {
            QVec v = e0[r][c];
            for (auto& t : v) t = -t;
            cone.d1[r][c] = v;
        }
        for (size_t c = 0; c < B.deg1.size(); ++c) cone.d1[r][X.deg0.size() + c] = B.d[r][c];
    }
    Minimalizer mz(alg_, std::move(cone));
    Cx3 red = mz.run();
    if (!red.c2.empty()) return std::nullopt;  // leaves the two-term window
    return register_complex(cx3_lower_part(red));
}

std::optional<Obj> TwoTermModel::cocone_of_map(const BlockMap& f) {
    auto [G1, G0] = blockmap_chain_matrices(f);
    Complex B = direct_sum(f.src.copies());
    Complex X = direct_sum(f.dst.copies());
    auto e1 = matrix_to_entries(alg_, pbasis_, G1, B.deg1, X.deg1);
    auto e0 = matrix_to_entries(alg_, pbasis_, G0, B.deg0, X.deg0);

    // cocone: B1 -> B0 ⊕ X1 -> X0 with d2 = (dB ; -G1), d1 = (G0 | dX)
    Cx3 cc;
    cc.c2 = B.deg1;
    cc.c1 = B.deg0;
    cc.c1.insert(cc.c1.end(), X.deg1.begin(), X.deg1.end());
    cc.c0 = X.deg0;
    cc.d2.assign(cc.c1.size(), std::vector<QVec>(cc.c2.size(), QVec(alg_.dim())));
    cc.d1.assign(cc.c0.size(), std::vector<QVec>(cc.c1.size(), QVec(alg_.dim())));
    for (size_t r = 0; r < B.deg0.size(); ++r)
        for (size_t c = 0; c < B.deg1.size(); ++c) cc.d2[r][c] = B.d[r][c];
    for (size_t r = 0; r < X.deg1.size(); ++r)
        for (size_t c = 0; c < B.deg1.size(); ++c) {
            QVec v = e1[r][c];
            for (auto& t : v) t = -t;
            cc.d2[B.deg0.size() + r][c] = v;
        }
    for (size_t r = 0; r < X.deg0.size(); ++r) {
        for (size_t c = 0; c < B.deg0.size(); ++c) cc.d1[r][c] = e0[r][c];
        for (size_t c = 0; c < X.deg1.size(); ++c) cc.d1[r][B.deg0.size() + c] = X.d[r][c];
    }
    Minimalizer mz(alg_, std::move(cc));
    Cx3 red = mz.run();
    if (!red.c0.empty()) return std::nullopt;  // stray lowest degree survives
    Complex result;
    result.deg1 = red.c2;
    result.deg0 = red.c1;
    result.d = red.d2;
    return register_complex(result);
}

// ---------- decomposition and registration ----------

Obj TwoTermModel::register_complex(const Complex& c) { return decompose_and_register(c); }

namespace {

std::string complex_key(const TwoTermModel::Complex& c) {
    std::string key;
    for (int v : c.deg1) key += std::to_string(v) + ",";
    key += "|";
    for (int v : c.deg0) key += std::to_string(v) + ",";
    key += "|";
    for (const auto& row : c.d)
        for (const QVec& e : row) {
            for (const Rat& x : e) key += x.str() + ",";
            key += ";";
        }
    return key;
}

}  // namespace

Obj TwoTermModel::decompose_and_register(const Complex& raw) {
    Complex m = minimalized(raw);
    if (m.deg1.empty() && m.deg0.empty()) return Obj::zero();
    return decompose_minimal(m);
}

Obj TwoTermModel::decompose_minimal(const Complex& m) {
    std::string key = complex_key(m);
    auto hit = decompose_memo_.find(key);
    if (hit != decompose_memo_.end()) return hit->second;

    // split into connected components of the copy graph first
    int n1 = static_cast<int>(m.deg1.size()), n0 = static_cast<int>(m.deg0.size());
    std::vector<int> comp(n1 + n0);
    for (int i = 0; i < n1 + n0; ++i) comp[i] = i;
    std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
    for (int r = 0; r < n0; ++r)
        for (int c = 0; c < n1; ++c) {
            bool nz = false;
            for (const Rat& x : m.d[r][c])
                if (!x.is_zero()) nz = true;
            if (nz) comp[find(c)] = find(n1 + r);
        }
    std::map<int, std::vector<int>> groups1, groups0;
    for (int c = 0; c < n1; ++c) groups1[find(c)].push_back(c);
    for (int r = 0; r < n0; ++r) groups0[find(n1 + r)].push_back(r);
    std::set<int> roots;
    for (int i = 0; i < n1 + n0; ++i) roots.insert(find(i));

    Obj out;
    if (roots.size() > 1) {
        for (int root : roots) {
            Complex piece;
            for (int c : groups1[root]) piece.deg1.push_back(m.deg1[c]);
            for (int r : groups0[root]) piece.deg0.push_back(m.deg0[r]);
            piece.d.assign(piece.deg0.size(), std::vector<QVec>(piece.deg1.size(), QVec(alg_.dim())));
            for (size_t rr = 0; rr < groups0[root].size(); ++rr)
                for (size_t cc = 0; cc < groups1[root].size(); ++cc)
                    piece.d[rr][cc] = m.d[groups0[root][rr]][groups1[root][cc]];
            out = out.plus(decompose_minimal(normalize_copy_order(piece, alg_.dim())));
        }
        return decompose_memo_[key] = out;
    }
    out = decompose_connected(m);
    return decompose_memo_[key] = out;
}

Obj TwoTermModel::decompose_connected(const Complex& m) {
    CornerSpace u1 = corner_space(alg_, m.deg1, m.deg1);
    CornerSpace u0 = corner_space(alg_, m.deg0, m.deg0);
    int n1 = static_cast<int>(u1.unknowns.size());
    int n0 = static_cast<int>(u0.unknowns.size());
    QMat dX = module_map_matrix(m.d, m.deg1, m.deg0);

    auto unknown_matrix = [&](const CornerSpace& cs, int k, const std::vector<int>& src,
                              const std::vector<int>& dst) {
        const auto& u = cs.unknowns[k];
        std::vector<std::vector<QVec>> entries(dst.size(), std::vector<QVec>(src.size()));
        QVec e(alg_.dim());
        e[u.corner_basis_index] = Rat(1);
        entries[u.row_copy][u.col_copy] = e;
        return module_map_matrix(entries, src, dst);
    };

    // chain endomorphisms without homotopy quotient: dX f1 = f0 dX
    QMat A(dX.rows() * dX.cols(), n1 + n0);
    for (int k = 0; k < n1; ++k) {
        QMat M = dX * unknown_matrix(u1, k, m.deg1, m.deg1);
        int idx = 0;
        for (int i = 0; i < M.rows(); ++i)
            for (int j = 0; j < M.cols(); ++j) A.at(idx++, k) = M.at(i, j);
    }
    for (int k = 0; k < n0; ++k) {
        QMat M = unknown_matrix(u0, k, m.deg0, m.deg0) * dX;
        int idx = 0;
        for (int i = 0; i < M.rows(); ++i)
            for (int j = 0; j < M.cols(); ++j) A.at(idx++, n1 + k) = -M.at(i, j);
    }
    std::vector<QVec> endo = A.kernel_basis();
    int ed = static_cast<int>(endo.size());

    auto matrices_of = [&](const QVec& flat) {
        std::vector<std::vector<QVec>> e1(m.deg1.size(),
                                          std::vector<QVec>(m.deg1.size(), QVec(alg_.dim())));
        std::vector<std::vector<QVec>> e0(m.deg0.size(),
                                          std::vector<QVec>(m.deg0.size(), QVec(alg_.dim())));
        for (int k = 0; k < n1; ++k)
            if (!flat[k].is_zero())
                e1[u1.unknowns[k].row_copy][u1.unknowns[k].col_copy][u1.unknowns[k].corner_basis_index] =
                    flat[k];
        for (int k = 0; k < n0; ++k)
            if (!flat[n1 + k].is_zero())
                e0[u0.unknowns[k].row_copy][u0.unknowns[k].col_copy][u0.unknowns[k].corner_basis_index] =
                    flat[n1 + k];
        return std::make_pair(module_map_matrix(e1, m.deg1, m.deg1),
                              module_map_matrix(e0, m.deg0, m.deg0));
    };

    std::vector<std::pair<QMat, QMat>> emat;
    for (const QVec& b : endo) emat.push_back(matrices_of(b));

    auto flat_of_pair = [&](const QMat& M1, const QMat& M0) {
        QVec f1 = corner_flat(alg_, pbasis_, u1, M1, m.deg1, m.deg1);
        QVec f0 = corner_flat(alg_, pbasis_, u0, M0, m.deg0, m.deg0);
        f1.insert(f1.end(), f0.begin(), f0.end());
        return f1;
    };

    std::vector<std::vector<QVec>> mult(ed, std::vector<QVec>(ed));
    for (int i = 0; i < ed; ++i)
        for (int j = 0; j < ed; ++j) {
            QVec flat = flat_of_pair(emat[i].first * emat[j].first, emat[i].second * emat[j].second);
            auto coords = coordinates_in(endo, flat);
            require(coords.has_value(), ErrorKind::InvariantViolation,
                    "endomorphism space not closed under composition");
            mult[i][j] = *coords;
        }
    QVec unit_flat(n1 + n0);
    for (size_t k = 0; k < u1.unknowns.size(); ++k) {
        const auto& u = u1.unknowns[k];
        if (u.row_copy == u.col_copy &&
            u.corner_basis_index == alg_.trivial_path(m.deg1[u.row_copy]))
            unit_flat[k] = Rat(1);
    }
    for (size_t k = 0; k < u0.unknowns.size(); ++k) {
        const auto& u = u0.unknowns[k];
        if (u.row_copy == u.col_copy &&
            u.corner_basis_index == alg_.trivial_path(m.deg0[u.row_copy]))
            unit_flat[n1 + k] = Rat(1);
    }
    auto unit_coords = coordinates_in(endo, unit_flat);
    require(unit_coords.has_value(), ErrorKind::InvariantViolation, "identity not a chain map");
    FinDimAlgebra E(ed, std::move(mult), *unit_coords);
    std::vector<QVec> idems = E.primitive_idempotents();

    Obj out;
    for (const QVec& ec : idems) {
        QVec flat(n1 + n0);
        for (int k = 0; k < ed; ++k)
            if (!ec[k].is_zero())
                for (int t = 0; t < n1 + n0; ++t) flat[t] += ec[k] * endo[k][t];
        auto [E1, E0] = matrices_of(flat);

        struct Pres {
            std::vector<int> vertices;
            QMat psi;
        };
        auto present = [&](const QMat& Emat, const std::vector<int>& verts) {
            std::vector<QVec> gens;
            for (int c = 0; c < Emat.cols(); ++c) {
                QVec col(Emat.rows());
                for (int r2 = 0; r2 < Emat.rows(); ++r2) col[r2] = Emat.at(r2, c);
                gens.push_back(std::move(col));
            }
            std::vector<QVec> N = row_space_basis(gens);
            std::vector<int> coffv(verts.size() + 1, 0);
            for (size_t i = 0; i < verts.size(); ++i) coffv[i + 1] = coffv[i] + pdim(verts[i]);
            auto elt_times = [&](const QVec& nvec, int pathidx) {
                QVec out2(nvec.size());
                QVec u(alg_.dim());
                u[pathidx] = Rat(1);
                for (size_t copy = 0; copy < verts.size(); ++copy) {
                    QVec comp(alg_.dim());
                    for (int a = 0; a < pdim(verts[copy]); ++a)
                        comp[pbasis_[verts[copy]][a]] = nvec[coffv[copy] + a];
                    QVec prod = alg_.mul(comp, u);
                    for (int k = 0; k < alg_.dim(); ++k) {
                        if (prod[k].is_zero()) continue;
                        require(alg_.basis_src(k) == verts[copy], ErrorKind::InvariantViolation,
                                "module element escaped its projective");
                        out2[coffv[copy] + ppos_[k]] = prod[k];
                    }
                }
                return out2;
            };
            std::vector<QVec> nrad;
            for (const QVec& nvec : N)
                for (int k = 0; k < alg_.dim(); ++k)
                    if (alg_.basis_len(k) >= 1) nrad.push_back(elt_times(nvec, k));
            nrad = row_space_basis(nrad);

            Pres pres;
            std::vector<QVec> acc = nrad;
            std::vector<QVec> chosen;
            for (int v = 0; v < alg_.num_vertices(); ++v) {
                for (const QVec& nvec : N) {
                    QVec nv = elt_times(nvec, alg_.trivial_path(v));
                    if (in_span(acc, nv)) continue;
                    acc.push_back(nv);
                    acc = row_space_basis(acc);
                    pres.vertices.push_back(v);
                    chosen.push_back(nv);
                }
            }
            std::vector<int> noff(pres.vertices.size() + 1, 0);
            for (size_t s = 0; s < pres.vertices.size(); ++s)
                noff[s + 1] = noff[s] + pdim(pres.vertices[s]);
            QMat psi(Emat.rows(), noff.back());
            for (size_t s = 0; s < pres.vertices.size(); ++s)
                for (int a = 0; a < pdim(pres.vertices[s]); ++a) {
                    QVec img = elt_times(chosen[s], pbasis_[pres.vertices[s]][a]);
                    for (int r2 = 0; r2 < psi.rows(); ++r2) psi.at(r2, noff[s] + a) = img[r2];
                }
            require(psi.rank() == static_cast<int>(N.size()) &&
                        static_cast<int>(N.size()) == noff.back(),
                    ErrorKind::InvariantViolation, "image presentation is not an isomorphism");
            pres.psi = std::move(psi);
            return pres;
        };

        Pres p1 = present(E1, m.deg1);
        Pres p0 = present(E0, m.deg0);

        CornerSpace uD = corner_space(alg_, p1.vertices, p0.vertices);
        int nD = static_cast<int>(uD.unknowns.size());
        QMat target = dX * p1.psi;
        QMat sys(p0.psi.rows() * p1.psi.cols(), nD);
        for (int k = 0; k < nD; ++k) {
            const auto& u = uD.unknowns[k];
            std::vector<std::vector<QVec>> entries(p0.vertices.size(),
                                                   std::vector<QVec>(p1.vertices.size()));
            QVec e(alg_.dim());
            e[u.corner_basis_index] = Rat(1);
            entries[u.row_copy][u.col_copy] = e;
            QMat M = p0.psi * module_map_matrix(entries, p1.vertices, p0.vertices);
            int idx = 0;
            for (int i2 = 0; i2 < M.rows(); ++i2)
                for (int j2 = 0; j2 < M.cols(); ++j2) sys.at(idx++, k) = M.at(i2, j2);
        }
        QVec rhs(p0.psi.rows() * p1.psi.cols());
        {
            int idx = 0;
            for (int i2 = 0; i2 < target.rows(); ++i2)
                for (int j2 = 0; j2 < target.cols(); ++j2) rhs[idx++] = target.at(i2, j2);
        }
        SolveResult sr = solve(sys, rhs);
        require(sr.consistent, ErrorKind::InvariantViolation, "summand differential not solvable");

        Complex piece;
        piece.deg1 = p1.vertices;
        piece.deg0 = p0.vertices;
        piece.d.assign(p0.vertices.size(), std::vector<QVec>(p1.vertices.size(), QVec(alg_.dim())));
        for (int k = 0; k < nD; ++k) {
            const auto& u = uD.unknowns[k];
            if (!sr.particular[k].is_zero())
                piece.d[u.row_copy][u.col_copy][u.corner_basis_index] = sr.particular[k];
        }
        Complex piece_min = minimalized(piece);
        if (piece_min.deg1.empty() && piece_min.deg0.empty()) continue;
        out = out.plus(Obj::of(identify_or_register(piece_min)));
    }
    return out;
}

ObjId TwoTermModel::identify_or_register(const Complex& minimal) {
    RegEntry cand;
    cand.cx = minimal;
    cand.info = IndecInfo{"", false, false};
    registry_.push_back(cand);
    ObjId tmp = static_cast<ObjId>(registry_.size()) - 1;

    auto drop_tmp_caches = [&]() {
        for (auto it = hom_cache_.begin(); it != hom_cache_.end();)
            it = (it->first.first == tmp || it->first.second == tmp) ? hom_cache_.erase(it) : ++it;
        for (auto it = ext_cache_.begin(); it != ext_cache_.end();)
            it = (it->first.first == tmp || it->first.second == tmp) ? ext_cache_.erase(it) : ++it;
    };

    for (ObjId w = 0; w < tmp; ++w) {
        const Complex& W = registry_[w].cx;
        if (W.deg1 != minimal.deg1 || W.deg0 != minimal.deg0) continue;
        HomData& zw = hom_data(tmp, w);
        HomData& wz = hom_data(w, tmp);
        if (zw.dim == 0 || wz.dim == 0) continue;
        // isomorphism iff id_W lies in the span of composites W -> Z -> W
        CornerSpace v1 = corner_space(alg_, W.deg1, W.deg1);
        CornerSpace v0 = corner_space(alg_, W.deg0, W.deg0);
        std::vector<QVec> prods;
        for (int i = 0; i < zw.dim; ++i)
            for (int j = 0; j < wz.dim; ++j) {
                QVec c1 =
                    corner_flat(alg_, pbasis_, v1, zw.reps[i].first * wz.reps[j].first, W.deg1, W.deg1);
                QVec c0 = corner_flat(alg_, pbasis_, v0, zw.reps[i].second * wz.reps[j].second,
                                      W.deg0, W.deg0);
                c1.insert(c1.end(), c0.begin(), c0.end());
                prods.push_back(hom_class_coords(w, w, c1));
            }
        if (in_span(row_space_basis(prods), id_coords(w))) {
            registry_.pop_back();
            drop_tmp_caches();
            return w;
        }
    }

    RegEntry& e = registry_[tmp];
    if (minimal.deg1.empty() && minimal.deg0.size() == 1) {
        e.info = IndecInfo{"P(" + alg_.vertex_name(minimal.deg0[0]) + ")", true, false};
    } else if (minimal.deg0.empty() && minimal.deg1.size() == 1) {
        e.info = IndecInfo{"SP(" + alg_.vertex_name(minimal.deg1[0]) + ")", false, true};
    } else {
        e.info = IndecInfo{"M" + std::to_string(++anon_counter_), minimal.deg1.empty(),
                           minimal.deg0.empty()};
    }
    return tmp;
}

void TwoTermModel::saturate(int passes) {
    for (int p = 0; p < passes; ++p) {
        int before = num_indec();
        for (ObjId c = 0; c < before; ++c)
            for (ObjId a = 0; a < before; ++a) {
                int d = ext_dim(c, a);
                for (const QVec& coords : enumerate_classes(d))
                    middle(ExtClass{Obj::of(c), Obj::of(a), coords});
            }
        if (num_indec() == before) {
            saturated_ = true;
            return;
        }
    }
}

}  // namespace siltred
