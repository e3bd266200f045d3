#include "siltred/interval.hpp"

#include <algorithm>

#include "siltred/error.hpp"

namespace siltred {

IntervalModel::IntervalModel(int n, std::string name) : n_(n), name_(std::move(name)) {
    require(n >= 1, ErrorKind::MalformedSpec, "interval model needs n >= 1");
    if (name_.empty()) name_ = "mod(Lambda_" + std::to_string(n) + ")";
    for (int a = 1; a <= n; ++a)
        for (int b = a; b <= n; ++b) {
            index_[{a, b}] = static_cast<ObjId>(intervals_.size());
            intervals_.push_back({a, b});
        }
}

ObjId IntervalModel::interval_id(int a, int b) const {
    auto it = index_.find({a, b});
    require(it != index_.end(), ErrorKind::InvariantViolation, "interval out of range");
    return it->second;
}

IndecInfo IntervalModel::indec(ObjId id) {
    auto [a, b] = intervals_.at(id);
    IndecInfo info;
    info.name = "M(" + std::to_string(a) + "," + std::to_string(b) + ")";
    info.projective = (b == n_);
    info.injective = (a == 1);
    return info;
}

IntervalModel::HomData& IntervalModel::hom_data(ObjId x, ObjId y) {
    auto key = std::make_pair(x, y);
    auto it = hom_cache_.find(key);
    if (it != hom_cache_.end()) return it->second;

    auto [a, b] = intervals_[x];
    auto [c, d] = intervals_[y];
    auto xin = [&](int v) { return a <= v && v <= b; };
    auto yin = [&](int v) { return c <= v && v <= d; };

    // unknowns f_v for v in the common support; conditions per arrow v -> v+1
    std::vector<int> common;
    for (int v = 1; v <= n_; ++v)
        if (xin(v) && yin(v)) common.push_back(v);
    int N = static_cast<int>(common.size());
    auto pos = [&](int v) {
        auto p = std::find(common.begin(), common.end(), v);
        return p == common.end() ? -1 : static_cast<int>(p - common.begin());
    };

    std::vector<QVec> rows;
    for (int v = 1; v < n_; ++v) {
        // alpha_Y f_v = f_{v+1} alpha_X on X_v -> Y_{v+1}
        bool ax = xin(v) && xin(v + 1);
        bool ay = yin(v) && yin(v + 1);
        QVec row(N);
        bool nonzero = false;
        if (xin(v) && yin(v) && ay) {
            row[pos(v)] += Rat(1);
            nonzero = true;
        }
        if (xin(v + 1) && yin(v + 1) && ax) {
            row[pos(v + 1)] -= Rat(1);
            nonzero = true;
        }
        if (nonzero) rows.push_back(std::move(row));
    }
    HomData hd;
    std::vector<QVec> basis =
        rows.empty() ? [&] {
            std::vector<QVec> id;
            for (int i = 0; i < N; ++i) {
                QVec e(N);
                e[i] = Rat(1);
                id.push_back(e);
            }
            return id;
        }()
                     : QMat::from_rows(rows).kernel_basis();
    hd.dim = static_cast<int>(basis.size());
    for (const QVec& sol : basis) {
        std::vector<Rat> rep(n_ + 1);
        for (int i = 0; i < N; ++i) rep[common[i]] = sol[i];
        hd.reps.push_back(std::move(rep));
    }
    return hom_cache_[key] = std::move(hd);
}

IntervalModel::ExtData& IntervalModel::ext_data(ObjId x, ObjId y) {
    auto key = std::make_pair(x, y);
    auto it = ext_cache_.find(key);
    if (it != ext_cache_.end()) return it->second;

    auto [a, b] = intervals_[x];  // C = M(a,b), classes in Ext(C, A)
    auto [c, d] = intervals_[y];  // A = M(c,d)
    auto cin = [&](int v) { return a <= v && v <= b; };
    auto ain = [&](int v) { return c <= v && v <= d; };

    // cocycles phi_v : C_v -> A_{v+1} per arrow; coboundary of f: C_v -> A_v is
    // (delta f)_v = alpha_A f_v - f_{v+1} alpha_C
    std::vector<int> cocys;  // arrows v with C_v and A_{v+1} nonzero
    for (int v = 1; v < n_; ++v)
        if (cin(v) && ain(v + 1)) cocys.push_back(v);
    int N = static_cast<int>(cocys.size());
    auto pos = [&](int v) {
        auto p = std::find(cocys.begin(), cocys.end(), v);
        return p == cocys.end() ? -1 : static_cast<int>(p - cocys.begin());
    };

    std::vector<QVec> span;
    for (int w = 1; w <= n_; ++w) {
        if (!(cin(w) && ain(w))) continue;  // f supported at w
        QVec vec(N);
        bool nz = false;
        // (delta f)_w  = alpha_A f_w   (term at arrow w, needs A_{w+1})
        if (w < n_ && cin(w) && ain(w) && ain(w + 1) && pos(w) >= 0) {
            vec[pos(w)] += Rat(1);
            nz = true;
        }
        // (delta f)_{w-1} = -f_w alpha_C (term at arrow w-1, needs C_{w-1})
        if (w > 1 && cin(w - 1) && cin(w) && ain(w) && pos(w - 1) >= 0) {
            vec[pos(w - 1)] -= Rat(1);
            nz = true;
        }
        (void)nz;
        span.push_back(std::move(vec));
    }
    ExtData ed;
    ed.span = row_space_basis(span);
    for (int t : complement_coords(ed.span, N)) {
        std::vector<Rat> rep(n_ + 1);
        rep[cocys[t]] = Rat(1);
        ed.reps.push_back(std::move(rep));
    }
    ed.dim = static_cast<int>(ed.reps.size());
    return ext_cache_[key] = std::move(ed);
}

int IntervalModel::hom_dim(ObjId x, ObjId y) { return hom_data(x, y).dim; }
int IntervalModel::ext_dim(ObjId x, ObjId y) { return ext_data(x, y).dim; }

QVec IntervalModel::compose_basis(ObjId x, ObjId y, ObjId z, int i, int j) {
    HomData& f = hom_data(x, y);
    HomData& g = hom_data(y, z);
    HomData& h = hom_data(x, z);
    std::vector<Rat> comp(n_ + 1);
    for (int v = 1; v <= n_; ++v) comp[v] = f.reps[i][v] * g.reps[j][v];
    // coordinates in the hom(x,z) basis
    std::vector<QVec> basis;
    for (const auto& rep : h.reps) {
        QVec flat(n_);
        for (int v = 1; v <= n_; ++v) flat[v - 1] = rep[v];
        basis.push_back(std::move(flat));
    }
    QVec target(n_);
    for (int v = 1; v <= n_; ++v) target[v - 1] = comp[v];
    auto coords = coordinates_in(basis, target);
    require(coords.has_value(), ErrorKind::InvariantViolation,
            "interval composite outside hom space");
    return *coords;
}

QVec IntervalModel::id_coords(ObjId x) {
    HomData& h = hom_data(x, x);
    auto [a, b] = intervals_[x];
    std::vector<QVec> basis;
    for (const auto& rep : h.reps) {
        QVec flat(n_);
        for (int v = 1; v <= n_; ++v) flat[v - 1] = rep[v];
        basis.push_back(std::move(flat));
    }
    QVec target(n_);
    for (int v = a; v <= b; ++v) target[v - 1] = Rat(1);
    auto coords = coordinates_in(basis, target);
    require(coords.has_value(), ErrorKind::InvariantViolation, "identity outside hom space");
    return *coords;
}

IntervalModel::Rep IntervalModel::rep_of(const Obj& x) const {
    Rep r;
    r.dims.assign(n_ + 1, 0);
    auto copies = x.copies();
    // vertex offsets per copy
    for (ObjId id : copies) {
        auto [a, b] = intervals_[id];
        for (int v = a; v <= b; ++v) r.dims[v]++;
    }
    r.maps.assign(n_, QMat());
    for (int v = 1; v < n_; ++v) {
        QMat M(r.dims[v + 1], r.dims[v]);
        int colpos = 0, rowpos = 0;
        std::vector<int> colof(copies.size(), -1), rowof(copies.size(), -1);
        for (size_t k = 0; k < copies.size(); ++k) {
            auto [a, b] = intervals_[copies[k]];
            if (a <= v && v <= b) colof[k] = colpos++;
            if (a <= v + 1 && v + 1 <= b) rowof[k] = rowpos++;
        }
        for (size_t k = 0; k < copies.size(); ++k)
            if (colof[k] >= 0 && rowof[k] >= 0) M.at(rowof[k], colof[k]) = Rat(1);
        r.maps[v] = std::move(M);
    }
    return r;
}

Obj IntervalModel::decompose_rep(const Rep& r) const {
    // rank of the composite V_a -> V_b
    auto rank_ab = [&](int a, int b) -> int {
        if (a < 1 || b > n_ || a > b) return 0;
        if (a == b) return r.dims[a];
        QMat M = r.maps[a];
        for (int v = a + 1; v < b; ++v) M = r.maps[v] * M;
        return M.rank();
    };
    Obj out;
    for (int a = 1; a <= n_; ++a)
        for (int b = a; b <= n_; ++b) {
            int m = rank_ab(a, b) - rank_ab(a - 1, b) - rank_ab(a, b + 1) + rank_ab(a - 1, b + 1);
            require(m >= 0, ErrorKind::InvariantViolation, "negative interval multiplicity");
            if (m > 0) out = out.plus(Obj::of(index_.at({a, b}), m));
        }
    return out;
}

Obj IntervalModel::middle(const ExtClass& xi) {
    std::string ckey;
    for (const Rat& r : xi.coords) ckey += r.str() + ",";
    auto cache_key = std::make_tuple(xi.c, xi.a, ckey);
    auto hit = middle_cache_.find(cache_key);
    if (hit != middle_cache_.end()) return hit->second;

    auto ccopies = xi.c.copies();
    auto acopies = xi.a.copies();
    // big representation: V = A ⊕ C with twisted maps [[alpha_A, phi],[0, alpha_C]]
    Rep A = rep_of(xi.a), C = rep_of(xi.c);
    Rep E;
    E.dims.assign(n_ + 1, 0);
    for (int v = 1; v <= n_; ++v) E.dims[v] = A.dims[v] + C.dims[v];
    E.maps.assign(n_, QMat());

    // per-vertex offset of each copy inside A and C parts
    auto offsets = [&](const std::vector<ObjId>& copies) {
        std::vector<std::vector<int>> off(copies.size(), std::vector<int>(n_ + 1, -1));
        std::vector<int> cur(n_ + 1, 0);
        for (size_t k = 0; k < copies.size(); ++k) {
            auto [a, b] = intervals_[copies[k]];
            for (int v = a; v <= b; ++v) off[k][v] = cur[v]++;
        }
        return off;
    };
    auto aoff = offsets(acopies), coff = offsets(ccopies);

    // phi_v : C_v -> A_{v+1} assembled from pairwise cocycle representatives
    std::vector<QMat> phi(n_);
    for (int v = 1; v < n_; ++v) phi[v] = QMat(A.dims[v + 1], C.dims[v]);
    int off = 0;
    for (size_t ci = 0; ci < ccopies.size(); ++ci)
        for (size_t aj = 0; aj < acopies.size(); ++aj) {
            ExtData& ed = ext_data(ccopies[ci], acopies[aj]);
            for (int t = 0; t < ed.dim; ++t) {
                Rat coef = xi.coords.at(off + t);
                if (coef.is_zero()) continue;
                for (int v = 1; v < n_; ++v) {
                    if (ed.reps[t][v].is_zero()) continue;
                    int row = aoff[aj][v + 1], col = coff[ci][v];
                    require(row >= 0 && col >= 0, ErrorKind::InvariantViolation,
                            "cocycle outside supports");
                    phi[v].at(row, col) += coef * ed.reps[t][v];
                }
            }
            off += ed.dim;
        }
    require(off == static_cast<int>(xi.coords.size()), ErrorKind::InvariantViolation,
            "extension class coordinate length mismatch");

    for (int v = 1; v < n_; ++v) {
        QMat M(E.dims[v + 1], E.dims[v]);
        for (int i = 0; i < A.maps[v].rows(); ++i)
            for (int j = 0; j < A.maps[v].cols(); ++j) M.at(i, j) = A.maps[v].at(i, j);
        for (int i = 0; i < phi[v].rows(); ++i)
            for (int j = 0; j < phi[v].cols(); ++j) M.at(i, A.dims[v] + j) = phi[v].at(i, j);
        for (int i = 0; i < C.maps[v].rows(); ++i)
            for (int j = 0; j < C.maps[v].cols(); ++j)
                M.at(A.dims[v + 1] + i, A.dims[v] + j) = C.maps[v].at(i, j);
        E.maps[v] = std::move(M);
    }
    return middle_cache_[cache_key] = decompose_rep(E);
}

std::optional<Obj> IntervalModel::cone_of_map(const BlockMap& f) {
    // rep matrices of f
    int n = n_;
    auto sc = f.src.copies(), dc = f.dst.copies();
    Rep S = rep_of(f.src), D = rep_of(f.dst);
    auto offsets = [&](const std::vector<ObjId>& copies) {
        std::vector<std::vector<int>> off(copies.size(), std::vector<int>(n + 1, -1));
        std::vector<int> cur(n + 1, 0);
        for (size_t k = 0; k < copies.size(); ++k) {
            auto [a, b] = intervals_[copies[k]];
            for (int v = a; v <= b; ++v) off[k][v] = cur[v]++;
        }
        return off;
    };
    auto soff = offsets(sc), doff = offsets(dc);
    std::vector<QMat> F(n + 1);
    for (int v = 1; v <= n; ++v) F[v] = QMat(D.dims[v], S.dims[v]);
    for (size_t i = 0; i < sc.size(); ++i)
        for (size_t j = 0; j < dc.size(); ++j) {
            const QVec& coords = f.blocks[i][j];
            HomData& hd = hom_data(sc[i], dc[j]);
            for (size_t t = 0; t < coords.size(); ++t) {
                if (coords[t].is_zero()) continue;
                for (int v = 1; v <= n; ++v) {
                    if (hd.reps[t][v].is_zero()) continue;
                    F[v].at(doff[j][v], soff[i][v]) += coords[t] * hd.reps[t][v];
                }
            }
        }

    // inflation = vertexwise injective; cone = cokernel representation
    for (int v = 1; v <= n; ++v)
        if (F[v].rank() < S.dims[v]) return std::nullopt;

    // cokernel: choose complement coordinates of im(F_v), project alpha_D
    Rep Q;
    Q.dims.assign(n + 1, 0);
    Q.maps.assign(n, QMat());
    std::vector<QMat> proj(n + 1);  // D_v -> Q_v
    for (int v = 1; v <= n; ++v) {
        std::vector<QVec> im;
        for (int c = 0; c < F[v].cols(); ++c) {
            QVec col(F[v].rows());
            for (int r = 0; r < F[v].rows(); ++r) col[r] = F[v].at(r, c);
            im.push_back(std::move(col));
        }
        std::vector<QVec> imb = row_space_basis(im);
        std::vector<int> comp = complement_coords(imb, D.dims[v]);
        Q.dims[v] = static_cast<int>(comp.size());
        // projection: solve [im basis | e_comp] coordinates, keep comp part
        QMat M(D.dims[v], D.dims[v]);
        int idx = 0;
        for (int k : comp) M.at(k, idx++) = Rat(1);
        for (const QVec& b : imb) {
            for (int r = 0; r < D.dims[v]; ++r) M.at(r, idx) = b[r];
            ++idx;
        }
        require(idx == D.dims[v], ErrorKind::InvariantViolation, "cokernel basis mismatch");
        auto Minv = solve_matrix(M, QMat::identity(D.dims[v]));
        require(Minv.has_value(), ErrorKind::InvariantViolation, "cokernel projection failed");
        QMat P(Q.dims[v], D.dims[v]);
        for (int r = 0; r < Q.dims[v]; ++r)
            for (int c = 0; c < D.dims[v]; ++c) P.at(r, c) = Minv->at(r, c);
        proj[v] = std::move(P);
    }
    for (int v = 1; v < n; ++v) {
        // induced map Q_v -> Q_{v+1}: lift (section via complement coords), map, project
        QMat lift(D.dims[v], Q.dims[v]);
        {
            std::vector<QVec> im;
            for (int c = 0; c < F[v].cols(); ++c) {
                QVec col(F[v].rows());
                for (int r = 0; r < F[v].rows(); ++r) col[r] = F[v].at(r, c);
                im.push_back(std::move(col));
            }
            std::vector<int> comp = complement_coords(row_space_basis(im), D.dims[v]);
            for (int k = 0; k < static_cast<int>(comp.size()); ++k) lift.at(comp[k], k) = Rat(1);
        }
        Q.maps[v] = proj[v + 1] * (D.maps[v] * lift);
    }
    return decompose_rep(Q);
}

std::optional<Obj> IntervalModel::cocone_of_map(const BlockMap& f) {
    // deflation = vertexwise surjective; cocone = kernel representation
    int n = n_;
    auto sc = f.src.copies(), dc = f.dst.copies();
    Rep S = rep_of(f.src), D = rep_of(f.dst);
    auto offsets = [&](const std::vector<ObjId>& copies) {
        std::vector<std::vector<int>> off(copies.size(), std::vector<int>(n + 1, -1));
        std::vector<int> cur(n + 1, 0);
        for (size_t k = 0; k < copies.size(); ++k) {
            auto [a, b] = intervals_[copies[k]];
            for (int v = a; v <= b; ++v) off[k][v] = cur[v]++;
        }
        return off;
    };
    auto soff = offsets(sc), doff = offsets(dc);
    std::vector<QMat> F(n + 1);
    for (int v = 1; v <= n; ++v) F[v] = QMat(D.dims[v], S.dims[v]);
    for (size_t i = 0; i < sc.size(); ++i)
        for (size_t j = 0; j < dc.size(); ++j) {
            const QVec& coords = f.blocks[i][j];
            HomData& hd = hom_data(sc[i], dc[j]);
            for (size_t t = 0; t < coords.size(); ++t) {
                if (coords[t].is_zero()) continue;
                for (int v = 1; v <= n; ++v) {
                    if (hd.reps[t][v].is_zero()) continue;
                    F[v].at(doff[j][v], soff[i][v]) += coords[t] * hd.reps[t][v];
                }
            }
        }
    for (int v = 1; v <= n; ++v)
        if (F[v].rank() < D.dims[v]) return std::nullopt;

    Rep K;
    K.dims.assign(n + 1, 0);
    K.maps.assign(n, QMat());
    std::vector<QMat> incl(n + 1);  // K_v -> S_v, columns = kernel basis
    for (int v = 1; v <= n; ++v) {
        std::vector<QVec> kb = F[v].kernel_basis();
        K.dims[v] = static_cast<int>(kb.size());
        QMat I(S.dims[v], K.dims[v]);
        for (int c = 0; c < K.dims[v]; ++c)
            for (int r = 0; r < S.dims[v]; ++r) I.at(r, c) = kb[c][r];
        incl[v] = std::move(I);
    }
    for (int v = 1; v < n; ++v) {
        // alpha_S maps K_v into K_{v+1}; coefficients via solve
        QMat target = S.maps[v] * incl[v];
        auto sol = solve_matrix(incl[v + 1], target);
        require(sol.has_value(), ErrorKind::InvariantViolation,
                "kernel not preserved by the structure maps");
        K.maps[v] = *sol;
    }
    return decompose_rep(K);
}

}  // namespace siltred
