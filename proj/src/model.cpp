#include "siltred/model.hpp"

#include <algorithm>
#include <map>

#include "siltred/error.hpp"

namespace siltred {

Obj Obj::of(ObjId id, int mult) {
    Obj o;
    if (mult > 0) o.parts.push_back({id, mult});
    return o;
}

int Obj::total() const {
    int t = 0;
    for (auto& p : parts) t += p.second;
    return t;
}

int Obj::mult_of(ObjId id) const {
    for (auto& p : parts)
        if (p.first == id) return p.second;
    return 0;
}

Obj Obj::plus(const Obj& o) const {
    std::map<ObjId, int> m;
    for (auto& p : parts) m[p.first] += p.second;
    for (auto& p : o.parts) m[p.first] += p.second;
    Obj out;
    for (auto& [id, mult] : m)
        if (mult > 0) out.parts.push_back({id, mult});
    return out;
}

std::vector<ObjId> Obj::copies() const {
    std::vector<ObjId> out;
    for (auto& p : parts)
        for (int i = 0; i < p.second; ++i) out.push_back(p.first);
    return out;
}

std::vector<ObjId> Obj::support() const {
    std::vector<ObjId> out;
    for (auto& p : parts) out.push_back(p.first);
    return out;
}

Obj obj_from_ids(const std::vector<ObjId>& ids) {
    Obj o;
    for (ObjId id : ids) o = o.plus(Obj::of(id));
    return o;
}

Obj obj_strip(const Obj& x, const std::set<ObjId>& ids) {
    Obj out;
    for (auto& p : x.parts)
        if (!ids.count(p.first)) out.parts.push_back(p);
    return out;
}

int hom_dim(Model& m, const Obj& x, const Obj& y) {
    int d = 0;
    for (auto& [xi, xm] : x.parts)
        for (auto& [yi, ym] : y.parts) d += xm * ym * m.hom_dim(xi, yi);
    return d;
}

int ext_dim(Model& m, const Obj& c, const Obj& a) {
    int d = 0;
    for (auto& [ci, cm] : c.parts)
        for (auto& [ai, am] : a.parts) d += cm * am * m.ext_dim(ci, ai);
    return d;
}

BlockMap zero_map(Model& m, const Obj& src, const Obj& dst) {
    BlockMap f;
    f.src = src;
    f.dst = dst;
    auto sc = src.copies(), dc = dst.copies();
    f.blocks.assign(sc.size(), std::vector<QVec>(dc.size()));
    for (size_t i = 0; i < sc.size(); ++i)
        for (size_t j = 0; j < dc.size(); ++j) f.blocks[i][j] = QVec(m.hom_dim(sc[i], dc[j]));
    return f;
}

BlockMap identity_map(Model& m, const Obj& x) {
    BlockMap f = zero_map(m, x, x);
    auto c = x.copies();
    for (size_t i = 0; i < c.size(); ++i) f.blocks[i][i] = m.id_coords(c[i]);
    return f;
}

std::vector<BlockMap> hom_basis(Model& m, const Obj& src, const Obj& dst) {
    std::vector<BlockMap> out;
    auto sc = src.copies(), dc = dst.copies();
    for (size_t i = 0; i < sc.size(); ++i)
        for (size_t j = 0; j < dc.size(); ++j) {
            int d = m.hom_dim(sc[i], dc[j]);
            for (int k = 0; k < d; ++k) {
                BlockMap f = zero_map(m, src, dst);
                f.blocks[i][j][k] = Rat(1);
                out.push_back(std::move(f));
            }
        }
    return out;
}

BlockMap compose(Model& m, const BlockMap& f, const BlockMap& g) {
    require(f.dst == g.src, ErrorKind::InvariantViolation, "compose: middle object mismatch");
    BlockMap h = zero_map(m, f.src, g.dst);
    auto sc = f.src.copies(), mc = f.dst.copies(), dc = g.dst.copies();
    for (size_t i = 0; i < sc.size(); ++i)
        for (size_t j = 0; j < dc.size(); ++j) {
            QVec acc(m.hom_dim(sc[i], dc[j]));
            for (size_t k = 0; k < mc.size(); ++k) {
                const QVec& fb = f.blocks[i][k];
                const QVec& gb = g.blocks[k][j];
                for (size_t fi = 0; fi < fb.size(); ++fi) {
                    if (fb[fi].is_zero()) continue;
                    for (size_t gi = 0; gi < gb.size(); ++gi) {
                        if (gb[gi].is_zero()) continue;
                        QVec c = m.compose_basis(sc[i], mc[k], dc[j], static_cast<int>(fi),
                                                 static_cast<int>(gi));
                        Rat s = fb[fi] * gb[gi];
                        for (size_t t = 0; t < acc.size(); ++t)
                            if (!c[t].is_zero()) acc[t] += s * c[t];
                    }
                }
            }
            h.blocks[i][j] = std::move(acc);
        }
    return h;
}

BlockMap map_add(const BlockMap& f, const BlockMap& g) {
    require(f.src == g.src && f.dst == g.dst, ErrorKind::InvariantViolation, "map_add mismatch");
    BlockMap h = f;
    for (size_t i = 0; i < h.blocks.size(); ++i)
        for (size_t j = 0; j < h.blocks[i].size(); ++j)
            for (size_t k = 0; k < h.blocks[i][j].size(); ++k)
                h.blocks[i][j][k] += g.blocks[i][j][k];
    return h;
}

BlockMap map_scale(const BlockMap& f, const Rat& c) {
    BlockMap h = f;
    for (auto& row : h.blocks)
        for (auto& b : row)
            for (auto& v : b) v *= c;
    return h;
}

bool map_is_zero(const BlockMap& f) {
    for (auto& row : f.blocks)
        for (auto& b : row)
            for (auto& v : b)
                if (!v.is_zero()) return false;
    return true;
}

QVec map_flatten(const BlockMap& f) {
    QVec out;
    for (auto& row : f.blocks)
        for (auto& b : row) out.insert(out.end(), b.begin(), b.end());
    return out;
}

QMat pairing_matrix(Model& m, const BlockMap& f, ObjId n) {
    Obj nn = Obj::of(n);
    std::vector<BlockMap> gs = hom_basis(m, f.dst, nn);
    int rows = hom_dim(m, f.src, nn);
    QMat M(rows, static_cast<int>(gs.size()));
    for (size_t j = 0; j < gs.size(); ++j) {
        QVec col = map_flatten(compose(m, f, gs[j]));
        for (int i = 0; i < rows; ++i) M.at(i, static_cast<int>(j)) = col[i];
    }
    return M;
}

QMat pairing_matrix_into(Model& m, const BlockMap& g, ObjId n) {
    Obj nn = Obj::of(n);
    std::vector<BlockMap> fs = hom_basis(m, nn, g.src);
    int rows = hom_dim(m, nn, g.dst);
    QMat M(rows, static_cast<int>(fs.size()));
    for (size_t j = 0; j < fs.size(); ++j) {
        QVec col = map_flatten(compose(m, fs[j], g));
        for (int i = 0; i < rows; ++i) M.at(i, static_cast<int>(j)) = col[i];
    }
    return M;
}

namespace {

BlockMap restrict_to_dst_copies(Model& , const BlockMap& f, const std::vector<int>& keep) {
    auto dc = f.dst.copies();
    std::vector<ObjId> kept;
    for (int k : keep) kept.push_back(dc[k]);
    BlockMap g;
    g.src = f.src;
    g.dst = obj_from_ids(kept);
    // obj_from_ids sorts; kept is already ascending because keep is ascending
    g.blocks.assign(f.blocks.size(), {});
    for (size_t i = 0; i < f.blocks.size(); ++i)
        for (int k : keep) g.blocks[i].push_back(f.blocks[i][k]);
    return g;
}

bool approximation_surjective(Model& m, const BlockMap& f, const std::vector<ObjId>& D) {
    for (ObjId n : D) {
        QMat P = pairing_matrix(m, f, n);
        int target = hom_dim(m, f.src, Obj::of(n));
        if (P.rank() < target) return false;
    }
    return true;
}

BlockMap restrict_to_src_copies(Model& , const BlockMap& f, const std::vector<int>& keep) {
    auto sc = f.src.copies();
    std::vector<ObjId> kept;
    for (int k : keep) kept.push_back(sc[k]);
    BlockMap g;
    g.src = obj_from_ids(kept);
    g.dst = f.dst;
    for (int k : keep) g.blocks.push_back(f.blocks[k]);
    return g;
}

bool coapproximation_surjective(Model& m, const BlockMap& g, const std::vector<ObjId>& D) {
    for (ObjId n : D) {
        QMat P = pairing_matrix_into(m, g, n);
        int target = hom_dim(m, Obj::of(n), g.dst);
        if (P.rank() < target) return false;
    }
    return true;
}

}  // namespace

BlockMap minimal_left_approximation(Model& m, ObjId x, const std::vector<ObjId>& D) {
    std::vector<ObjId> Ds = D;
    std::sort(Ds.begin(), Ds.end());
    Obj xx = Obj::of(x);
    // universal map x -> ⊕ n^{dim Hom(x,n)}
    Obj b;
    for (ObjId n : Ds) b = b.plus(Obj::of(n, m.hom_dim(x, n)));
    BlockMap f = zero_map(m, xx, b);
    {
        auto bc = b.copies();
        std::map<ObjId, int> seen;
        for (size_t j = 0; j < bc.size(); ++j) {
            int k = seen[bc[j]]++;
            f.blocks[0][j] = QVec(m.hom_dim(x, bc[j]));
            f.blocks[0][j][k] = Rat(1);
        }
    }
    // greedy deletion, last copy first
    bool changed = true;
    while (changed) {
        changed = false;
        auto bc = f.dst.copies();
        for (int del = static_cast<int>(bc.size()) - 1; del >= 0; --del) {
            std::vector<int> keep;
            for (int j = 0; j < static_cast<int>(bc.size()); ++j)
                if (j != del) keep.push_back(j);
            BlockMap cand = restrict_to_dst_copies(m, f, keep);
            if (approximation_surjective(m, cand, Ds)) {
                f = std::move(cand);
                changed = true;
                break;
            }
        }
    }
    return f;
}

BlockMap minimal_right_approximation(Model& m, ObjId x, const std::vector<ObjId>& D) {
    std::vector<ObjId> Ds = D;
    std::sort(Ds.begin(), Ds.end());
    Obj xx = Obj::of(x);
    Obj b;
    for (ObjId n : Ds) b = b.plus(Obj::of(n, m.hom_dim(n, x)));
    BlockMap g = zero_map(m, b, xx);
    {
        auto bc = b.copies();
        std::map<ObjId, int> seen;
        for (size_t i = 0; i < bc.size(); ++i) {
            int k = seen[bc[i]]++;
            g.blocks[i][0] = QVec(m.hom_dim(bc[i], x));
            g.blocks[i][0][k] = Rat(1);
        }
    }
    bool changed = true;
    while (changed) {
        changed = false;
        auto bc = g.src.copies();
        for (int del = static_cast<int>(bc.size()) - 1; del >= 0; --del) {
            std::vector<int> keep;
            for (int i = 0; i < static_cast<int>(bc.size()); ++i)
                if (i != del) keep.push_back(i);
            BlockMap cand = restrict_to_src_copies(m, g, keep);
            if (coapproximation_surjective(m, cand, Ds)) {
                g = std::move(cand);
                changed = true;
                break;
            }
        }
    }
    return g;
}

std::vector<QVec> enumerate_classes(int dim) {
    std::vector<QVec> out;
    out.push_back(QVec(dim));
    if (dim == 0) return out;
    if (dim <= 2) {
        // all {-1,0,1} coordinate vectors, zero first
        int total = 1;
        for (int i = 0; i < dim; ++i) total *= 3;
        for (int code = 1; code < total; ++code) {
            QVec v(dim);
            int c = code;
            for (int i = 0; i < dim; ++i) {
                int digit = c % 3;
                c /= 3;
                v[i] = digit == 2 ? Rat(-1) : Rat(digit);
            }
            out.push_back(std::move(v));
        }
        return out;
    }
    for (int i = 0; i < dim; ++i)
        for (int s : {1, -1}) {
            QVec v(dim);
            v[i] = Rat(s);
            out.push_back(std::move(v));
        }
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j)
            for (int s : {1, -1}) {
                QVec v(dim);
                v[i] = Rat(1);
                v[j] = Rat(s);
                out.push_back(std::move(v));
            }
    return out;
}

std::vector<Obj> enumerate_multisets(const std::vector<ObjId>& ids, int bound) {
    std::vector<Obj> out;
    std::vector<Obj> frontier{Obj::zero()};
    for (int t = 1; t <= bound; ++t) {
        std::vector<Obj> next;
        for (const Obj& o : frontier)
            for (ObjId id : ids) {
                if (!o.parts.empty() && o.parts.back().first > id) continue;  // canonical growth
                next.push_back(o.plus(Obj::of(id)));
            }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end(),
                               [](const Obj& a, const Obj& b) { return a == b; }),
                   next.end());
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return out;
}

std::string obj_name(Model& m, const Obj& x) {
    if (x.is_zero()) return "0";
    std::string s;
    for (auto& [id, mult] : x.parts)
        for (int i = 0; i < mult; ++i) {
            if (!s.empty()) s += "+";
            s += m.indec(id).name;
        }
    return s;
}

}  // namespace siltred
