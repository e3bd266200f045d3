#include "siltred/group.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <sstream>

#include "siltred/error.hpp"

namespace siltred {

std::vector<int> free_reduce(std::vector<int> w) {
    std::vector<int> out;
    for (int x : w) {
        if (!out.empty() && out.back() == -x)
            out.pop_back();
        else
            out.push_back(x);
    }
    return out;
}

std::vector<int> invert_word(const std::vector<int>& w) {
    std::vector<int> out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
    return out;
}

std::string presentation_text(const GroupPresentation& p) {
    std::ostringstream os;
    os << "gens:";
    for (const std::string& g : p.gens) os << " " << g;
    os << "\nrels:";
    auto letter = [&](int x) {
        std::string name = p.gens[std::abs(x) - 1];
        if (x < 0 && !name.empty()) name[0] = static_cast<char>(toupper(name[0]));
        return name;
    };
    for (const auto& r : p.relators) {
        os << " ";
        for (size_t i = 0; i < r.size(); ++i) os << (i ? "*" : "") << letter(r[i]);
        if (r.empty()) os << "1";
    }
    os << "\n";
    return os.str();
}

// ---------- poset route ----------

int PosetPresentation::interval_index(int lo, int hi) const {
    for (size_t k = 0; k < intervals.size(); ++k)
        if (intervals[k] == std::make_pair(lo, hi)) return static_cast<int>(k);
    return -1;
}

PosetPresentation presentation_from_poset(const SiltingPoset& poset) {
    PosetPresentation pp;
    int n = static_cast<int>(poset.nodes.size());
    for (int lo = 0; lo < n; ++lo)
        for (int hi = 0; hi < n; ++hi)
            if (poset.geq[hi][lo]) {
                pp.intervals.push_back({lo, hi});
                pp.pres.gens.push_back("g" + std::to_string(lo) + "_" + std::to_string(hi));
            }
    for (int lo = 0; lo < n; ++lo)
        for (int mid = 0; mid < n; ++mid)
            for (int hi = 0; hi < n; ++hi) {
                if (!(poset.geq[mid][lo] && poset.geq[hi][mid])) continue;
                int g_lohi = pp.interval_index(lo, hi);
                int g_lomid = pp.interval_index(lo, mid);
                int g_midhi = pp.interval_index(mid, hi);
                std::vector<int> rel =
                    free_reduce({-(g_lohi + 1), g_lomid + 1, g_midhi + 1});
                if (rel.empty()) continue;
                pp.pres.relators.push_back(std::move(rel));
                pp.chains.push_back({lo, mid, hi});
            }
    return pp;
}

PosetPresentation presentation_from_poset_identified(Model& m, const SiltingPoset& poset,
                                                     SearchBudget budget) {
    PosetPresentation pp = presentation_from_poset(poset);
    // irreducible intervals = covering pairs; identify those whose
    // intersections generate the same thick subcategory
    std::vector<std::pair<int, int>> irr;  // (lo, hi)
    for (auto [hi, lo] : poset.hasse) irr.push_back({lo, hi});
    std::sort(irr.begin(), irr.end());
    std::vector<std::vector<ObjId>> inters;
    for (auto [lo, hi] : irr) {
        std::vector<ObjId> x;
        std::set_intersection(poset.nodes[lo].begin(), poset.nodes[lo].end(),
                              poset.nodes[hi].begin(), poset.nodes[hi].end(),
                              std::back_inserter(x));
        inters.push_back(std::move(x));
    }
    std::vector<int> rep(irr.size(), -1);
    for (size_t i = 0; i < irr.size(); ++i) {
        for (size_t j = 0; j < i; ++j) {
            if (rep[j] != static_cast<int>(j)) continue;
            Tri t = thick_equal(m, inters[i], inters[j], budget);
            require(t != Tri::Undecided, ErrorKind::UndecidedIdentity,
                    "cannot decide thick-equality of irreducible interval intersections");
            if (t == Tri::True) {
                rep[i] = static_cast<int>(j);
                break;
            }
        }
        if (rep[i] < 0) rep[i] = static_cast<int>(i);
    }
    for (size_t i = 0; i < irr.size(); ++i) {
        if (rep[i] == static_cast<int>(i)) continue;
        int gi = pp.interval_index(irr[i].first, irr[i].second);
        int gj = pp.interval_index(irr[rep[i]].first, irr[rep[i]].second);
        pp.pres.relators.push_back(free_reduce({-(gi + 1), gj + 1}));
        pp.chains.push_back({irr[i].first, -1, irr[i].second});  // marker entry
    }
    return pp;
}

std::vector<IntervalRewrite> rewrite_intervals_to_irreducibles(const SiltingPoset& poset,
                                                               const PosetPresentation& pp) {
    int n = static_cast<int>(poset.nodes.size());
    auto covers = [&](int lo, int hi) {  // hi covers lo
        if (lo == hi || !poset.geq[hi][lo]) return false;
        for (int k = 0; k < n; ++k) {
            if (k == lo || k == hi) continue;
            if (poset.geq[hi][k] && !poset.geq[k][hi] && poset.geq[k][lo] && !poset.geq[lo][k])
                return false;
        }
        return true;
    };

    std::vector<IntervalRewrite> out;
    for (const auto& [lo, hi] : pp.intervals) {
        IntervalRewrite rw;
        rw.interval = {lo, hi};
        int cur = lo;
        while (cur != hi) {
            int step = -1;
            for (int k = 0; k < n; ++k)
                if (poset.geq[hi][k] && covers(cur, k)) {
                    step = k;
                    break;
                }
            require(step >= 0, ErrorKind::InvariantViolation,
                    "no covering step inside a finite interval");
            // chain relator cur <= step <= hi rewrites [cur,hi] = [cur,step][step,hi]
            rw.factors.push_back({cur, step});
            rw.chains_used.push_back({cur, step, hi});
            cur = step;
        }
        out.push_back(std::move(rw));
    }
    return out;
}

// ---------- nerve route ----------

int NervePresentation::gen_of_morphism(int morphism_id) const {
    for (size_t k = 0; k < gen_morphism.size(); ++k)
        if (gen_morphism[k] == morphism_id) return static_cast<int>(k);
    return -1;
}

NervePresentation pi1_nerve(const PictureCategory& cat) {
    NervePresentation np;
    for (const PictureMorphism& f : cat.morphisms) {
        if (f.rank == 0) continue;
        np.gen_morphism.push_back(f.id);
        np.pres.gens.push_back("m" + std::to_string(f.id));
    }

    // composition triangles
    for (const PictureMorphism& f : cat.morphisms) {
        if (f.rank == 0) continue;
        for (const PictureMorphism& g : cat.morphisms) {
            if (g.rank == 0 || g.src != f.dst) continue;
            int gf = cat.compose(f.id, g.id);
            int a = np.gen_of_morphism(gf);
            int b = np.gen_of_morphism(g.id);
            int c = np.gen_of_morphism(f.id);
            require(a >= 0 && b >= 0 && c >= 0, ErrorKind::InvariantViolation,
                    "composite of non-identities is an identity");
            np.pres.relators.push_back(free_reduce({-(a + 1), b + 1, c + 1}));
        }
    }

    // BFS spanning tree from the zero object over the undirected morphism graph
    int n = static_cast<int>(cat.objects.size());
    std::vector<bool> seen(n, false);
    std::queue<int> bfs;
    bfs.push(cat.zero);
    seen[cat.zero] = true;
    while (!bfs.empty()) {
        int o = bfs.front();
        bfs.pop();
        for (const PictureMorphism& f : cat.morphisms) {
            if (f.rank == 0) continue;
            int other = -1;
            if (f.src == o && !seen[f.dst]) other = f.dst;
            if (f.dst == o && !seen[f.src]) other = f.src;
            if (other < 0) continue;
            seen[other] = true;
            np.tree_edges.push_back(f.id);
            np.pres.relators.push_back({np.gen_of_morphism(f.id) + 1});
            bfs.push(other);
        }
    }
    for (int o = 0; o < n; ++o)
        require(seen[o], ErrorKind::InvariantViolation, "picture category is not connected");
    return np;
}

// ---------- invariants ----------

namespace {

struct SmallGroup {
    std::string name;
    int order;
    std::vector<std::vector<int>> mult;
    std::vector<int> inv;
    int id = 0;
};

SmallGroup cyclic(int k) {
    SmallGroup g;
    g.name = "Z/" + std::to_string(k);
    g.order = k;
    g.mult.assign(k, std::vector<int>(k));
    g.inv.assign(k, 0);
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) g.mult[a][b] = (a + b) % k;
        g.inv[a] = (k - a) % k;
    }
    return g;
}

SmallGroup symmetric3() {
    // permutations of {0,1,2} in lexicographic order
    std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                             {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    SmallGroup g;
    g.name = "S3";
    g.order = 6;
    g.mult.assign(6, std::vector<int>(6));
    g.inv.assign(6, 0);
    auto index_of = [&](const std::array<int, 3>& p) {
        for (size_t i = 0; i < perms.size(); ++i)
            if (perms[i] == p) return static_cast<int>(i);
        return -1;
    };
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            std::array<int, 3> c{};
            for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];  // a after b
            g.mult[a][b] = index_of(c);
        }
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
            if (g.mult[a][b] == 0 && g.mult[b][a] == 0) g.inv[a] = b;
    return g;
}

long count_homs(const GroupPresentation& p, const SmallGroup& g, long budget) {
    int ng = static_cast<int>(p.gens.size());
    double total = 1;
    for (int i = 0; i < ng; ++i) total *= g.order;
    require(total <= static_cast<double>(budget), ErrorKind::HomCountBudgetExceeded,
            "homomorphism count into " + g.name + " needs " + std::to_string(total) +
                " assignments");
    std::vector<int> img(ng, 0);
    long count = 0;
    auto eval = [&](const std::vector<int>& w) {
        int acc = g.id;
        for (int x : w) {
            int v = img[std::abs(x) - 1];
            if (x < 0) v = g.inv[v];
            acc = g.mult[acc][v];
        }
        return acc;
    };
    std::function<void(int)> rec = [&](int k) {
        if (k == ng) {
            for (const auto& r : p.relators)
                if (eval(r) != g.id) return;
            ++count;
            return;
        }
        for (int v = 0; v < g.order; ++v) {
            img[k] = v;
            rec(k + 1);
        }
    };
    rec(0);
    return count;
}

}  // namespace

GroupInvariants invariants(const GroupPresentation& p, long budget) {
    GroupInvariants inv;
    int ng = static_cast<int>(p.gens.size());
    int nr = static_cast<int>(p.relators.size());
    ZMat M(nr == 0 ? 1 : nr, ng == 0 ? 1 : ng);
    for (int r = 0; r < nr; ++r)
        for (int x : p.relators[r]) {
            int c = std::abs(x) - 1;
            M.at(r, c) += (x > 0 ? 1 : -1);
        }
    std::vector<mpz_class> diag = ng == 0 ? std::vector<mpz_class>{} : M.smith_diagonal();
    int nonzero = 0;
    for (const mpz_class& d : diag) {
        if (d != 0) ++nonzero;
        if (d > 1) inv.torsion.push_back(d);
    }
    inv.free_rank = ng - nonzero;
    std::sort(inv.torsion.begin(), inv.torsion.end());
    for (const SmallGroup& g : {cyclic(2), cyclic(3), symmetric3()})
        inv.hom_counts[g.name] = count_homs(p, g, budget);
    return inv;
}

std::string GroupInvariants::str() const {
    std::ostringstream os;
    os << "free_rank=" << free_rank << " torsion=[";
    for (size_t i = 0; i < torsion.size(); ++i) os << (i ? "," : "") << torsion[i].get_str();
    os << "] homs{";
    bool first = true;
    for (const auto& [k, v] : hom_counts) {
        os << (first ? "" : ",") << k << ":" << v;
        first = false;
    }
    os << "}";
    return os.str();
}

std::string abelianization_verdict(const GroupInvariants& inv) {
    if (inv.free_rank == 0 && inv.torsion.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    if (inv.free_rank == 1) {
        os << "Z";
        first = false;
    } else if (inv.free_rank > 1) {
        os << "Z^" << inv.free_rank;
        first = false;
    }
    for (const mpz_class& d : inv.torsion) {
        os << (first ? "" : " x ") << "Z/" << d.get_str();
        first = false;
    }
    return os.str();
}

// ---------- Tietze ----------

namespace {

std::vector<int> canonical_relator(const std::vector<int>& w) {
    std::vector<int> inv = invert_word(w);
    return std::min(w, inv);
}

}  // namespace

TietzeResult tietze_simplify(const GroupPresentation& input, int budget) {
    TietzeResult out;
    out.pres = input;
    auto cleanup = [&]() {
        std::vector<std::vector<int>> rels;
        std::set<std::vector<int>> seen;
        for (auto& r : out.pres.relators) {
            std::vector<int> red = free_reduce(r);
            if (red.empty()) continue;
            std::vector<int> canon = canonical_relator(red);
            if (seen.insert(canon).second) rels.push_back(red);
        }
        out.pres.relators = std::move(rels);
    };
    cleanup();

    for (int step = 0; step < budget; ++step) {
        // find a relator in which some generator appears exactly once
        int rel_idx = -1, gen = 0, pos = -1;
        for (size_t r = 0; r < out.pres.relators.size() && rel_idx < 0; ++r) {
            const auto& w = out.pres.relators[r];
            for (size_t i = 0; i < w.size(); ++i) {
                int g = std::abs(w[i]);
                int count = 0;
                for (int x : w)
                    if (std::abs(x) == g) ++count;
                if (count == 1) {
                    rel_idx = static_cast<int>(r);
                    gen = g;
                    pos = static_cast<int>(i);
                    break;
                }
            }
        }
        if (rel_idx < 0) break;

        // w = u g^e v = 1  =>  g^e = u^{-1} v^{-1}, g = (u^{-1} v^{-1})^{e}
        const std::vector<int> w = out.pres.relators[rel_idx];
        std::vector<int> u(w.begin(), w.begin() + pos);
        std::vector<int> v(w.begin() + pos + 1, w.end());
        std::vector<int> rhs = invert_word(u);
        std::vector<int> vinv = invert_word(v);
        rhs.insert(rhs.end(), vinv.begin(), vinv.end());
        if (w[pos] < 0) rhs = invert_word(rhs);  // g^{-1} = ..., so g = inverse
        rhs = free_reduce(rhs);

        out.log.push_back("eliminate " + out.pres.gens[gen - 1] + " using relator " +
                          std::to_string(rel_idx));

        // substitute and drop the generator
        std::vector<std::vector<int>> rels;
        for (size_t r = 0; r < out.pres.relators.size(); ++r) {
            if (static_cast<int>(r) == rel_idx) continue;
            std::vector<int> nw;
            for (int x : out.pres.relators[r]) {
                if (std::abs(x) != gen) {
                    nw.push_back(x);
                } else {
                    std::vector<int> sub = (x > 0) ? rhs : invert_word(rhs);
                    nw.insert(nw.end(), sub.begin(), sub.end());
                }
            }
            rels.push_back(free_reduce(nw));
        }
        // renumber: remove `gen`
        auto remap = [&](int x) {
            int g = std::abs(x);
            int ng = g > gen ? g - 1 : g;
            return x > 0 ? ng : -ng;
        };
        for (auto& r : rels)
            for (auto& x : r) x = remap(x);
        out.pres.gens.erase(out.pres.gens.begin() + (gen - 1));
        out.pres.relators = std::move(rels);
        cleanup();
    }
    return out;
}

// ---------- B-generators ----------

BGenReport b_generators(PictureCategory& cat, const SiltingPoset& poset,
                        const NervePresentation& nerve) {
    BGenReport rep;
    Model& m = *cat.ambient;

    // objects where every nonzero rigid subcategory is silting and #silt = 2
    for (const PictureObject& obj : cat.objects) {
        auto rank = obj.reduced->silting_rank();
        if (!rank.has_value()) continue;
        auto rigids = all_rigid_subsets(*obj.reduced);
        int silts = 0;
        bool all_silting = true;
        for (const auto& r : rigids) {
            if (r.empty()) continue;
            if (static_cast<int>(r.size()) == *rank)
                ++silts;
            else
                all_silting = false;
        }
        if (all_silting && silts == 2) rep.b_objects.push_back(obj.id);
    }

    // each irreducible interval factors through A/(S1 ∩ S2)
    auto root_silting_morphism = [&](const std::vector<ObjId>& S) {
        return cat.morphism_id(cat.root, S);
    };
    for (auto [hi, lo] : poset.hasse) {
        // hasse pairs are (upper, lower): the irreducible interval [lo, hi]
        const std::vector<ObjId>& S1 = poset.nodes[lo];
        const std::vector<ObjId>& S2 = poset.nodes[hi];
        std::vector<ObjId> inter;
        std::set_intersection(S1.begin(), S1.end(), S2.begin(), S2.end(),
                              std::back_inserter(inter));
        BGenReport::Rewrite rw;
        rw.interval = {lo, hi};
        if (!is_rigid_set(m, inter)) {
            rep.pass = false;
            fail(ErrorKind::RewritingFailed, "intersection of an irreducible interval not rigid");
        }
        int b_obj = cat.object_of_rigid(inter);
        rw.b_object = b_obj;
        if (std::find(rep.b_objects.begin(), rep.b_objects.end(), b_obj) == rep.b_objects.end()) {
            rep.pass = false;
            rep.rewrites.push_back(rw);
            continue;
        }
        rw.factor_morphism = root_silting_morphism(inter);
        int e1 = root_silting_morphism(S2);  // larger silting
        int e2 = root_silting_morphism(S1);  // smaller silting
        if (rw.factor_morphism < 0 || e1 < 0 || e2 < 0) {
            rep.pass = false;
            rep.rewrites.push_back(rw);
            continue;
        }
        // the two morphisms out of the B-object compose to exactly {S1, S2}
        int upper = -1, lower = -1;
        for (int g : cat.morphisms_from(b_obj)) {
            if (cat.morphisms[g].rank == 0) continue;
            int compd = cat.compose(rw.factor_morphism, g);
            if (compd == e1) upper = g;
            if (compd == e2) lower = g;
        }
        rw.upper_morphism = upper;
        rw.lower_morphism = lower;
        if (upper < 0 || lower < 0 || upper == lower) {
            rep.pass = false;
            rep.rewrites.push_back(rw);
            continue;
        }
        // word identity in the free group after substituting the two triangle
        // relators: e2^{-1} e1 = r^{-1} (lower^{-1} upper) r
        auto g_of = [&](int mid) { return nerve.gen_of_morphism(mid) + 1; };
        std::vector<int> lhs = {-g_of(e2), g_of(e1)};
        std::vector<int> rhs = {-g_of(rw.factor_morphism), -g_of(lower), g_of(upper),
                                g_of(rw.factor_morphism)};
        // substitute e1 -> upper * r and e2 -> lower * r
        std::vector<int> lhs_sub;
        for (int x : lhs) {
            std::vector<int> rep_word;
            if (std::abs(x) == g_of(e1)) rep_word = {g_of(upper), g_of(rw.factor_morphism)};
            else if (std::abs(x) == g_of(e2)) rep_word = {g_of(lower), g_of(rw.factor_morphism)};
            else rep_word = {std::abs(x)};
            if (x < 0) rep_word = invert_word(rep_word);
            lhs_sub.insert(lhs_sub.end(), rep_word.begin(), rep_word.end());
        }
        std::vector<int> diff = lhs_sub;
        std::vector<int> rhs_inv = invert_word(rhs);
        diff.insert(diff.end(), rhs_inv.begin(), rhs_inv.end());
        rw.word_identity_ok = free_reduce(diff).empty();
        if (!rw.word_identity_ok) rep.pass = false;
        rep.rewrites.push_back(rw);
    }
    return rep;
}

}  // namespace siltred
