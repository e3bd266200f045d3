#include "siltred/rigid.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "siltred/error.hpp"

namespace siltred {

bool is_rigid_set(Model& m, const std::vector<ObjId>& ids) {
    for (ObjId a : ids)
        for (ObjId b : ids)
            if (m.ext_dim(a, b) != 0) return false;
    return true;
}

RigidSubcat certify_rigid(Model& m, std::vector<ObjId> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    RigidSubcat R;
    for (ObjId a : ids)
        for (ObjId b : ids) {
            require(m.ext_dim(a, b) == 0, ErrorKind::InvariantViolation,
                    "subcategory is not rigid: E(" + m.indec(a).name + "," + m.indec(b).name +
                        ") != 0");
            R.certificate.push_back({a, b});
        }
    R.ids = std::move(ids);
    return R;
}

bool is_silting(Model& m, const RigidSubcat& R) {
    auto rank = m.silting_rank();
    if (!rank.has_value())
        fail(ErrorKind::RankUnknown, "model '" + m.name() + "' has no registered silting object");
    return static_cast<int>(R.ids.size()) == *rank;
}

std::vector<std::vector<ObjId>> all_rigid_subsets(Model& m) {
    int n = m.num_indec();
    std::vector<ObjId> selfok;
    for (ObjId i = 0; i < n; ++i)
        if (m.ext_dim(i, i) == 0) selfok.push_back(i);
    std::vector<std::vector<ObjId>> out;
    std::vector<ObjId> cur;
    // depth-first over ascending ids with pairwise compatibility
    auto compatible = [&](ObjId z) {
        for (ObjId y : cur)
            if (m.ext_dim(y, z) != 0 || m.ext_dim(z, y) != 0) return false;
        return true;
    };
    std::function<void(size_t)> rec = [&](size_t k) {
        out.push_back(cur);
        for (size_t t = k; t < selfok.size(); ++t) {
            if (!compatible(selfok[t])) continue;
            cur.push_back(selfok[t]);
            rec(t + 1);
            cur.pop_back();
        }
    };
    rec(0);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

bool silt_geq(Model& m, const std::vector<ObjId>& S, const std::vector<ObjId>& T) {
    for (ObjId s : S)
        for (ObjId t : T)
            if (m.ext_dim(s, t) != 0) return false;
    return true;
}

namespace {

std::vector<ObjId> without(const std::vector<ObjId>& S, ObjId x) {
    std::vector<ObjId> D;
    for (ObjId s : S)
        if (s != x) D.push_back(s);
    return D;
}

}  // namespace

RigidSubcat mutate(Model& m, const RigidSubcat& S, ObjId x, bool left) {
    require(std::find(S.ids.begin(), S.ids.end(), x) != S.ids.end(), ErrorKind::InvariantViolation,
            "mutation position is not a summand of the silting subcategory");
    require(is_silting(m, S), ErrorKind::InvariantViolation, "mutation input is not silting");

    std::vector<ObjId> D = without(S.ids, x);
    std::set<std::vector<ObjId>> candidates;

    auto admit = [&](const std::vector<ObjId>& T) {
        if (T == S.ids) return;
        if (static_cast<int>(T.size()) != static_cast<int>(S.ids.size())) return;
        if (!is_rigid_set(m, T)) return;
        bool s_geq_t = silt_geq(m, S.ids, T);
        bool t_geq_s = silt_geq(m, T, S.ids);
        if (left && !(s_geq_t && !t_geq_s)) return;
        if (!left && !(t_geq_s && !s_geq_t)) return;
        candidates.insert(T);
    };

    if (m.supports_hom()) {
        std::optional<Obj> y;
        if (left) {
            BlockMap f = minimal_left_approximation(m, x, D);
            y = m.cone_of_map(f);
        } else {
            BlockMap g = minimal_right_approximation(m, x, D);
            y = m.cocone_of_map(g);
        }
        if (y.has_value() && !y->is_zero()) {
            std::vector<ObjId> T = D;
            for (ObjId z : y->support()) T.push_back(z);
            std::sort(T.begin(), T.end());
            T.erase(std::unique(T.begin(), T.end()), T.end());
            admit(T);
        }
    }

    // exchange-partner scan over the current registry
    for (ObjId z = 0; z < m.num_indec(); ++z) {
        if (std::find(S.ids.begin(), S.ids.end(), z) != S.ids.end()) continue;
        std::vector<ObjId> T = D;
        T.push_back(z);
        std::sort(T.begin(), T.end());
        admit(T);
    }

    if (candidates.empty())
        fail(ErrorKind::MutationUndefined,
             "no " + std::string(left ? "left" : "right") + " exchange partner at " +
                 m.indec(x).name);
    require(candidates.size() == 1, ErrorKind::InvariantViolation,
            "multiple exchange partners found; almost-complete silting not two-completable");
    return certify_rigid(m, *candidates.begin());
}

int SiltingPoset::find(const std::vector<ObjId>& node) const {
    for (size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i] == node) return static_cast<int>(i);
    return -1;
}

SiltingPoset explore_silt_poset(Model& m, int node_budget) {
    std::vector<ObjId> proj, inj;
    for (ObjId i = 0; i < m.num_indec(); ++i) {
        if (m.indec(i).projective) proj.push_back(i);
        if (m.indec(i).injective) inj.push_back(i);
    }
    RigidSubcat start = certify_rigid(m, proj);
    require(is_silting(m, start), ErrorKind::InvariantViolation,
            "projectives do not form a silting subcategory");

    SiltingPoset poset;
    std::set<std::vector<ObjId>> seen;
    std::vector<std::vector<ObjId>> queue{start.ids};
    seen.insert(start.ids);
    size_t qi = 0;
    while (qi < queue.size()) {
        if (static_cast<int>(seen.size()) > node_budget) {
            poset.partial = true;
            break;
        }
        std::vector<ObjId> S = queue[qi++];
        RigidSubcat RS = certify_rigid(m, S);
        for (ObjId x : S) {
            for (bool left : {true, false}) {
                try {
                    RigidSubcat T = mutate(m, RS, x, left);
                    if (!seen.count(T.ids)) {
                        seen.insert(T.ids);
                        queue.push_back(T.ids);
                    }
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::MutationUndefined) throw;
                }
            }
        }
    }

    poset.nodes.assign(seen.begin(), seen.end());
    std::sort(poset.nodes.begin(), poset.nodes.end());
    int N = static_cast<int>(poset.nodes.size());
    poset.geq.assign(N, std::vector<bool>(N, false));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) poset.geq[i][j] = silt_geq(m, poset.nodes[i], poset.nodes[j]);
    // covers
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (i == j || !poset.geq[i][j] || poset.geq[j][i]) continue;
            bool cover = true;
            for (int k = 0; k < N && cover; ++k) {
                if (k == i || k == j) continue;
                if (poset.geq[i][k] && !poset.geq[k][i] && poset.geq[k][j] && !poset.geq[j][k])
                    cover = false;
            }
            if (cover) poset.hasse.push_back({i, j});
        }
    std::sort(poset.hasse.begin(), poset.hasse.end());

    std::sort(proj.begin(), proj.end());
    std::sort(inj.begin(), inj.end());
    for (int i = 0; i < N; ++i) {
        bool ismax = true, ismin = true;
        for (int j = 0; j < N; ++j) {
            if (!poset.geq[i][j]) ismax = false;
            if (!poset.geq[j][i]) ismin = false;
        }
        if (ismax) poset.max_node = i;
        if (ismin) poset.min_node = i;
    }
    if (!poset.partial) {
        require(poset.max_node >= 0 && poset.nodes[poset.max_node] == proj,
                ErrorKind::InvariantViolation, "projectives are not the maximum silting");
        require(poset.min_node >= 0 && poset.nodes[poset.min_node] == inj,
                ErrorKind::InvariantViolation, "injectives are not the minimum silting");
    }
    return poset;
}

}  // namespace siltred
