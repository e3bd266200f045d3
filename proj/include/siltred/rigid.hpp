#ifndef SILTRED_RIGID_HPP
#define SILTRED_RIGID_HPP

#include "siltred/model.hpp"

namespace siltred {

// Set of indecomposables spanning a rigid additive subcategory, together with
// the list of checked E-vanishing pairs.
struct RigidSubcat {
    std::vector<ObjId> ids;  // sorted, distinct
    std::vector<std::pair<ObjId, ObjId>> certificate;
};

bool is_rigid_set(Model& m, const std::vector<ObjId>& ids);
RigidSubcat certify_rigid(Model& m, std::vector<ObjId> ids);  // InvariantViolation if not rigid

// |R| = rank criterion, valid in validated Krull-Schmidt models with a known
// silting object. RankUnknown when the model has no registered silting rank.
bool is_silting(Model& m, const RigidSubcat& R);

// All rigid subsets of the current registry, including the empty one,
// ordered by (size, lexicographic ids).
std::vector<std::vector<ObjId>> all_rigid_subsets(Model& m);

// silting order: S >= T iff E(s, t) = 0 for all s in S, t in T
bool silt_geq(Model& m, const std::vector<ObjId>& S, const std::vector<ObjId>& T);

// Irreducible silting mutation. Tries the constructive exchange (minimal
// approximation + cone/cocone, which can discover new indecomposables) and
// falls back to an exchange-partner scan over the registry. `left` mutation
// produces the strictly smaller neighbor.
RigidSubcat mutate(Model& m, const RigidSubcat& S, ObjId x, bool left);

struct SiltingPoset {
    std::vector<std::vector<ObjId>> nodes;  // sorted id lists, lexicographic order
    std::vector<std::vector<bool>> geq;     // geq[i][j] : nodes[i] >= nodes[j]
    std::vector<std::pair<int, int>> hasse;  // (upper, lower) covering pairs
    int max_node = -1, min_node = -1;
    bool partial = false;

    int find(const std::vector<ObjId>& node) const;
    bool leq(int a, int b) const { return geq[b][a]; }
};

// Mutation-closure exploration from add(proj). A blown budget yields a
// partial poset (partial = true) rather than an error.
SiltingPoset explore_silt_poset(Model& m, int node_budget = 1 << 12);

}  // namespace siltred

#endif
