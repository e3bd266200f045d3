#ifndef SILTRED_GROUP_HPP
#define SILTRED_GROUP_HPP

#include "siltred/picture.hpp"

namespace siltred {

// Finitely presented group: words are sequences of nonzero ints, +k / -k for
// gens[k-1] and its inverse. Relators are kept freely reduced.
struct GroupPresentation {
    std::vector<std::string> gens;
    std::vector<std::vector<int>> relators;
};

std::vector<int> free_reduce(std::vector<int> w);
std::vector<int> invert_word(const std::vector<int>& w);

// plain-text serialization: "gens: a b c" / "rels: a*b*A*B" (capitalized
// initial = inverse)
std::string presentation_text(const GroupPresentation& p);

// ---- poset route ----

struct PosetPresentation {
    GroupPresentation pres;
    std::vector<std::pair<int, int>> intervals;        // generator k <-> interval (lo, hi)
    std::vector<std::tuple<int, int, int>> chains;      // relator k <-> chain lo <= mid <= hi
    int interval_index(int lo, int hi) const;
};

// Generators: all intervals of the silting poset; relators: one per chain
// S1 <= S1.5 <= S2 (degenerate intervals become trivial generators).
PosetPresentation presentation_from_poset(const SiltingPoset& poset);

// Chain relators plus identifications of irreducible intervals whose
// intersections are thick-equal (each rewrites to the same loop through the
// shared rank-one reduction); this is the relator set that matches the nerve
// fundamental group on every corpus model.
PosetPresentation presentation_from_poset_identified(Model& m, const SiltingPoset& poset,
                                                     SearchBudget budget = SearchBudget());

// Constructive rewriting of every interval generator as a product of
// irreducible-interval generators, using only chain relators.
struct IntervalRewrite {
    std::pair<int, int> interval;
    std::vector<std::pair<int, int>> factors;            // covering intervals, in order
    std::vector<std::tuple<int, int, int>> chains_used;  // the relators applied
};
std::vector<IntervalRewrite> rewrite_intervals_to_irreducibles(const SiltingPoset& poset,
                                                               const PosetPresentation& pp);

// ---- nerve route ----

// Edge-path presentation of the fundamental group of the nerve's 2-skeleton,
// based at the zero object: generators = non-identity morphisms, relators =
// composition triangles plus a BFS spanning tree collapse.
struct NervePresentation {
    GroupPresentation pres;
    std::vector<int> gen_morphism;  // generator k <-> morphism id
    std::vector<int> tree_edges;    // morphism ids in the spanning tree
    int gen_of_morphism(int morphism_id) const;
};
NervePresentation pi1_nerve(const PictureCategory& cat);

// ---- invariants ----

struct GroupInvariants {
    int free_rank = 0;
    std::vector<mpz_class> torsion;             // invariant factors > 1
    std::map<std::string, long> hom_counts;     // counts into Z/2, Z/3, S3
    bool operator==(const GroupInvariants& o) const {
        return free_rank == o.free_rank && torsion == o.torsion && hom_counts == o.hom_counts;
    }
    std::string str() const;
};

// Abelianization via exact Smith normal form; homomorphism counts by
// exhaustive generator-image search. HomCountBudgetExceeded guards blowups.
GroupInvariants invariants(const GroupPresentation& p, long budget = 20000000);

// canonical verdict string: "1", "Z", "Z^2 x Z/3", ...
std::string abelianization_verdict(const GroupInvariants& inv);

// ---- Tietze simplification ----

struct TietzeResult {
    GroupPresentation pres;
    std::vector<std::string> log;
};
TietzeResult tietze_simplify(const GroupPresentation& p, int budget = 1000);

// ---- B-generators (picture group generators from rank-1 reductions) ----

struct BGenReport {
    std::vector<int> b_objects;  // picture objects where every nonzero rigid is silting
                                 // and |Hom(-, O)| = 2
    struct Rewrite {
        std::pair<int, int> interval;  // irreducible interval (lo, hi) in the poset
        int b_object = -1;
        int factor_morphism = -1;      // root -> B
        int upper_morphism = -1;       // B -> O composing to the larger silting
        int lower_morphism = -1;       // B -> O composing to the smaller silting
        bool word_identity_ok = false;
    };
    std::vector<Rewrite> rewrites;
    bool pass = true;
};

BGenReport b_generators(PictureCategory& cat, const SiltingPoset& poset,
                        const NervePresentation& nerve);

}  // namespace siltred

#endif
