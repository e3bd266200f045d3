#ifndef SILTRED_MODEL_HPP
#define SILTRED_MODEL_HPP

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "siltred/matrix.hpp"

namespace siltred {

using ObjId = int;

struct IndecInfo {
    std::string name;
    bool projective = false;
    bool injective = false;
};

// Formal finite direct sum of registered indecomposables; parts sorted by id.
struct Obj {
    std::vector<std::pair<ObjId, int>> parts;

    static Obj of(ObjId id, int mult = 1);
    static Obj zero() { return Obj{}; }

    bool is_zero() const { return parts.empty(); }
    int total() const;
    int mult_of(ObjId id) const;
    Obj plus(const Obj& o) const;
    bool operator==(const Obj& o) const { return parts == o.parts; }
    bool operator<(const Obj& o) const { return parts < o.parts; }

    // ids with multiplicity, ascending
    std::vector<ObjId> copies() const;
    // distinct ids
    std::vector<ObjId> support() const;
};

Obj obj_from_ids(const std::vector<ObjId>& ids);
// remove all copies of the given ids
Obj obj_strip(const Obj& x, const std::set<ObjId>& ids);

// Morphism between formal sums, stored blockwise: blocks[i][j] holds the
// coordinates of the (copy i of src) -> (copy j of dst) component in the
// model's hom basis for that ordered pair of indecomposables.
struct BlockMap {
    Obj src, dst;
    std::vector<std::vector<QVec>> blocks;  // [src copy][dst copy]
};

// Extension class xi in E(c, a), i.e. a conflation a >--> m -->> c.
// Coordinates run over the copy-pair blocks of E(c_i, a_j) in (c copy, a copy)
// lexicographic order.
struct ExtClass {
    Obj c, a;
    QVec coords;
};

// A finite (0-Auslander candidate) extriangulated model: registry of
// indecomposables with exact Hom/E data and realization middle terms.
class Model {
public:
    virtual ~Model() = default;

    virtual std::string name() const = 0;
    virtual int num_indec() = 0;
    virtual IndecInfo indec(ObjId id) = 0;

    // Models backed by lookup tables have no morphism composition.
    virtual bool supports_hom() const = 0;
    // False while the registry may still grow (lazily discovered objects).
    virtual bool registry_complete() = 0;

    virtual int hom_dim(ObjId x, ObjId y) = 0;
    virtual int ext_dim(ObjId x, ObjId y) = 0;

    // basis_j(y,z) composed after basis_i(x,y), in hom(x,z) coordinates
    virtual QVec compose_basis(ObjId x, ObjId y, ObjId z, int i, int j) = 0;
    virtual QVec id_coords(ObjId x) = 0;

    // Middle term of the conflation realizing the class; decomposed multiset.
    virtual Obj middle(const ExtClass& xi) = 0;

    // Cone / cocone of an explicit map, when the backend can build conflations
    // x >--> b -->> y (cone) or y >--> b -->> x (cocone of b -->> x).
    virtual std::optional<Obj> cone_of_map(const BlockMap& f) { (void)f; return std::nullopt; }
    virtual std::optional<Obj> cocone_of_map(const BlockMap& f) { (void)f; return std::nullopt; }

    // Number of indecomposable summands of any silting object, when a silting
    // object is known (projectives of a validated model).
    virtual std::optional<int> silting_rank() = 0;

    // True when cone_of_map / cocone_of_map are complete constructions, so a
    // nullopt certifies that no conflation with the given map exists.
    virtual bool conflation_constructor_definitive() const { return false; }

    // Identity of an object across nested reductions: id in the root backend.
    virtual const Model* root() const { return this; }
    virtual ObjId root_id(ObjId local) const { return local; }

    // Let lazily-growing backends register middle terms of small classes.
    virtual void saturate(int passes) { (void)passes; }
};

using ModelPtr = std::shared_ptr<Model>;

// ---- generic operations over the interface ----

int hom_dim(Model& m, const Obj& x, const Obj& y);
int ext_dim(Model& m, const Obj& c, const Obj& a);

BlockMap zero_map(Model& m, const Obj& src, const Obj& dst);
BlockMap identity_map(Model& m, const Obj& x);
// basis of Hom(src, dst) as block maps (one unit coordinate each)
std::vector<BlockMap> hom_basis(Model& m, const Obj& src, const Obj& dst);
BlockMap compose(Model& m, const BlockMap& f, const BlockMap& g);  // g after f
BlockMap map_add(const BlockMap& f, const BlockMap& g);
BlockMap map_scale(const BlockMap& f, const Rat& c);
bool map_is_zero(const BlockMap& f);
QVec map_flatten(const BlockMap& f);  // block coords concatenated (copy-major)

// Flattened coordinates of g∘f for f: x->b (fixed) as a linear map of g;
// rows: Hom(x, n) coordinates, cols: Hom(b, n) coordinates.
QMat pairing_matrix(Model& m, const BlockMap& f, ObjId n);
// dual: rows Hom(n, x), cols Hom(n, b) for g: b->x fixed, f |-> g∘f
QMat pairing_matrix_into(Model& m, const BlockMap& g, ObjId n);

// Minimal left add(D)-approximation of x: deterministic universal map with
// greedy copy deletion; surjectivity of Hom(b,n) -> Hom(x,n) for all n in D.
BlockMap minimal_left_approximation(Model& m, ObjId x, const std::vector<ObjId>& D);
BlockMap minimal_right_approximation(Model& m, ObjId x, const std::vector<ObjId>& D);

// Small deterministic enumeration of extension classes of E(c, a):
// zero, then all {-1,0,1} vectors when dim <= 2, else 0 / ±e_i / e_i ± e_j.
std::vector<QVec> enumerate_classes(int dim);

// multisets over the given ids with 1 <= total multiplicity <= bound
std::vector<Obj> enumerate_multisets(const std::vector<ObjId>& ids, int bound);

std::string obj_name(Model& m, const Obj& x);

}  // namespace siltred

#endif
