#ifndef SILTRED_REDUCTION_HPP
#define SILTRED_REDUCTION_HPP

#include <map>

#include "siltred/rigid.hpp"

namespace siltred {

enum class Side { Left, Right, Both };

struct SearchBudget {
    int mult = 3;    // total multiplicity of multisets in witness searches
    int passes = 3;  // saturation passes
};

// ^R (Left: E(z, r) = 0), R^ (Right: E(r, z) = 0), or Z_R (Both).
std::vector<ObjId> perp(Model& m, const std::vector<ObjId>& R, Side side);

// Ideal quotient Z_R/[R]: registry = Z_R minus add(R), hom spaces are parent
// hom modulo the ideal of maps factoring through add(R), E spaces restrict.
class ReducedModel : public Model {
public:
    ReducedModel(ModelPtr parent, std::vector<ObjId> R);

    std::string name() const override { return name_; }
    int num_indec() override { return static_cast<int>(reg_.size()); }
    IndecInfo indec(ObjId id) override { return info_.at(id); }
    bool supports_hom() const override { return parent_->supports_hom(); }
    bool registry_complete() override { return true; }

    int hom_dim(ObjId x, ObjId y) override;
    int ext_dim(ObjId x, ObjId y) override;
    QVec compose_basis(ObjId x, ObjId y, ObjId z, int i, int j) override;
    QVec id_coords(ObjId x) override;
    Obj middle(const ExtClass& xi) override;
    std::optional<Obj> cone_of_map(const BlockMap& f) override;
    std::optional<Obj> cocone_of_map(const BlockMap& f) override;
    std::optional<int> silting_rank() override;
    bool conflation_constructor_definitive() const override {
        return parent_->conflation_constructor_definitive();
    }
    const Model* root() const override { return parent_->root(); }
    ObjId root_id(ObjId local) const override { return parent_->root_id(reg_.at(local)); }

    Model& parent() { return *parent_; }
    ModelPtr parent_ptr() { return parent_; }
    const std::vector<ObjId>& subtracted() const { return R_; }
    ObjId to_parent(ObjId local) const { return reg_.at(local); }
    int from_parent(ObjId parent_id) const;  // -1 if not present
    Obj lift_obj(const Obj& local) const;
    Obj strip_to_local(const Obj& parent_obj) const;  // drops add(R) summands

private:
    struct PairData {
        int dim = 0;
        std::vector<int> rep_idx;        // parent hom basis indices representing the quotient
        std::vector<QVec> ideal_span;    // [R](x,y) inside parent hom coordinates
        int parent_dim = 0;
    };
    PairData& pair_data(ObjId x, ObjId y);
    QVec project(ObjId x, ObjId y, const QVec& parent_coords);
    BlockMap lift_map(const BlockMap& f);

    ModelPtr parent_;
    std::vector<ObjId> R_;
    std::vector<ObjId> reg_;
    std::vector<IndecInfo> info_;
    std::string name_;
    std::map<std::pair<ObjId, ObjId>, PairData> pairs_;
    std::map<std::tuple<Obj, Obj, std::string>, Obj> middle_cache_;
};

// Saturates lazily-growing parents before snapshotting Z_R.
std::shared_ptr<ReducedModel> reduce(ModelPtr parent, const std::vector<ObjId>& R);

// ---- Bongartz completions ----

struct BongartzWitness {
    ObjId summand;
    bool trivial;  // u in add(R ∪ proj∩inj): conflation u >--> u -->> 0
    Obj end;       // injective (max) / projective (min) end of the conflation
    Obj mid;       // lies in add(R ∪ proj∩inj)
    QVec coords;
};

struct BongartzResult {
    RigidSubcat completion;
    std::vector<BongartzWitness> witnesses;
};

// Unique extremum of { S silting : S ⊇ R } in the silting order, with the
// defining approximation conflations as witnesses.
BongartzResult bongartz(Model& m, const RigidSubcat& R, bool maximal,
                        SearchBudget budget = SearchBudget());

// ---- condition (gCP) ----

struct GcpWitness {
    bool found = false;
    Obj end;     // c in add(R) for (CT3l), a in add(R) for (CT3r)
    Obj mid;     // in R^perp (left) resp. perp-R (right)
    QVec coords;
};

struct GcpReport {
    struct PerObject {
        ObjId x;
        GcpWitness left, right;
    };
    std::vector<PerObject> objects;
    bool pass = false;
};

GcpReport check_gcp(Model& m, const RigidSubcat& R, SearchBudget budget = SearchBudget());

// Image of x in the reduced category: middle of a (CT3l) witness, then middle
// of a (CT3r) witness of that middle, then strip add(R). `reversed` permutes
// the witness search order (choice-independence checks).
Obj approx_functor_F(Model& m, const RigidSubcat& R, const Obj& x, bool reversed = false,
                     SearchBudget budget = SearchBudget());

// ---- thick closures ----

enum class Tri { True, False, Undecided };

struct ThickClosureState {
    std::vector<ObjId> generators;
    std::vector<ObjId> members;  // discovered, sorted
    std::vector<std::string> log;
    bool closed = false;  // fixpoint under the bounded probe
};

ThickClosureState saturate_thick(Model& m, const std::vector<ObjId>& R,
                                 SearchBudget budget = SearchBudget());

// x ∈ thick(R)? Decision ladder: add(R) membership, saturation certificate,
// the Z_R obstruction, cone/cocone closure tests through minimal
// approximations, and a bounded conflation search. Sound; may be Undecided.
Tri thick_member(Model& m, const std::vector<ObjId>& R, ObjId x,
                 SearchBudget budget = SearchBudget());

// same decision ladder with a precomputed saturation (callers that compare
// many pairs keep one ThickClosureState per rigid subcategory)
Tri thick_member_with_saturation(Model& m, const std::vector<ObjId>& R,
                                 const ThickClosureState& sat, ObjId x,
                                 SearchBudget budget = SearchBudget());

Tri thick_equal(Model& m, const std::vector<ObjId>& R1, const std::vector<ObjId>& R2,
                SearchBudget budget = SearchBudget());

// ---- rigid bijection ----

struct RigidBijection {
    // forward: Q ⊇ R (ambient) -> rigid subcategory of the reduced model
    std::vector<ObjId> forward(const std::vector<ObjId>& Q) const;
    // backward: rigid subcategory of the reduced model -> ambient Q ⊇ R
    std::vector<ObjId> backward(const std::vector<ObjId>& reduced_ids) const;
    std::shared_ptr<ReducedModel> reduced;
    std::vector<ObjId> R;
};

RigidBijection rigid_bijection(ModelPtr m, const RigidSubcat& R);

// ---- 0-Auslander validator ----

struct ValidateOptions {
    int mult = 2;            // multiset bound in conflation searches
    bool injectives = false; // also check enough injectives
};

struct ValidatorReport {
    struct Axiom {
        std::string name;
        bool pass = true;
        std::string witness;  // first failure, human-readable
    };
    std::vector<Axiom> axioms;
    bool pass() const;
    std::string summary() const;
};

ValidatorReport validate_zero_auslander(Model& m, ValidateOptions opt = ValidateOptions());

}  // namespace siltred

#endif
