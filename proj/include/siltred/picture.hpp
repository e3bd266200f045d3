#ifndef SILTRED_PICTURE_HPP
#define SILTRED_PICTURE_HPP

#include "siltred/reduction.hpp"

namespace siltred {

struct PictureBudgets {
    int poset_nodes = 1 << 12;
    SearchBudget search;
    int saturate_passes = 8;
    bool recheck_transport = true;  // recompute transports with permuted search order
};

// Objects are thick-equivalence classes of rigid subcategories; two reduction
// outcomes are merged only on a certified thick_equal = True, and Undecided
// aborts the construction.
struct PictureObject {
    int id = -1;
    std::vector<ObjId> rep;                       // canonical rigid representative
    std::vector<std::vector<ObjId>> provenance;   // generators identified into this object
    std::shared_ptr<ReducedModel> reduced;
};

struct PictureMorphism {
    int id = -1, src = -1, dst = -1;
    std::vector<ObjId> payload;  // ambient ids inside Z_{rep(src)} minus add(rep(src))
    int rank = 0;
};

class PictureCategory {
public:
    ModelPtr ambient;
    std::vector<PictureObject> objects;
    std::vector<PictureMorphism> morphisms;
    std::map<std::pair<int, int>, int> comp;  // (f, g) -> g∘f for f.dst == g.src
    int root = -1, zero = -1;

    int object_of_rigid(const std::vector<ObjId>& R) const;  // -1 if unknown
    int morphism_id(int src, const std::vector<ObjId>& payload) const;  // -1 if none
    int identity_of(int obj) const;
    std::vector<int> morphisms_from(int obj) const;
    std::vector<int> morphisms_into(int obj) const;
    int compose(int f, int g) const;  // g∘f

    std::map<std::vector<ObjId>, int> class_of_rigid;  // every enumerated rigid -> object
};

PictureCategory build_picture_category(ModelPtr m, PictureBudgets budgets = PictureBudgets());

// extensional associativity on every composable triple
bool verify_associativity(const PictureCategory& cat, std::string* first_failure = nullptr);

struct CheckReport {
    bool pass = true;
    std::vector<std::string> failures;
    void fail(const std::string& s) {
        pass = false;
        failures.push_back(s);
    }
};

// rank additivity, 2^l factorization lattices, first/last factor determination
CheckReport check_cubical(PictureCategory& cat);
// Igusa's pairwise-compatibility conditions on first and last factors
CheckReport check_I1_I2(PictureCategory& cat);

// the reduction-by-projective-injectives functor: left adjoint to the
// inclusion of the reduced picture category; triangle identities checked
struct HomotopyReductionReport {
    CheckReport checks;
    int ambient_objects = 0;
    int reduced_objects = 0;
};
HomotopyReductionReport homotopy_reduction_check(ModelPtr m,
                                                 PictureBudgets budgets = PictureBudgets());

// tiny-category isomorphism test between full subcategories (brute force)
bool full_subcategory_isomorphic(const PictureCategory& a, const std::vector<int>& objs_a,
                                 const PictureCategory& b, const std::vector<int>& objs_b);

std::string picture_to_dot(PictureCategory& cat);
std::string picture_to_json_text(PictureCategory& cat, bool certificates);

}  // namespace siltred

#endif
