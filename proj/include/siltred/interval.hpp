#ifndef SILTRED_INTERVAL_HPP
#define SILTRED_INTERVAL_HPP

#include <map>

#include "siltred/model.hpp"

namespace siltred {

// Finite-dimensional modules over the path algebra of the linearly oriented
// A_n quiver, realized as interval representations M(a,b) (support a..b with
// identity maps). Projectives are M(i,n), injectives M(1,j); M(1,n) is the
// unique projective-injective. Extensions are computed through arrow cocycles
// on explicit representations.
class IntervalModel : public Model {
public:
    explicit IntervalModel(int n, std::string name = "");

    std::string name() const override { return name_; }
    int num_indec() override { return static_cast<int>(intervals_.size()); }
    IndecInfo indec(ObjId id) override;
    bool supports_hom() const override { return true; }
    bool registry_complete() override { return true; }

    int hom_dim(ObjId x, ObjId y) override;
    int ext_dim(ObjId x, ObjId y) override;
    QVec compose_basis(ObjId x, ObjId y, ObjId z, int i, int j) override;
    QVec id_coords(ObjId x) override;
    Obj middle(const ExtClass& xi) override;
    std::optional<Obj> cone_of_map(const BlockMap& f) override;
    std::optional<Obj> cocone_of_map(const BlockMap& f) override;
    std::optional<int> silting_rank() override { return n_; }
    bool conflation_constructor_definitive() const override { return true; }

    int n() const { return n_; }
    ObjId interval_id(int a, int b) const;  // 1-based, a <= b
    std::pair<int, int> interval_of(ObjId id) const { return intervals_.at(id); }

    // decomposition of an explicit representation by the rank formula
    struct Rep {
        std::vector<int> dims;    // per vertex 1..n (index 0 unused)
        std::vector<QMat> maps;   // maps[v]: V_v -> V_{v+1}, for v = 1..n-1
    };
    Rep rep_of(const Obj& x) const;
    Obj decompose_rep(const Rep& r) const;

private:
    struct HomData {
        int dim = 0;
        std::vector<std::vector<Rat>> reps;  // per basis element: scalar per vertex
    };
    struct ExtData {
        int dim = 0;
        std::vector<std::vector<Rat>> reps;  // cocycle: scalar per arrow v -> v+1
        std::vector<QVec> span;              // coboundaries (flattened cocycles)
    };

    HomData& hom_data(ObjId x, ObjId y);
    ExtData& ext_data(ObjId x, ObjId y);

    int n_;
    std::string name_;
    std::vector<std::pair<int, int>> intervals_;
    std::map<std::pair<int, int>, ObjId> index_;
    std::map<std::pair<ObjId, ObjId>, HomData> hom_cache_;
    std::map<std::pair<ObjId, ObjId>, ExtData> ext_cache_;
    std::map<std::tuple<Obj, Obj, std::string>, Obj> middle_cache_;
};

}  // namespace siltred

#endif
