#ifndef SILTRED_TWOTERM_HPP
#define SILTRED_TWOTERM_HPP

#include <map>
#include <memory>

#include "siltred/model.hpp"
#include "siltred/quiver.hpp"

namespace siltred {

// Two-term complexes of projectives P_1 -> P_0 over a bound quiver algebra,
// morphisms = chain maps modulo homotopy. Projectives of the model are the
// degree-0 stalks P(v), injectives the degree-1 stalks SP(v); the model is a
// reduced 0-Auslander category.
class TwoTermModel : public Model {
public:
    // Differential matrix entries are algebra elements in global path-basis
    // coordinates; rows run over degree-0 copies, columns over degree-1 copies.
    struct Complex {
        std::vector<int> deg1, deg0;            // vertex index per copy
        std::vector<std::vector<QVec>> d;        // [deg0 copy][deg1 copy]
    };

    TwoTermModel(BoundQuiverAlgebra alg, std::string name);

    std::string name() const override { return name_; }
    int num_indec() override { return static_cast<int>(registry_.size()); }
    IndecInfo indec(ObjId id) override { return registry_.at(id).info; }
    bool supports_hom() const override { return true; }
    bool registry_complete() override { return saturated_; }

    int hom_dim(ObjId x, ObjId y) override;
    int ext_dim(ObjId x, ObjId y) override;
    QVec compose_basis(ObjId x, ObjId y, ObjId z, int i, int j) override;
    QVec id_coords(ObjId x) override;
    Obj middle(const ExtClass& xi) override;
    std::optional<Obj> cone_of_map(const BlockMap& f) override;
    std::optional<Obj> cocone_of_map(const BlockMap& f) override;
    std::optional<int> silting_rank() override { return alg_.num_vertices(); }
    bool conflation_constructor_definitive() const override { return true; }
    void saturate(int passes) override;

    const BoundQuiverAlgebra& algebra() const { return alg_; }

    // Minimalize, split into indecomposable summands, and register them.
    Obj register_complex(const Complex& c);
    const Complex& stored_complex(ObjId id) const { return registry_.at(id).cx; }
    ObjId stalk_p(int vertex) const { return vertex; }
    ObjId stalk_sp(int vertex) const { return alg_.num_vertices() + vertex; }

    // exposed for tests: minimal form of a complex
    Complex minimalized(const Complex& c) const;

private:
    struct RegEntry {
        Complex cx;
        IndecInfo info;
    };

    struct HomData {
        int dim = 0;
        std::vector<std::pair<QMat, QMat>> reps;     // chain-map matrices (f1 on paths, f0 on paths)
        std::vector<QVec> rep_flat;                  // corner-coordinate vectors of reps
        std::vector<QVec> htpy_span;                 // homotopy subspace, flattened
        int flat_size = 0;
    };
    struct ExtData {
        int dim = 0;
        std::vector<QVec> reps;                      // corner-coordinate vectors of g: X1 -> Y0
        std::vector<QVec> span;                      // coboundary subspace
        int flat_size = 0;
    };

    // path-coordinate machinery
    int pdim(int v) const { return static_cast<int>(pbasis_[v].size()); }
    QMat element_matrix(const QVec& u, int src_vertex, int dst_vertex) const;
    QMat module_map_matrix(const std::vector<std::vector<QVec>>& entries,
                           const std::vector<int>& src, const std::vector<int>& dst) const;

    HomData& hom_data(ObjId x, ObjId y);
    ExtData& ext_data(ObjId x, ObjId y);
    QVec hom_class_coords(ObjId x, ObjId y, const QVec& flat);

    Complex direct_sum(const std::vector<ObjId>& copies) const;
    Obj decompose_and_register(const Complex& c);
    Obj decompose_minimal(const Complex& minimal);
    Obj decompose_connected(const Complex& minimal);
    ObjId identify_or_register(const Complex& minimal);
    std::pair<QMat, QMat> blockmap_chain_matrices(const BlockMap& f);

    BoundQuiverAlgebra alg_;
    std::string name_;
    std::vector<RegEntry> registry_;
    std::vector<std::vector<int>> pbasis_;           // per vertex: path basis indices (src = v)
    std::vector<int> ppos_;                          // global basis index -> position in its pbasis
    std::map<std::pair<ObjId, ObjId>, HomData> hom_cache_;
    std::map<std::pair<ObjId, ObjId>, ExtData> ext_cache_;
    std::map<std::tuple<ObjId, ObjId, ObjId>, std::vector<std::vector<QVec>>> comp_cache_;
    std::map<std::tuple<Obj, Obj, std::string>, Obj> middle_cache_;
    std::map<std::string, Obj> decompose_memo_;  // canonical minimal form -> summands
    int anon_counter_ = 0;
    bool saturated_ = false;
};

}  // namespace siltred

#endif
