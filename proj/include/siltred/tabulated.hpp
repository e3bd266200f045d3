#ifndef SILTRED_TABULATED_HPP
#define SILTRED_TABULATED_HPP

#include <map>

#include "siltred/model.hpp"

namespace siltred {

// Dimension-level model backed by a lookup table: object flags, hom/ext
// dimensions, and explicit middle-term entries. No morphism composition is
// available, so only validation and poset-level operations apply.
//
// Text format (one entry per line, '#' comments):
//   object p proj
//   object n proj inj
//   object i inj
//   hom p p = 1
//   ext i p = 1
//   middle i p [1] = n
//   middle i+i p [1 -1] = n+i
// Multisets are '+'-joined object names in declaration order; coordinates run
// over the (c copy, a copy) blocks of the ext table.
class TabulatedModel : public Model {
public:
    static std::shared_ptr<TabulatedModel> parse(const std::string& text, std::string name);
    static std::shared_ptr<TabulatedModel> parse_file(const std::string& path, std::string name);

    std::string name() const override { return name_; }
    int num_indec() override { return static_cast<int>(objects_.size()); }
    IndecInfo indec(ObjId id) override { return objects_.at(id); }
    bool supports_hom() const override { return false; }
    bool registry_complete() override { return true; }

    int hom_dim(ObjId x, ObjId y) override;
    int ext_dim(ObjId x, ObjId y) override;
    QVec compose_basis(ObjId x, ObjId y, ObjId z, int i, int j) override;
    QVec id_coords(ObjId x) override;
    Obj middle(const ExtClass& xi) override;
    std::optional<int> silting_rank() override;

    // a passed validation certifies that the flagged projectives are silting
    void mark_validated() { validated_ = true; }

    struct MiddleKey {
        Obj c, a;
        std::vector<std::string> coords;
        bool operator<(const MiddleKey& o) const;
    };
    const std::map<MiddleKey, Obj>& middle_entries() const { return middles_; }
    ObjId id_of(const std::string& name) const;

private:
    std::string name_;
    std::vector<IndecInfo> objects_;
    std::map<std::string, ObjId> by_name_;
    std::map<std::pair<ObjId, ObjId>, int> hom_, ext_;
    std::map<MiddleKey, Obj> middles_;
    bool validated_ = false;
};

// Serialize any model in the tabulated format; middle entries are exported for
// all multisets of total multiplicity <= mult_bound and all small classes.
std::string to_tabulated_text(Model& m, int mult_bound = 2);

}  // namespace siltred

#endif
