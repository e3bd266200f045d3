#ifndef SILTRED_QUIVER_HPP
#define SILTRED_QUIVER_HPP

#include <map>
#include <string>
#include <vector>

#include "siltred/matrix.hpp"

namespace siltred {

struct Arrow {
    std::string name;
    int src;
    int tgt;
};

struct RelationTerm {
    Rat coef;
    std::vector<int> arrows;  // arrow indices, composed left to right
};
using Relation = std::vector<RelationTerm>;

// Bound quiver algebra kQ/I over the rationals with an explicit path-monomial
// basis. Paths compose left to right: for p.q the target of p is the source
// of q, and a path p lies in the corner e_{src(p)} A e_{tgt(p)}.
class BoundQuiverAlgebra {
public:
    struct Options {
        int max_path_length = 16;
        int max_raw_paths = 50000;
    };

    BoundQuiverAlgebra(std::vector<std::string> vertices, std::vector<Arrow> arrows,
                       std::vector<Relation> relations, Options opt);
    BoundQuiverAlgebra(std::vector<std::string> vertices, std::vector<Arrow> arrows,
                       std::vector<Relation> relations);

    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    const std::string& vertex_name(int v) const { return vertices_[v]; }
    int num_arrows() const { return static_cast<int>(arrows_.size()); }
    const Arrow& arrow(int a) const { return arrows_[a]; }

    int dim() const { return static_cast<int>(basis_.size()); }
    // basis path data
    int basis_src(int k) const { return basis_src_[k]; }
    int basis_tgt(int k) const { return basis_tgt_[k]; }
    int basis_len(int k) const { return static_cast<int>(basis_[k].size()); }
    std::string basis_path_name(int k) const;

    int trivial_path(int v) const { return trivial_[v]; }  // basis index of e_v
    QVec unit() const;

    // product of algebra elements in basis coordinates
    QVec mul(const QVec& x, const QVec& y) const;
    QVec basis_mul(int i, int j) const;

    // basis indices spanning the corner e_i A e_j (paths from i to j)
    const std::vector<int>& corner(int i, int j) const { return corners_[i][j]; }
    // corner of the radical: paths of length >= 1 from i to j
    std::vector<int> radical_corner(int i, int j) const;

    std::string describe() const;

private:
    void build(const std::vector<Relation>& relations, const Options& opt);

    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    std::vector<std::vector<int>> basis_;  // arrow index sequences (empty = trivial)
    std::vector<int> basis_src_, basis_tgt_;
    std::vector<int> trivial_;
    std::map<std::vector<int>, QVec> normal_form_;  // raw path -> basis coords
    std::vector<std::vector<std::vector<int>>> corners_;
    std::vector<std::vector<QVec>> mult_table_;
};

// AlgebraSpec text format:
//   vertices: 1 2
//   arrows:
//     a: 1 -> 2
//   relations:
//     a.b = 0
//     1/2*a.b + -1*c.d = 0
// '#' starts a comment. Throws MalformedSpec / InfiniteDimensional.
BoundQuiverAlgebra load_algebra(const std::string& text,
                                BoundQuiverAlgebra::Options opt = BoundQuiverAlgebra::Options());
BoundQuiverAlgebra load_algebra_file(
    const std::string& path, BoundQuiverAlgebra::Options opt = BoundQuiverAlgebra::Options());

}  // namespace siltred

#endif
