#include "siltred/quiver.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "siltred/error.hpp"

namespace siltred {

namespace {

std::string path_key_name(const std::vector<Arrow>& arrows, const std::vector<int>& p, int src,
                          const std::vector<std::string>& vnames) {
    if (p.empty()) return "e_" + vnames[src];
    std::string s;
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) s += ".";
        s += arrows[p[i]].name;
    }
    return s;
}

}  // namespace

BoundQuiverAlgebra::BoundQuiverAlgebra(std::vector<std::string> vertices, std::vector<Arrow> arrows,
                                       std::vector<Relation> relations)
    : BoundQuiverAlgebra(std::move(vertices), std::move(arrows), std::move(relations), Options()) {}

BoundQuiverAlgebra::BoundQuiverAlgebra(std::vector<std::string> vertices, std::vector<Arrow> arrows,
                                       std::vector<Relation> relations, Options opt)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
    require(!vertices_.empty(), ErrorKind::MalformedSpec, "algebra needs at least one vertex");
    for (const Arrow& a : arrows_) {
        require(a.src >= 0 && a.src < num_vertices() && a.tgt >= 0 && a.tgt < num_vertices(),
                ErrorKind::MalformedSpec, "arrow endpoints out of range");
    }
    for (const Relation& rel : relations) {
        require(!rel.empty(), ErrorKind::MalformedSpec, "empty relation");
        int s = -1, t = -1;
        for (const RelationTerm& term : rel) {
            require(term.arrows.size() >= 2, ErrorKind::MalformedSpec,
                    "relation paths must have length >= 2");
            int cs = arrows_[term.arrows.front()].src;
            int ct = arrows_[term.arrows.back()].tgt;
            for (size_t i = 0; i + 1 < term.arrows.size(); ++i)
                require(arrows_[term.arrows[i]].tgt == arrows_[term.arrows[i + 1]].src,
                        ErrorKind::MalformedSpec, "non-composable path in relation");
            if (s < 0) { s = cs; t = ct; }
            require(cs == s && ct == t, ErrorKind::MalformedSpec,
                    "relation terms must be parallel paths");
        }
    }
    build(relations, opt);
}

void BoundQuiverAlgebra::build(const std::vector<Relation>& relations, const Options& opt) {
    // enumerate raw paths length by length; per length keep lexicographic order
    std::vector<std::vector<std::vector<int>>> raw;  // raw[len] = list of arrow sequences
    raw.push_back({});
    for (int v = 0; v < num_vertices(); ++v) raw[0].push_back({});  // placeholder; trivial paths below

    // trivial paths are identified by source vertex, encode as empty sequence + separate src table;
    // for uniformity raw paths of length 0 are keyed by vertex.
    struct RawPath {
        std::vector<int> arrows;
        int src, tgt;
    };
    std::vector<std::vector<RawPath>> paths(1);
    for (int v = 0; v < num_vertices(); ++v) paths[0].push_back(RawPath{{}, v, v});

    int total_raw = num_vertices();
    bool closed_ok = false;

    std::vector<RawPath> all;  // flattened, in (length, lex) order
    std::vector<int> len_offset{0};

    auto flatten_upto = [&](int maxlen) {
        all.clear();
        len_offset.assign(1, 0);
        for (int l = 0; l <= maxlen; ++l) {
            for (const RawPath& p : paths[l]) all.push_back(p);
            len_offset.push_back(static_cast<int>(all.size()));
        }
    };

    // ideal span recomputed over V_{<=L}; closure when every length-L path lies in it
    for (int L = 1; L <= opt.max_path_length; ++L) {
        std::vector<RawPath> next;
        for (const RawPath& p : paths[L - 1]) {
            for (int a = 0; a < num_arrows(); ++a) {
                if (arrows_[a].src != p.tgt) continue;
                RawPath q{p.arrows, p.src, arrows_[a].tgt};
                q.arrows.push_back(a);
                next.push_back(std::move(q));
            }
        }
        std::sort(next.begin(), next.end(),
                  [](const RawPath& x, const RawPath& y) { return x.arrows < y.arrows; });
        total_raw += static_cast<int>(next.size());
        require(total_raw <= opt.max_raw_paths, ErrorKind::InfiniteDimensional,
                "raw path count exceeds bound; algebra looks infinite-dimensional");
        paths.push_back(std::move(next));

        flatten_upto(L);
        int N = static_cast<int>(all.size());
        std::map<std::vector<int>, int> index_of;  // nonempty sequences
        for (int i = 0; i < N; ++i)
            if (!all[i].arrows.empty()) index_of[all[i].arrows] = i;

        // span of { u * rel * v } truncated at total length L
        std::vector<QVec> ideal;
        for (const Relation& rel : relations) {
            int rs = arrows_[rel.front().arrows.front()].src;
            int rt = arrows_[rel.front().arrows.back()].tgt;
            for (int i = 0; i < N; ++i) {
                const RawPath& u = all[i];
                if (u.tgt != rs) continue;
                for (int j = 0; j < N; ++j) {
                    const RawPath& v = all[j];
                    if (v.src != rt) continue;
                    QVec row(N);
                    bool fits = true;
                    for (const RelationTerm& term : rel) {
                        std::vector<int> w = u.arrows;
                        w.insert(w.end(), term.arrows.begin(), term.arrows.end());
                        w.insert(w.end(), v.arrows.begin(), v.arrows.end());
                        if (static_cast<int>(w.size()) > L) { fits = false; break; }
                        auto it = index_of.find(w);
                        require(it != index_of.end(), ErrorKind::InvariantViolation,
                                "path enumeration is missing a relation product");
                        row[it->second] += term.coef;
                    }
                    if (fits) ideal.push_back(std::move(row));
                }
            }
        }

        std::vector<QVec> span = row_space_basis(ideal);
        bool closed = true;
        for (int i = len_offset[L]; i < len_offset[L + 1]; ++i) {
            QVec e(N);
            e[i] = Rat(1);
            if (!in_span(span, e)) { closed = false; break; }
        }
        if (!closed) continue;
        closed_ok = true;

        // Quotient basis: non-pivot coordinates of the ideal span.
        QMat M = span.empty() ? QMat(0, N) : QMat::from_rows(span);
        std::vector<int> pivots = M.rref();
        std::vector<bool> is_pivot(N, false);
        for (int p : pivots) is_pivot[p] = true;

        std::vector<int> coord_to_basis(N, -1);
        for (int i = 0; i < N; ++i) {
            if (is_pivot[i]) continue;
            coord_to_basis[i] = static_cast<int>(basis_.size());
            basis_.push_back(all[i].arrows);
            basis_src_.push_back(all[i].src);
            basis_tgt_.push_back(all[i].tgt);
        }

        auto reduce_coord = [&](int i) {
            QVec nf(basis_.size());
            if (coord_to_basis[i] >= 0) {
                nf[coord_to_basis[i]] = Rat(1);
                return nf;
            }
            for (size_t r = 0; r < pivots.size(); ++r) {
                if (pivots[r] != i) continue;
                for (int c = 0; c < N; ++c) {
                    if (c == i || M.at(static_cast<int>(r), c).is_zero()) continue;
                    require(coord_to_basis[c] >= 0, ErrorKind::InvariantViolation,
                            "RREF row touches a pivot coordinate");
                    nf[coord_to_basis[c]] = -M.at(static_cast<int>(r), c);
                }
                return nf;
            }
            fail(ErrorKind::InvariantViolation, "pivot coordinate without matching row");
        };

        for (int i = 0; i < N; ++i)
            normal_form_[all[i].arrows.empty() ? std::vector<int>{-1 - all[i].src}
                                               : all[i].arrows] = reduce_coord(i);
        break;
    }
    require(closed_ok, ErrorKind::InfiniteDimensional,
            "path growth did not close within the length bound");

    trivial_.assign(num_vertices(), -1);
    for (int k = 0; k < dim(); ++k)
        if (basis_[k].empty()) trivial_[basis_src_[k]] = k;
    for (int v = 0; v < num_vertices(); ++v)
        require(trivial_[v] >= 0, ErrorKind::InvariantViolation, "trivial path killed by relations");

    corners_.assign(num_vertices(),
                    std::vector<std::vector<int>>(num_vertices()));
    for (int k = 0; k < dim(); ++k) corners_[basis_src_[k]][basis_tgt_[k]].push_back(k);

    // multiplication table
    mult_table_.assign(dim(), std::vector<QVec>(dim()));
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j) {
            QVec zero(dim());
            if (basis_tgt_[i] != basis_src_[j]) { mult_table_[i][j] = zero; continue; }
            std::vector<int> w = basis_[i];
            w.insert(w.end(), basis_[j].begin(), basis_[j].end());
            std::vector<int> key = w.empty() ? std::vector<int>{-1 - basis_src_[i]} : w;
            auto it = normal_form_.find(key);
            if (it == normal_form_.end()) {
                mult_table_[i][j] = zero;  // longer than the closing length: lies in the ideal
            } else {
                mult_table_[i][j] = it->second;
            }
        }
}

QVec BoundQuiverAlgebra::unit() const {
    QVec u(dim());
    for (int v = 0; v < num_vertices(); ++v) u[trivial_[v]] = Rat(1);
    return u;
}

QVec BoundQuiverAlgebra::mul(const QVec& x, const QVec& y) const {
    QVec out(dim());
    for (int i = 0; i < dim(); ++i) {
        if (x[i].is_zero()) continue;
        for (int j = 0; j < dim(); ++j) {
            if (y[j].is_zero()) continue;
            const QVec& m = mult_table_[i][j];
            Rat c = x[i] * y[j];
            for (int k = 0; k < dim(); ++k)
                if (!m[k].is_zero()) out[k] += c * m[k];
        }
    }
    return out;
}

QVec BoundQuiverAlgebra::basis_mul(int i, int j) const { return mult_table_[i][j]; }

std::vector<int> BoundQuiverAlgebra::radical_corner(int i, int j) const {
    std::vector<int> out;
    for (int k : corners_[i][j])
        if (!basis_[k].empty()) out.push_back(k);
    return out;
}

std::string BoundQuiverAlgebra::basis_path_name(int k) const {
    return path_key_name(arrows_, basis_[k], basis_src_[k], vertices_);
}

std::string BoundQuiverAlgebra::describe() const {
    std::ostringstream os;
    os << "quiver algebra: " << num_vertices() << " vertices, " << num_arrows()
       << " arrows, dimension " << dim();
    return os.str();
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

BoundQuiverAlgebra load_algebra(const std::string& text, BoundQuiverAlgebra::Options opt) {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    std::vector<std::string> relation_lines;

    enum class Section { None, Vertices, Arrows, Relations };
    Section sec = Section::None;

    std::istringstream is(text);
    std::string line;
    auto handle_arrow = [&](const std::string& entry) {
        // name: src -> tgt
        size_t colon = entry.find(':');
        require(colon != std::string::npos, ErrorKind::MalformedSpec,
                "arrow entry needs 'name: src -> tgt' (got '" + entry + "')");
        std::string name = trim(entry.substr(0, colon));
        std::string rest = entry.substr(colon + 1);
        size_t ar = rest.find("->");
        require(ar != std::string::npos, ErrorKind::MalformedSpec,
                "arrow entry missing '->' (got '" + entry + "')");
        std::string s = trim(rest.substr(0, ar)), t = trim(rest.substr(ar + 2));
        require(!name.empty() && !s.empty() && !t.empty(), ErrorKind::MalformedSpec,
                "incomplete arrow entry '" + entry + "'");
        auto vidx = [&](const std::string& v) {
            auto it = std::find(vertices.begin(), vertices.end(), v);
            require(it != vertices.end(), ErrorKind::MalformedSpec,
                    "arrow references undeclared vertex '" + v + "'");
            return static_cast<int>(it - vertices.begin());
        };
        for (const Arrow& a : arrows)
            require(a.name != name, ErrorKind::MalformedSpec, "duplicate arrow name '" + name + "'");
        arrows.push_back(Arrow{name, vidx(s), vidx(t)});
    };

    while (std::getline(is, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        std::string lower = line;
        std::transform(lower.begin(), lower.end(), lower.begin(), ::tolower);
        if (lower.rfind("vertices:", 0) == 0) {
            sec = Section::Vertices;
            for (const std::string& v : split_ws(trim(line.substr(9)))) {
                require(std::find(vertices.begin(), vertices.end(), v) == vertices.end(),
                        ErrorKind::MalformedSpec, "duplicate vertex '" + v + "'");
                vertices.push_back(v);
            }
            continue;
        }
        if (lower.rfind("arrows:", 0) == 0) {
            sec = Section::Arrows;
            std::string rest = trim(line.substr(7));
            if (!rest.empty()) handle_arrow(rest);
            continue;
        }
        if (lower.rfind("relations:", 0) == 0) {
            sec = Section::Relations;
            std::string rest = trim(line.substr(10));
            if (!rest.empty()) relation_lines.push_back(rest);
            continue;
        }
        switch (sec) {
            case Section::Vertices:
                for (const std::string& v : split_ws(line)) {
                    require(std::find(vertices.begin(), vertices.end(), v) == vertices.end(),
                            ErrorKind::MalformedSpec, "duplicate vertex '" + v + "'");
                    vertices.push_back(v);
                }
                break;
            case Section::Arrows: handle_arrow(line); break;
            case Section::Relations: relation_lines.push_back(line); break;
            case Section::None:
                fail(ErrorKind::MalformedSpec, "content before any section: '" + line + "'");
        }
    }
    require(!vertices.empty(), ErrorKind::MalformedSpec, "no vertices declared");

    auto arrow_index = [&](const std::string& name) {
        for (size_t i = 0; i < arrows.size(); ++i)
            if (arrows[i].name == name) return static_cast<int>(i);
        fail(ErrorKind::MalformedSpec, "relation references undeclared arrow '" + name + "'");
    };

    std::vector<Relation> relations;
    for (const std::string& rl : relation_lines) {
        size_t eq = rl.find('=');
        require(eq != std::string::npos, ErrorKind::MalformedSpec,
                "relation must end with '= 0' (got '" + rl + "')");
        require(trim(rl.substr(eq + 1)) == "0", ErrorKind::MalformedSpec,
                "relation right-hand side must be 0");
        std::string expr = trim(rl.substr(0, eq));
        require(!expr.empty(), ErrorKind::MalformedSpec, "empty relation expression");

        // split into signed terms
        Relation rel;
        size_t pos = 0;
        int sign = 1;
        while (pos < expr.size()) {
            while (pos < expr.size() && isspace(static_cast<unsigned char>(expr[pos]))) ++pos;
            if (pos < expr.size() && (expr[pos] == '+' || expr[pos] == '-')) {
                sign = expr[pos] == '-' ? -1 : 1;
                ++pos;
                continue;
            }
            size_t start = pos;
            while (pos < expr.size() && expr[pos] != '+' && expr[pos] != '-') ++pos;
            // a '-' directly after '*' or '/' belongs to a coefficient; the simple
            // split is enough because coefficients may carry their sign up front
            std::string term = trim(expr.substr(start, pos - start));
            if (term.empty()) continue;
            Rat coef(sign);
            std::string pathpart = term;
            size_t star = term.find('*');
            if (star != std::string::npos) {
                coef = coef * Rat::from_string(term.substr(0, star));
                pathpart = trim(term.substr(star + 1));
            }
            std::vector<int> arrow_seq;
            std::string cur;
            for (char c : pathpart + ".") {
                if (c == '.') {
                    if (!cur.empty()) arrow_seq.push_back(arrow_index(trim(cur)));
                    cur.clear();
                } else {
                    cur.push_back(c);
                }
            }
            require(!arrow_seq.empty(), ErrorKind::MalformedSpec,
                    "relation term without a path: '" + term + "'");
            rel.push_back(RelationTerm{coef, std::move(arrow_seq)});
            sign = 1;
        }
        relations.push_back(std::move(rel));
    }

    return BoundQuiverAlgebra(std::move(vertices), std::move(arrows), std::move(relations), opt);
}

BoundQuiverAlgebra load_algebra_file(const std::string& path, BoundQuiverAlgebra::Options opt) {
    std::ifstream f(path);
    require(f.good(), ErrorKind::MalformedSpec, "cannot open algebra file '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return load_algebra(os.str(), opt);
}

}  // namespace siltred
