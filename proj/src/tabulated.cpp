#include "siltred/tabulated.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "siltred/error.hpp"

namespace siltred {

bool TabulatedModel::MiddleKey::operator<(const MiddleKey& o) const {
    if (!(c == o.c)) return c < o.c;
    if (!(a == o.a)) return a < o.a;
    return coords < o.coords;
}

ObjId TabulatedModel::id_of(const std::string& name) const {
    auto it = by_name_.find(name);
    require(it != by_name_.end(), ErrorKind::MalformedSpec,
            "unknown object '" + name + "' in tabulated data");
    return it->second;
}

int TabulatedModel::hom_dim(ObjId x, ObjId y) {
    auto it = hom_.find({x, y});
    return it == hom_.end() ? 0 : it->second;
}

int TabulatedModel::ext_dim(ObjId x, ObjId y) {
    auto it = ext_.find({x, y});
    return it == ext_.end() ? 0 : it->second;
}

QVec TabulatedModel::compose_basis(ObjId, ObjId, ObjId, int, int) {
    fail(ErrorKind::RealizationUnavailable, "tabulated model has no composition data");
}

QVec TabulatedModel::id_coords(ObjId) {
    fail(ErrorKind::RealizationUnavailable, "tabulated model has no composition data");
}

Obj TabulatedModel::middle(const ExtClass& xi) {
    bool zero = std::all_of(xi.coords.begin(), xi.coords.end(),
                            [](const Rat& r) { return r.is_zero(); });
    MiddleKey key{xi.c, xi.a, {}};
    for (const Rat& r : xi.coords) key.coords.push_back(r.str());
    auto it = middles_.find(key);
    if (it != middles_.end()) return it->second;
    if (zero) return xi.a.plus(xi.c);  // split realization is implicit
    fail(ErrorKind::RealizationUnavailable,
         "no tabulated middle entry for the requested extension class");
}

std::optional<int> TabulatedModel::silting_rank() {
    if (!validated_) return std::nullopt;
    int r = 0;
    for (const auto& o : objects_)
        if (o.projective) ++r;
    return r;
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_plus(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s + "+") {
        if (ch == '+') {
            std::string t = trim(cur);
            if (!t.empty()) out.push_back(t);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    return out;
}

}  // namespace

std::shared_ptr<TabulatedModel> TabulatedModel::parse(const std::string& text, std::string name) {
    auto m = std::make_shared<TabulatedModel>();
    m->name_ = std::move(name);

    auto obj_of_names = [&](const std::string& s) {
        Obj o;
        if (trim(s) == "0") return o;
        for (const std::string& nm : split_plus(s)) o = o.plus(Obj::of(m->id_of(nm)));
        return o;
    };

    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        auto bad = [&](const std::string& why) -> void {
            fail(ErrorKind::MalformedSpec,
                 "tabulated line " + std::to_string(lineno) + ": " + why + " ('" + line + "')");
        };
        if (kw == "object") {
            std::string nm;
            if (!(ls >> nm)) bad("object needs a name");
            if (m->by_name_.count(nm)) bad("duplicate object");
            IndecInfo info{nm, false, false};
            std::string flag;
            while (ls >> flag) {
                if (flag == "proj")
                    info.projective = true;
                else if (flag == "inj")
                    info.injective = true;
                else
                    bad("unknown flag '" + flag + "'");
            }
            m->by_name_[nm] = static_cast<ObjId>(m->objects_.size());
            m->objects_.push_back(info);
        } else if (kw == "hom" || kw == "ext") {
            std::string xs, ys, eq;
            int d;
            if (!(ls >> xs >> ys >> eq >> d) || eq != "=") bad("expected '" + kw + " X Y = d'");
            if (d < 0) bad("negative dimension");
            auto key = std::make_pair(m->id_of(xs), m->id_of(ys));
            auto& table = (kw == "hom") ? m->hom_ : m->ext_;
            if (table.count(key)) bad("duplicate " + kw + " entry");
            table[key] = d;
        } else if (kw == "middle") {
            std::string cs, as;
            if (!(ls >> cs >> as)) bad("expected 'middle C A [coords] = M'");
            std::string rest;
            std::getline(ls, rest);
            rest = trim(rest);
            size_t lb = rest.find('['), rb = rest.find(']');
            if (lb == std::string::npos || rb == std::string::npos || rb < lb)
                bad("missing coordinate block");
            std::string coords = rest.substr(lb + 1, rb - lb - 1);
            std::string tail = trim(rest.substr(rb + 1));
            if (tail.size() < 2 || tail[0] != '=') bad("missing '= M'");
            std::string ms = trim(tail.substr(1));
            MiddleKey key{obj_of_names(cs), obj_of_names(as), {}};
            std::istringstream cs2(coords);
            std::string tok;
            while (cs2 >> tok) key.coords.push_back(Rat::from_string(tok).str());
            if (m->middles_.count(key)) bad("duplicate middle entry");
            m->middles_[key] = obj_of_names(ms);
        } else {
            bad("unknown keyword '" + kw + "'");
        }
    }
    require(!m->objects_.empty(), ErrorKind::MalformedSpec, "tabulated data declares no objects");
    for (ObjId x = 0; x < m->num_indec(); ++x)
        require(m->hom_dim(x, x) >= 1, ErrorKind::MalformedSpec,
                "object '" + m->objects_[x].name + "' lacks hom " + m->objects_[x].name + " " +
                    m->objects_[x].name + " >= 1");
    // coordinate blocks must have the right length
    for (const auto& [key, mid] : m->middles_) {
        (void)mid;
        int expect = 0;
        for (ObjId c : key.c.copies())
            for (ObjId a : key.a.copies()) expect += m->ext_dim(c, a);
        require(static_cast<int>(key.coords.size()) == expect, ErrorKind::MalformedSpec,
                "middle entry has a coordinate block of the wrong length");
    }
    return m;
}

std::shared_ptr<TabulatedModel> TabulatedModel::parse_file(const std::string& path,
                                                           std::string name) {
    std::ifstream f(path);
    require(f.good(), ErrorKind::MalformedSpec, "cannot open tabulated file '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return parse(os.str(), std::move(name));
}

std::string to_tabulated_text(Model& m, int mult_bound) {
    std::ostringstream os;
    os << "# tabulated category: " << m.name() << "\n";
    int n = m.num_indec();
    for (ObjId i = 0; i < n; ++i) {
        IndecInfo info = m.indec(i);
        os << "object " << info.name;
        if (info.projective) os << " proj";
        if (info.injective) os << " inj";
        os << "\n";
    }
    for (ObjId x = 0; x < n; ++x)
        for (ObjId y = 0; y < n; ++y) {
            int d = m.hom_dim(x, y);
            if (d > 0 || x == y) os << "hom " << m.indec(x).name << " " << m.indec(y).name
                                    << " = " << d << "\n";
        }
    for (ObjId x = 0; x < n; ++x)
        for (ObjId y = 0; y < n; ++y) {
            int d = m.ext_dim(x, y);
            if (d > 0) os << "ext " << m.indec(x).name << " " << m.indec(y).name << " = " << d
                          << "\n";
        }
    std::vector<ObjId> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i;
    std::vector<Obj> multis = enumerate_multisets(ids, mult_bound);
    for (const Obj& c : multis)
        for (const Obj& a : multis) {
            int d = ext_dim(m, c, a);
            for (const QVec& coords : enumerate_classes(d)) {
                bool zero = std::all_of(coords.begin(), coords.end(),
                                        [](const Rat& r) { return r.is_zero(); });
                if (zero) continue;  // split realization is implicit
                Obj mid = m.middle(ExtClass{c, a, coords});
                os << "middle " << obj_name(m, c) << " " << obj_name(m, a) << " [";
                for (size_t k = 0; k < coords.size(); ++k)
                    os << (k ? " " : "") << coords[k].str();
                os << "] = " << obj_name(m, mid) << "\n";
            }
        }
    return os.str();
}

}  // namespace siltred
