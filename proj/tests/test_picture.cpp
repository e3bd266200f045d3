#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "siltred/error.hpp"
#include "siltred/group.hpp"
#include "siltred/interval.hpp"
#include "siltred/picture.hpp"
#include "siltred/quiver.hpp"
#include "siltred/twoterm.hpp"

using namespace siltred;

namespace {

ModelPtr model_dual() {
    return std::make_shared<TwoTermModel>(
        load_algebra("vertices: 1\narrows: x: 1 -> 1\nrelations: x.x = 0\n"), "per(k[x]/x2)");
}

ModelPtr model_k() { return std::make_shared<TwoTermModel>(load_algebra("vertices: 1\n"), "per(k)"); }

ModelPtr model_ka2() {
    return std::make_shared<TwoTermModel>(load_algebra("vertices: 1 2\narrows: a: 1 -> 2\n"),
                                          "per(kA2)");
}

GroupInvariants route_invariants(const GroupPresentation& p) {
    return invariants(tietze_simplify(p).pres);
}

int hom_count(const PictureCategory& cat, int a, int b) {
    int c = 0;
    for (const PictureMorphism& f : cat.morphisms)
        if (f.src == a && f.dst == b) ++c;
    return c;
}

}  // namespace

TEST_CASE("picture category of a local algebra: circle") {
    auto m = model_dual();
    PictureCategory cat = build_picture_category(m);
    CHECK(cat.objects.size() == 2);
    CHECK(cat.morphisms.size() == 4);  // two identities + two parallel A -> O
    CHECK(hom_count(cat, cat.root, cat.zero) == 2);
    CHECK(hom_count(cat, cat.zero, cat.root) == 0);

    std::string dot = picture_to_dot(cat);
    CHECK(dot.find("digraph") != std::string::npos);
    // 2 labeled edges
    CHECK(std::count(dot.begin(), dot.end(), '>') >= 2);

    // byte stability
    auto m2 = model_dual();
    PictureCategory cat2 = build_picture_category(m2);
    CHECK(picture_to_dot(cat2) == dot);
    CHECK(picture_to_json_text(cat2, false) == picture_to_json_text(cat, false));
}

TEST_CASE("picture category of mod(Lambda_2): the paper diagram") {
    auto m = std::make_shared<IntervalModel>(2);
    PictureCategory cat = build_picture_category(m);
    REQUIRE(cat.objects.size() == 5);
    CHECK(cat.morphisms.size() == 14);
    CHECK(hom_count(cat, cat.root, cat.zero) == 2);

    // |Hom(L, O)| equals the number of siltings of the reduced model
    for (const PictureObject& obj : cat.objects) {
        auto rank = obj.reduced->silting_rank();
        REQUIRE(rank.has_value());
        int silts = 0;
        for (const auto& r : all_rigid_subsets(*obj.reduced))
            if (static_cast<int>(r.size()) == *rank) ++silts;
        CHECK(hom_count(cat, obj.id, cat.zero) == silts);
    }

    // morphisms out of the root = number of rigid subcategories (with identity)
    CHECK(hom_count(cat, cat.root, cat.root) + hom_count(cat, cat.root, cat.zero) +
              [&] {
                  int c = 0;
                  for (const PictureMorphism& f : cat.morphisms)
                      if (f.src == cat.root && f.dst != cat.root && f.dst != cat.zero) ++c;
                  return c;
              }() ==
          static_cast<int>(all_rigid_subsets(*m).size()));

    // both shaded squares of the diagram commute
    ObjId i = 0, nn = 1, p = 2;  // M(1,1), M(1,2), M(2,2)
    int o_p = cat.object_of_rigid({p});
    int o_n = cat.object_of_rigid({nn});
    int o_i = cat.object_of_rigid({i});
    REQUIRE(o_p >= 0);
    REQUIRE(o_n >= 0);
    REQUIRE(o_i >= 0);
    int f_p = cat.morphism_id(cat.root, {p});
    int f_n = cat.morphism_id(cat.root, {nn});
    int f_i = cat.morphism_id(cat.root, {i});
    int pn = cat.morphism_id(cat.root, {nn, p});
    int in = cat.morphism_id(cat.root, {i, nn});
    REQUIRE(f_p >= 0);
    REQUIRE(pn >= 0);
    // through A/p and through A/n both give p ⊕ n
    int g_p = -1, g_pn_from_n = -1, g_i = -1, g_in_from_n = -1;
    for (int g : cat.morphisms_from(o_p))
        if (cat.morphisms[g].rank == 1) g_p = g;
    for (int g : cat.morphisms_from(o_i))
        if (cat.morphisms[g].rank == 1) g_i = g;
    for (int g : cat.morphisms_from(o_n))
        if (cat.morphisms[g].rank == 1) {
            if (cat.morphisms[g].payload == std::vector<ObjId>{p}) g_pn_from_n = g;
            if (cat.morphisms[g].payload == std::vector<ObjId>{i}) g_in_from_n = g;
        }
    REQUIRE(g_p >= 0);
    REQUIRE(g_i >= 0);
    REQUIRE(g_pn_from_n >= 0);
    REQUIRE(g_in_from_n >= 0);
    CHECK(cat.compose(f_p, g_p) == pn);
    CHECK(cat.compose(f_n, g_pn_from_n) == pn);
    CHECK(cat.compose(f_i, g_i) == in);
    CHECK(cat.compose(f_n, g_in_from_n) == in);

    // the full subcategory on {A/n, O} is the picture category of per(k)
    auto k = model_k();
    PictureCategory catk = build_picture_category(k);
    CHECK(full_subcategory_isomorphic(cat, {o_n, cat.zero}, catk, {catk.root, catk.zero}));
    // and not isomorphic to the full subcategory on {A/p, O}
    CHECK_FALSE(full_subcategory_isomorphic(cat, {o_p, cat.zero}, catk, {catk.root, catk.zero}));
}

TEST_CASE("picture category of per(kA2)") {
    auto m = model_ka2();
    PictureCategory cat = build_picture_category(m);
    CHECK(cat.objects.size() == 5);
    CHECK(cat.morphisms.size() == 21);
    CHECK(hom_count(cat, cat.root, cat.zero) == 5);  // five siltings

    CheckReport cub = check_cubical(cat);
    for (const std::string& s : cub.failures) INFO(s);
    CHECK(cub.pass);
    CheckReport i12 = check_I1_I2(cat);
    for (const std::string& s : i12.failures) INFO(s);
    CHECK(i12.pass);
}

TEST_CASE("cubical and I1/I2 checks on mod(Lambda_2) and mod(Lambda_3)") {
    for (int n : {2, 3}) {
        auto m = std::make_shared<IntervalModel>(n);
        PictureCategory cat = build_picture_category(m);
        CheckReport cub = check_cubical(cat);
        for (const std::string& s : cub.failures) INFO(s);
        CHECK(cub.pass);
        CheckReport i12 = check_I1_I2(cat);
        for (const std::string& s : i12.failures) INFO(s);
        CHECK(i12.pass);
        // rank-2 morphism out of the root has a square faq: checked inside
        // check_cubical; spot-check rank additivity on one composition
        for (const PictureMorphism& f : cat.morphisms)
            for (const PictureMorphism& g : cat.morphisms) {
                if (g.src != f.dst) continue;
                int h = cat.compose(f.id, g.id);
                CHECK(cat.morphisms[h].rank == f.rank + g.rank);
            }
    }
}

TEST_CASE("homotopy reduction: lambda adjunction data") {
    // reduced model: lambda is the identity
    auto k = model_dual();
    HomotopyReductionReport r1 = homotopy_reduction_check(k);
    for (const std::string& s : r1.checks.failures) INFO(s);
    CHECK(r1.checks.pass);
    CHECK(r1.ambient_objects == r1.reduced_objects);

    // mod(Lambda_2): reduction collapses to the picture category of per(k)
    auto m2 = std::make_shared<IntervalModel>(2);
    HomotopyReductionReport r2 = homotopy_reduction_check(m2);
    for (const std::string& s : r2.checks.failures) INFO(s);
    CHECK(r2.checks.pass);
    CHECK(r2.ambient_objects == 5);
    CHECK(r2.reduced_objects == 2);

    // mod(Lambda_3)
    auto m3 = std::make_shared<IntervalModel>(3);
    HomotopyReductionReport r3 = homotopy_reduction_check(m3);
    for (const std::string& s : r3.checks.failures) INFO(s);
    CHECK(r3.checks.pass);
}

// ---- group presentations ----

TEST_CASE("poset-route presentation of a 2-chain is free of rank 1") {
    auto m = model_dual();
    m->saturate(6);
    SiltingPoset poset = explore_silt_poset(*m);
    PosetPresentation pp = presentation_from_poset(poset);
    CHECK(pp.intervals.size() == 3);  // [P,P], [SP,SP], [SP,P]
    TietzeResult tz = tietze_simplify(pp.pres);
    CHECK(tz.pres.gens.size() == 1);
    CHECK(tz.pres.relators.empty());
    GroupInvariants inv = invariants(tz.pres);
    CHECK(inv.free_rank == 1);
    CHECK(inv.torsion.empty());
    CHECK(inv.hom_counts.at("S3") == 6);
    CHECK(inv.hom_counts.at("Z/2") == 2);
    CHECK(inv.hom_counts.at("Z/3") == 3);
    CHECK(abelianization_verdict(inv) == "Z");
}

TEST_CASE("nerve route on the circle picture category") {
    auto m = model_dual();
    PictureCategory cat = build_picture_category(m);
    NervePresentation np = pi1_nerve(cat);
    CHECK(np.pres.gens.size() == 2);
    CHECK(np.tree_edges.size() == 1);
    GroupInvariants inv = route_invariants(np.pres);
    CHECK(inv.free_rank == 1);
    CHECK(inv.torsion.empty());
}

TEST_CASE("a commutative square category has trivial fundamental group") {
    // hand-built category: a -> b, a -> c, b -> d, c -> d, a -> d (thin square)
    PictureCategory cat;
    cat.objects.resize(4);
    for (int i = 0; i < 4; ++i) cat.objects[i].id = i;
    cat.root = 0;
    cat.zero = 3;
    auto add_mor = [&](int src, int dst, int rank) {
        PictureMorphism f;
        f.id = static_cast<int>(cat.morphisms.size());
        f.src = src;
        f.dst = dst;
        f.rank = rank;
        // synthetic distinct payloads to keep morphism ids unique
        for (int k = 0; k < rank; ++k) f.payload.push_back(f.id * 10 + k);
        cat.morphisms.push_back(f);
        return f.id;
    };
    int ia = add_mor(0, 0, 0), ib = add_mor(1, 1, 0), ic = add_mor(2, 2, 0), id_ = add_mor(3, 3, 0);
    int ab = add_mor(0, 1, 1), ac = add_mor(0, 2, 1);
    int bd = add_mor(1, 3, 1), cd = add_mor(2, 3, 1);
    int ad = add_mor(0, 3, 2);
    auto set_comp = [&](int f, int g, int h) { cat.comp[{f, g}] = h; };
    // identities
    for (int f = 0; f < static_cast<int>(cat.morphisms.size()); ++f) {
        int s = cat.morphisms[f].src, d = cat.morphisms[f].dst;
        int ids[] = {ia, ib, ic, id_};
        set_comp(ids[s], f, f);
        set_comp(f, ids[d], f);
    }
    set_comp(ab, bd, ad);
    set_comp(ac, cd, ad);
    REQUIRE(verify_associativity(cat));
    NervePresentation np = pi1_nerve(cat);
    GroupInvariants inv = route_invariants(np.pres);
    CHECK(inv.free_rank == 0);
    CHECK(inv.torsion.empty());
    CHECK(abelianization_verdict(inv) == "1");
}

TEST_CASE("route agreement on the corpus models") {
    std::vector<ModelPtr> corpus;
    corpus.push_back(model_k());
    corpus.push_back(model_dual());
    corpus.push_back(model_ka2());
    corpus.push_back(std::make_shared<IntervalModel>(2));
    corpus.push_back(std::make_shared<IntervalModel>(3));
    for (ModelPtr m : corpus) {
        m->saturate(8);
        SiltingPoset poset = explore_silt_poset(*m);
        PictureCategory cat = build_picture_category(m);
        GroupInvariants a =
            route_invariants(presentation_from_poset_identified(*m, poset).pres);
        GroupInvariants b = route_invariants(pi1_nerve(cat).pres);
        INFO(m->name(), ": poset ", a.str(), " nerve ", b.str());
        CHECK(a == b);
        CHECK(a.torsion.empty());
    }
}

TEST_CASE("chain relators alone are not a presentation on the pentagon") {
    // Documented defect: the chain-relator-only group abelianizes to Z^4 on
    // per(kA2), while the picture group (nerve route) abelianizes to Z^2. The
    // identified presentation closes the gap; this test pins both facts.
    auto m = model_ka2();
    m->saturate(8);
    SiltingPoset poset = explore_silt_poset(*m);
    GroupInvariants plain = route_invariants(presentation_from_poset(poset).pres);
    CHECK(plain.free_rank == 4);
    GroupInvariants fixed = route_invariants(presentation_from_poset_identified(*m, poset).pres);
    CHECK(fixed.free_rank == 2);
    PictureCategory cat = build_picture_category(m);
    GroupInvariants nerve = route_invariants(pi1_nerve(cat).pres);
    CHECK(fixed == nerve);
}

TEST_CASE("interval generators rewrite into irreducibles through chain relators") {
    auto m = model_ka2();
    m->saturate(8);
    SiltingPoset poset = explore_silt_poset(*m);
    PosetPresentation pp = presentation_from_poset(poset);
    auto rewrites = rewrite_intervals_to_irreducibles(poset, pp);
    CHECK(rewrites.size() == pp.intervals.size());
    // the poset is a pentagon: 5 covering pairs = 5 irreducible intervals
    int irreducible = 0;
    for (const auto& rw : rewrites)
        if (rw.interval.first != rw.interval.second && rw.factors.size() == 1) ++irreducible;
    CHECK(irreducible == 5);
    for (const auto& rw : rewrites) {
        // factors must multiply along a maximal chain from lo to hi
        int cur = rw.interval.first;
        for (auto [lo, hi] : rw.factors) {
            CHECK(lo == cur);
            cur = hi;
        }
        CHECK(cur == rw.interval.second);
        // every chain used is a genuine chain of the poset (hence a relator)
        for (auto [lo, mid, hi] : rw.chains_used) {
            CHECK(poset.geq[mid][lo]);
            CHECK(poset.geq[hi][mid]);
        }
    }
}

TEST_CASE("b-generators on the corpus") {
    // per(k): B = {A}, the single irreducible interval rewrites trivially
    {
        auto m = model_k();
        m->saturate(4);
        SiltingPoset poset = explore_silt_poset(*m);
        PictureCategory cat = build_picture_category(m);
        NervePresentation np = pi1_nerve(cat);
        BGenReport rep = b_generators(cat, poset, np);
        CHECK(rep.pass);
        CHECK(rep.b_objects == std::vector<int>{cat.root});
        REQUIRE(rep.rewrites.size() == 1);
        CHECK(rep.rewrites[0].word_identity_ok);
    }
    // mod(Lambda_2): B = {A/n}
    {
        auto m = std::make_shared<IntervalModel>(2);
        SiltingPoset poset = explore_silt_poset(*m);
        PictureCategory cat = build_picture_category(m);
        NervePresentation np = pi1_nerve(cat);
        BGenReport rep = b_generators(cat, poset, np);
        CHECK(rep.pass);
        REQUIRE(rep.b_objects.size() == 1);
        CHECK(rep.b_objects[0] == cat.object_of_rigid({1}));  // A/n
    }
    // per(kA2): three rank-1 reductions with exactly two siltings
    {
        auto m = model_ka2();
        m->saturate(8);
        SiltingPoset poset = explore_silt_poset(*m);
        PictureCategory cat = build_picture_category(m);
        NervePresentation np = pi1_nerve(cat);
        BGenReport rep = b_generators(cat, poset, np);
        CHECK(rep.pass);
        CHECK(rep.b_objects.size() == 3);
        CHECK(rep.rewrites.size() == 5);
        for (const auto& rw : rep.rewrites) CHECK(rw.word_identity_ok);
    }
}

TEST_CASE("tietze: trivial generator elimination and idempotence") {
    GroupPresentation p;
    p.gens = {"a", "b"};
    p.relators = {{2}};  // b = 1
    TietzeResult tz = tietze_simplify(p);
    CHECK(tz.pres.gens == std::vector<std::string>{"a"});
    CHECK(tz.pres.relators.empty());
    TietzeResult tz2 = tietze_simplify(tz.pres);
    CHECK(tz2.pres.gens == tz.pres.gens);
    CHECK(tz2.log.empty());
    // invariants preserved
    CHECK(invariants(p) == invariants(tz.pres));
}

TEST_CASE("invariants distinguish small groups") {
    GroupPresentation z2;
    z2.gens = {"a"};
    z2.relators = {{1, 1}};
    GroupInvariants iz2 = invariants(z2);
    CHECK(iz2.free_rank == 0);
    REQUIRE(iz2.torsion.size() == 1);
    CHECK(iz2.torsion[0] == 2);
    CHECK(iz2.hom_counts.at("Z/2") == 2);
    CHECK(iz2.hom_counts.at("Z/3") == 1);
    CHECK(iz2.hom_counts.at("S3") == 4);  // identity + three transpositions
    CHECK(abelianization_verdict(iz2) == "Z/2");

    GroupPresentation f2;
    f2.gens = {"a", "b"};
    GroupInvariants if2 = invariants(f2);
    CHECK(if2.free_rank == 2);
    CHECK(if2.hom_counts.at("S3") == 36);
}
