#include <doctest.h>

#include <set>

#include "corpus.hpp"
#include "tcat/comma.hpp"

using namespace tcat;

namespace {

struct Counts {
    int n0 = 0, n1 = 0, n2 = 0;
};

// Direct unfolding: objects (a,p), 1-cells (u,φ), 2-cells α subject to the
// whiskering condition, enumerated in C without any ∫ machinery.
Counts unfold(const TwoFunctor& F, int c, Side side) {
    const TwoCategory& A = *F.src;
    const TwoCategory& C = *F.tgt;
    struct Obj { int a, p; };
    struct One { int u, phi, s, t; };
    std::vector<Obj> objs;
    for (int a = 0; a < A.n0(); ++a) {
        const auto& ps = side == Side::Over ? C.ones(F.on0[a], c) : C.ones(c, F.on0[a]);
        for (int p : ps) objs.push_back({a, p});
    }
    std::vector<One> ones;
    for (int s = 0; s < static_cast<int>(objs.size()); ++s)
        for (int t = 0; t < static_cast<int>(objs.size()); ++t)
            for (int u : A.ones(objs[s].a, objs[t].a)) {
                int Fu = F.on1[u];
                int from = side == Side::Over ? objs[s].p : C.comp1(Fu, objs[s].p);
                int to = side == Side::Over ? C.comp1(objs[t].p, Fu) : objs[t].p;
                for (int phi : C.twos(from, to)) ones.push_back({u, phi, s, t});
            }
    int n2 = 0;
    for (const auto& x : ones)
        for (const auto& y : ones) {
            if (x.s != y.s || x.t != y.t) continue;
            for (int al : A.twos(x.u, y.u)) {
                int p2 = objs[x.t].p, p = objs[x.s].p;
                int Fal = F.on2[al];
                bool ok = side == Side::Over ? C.vcomp(C.lw(p2, Fal), x.phi) == y.phi
                                             : C.vcomp(y.phi, C.rw(Fal, p)) == x.phi;
                n2 += ok;
            }
        }
    return {static_cast<int>(objs.size()), static_cast<int>(ones.size()), n2};
}

}  // namespace

TEST_CASE("slices and commas match the unfolded cell grammar") {
    corpus::Fixture fx;
    auto id = identity_functor(fx.wtc);
    for (Side side : {Side::Over, Side::Under}) {
        for (int c = 0; c < fx.wtc->n0(); ++c) {
            for (const auto* F : {&id, &fx.f}) {
                auto m = comma(*F, c, side);
                CHECK(validate(m->cat()).ok());
                auto want = unfold(*F, c, side);
                CHECK(m->cat().n0() == want.n0);
                CHECK(m->cat().n1() == want.n1);
                CHECK(m->cat().n2() == want.n2);
            }
        }
    }
    auto pt = comma(identity_functor(fx.pt), 0, Side::Over);
    CHECK(pt->cat().n0() == 1);
    CHECK(pt->cat().n1() == 1);
    CHECK(pt->cat().n2() == 1);
}

TEST_CASE("WTC over b has objects 1_b, f, g") {
    corpus::Fixture fx;
    auto m = comma(identity_functor(fx.wtc), fx.wtc->find0("b"), Side::Over);
    std::set<std::string> got;
    for (int o = 0; o < m->cat().n0(); ++o) got.insert(fx.wtc->one(m->hom0(o)).id);
    CHECK(got == std::set<std::string>{"1_b", "f", "g"});
}

TEST_CASE("fibre diagrams are strict functors of c") {
    corpus::Fixture fx;
    for (Side side : {Side::Over, Side::Under})
        for (const auto& F : {fx.f, identity_functor(fx.wtc), identity_functor(fx.wa)}) {
            auto fam = comma_family(F, side);
            CHECK(check_diagram(*fam->diagram).ok());
            for (int c = 0; c < F.tgt->n0(); ++c) {
                auto h = induced_fibre_functor(*fam, F.tgt->id1(c));
                CHECK(compare_functors(h, identity_functor(fam->at[c]->cat_ptr())).ok());
            }
            for (int h = 0; h < F.tgt->n1(); ++h) {
                auto t = induced_fibre_transformation(*fam, F.tgt->id2(h));
                CHECK(compare_naturals(t, identity_natural(t.F)).ok());
            }
        }
}

TEST_CASE("Pi iota = 1 and the witness iotaPi => 1 is oplax") {
    corpus::Fixture fx;
    for (const auto& F : {fx.f, identity_functor(fx.wtc), identity_functor(fx.pt), identity_functor(fx.wa)}) {
        auto p = projections(F);
        auto r = check_projections(p);
        CHECK_MESSAGE(r.ok(), r.summary());
        // naturality at (h,(u,φ)) sits over φ
        const auto& T = *p.fam->total;
        for (int i = 0; i < T.total->n1(); ++i) {
            int c2 = F.tgt->one(T.one_base[i]).tgt;
            CHECK(T.two_base[p.witness.nat[i]] == p.fam->at[c2]->hom1(T.one_fibre[i]));
        }
    }
}

TEST_CASE("R cbar = 1 with oplax witness") {
    corpus::Fixture fx;
    auto run = [](const DiagramMorphism& g) {
        for (int c = 0; c < g.D->base->n0(); ++c)
            for (int y = 0; y < g.E->fibre[c]->n0(); ++y) {
                auto r = retraction_R(g, c, y);
                auto rep = check_retraction(r);
                CHECK_MESSAGE(rep.ok(), rep.summary());
            }
    };
    run(collapse_to_point(fx.dfib));
    run(identity_morphism(fx.dfib));
    run(collapse_to_point(fx.rep));
    run(identity_morphism(fx.rep));
}

TEST_CASE("R on an identity morphism keeps the fibre data") {
    corpus::Fixture fx;
    auto r = retraction_R(identity_morphism(fx.dfib), 1, 1);
    for (int o = 0; o < r.big->cat().n0(); ++o)
        CHECK(r.small->hom0(r.R.on0[o]) == r.ge->one_fibre[r.big->hom0(o)]);
}

TEST_CASE("pibar i_z = 1 with oplax witness, j_z squares") {
    corpus::Fixture fx;
    auto from_a = representable_from(fx.wtc, fx.wtc->find0("a"));
    for (const auto& d : {fx.rep, from_a})
        for (const auto& F : {fx.f, identity_functor(fx.wtc)})
            for (int c = 0; c < fx.wtc->n0(); ++c)
                for (int z = 0; z < d->fibre[c]->n0(); ++z) {
                    auto s = section_jz_iz(F, d, c, z);
                    auto r = check_section(s);
                    CHECK_MESSAGE(r.ok(), r.summary());
                }
    auto s = section_jz_iz(identity_functor(fx.wa), fx.dfib, 0, 0);
    CHECK(check_section(s).ok());
}

TEST_CASE("comma base change") {
    corpus::Fixture fx;
    auto idw = identity_functor(fx.wtc);
    for (Side side : {Side::Over, Side::Under})
        for (int c = 0; c < fx.wtc->n0(); ++c) {
            auto same = comma_base_change(idw, idw, idw, idw, c, side);
            auto m = comma(idw, c, side);
            CHECK(compare_functors(same, identity_functor(m->cat_ptr())).ok());
            // triangle: F↓c → C↓c
            auto from = comma(fx.f, c, side);
            auto to = comma(idw, c, side);
            auto Fb = comma_base_change(*from, *to, idw, fx.f);
            CHECK(check_functor(Fb).ok());
            CHECK(compare_functors(compose(projection(*to->groth), Fb), compose(fx.f, projection(*from->groth))).ok());
        }
    CHECK_THROWS_AS(comma_base_change(identity_functor(fx.wa), idw, idw, fx.f, 0, Side::Over), InputError);
}

TEST_CASE("corrupted witnesses are rejected") {
    corpus::Fixture fx;
    auto p = projections(fx.f);
    REQUIRE(p.fam->total->total->n1() > 3);
    int moved = 0;
    const auto& T = *p.fam->total->total;
    for (int i = 0; i < T.n1() && !moved; ++i) {
        int o = T.one(i).src;
        for (int k : T.ones(p.witness.F.on0[o], o))
            if (k != p.witness.comp[o]) {
                auto bad = p;
                bad.witness.comp[o] = k;
                CHECK_FALSE(check_projections(bad).ok());
                moved = 1;
                break;
            }
    }
    CHECK(moved == 1);
    auto r = retraction_R(collapse_to_point(fx.dfib), 0, 0);
    REQUIRE(r.big->cat().n1() > 0);
    auto bad = r;
    bad.cbar.on1.back() = bad.cbar.on1.front();
    CHECK_FALSE(check_retraction(bad).ok());
}
