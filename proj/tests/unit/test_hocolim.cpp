#include "doctest.h"

#include "corpus.hpp"
#include "tcat/hocolim.hpp"

using namespace tcat;

TEST_CASE("hocolim of corpus diagrams is a simplicial 2-category") {
    corpus::Fixture fx;
    for (const auto& d : {fx.dfib, fx.rep, representable_from(fx.wtc, 0)}) {
        auto h = hocolim(d, 3);
        auto r = check_simplicial_twocat(h->s);
        CHECK_MESSAGE(r.ok(), r.summary());
    }
}

TEST_CASE("level-1 objects of hocolim count pairs of an arrow and a fibre object") {
    corpus::Fixture fx;
    auto h = hocolim(fx.dfib, 2);
    long want = 0;
    const auto& c = *fx.wa;
    for (int f = 0; f < c.n1(); ++f) want += fx.dfib->fibre[c.one(f).src]->n0();
    CHECK(h->levels[1].cat->n0() == want);
}

TEST_CASE("hocolim of the constant diagram at WTC splits as a product with the nerve") {
    corpus::Fixture fx;
    auto d = constant_diagram(fx.wa, fx.wtc, Variance::Covariant);
    auto h = hocolim(d, 3);
    auto nerve = nerve_category(fx.wa, 3);
    for (int p = 0; p <= 3; ++p) CHECK(is_isomorphism(constant_level_comparison(*h, p, *nerve)));
}

TEST_CASE("E satisfies the trisimplicial identities") {
    corpus::Fixture fx;
    auto e = build_E(fx.dfib, 3);
    auto r = check_simplicial_identities(*e);
    CHECK_MESSAGE(r.ok(), r.summary());
    auto dv = dual_diagram(fx.rep);
    CHECK(check_diagram(*dv).ok());
    auto e2 = build_E(dv, 3);
    auto r2 = check_simplicial_identities(*e2);
    CHECK_MESSAGE(r2.ok(), r2.summary());
}

TEST_CASE("comparison isomorphisms") {
    corpus::Fixture fx;
    auto from_a = representable_from(fx.wtc, fx.wtc->find0("a"));
    for (const auto& d : {fx.dfib, dual_diagram(fx.rep), from_a}) {
        auto a = iso_112(d, 3);
        CHECK_MESSAGE(a.report.ok(), a.report.summary());
        CHECK(check_simplicial_map(a.map).ok());
        CHECK(verify_iso(a.map));
        auto b = iso_114(d, 3);
        CHECK_MESSAGE(b.report.ok(), b.report.summary());
        CHECK(check_simplicial_map(b.map).ok());
        CHECK(verify_iso(b.map));
    }
}

TEST_CASE("dual diagram identifications") {
    corpus::Fixture fx;
    auto dv = dual_diagram(fx.rep);
    auto r = check_dual_grothendieck(fx.rep, dv);
    CHECK_MESSAGE(r.ok(), r.summary());
    auto h = hocolim(fx.rep, 3);
    auto hv = hocolim(dv, 3);
    auto r2 = check_dual_hocolim(*h, *hv);
    CHECK_MESSAGE(r2.ok(), r2.summary());
}

TEST_CASE("hocolim maps from diagram morphisms") {
    corpus::Fixture fx;
    auto gamma = collapse_to_point(fx.dfib);
    auto h = hocolim(fx.dfib, 3);
    auto hp = hocolim(gamma.E, 3);
    auto f = hocolim_map(gamma, *h, *hp);
    auto r = check_hocolim_map(f, *h, *hp);
    CHECK_MESSAGE(r.ok(), r.summary());
    auto id = identity_morphism(fx.dfib);
    DiagramModification m{"1", id, id, {}};
    for (const auto& fib : fx.dfib->fibre) m.comp.push_back(identity_natural(identity_functor(fib)));
    auto mm = hocolim_modification(m, *h, *h);
    auto r2 = check_hocolim_modification(mm, *h, *h);
    CHECK_MESSAGE(r2.ok(), r2.summary());
}
