#include "doctest.h"

#include "corpus.hpp"
#include "tcat/grothendieck.hpp"

using namespace tcat;

namespace {

// Cell counts of ∫D unfolded from the cell grammar, without the builder.
std::array<long, 3> grammar_counts(const TwoDiagram& d) {
    const auto& c = *d.base;
    std::array<long, 3> n{0, 0, 0};
    for (int a = 0; a < c.n0(); ++a) n[0] += d.fibre[a]->n0();
    for (int f = 0; f < c.n1(); ++f) {
        const auto& da = *d.fibre[c.one(f).src];
        const auto& db = *d.fibre[c.one(f).tgt];
        for (int x = 0; x < da.n0(); ++x)
            for (int y = 0; y < db.n0(); ++y) {
                const auto& home = d.covariant() ? db : da;
                int s = d.covariant() ? d.on1[f].on0[x] : x;
                int t = d.covariant() ? y : d.on1[f].on0[y];
                for (int u : home.ones(s, t))
                    for (int g : c.ones(c.one(f).src, c.one(f).tgt))
                        for (int v : home.ones(d.covariant() ? d.on1[g].on0[x] : x, d.covariant() ? y : d.on1[g].on0[y]))
                            for (int al : c.twos(f, g)) {
                                int ss = d.covariant() ? u : home.comp1(d.on2[al].comp[y], u);
                                int tt = d.covariant() ? home.comp1(v, d.on2[al].comp[x]) : v;
                                n[2] += static_cast<long>(home.twos(ss, tt).size());
                            }
                n[1] += static_cast<long>(home.ones(s, t).size());
            }
    }
    return n;
}

}  // namespace

TEST_CASE("grothendieck of corpus diagrams validates and matches the cell grammar") {
    corpus::Fixture fx;
    for (const auto& d : {fx.dfib, fx.rep}) {
        auto g = grothendieck(d);
        CHECK(validate(*g->total).ok());
        auto n = grammar_counts(*d);
        CHECK(g->total->n0() == n[0]);
        CHECK(g->total->n1() == n[1]);
        CHECK(g->total->n2() == n[2]);
        CHECK(check_functor(projection(*g)).ok());
        for (int c = 0; c < d->base->n0(); ++c) {
            auto e = fibre_embedding(*g, c);
            CHECK(check_functor(e).ok());
            for (int x : e.on0) CHECK(g->obj_base[x] == c);
        }
    }
}

TEST_CASE("grothendieck of the terminal diagram is the base") {
    corpus::Fixture fx;
    for (auto var : {Variance::Covariant, Variance::Contravariant}) {
        auto g = grothendieck(constant_diagram(fx.wtc, terminal(), var));
        CHECK(is_isomorphism(projection(*g)));
    }
}

TEST_CASE("base change along F is a strict pullback") {
    corpus::Fixture fx;
    auto g = grothendieck(fx.rep);
    auto bc = base_change(fx.f, fx.rep, *g);
    CHECK(check_diagram(*bc.pulled).ok());
    CHECK(validate(*bc.groth_pulled->total).ok());
    CHECK(check_base_change_square(fx.f, bc, *g).ok());
}

TEST_CASE("collapse maps to the projection") {
    corpus::Fixture fx;
    auto gamma = collapse_to_point(fx.dfib);
    auto g = grothendieck(fx.dfib);
    auto gp = grothendieck(gamma.E);
    auto F = grothendieck_transformation(gamma, *g, *gp);
    CHECK(check_functor(F).ok());
    CHECK(compare_functors(compose(projection(*gp), F), projection(*g)).ok());
    auto id = grothendieck_transformation(identity_morphism(fx.dfib), *g, *g);
    CHECK(compare_functors(id, identity_functor(g->total)).ok());
}
