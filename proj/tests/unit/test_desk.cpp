#include <doctest.h>

#include "corpus.hpp"
#include "tcat/comma.hpp"
#include "tcat/hocolim.hpp"
#include "tcat/homology.hpp"

using namespace tcat;

namespace {

SSetPtr diag_nerve(const CatPtr& c, int n) { return diag(*double_nerve(c, n)); }

}  // namespace

TEST_CASE("slices of WTC are homologically contractible") {
    corpus::Fixture fx;
    const int N = 4;
    auto id = identity_functor(fx.wtc);
    for (Side side : {Side::Over, Side::Under})
        for (int c = 0; c < fx.wtc->n0(); ++c) {
            auto m = comma(id, c, side);
            auto cc = normalized_chain_complex(*diag_nerve(m->cat_ptr(), N));
            auto hs = homology_upto(cc, N - 2);
            CHECK(hs[0].str() == "Z");
            for (int i = 1; i <= N - 2; ++i) CHECK(hs[i].str() == "0");
        }
}

TEST_CASE("Pi is a homology isomorphism for F: WA -> WTC") {
    corpus::Fixture fx;
    const int N = 3;
    auto p = projections(fx.f);
    auto src = diag_nerve(p.fam->total->total, N);
    auto tgt = diag_nerve(fx.wa, N);
    auto f = diag_nn_map(p.Pi, src, tgt);
    CHECK(check_simplicial_map(f).ok());
    std::string why;
    CHECK_MESSAGE(is_homology_iso_upto(f, normalized_chain_complex(*src), normalized_chain_complex(*tgt), N - 1, &why),
                  why);
}

TEST_CASE("hocolim of a relabelling is a homology isomorphism") {
    corpus::Fixture fx;
    const int N = 3;
    for (const auto& d : {fx.dfib, fx.rep}) {
        auto g = relabel_diagram(d, "'");
        CHECK(check_morphism(g).ok());
        auto hs = hocolim(g.D, N);
        auto ht = hocolim(g.E, N);
        auto fam = hocolim_map(g, *hs, *ht);
        auto src = diag_nn(hs->s, N);
        auto tgt = diag_nn(ht->s, N);
        auto f = diag_nn_family_map("relabel", fam, src, tgt);
        CHECK(check_simplicial_map(f).ok());
        CHECK(verify_iso(f));
        std::string why;
        CHECK_MESSAGE(
            is_homology_iso_upto(f, normalized_chain_complex(*src), normalized_chain_complex(*tgt), N - 1, &why), why);
    }
}
