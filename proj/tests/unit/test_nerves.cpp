#include "doctest.h"

#include "corpus.hpp"
#include "tcat/nerves.hpp"

using namespace tcat;

namespace {

// Σ over object strings of products of hom sizes, the hom size counted by `per`.
long chain_count(const TwoCategory& c, int p, const std::function<long(int, int)>& per) {
    long total = 0;
    std::vector<int> objs(p + 1);
    std::function<void(int, long)> rec = [&](int m, long acc) {
        if (m > p) {
            total += acc;
            return;
        }
        for (int o = 0; o < c.n0(); ++o) {
            objs[m] = o;
            rec(m + 1, m == 0 ? acc : acc * per(objs[m - 1], o));
        }
    };
    rec(0, 1);
    return total;
}

}  // namespace

TEST_CASE("corpus categories validate") {
    corpus::Fixture fx;
    CHECK(validate(*fx.pt).ok());
    CHECK(validate(*fx.wa).ok());
    CHECK(validate(*fx.wtc).ok());
    CHECK(check_functor(fx.f).ok());
    CHECK(check_diagram(*fx.dfib).ok());
    CHECK(check_diagram(*fx.rep).ok());
}

TEST_CASE("nerve of the walking arrow counts monotone maps") {
    corpus::Fixture fx;
    auto n = nerve_category(fx.wa, 4);
    for (int p = 0; p <= 4; ++p) CHECK(n->size({p}) == p + 2);
    CHECK(check_simplicial_identities(*n).ok());
}

TEST_CASE("double nerve level sizes") {
    corpus::Fixture fx;
    const auto& c = *fx.wtc;
    auto nn = double_nerve(fx.wtc, 3);
    CHECK(nn->size({1, 1}) == 5);
    CHECK(nn->size({2, 1}) == 8);
    HomChains hc(fx.wtc);
    for (int p = 0; p <= 3; ++p)
        for (int q = 0; q <= 3; ++q) {
            auto per = [&](int a, int b) { return static_cast<long>(hc.get(a, b, q).size()); };
            CHECK(nn->size({p, q}) == chain_count(c, p, per));
        }
    CHECK(check_simplicial_identities(*nn).ok());
}

TEST_CASE("codiagonal of the double nerve and its explicit form") {
    corpus::Fixture fx;
    for (const auto& c : {fx.pt, fx.wa, fx.wtc}) {
        auto nn = double_nerve(c, 4);
        auto w = wbar(*nn, 4);
        auto e = wbar_double_nerve(c, 4);
        CHECK(check_simplicial_identities(*w).ok());
        CHECK(check_simplicial_identities(*e).ok());
        auto r = repackaging_map(*nn, w, e);
        CHECK(check_simplicial_map(r).ok());
        CHECK(verify_iso(r));
    }
    auto e = wbar_double_nerve(fx.wtc, 2);
    CHECK(e->size({2}) == 7);
}
