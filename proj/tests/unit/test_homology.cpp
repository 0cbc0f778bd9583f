#include <doctest.h>

#include <numeric>
#include <random>

#include "corpus.hpp"
#include "tcat/homology.hpp"
#include "tcat/nerves.hpp"

using namespace tcat;

namespace {

// d_k = gcd of all k×k minors; invariant factors are d_k / d_{k-1}.
long det(std::vector<std::vector<long>> a) {
    const int n = static_cast<int>(a.size());
    if (n == 0) return 1;
    if (n == 1) return a[0][0];
    long s = 0;
    for (int j = 0; j < n; ++j) {
        std::vector<std::vector<long>> m;
        for (int i = 1; i < n; ++i) {
            std::vector<long> row;
            for (int k = 0; k < n; ++k)
                if (k != j) row.push_back(a[i][k]);
            m.push_back(row);
        }
        s += (j % 2 ? -1 : 1) * a[0][j] * det(m);
    }
    return s;
}

std::vector<long> determinantal_factors(const std::vector<std::vector<long>>& a, int rows, int cols) {
    std::vector<long> d{1};
    for (int k = 1; k <= std::min(rows, cols); ++k) {
        long g = 0;
        std::vector<int> rs(k), cs(k);
        std::function<void(int, int)> pick_r, pick_c;
        std::vector<std::vector<long>> m(k, std::vector<long>(k));
        pick_c = [&](int start, int depth) {
            if (depth == k) {
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) m[i][j] = a[rs[i]][cs[j]];
                g = std::gcd(g, std::labs(det(m)));
                return;
            }
            for (int c = start; c < cols; ++c) cs[depth] = c, pick_c(c + 1, depth + 1);
        };
        pick_r = [&](int start, int depth) {
            if (depth == k) return pick_c(0, 0);
            for (int r = start; r < rows; ++r) rs[depth] = r, pick_r(r + 1, depth + 1);
        };
        pick_r(0, 0);
        if (g == 0) break;
        d.push_back(g);
    }
    std::vector<long> out;
    for (std::size_t k = 1; k < d.size(); ++k) out.push_back(d[k] / d[k - 1]);
    return out;
}

SSetPtr nerve_of(const CatPtr& c, int n) { return nerve_category(c, n); }

SimplicialMap to_point(const SSetPtr& x, const SSetPtr& pt) {
    SimplicialMap f{"!", x, pt, {}};
    for (int n = 0; x->has({n}); ++n) f.map.push_back(std::vector<int>(x->size({n}), 0));
    return f;
}

}  // namespace

TEST_CASE("invariant factors agree with determinantal divisors") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> dim(1, 4), val(-3, 3), even(-2, 2);
    for (int trial = 0; trial < 300; ++trial) {
        int r = dim(rng), c = dim(rng);
        bool no_units = trial % 3 == 0;
        std::vector<std::vector<long>> a(r, std::vector<long>(c));
        SparseMatrix s;
        s.rows = r;
        s.cols = c;
        s.col.resize(c);
        for (int j = 0; j < c; ++j)
            for (int i = 0; i < r; ++i) {
                long v = no_units ? 2L * even(rng) : val(rng);
                a[i][j] = v;
                if (v) s.col[j].push_back({i, v});
            }
        auto want = determinantal_factors(a, r, c);
        auto got = invariant_factors(s);
        REQUIRE(got.size() == want.size());
        for (std::size_t k = 0; k < got.size(); ++k) CHECK(got[k] == want[k]);
    }
}

TEST_CASE("normalized complexes of small nerves") {
    corpus::Fixture fx;
    auto pt = normalized_chain_complex(*nerve_of(fx.pt, 4));
    CHECK(pt.rank(0) == 1);
    for (int n = 1; n <= 4; ++n) CHECK(pt.rank(n) == 0);
    auto wa = normalized_chain_complex(*nerve_of(fx.wa, 4));
    CHECK(wa.rank(0) == 2);
    CHECK(wa.rank(1) == 1);
    CHECK(wa.rank(2) == 0);
    for (const auto& h : homology_upto(wa, 3)) CHECK(h == HomologyResult{0, h.degree == 0 ? 1 : 0, {}, 3});
    auto dn = diag(*double_nerve(fx.wtc, 4));
    auto cc = normalized_chain_complex(*dn);
    CHECK(check_boundary_squared(cc).ok());
    auto hs = homology_upto(cc, 3);
    CHECK(hs[0].betti == 1);
    for (int i = 1; i <= 3; ++i) CHECK(hs[i].str() == "0");
    CHECK_THROWS_AS(homology(cc, 4), InputError);
}

TEST_CASE("parallel arrows give a circle") {
    auto par = corpus::make_cat("PAR", {"0", "1"}, {{"e1", "0", "1"}, {"e2", "0", "1"}}, {});
    auto x = nerve_of(par, 4);
    auto cc = normalized_chain_complex(*x);
    auto hs = homology_upto(cc, 3);
    CHECK(hs[0].str() == "Z");
    CHECK(hs[1].str() == "Z");
    CHECK(hs[2].str() == "0");
    auto id = identity_map(x);
    auto m = induced_homology_map(id, cc, cc, 1);
    REQUIRE(m.size() == 1);
    CHECK(m[0][0] == 1);
    CHECK(is_homology_iso_upto(id, cc, cc, 3));
    corpus::Fixture fx;
    auto pt = nerve_of(fx.pt, 4);
    auto ptc = normalized_chain_complex(*pt);
    std::string why;
    CHECK_FALSE(is_homology_iso_upto(to_point(x, pt), cc, ptc, 2, &why));
    CHECK(why.find("cone has H_2") != std::string::npos);
    CHECK(is_homology_iso_upto(to_point(x, pt), cc, ptc, 0));
}

TEST_CASE("contractible nerves map isomorphically to a point") {
    corpus::Fixture fx;
    auto pt = nerve_of(fx.pt, 4);
    auto ptc = normalized_chain_complex(*pt);
    auto x = nerve_of(fx.wa, 4);
    CHECK(is_homology_iso_upto(to_point(x, pt), normalized_chain_complex(*x), ptc, 3));
}

TEST_CASE("Alexander-Whitney comparison is a homology isomorphism") {
    corpus::Fixture fx;
    auto nn = double_nerve(fx.wtc, 3);
    auto d = diag(*nn);
    auto w = wbar(*nn, 3);
    auto f = aw_map(*nn, d, w);
    CHECK(check_simplicial_map(f).ok());
    CHECK(is_homology_iso_upto(f, normalized_chain_complex(*d), normalized_chain_complex(*w), 2));
}

TEST_CASE("torsion from a hand-built complex") {
    // one vertex, one loop a, one 2-cell with boundary 2a, one 3-cell with boundary 0
    ChainComplex cc;
    cc.name = "rp2";
    cc.top = 3;
    cc.basis = {{0}, {0}, {0}, {0}};
    cc.position = {{0}, {0}, {0}, {0}};
    cc.boundary.resize(4);
    cc.boundary[0] = {0, 1, {{}}};
    cc.boundary[1] = {1, 1, {{}}};
    cc.boundary[2] = {1, 1, {{{0, 2}}}};
    cc.boundary[3] = {1, 1, {{}}};
    CHECK(check_boundary_squared(cc).ok());
    auto hs = homology_upto(cc, 2);
    CHECK(hs[0].str() == "Z");
    CHECK(hs[1].str() == "Z/2");
    REQUIRE(hs[1].torsion.size() == 1);
    CHECK(hs[1].torsion[0] == 2);
    CHECK(hs[2].str() == "0");
}
