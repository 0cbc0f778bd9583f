#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "tcat/cli.hpp"
#include "tcat/grothendieck.hpp"
#include "tcat/hocolim.hpp"
#include "tcat/homology.hpp"
#include "tcat/suites.hpp"

using namespace tcat;

namespace {

// pinned bounds
constexpr double kIdentitySeconds = 60.0;
constexpr int kIsoTrunc = 3;
constexpr int kHomologyTrunc = 4;
constexpr int kTopDegree = 2;
constexpr long kWtcCodiagonalLevel2 = 7;

std::string path(const std::string& rel) { return std::string(TCAT_CORPUS_DIR) + "/" + rel; }

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

const Check* find(const SuiteReport& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return &c;
    return nullptr;
}

void require(Outcome& o, const SuiteReport& r, const std::string& name) {
    const Check* c = find(r, name);
    if (!c) return o.fail(r.suite + " has no check '" + name + "'");
    if (!c->pass) o.fail(r.suite + "/" + name + ": " + c->detail);
}

void require_suite(Outcome& o, const SuiteReport& r) {
    if (r.checks.empty()) o.fail(r.suite + " ran no checks");
    for (const auto& c : r.checks)
        if (!c.pass) o.fail(r.suite + "/" + c.name + ": " + c.detail);
}

// Composable q-chains of 2-cells in the hom-category a → b, by brute force.
long chains(const TwoCategory& c, int a, int b, int q) {
    if (q == 0) return static_cast<long>(c.ones(a, b).size());
    const auto& cells = c.twos_between(a, b);
    std::function<long(int, int)> extend = [&](int last, int left) -> long {
        if (left == 0) return 1;
        long n = 0;
        for (int x : cells)
            if (last < 0 || c.two(x).src == c.two(last).tgt) n += extend(x, left - 1);
        return n;
    };
    return extend(-1, q);
}

// Level n of the codiagonal: object strings c_0..c_n, one (m-1)-chain in each hom c_{m-1} → c_m.
long codiagonal_count(const TwoCategory& c, int n) {
    long total = 0;
    std::vector<int> s(n + 1, 0);
    std::function<void(int)> walk = [&](int k) {
        if (k > n) {
            long prod = 1;
            for (int m = 1; m <= n && prod; ++m) prod *= chains(c, s[m - 1], s[m], m - 1);
            total += prod;
            return;
        }
        for (int o = 0; o < c.n0(); ++o) {
            s[k] = o;
            walk(k + 1);
        }
    };
    walk(0);
    return total;
}

std::string homology_text(const std::vector<HomologyResult>& hs) {
    std::string s;
    for (const auto& h : hs) s += (s.empty() ? "" : ", ") + ("H_" + std::to_string(h.degree) + " = " + h.str());
    return s;
}

Outcome c1(const Manifest& m) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    auto r = verify("identities", m);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require_suite(o, r);
    if (secs >= kIdentitySeconds) o.fail("took " + std::to_string(secs) + " s");
    if (o.pass) o.detail = std::to_string(r.checks.size()) + " checks in " + std::to_string(secs).substr(0, 5) + " s";
    return o;
}

Outcome c2(const Manifest& m) {
    Outcome o;
    const int N = 4;
    for (const char* n : {"PT", "WA", "WTC"}) {
        const CatPtr c = m.cats.at(n);
        auto nn = double_nerve(c, N);
        SSetPtr w = wbar(*nn, N);
        SSetPtr e = wbar_double_nerve(c, N);
        auto f = repackaging_map(*nn, w, e);
        if (!check_simplicial_map(f).ok() || !verify_iso(f)) o.fail(std::string("repackaging ") + n + " is not an isomorphism");
        for (int k = 0; k <= N; ++k) {
            const long want = codiagonal_count(*c, k);
            if (static_cast<long>(w->size({k})) != want || static_cast<long>(e->size({k})) != want)
                o.fail(std::string(n) + " level " + std::to_string(k) + ": " + std::to_string(w->size({k})) + "/" +
                       std::to_string(e->size({k})) + ", oracle " + std::to_string(want));
        }
    }
    auto e = wbar_double_nerve(m.cats.at("WTC"), 2);
    if (static_cast<long>(e->size({2})) != kWtcCodiagonalLevel2) o.fail("WTC level 2 is " + std::to_string(e->size({2})));
    if (o.pass) o.detail = "PT, WA, WTC at N=4; WTC level 2 = 7";
    return o;
}

void aw_case(Outcome& o, const std::string& name, const CatPtr& c) {
    auto nn = double_nerve(c, kIsoTrunc);
    auto d = diag(*nn);
    auto w = wbar(*nn, kIsoTrunc);
    auto f = aw_map(*nn, d, w);
    auto r = check_simplicial_map(f);
    if (!r.ok()) return o.fail(name + ": " + r.summary());
    auto cd = normalized_chain_complex(*d);
    auto cw = normalized_chain_complex(*w);
    std::string why;
    if (!is_homology_iso_upto(f, cd, cw, kTopDegree, &why)) return o.fail(name + ": " + why);
    auto hd = homology_upto(cd, kTopDegree), hw = homology_upto(cw, kTopDegree);
    if (hd != hw) o.fail(name + ": " + homology_text(hd) + " vs " + homology_text(hw));
}

Outcome c3(const Manifest& m) {
    Outcome o;
    aw_case(o, "WTC", m.cats.at("WTC"));
    for (const char* n : {"Dfib", "Crep"}) aw_case(o, std::string("grothendieck ") + n, grothendieck(m.diagrams.at(n))->total);
    if (o.pass) o.detail = "WTC, grothendieck Dfib, grothendieck Crep; degrees 0..2";
    return o;
}

Outcome c4(const Manifest& m) {
    Outcome o;
    for (const char* s : {"iso112", "iso114"}) {
        auto r = verify(s, m, RunOptions{kIsoTrunc});
        require_suite(o, r);
        for (const char* d : {"Dfib", "Crep"}) require(o, r, std::string(s) + " " + d);
    }
    if (o.pass) o.detail = "Dfib (covariant) and Crep (contravariant) at N=3";
    return o;
}

Outcome c5(const Manifest& m) {
    Outcome o;
    const CatPtr wtc = m.cats.at("WTC");
    const auto& d = m.diagrams.at("Dconst");
    auto h = hocolim(d, kIsoTrunc);
    auto ner = nerve_category(m.cats.at("WA"), kIsoTrunc);
    for (const auto& l : h->levels) {
        const std::string at = "level " + std::to_string(l.p);
        if (!is_isomorphism(constant_level_comparison(*h, l.p, *ner))) o.fail(at + ": comparison is not an isomorphism");
        // p-simplices of the walking arrow's nerve: p+2
        const int k = l.p + 2;
        if (l.cat->n0() != wtc->n0() * k || l.cat->n1() != wtc->n1() * k || l.cat->n2() != wtc->n2() * k)
            o.fail(at + ": cell counts differ from " + std::to_string(k) + " copies of WTC");
    }
    if (o.pass) o.detail = "levels 0.." + std::to_string(kIsoTrunc);
    return o;
}

Outcome c6(const Manifest& m) {
    Outcome o;
    auto r = verify("retractions", m);
    auto x = verify("oplax", m);
    require_suite(o, r);
    require_suite(o, x);
    require(o, r, "iotaPi F");
    require(o, x, "oplax iotaPi F");
    bool has_r = false, has_section = false;
    for (const auto& c : r.checks) {
        has_r |= c.name.rfind("R ", 0) == 0;
        has_section |= c.name.rfind("section ", 0) == 0;
    }
    if (!has_r || !has_section) o.fail("missing R or section checks");
    if (o.pass) o.detail = std::to_string(r.checks.size()) + " retraction and " + std::to_string(x.checks.size()) + " oplax checks";
    return o;
}

Outcome c7(const Manifest& m) {
    Outcome o;
    auto r = verify("contractibility", m, RunOptions{kHomologyTrunc});
    require_suite(o, r);
    const CatPtr wtc = m.cats.at("WTC");
    for (const char* side : {" over ", " under "})
        for (int c = 0; c < wtc->n0(); ++c) require(o, r, "homology slice WTC" + std::string(side) + wtc->obj(c));
    if (o.pass) o.detail = "C/c and c/C for every object of WTC at N=4";
    return o;
}

Outcome c8(const Manifest& m) {
    Outcome o;
    auto r = verify("invariance", m);
    require(o, r, "Pi F");
    if (o.pass) o.detail = find(r, "Pi F")->detail;
    return o;
}

Outcome c9(const Manifest& m) {
    Outcome o;
    auto r = verify("invariance", m);
    require(o, r, "transformation Relabel");
    require(o, r, "levelwise Relabel");
    require(o, r, "hocolim Relabel");
    if (o.pass) o.detail = find(r, "hocolim Relabel")->detail;
    return o;
}

struct Mutant {
    const char* file;
    const char* suite;
    const char* check;
};

const Mutant kMutants[] = {
    {"table-entry", "identities", "validate M3"},
    {"hocolim-face", "identities", "simplicial identities nn hocolim Dfib"},
    {"functoriality", "iso114", "TwoDiagram invariants Dfib"},
    {"iotapi-comp", "retractions", "iotaPi F"},
    {"r-witness-nat", "oplax", "oplax R Gamma 0 pt"},
    {"cbar-cell", "retractions", "R Gamma 0 pt"},
    {"iso112-map", "iso112", "iso112 Dfib"},
    {"iso114-map", "iso114", "iso114 Crep"},
    {"slice-face", "contractibility", "simplicial identities slice WTC over b"},
    {"relabel-component", "invariance", "transformation Relabel"},
};

Outcome c10() {
    Outcome o;
    int caught = 0;
    for (const auto& mu : kMutants) {
        std::ostringstream out, err;
        if (run_cli({"verify", mu.suite, path("corpus.manifest.json")}, out, err) != 0) {
            o.fail(std::string("clean corpus fails ") + mu.suite);
            continue;
        }
        std::ostringstream mout, merr;
        const int code = run_cli({"verify", mu.suite, path(std::string("mutants/") + mu.file + ".manifest.json")}, mout, merr);
        const std::string line = "FAIL " + std::string(mu.check) + ":";
        if (code != 1 || mout.str().find(line) == std::string::npos)
            o.fail(std::string(mu.file) + ": exit " + std::to_string(code) + ", expected '" + line + "'");
        else
            ++caught;
    }
    o.detail = std::to_string(caught) + "/" + std::to_string(std::size(kMutants)) + " mutants detected" +
               (o.pass ? "" : "; " + o.detail);
    return o;
}

}  // namespace

int main() {
    const Manifest m = parse_manifest(path("corpus.manifest.json"));
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"identity suite", [&] { return c1(m); }},
        {"codiagonal repackaging", [&] { return c2(m); }},
        {"Alexander-Whitney comparison", [&] { return c3(m); }},
        {"hocolim/Grothendieck isomorphisms", [&] { return c4(m); }},
        {"constant diagram levels", [&] { return c5(m); }},
        {"retractions and oplax witnesses", [&] { return c6(m); }},
        {"slice contractibility", [&] { return c7(m); }},
        {"projection from the comma construction", [&] { return c8(m); }},
        {"hocolim of a transformation", [&] { return c9(m); }},
        {"fault sensitivity", c10},
    };
    int failed = 0, i = 0;
    for (const auto& [name, run] : criteria) {
        ++i;
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.fail(std::string("threw: ") + e.what());
        }
        failed += !o.pass;
        std::printf("%s C%d %s: %s\n", o.pass ? "PASS" : "FAIL", i, name, o.detail.c_str());
    }
    std::printf("acceptance: %d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
