#include "tcat/suites.hpp"

#include <functional>
#include <sstream>

#include "tcat/comma.hpp"
#include "tcat/hocolim.hpp"
#include "tcat/homology.hpp"

namespace tcat {

bool SuiteReport::ok() const { return failures() == 0; }

int SuiteReport::failures() const {
    int n = 0;
    for (const auto& c : checks) n += !c.pass;
    return n;
}

Json SuiteReport::to_json() const {
    Json j;
    j["suite"] = suite;
    j["checks"] = Json::array();
    for (const auto& c : checks) j["checks"].push_back({{"name", c.name}, {"status", c.pass ? "pass" : "fail"}, {"detail", c.detail}});
    j["truncation"] = truncation;
    return j;
}

std::string SuiteReport::text() const {
    std::ostringstream o;
    for (const auto& c : checks) {
        o << (c.pass ? "PASS " : "FAIL ") << c.name;
        if (!c.detail.empty()) o << ": " << c.detail;
        o << "\n";
    }
    o << suite << ": " << checks.size() << " checks, " << failures() << " failed\n";
    for (const auto& c : checks)
        if (!c.pass) {
            o << "first failure: " << c.name << ": " << c.detail << "\n";
            break;
        }
    return o.str();
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"identities",  "iso112",          "iso114",    "retractions",
                                                   "oplax",       "contractibility", "invariance"};
    return names;
}

int default_truncation(const std::string& suite) {
    if (suite == "identities" || suite == "contractibility") return 4;
    return 3;
}

namespace {

struct Ctx {
    const Manifest& m;
    Injector inj;
    int N;
    SuiteReport& out;

    void add(const std::string& name, bool pass, std::string detail = {}) {
        out.checks.push_back({name, pass, std::move(detail)});
    }
    void add(const std::string& name, const Report& r, const std::string& ok_detail = {}) {
        add(name, r.ok(), r.ok() ? ok_detail : r.summary());
    }
    // Constructions that hit a missing cell are failures of the check, not crashes.
    void guarded(const std::string& name, const std::function<void()>& f) {
        try {
            f();
        } catch (const StructureError& e) {
            add(name, false, std::string("construction failed: ") + e.what());
        }
    }
};

std::string counts(const SimplicialSet& x) {
    std::string s;
    for (int n = 0; x.has({n}); ++n) s += (n ? "," : "") + std::to_string(x.size({n}));
    return "levels " + s;
}

template <int K>
void identities(Ctx& cx, const std::string& name, const MultiPtr<K>& x) {
    auto y = cx.inj.apply(name, x);
    cx.add("simplicial identities " + name, check_simplicial_identities(*y));
}

SSetPtr as_sset(std::shared_ptr<SimplicialSet> x) { return x; }

std::string homology_line(const std::vector<HomologyResult>& hs) {
    std::string s;
    for (const auto& h : hs) s += (s.empty() ? "" : ", ") + ("H_" + std::to_string(h.degree) + " = " + h.str());
    return s;
}

// f is a simplicial map inducing isomorphisms on H_0..H_{N-1}.
void homology_iso(Ctx& cx, const std::string& name, SimplicialMap f) {
    cx.inj.apply(name, f);
    auto r = check_simplicial_map(f);
    if (!r.ok()) return cx.add(name, false, "not a simplicial map: " + r.summary());
    auto cs = normalized_chain_complex(*f.src);
    auto ct = normalized_chain_complex(*f.tgt);
    const int k = cx.N - 1;
    std::string why;
    if (!is_homology_iso_upto(f, cs, ct, k, &why)) return cx.add(name, false, why);
    cx.add(name, true, homology_line(homology_upto(ct, k)));
}

void iso_check(Ctx& cx, const std::string& name, IsoResult res) {
    cx.inj.apply(name, res.map);
    if (!res.report.ok()) return cx.add(name, false, res.report.summary());
    auto r = check_simplicial_map(res.map);
    if (!r.ok()) return cx.add(name, false, "not a simplicial map: " + r.summary());
    auto iso = iso_report(res.map);
    cx.add(name, iso, counts(*res.map.src));
}

bool diagram_ok(Ctx& cx, const DiagPtr& d) {
    auto r = check_diagram(*d);
    cx.add("TwoDiagram invariants " + d->name, r);
    return r.ok();
}

std::string recipe_kind(const Manifest& m, const std::string& name) {
    auto it = m.recipe.find(name);
    if (it == m.recipe.end() || !it->second.contains("construction")) return {};
    return it->second["construction"].get<std::string>();
}

// ---------------------------------------------------------------- suites

void suite_identities(Ctx& cx) {
    const int N = cx.N;
    for (const auto& n : cx.m.cats.order) {
        const CatPtr& c = cx.m.cats.at(n);
        auto v = validate(*c);
        cx.add("validate " + n, v);
        if (!v.ok()) continue;
        cx.guarded("nerves " + n, [&] {
            if (is_locally_discrete(*c)) identities<1>(cx, "nerve " + n, nerve_category(c, N));
            BiPtr nn = cx.inj.apply<2>("nn " + n, BiPtr(double_nerve(c, N)));
            cx.add("simplicial identities nn " + n, check_simplicial_identities(*nn));
            identities<1>(cx, "diag nn " + n, as_sset(diag(*nn)));
            SSetPtr w = wbar(*nn, N);
            identities<1>(cx, "wbar nn " + n, w);
            SSetPtr wnn = wbar_double_nerve(c, N);
            identities<1>(cx, "wbar-nn " + n, wnn);
            auto f = repackaging_map(*nn, w, wnn);
            cx.inj.apply("repackaging " + n, f);
            auto r = check_simplicial_map(f);
            if (!r.ok())
                cx.add("repackaging " + n, false, "not a simplicial map: " + r.summary());
            else
                cx.add("repackaging " + n, iso_report(f), counts(*wnn));
        });
    }
    for (const auto& n : cx.m.functors.order) cx.add("functor " + n, check_functor(cx.m.functors.at(n)));
    for (const auto& n : cx.m.diagrams.order) {
        const DiagPtr& d = cx.m.diagrams.at(n);
        if (!diagram_ok(cx, d)) continue;
        cx.guarded("hocolim " + n, [&] {
            auto g = grothendieck(d);
            cx.add("validate grothendieck " + n, validate(*g->total));
            auto h = hocolim(d, N);
            cx.add("simplicial 2-category hocolim " + n, check_simplicial_twocat(h->s));
            identities<3>(cx, "nn hocolim " + n, TriPtr(nerve_simplicial_twocat(h->s, N)));
            identities<3>(cx, "E " + n, TriPtr(build_E(d->covariant() ? d : dual_diagram(d), N)));
            if (recipe_kind(cx.m, n) == "constant" && is_locally_discrete(*d->base)) {
                auto nerve = nerve_category(d->base, N);
                for (int p = 0; p <= N; ++p) {
                    auto F = constant_level_comparison(*h, p, *nerve);
                    cx.inj.apply("constant " + n + " level " + std::to_string(p), F);
                    cx.add("constant " + n + " level " + std::to_string(p), is_isomorphism(F),
                           is_isomorphism(F) ? "" : "level comparison is not a cellwise isomorphism");
                }
            }
        });
    }
    for (const auto& n : cx.m.transformations.order)
        cx.add("transformation " + n, check_morphism(cx.m.transformations.at(n)));
}

void suite_iso(Ctx& cx, bool first) {
    const std::string tag = first ? "iso112 " : "iso114 ";
    for (const auto& n : cx.m.diagrams.order) {
        const DiagPtr& d = cx.m.diagrams.at(n);
        if (!diagram_ok(cx, d)) continue;
        cx.guarded(tag + n, [&] {
            DiagPtr cov = d;
            if (!d->covariant()) {
                cov = dual_diagram(d);
                if (first) {
                    cx.add("dual hocolim " + n, check_dual_hocolim(*hocolim(d, cx.N), *hocolim(cov, cx.N)));
                } else {
                    cx.add("dual grothendieck " + n, check_dual_grothendieck(d, cov));
                }
            }
            iso_check(cx, tag + n, first ? iso_112(cov, cx.N) : iso_114(cov, cx.N));
        });
    }
}

struct Witnessed {
    std::string name;
    OplaxTransformation witness;
    Report full;
};

// Every construction carrying an oplax witness, with injections applied.
std::vector<Witnessed> witnessed(Ctx& cx) {
    std::vector<Witnessed> out;
    const Manifest& m = cx.m;
    for (const auto& n : m.functors.order) {
        const auto& F = m.functors.at(n);
        if (!check_functor(F).ok()) continue;
        auto p = projections(F);
        cx.inj.apply("iotaPi " + n, p.witness);
        cx.inj.apply("Pi " + n, p.Pi);
        out.push_back({"iotaPi " + n, p.witness, check_projections(p)});
    }
    for (const auto& n : m.transformations.order) {
        const auto& g = m.transformations.at(n);
        if (!check_morphism(g).ok()) continue;
        const TwoCategory& B = *g.D->base;
        for (int c = 0; c < B.n0(); ++c)
            for (int y = 0; y < g.E->fibre[c]->n0(); ++y) {
                const std::string at = n + " " + B.obj(c) + " " + g.E->fibre[c]->obj(y);
                auto r = retraction_R(g, c, y);
                cx.inj.apply("cbar " + at, r.cbar);
                cx.inj.apply("R " + at, r.R);
                cx.inj.apply("R " + at, r.witness);
                out.push_back({"R " + at, r.witness, check_retraction(r)});
            }
    }
    for (const auto& fn : m.functors.order) {
        const auto& F = m.functors.at(fn);
        if (!check_functor(F).ok()) continue;
        for (const auto& dn : m.diagrams.order) {
            const DiagPtr& d = m.diagrams.at(dn);
            if (d->base != F.tgt || !check_diagram(*d).ok()) continue;
            for (int c = 0; c < F.tgt->n0(); ++c)
                for (int z = 0; z < d->fibre[c]->n0(); ++z) {
                    const std::string at = fn + " " + dn + " " + F.tgt->obj(c) + " " + d->fibre[c]->obj(z);
                    auto s = section_jz_iz(F, d, c, z);
                    cx.inj.apply("iz " + at, s.iz);
                    cx.inj.apply("pibar " + at, s.pibar);
                    cx.inj.apply("section " + at, s.witness);
                    out.push_back({"section " + at, s.witness, check_section(s)});
                }
        }
    }
    return out;
}

void suite_retractions(Ctx& cx) {
    for (const auto& n : cx.m.functors.order) {
        const auto& F = cx.m.functors.at(n);
        if (!check_functor(F).ok()) {
            cx.add("functor " + n, check_functor(F));
            continue;
        }
        for (Side side : {Side::Over, Side::Under})
            cx.guarded("fibre diagram " + n, [&] {
                cx.add(std::string("fibre diagram ") + n + " " + to_string(side), check_diagram(*fibre_diagram(F, side)));
            });
    }
    for (const auto& n : cx.m.transformations.order) {
        auto r = check_morphism(cx.m.transformations.at(n));
        if (!r.ok()) cx.add("transformation " + n, r);
    }
    std::vector<Witnessed> ws;
    cx.guarded("retractions", [&] { ws = witnessed(cx); });
    for (const auto& w : ws) cx.add(w.name, w.full);
}

void suite_oplax(Ctx& cx) {
    std::vector<Witnessed> ws;
    cx.guarded("witnesses", [&] { ws = witnessed(cx); });
    for (const auto& w : ws) cx.add("oplax " + w.name, check_oplax(w.witness));
}

void suite_contractibility(Ctx& cx) {
    const int N = cx.N;
    for (const auto& n : cx.m.cats.order) {
        const CatPtr& c = cx.m.cats.at(n);
        if (!validate(*c).ok()) {
            cx.add("validate " + n, validate(*c));
            continue;
        }
        auto id = identity_functor(c);
        for (Side side : {Side::Over, Side::Under})
            for (int o = 0; o < c->n0(); ++o) {
                const std::string name =
                    "slice " + n + (side == Side::Over ? " over " : " under ") + c->obj(o);
                cx.guarded(name, [&] {
                    auto cm = comma(id, o, side);
                    SSetPtr x = cx.inj.apply<1>(name, as_sset(diag(*double_nerve(cm->cat_ptr(), N))));
                    auto r = check_simplicial_identities(*x);
                    cx.add("simplicial identities " + name, r);
                    if (!r.ok()) return;
                    auto cc = normalized_chain_complex(*x);
                    auto hs = homology_upto(cc, N - 1);
                    bool point = hs[0].str() == "Z";
                    for (std::size_t i = 1; i < hs.size(); ++i) point = point && hs[i].str() == "0";
                    cx.add("homology " + name, point, homology_line(hs));
                });
            }
    }
}

SSetPtr diag_nerve(const CatPtr& c, int N) { return as_sset(diag(*double_nerve(c, N))); }

void suite_invariance(Ctx& cx) {
    const int N = cx.N;
    auto aw = [&](const std::string& name, const CatPtr& c) {
        cx.guarded(name, [&] {
            auto nn = double_nerve(c, N);
            SSetPtr d = diag(*nn);
            SSetPtr w = wbar(*nn, N);
            homology_iso(cx, name, aw_map(*nn, d, w));
        });
    };
    for (const auto& n : cx.m.cats.order)
        if (validate(*cx.m.cats.at(n)).ok()) aw("aw " + n, cx.m.cats.at(n));
    for (const auto& n : cx.m.diagrams.order) {
        const DiagPtr& d = cx.m.diagrams.at(n);
        if (!diagram_ok(cx, d)) continue;
        aw("aw grothendieck " + n, grothendieck(d)->total);
    }
    for (const auto& n : cx.m.functors.order) {
        const auto& F = cx.m.functors.at(n);
        if (!check_functor(F).ok()) {
            cx.add("functor " + n, check_functor(F));
            continue;
        }
        cx.guarded("Pi " + n, [&] {
            auto p = projections(F);
            auto src = diag_nerve(p.fam->total->total, N);
            auto tgt = diag_nerve(F.src, N);
            homology_iso(cx, "Pi " + n, diag_nn_map(p.Pi, src, tgt));
        });
    }
    for (const auto& n : cx.m.transformations.order) {
        const auto& g = cx.m.transformations.at(n);
        const std::string how = recipe_kind(cx.m, n);
        // collapses are not claimed to be isomorphisms
        if (how == "collapse") continue;
        if (how.empty()) {
            bool all = true;
            for (const auto& f : g.comp) all = all && is_isomorphism(f);
            if (!all) continue;
        }
        auto r = check_morphism(g);
        for (std::size_t c = 0; c < g.comp.size(); ++c)
            if (!is_isomorphism(g.comp[c])) r.add("component at " + g.D->base->obj(static_cast<int>(c)) + " is not an isomorphism");
        cx.add("transformation " + n, r);
        if (!r.ok()) continue;
        cx.guarded("hocolim " + n, [&] {
            auto hs = hocolim(g.D, N);
            auto ht = hocolim(g.E, N);
            auto fam = hocolim_map(g, *hs, *ht);
            cx.add("levelwise " + n, check_hocolim_map(fam, *hs, *ht));
            auto src = diag_nn(hs->s, N);
            auto tgt = diag_nn(ht->s, N);
            homology_iso(cx, "hocolim " + n, diag_nn_family_map(n, fam, src, tgt));
        });
    }
}

}  // namespace

SuiteReport verify(const std::string& suite, const Manifest& m, const RunOptions& opt) {
    SuiteReport out;
    out.suite = suite;
    auto trunc_for = [&](const std::string& s) { return opt.trunc ? *opt.trunc : m.truncation ? *m.truncation : default_truncation(s); };
    std::vector<std::string> run;
    if (suite == "all") {
        run = suite_names();
        out.truncation = Json::object();
    } else if (std::find(suite_names().begin(), suite_names().end(), suite) != suite_names().end()) {
        run = {suite};
        out.truncation = trunc_for(suite);
    } else {
        throw InputError("unknown suite '" + suite + "'");
    }
    for (const auto& s : run) {
        const int N = trunc_for(s);
        if (N < 1) throw InputError("truncation must be at least 1");
        if (suite == "all") out.truncation[s] = N;
        SuiteReport part;
        Ctx cx{m, Injector(m.inject), N, part};
        if (s == "identities") suite_identities(cx);
        if (s == "iso112") suite_iso(cx, true);
        if (s == "iso114") suite_iso(cx, false);
        if (s == "retractions") suite_retractions(cx);
        if (s == "oplax") suite_oplax(cx);
        if (s == "contractibility") suite_contractibility(cx);
        if (s == "invariance") suite_invariance(cx);
        for (auto& c : part.checks) {
            if (suite == "all") c.name = s + "/" + c.name;
            out.checks.push_back(std::move(c));
        }
    }
    return out;
}

}  // namespace tcat
