#include "tcat/grothendieck.hpp"

#include <map>

namespace tcat {

int Grothendieck::object(int a, int x) const {
    auto it = obj_index.find(pair_key(a, x));
    return it == obj_index.end() ? -1 : it->second;
}

int Grothendieck::one(int f, int u, int src, int tgt) const {
    auto it = one_index.find(Key{f, u, src, tgt});
    return it == one_index.end() ? -1 : it->second;
}

int Grothendieck::two(int al, int phi, int src1, int tgt1) const {
    auto it = two_index.find(Key{al, phi, src1, tgt1});
    return it == two_index.end() ? -1 : it->second;
}

int Grothendieck::flat_two(int al, int src1, int tgt1) const {
    if (src1 < 0 || tgt1 < 0 || al < 0) return -1;
    const TwoCategory& c = *diagram->base;
    const int f = one_base[src1];
    if (diagram->covariant()) {
        const TwoCategory& home = *diagram->fibre[c.one(f).tgt];
        return two(al, home.id2(one_fibre[src1]), src1, tgt1);
    }
    const TwoCategory& home = *diagram->fibre[c.one(f).src];
    return two(al, home.id2(one_fibre[tgt1]), src1, tgt1);
}

namespace {

// Identifier pair_id(base, fibre), or the endpoint-widened form when the
// pair is shared by several cells.
std::vector<std::string> disambiguate(const std::vector<std::string>& pair,
                                      const std::vector<std::string>& widened) {
    std::unordered_map<std::string, int> count;
    for (const auto& s : pair) ++count[s];
    std::vector<std::string> out(pair.size());
    for (std::size_t i = 0; i < pair.size(); ++i) out[i] = count[pair[i]] > 1 ? widened[i] : pair[i];
    return out;
}

}  // namespace

GrothPtr grothendieck(const DiagPtr& dp) {
    const TwoDiagram& d = *dp;
    const TwoCategory& c = *d.base;
    const bool cov = d.covariant();
    auto g = std::make_shared<Grothendieck>();
    g->diagram = dp;

    // objects
    std::vector<std::string> oid;
    for (int a = 0; a < c.n0(); ++a)
        for (int x = 0; x < d.fibre[a]->n0(); ++x) {
            g->obj_index[pair_key(a, x)] = static_cast<int>(g->obj_base.size());
            g->obj_base.push_back(a);
            g->obj_fibre.push_back(x);
            oid.push_back(pair_id(c.obj(a), d.fibre[a]->obj(x)));
        }

    // 1-cells (f, u) : (a,x) → (b,y)
    //   covariant:      u : f_*x → y in D_b
    //   contravariant:  u : x → f^*y in D_a
    std::vector<int> one_src, one_tgt;
    std::vector<std::string> p1, w1;
    for (int f = 0; f < c.n1(); ++f) {
        int a = c.one(f).src, b = c.one(f).tgt;
        const TwoFunctor& act = d.on1[f];
        const TwoCategory& da = *d.fibre[a];
        const TwoCategory& db = *d.fibre[b];
        for (int x = 0; x < da.n0(); ++x)
            for (int y = 0; y < db.n0(); ++y) {
                const auto& us = cov ? db.ones(act.on0[x], y) : da.ones(x, act.on0[y]);
                const TwoCategory& home = cov ? db : da;
                for (int u : us) {
                    int s = g->object(a, x), t = g->object(b, y);
                    g->one_index[Key{f, u, s, t}] = static_cast<int>(g->one_base.size());
                    g->one_base.push_back(f);
                    g->one_fibre.push_back(u);
                    one_src.push_back(s);
                    one_tgt.push_back(t);
                    p1.push_back(pair_id(c.one(f).id, home.one(u).id));
                    w1.push_back(tuple_id({c.one(f).id, home.one(u).id, oid[s], oid[t]}));
                }
            }
    }

    // 2-cells (α, φ) : (f,u) ⇒ (g,v)
    //   covariant:      φ : u ⇒ v ∘ α_*x in D_b
    //   contravariant:  φ : α^*y ∘ u ⇒ v in D_a
    std::vector<int> two_src, two_tgt;
    std::vector<std::string> p2, w2;
    const int n1 = static_cast<int>(g->one_base.size());
    std::vector<std::vector<int>> parallel(n1);
    {
        std::map<std::pair<int, int>, std::vector<int>> by_ends;
        for (int i = 0; i < n1; ++i) by_ends[{one_src[i], one_tgt[i]}].push_back(i);
        for (int i = 0; i < n1; ++i) parallel[i] = by_ends[{one_src[i], one_tgt[i]}];
    }
    for (int i = 0; i < n1; ++i) {
        int f = g->one_base[i], u = g->one_fibre[i];
        int x = g->obj_fibre[one_src[i]], y = g->obj_fibre[one_tgt[i]];
        const TwoCategory& home = cov ? *d.fibre[c.one(f).tgt] : *d.fibre[c.one(f).src];
        for (int j : parallel[i]) {
            int gg = g->one_base[j], v = g->one_fibre[j];
            for (int al : c.twos(f, gg)) {
                const TwoNatural& an = d.on2[al];
                int s, t;
                if (cov) {
                    s = u;
                    t = home.try_comp1(v, an.comp[x]);
                } else {
                    s = home.try_comp1(an.comp[y], u);
                    t = v;
                }
                if (s < 0 || t < 0) continue;
                for (int phi : home.twos(s, t)) {
                    g->two_index[Key{al, phi, i, j}] = static_cast<int>(g->two_base.size());
                    g->two_base.push_back(al);
                    g->two_fibre.push_back(phi);
                    two_src.push_back(i);
                    two_tgt.push_back(j);
                    p2.push_back(pair_id(c.two(al).id, home.two(phi).id));
                    w2.push_back(tuple_id({c.two(al).id, home.two(phi).id, p1[i], p1[j], oid[one_src[i]], oid[one_tgt[i]]}));
                }
            }
        }
    }

    TwoCategoryBuilder bld("∫" + d.name);
    for (const auto& s : oid) bld.add_object(s);
    auto ids1 = disambiguate(p1, w1);
    for (int i = 0; i < n1; ++i) bld.add_one(ids1[i], one_src[i], one_tgt[i]);
    auto ids2 = disambiguate(p2, w2);
    for (std::size_t i = 0; i < ids2.size(); ++i) bld.add_two(ids2[i], two_src[i], two_tgt[i]);

    for (int o = 0; o < static_cast<int>(oid.size()); ++o) {
        int a = g->obj_base[o], x = g->obj_fibre[o];
        bld.set_id1(o, g->one(c.id1(a), d.fibre[a]->id1(x), o, o));
    }
    for (int i = 0; i < n1; ++i) {
        int f = g->one_base[i], u = g->one_fibre[i];
        int a = c.one(f).src, b = c.one(f).tgt;
        const TwoCategory& home = cov ? *d.fibre[b] : *d.fibre[a];
        bld.set_id2(i, g->two(c.id2(f), home.id2(u), i, i));
    }

    // (f',u') ∘ (f,u)
    //   covariant:      (f'f, u' ∘ f'_*u)
    //   contravariant:  (f'f, f^*u' ∘ u)
    auto comp1 = [&, cov](int j, int i) {
        int f = g->one_base[i], u = g->one_fibre[i];
        int f2 = g->one_base[j], u2 = g->one_fibre[j];
        int h = c.comp1(f2, f);
        int w;
        if (cov) {
            const TwoCategory& dc = *d.fibre[c.one(f2).tgt];
            w = dc.comp1(u2, d.on1[f2].on1[u]);
        } else {
            const TwoCategory& da = *d.fibre[c.one(f).src];
            w = da.comp1(d.on1[f].on1[u2], u);
        }
        return g->one(h, w, one_src[i], one_tgt[j]);
    };
    // (β,ψ)·(α,φ)
    //   covariant:      (βα, (ψ ∘ 1_{α_*x}) · φ)
    //   contravariant:  (βα, ψ · (1_{β^*y} ∘ φ))
    auto vcomp = [&, cov](int q, int p) {
        int al = g->two_base[p], phi = g->two_fibre[p];
        int be = g->two_base[q], psi = g->two_fibre[q];
        int i = two_src[p];
        int f = g->one_base[i];
        int x = g->obj_fibre[one_src[i]], y = g->obj_fibre[one_tgt[i]];
        int w;
        if (cov) {
            const TwoCategory& db = *d.fibre[c.one(f).tgt];
            w = db.vcomp(db.rw(psi, d.on2[al].comp[x]), phi);
        } else {
            const TwoCategory& da = *d.fibre[c.one(f).src];
            w = da.vcomp(psi, da.lw(d.on2[be].comp[y], phi));
        }
        return g->two(c.vcomp(be, al), w, i, two_tgt[q]);
    };
    // (α',φ') ∘ (α,φ)
    //   covariant:      (α'α, φ' ∘ f'_*φ)
    //   contravariant:  (α'α, g^*φ' ∘ φ)
    auto hcomp = [&, cov](int q, int p) {
        int al = g->two_base[p], phi = g->two_fibre[p];
        int al2 = g->two_base[q], phi2 = g->two_fibre[q];
        int w;
        if (cov) {
            int f2 = c.two(al2).src;
            const TwoCategory& dc = *d.fibre[c.one(f2).tgt];
            w = dc.hcomp(phi2, d.on1[f2].on2[phi]);
        } else {
            int gg = c.two(al).tgt;
            const TwoCategory& da = *d.fibre[c.one(gg).src];
            w = da.hcomp(d.on1[gg].on2[phi2], phi);
        }
        int s = comp1(two_src[q], two_src[p]);
        int t = comp1(two_tgt[q], two_tgt[p]);
        return g->two(c.hcomp(al2, al), w, s, t);
    };
    bld.complete(comp1, vcomp, hcomp);
    g->total = bld.build();
    return g;
}

TwoFunctor projection(const Grothendieck& g) {
    TwoFunctor p;
    p.name = "π";
    p.src = g.total;
    p.tgt = g.diagram->base;
    p.on0 = g.obj_base;
    p.on1 = g.one_base;
    p.on2 = g.two_base;
    return p;
}

namespace {

// Source and target objects of a 1-cell in the total category.
std::pair<int, int> ends(const Grothendieck& g, int i) {
    const auto& cell = g.total->one(i);
    return {cell.src, cell.tgt};
}

}  // namespace

TwoFunctor grothendieck_transformation(const DiagramMorphism& gm, const Grothendieck& s, const Grothendieck& t) {
    const TwoCategory& c = *s.diagram->base;
    const bool cov = s.diagram->covariant();
    TwoFunctor F;
    F.name = "∫" + gm.name;
    F.src = s.total;
    F.tgt = t.total;
    const TwoCategory& S = *s.total;
    F.on0.resize(S.n0());
    for (int o = 0; o < S.n0(); ++o) {
        int a = s.obj_base[o];
        F.on0[o] = t.object(a, gm.comp[a].on0[s.obj_fibre[o]]);
    }
    F.on1.resize(S.n1());
    for (int i = 0; i < S.n1(); ++i) {
        int f = s.one_base[i];
        int home = cov ? c.one(f).tgt : c.one(f).src;
        auto [so, to] = ends(s, i);
        F.on1[i] = t.one(f, gm.comp[home].on1[s.one_fibre[i]], F.on0[so], F.on0[to]);
    }
    F.on2.resize(S.n2());
    for (int i = 0; i < S.n2(); ++i) {
        int al = s.two_base[i];
        int f = c.two(al).src;
        int home = cov ? c.one(f).tgt : c.one(f).src;
        F.on2[i] = t.two(al, gm.comp[home].on2[s.two_fibre[i]], F.on1[S.two(i).src], F.on1[S.two(i).tgt]);
    }
    return F;
}

TwoNatural grothendieck_modification(const DiagramModification& m, const Grothendieck& s, const Grothendieck& t) {
    const TwoCategory& c = *s.diagram->base;
    TwoNatural n;
    n.name = "∫" + m.name;
    n.F = grothendieck_transformation(m.S, s, t);
    n.G = grothendieck_transformation(m.T, s, t);
    n.comp.resize(s.total->n0());
    for (int o = 0; o < s.total->n0(); ++o) {
        int a = s.obj_base[o];
        n.comp[o] = t.one(c.id1(a), m.comp[a].comp[s.obj_fibre[o]], n.F.on0[o], n.G.on0[o]);
    }
    return n;
}

TwoFunctor fibre_embedding(const Grothendieck& g, int cobj) {
    const TwoCategory& c = *g.diagram->base;
    const TwoCategory& dc = *g.diagram->fibre[cobj];
    TwoFunctor F;
    F.name = "incl_" + c.obj(cobj);
    F.src = g.diagram->fibre[cobj];
    F.tgt = g.total;
    F.on0.resize(dc.n0());
    for (int x = 0; x < dc.n0(); ++x) F.on0[x] = g.object(cobj, x);
    F.on1.resize(dc.n1());
    int e = c.id1(cobj);
    for (int u = 0; u < dc.n1(); ++u)
        F.on1[u] = g.one(e, u, F.on0[dc.one(u).src], F.on0[dc.one(u).tgt]);
    F.on2.resize(dc.n2());
    for (int a = 0; a < dc.n2(); ++a)
        F.on2[a] = g.two(c.id2(e), a, F.on1[dc.two(a).src], F.on1[dc.two(a).tgt]);
    return F;
}

BaseChange base_change(const TwoFunctor& F, const DiagPtr& d, const Grothendieck& gd) {
    BaseChange bc;
    bc.pulled = pullback(F, d);
    bc.groth_pulled = grothendieck(bc.pulled);
    const Grothendieck& gp = *bc.groth_pulled;
    const TwoCategory& P = *gp.total;
    TwoFunctor& L = bc.lift;
    L.name = "lift_" + F.name;
    L.src = gp.total;
    L.tgt = gd.total;
    L.on0.resize(P.n0());
    for (int o = 0; o < P.n0(); ++o) L.on0[o] = gd.object(F.on0[gp.obj_base[o]], gp.obj_fibre[o]);
    L.on1.resize(P.n1());
    for (int i = 0; i < P.n1(); ++i)
        L.on1[i] = gd.one(F.on1[gp.one_base[i]], gp.one_fibre[i], L.on0[P.one(i).src], L.on0[P.one(i).tgt]);
    L.on2.resize(P.n2());
    for (int i = 0; i < P.n2(); ++i)
        L.on2[i] = gd.two(F.on2[gp.two_base[i]], gp.two_fibre[i], L.on1[P.two(i).src], L.on1[P.two(i).tgt]);
    return bc;
}

Report check_base_change_square(const TwoFunctor& F, const BaseChange& bc, const Grothendieck& gd) {
    Report r;
    r.absorb(check_functor(bc.lift), "lift");
    if (!r.ok()) return r;
    const Grothendieck& gp = *bc.groth_pulled;
    const TwoCategory& A = *F.src;
    const TwoCategory& P = *gp.total;
    const std::vector<int>* pb[3] = {&gp.obj_base, &gp.one_base, &gp.two_base};
    const std::vector<int>* db[3] = {&gd.obj_base, &gd.one_base, &gd.two_base};
    const int nA[3] = {A.n0(), A.n1(), A.n2()};
    const int nP[3] = {P.n0(), P.n1(), P.n2()};
    const int nD[3] = {gd.total->n0(), gd.total->n1(), gd.total->n2()};
    for (int dim = 0; dim < 3; ++dim) {
        // commuting square
        for (int i = 0; i < nP[dim]; ++i) {
            int lhs = (*db[dim])[bc.lift(dim, i)];
            int rhs = F(dim, (*pb[dim])[i]);
            if (lhs != rhs) r.add("square fails on " + std::to_string(dim) + "-cell " + std::to_string(i));
        }
        // (π, F̄) injective, and the fibre of π over σ matches the fibre of ∫D over Fσ
        std::unordered_map<std::uint64_t, int> seen;
        for (int i = 0; i < nP[dim]; ++i) {
            auto k = pair_key((*pb[dim])[i], bc.lift(dim, i));
            if (!seen.emplace(k, i).second)
                r.add("cells " + std::to_string(seen[k]) + " and " + std::to_string(i) + " of dimension " +
                      std::to_string(dim) + " share their image in the strict pullback");
        }
        std::vector<int> over_a(nA[dim], 0);
        for (int i = 0; i < nP[dim]; ++i) ++over_a[(*pb[dim])[i]];
        std::unordered_map<int, int> over_c;
        for (int i = 0; i < nD[dim]; ++i) ++over_c[(*db[dim])[i]];
        for (int s = 0; s < nA[dim]; ++s) {
            int want = over_c.count(F(dim, s)) ? over_c[F(dim, s)] : 0;
            if (over_a[s] != want)
                r.add("fibre over " + std::to_string(dim) + "-cell " + std::to_string(s) + " has " +
                      std::to_string(over_a[s]) + " cells, pullback needs " + std::to_string(want));
        }
    }
    return r;
}

}  // namespace tcat
