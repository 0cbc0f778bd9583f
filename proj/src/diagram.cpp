#include "tcat/diagram.hpp"

#include <map>

namespace tcat {

const char* to_string(Variance v) { return v == Variance::Covariant ? "covariant" : "contravariant"; }

namespace {

bool same(const CatPtr& a, const CatPtr& b) { return a == b || compare_cells(*a, *b).ok(); }

}  // namespace

Report check_diagram(const TwoDiagram& d) {
    Report r;
    const auto& C = *d.base;
    const std::string n = d.name;
    if (static_cast<int>(d.fibre.size()) != C.n0() || static_cast<int>(d.on1.size()) != C.n1() ||
        static_cast<int>(d.on2.size()) != C.n2()) {
        r.add(n + ": assignment sizes do not match the base");
        return r;
    }
    for (int c = 0; c < C.n0(); ++c) r.absorb(validate(*d.fibre[c]), n + " fibre " + C.obj(c));
    const bool cov = d.covariant();
    for (int f = 0; f < C.n1(); ++f) {
        const auto& cell = C.one(f);
        const auto& F = d.on1[f];
        int from = cov ? cell.src : cell.tgt, to = cov ? cell.tgt : cell.src;
        if (!same(F.src, d.fibre[from]) || !same(F.tgt, d.fibre[to])) {
            r.add(n + ": 2-functor for " + cell.id + " has wrong source/target");
            continue;
        }
        r.absorb(check_functor(F), n + " 1-cell " + cell.id);
    }
    if (!r.ok()) return r;
    for (int a = 0; a < C.n2(); ++a) {
        const auto& cell = C.two(a);
        const auto& t = d.on2[a];
        if (compare_functors(t.F, d.on1[cell.src]).count() || compare_functors(t.G, d.on1[cell.tgt]).count()) {
            r.add(n + ": transformation for " + cell.id + " has wrong source/target");
            continue;
        }
        r.absorb(check_natural(t), n + " 2-cell " + cell.id);
    }
    if (!r.ok()) return r;

    // strict functoriality
    for (int o = 0; o < C.n0(); ++o) {
        if (compare_functors(d.on1[C.id1(o)], identity_functor(d.fibre[o])).count())
            r.add(n + ": identity 1-cell of " + C.obj(o) + " not sent to the identity");
    }
    for (const auto& e : C.comp1_table()) {
        const auto &G = d.on1[e.second], &F = d.on1[e.first];
        TwoFunctor want = cov ? compose(G, F) : compose(F, G);
        if (compare_functors(d.on1[e.result], want).count())
            r.add(n + ": functoriality fails on (" + C.one(e.second).id + "," + C.one(e.first).id + ")");
    }
    for (int f = 0; f < C.n1(); ++f) {
        const auto& t = d.on2[C.id2(f)];
        const auto& D = *t.F.tgt;
        for (int x = 0; x < t.F.src->n0(); ++x)
            if (t.comp[x] != D.id1(t.F.on0[x])) {
                r.add(n + ": identity 2-cell of " + C.one(f).id + " not sent to the identity");
                break;
            }
    }
    for (const auto& e : C.vcomp_table()) {
        const auto &tb = d.on2[e.second], &ta = d.on2[e.first], &tr = d.on2[e.result];
        const auto& D = *tr.F.tgt;
        for (int x = 0; x < tr.F.src->n0(); ++x)
            if (D.try_comp1(tb.comp[x], ta.comp[x]) != tr.comp[x]) {
                r.add(n + ": vertical composite (" + C.two(e.second).id + "," + C.two(e.first).id +
                      ") not preserved");
                break;
            }
    }
    for (const auto& e : C.hcomp_table()) {
        int be = e.second, al = e.first;
        const auto &tb = d.on2[be], &ta = d.on2[al], &tr = d.on2[e.result];
        const auto& D = *tr.F.tgt;
        int f2 = C.two(be).src, g = C.two(al).tgt;
        bool bad = false;
        for (int x = 0; x < tr.F.src->n0() && !bad; ++x) {
            int want;
            if (cov) {
                // (β∘α)_*x = β_*(g_*x) ∘ f'_*(α_*x)
                int gx = d.on1[g].on0[x];
                want = D.try_comp1(tb.comp[gx], d.on1[f2].on1[ta.comp[x]]);
            } else {
                // (β∘α)^*z = g^*(β^*z) ∘ α^*(f'^*z)
                int fz = d.on1[f2].on0[x];
                want = D.try_comp1(d.on1[g].on1[tb.comp[x]], ta.comp[fz]);
            }
            if (want != tr.comp[x]) bad = true;
        }
        if (bad) r.add(n + ": horizontal composite (" + C.two(be).id + "," + C.two(al).id + ") not preserved");
    }
    return r;
}

Report check_morphism(const DiagramMorphism& g) {
    Report r;
    const auto &D = *g.D, &E = *g.E;
    if (D.var != E.var || !same(D.base, E.base)) {
        r.add(g.name + ": diagrams have different bases or variances");
        return r;
    }
    const auto& C = *D.base;
    if (static_cast<int>(g.comp.size()) != C.n0()) {
        r.add(g.name + ": component count mismatch");
        return r;
    }
    for (int c = 0; c < C.n0(); ++c) {
        if (!same(g.comp[c].src, D.fibre[c]) || !same(g.comp[c].tgt, E.fibre[c])) {
            r.add(g.name + ": component at " + C.obj(c) + " has wrong type");
            continue;
        }
        r.absorb(check_functor(g.comp[c]), g.name + " component " + C.obj(c));
    }
    if (!r.ok()) return r;
    const bool cov = D.covariant();
    for (int f = 0; f < C.n1(); ++f) {
        int a = C.one(f).src, b = C.one(f).tgt;
        if (!cov) std::swap(a, b);
        if (compare_functors(compose(g.comp[b], D.on1[f]), compose(E.on1[f], g.comp[a])).count())
            r.add(g.name + ": not natural on 1-cell " + C.one(f).id);
    }
    for (int al = 0; al < C.n2(); ++al) {
        int a = C.src0(al), b = C.tgt0(al);
        if (!cov) std::swap(a, b);
        const auto &td = D.on2[al], &te = E.on2[al];
        for (int x = 0; x < D.fibre[a]->n0(); ++x)
            if (g.comp[b].on1[td.comp[x]] != te.comp[g.comp[a].on0[x]]) {
                r.add(g.name + ": not natural on 2-cell " + C.two(al).id);
                break;
            }
    }
    return r;
}

Report check_modification(const DiagramModification& m) {
    Report r = check_morphism(m.S);
    r.absorb(check_morphism(m.T));
    if (!r.ok()) return r;
    const auto& D = *m.S.D;
    const auto& E = *m.S.E;
    const auto& C = *D.base;
    if (static_cast<int>(m.comp.size()) != C.n0()) {
        r.add(m.name + ": component count mismatch");
        return r;
    }
    for (int c = 0; c < C.n0(); ++c) {
        const auto& t = m.comp[c];
        if (compare_functors(t.F, m.S.comp[c]).count() || compare_functors(t.G, m.T.comp[c]).count()) {
            r.add(m.name + ": component at " + C.obj(c) + " has wrong type");
            continue;
        }
        r.absorb(check_natural(t), m.name + " component " + C.obj(c));
    }
    if (!r.ok()) return r;
    const bool cov = D.covariant();
    for (int f = 0; f < C.n1(); ++f) {
        int a = C.one(f).src, b = C.one(f).tgt;
        if (!cov) std::swap(a, b);
        for (int x = 0; x < D.fibre[a]->n0(); ++x) {
            int lhs = E.on1[f].on1[m.comp[a].comp[x]];
            int rhs = m.comp[b].comp[D.on1[f].on0[x]];
            if (lhs != rhs) {
                r.add(m.name + ": modification axiom fails at " + C.one(f).id);
                break;
            }
        }
    }
    return r;
}

DiagramMorphism identity_morphism(const DiagPtr& d) {
    DiagramMorphism g{"1_" + d->name, d, d, {}};
    for (const auto& f : d->fibre) g.comp.push_back(identity_functor(f));
    return g;
}

DiagramMorphism compose(const DiagramMorphism& g2, const DiagramMorphism& g1) {
    DiagramMorphism g{g2.name + "." + g1.name, g1.D, g2.E, {}};
    for (std::size_t c = 0; c < g1.comp.size(); ++c) g.comp.push_back(compose(g2.comp[c], g1.comp[c]));
    return g;
}

DiagPtr constant_diagram(const CatPtr& base, const CatPtr& fibre, Variance var, const std::string& name) {
    auto d = std::make_shared<TwoDiagram>();
    d->name = name.empty() ? "const_" + fibre->name() : name;
    d->base = base;
    d->var = var;
    d->fibre.assign(base->n0(), fibre);
    TwoFunctor id = identity_functor(fibre);
    d->on1.assign(base->n1(), id);
    d->on2.assign(base->n2(), identity_natural(id));
    return d;
}

DiagPtr pullback(const TwoFunctor& F, const DiagPtr& dp) {
    const auto& D = *dp;
    auto d = std::make_shared<TwoDiagram>();
    d->name = F.name + "^*" + D.name;
    d->base = F.src;
    d->var = D.var;
    for (int a = 0; a < F.src->n0(); ++a) d->fibre.push_back(D.fibre[F.on0[a]]);
    for (int f = 0; f < F.src->n1(); ++f) d->on1.push_back(D.on1[F.on1[f]]);
    for (int a = 0; a < F.src->n2(); ++a) d->on2.push_back(D.on2[F.on2[a]]);
    return d;
}

namespace {

// Action of a 1-cell of C on promoted hom categories, given as maps on C cells.
TwoFunctor hom_action(const std::string& name, const CatPtr& from, const CatPtr& to,
                      const std::function<int(int)>& on_one, const std::function<int(int)>& on_two,
                      const TwoCategory& C) {
    TwoFunctor F{name, from, to, {}, {}, {}};
    for (int i = 0; i < from->n0(); ++i) {
        int p = C.find1(from->obj(i));
        F.on0.push_back(to->find0(C.one(on_one(p)).id));
    }
    for (int i = 0; i < from->n1(); ++i) {
        int ph = C.find2(from->one(i).id);
        F.on1.push_back(to->find1(C.two(on_two(ph)).id));
    }
    for (int i = 0; i < from->n2(); ++i) {
        // 2-cells of a promoted hom are identities, indexed like the 1-cells
        F.on2.push_back(to->id2(F.on1[from->two(i).src]));
    }
    for (int x : F.on0)
        if (x < 0) throw StructureError(name + ": hom action left the hom category");
    for (int x : F.on1)
        if (x < 0) throw StructureError(name + ": hom action left the hom category");
    return F;
}

}  // namespace

DiagPtr representable_into(const CatPtr& cp, int c) {
    const auto& C = *cp;
    auto d = std::make_shared<TwoDiagram>();
    d->name = C.name() + "(-," + C.obj(c) + ")";
    d->base = cp;
    d->var = Variance::Contravariant;
    for (int a = 0; a < C.n0(); ++a) d->fibre.push_back(hom_category(cp, a, c));
    for (int f = 0; f < C.n1(); ++f) {
        int a = C.one(f).src, b = C.one(f).tgt;
        d->on1.push_back(hom_action(C.one(f).id + "^*", d->fibre[b], d->fibre[a],
                                    [&](int p) { return C.comp1(p, f); },
                                    [&](int ph) { return C.rw(ph, f); }, C));
    }
    for (int al = 0; al < C.n2(); ++al) {
        int f = C.two(al).src, g = C.two(al).tgt;
        int b = C.one(f).tgt;
        TwoNatural t{C.two(al).id + "^*", d->on1[f], d->on1[g], {}};
        const auto& Hb = *d->fibre[b];
        const auto& Ha = *d->fibre[C.one(f).src];
        for (int i = 0; i < Hb.n0(); ++i) {
            int p = C.find1(Hb.obj(i));
            t.comp.push_back(Ha.find1(C.two(C.lw(p, al)).id));
        }
        d->on2.push_back(std::move(t));
    }
    return d;
}

DiagPtr representable_from(const CatPtr& cp, int c) {
    const auto& C = *cp;
    auto d = std::make_shared<TwoDiagram>();
    d->name = C.name() + "(" + C.obj(c) + ",-)";
    d->base = cp;
    d->var = Variance::Covariant;
    for (int a = 0; a < C.n0(); ++a) d->fibre.push_back(hom_category(cp, c, a));
    for (int f = 0; f < C.n1(); ++f) {
        int a = C.one(f).src, b = C.one(f).tgt;
        d->on1.push_back(hom_action(C.one(f).id + "_*", d->fibre[a], d->fibre[b],
                                    [&](int p) { return C.comp1(f, p); },
                                    [&](int ph) { return C.lw(f, ph); }, C));
    }
    for (int al = 0; al < C.n2(); ++al) {
        int f = C.two(al).src, g = C.two(al).tgt;
        int a = C.one(f).src, b = C.one(f).tgt;
        TwoNatural t{C.two(al).id + "_*", d->on1[f], d->on1[g], {}};
        const auto& Ha = *d->fibre[a];
        const auto& Hb = *d->fibre[b];
        for (int i = 0; i < Ha.n0(); ++i) {
            int p = C.find1(Ha.obj(i));
            t.comp.push_back(Hb.find1(C.two(C.rw(al, p)).id));
        }
        d->on2.push_back(std::move(t));
    }
    return d;
}

DiagramMorphism collapse_to_point(const DiagPtr& d) {
    auto pt = terminal();
    auto e = constant_diagram(d->base, pt, d->var, "pt");
    DiagramMorphism g{d->name + "->pt", d, e, {}};
    for (const auto& f : d->fibre) {
        TwoFunctor F{"!", f, pt, std::vector<int>(f->n0(), 0), std::vector<int>(f->n1(), 0),
                     std::vector<int>(f->n2(), 0)};
        g.comp.push_back(std::move(F));
    }
    return g;
}

namespace {

DiagramMorphism representable_map(const DiagPtr& from, const DiagPtr& to, int h, bool into) {
    const TwoCategory& C = *from->base;
    DiagramMorphism g{C.one(h).id + (into ? "_*" : "^*"), from, to, {}};
    for (int x = 0; x < C.n0(); ++x) {
        if (into)
            g.comp.push_back(hom_action(g.name, from->fibre[x], to->fibre[x],
                                        [&](int p) { return C.comp1(h, p); },
                                        [&](int ph) { return C.lw(h, ph); }, C));
        else
            g.comp.push_back(hom_action(g.name, from->fibre[x], to->fibre[x],
                                        [&](int p) { return C.comp1(p, h); },
                                        [&](int ph) { return C.rw(ph, h); }, C));
    }
    return g;
}

DiagramModification representable_mod(const DiagramMorphism& s, const DiagramMorphism& t, int psi, bool into) {
    const TwoCategory& C = *s.D->base;
    DiagramModification m{C.two(psi).id + (into ? "_*" : "^*"), s, t, {}};
    for (int x = 0; x < C.n0(); ++x) {
        const TwoCategory& from = *s.D->fibre[x];
        const TwoCategory& to = *s.E->fibre[x];
        TwoNatural n{m.name, s.comp[x], t.comp[x], {}};
        for (int i = 0; i < from.n0(); ++i) {
            int p = C.find1(from.obj(i));
            int w = into ? C.rw(psi, p) : C.lw(p, psi);
            int k = to.find1(C.two(w).id);
            if (k < 0) throw StructureError(m.name + ": component left the hom category");
            n.comp.push_back(k);
        }
        m.comp.push_back(std::move(n));
    }
    return m;
}

}  // namespace

DiagramMorphism representable_into_map(const DiagPtr& from, const DiagPtr& to, int h) {
    return representable_map(from, to, h, true);
}
DiagramMorphism representable_from_map(const DiagPtr& from, const DiagPtr& to, int h) {
    return representable_map(from, to, h, false);
}
DiagramModification representable_into_mod(const DiagramMorphism& s, const DiagramMorphism& t, int psi) {
    return representable_mod(s, t, psi, true);
}
DiagramModification representable_from_mod(const DiagramMorphism& s, const DiagramMorphism& t, int psi) {
    return representable_mod(s, t, psi, false);
}

DiagramMorphism pullback(const TwoFunctor& F, const DiagramMorphism& g, const DiagPtr& fd, const DiagPtr& fe) {
    DiagramMorphism out{F.name + "^*" + g.name, fd, fe, {}};
    for (int a = 0; a < F.src->n0(); ++a) out.comp.push_back(g.comp[F.on0[a]]);
    return out;
}

DiagramModification pullback(const TwoFunctor& F, const DiagramModification& m, const DiagramMorphism& s,
                             const DiagramMorphism& t) {
    DiagramModification out{F.name + "^*" + m.name, s, t, {}};
    for (int a = 0; a < F.src->n0(); ++a) out.comp.push_back(m.comp[F.on0[a]]);
    return out;
}

DiagramMorphism relabel_diagram(const DiagPtr& dp, const std::string& suffix) {
    const TwoDiagram& d = *dp;
    auto e = std::make_shared<TwoDiagram>();
    e->name = d.name + suffix;
    e->base = d.base;
    e->var = d.var;
    std::map<const TwoCategory*, CatPtr> copies;
    auto rename = [&](const std::string& s) { return s + suffix; };
    for (const auto& f : d.fibre) {
        auto& slot = copies[f.get()];
        if (!slot) slot = relabel(f, rename, f->name() + suffix);
        e->fibre.push_back(slot);
    }
    auto moved = [&](const TwoFunctor& F) {
        TwoFunctor G = F;
        G.src = copies.at(F.src.get());
        G.tgt = copies.at(F.tgt.get());
        return G;
    };
    for (const auto& F : d.on1) e->on1.push_back(moved(F));
    for (const auto& t : d.on2) e->on2.push_back(TwoNatural{t.name, moved(t.F), moved(t.G), t.comp});
    DiagramMorphism g{d.name + "->" + e->name, dp, e, {}};
    for (std::size_t c = 0; c < d.fibre.size(); ++c) {
        const auto& f = d.fibre[c];
        TwoFunctor F{"relabel", f, e->fibre[c], {}, {}, {}};
        for (int i = 0; i < f->n0(); ++i) F.on0.push_back(i);
        for (int i = 0; i < f->n1(); ++i) F.on1.push_back(i);
        for (int i = 0; i < f->n2(); ++i) F.on2.push_back(i);
        g.comp.push_back(std::move(F));
    }
    return g;
}

}  // namespace tcat
