#include "tcat/cellmap.hpp"

namespace tcat {

namespace {

bool same_cat(const CatPtr& a, const CatPtr& b) { return a == b || compare_cells(*a, *b).ok(); }

Report shape_check(const TwoFunctor& F) {
    Report r;
    const auto &s = *F.src, &t = *F.tgt;
    if (static_cast<int>(F.on0.size()) != s.n0() || static_cast<int>(F.on1.size()) != s.n1() ||
        static_cast<int>(F.on2.size()) != s.n2()) {
        r.add(F.name + ": cell map sizes do not match the source");
        return r;
    }
    for (int x : F.on0)
        if (x < 0 || x >= t.n0()) r.add(F.name + ": object image out of range");
    for (int x : F.on1)
        if (x < 0 || x >= t.n1()) r.add(F.name + ": 1-cell image out of range");
    for (int x : F.on2)
        if (x < 0 || x >= t.n2()) r.add(F.name + ": 2-cell image out of range");
    return r;
}

}  // namespace

TwoFunctor identity_functor(const CatPtr& c) {
    TwoFunctor F{"1_" + c->name(), c, c, {}, {}, {}};
    for (int i = 0; i < c->n0(); ++i) F.on0.push_back(i);
    for (int i = 0; i < c->n1(); ++i) F.on1.push_back(i);
    for (int i = 0; i < c->n2(); ++i) F.on2.push_back(i);
    return F;
}

TwoFunctor compose(const TwoFunctor& G, const TwoFunctor& F) {
    TwoFunctor H{G.name + "." + F.name, F.src, G.tgt, {}, {}, {}};
    for (int x : F.on0) H.on0.push_back(G.on0.at(x));
    for (int x : F.on1) H.on1.push_back(G.on1.at(x));
    for (int x : F.on2) H.on2.push_back(G.on2.at(x));
    return H;
}

TwoNatural identity_natural(const TwoFunctor& F) {
    TwoNatural t{"1_" + F.name, F, F, {}};
    for (int a = 0; a < F.src->n0(); ++a) t.comp.push_back(F.tgt->id1(F.on0[a]));
    return t;
}

Report check_functor(const TwoFunctor& F) {
    Report r = shape_check(F);
    if (!r.ok()) return r;
    const auto &s = *F.src, &t = *F.tgt;
    const std::string& n = F.name;
    for (int f = 0; f < s.n1(); ++f) {
        const auto& c = s.one(f);
        const auto& img = t.one(F.on1[f]);
        if (img.src != F.on0[c.src] || img.tgt != F.on0[c.tgt])
            r.add(n + ": image of 1-cell " + c.id + " has wrong source/target");
    }
    for (int a = 0; a < s.n2(); ++a) {
        const auto& c = s.two(a);
        const auto& img = t.two(F.on2[a]);
        if (img.src != F.on1[c.src] || img.tgt != F.on1[c.tgt])
            r.add(n + ": image of 2-cell " + c.id + " has wrong source/target");
    }
    if (!r.ok()) return r;
    for (int o = 0; o < s.n0(); ++o)
        if (F.on1[s.id1(o)] != t.id1(F.on0[o])) r.add(n + ": identity 1-cell of " + s.obj(o) + " not preserved");
    for (int f = 0; f < s.n1(); ++f)
        if (F.on2[s.id2(f)] != t.id2(F.on1[f]))
            r.add(n + ": identity 2-cell of " + s.one(f).id + " not preserved");
    for (const auto& e : s.comp1_table())
        if (t.try_comp1(F.on1[e.second], F.on1[e.first]) != F.on1[e.result])
            r.add(n + ": hcomp1 of (" + s.one(e.second).id + "," + s.one(e.first).id + ") not preserved");
    for (const auto& e : s.vcomp_table())
        if (t.try_vcomp(F.on2[e.second], F.on2[e.first]) != F.on2[e.result])
            r.add(n + ": vcomp2 of (" + s.two(e.second).id + "," + s.two(e.first).id + ") not preserved");
    for (const auto& e : s.hcomp_table())
        if (t.try_hcomp(F.on2[e.second], F.on2[e.first]) != F.on2[e.result])
            r.add(n + ": hcomp2 of (" + s.two(e.second).id + "," + s.two(e.first).id + ") not preserved");
    return r;
}

Report check_natural(const TwoNatural& tr) {
    Report r;
    const auto &F = tr.F, &G = tr.G;
    if (!same_cat(F.src, G.src) || !same_cat(F.tgt, G.tgt)) {
        r.add(tr.name + ": functors are not parallel");
        return r;
    }
    const auto &s = *F.src, &t = *F.tgt;
    if (static_cast<int>(tr.comp.size()) != s.n0()) {
        r.add(tr.name + ": component count mismatch");
        return r;
    }
    for (int a = 0; a < s.n0(); ++a) {
        int e = tr.comp[a];
        if (e < 0 || e >= t.n1() || t.one(e).src != F.on0[a] || t.one(e).tgt != G.on0[a])
            r.add(tr.name + ": component at " + s.obj(a) + " has wrong type");
    }
    if (!r.ok()) return r;
    try {
        for (int f = 0; f < s.n1(); ++f) {
            const auto& c = s.one(f);
            if (t.comp1(G.on1[f], tr.comp[c.src]) != t.comp1(tr.comp[c.tgt], F.on1[f]))
                r.add(tr.name + ": not natural on 1-cell " + c.id);
        }
        for (int al = 0; al < s.n2(); ++al) {
            int a = s.src0(al), b = s.tgt0(al);
            int lhs = t.hcomp(G.on2[al], t.id2(tr.comp[a]));
            int rhs = t.hcomp(t.id2(tr.comp[b]), F.on2[al]);
            if (lhs != rhs) r.add(tr.name + ": not natural on 2-cell " + s.two(al).id);
        }
    } catch (const StructureError& e) {
        r.add(tr.name + ": " + e.what());
    }
    return r;
}

Report check_oplax(const OplaxTransformation& tr) {
    Report r;
    r.absorb(check_functor(tr.F), tr.name + " source functor");
    r.absorb(check_functor(tr.G), tr.name + " target functor");
    if (!r.ok()) return r;
    const auto &F = tr.F, &G = tr.G;
    if (!same_cat(F.src, G.src) || !same_cat(F.tgt, G.tgt)) {
        r.add(tr.name + ": functors are not parallel");
        return r;
    }
    const auto &s = *F.src, &t = *F.tgt;
    if (static_cast<int>(tr.comp.size()) != s.n0() || static_cast<int>(tr.nat.size()) != s.n1()) {
        r.add(tr.name + ": component count mismatch");
        return r;
    }
    const auto& eta = tr.comp;
    for (int a = 0; a < s.n0(); ++a) {
        int e = eta[a];
        if (e < 0 || e >= t.n1() || t.one(e).src != F.on0[a] || t.one(e).tgt != G.on0[a])
            r.add(tr.name + ": component at " + s.obj(a) + " has wrong type");
    }
    if (!r.ok()) return r;
    const bool tf = tr.dir == OplaxDirection::TargetFirst;
    try {
        for (int f = 0; f < s.n1(); ++f) {
            const auto& c = s.one(f);
            int top = t.comp1(eta[c.tgt], F.on1[f]);  // η_b ∘ Ff
            int bot = t.comp1(G.on1[f], eta[c.src]);  // Gf ∘ η_a
            int want_src = tf ? top : bot, want_tgt = tf ? bot : top;
            int n = tr.nat[f];
            if (n < 0 || n >= t.n2() || t.two(n).src != want_src || t.two(n).tgt != want_tgt)
                r.add(tr.name + ": naturality cell at " + c.id + " has wrong source/target");
        }
        if (!r.ok()) return r;
        for (int a = 0; a < s.n0(); ++a)
            if (tr.nat[s.id1(a)] != t.id2(eta[a])) r.add(tr.name + ": unit axiom fails at " + s.obj(a));
        for (const auto& e : s.comp1_table()) {
            int g = e.second, f = e.first;
            int lhs = tr.nat[e.result];
            int rhs;
            if (tf)
                rhs = t.vcomp(t.lw(G.on1[g], tr.nat[f]), t.rw(tr.nat[g], F.on1[f]));
            else
                rhs = t.vcomp(t.rw(tr.nat[g], F.on1[f]), t.lw(G.on1[g], tr.nat[f]));
            if (lhs != rhs)
                r.add(tr.name + ": composition axiom fails at (" + s.one(g).id + "," + s.one(f).id + ")");
        }
        for (int al = 0; al < s.n2(); ++al) {
            int f = s.two(al).src, g = s.two(al).tgt;
            int a = s.src0(al), b = s.tgt0(al);
            int lhs, rhs;
            if (tf) {
                lhs = t.vcomp(t.rw(G.on2[al], eta[a]), tr.nat[f]);
                rhs = t.vcomp(tr.nat[g], t.lw(eta[b], F.on2[al]));
            } else {
                lhs = t.vcomp(tr.nat[g], t.rw(G.on2[al], eta[a]));
                rhs = t.vcomp(t.lw(eta[b], F.on2[al]), tr.nat[f]);
            }
            if (lhs != rhs) r.add(tr.name + ": 2-cell compatibility fails at " + s.two(al).id);
        }
    } catch (const StructureError& e) {
        r.add(tr.name + ": " + e.what());
    }
    return r;
}

Report check_modification(const Modification& m) {
    Report r;
    r.absorb(check_natural(m.S), m.name + " source");
    r.absorb(check_natural(m.T), m.name + " target");
    if (!r.ok()) return r;
    if (compare_functors(m.S.F, m.T.F).count() || compare_functors(m.S.G, m.T.G).count()) {
        r.add(m.name + ": transformations are not parallel");
        return r;
    }
    const auto &s = *m.S.F.src, &t = *m.S.F.tgt;
    if (static_cast<int>(m.comp.size()) != s.n0()) {
        r.add(m.name + ": component count mismatch");
        return r;
    }
    for (int a = 0; a < s.n0(); ++a) {
        int c = m.comp[a];
        if (c < 0 || c >= t.n2() || t.two(c).src != m.S.comp[a] || t.two(c).tgt != m.T.comp[a])
            r.add(m.name + ": component at " + s.obj(a) + " has wrong type");
    }
    if (!r.ok()) return r;
    try {
        for (int f = 0; f < s.n1(); ++f) {
            const auto& c = s.one(f);
            int lhs = t.rw(m.comp[c.tgt], m.S.F.on1[f]);
            int rhs = t.lw(m.S.G.on1[f], m.comp[c.src]);
            if (lhs != rhs) r.add(m.name + ": modification axiom fails at " + c.id);
        }
    } catch (const StructureError& e) {
        r.add(m.name + ": " + e.what());
    }
    return r;
}

Report check_cell_map(const CellMap& m) {
    struct V {
        Report operator()(const TwoFunctor* f) const { return check_functor(*f); }
        Report operator()(const TwoNatural* t) const {
            Report r = check_functor(t->F);
            r.absorb(check_functor(t->G));
            if (r.ok()) r.absorb(check_natural(*t));
            return r;
        }
        Report operator()(const OplaxTransformation* t) const { return check_oplax(*t); }
        Report operator()(const Modification* x) const { return check_modification(*x); }
    };
    return std::visit(V{}, m);
}

Report compare_functors(const TwoFunctor& F, const TwoFunctor& G) {
    Report r;
    if (!same_cat(F.src, G.src) || !same_cat(F.tgt, G.tgt)) {
        r.add(F.name + " vs " + G.name + ": different source or target");
        return r;
    }
    const auto &s = *F.src, &gs = *G.src, &t = *F.tgt, &gt = *G.tgt;
    for (int i = 0; i < s.n0(); ++i)
        if (t.obj(F.on0[i]) != gt.obj(G.on0[gs.find0(s.obj(i))])) r.add("differ on object " + s.obj(i));
    for (int i = 0; i < s.n1(); ++i)
        if (t.one(F.on1[i]).id != gt.one(G.on1[gs.find1(s.one(i).id)]).id) r.add("differ on 1-cell " + s.one(i).id);
    for (int i = 0; i < s.n2(); ++i)
        if (t.two(F.on2[i]).id != gt.two(G.on2[gs.find2(s.two(i).id)]).id) r.add("differ on 2-cell " + s.two(i).id);
    return r;
}

Report compare_naturals(const TwoNatural& a, const TwoNatural& b) {
    Report r = compare_functors(a.F, b.F);
    r.absorb(compare_functors(a.G, b.G));
    if (!r.ok()) return r;
    const auto &s = *a.F.src, &bs = *b.F.src;
    for (int i = 0; i < s.n0(); ++i)
        if (a.F.tgt->one(a.comp[i]).id != b.F.tgt->one(b.comp[bs.find0(s.obj(i))]).id)
            r.add("components differ at " + s.obj(i));
    return r;
}

bool is_isomorphism(const TwoFunctor& F) {
    if (!check_functor(F).ok()) return false;
    auto bij = [](const std::vector<int>& m, int n) {
        if (static_cast<int>(m.size()) != n) return false;
        std::vector<char> seen(n, 0);
        for (int x : m) {
            if (seen[x]) return false;
            seen[x] = 1;
        }
        return true;
    };
    return bij(F.on0, F.tgt->n0()) && bij(F.on1, F.tgt->n1()) && bij(F.on2, F.tgt->n2());
}

TwoFunctor functor_by_ids(const std::string& name, const CatPtr& src, const CatPtr& tgt,
                          const std::function<std::string(const std::string&)>& f0,
                          const std::function<std::string(const std::string&)>& f1,
                          const std::function<std::string(const std::string&)>& f2) {
    TwoFunctor F{name, src, tgt, {}, {}, {}};
    auto need = [&](int x, const std::string& what, const std::string& id) {
        if (x < 0) throw StructureError(name + ": image " + id + " of " + what + " not in " + tgt->name());
        return x;
    };
    for (int i = 0; i < src->n0(); ++i) {
        std::string y = f0(src->obj(i));
        F.on0.push_back(need(tgt->find0(y), src->obj(i), y));
    }
    for (int i = 0; i < src->n1(); ++i) {
        std::string y = f1(src->one(i).id);
        F.on1.push_back(need(tgt->find1(y), src->one(i).id, y));
    }
    for (int i = 0; i < src->n2(); ++i) {
        std::string y = f2(src->two(i).id);
        F.on2.push_back(need(tgt->find2(y), src->two(i).id, y));
    }
    return F;
}

}  // namespace tcat
