#include "tcat/comma.hpp"

namespace tcat {

const char* to_string(Side s) { return s == Side::Over ? "over" : "under"; }

namespace {

int need(int v, const std::string& what) {
    if (v < 0) throw StructureError("missing cell: " + what);
    return v;
}

TwoFunctor blank(const std::string& name, const CatPtr& s, const CatPtr& t) {
    TwoFunctor F{name, s, t, {}, {}, {}};
    F.on0.assign(s->n0(), -1);
    F.on1.assign(s->n1(), -1);
    F.on2.assign(s->n2(), -1);
    return F;
}

}  // namespace

// ---- Comma --------------------------------------------------------------

int Comma::object(int a, int p) const {
    const TwoCategory& C = *F.tgt;
    int x = pulled->fibre[a]->find0(C.one(p).id);
    return x < 0 ? -1 : groth->object(a, x);
}

int Comma::one(int u, int phi, int src, int tgt) const {
    const TwoCategory& A = *F.src;
    const TwoCategory& C = *F.tgt;
    if (src < 0 || tgt < 0) return -1;
    int home = side == Side::Over ? A.one(u).src : A.one(u).tgt;
    int k = pulled->fibre[home]->find1(C.two(phi).id);
    return k < 0 ? -1 : groth->one(u, k, src, tgt);
}

int Comma::two(int al, int src1, int tgt1) const { return groth->flat_two(al, src1, tgt1); }

int Comma::hom0(int o) const {
    return F.tgt->find1(pulled->fibre[base0(o)]->obj(groth->obj_fibre[o]));
}

int Comma::hom1(int i) const {
    const TwoCategory& A = *F.src;
    int u = base1(i);
    int home = side == Side::Over ? A.one(u).src : A.one(u).tgt;
    return F.tgt->find2(pulled->fibre[home]->one(groth->one_fibre[i]).id);
}

CommaPtr comma(const TwoFunctor& F, int c, Side side) {
    auto m = std::make_shared<Comma>();
    m->F = F;
    m->c = c;
    m->side = side;
    m->rep = side == Side::Over ? representable_into(F.tgt, c) : representable_from(F.tgt, c);
    m->pulled = pullback(F, m->rep);
    m->groth = grothendieck(m->pulled);
    return m;
}

// ---- fibre diagram -------------------------------------------------------

FamilyPtr comma_family(const TwoFunctor& F, Side side) {
    const TwoCategory& C = *F.tgt;
    auto fam = std::make_shared<CommaFamily>();
    fam->F = F;
    fam->side = side;
    for (int c = 0; c < C.n0(); ++c) fam->at.push_back(comma(F, c, side));
    for (int h = 0; h < C.n1(); ++h) {
        int c = C.one(h).src, c2 = C.one(h).tgt;
        if (side == Side::Over)
            fam->maps.push_back(representable_into_map(fam->at[c]->rep, fam->at[c2]->rep, h));
        else
            fam->maps.push_back(representable_from_map(fam->at[c2]->rep, fam->at[c]->rep, h));
    }
    for (int psi = 0; psi < C.n2(); ++psi) {
        const auto& s = fam->maps[C.two(psi).src];
        const auto& t = fam->maps[C.two(psi).tgt];
        fam->mods.push_back(side == Side::Over ? representable_into_mod(s, t, psi)
                                               : representable_from_mod(s, t, psi));
    }

    auto d = std::make_shared<TwoDiagram>();
    d->name = side == Side::Over ? F.name + "/-" : "-/" + F.name;
    d->base = F.tgt;
    d->var = side == Side::Over ? Variance::Covariant : Variance::Contravariant;
    for (const auto& m : fam->at) d->fibre.push_back(m->cat_ptr());
    for (int h = 0; h < C.n1(); ++h) d->on1.push_back(induced_fibre_functor(*fam, h));
    for (int psi = 0; psi < C.n2(); ++psi) d->on2.push_back(induced_fibre_transformation(*fam, psi));
    fam->diagram = d;
    fam->total = grothendieck(d);
    return fam;
}

TwoFunctor induced_fibre_functor(const CommaFamily& fam, int h) {
    const TwoCategory& C = *fam.F.tgt;
    int c = C.one(h).src, c2 = C.one(h).tgt;
    if (fam.side == Side::Under) std::swap(c, c2);
    const Comma& s = *fam.at[c];
    const Comma& t = *fam.at[c2];
    auto g = pullback(fam.F, fam.maps[h], s.pulled, t.pulled);
    auto out = grothendieck_transformation(g, *s.groth, *t.groth);
    out.name = C.one(h).id + (fam.side == Side::Over ? "_*" : "^*");
    return out;
}

TwoNatural induced_fibre_transformation(const CommaFamily& fam, int psi) {
    const TwoCategory& C = *fam.F.tgt;
    int h = C.two(psi).src;
    int c = C.one(h).src, c2 = C.one(h).tgt;
    if (fam.side == Side::Under) std::swap(c, c2);
    const Comma& s = *fam.at[c];
    const Comma& t = *fam.at[c2];
    const auto& ms = fam.mods[psi];
    auto gs = pullback(fam.F, ms.S, s.pulled, t.pulled);
    auto gt = pullback(fam.F, ms.T, s.pulled, t.pulled);
    auto out = grothendieck_modification(pullback(fam.F, ms, gs, gt), *s.groth, *t.groth);
    out.name = C.two(psi).id + (fam.side == Side::Over ? "_*" : "^*");
    out.F.name = C.one(h).id + (fam.side == Side::Over ? "_*" : "^*");
    out.G.name = C.one(C.two(psi).tgt).id + (fam.side == Side::Over ? "_*" : "^*");
    return out;
}

DiagPtr fibre_diagram(const TwoFunctor& F, Side side) { return comma_family(F, side)->diagram; }

// ---- Π, ι --------------------------------------------------------------

Projections projections(const TwoFunctor& F) {
    Projections out;
    out.fam = comma_family(F, Side::Over);
    const CommaFamily& fam = *out.fam;
    const Grothendieck& T = *fam.total;
    const TwoDiagram& Phi = *fam.diagram;
    const TwoCategory& A = *F.src;
    const TwoCategory& C = *F.tgt;
    const TwoCategory& TT = *T.total;
    auto cm = [&](int c) -> const Comma& { return *fam.at[c]; };

    for (const auto& m : fam.at) out.pi.push_back(projection(*m->groth));

    TwoFunctor Pi = blank("Pi", T.total, F.src);
    for (int o = 0; o < TT.n0(); ++o) Pi.on0[o] = cm(T.obj_base[o]).base0(T.obj_fibre[o]);
    for (int i = 0; i < TT.n1(); ++i) Pi.on1[i] = cm(C.one(T.one_base[i]).tgt).base1(T.one_fibre[i]);
    for (int j = 0; j < TT.n2(); ++j) Pi.on2[j] = cm(C.tgt0(T.two_base[j])).base2(T.two_fibre[j]);

    // ι(a) = (Fa, (a, 1_{Fa})), ι(u) = (Fu, (u, 1_{Fu})), ι(α) = (Fα, (α, 1))
    TwoFunctor iota = blank("iota", F.src, T.total);
    std::vector<int> zof(A.n0());
    for (int a = 0; a < A.n0(); ++a) {
        int c = F.on0[a];
        zof[a] = need(cm(c).object(a, C.id1(c)), "iota object");
        iota.on0[a] = T.object(c, zof[a]);
    }
    for (int u = 0; u < A.n1(); ++u) {
        int a = A.one(u).src, a2 = A.one(u).tgt;
        int h = F.on1[u];
        int zs = Phi.on1[h].on0[zof[a]];
        int w = need(cm(F.on0[a2]).one(u, C.id2(h), zs, zof[a2]), "iota 1-cell fibre");
        iota.on1[u] = need(T.one(h, w, iota.on0[a], iota.on0[a2]), "iota 1-cell");
    }
    for (int al = 0; al < A.n2(); ++al) {
        int u = A.two(al).src, u2 = A.two(al).tgt;
        int a = A.one(u).src, c2 = F.on0[A.one(u).tgt];
        int psi = F.on2[al];
        const TwoCategory& fib = *Phi.fibre[c2];
        int w = T.one_fibre[iota.on1[u]], w2 = T.one_fibre[iota.on1[u2]];
        int tw = fib.comp1(w2, Phi.on2[psi].comp[zof[a]]);
        int th = need(cm(c2).two(al, w, tw), "iota 2-cell fibre");
        iota.on2[al] = need(T.two(psi, th, iota.on1[u], iota.on1[u2]), "iota 2-cell");
    }

    // ιΠ ⇒ 1: component (p, (1_a, 1_p)), naturality (φ, 1)
    OplaxTransformation w;
    w.name = "iotaPi=>1";
    w.F = compose(iota, Pi);
    w.G = identity_functor(T.total);
    w.dir = OplaxDirection::SourceFirst;
    w.comp.resize(TT.n0());
    for (int o = 0; o < TT.n0(); ++o) {
        int c = T.obj_base[o], z = T.obj_fibre[o];
        int p = cm(c).hom0(z);
        w.comp[o] = need(T.one(p, Phi.fibre[c]->id1(z), w.F.on0[o], o), "iotaPi component");
    }
    w.nat.resize(TT.n1());
    for (int i = 0; i < TT.n1(); ++i) {
        int o = TT.one(i).src, o2 = TT.one(i).tgt;
        int c2 = C.one(T.one_base[i]).tgt;
        int src1 = TT.comp1(i, w.comp[o]);
        int tgt1 = TT.comp1(w.comp[o2], w.F.on1[i]);
        int psi = cm(c2).hom1(T.one_fibre[i]);
        int zs = T.obj_fibre[TT.one(src1).src];
        int fs = T.one_fibre[src1];
        int tw = Phi.fibre[c2]->comp1(T.one_fibre[tgt1], Phi.on2[psi].comp[zs]);
        int th = need(cm(c2).two(A.id2(cm(c2).base1(fs)), fs, tw), "iotaPi naturality fibre");
        w.nat[i] = need(T.two(psi, th, src1, tgt1), "iotaPi naturality");
    }
    out.Pi = std::move(Pi);
    out.iota = std::move(iota);
    out.witness = std::move(w);
    return out;
}

// ---- R, c̄ --------------------------------------------------------------

Retraction retraction_R(const DiagramMorphism& gamma, int c, int y) {
    Retraction r;
    const TwoDiagram& D = *gamma.D;
    const TwoCategory& C = *D.base;
    const bool over = D.covariant();
    r.side = over ? Side::Over : Side::Under;
    r.c = c;
    r.y = y;
    r.gd = grothendieck(gamma.D);
    r.ge = grothendieck(gamma.E);
    r.int_gamma = grothendieck_transformation(gamma, *r.gd, *r.ge);
    const Grothendieck& gd = *r.gd;
    const Grothendieck& ge = *r.ge;
    const TwoFunctor& G = r.int_gamma;
    const TwoCategory& GE = *ge.total;
    r.big = comma(G, need(ge.object(c, y), "object (c,y)"), r.side);
    r.small = comma(gamma.comp[c], y, r.side);
    const Comma& big = *r.big;
    const Comma& small = *r.small;
    const TwoCategory& BC = big.cat();
    const TwoCategory& SC = small.cat();
    const TwoCategory& Dc = *D.fibre[c];

    // R((a,x),(p,v)) = (p_*x, v) or (p^*x, v)
    TwoFunctor R = blank("R", big.cat_ptr(), small.cat_ptr());
    auto obj_data = [&](int o, int& p, int& x) {
        p = ge.one_base[big.hom0(o)];
        x = gd.obj_fibre[big.base0(o)];
    };
    for (int o = 0; o < BC.n0(); ++o) {
        int p, x;
        obj_data(o, p, x);
        R.on0[o] = need(small.object(D.on1[p].on0[x], ge.one_fibre[big.hom0(o)]), "R object");
    }
    // over:  (p'_*u ∘ α_*x, ψ)      under:  (α^*x' ∘ p^*u, ψ)
    for (int i = 0; i < BC.n1(); ++i) {
        int o = BC.one(i).src, o2 = BC.one(i).tgt;
        int p, x, p2, x2;
        obj_data(o, p, x);
        obj_data(o2, p2, x2);
        int u = gd.one_fibre[big.base1(i)];
        int Phi = big.hom1(i);
        int al = ge.two_base[Phi];
        int w = over ? Dc.comp1(D.on1[p2].on1[u], D.on2[al].comp[x])
                     : Dc.comp1(D.on2[al].comp[x2], D.on1[p].on1[u]);
        R.on1[i] = need(small.one(w, ge.two_fibre[Phi], R.on0[o], R.on0[o2]), "R 1-cell");
    }
    // over:  p'_*φ ∘ 1_{α_*x}      under:  1_{α'^*x'} ∘ p^*φ
    for (int j = 0; j < BC.n2(); ++j) {
        int i = BC.two(j).src, i2 = BC.two(j).tgt;
        int o = BC.one(i).src, o2 = BC.one(i).tgt;
        int p, x, p2, x2;
        obj_data(o, p, x);
        obj_data(o2, p2, x2);
        int phi = gd.two_fibre[big.base2(j)];
        int w2;
        if (over) {
            int al = ge.two_base[big.hom1(i)];
            w2 = Dc.hcomp(D.on1[p2].on2[phi], Dc.id2(D.on2[al].comp[x]));
        } else {
            int al2 = ge.two_base[big.hom1(i2)];
            w2 = Dc.hcomp(Dc.id2(D.on2[al2].comp[x2]), D.on1[p].on2[phi]);
        }
        R.on2[j] = need(small.two(w2, R.on1[i], R.on1[i2]), "R 2-cell");
    }

    // c̄(x,v) = ((c,x),(1_c,v)), c̄(u,ψ) = ((1_c,u),(1_{1_c},ψ)), c̄(φ) = (1_{1_c},φ)
    TwoFunctor cb = blank("cbar", small.cat_ptr(), big.cat_ptr());
    const int e = C.id1(c), ee = C.id2(e);
    const int cy = ge.object(c, y);
    for (int s = 0; s < SC.n0(); ++s) {
        int ob = gd.object(c, small.base0(s));
        int v = small.hom0(s);
        int P = over ? ge.one(e, v, G.on0[ob], cy) : ge.one(e, v, cy, G.on0[ob]);
        cb.on0[s] = need(big.object(ob, need(P, "cbar hom")), "cbar object");
    }
    for (int i = 0; i < SC.n1(); ++i) {
        int s = SC.one(i).src, s2 = SC.one(i).tgt;
        int U = need(gd.one(e, small.base1(i), big.base0(cb.on0[s]), big.base0(cb.on0[s2])), "cbar base");
        int P = big.hom0(cb.on0[s]), P2 = big.hom0(cb.on0[s2]);
        int psi = small.hom1(i);
        int Phi = over ? ge.two(ee, psi, P, GE.comp1(P2, G.on1[U])) : ge.two(ee, psi, GE.comp1(G.on1[U], P), P2);
        cb.on1[i] = need(big.one(U, need(Phi, "cbar hom 2-cell"), cb.on0[s], cb.on0[s2]), "cbar 1-cell");
    }
    for (int j = 0; j < SC.n2(); ++j) {
        int i = SC.two(j).src, i2 = SC.two(j).tgt;
        int B = need(gd.two(ee, small.base2(j), big.base1(cb.on1[i]), big.base1(cb.on1[i2])), "cbar base 2-cell");
        cb.on2[j] = need(big.two(B, cb.on1[i], cb.on1[i2]), "cbar 2-cell");
    }

    // over: 1 ⇒ c̄R, under: c̄R ⇒ 1; component ((p,1),(1_p,1_v)), naturality (α,1)
    OplaxTransformation w;
    TwoFunctor cR = compose(cb, R);
    w.name = over ? "1=>cbarR" : "cbarR=>1";
    w.F = over ? identity_functor(big.cat_ptr()) : cR;
    w.G = over ? cR : identity_functor(big.cat_ptr());
    w.dir = OplaxDirection::SourceFirst;
    w.comp.resize(BC.n0());
    for (int o = 0; o < BC.n0(); ++o) {
        int p, x;
        obj_data(o, p, x);
        int ob = big.base0(o), P = big.hom0(o);
        int t = cR.on0[o];
        int px = D.on1[p].on0[x];
        int Pt = big.hom0(t);
        int U, Phi;
        if (over) {
            U = need(gd.one(p, Dc.id1(px), ob, big.base0(t)), "witness base");
            Phi = ge.flat_two(C.id2(p), P, GE.comp1(Pt, G.on1[U]));
            w.comp[o] = need(big.one(U, need(Phi, "witness hom"), o, t), "witness component");
        } else {
            U = need(gd.one(p, Dc.id1(px), big.base0(t), ob), "witness base");
            Phi = ge.flat_two(C.id2(p), GE.comp1(G.on1[U], Pt), P);
            w.comp[o] = need(big.one(U, need(Phi, "witness hom"), t, o), "witness component");
        }
    }
    w.nat.resize(BC.n1());
    for (int i = 0; i < BC.n1(); ++i) {
        int o = BC.one(i).src, o2 = BC.one(i).tgt;
        int src1 = BC.comp1(w.G.on1[i], w.comp[o]);
        int tgt1 = BC.comp1(w.comp[o2], w.F.on1[i]);
        int al = ge.two_base[big.hom1(i)];
        int B = need(gd.flat_two(al, big.base1(src1), big.base1(tgt1)), "witness naturality base");
        w.nat[i] = need(big.two(B, src1, tgt1), "witness naturality");
    }
    r.R = std::move(R);
    r.cbar = std::move(cb);
    r.witness = std::move(w);
    return r;
}

// ---- j_z, i_z, π̄ ---------------------------------------------------------

Section section_jz_iz(const TwoFunctor& F, const DiagPtr& d, int c, int z) {
    Section out;
    const TwoDiagram& D = *d;
    const TwoCategory& A = *F.src;
    const TwoCategory& C = *F.tgt;
    if (D.base != F.tgt && D.base->name() != C.name()) throw InputError("section: diagram is not over the target of F");
    const bool over = !D.covariant();
    out.side = over ? Side::Over : Side::Under;
    out.gd = grothendieck(d);
    const Grothendieck& gd = *out.gd;
    out.bc = base_change(F, d, gd);
    const Grothendieck& ga = *out.bc.groth_pulled;
    const TwoFunctor& Fb = out.bc.lift;
    const TwoCategory& GD = *gd.total;
    const int cz = need(gd.object(c, z), "object (c,z)");
    out.big = comma(Fb, cz, out.side);
    out.small = comma(F, c, out.side);
    const Comma& big = *out.big;
    const Comma& small = *out.small;
    const TwoCategory& BC = big.cat();
    const TwoCategory& SC = small.cat();

    TwoFunctor pb = blank("pibar", big.cat_ptr(), small.cat_ptr());
    for (int o = 0; o < BC.n0(); ++o)
        pb.on0[o] = need(small.object(ga.obj_base[big.base0(o)], gd.one_base[big.hom0(o)]), "pibar object");
    for (int i = 0; i < BC.n1(); ++i)
        pb.on1[i] = need(small.one(ga.one_base[big.base1(i)], gd.two_base[big.hom1(i)], pb.on0[BC.one(i).src],
                                   pb.on0[BC.one(i).tgt]),
                         "pibar 1-cell");
    for (int j = 0; j < BC.n2(); ++j)
        pb.on2[j] = need(small.two(ga.two_base[big.base2(j)], pb.on1[BC.two(j).src], pb.on1[BC.two(j).tgt]),
                         "pibar 2-cell");

    // j_z(a,p) = (a, p^*z), j_z(f,φ) = (f, φ^*z), j_z(α) = (α, 1)
    TwoFunctor jz = blank("j_z", small.cat_ptr(), ga.total);
    for (int s = 0; s < SC.n0(); ++s)
        jz.on0[s] = need(ga.object(small.base0(s), D.on1[small.hom0(s)].on0[z]), "j_z object");
    for (int i = 0; i < SC.n1(); ++i)
        jz.on1[i] = need(ga.one(small.base1(i), D.on2[small.hom1(i)].comp[z], jz.on0[SC.one(i).src],
                                jz.on0[SC.one(i).tgt]),
                         "j_z 1-cell");
    for (int j = 0; j < SC.n2(); ++j)
        jz.on2[j] = need(ga.flat_two(small.base2(j), jz.on1[SC.two(j).src], jz.on1[SC.two(j).tgt]), "j_z 2-cell");

    // i_z(a,p) = ((a,p^*z),(p,1)), i_z(f,φ) = ((f,φ^*z),(φ,1)), i_z(α) = (α,1)
    TwoFunctor iz = blank("i_z", small.cat_ptr(), big.cat_ptr());
    for (int s = 0; s < SC.n0(); ++s) {
        int ob = jz.on0[s];
        int p = small.hom0(s);
        int x = ga.obj_fibre[ob];
        int idx = D.fibre[F.on0[small.base0(s)]]->id1(x);
        int P = over ? gd.one(p, idx, Fb.on0[ob], cz) : gd.one(p, idx, cz, Fb.on0[ob]);
        iz.on0[s] = need(big.object(ob, need(P, "i_z hom")), "i_z object");
    }
    for (int i = 0; i < SC.n1(); ++i) {
        int s = SC.one(i).src, s2 = SC.one(i).tgt;
        int U = jz.on1[i];
        int P = big.hom0(iz.on0[s]), P2 = big.hom0(iz.on0[s2]);
        int phi = small.hom1(i);
        int Phi = over ? gd.flat_two(phi, P, GD.comp1(P2, Fb.on1[U])) : gd.flat_two(phi, GD.comp1(Fb.on1[U], P), P2);
        iz.on1[i] = need(big.one(U, need(Phi, "i_z hom 2-cell"), iz.on0[s], iz.on0[s2]), "i_z 1-cell");
    }
    for (int j = 0; j < SC.n2(); ++j)
        iz.on2[j] = need(big.two(jz.on2[j], iz.on1[SC.two(j).src], iz.on1[SC.two(j).tgt]), "i_z 2-cell");

    // over: 1 ⇒ i_zπ̄, under: i_zπ̄ ⇒ 1; component ((1_a,v),(1_p,1_v)), naturality (1_f,β)
    OplaxTransformation w;
    TwoFunctor ip = compose(iz, pb);
    w.name = over ? "1=>i_zpibar" : "i_zpibar=>1";
    w.F = over ? identity_functor(big.cat_ptr()) : ip;
    w.G = over ? ip : identity_functor(big.cat_ptr());
    w.dir = OplaxDirection::SourceFirst;
    w.comp.resize(BC.n0());
    for (int o = 0; o < BC.n0(); ++o) {
        int ob = big.base0(o), P = big.hom0(o);
        int a = ga.obj_base[ob];
        int p = gd.one_base[P], v = gd.one_fibre[P];
        int t = ip.on0[o];
        int Pt = big.hom0(t);
        if (over) {
            int U = need(ga.one(A.id1(a), v, ob, big.base0(t)), "witness base");
            int Phi = need(gd.flat_two(C.id2(p), P, GD.comp1(Pt, Fb.on1[U])), "witness hom");
            w.comp[o] = need(big.one(U, Phi, o, t), "witness component");
        } else {
            int U = need(ga.one(A.id1(a), v, big.base0(t), ob), "witness base");
            int Phi = need(gd.flat_two(C.id2(p), GD.comp1(Fb.on1[U], Pt), P), "witness hom");
            w.comp[o] = need(big.one(U, Phi, t, o), "witness component");
        }
    }
    w.nat.resize(BC.n1());
    for (int i = 0; i < BC.n1(); ++i) {
        int o = BC.one(i).src, o2 = BC.one(i).tgt;
        int src1 = BC.comp1(w.G.on1[i], w.comp[o]);
        int tgt1 = BC.comp1(w.comp[o2], w.F.on1[i]);
        int f = ga.one_base[big.base1(i)];
        int beta = gd.two_fibre[big.hom1(i)];
        int B = need(ga.two(A.id2(f), beta, big.base1(src1), big.base1(tgt1)), "witness naturality base");
        w.nat[i] = need(big.two(B, src1, tgt1), "witness naturality");
    }
    out.jz = std::move(jz);
    out.iz = std::move(iz);
    out.pibar = std::move(pb);
    out.witness = std::move(w);
    return out;
}

// ---- base change of commas ---------------------------------------------------

TwoFunctor comma_base_change(const Comma& from, const Comma& to, const TwoFunctor& T, const TwoFunctor& F) {
    const TwoCategory& S = from.cat();
    TwoFunctor out = blank("Fbar", from.cat_ptr(), to.cat_ptr());
    for (int o = 0; o < S.n0(); ++o)
        out.on0[o] = need(to.object(F.on0[from.base0(o)], T.on1[from.hom0(o)]), "Fbar object");
    for (int i = 0; i < S.n1(); ++i)
        out.on1[i] = need(to.one(F.on1[from.base1(i)], T.on2[from.hom1(i)], out.on0[S.one(i).src],
                                 out.on0[S.one(i).tgt]),
                          "Fbar 1-cell");
    for (int j = 0; j < S.n2(); ++j)
        out.on2[j] = need(to.two(F.on2[from.base2(j)], out.on1[S.two(j).src], out.on1[S.two(j).tgt]), "Fbar 2-cell");
    return out;
}

TwoFunctor comma_base_change(const TwoFunctor& G, const TwoFunctor& H, const TwoFunctor& T, const TwoFunctor& F,
                             int d, Side side) {
    auto same = [](const CatPtr& x, const CatPtr& y) { return x == y || x->name() == y->name(); };
    if (!same(G.src, F.src) || !same(G.tgt, T.src) || !same(F.tgt, H.src) || !same(T.tgt, H.tgt))
        throw InputError("comma_base_change: functors do not form a square");
    Report sq = compare_functors(compose(T, G), compose(H, F));
    if (!sq.ok()) throw InputError("comma_base_change: square does not commute: " + sq.summary());
    auto from = comma(G, d, side);
    auto to = comma(H, T.on0[d], side);
    return comma_base_change(*from, *to, T, F);
}

// ---- checks ----------------------------------------------------------------

namespace {

void expect(Report& r, const Report& sub, const std::string& what) { r.absorb(sub, what); }

}  // namespace

Report check_projections(const Projections& p) {
    Report r;
    expect(r, check_functor(p.Pi), "Pi");
    expect(r, check_functor(p.iota), "iota");
    if (!r.ok()) return r;
    expect(r, compare_functors(compose(p.Pi, p.iota), identity_functor(p.Pi.tgt)), "Pi.iota = 1");
    expect(r, check_oplax(p.witness), "iotaPi=>1");
    for (std::size_t c = 0; c < p.pi.size(); ++c)
        expect(r, compare_functors(compose(p.Pi, fibre_embedding(*p.fam->total, static_cast<int>(c))), p.pi[c]),
               "Pi on fibre " + std::to_string(c));
    return r;
}

Report check_retraction(const Retraction& x) {
    Report r;
    expect(r, check_functor(x.int_gamma), "int Gamma");
    expect(r, check_functor(x.R), "R");
    expect(r, check_functor(x.cbar), "cbar");
    if (!r.ok()) return r;
    expect(r, compare_functors(compose(x.R, x.cbar), identity_functor(x.small->cat_ptr())), "R.cbar = 1");
    expect(r, check_oplax(x.witness), x.witness.name);
    // π c̄ = c̄ π
    expect(r, compare_functors(compose(projection(*x.big->groth), x.cbar),
                               compose(fibre_embedding(*x.gd, x.c), projection(*x.small->groth))),
           "pi.cbar = cbar.pi");
    return r;
}

Report check_section(const Section& s) {
    Report r;
    expect(r, check_functor(s.pibar), "pibar");
    expect(r, check_functor(s.iz), "i_z");
    expect(r, check_functor(s.jz), "j_z");
    if (!r.ok()) return r;
    expect(r, compare_functors(compose(s.pibar, s.iz), identity_functor(s.small->cat_ptr())), "pibar.i_z = 1");
    expect(r, check_oplax(s.witness), s.witness.name);
    const Grothendieck& ga = *s.bc.groth_pulled;
    auto pbig = projection(*s.big->groth);
    auto psmall = projection(*s.small->groth);
    expect(r, compare_functors(s.jz, compose(pbig, s.iz)), "j_z = pi.i_z");
    expect(r, compare_functors(compose(projection(ga), s.jz), psmall), "pi.j_z = pi");
    expect(r, compare_functors(compose(psmall, s.pibar), compose(projection(ga), pbig)), "pi.pibar = pi.pi");
    return r;
}

}  // namespace tcat
