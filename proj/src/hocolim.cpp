#include "tcat/hocolim.hpp"

#include <algorithm>

namespace tcat {

const HomTable::Hom& HomTable::get(int a, int b) const {
    auto it = cache_.find({a, b});
    if (it != cache_.end()) return it->second;
    Hom h;
    h.cat = hom_category(c_, a, b);
    h.ones = c_->ones(a, b);
    h.twos = c_->twos_between(a, b);
    for (int i = 0; i < static_cast<int>(h.ones.size()); ++i) h.obj_of[h.ones[i]] = i;
    for (int j = 0; j < static_cast<int>(h.twos.size()); ++j) h.arrow_of[h.twos[j]] = j;
    return cache_.emplace(std::make_pair(a, b), std::move(h)).first->second;
}

namespace {

int cells(const TwoCategory& c, int dim) { return dim == 0 ? c.n0() : dim == 1 ? c.n1() : c.n2(); }

// hom index -> cell of C and back; 2-cells of a hom are identities indexed like its 1-cells
int hom_to_c(const HomTable::Hom& h, int dim, int i) { return dim == 0 ? h.ones[i] : h.twos[i]; }
int c_to_hom(const HomTable::Hom& h, int dim, int cell) {
    const auto& m = dim == 0 ? h.obj_of : h.arrow_of;
    auto it = m.find(cell);
    if (it == m.end()) throw StructureError("cell outside its hom 2-category");
    return it->second;
}

}  // namespace

HocolimLevel::Cell HocolimLevel::decode(int dim, int idx) const {
    const auto& off = offset[dim];
    int s = static_cast<int>(std::upper_bound(off.begin(), off.end(), idx) - off.begin()) - 1;
    Cell c;
    c.summand = s;
    int local = idx - off[s];
    const auto& fs = factors[s];
    c.comp.resize(fs.size());
    for (std::size_t k = fs.size(); k-- > 0;) {
        int n = cells(*fs[k], dim);
        c.comp[k] = local % n;
        local /= n;
    }
    return c;
}

int HocolimLevel::encode(int dim, int s, const std::vector<int>& comp) const {
    const auto& fs = factors[s];
    long long x = 0;
    for (std::size_t k = 0; k < fs.size(); ++k) x = x * cells(*fs[k], dim) + comp[k];
    return offset[dim][s] + static_cast<int>(x);
}

namespace {

HocolimLevel build_level(const TwoDiagram& d, const HomTable& ht, int p) {
    const TwoCategory& c = ht.base();
    HocolimLevel lv;
    lv.p = p;
    lv.covariant = d.covariant();
    std::vector<std::pair<std::string, CatPtr>> summands;
    std::array<int, 3> acc{0, 0, 0};
    Key chain(p + 1, 0);
    while (true) {
        std::vector<CatPtr> fs;
        bool empty = false;
        if (lv.covariant) fs.push_back(d.fibre[chain[0]]);
        for (int k = 1; k <= p; ++k) fs.push_back(ht.get(chain[k - 1], chain[k]).cat);
        if (!lv.covariant) fs.push_back(d.fibre[chain[p]]);
        for (const auto& f : fs) empty = empty || f->n0() == 0;
        if (!empty) {
            std::vector<std::string> names;
            for (int o : chain) names.push_back(c.obj(o));
            std::string tag = tuple_id(names);
            auto cat = product(fs, tag);
            lv.summand_of[chain] = static_cast<int>(lv.chains.size());
            lv.chains.push_back(chain);
            lv.factors.push_back(fs);
            for (int dim = 0; dim < 3; ++dim) {
                lv.offset[dim].push_back(acc[dim]);
                acc[dim] += cells(*cat, dim);
            }
            summands.emplace_back(tag, cat);
        }
        int k = p;
        while (k >= 0 && chain[k] == c.n0() - 1) chain[k--] = 0;
        if (k < 0) break;
        ++chain[k];
    }
    lv.cat = coproduct(summands, "hocolim " + d.name + " " + std::to_string(p));
    return lv;
}

using CellFn = std::function<std::pair<Key, std::vector<int>>(int dim, const Key& chain, const std::vector<int>& comp)>;

TwoFunctor level_functor(const std::string& name, const HocolimLevel& from, const HocolimLevel& to, const CellFn& fn) {
    TwoFunctor F;
    F.name = name;
    F.src = from.cat;
    F.tgt = to.cat;
    std::vector<int>* out[3] = {&F.on0, &F.on1, &F.on2};
    for (int dim = 0; dim < 3; ++dim) {
        const int n = cells(*from.cat, dim);
        out[dim]->resize(n);
        for (int i = 0; i < n; ++i) {
            auto cell = from.decode(dim, i);
            auto [chain, comp] = fn(dim, from.chains[cell.summand], cell.comp);
            auto it = to.summand_of.find(chain);
            if (it == to.summand_of.end()) throw StructureError(name + ": image lands in an empty summand");
            (*out[dim])[i] = to.encode(dim, it->second, comp);
        }
    }
    return F;
}

// f_* (resp. f^*) applied to a cell x of dimension dim, followed by the
// whiskering with α_* (α^*) the hom component forces.
int act_on_fibre(const TwoDiagram& d, int dim, int hom_cell, int x) {
    const TwoCategory& c = *d.base;
    if (dim == 0) return d.on1[hom_cell].on0[x];
    const int al = hom_cell;
    const int g = c.two(al).tgt;
    const int a = d.covariant() ? c.one(g).src : c.one(g).tgt;
    const int b = d.covariant() ? c.one(g).tgt : c.one(g).src;
    const TwoCategory& from = *d.fibre[a];
    const TwoCategory& to = *d.fibre[b];
    if (dim == 1) {
        int src = from.one(x).src;
        return to.comp1(d.on1[g].on1[x], d.on2[al].comp[src]);
    }
    int src = from.src0(x);
    return to.hcomp(d.on1[g].on2[x], to.id2(d.on2[al].comp[src]));
}

TwoFunctor hocolim_face(const TwoDiagram& d, const HomTable& ht, const HocolimLevel& from, const HocolimLevel& to, int i) {
    const TwoCategory& c = ht.base();
    const int p = from.p;
    const bool cov = d.covariant();
    auto compose_homs = [&](int dim, const Key& ch, int a_pos, int ha, int hb) {
        // hom ha : ch[a_pos] → ch[a_pos+1], hb : ch[a_pos+1] → ch[a_pos+2]
        const auto& A = ht.get(ch[a_pos], ch[a_pos + 1]);
        const auto& B = ht.get(ch[a_pos + 1], ch[a_pos + 2]);
        const auto& AB = ht.get(ch[a_pos], ch[a_pos + 2]);
        int x = hom_to_c(A, dim, ha), y = hom_to_c(B, dim, hb);
        int r = dim == 0 ? c.comp1(y, x) : c.hcomp(y, x);
        return c_to_hom(AB, dim, r);
    };
    CellFn fn = [&, i, p, cov](int dim, const Key& ch, const std::vector<int>& comp) {
        Key nch;
        for (int k = 0; k <= p; ++k)
            if (k != i) nch.push_back(ch[k]);
        std::vector<int> nc;
        if (cov) {
            // comp = [x, h_1..h_p], h_k : ch[k-1] → ch[k]
            if (i == 0) {
                const auto& H = ht.get(ch[0], ch[1]);
                nc.push_back(act_on_fibre(d, dim, hom_to_c(H, dim, comp[1]), comp[0]));
                nc.insert(nc.end(), comp.begin() + 2, comp.end());
            } else if (i == p) {
                nc.assign(comp.begin(), comp.end() - 1);
            } else {
                nc.assign(comp.begin(), comp.begin() + i);
                nc.push_back(compose_homs(dim, ch, i - 1, comp[i], comp[i + 1]));
                nc.insert(nc.end(), comp.begin() + i + 2, comp.end());
            }
        } else {
            // comp = [h_0..h_{p-1}, y], h_k : ch[k] → ch[k+1]
            if (i == 0) {
                nc.assign(comp.begin() + 1, comp.end());
            } else if (i == p) {
                const auto& H = ht.get(ch[p - 1], ch[p]);
                nc.assign(comp.begin(), comp.begin() + p - 1);
                nc.push_back(act_on_fibre(d, dim, hom_to_c(H, dim, comp[p - 1]), comp[p]));
            } else {
                nc.assign(comp.begin(), comp.begin() + i - 1);
                nc.push_back(compose_homs(dim, ch, i - 1, comp[i - 1], comp[i]));
                nc.insert(nc.end(), comp.begin() + i + 1, comp.end());
            }
        }
        return std::make_pair(nch, nc);
    };
    return level_functor("d" + std::to_string(i), from, to, fn);
}

TwoFunctor hocolim_degen(const TwoDiagram& d, const HomTable& ht, const HocolimLevel& from, const HocolimLevel& to, int i) {
    const TwoCategory& c = ht.base();
    const bool cov = d.covariant();
    CellFn fn = [&, i, cov](int dim, const Key& ch, const std::vector<int>& comp) {
        Key nch(ch.begin(), ch.end());
        nch.insert(nch.begin() + i + 1, ch[i]);
        const auto& H = ht.get(ch[i], ch[i]);
        const int e = c.id1(ch[i]);
        const int unit = dim == 0 ? c_to_hom(H, 0, e) : c_to_hom(H, 1, c.id2(e));
        std::vector<int> nc(comp.begin(), comp.end());
        nc.insert(nc.begin() + (cov ? i + 1 : i), unit);
        return std::make_pair(nch, nc);
    };
    return level_functor("s" + std::to_string(i), from, to, fn);
}

}  // namespace

HocolimPtr hocolim(const DiagPtr& dp, int n) {
    const TwoDiagram& d = *dp;
    auto h = std::make_shared<Hocolim>();
    h->diagram = dp;
    h->homs = std::make_shared<HomTable>(d.base);
    for (int p = 0; p <= n; ++p) h->levels.push_back(build_level(d, *h->homs, p));
    auto& s = h->s;
    s.name = "hocolim " + d.name;
    s.bound = n;
    for (int p = 0; p <= n; ++p) s.level.push_back(h->levels[p].cat);
    s.face.resize(n + 1);
    s.degen.resize(n + 1);
    for (int p = 1; p <= n; ++p)
        for (int i = 0; i <= p; ++i) s.face[p].push_back(hocolim_face(d, *h->homs, h->levels[p], h->levels[p - 1], i));
    for (int p = 0; p < n; ++p)
        for (int i = 0; i <= p; ++i) s.degen[p].push_back(hocolim_degen(d, *h->homs, h->levels[p], h->levels[p + 1], i));
    return h;
}

std::vector<TwoFunctor> hocolim_map(const DiagramMorphism& gm, const Hocolim& src, const Hocolim& tgt) {
    std::vector<TwoFunctor> out;
    for (std::size_t p = 0; p < src.levels.size() && p < tgt.levels.size(); ++p) {
        const auto& from = src.levels[p];
        const int k = from.fibre_factor();
        CellFn fn = [&, k](int dim, const Key& ch, const std::vector<int>& comp) {
            std::vector<int> nc = comp;
            nc[k] = gm.comp[ch[k == 0 ? 0 : ch.size() - 1]](dim, comp[k]);
            return std::make_pair(ch, nc);
        };
        out.push_back(level_functor(gm.name + "_* " + std::to_string(p), from, tgt.levels[p], fn));
    }
    return out;
}

std::vector<TwoNatural> hocolim_modification(const DiagramModification& m, const Hocolim& src, const Hocolim& tgt) {
    auto S = hocolim_map(m.S, src, tgt);
    auto T = hocolim_map(m.T, src, tgt);
    const TwoCategory& c = *src.diagram->base;
    std::vector<TwoNatural> out;
    for (std::size_t p = 0; p < S.size(); ++p) {
        const auto& from = src.levels[p];
        const auto& to = tgt.levels[p];
        TwoNatural t;
        t.name = m.name + "_* " + std::to_string(p);
        t.F = S[p];
        t.G = T[p];
        const int k = from.fibre_factor();
        t.comp.resize(from.cat->n0());
        for (int o = 0; o < from.cat->n0(); ++o) {
            auto cell = from.decode(0, o);
            const Key& ch = from.chains[cell.summand];
            std::vector<int> nc(cell.comp.size());
            for (std::size_t j = 0; j < nc.size(); ++j) {
                if (static_cast<int>(j) == k) {
                    nc[j] = m.comp[ch[k == 0 ? 0 : ch.size() - 1]].comp[cell.comp[j]];
                } else {
                    const int a = from.covariant ? ch[j - 1] : ch[j];
                    const int b = from.covariant ? ch[j] : ch[j + 1];
                    const auto& H = src.homs->get(a, b);
                    nc[j] = c_to_hom(H, 1, c.id2(hom_to_c(H, 0, cell.comp[j])));
                }
            }
            t.comp[o] = to.encode(1, to.summand_of.at(ch), nc);
        }
        out.push_back(std::move(t));
    }
    return out;
}

Report check_hocolim_map(const std::vector<TwoFunctor>& f, const Hocolim& src, const Hocolim& tgt) {
    Report r;
    const int n = static_cast<int>(f.size()) - 1;
    for (int p = 0; p <= n; ++p) r.absorb(check_functor(f[p]), f[p].name);
    if (!r.ok()) return r;
    for (int p = 1; p <= n; ++p)
        for (int i = 0; i <= p; ++i)
            if (!compare_functors(compose(tgt.s.face[p][i], f[p]), compose(f[p - 1], src.s.face[p][i])).ok())
                r.add("level map does not commute with d" + std::to_string(i) + " at level " + std::to_string(p));
    for (int p = 0; p < n; ++p)
        for (int i = 0; i <= p; ++i)
            if (!compare_functors(compose(tgt.s.degen[p][i], f[p]), compose(f[p + 1], src.s.degen[p][i])).ok())
                r.add("level map does not commute with s" + std::to_string(i) + " at level " + std::to_string(p));
    return r;
}

Report check_hocolim_modification(const std::vector<TwoNatural>& m, const Hocolim& src, const Hocolim& tgt) {
    Report r;
    const int n = static_cast<int>(m.size()) - 1;
    for (int p = 0; p <= n; ++p) r.absorb(check_natural(m[p]), m[p].name);
    if (!r.ok()) return r;
    auto commute = [&](const TwoFunctor& ts, const TwoFunctor& ss, int p, int q, const std::string& what) {
        for (int o = 0; o < src.levels[p].cat->n0(); ++o)
            if (ts.on1[m[p].comp[o]] != m[q].comp[ss.on0[o]]) {
                r.add("components do not commute with " + what + " at level " + std::to_string(p));
                return;
            }
    };
    for (int p = 1; p <= n; ++p)
        for (int i = 0; i <= p; ++i) commute(tgt.s.face[p][i], src.s.face[p][i], p, p - 1, "d" + std::to_string(i));
    for (int p = 0; p < n; ++p)
        for (int i = 0; i <= p; ++i) commute(tgt.s.degen[p][i], src.s.degen[p][i], p, p + 1, "s" + std::to_string(i));
    return r;
}

SSetPtr diag_nn(const SimplicialTwoCategory& s, int n) { return diag<3>(*nerve_simplicial_twocat(s, n)); }

SimplicialMap diag_nn_family_map(const std::string& name, const std::vector<TwoFunctor>& family, const SSetPtr& src,
                                 const SSetPtr& tgt) {
    SimplicialMap m{name, src, tgt, {}};
    for (const auto& [ix, l] : src->levels) {
        const int n = ix[0];
        if (static_cast<int>(m.map.size()) <= n) m.map.resize(n + 1);
        auto& row = m.map[n];
        row.assign(l.size(), -1);
        if (!tgt->has(ix) || n >= static_cast<int>(family.size())) continue;
        for (int s = 0; s < l.size(); ++s) {
            row[s] = tgt->find(ix, map_nn_key(family[n], l.keys[s], n, n));
            if (row[s] < 0) throw StructureError(name + ": image not found at level " + std::to_string(n));
        }
    }
    return m;
}

TwoFunctor constant_level_comparison(const Hocolim& h, int p, const SimplicialSet& nerve) {
    const TwoCategory& c = h.homs->base();
    const auto& lv = h.levels[p];
    const auto& keys = nerve.level({p}).keys;
    TwoCategoryBuilder b("N_" + std::to_string(p) + " " + c.name());
    for (const auto& k : keys) {
        std::vector<std::string> parts{c.obj(k[0])};
        for (std::size_t j = 1; j < k.size(); ++j) parts.push_back(c.one(k[j]).id);
        b.add_object(tuple_id(parts));
    }
    for (int i = 0; i < b.n0(); ++i) b.set_id1(i, b.add_one(ident_id(std::to_string(i)), i, i));
    for (int i = 0; i < b.n1(); ++i) b.set_id2(i, b.add_two(ident_id(ident_id(std::to_string(i))), i, i));
    b.put_unit_entries();
    CatPtr disc = b.build();
    const CatPtr fibre = h.diagram->fibre.at(0);
    for (const auto& f : h.diagram->fibre)
        if (f != fibre) throw InputError("constant_level_comparison needs a constant diagram");
    TwoFunctor F;
    F.name = "comparison " + std::to_string(p);
    F.src = product({fibre, disc});
    F.tgt = lv.cat;
    const int nd = disc->n0();
    std::vector<int>* out[3] = {&F.on0, &F.on1, &F.on2};
    for (int dim = 0; dim < 3; ++dim) {
        const int n = cells(*F.src, dim);
        out[dim]->resize(n);
        for (int idx = 0; idx < n; ++idx) {
            const int w = idx / nd, sigma = idx % nd;
            const Key& k = keys[sigma];
            Key chain{k[0]};
            for (std::size_t j = 1; j < k.size(); ++j) chain.push_back(c.one(k[j]).tgt);
            std::vector<int> comp;
            if (lv.covariant) comp.push_back(w);
            for (int j = 1; j <= p; ++j) {
                const auto& H = h.homs->get(chain[j - 1], chain[j]);
                comp.push_back(dim == 0 ? c_to_hom(H, 0, k[j]) : c_to_hom(H, 1, c.id2(k[j])));
            }
            if (!lv.covariant) comp.push_back(w);
            (*out[dim])[idx] = lv.encode(dim, lv.summand_of.at(chain), comp);
        }
    }
    return F;
}

std::shared_ptr<TrisimplicialSet> build_E(const DiagPtr& dp, int N) {
    const TwoDiagram& d = *dp;
    if (!d.covariant()) throw InputError(d.name + ": E is built for covariant diagrams");
    const TwoCategory& c = *d.base;
    auto nnc = double_nerve(d.base, N);
    std::vector<HomChains> hd;
    for (const auto& f : d.fibre) hd.emplace_back(f);

    struct Parts {
        Key nn;
        std::vector<int> xs;
        std::vector<Key> cols;
    };
    auto split = [](const Key& k, int p, int nv, int q) {
        Parts s;
        const int L = nn_length(p, q);
        s.nn.assign(k.begin(), k.begin() + L);
        s.xs.assign(k.begin() + L, k.begin() + L + p + 1);
        for (int m = 1; m <= p; ++m) {
            auto b = k.begin() + e_column(p, nv, q, m);
            s.cols.emplace_back(b, b + 2 * nv + 1);
        }
        return s;
    };
    auto join = [](const Parts& s) {
        Key k = s.nn;
        k.insert(k.end(), s.xs.begin(), s.xs.end());
        for (const auto& col : s.cols) k.insert(k.end(), col.begin(), col.end());
        return k;
    };

    MultiSpec<3> spec;
    spec.name = "E " + d.name;
    spec.bound = N;
    for (const auto& ix : box_window<3>(N))
        if (ix[0] + std::max(ix[1], ix[2]) <= N) spec.window.push_back(ix);
    spec.enumerate = [&](const std::array<int, 3>& ix) {
        const int p = ix[0], nv = ix[1], q = ix[2];
        std::vector<Key> out;
        for (const Key& K : nnc->level({p, q}).keys) {
            Parts s;
            s.nn = K;
            s.xs.resize(p + 1);
            s.cols.resize(p);
            std::function<void(int)> rec = [&](int m) {
                if (m > p) {
                    out.push_back(join(s));
                    return;
                }
                const int cm = K[m];
                const int f = K[nn_column(p, q, m) + q];
                const int from = d.on1[f].on0[s.xs[m - 1]];
                for (int x = 0; x < d.fibre[cm]->n0(); ++x) {
                    s.xs[m] = x;
                    for (const Key& ch : hd[cm].get(from, x, nv)) {
                        s.cols[m - 1] = ch;
                        rec(m + 1);
                    }
                }
            };
            for (int x = 0; x < d.fibre[K[0]]->n0(); ++x) {
                s.xs[0] = x;
                rec(1);
            }
        }
        return out;
    };
    spec.face = [&](int dir, int i, const std::array<int, 3>& ix, const Key& k) {
        const int p = ix[0], nv = ix[1], q = ix[2];
        Parts s = split(k, p, nv, q);
        Parts r;
        if (dir == 0) {
            r.nn = nn_structure(c, false, 0, i, p, q, s.nn);
            r.xs = s.xs;
            r.xs.erase(r.xs.begin() + i);
            r.cols = s.cols;
            if (i == 0) {
                r.cols.erase(r.cols.begin());
            } else if (i == p) {
                r.cols.pop_back();
            } else {
                const int f = s.nn[nn_column(p, q, i + 1) + q];
                const TwoCategory& dc = *d.fibre[s.nn[i + 1]];
                const Key& a = s.cols[i - 1];
                const Key& b = s.cols[i];
                Key merged;
                for (int t = 0; t <= nv; ++t) merged.push_back(dc.comp1(b[t], d.on1[f].on1[a[t]]));
                for (int t = 1; t <= nv; ++t) merged.push_back(dc.hcomp(b[nv + t], d.on1[f].on2[a[nv + t]]));
                r.cols.erase(r.cols.begin() + i - 1, r.cols.begin() + i + 1);
                r.cols.insert(r.cols.begin() + i - 1, merged);
            }
        } else if (dir == 1) {
            r.nn = s.nn;
            r.xs = s.xs;
            for (int m = 1; m <= p; ++m) r.cols.push_back(column_face(*d.fibre[s.nn[m]], s.cols[m - 1], nv, i));
        } else {
            r.nn = nn_structure(c, false, 1, i, p, q, s.nn);
            r.xs = s.xs;
            r.cols = s.cols;
            if (i == q) {
                for (int m = 1; m <= p; ++m) {
                    const TwoCategory& dc = *d.fibre[s.nn[m]];
                    const int al = s.nn[nn_column(p, q, m) + 2 * q];
                    const int w = d.on2[al].comp[s.xs[m - 1]];
                    Key& col = r.cols[m - 1];
                    for (int t = 0; t <= nv; ++t) col[t] = dc.comp1(col[t], w);
                    for (int t = 1; t <= nv; ++t) col[nv + t] = dc.rw(col[nv + t], w);
                }
            }
        }
        return join(r);
    };
    spec.degen = [&](int dir, int i, const std::array<int, 3>& ix, const Key& k) {
        const int p = ix[0], nv = ix[1], q = ix[2];
        Parts s = split(k, p, nv, q);
        Parts r;
        if (dir == 0) {
            r.nn = nn_structure(c, true, 0, i, p, q, s.nn);
            r.xs = s.xs;
            r.xs.insert(r.xs.begin() + i + 1, s.xs[i]);
            const TwoCategory& dc = *d.fibre[s.nn[i]];
            const int one = dc.id1(s.xs[i]);
            Key col(nv + 1, one);
            col.insert(col.end(), nv, dc.id2(one));
            r.cols = s.cols;
            r.cols.insert(r.cols.begin() + i, col);
        } else if (dir == 1) {
            r.nn = s.nn;
            r.xs = s.xs;
            for (int m = 1; m <= p; ++m) r.cols.push_back(column_degen(*d.fibre[s.nn[m]], s.cols[m - 1], nv, i));
        } else {
            r.nn = nn_structure(c, true, 1, i, p, q, s.nn);
            r.xs = s.xs;
            r.cols = s.cols;
        }
        return join(r);
    };
    return build_multi<3>(spec);
}

std::shared_ptr<BisimplicialSet> wnn_simplicial_twocat(const SimplicialTwoCategory& s, int n) {
    const int pmax = std::min(n, s.bound);
    std::vector<SSetPtr> w;
    for (int p = 0; p <= pmax; ++p) w.push_back(wbar_double_nerve(s.level[p], n - p));
    MultiSpec<2> spec;
    spec.name = "Wnn " + s.name;
    spec.bound = n;
    for (int p = 0; p <= pmax; ++p)
        for (int m = 0; p + m <= n; ++m) spec.window.push_back({p, m});
    spec.enumerate = [&](const std::array<int, 2>& ix) { return w[ix[0]]->level({ix[1]}).keys; };
    auto op = [&](bool deg, int d, int i, const std::array<int, 2>& ix, const Key& k) {
        const int p = ix[0], m = ix[1];
        if (d == 0) return map_wnn_key(deg ? s.degen[p][i] : s.face[p][i], k, m);
        const auto& x = *w[p];
        int idx = x.find({m}, k);
        int j = deg ? x.degen(0, i, {m}, idx) : x.face(0, i, {m}, idx);
        return x.key({deg ? m + 1 : m - 1}, j);
    };
    spec.face = [&](int d, int i, const std::array<int, 2>& ix, const Key& k) { return op(false, d, i, ix, k); };
    spec.degen = [&](int d, int i, const std::array<int, 2>& ix, const Key& k) { return op(true, d, i, ix, k); };
    return build_multi<2>(spec);
}

namespace {

// Looks each source key up in the target through a shared intermediate key.
SimplicialMap match_keys(const std::string& name, const SSetPtr& src, const SSetPtr& tgt,
                         const std::function<Key(int, int)>& src_key, const std::function<Key(int, int)>& tgt_key,
                         Report& r) {
    SimplicialMap f{name, src, tgt, {}};
    for (const auto& [ix, l] : src->levels) {
        const int n = ix[0];
        if (static_cast<int>(f.map.size()) <= n) f.map.resize(n + 1);
        std::unordered_map<Key, int, KeyHash> table;
        if (tgt->has(ix))
            for (int s = 0; s < tgt->size(ix); ++s)
                if (!table.emplace(tgt_key(n, s), s).second)
                    r.add(name + ": two target simplices share a description at level " + std::to_string(n));
        auto& row = f.map[n];
        row.assign(l.size(), -1);
        for (int s = 0; s < l.size(); ++s) {
            auto it = table.find(src_key(n, s));
            if (it == table.end()) {
                r.add(name + ": no target for simplex " + std::to_string(s) + " at level " + std::to_string(n));
                continue;
            }
            row[s] = it->second;
        }
    }
    return f;
}

}  // namespace

IsoResult iso_112(const DiagPtr& dp, int N) {
    const TwoDiagram& d = *dp;
    if (!d.covariant()) throw InputError(d.name + ": use the dual diagram for the contravariant case");
    auto E = build_E(dp, N);
    auto DI = diag_inner(*E, N);
    SSetPtr L = wbar(*DI, N);
    auto H = hocolim(dp, N);
    auto B = wnn_simplicial_twocat(H->s, N);
    SSetPtr R = wbar(*B, N);

    // Common description: [c_0..c_n, f/α columns, x_0..x_n, u/φ columns].
    auto lkey = [&](int n, int s) {
        const Key& t = L->key({n}, s);
        auto e = [&](int j) -> const Key& { return DI->key({n - j, j}, t[j]); };
        Key cs, fs, xs, us;
        for (int m = 0; m <= n; ++m) {
            cs.push_back(e(m)[0]);
            xs.push_back(e(m)[e_object(n - m, m, 0)]);
        }
        for (int m = 1; m <= n; ++m) {
            const Key& k = e(m - 1);
            const int P = n - m + 1;
            auto b = k.begin() + nn_column(P, m - 1, 1);
            fs.insert(fs.end(), b, b + 2 * m - 1);
            auto u = k.begin() + e_column(P, m - 1, m - 1, 1);
            us.insert(us.end(), u, u + 2 * m - 1);
        }
        Key out = cs;
        out.insert(out.end(), fs.begin(), fs.end());
        out.insert(out.end(), xs.begin(), xs.end());
        out.insert(out.end(), us.begin(), us.end());
        return out;
    };
    auto rkey = [&](int n, int s) {
        const Key& t = R->key({n}, s);
        auto w = [&](int j) -> const Key& { return B->key({n - j, j}, t[j]); };
        Key cs, fs, xs, us;
        for (int m = 0; m <= n; ++m) {
            const auto& lv = H->levels[n - m];
            const Key& k = w(m);
            auto last = lv.decode(0, k[m]);
            cs.push_back(lv.chains[last.summand][0]);
            xs.push_back(last.comp[0]);
        }
        for (int m = 1; m <= n; ++m) {
            const auto& lv = H->levels[n - m];
            const Key& k = w(m);
            const int off = wnn_column(m, m);
            for (int t2 = 0; t2 < m; ++t2) us.push_back(lv.decode(1, k[off + t2]).comp[0]);
            for (int t2 = 1; t2 < m; ++t2) us.push_back(lv.decode(2, k[off + m - 1 + t2]).comp[0]);
            const auto& pv = H->levels[n - m + 1];
            const Key& kp = w(m - 1);
            auto o0 = pv.decode(0, kp[0]);
            const Key& ch = pv.chains[o0.summand];
            const auto& hom = H->homs->get(ch[0], ch[1]);
            for (int t2 = 0; t2 < m; ++t2) fs.push_back(hom_to_c(hom, 0, pv.decode(0, kp[t2]).comp[1]));
            for (int t2 = 1; t2 < m; ++t2)
                fs.push_back(hom_to_c(hom, 1, pv.decode(1, kp[wnn_column(m - 1, t2)]).comp[1]));
        }
        Key out = cs;
        out.insert(out.end(), fs.begin(), fs.end());
        out.insert(out.end(), xs.begin(), xs.end());
        out.insert(out.end(), us.begin(), us.end());
        return out;
    };
    IsoResult res;
    res.map = match_keys("iso112 " + d.name, L, R, lkey, rkey, res.report);
    return res;
}

IsoResult iso_114(const DiagPtr& dp, int N) {
    const TwoDiagram& d = *dp;
    if (!d.covariant()) throw InputError(d.name + ": use the dual diagram for the contravariant case");
    auto E = build_E(dp, N);
    auto WI = wbar_inner(*E, N);
    SSetPtr L = wbar(*WI, N);
    auto g = grothendieck(dp);
    SSetPtr R = wbar_double_nerve(g->total, N);
    IsoResult res;
    res.map = SimplicialMap{"iso114 " + d.name, L, R, {}};
    for (const auto& [ix, l] : L->levels) {
        const int n = ix[0];
        if (static_cast<int>(res.map.map.size()) <= n) res.map.map.resize(n + 1);
        auto& row = res.map.map[n];
        row.assign(l.size(), -1);
        for (int s = 0; s < l.size(); ++s) {
            const Key& T = l.keys[s];
            // component k of the outer component j, an element of E_{n-j, j-k, k}
            auto e = [&](int j, int k) -> const Key& {
                const Key& inner = WI->key({n - j, j}, T[j]);
                return E->key({n - j, j - k, k}, inner[k]);
            };
            Key key;
            std::vector<int> obj(n + 1);
            for (int m = 0; m <= n; ++m) {
                const Key& em = e(m, m);
                obj[m] = g->object(em[0], em[e_object(n - m, m, 0)]);
                key.push_back(obj[m]);
            }
            bool ok = true;
            for (int m = 1; m <= n && ok; ++m) {
                const int P = n - m + 1;
                const Key& base = e(m - 1, m - 1);
                const int col = nn_column(P, m - 1, 1);
                std::vector<int> ones(m);
                for (int k = 0; k < m; ++k) {
                    const Key& ek = e(m - 1, k);
                    int u = ek[e_column(P, m - 1 - k, k, 1)];
                    ones[k] = g->one(base[col + k], u, obj[m - 1], obj[m]);
                    if (ones[k] < 0) ok = false;
                    key.push_back(ones[k]);
                }
                for (int k = 1; k < m && ok; ++k) {
                    const Key& ek = e(m - 1, k - 1);
                    int phi = ek[e_column(P, m - k, k - 1, 1) + (m - k) + 1];
                    int two = g->two(base[col + m - 1 + k], phi, ones[k - 1], ones[k]);
                    if (two < 0) ok = false;
                    key.push_back(two);
                }
            }
            if (!ok) {
                res.report.add(res.map.name + ": simplex " + std::to_string(s) + " at level " + std::to_string(n) +
                               " does not describe cells of the Grothendieck construction");
                continue;
            }
            row[s] = R->find(ix, key);
            if (row[s] < 0)
                res.report.add(res.map.name + ": no target for simplex " + std::to_string(s) + " at level " +
                               std::to_string(n));
        }
    }
    return res;
}

DiagPtr dual_diagram(const DiagPtr& dp) {
    const TwoDiagram& d = *dp;
    if (d.covariant()) throw InputError(d.name + ": dual_diagram expects a contravariant diagram");
    auto r = std::make_shared<TwoDiagram>();
    r->name = d.name + "^v";
    r->base = co_opposite(d.base);
    r->var = Variance::Covariant;
    std::map<const TwoCategory*, CatPtr> seen;
    for (const auto& f : d.fibre) {
        auto it = seen.find(f.get());
        if (it == seen.end()) it = seen.emplace(f.get(), co_opposite(f)).first;
        r->fibre.push_back(it->second);
    }
    const TwoCategory& c = *d.base;
    for (int f = 0; f < c.n1(); ++f) {
        TwoFunctor g = d.on1[f];
        g.src = r->fibre[c.one(f).tgt];
        g.tgt = r->fibre[c.one(f).src];
        r->on1.push_back(std::move(g));
    }
    for (int a = 0; a < c.n2(); ++a) {
        TwoNatural t;
        t.name = d.on2[a].name;
        t.F = r->on1[c.two(a).tgt];
        t.G = r->on1[c.two(a).src];
        t.comp = d.on2[a].comp;
        r->on2.push_back(std::move(t));
    }
    return r;
}

Report check_dual_grothendieck(const DiagPtr& d, const DiagPtr& dual) {
    Report r;
    auto gd = grothendieck(d);
    auto gv = grothendieck(dual);
    TwoFunctor F;
    F.name = "dual comparison";
    F.src = gv->total;
    F.tgt = co_opposite(gd->total);
    const TwoCategory& V = *gv->total;
    for (int o = 0; o < V.n0(); ++o) F.on0.push_back(gd->object(gv->obj_base[o], gv->obj_fibre[o]));
    for (int i = 0; i < V.n1(); ++i)
        F.on1.push_back(gd->one(gv->one_base[i], gv->one_fibre[i], F.on0[V.one(i).tgt], F.on0[V.one(i).src]));
    for (int i = 0; i < V.n2(); ++i)
        F.on2.push_back(gd->two(gv->two_base[i], gv->two_fibre[i], F.on1[V.two(i).tgt], F.on1[V.two(i).src]));
    for (const auto* v : {&F.on0, &F.on1, &F.on2})
        for (int x : *v)
            if (x < 0) {
                r.add("a cell of the dual Grothendieck construction has no counterpart");
                return r;
            }
    if (!is_isomorphism(F)) r.add("dual Grothendieck construction is not the co-opposite by identifiers");
    return r;
}

Report check_dual_hocolim(const Hocolim& h, const Hocolim& dual) {
    Report r;
    const int n = std::min(h.s.bound, dual.s.bound);
    std::vector<TwoFunctor> R;
    for (int p = 0; p <= n; ++p) {
        const auto& from = dual.levels[p];
        const auto& to = h.levels[p];
        TwoFunctor F;
        F.name = "reversal " + std::to_string(p);
        F.src = from.cat;
        F.tgt = co_opposite(to.cat);
        std::vector<int>* out[3] = {&F.on0, &F.on1, &F.on2};
        bool ok = true;
        for (int dim = 0; dim < 3 && ok; ++dim) {
            const int cnt = cells(*from.cat, dim);
            for (int i = 0; i < cnt; ++i) {
                auto cell = from.decode(dim, i);
                const Key& ch = from.chains[cell.summand];
                Key rch(ch.rbegin(), ch.rend());
                std::vector<int> comp(p + 1);
                comp[p] = cell.comp[0];
                for (int j = 1; j <= p; ++j) {
                    const auto& Hd = dual.homs->get(ch[j - 1], ch[j]);
                    const auto& Hh = h.homs->get(ch[j], ch[j - 1]);
                    comp[p - j] = c_to_hom(Hh, dim, hom_to_c(Hd, dim, cell.comp[j]));
                }
                auto it = to.summand_of.find(rch);
                if (it == to.summand_of.end()) {
                    r.add("level " + std::to_string(p) + ": reversed string missing");
                    ok = false;
                    break;
                }
                out[dim]->push_back(to.encode(dim, it->second, comp));
            }
        }
        if (!ok) return r;
        if (!is_isomorphism(F)) r.add("level " + std::to_string(p) + " is not the co-opposite after reversal");
        R.push_back(std::move(F));
    }
    if (!r.ok()) return r;
    auto same = [&](const TwoFunctor& a1, const TwoFunctor& a2, const TwoFunctor& b1, const TwoFunctor& b2) {
        // a2 ∘ a1 == b2 ∘ b1 on indices
        for (int dim = 0; dim < 3; ++dim) {
            const int cnt = cells(*a1.src, dim);
            for (int i = 0; i < cnt; ++i)
                if (a2(dim, a1(dim, i)) != b2(dim, b1(dim, i))) return false;
        }
        return true;
    };
    for (int p = 1; p <= n; ++p)
        for (int i = 0; i <= p; ++i)
            if (!same(dual.s.face[p][i], R[p - 1], R[p], h.s.face[p][p - i]))
                r.add("d" + std::to_string(i) + " of the dual does not match d" + std::to_string(p - i) + " at level " +
                      std::to_string(p));
    for (int p = 0; p < n; ++p)
        for (int i = 0; i <= p; ++i)
            if (!same(dual.s.degen[p][i], R[p + 1], R[p], h.s.degen[p][p - i]))
                r.add("s" + std::to_string(i) + " of the dual does not match s" + std::to_string(p - i) + " at level " +
                      std::to_string(p));
    return r;
}

}  // namespace tcat
