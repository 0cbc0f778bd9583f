#include "tcat/twocat.hpp"

#include <algorithm>
#include <set>

namespace tcat {

namespace {
const std::vector<int> kEmpty;

int lookup(const std::unordered_map<std::string, int>& m, const std::string& id) {
    auto it = m.find(id);
    return it == m.end() ? -1 : it->second;
}

int lookup(const std::unordered_map<std::uint64_t, int>& m, int a, int b) {
    auto it = m.find(pair_key(a, b));
    return it == m.end() ? -1 : it->second;
}
}  // namespace

int TwoCategory::find0(const std::string& id) const { return lookup(idx0_, id); }
int TwoCategory::find1(const std::string& id) const { return lookup(idx1_, id); }
int TwoCategory::find2(const std::string& id) const { return lookup(idx2_, id); }

int TwoCategory::try_comp1(int g, int f) const { return lookup(comp1_, g, f); }
int TwoCategory::try_vcomp(int b, int a) const { return lookup(vcomp_, b, a); }
int TwoCategory::try_hcomp(int b, int a) const { return lookup(hcomp_, b, a); }

int TwoCategory::comp1(int g, int f) const {
    int r = try_comp1(g, f);
    if (r < 0)
        throw StructureError(name_ + ": composite " + ones_.at(g).id + " o " + ones_.at(f).id +
                             " undefined");
    return r;
}

int TwoCategory::vcomp(int b, int a) const {
    int r = try_vcomp(b, a);
    if (r < 0)
        throw StructureError(name_ + ": vertical composite " + twos_.at(b).id + " . " +
                             twos_.at(a).id + " undefined");
    return r;
}

int TwoCategory::hcomp(int b, int a) const {
    int r = try_hcomp(b, a);
    if (r < 0)
        throw StructureError(name_ + ": horizontal composite " + twos_.at(b).id + " o " +
                             twos_.at(a).id + " undefined");
    return r;
}

const std::vector<int>& TwoCategory::ones(int a, int b) const {
    auto it = hom1_.find(pair_key(a, b));
    return it == hom1_.end() ? kEmpty : it->second;
}

const std::vector<int>& TwoCategory::twos(int f, int g) const {
    auto it = hom2_.find(pair_key(f, g));
    return it == hom2_.end() ? kEmpty : it->second;
}

const std::vector<int>& TwoCategory::twos_between(int a, int b) const {
    auto it = between2_.find(pair_key(a, b));
    return it == between2_.end() ? kEmpty : it->second;
}

// ---------------------------------------------------------------- builder

TwoCategoryBuilder::TwoCategoryBuilder(std::string name) : name_(std::move(name)) {}

int TwoCategoryBuilder::add_object(const std::string& id) {
    if (idx0_.count(id)) throw InputError(name_ + ": duplicate object '" + id + "'");
    int i = static_cast<int>(objects_.size());
    objects_.push_back(id);
    idx0_.emplace(id, i);
    id1_.push_back(-1);
    return i;
}

int TwoCategoryBuilder::add_one(const std::string& id, int src, int tgt) {
    if (idx1_.count(id)) throw InputError(name_ + ": duplicate 1-cell '" + id + "'");
    if (src < 0 || src >= n0() || tgt < 0 || tgt >= n0())
        throw InputError(name_ + ": 1-cell '" + id + "' has unknown endpoint");
    int i = static_cast<int>(ones_.size());
    ones_.push_back({id, src, tgt});
    idx1_.emplace(id, i);
    id2_.push_back(-1);
    return i;
}

int TwoCategoryBuilder::add_two(const std::string& id, int src, int tgt) {
    if (idx2_.count(id)) throw InputError(name_ + ": duplicate 2-cell '" + id + "'");
    if (src < 0 || src >= n1() || tgt < 0 || tgt >= n1())
        throw InputError(name_ + ": 2-cell '" + id + "' has unknown endpoint");
    int i = static_cast<int>(twos_.size());
    twos_.push_back({id, src, tgt});
    idx2_.emplace(id, i);
    return i;
}

int TwoCategoryBuilder::object(const std::string& id) const {
    int r = lookup(idx0_, id);
    if (r < 0) throw InputError(name_ + ": unknown object '" + id + "'");
    return r;
}

int TwoCategoryBuilder::one(const std::string& id) const {
    int r = lookup(idx1_, id);
    if (r < 0) throw InputError(name_ + ": unknown 1-cell '" + id + "'");
    return r;
}

int TwoCategoryBuilder::two(const std::string& id) const {
    int r = lookup(idx2_, id);
    if (r < 0) throw InputError(name_ + ": unknown 2-cell '" + id + "'");
    return r;
}

void TwoCategoryBuilder::set_id1(int o, int f) { id1_.at(o) = f; }
void TwoCategoryBuilder::set_id2(int f, int a) { id2_.at(f) = a; }

void TwoCategoryBuilder::put_unit_entries() {
    for (int f = 0; f < n1(); ++f) {
        int a = ones_[f].src, b = ones_[f].tgt;
        if (id1_[a] >= 0) put_comp1(f, id1_[a], f);
        if (id1_[b] >= 0) put_comp1(id1_[b], f, f);
    }
    for (int al = 0; al < n2(); ++al) {
        int f = twos_[al].src, g = twos_[al].tgt;
        if (id2_[f] >= 0) put_vcomp(al, id2_[f], al);
        if (id2_[g] >= 0) put_vcomp(id2_[g], al, al);
        int a = ones_[f].src, b = ones_[f].tgt;
        if (id1_[a] >= 0 && id2_[id1_[a]] >= 0) put_hcomp(al, id2_[id1_[a]], al);
        if (id1_[b] >= 0 && id2_[id1_[b]] >= 0) put_hcomp(id2_[id1_[b]], al, al);
    }
}

void TwoCategoryBuilder::complete(const std::function<int(int, int)>& comp1,
                                  const std::function<int(int, int)>& vcomp,
                                  const std::function<int(int, int)>& hcomp) {
    std::vector<std::vector<int>> in1(objects_.size()), out1(objects_.size());
    for (int f = 0; f < n1(); ++f) {
        out1[ones_[f].src].push_back(f);
        in1[ones_[f].tgt].push_back(f);
    }
    std::vector<std::vector<int>> in2(ones_.size()), out2(ones_.size());
    std::vector<std::vector<int>> into(objects_.size()), outof(objects_.size());
    for (int a = 0; a < n2(); ++a) {
        out2[twos_[a].src].push_back(a);
        in2[twos_[a].tgt].push_back(a);
        const auto& f = ones_[twos_[a].src];
        outof[f.src].push_back(a);
        into[f.tgt].push_back(a);
    }
    for (int b = 0; b < n0(); ++b)
        for (int f : in1[b])
            for (int g : out1[b]) {
                int r = comp1(g, f);
                if (r >= 0) put_comp1(g, f, r);
            }
    for (int g = 0; g < n1(); ++g)
        for (int a : in2[g])
            for (int b : out2[g]) {
                int r = vcomp(b, a);
                if (r >= 0) put_vcomp(b, a, r);
            }
    for (int y = 0; y < n0(); ++y)
        for (int a : into[y])
            for (int b : outof[y]) {
                int r = hcomp(b, a);
                if (r >= 0) put_hcomp(b, a, r);
            }
}

std::shared_ptr<TwoCategory> TwoCategoryBuilder::build() {
    auto c = std::make_shared<TwoCategory>();
    c->name_ = name_;
    c->objects_ = objects_;
    c->ones_ = ones_;
    c->twos_ = twos_;
    c->id1_ = id1_;
    c->id2_ = id2_;
    c->idx0_ = idx0_;
    c->idx1_ = idx1_;
    c->idx2_ = idx2_;
    auto& bad = c->malformed_;

    for (int o = 0; o < n0(); ++o) {
        int f = id1_[o];
        if (f < 0) {
            bad.push_back("missing identity 1-cell for object '" + objects_[o] + "'");
        } else if (ones_[f].src != o || ones_[f].tgt != o) {
            bad.push_back("identity 1-cell '" + ones_[f].id + "' of '" + objects_[o] +
                          "' is not an endo-1-cell");
        }
    }
    for (int f = 0; f < n1(); ++f) {
        int a = id2_[f];
        if (a < 0) {
            bad.push_back("missing identity 2-cell for 1-cell '" + ones_[f].id + "'");
        } else if (twos_[a].src != f || twos_[a].tgt != f) {
            bad.push_back("identity 2-cell '" + twos_[a].id + "' of '" + ones_[f].id +
                          "' is not an endo-2-cell");
        }
    }

    auto one_ok = [&](int i) { return i >= 0 && i < n1(); };
    auto two_ok = [&](int i) { return i >= 0 && i < n2(); };

    for (const auto& e : raw_comp1_) {
        if (!one_ok(e.second) || !one_ok(e.first) || !one_ok(e.result)) {
            bad.push_back("hcomp1 entry with unknown cell");
            continue;
        }
        const auto &g = ones_[e.second], &f = ones_[e.first], &r = ones_[e.result];
        std::string tag = "hcomp1(" + g.id + "," + f.id + ")";
        if (f.tgt != g.src) {
            bad.push_back(tag + ": pair not composable");
            continue;
        }
        if (r.src != f.src || r.tgt != g.tgt) {
            bad.push_back(tag + " = " + r.id + ": result has wrong source/target");
            continue;
        }
        auto [it, fresh] = c->comp1_.emplace(pair_key(e.second, e.first), e.result);
        if (!fresh) {
            if (it->second != e.result) bad.push_back(tag + ": conflicting entries");
            continue;
        }
        c->t_comp1_.push_back(e);
    }
    for (const auto& e : raw_vcomp_) {
        if (!two_ok(e.second) || !two_ok(e.first) || !two_ok(e.result)) {
            bad.push_back("vcomp2 entry with unknown cell");
            continue;
        }
        const auto &b = twos_[e.second], &a = twos_[e.first], &r = twos_[e.result];
        std::string tag = "vcomp2(" + b.id + "," + a.id + ")";
        if (a.tgt != b.src) {
            bad.push_back(tag + ": pair not vertically composable");
            continue;
        }
        if (r.src != a.src || r.tgt != b.tgt) {
            bad.push_back(tag + " = " + r.id + ": result has wrong source/target");
            continue;
        }
        auto [it, fresh] = c->vcomp_.emplace(pair_key(e.second, e.first), e.result);
        if (!fresh) {
            if (it->second != e.result) bad.push_back(tag + ": conflicting entries");
            continue;
        }
        c->t_vcomp_.push_back(e);
    }
    for (const auto& e : raw_hcomp_) {
        if (!two_ok(e.second) || !two_ok(e.first) || !two_ok(e.result)) {
            bad.push_back("hcomp2 entry with unknown cell");
            continue;
        }
        const auto &b = twos_[e.second], &a = twos_[e.first], &r = twos_[e.result];
        std::string tag = "hcomp2(" + b.id + "," + a.id + ")";
        if (ones_[a.src].tgt != ones_[b.src].src) {
            bad.push_back(tag + ": pair not horizontally composable");
            continue;
        }
        int rs = lookup(c->comp1_, b.src, a.src), rt = lookup(c->comp1_, b.tgt, a.tgt);
        if (rs >= 0 && rt >= 0 && (r.src != rs || r.tgt != rt)) {
            bad.push_back(tag + " = " + r.id + ": result has wrong source/target");
            continue;
        }
        auto [it, fresh] = c->hcomp_.emplace(pair_key(e.second, e.first), e.result);
        if (!fresh) {
            if (it->second != e.result) bad.push_back(tag + ": conflicting entries");
            continue;
        }
        c->t_hcomp_.push_back(e);
    }

    c->out1_.assign(objects_.size(), {});
    c->in1_.assign(objects_.size(), {});
    for (int f = 0; f < n1(); ++f) {
        c->out1_[ones_[f].src].push_back(f);
        c->in1_[ones_[f].tgt].push_back(f);
        c->hom1_[pair_key(ones_[f].src, ones_[f].tgt)].push_back(f);
    }
    c->out2_.assign(ones_.size(), {});
    c->in2_.assign(ones_.size(), {});
    for (int a = 0; a < n2(); ++a) {
        c->out2_[twos_[a].src].push_back(a);
        c->in2_[twos_[a].tgt].push_back(a);
        c->hom2_[pair_key(twos_[a].src, twos_[a].tgt)].push_back(a);
        const auto& f = ones_[twos_[a].src];
        c->between2_[pair_key(f.src, f.tgt)].push_back(a);
    }
    return c;
}

// ---------------------------------------------------------------- validate

Report validate(const TwoCategory& c) {
    Report r;
    for (const auto& m : c.malformed()) r.add("malformed table: " + m);

    const int n0 = c.n0(), n1 = c.n1(), n2 = c.n2();
    for (int a = 0; a < n2; ++a) {
        const auto& t = c.two(a);
        const auto &f = c.one(t.src), &g = c.one(t.tgt);
        if (f.src != g.src || f.tgt != g.tgt)
            r.add("2-cell " + t.id + " between non-parallel 1-cells " + f.id + ", " + g.id);
    }
    if (!r.ok()) return r;

    auto C1 = [&](int g, int f) { return c.try_comp1(g, f); };
    auto V = [&](int b, int a) { return c.try_vcomp(b, a); };
    auto H = [&](int b, int a) { return c.try_hcomp(b, a); };
    auto nm1 = [&](int f) { return c.one(f).id; };
    auto nm2 = [&](int a) { return c.two(a).id; };

    std::vector<std::vector<int>> into(n0), outof(n0);
    for (int a = 0; a < n2; ++a) {
        outof[c.src0(a)].push_back(a);
        into[c.tgt0(a)].push_back(a);
    }

    // totality
    for (int b = 0; b < n0; ++b)
        for (int f : c.ones_in(b))
            for (int g : c.ones_out(b))
                if (C1(g, f) < 0) r.add("non-total table hcomp1: missing (" + nm1(g) + "," + nm1(f) + ")");
    for (int g = 0; g < n1; ++g)
        for (int a : c.twos_in(g))
            for (int b : c.twos_out(g))
                if (V(b, a) < 0) r.add("non-total table vcomp2: missing (" + nm2(b) + "," + nm2(a) + ")");
    for (int y = 0; y < n0; ++y)
        for (int a : into[y])
            for (int b : outof[y])
                if (H(b, a) < 0) r.add("non-total table hcomp2: missing (" + nm2(b) + "," + nm2(a) + ")");
    if (!r.ok()) return r;

    // units
    for (int f = 0; f < n1; ++f) {
        const auto& cf = c.one(f);
        if (C1(c.id1(cf.tgt), f) != f) r.add("left unit fails for 1-cell " + cf.id);
        if (C1(f, c.id1(cf.src)) != f) r.add("right unit fails for 1-cell " + cf.id);
    }
    for (int a = 0; a < n2; ++a) {
        const auto& t = c.two(a);
        if (V(c.id2(t.tgt), a) != a) r.add("vertical left unit fails for 2-cell " + t.id);
        if (V(a, c.id2(t.src)) != a) r.add("vertical right unit fails for 2-cell " + t.id);
        if (H(c.id2(c.id1(c.tgt0(a))), a) != a) r.add("horizontal left unit fails for 2-cell " + t.id);
        if (H(a, c.id2(c.id1(c.src0(a)))) != a) r.add("horizontal right unit fails for 2-cell " + t.id);
    }
    // hcomp2 preserves identities
    for (int b = 0; b < n0; ++b)
        for (int f : c.ones_in(b))
            for (int g : c.ones_out(b))
                if (H(c.id2(g), c.id2(f)) != c.id2(C1(g, f)))
                    r.add("hcomp2 does not preserve identities at (" + nm1(g) + "," + nm1(f) + ")");
    // associativity of hcomp1
    for (int f = 0; f < n1; ++f)
        for (int g : c.ones_out(c.one(f).tgt))
            for (int h : c.ones_out(c.one(g).tgt))
                if (C1(h, C1(g, f)) != C1(C1(h, g), f))
                    r.add("hcomp1 not associative on (" + nm1(h) + "," + nm1(g) + "," + nm1(f) + ")");
    // associativity of vcomp2
    for (int a = 0; a < n2; ++a)
        for (int b : c.twos_out(c.two(a).tgt))
            for (int d : c.twos_out(c.two(b).tgt))
                if (V(d, V(b, a)) != V(V(d, b), a))
                    r.add("vcomp2 not associative on (" + nm2(d) + "," + nm2(b) + "," + nm2(a) + ")");
    // associativity of hcomp2
    for (int a = 0; a < n2; ++a)
        for (int b : outof[c.tgt0(a)])
            for (int d : outof[c.tgt0(b)])
                if (H(d, H(b, a)) != H(H(d, b), a))
                    r.add("hcomp2 not associative on (" + nm2(d) + "," + nm2(b) + "," + nm2(a) + ")");
    // interchange: (β'·β)∘(α'·α) = (β'∘α')·(β∘α)
    for (int y = 0; y < n0; ++y)
        for (int a : into[y])
            for (int a2 : c.twos_out(c.two(a).tgt))
                for (int b : outof[y])
                    for (int b2 : c.twos_out(c.two(b).tgt)) {
                        int lhs = H(V(b2, b), V(a2, a));
                        int rhs = V(H(b2, a2), H(b, a));
                        if (lhs != rhs)
                            r.add("interchange fails on (" + nm2(b2) + "," + nm2(b) + "," + nm2(a2) + "," +
                                  nm2(a) + ")");
                    }
    return r;
}

Report compare_cells(const TwoCategory& a, const TwoCategory& b) {
    Report r;
    if (a.n0() != b.n0() || a.n1() != b.n1() || a.n2() != b.n2()) {
        r.add("cell counts differ: (" + std::to_string(a.n0()) + "," + std::to_string(a.n1()) + "," +
              std::to_string(a.n2()) + ") vs (" + std::to_string(b.n0()) + "," + std::to_string(b.n1()) +
              "," + std::to_string(b.n2()) + ")");
        return r;
    }
    std::vector<int> m0(a.n0()), m1(a.n1()), m2(a.n2());
    for (int i = 0; i < a.n0(); ++i) {
        m0[i] = b.find0(a.obj(i));
        if (m0[i] < 0) r.add("object " + a.obj(i) + " missing");
    }
    for (int i = 0; i < a.n1(); ++i) {
        m1[i] = b.find1(a.one(i).id);
        if (m1[i] < 0) r.add("1-cell " + a.one(i).id + " missing");
    }
    for (int i = 0; i < a.n2(); ++i) {
        m2[i] = b.find2(a.two(i).id);
        if (m2[i] < 0) r.add("2-cell " + a.two(i).id + " missing");
    }
    if (!r.ok()) return r;
    for (int i = 0; i < a.n0(); ++i)
        if (m1[a.id1(i)] != b.id1(m0[i])) r.add("identity 1-cell differs at " + a.obj(i));
    for (int i = 0; i < a.n1(); ++i) {
        const auto &x = a.one(i), &y = b.one(m1[i]);
        if (m0[x.src] != y.src || m0[x.tgt] != y.tgt) r.add("endpoints differ for 1-cell " + x.id);
        if (m2[a.id2(i)] != b.id2(m1[i])) r.add("identity 2-cell differs at " + x.id);
    }
    for (int i = 0; i < a.n2(); ++i) {
        const auto &x = a.two(i), &y = b.two(m2[i]);
        if (m1[x.src] != y.src || m1[x.tgt] != y.tgt) r.add("endpoints differ for 2-cell " + x.id);
    }
    auto cmp = [&](const std::vector<TwoCategory::Entry>& ta, auto getb, const std::vector<int>& m,
                   std::size_t nb, const char* what) {
        if (ta.size() != nb) r.add(std::string(what) + " table sizes differ");
        for (const auto& e : ta)
            if (getb(m[e.second], m[e.first]) != m[e.result]) r.add(std::string(what) + " entry differs");
    };
    cmp(a.comp1_table(), [&](int g, int f) { return b.try_comp1(g, f); }, m1, b.comp1_table().size(), "hcomp1");
    cmp(a.vcomp_table(), [&](int y, int x) { return b.try_vcomp(y, x); }, m2, b.vcomp_table().size(), "vcomp2");
    cmp(a.hcomp_table(), [&](int y, int x) { return b.try_hcomp(y, x); }, m2, b.hcomp_table().size(), "hcomp2");
    return r;
}

// ---------------------------------------------------------------- constructors

CatPtr terminal() {
    TwoCategoryBuilder b("pt");
    int o = b.add_object("pt");
    int f = b.add_one("1_pt", o, o);
    int a = b.add_two("1_1_pt", f, f);
    b.set_id1(o, f);
    b.set_id2(f, a);
    b.complete([&](int, int) { return f; }, [&](int, int) { return a; }, [&](int, int) { return a; });
    return b.build();
}

CatPtr opposite(const CatPtr& cp) {
    const TwoCategory& c = *cp;
    std::string nm = c.name();
    if (nm.size() > 3 && nm.compare(nm.size() - 3, 3, "^op") == 0)
        nm = nm.substr(0, nm.size() - 3);
    else
        nm += "^op";
    TwoCategoryBuilder b(nm);
    for (int i = 0; i < c.n0(); ++i) b.add_object(c.obj(i));
    for (int i = 0; i < c.n1(); ++i) b.add_one(c.one(i).id, c.one(i).tgt, c.one(i).src);
    for (int i = 0; i < c.n2(); ++i) b.add_two(c.two(i).id, c.two(i).src, c.two(i).tgt);
    for (int i = 0; i < c.n0(); ++i) b.set_id1(i, c.id1(i));
    for (int i = 0; i < c.n1(); ++i) b.set_id2(i, c.id2(i));
    b.complete([&](int g, int f) { return c.try_comp1(f, g); },
               [&](int y, int x) { return c.try_vcomp(y, x); },
               [&](int y, int x) { return c.try_hcomp(x, y); });
    return b.build();
}

CatPtr relabel(const CatPtr& cp, const std::function<std::string(const std::string&)>& rename,
               const std::string& name) {
    const TwoCategory& c = *cp;
    TwoCategoryBuilder b(name);
    for (int i = 0; i < c.n0(); ++i) b.add_object(rename(c.obj(i)));
    for (int i = 0; i < c.n1(); ++i) b.add_one(rename(c.one(i).id), c.one(i).src, c.one(i).tgt);
    for (int i = 0; i < c.n2(); ++i) b.add_two(rename(c.two(i).id), c.two(i).src, c.two(i).tgt);
    for (int i = 0; i < c.n0(); ++i) b.set_id1(i, c.id1(i));
    for (int i = 0; i < c.n1(); ++i) b.set_id2(i, c.id2(i));
    for (const auto& e : c.comp1_table()) b.put_comp1(e.second, e.first, e.result);
    for (const auto& e : c.vcomp_table()) b.put_vcomp(e.second, e.first, e.result);
    for (const auto& e : c.hcomp_table()) b.put_hcomp(e.second, e.first, e.result);
    return b.build();
}

CatPtr co_opposite(const CatPtr& cp) {
    const TwoCategory& c = *cp;
    std::string nm = c.name();
    if (nm.size() > 5 && nm.compare(nm.size() - 5, 5, "^coop") == 0)
        nm = nm.substr(0, nm.size() - 5);
    else
        nm += "^coop";
    TwoCategoryBuilder b(nm);
    for (int i = 0; i < c.n0(); ++i) b.add_object(c.obj(i));
    for (int i = 0; i < c.n1(); ++i) b.add_one(c.one(i).id, c.one(i).tgt, c.one(i).src);
    for (int i = 0; i < c.n2(); ++i) b.add_two(c.two(i).id, c.two(i).tgt, c.two(i).src);
    for (int i = 0; i < c.n0(); ++i) b.set_id1(i, c.id1(i));
    for (int i = 0; i < c.n1(); ++i) b.set_id2(i, c.id2(i));
    b.complete([&](int g, int f) { return c.try_comp1(f, g); },
               [&](int y, int x) { return c.try_vcomp(x, y); },
               [&](int y, int x) { return c.try_hcomp(x, y); });
    return b.build();
}

CatPtr product(const std::vector<CatPtr>& fs, const std::string& name) {
    if (fs.empty()) throw InputError("product of an empty list");
    if (fs.size() == 1) return fs.front();
    const std::size_t k = fs.size();
    std::string nm = name;
    if (nm.empty()) {
        std::vector<std::string> parts;
        for (const auto& f : fs) parts.push_back(f->name());
        nm = "x" + tuple_id(parts);
    }
    TwoCategoryBuilder b(nm);

    // mixed-radix encode/decode per dimension
    auto sizes = [&](int dim) {
        std::vector<int> s(k);
        for (std::size_t i = 0; i < k; ++i)
            s[i] = dim == 0 ? fs[i]->n0() : dim == 1 ? fs[i]->n1() : fs[i]->n2();
        return s;
    };
    const std::vector<int> s0 = sizes(0), s1 = sizes(1), s2 = sizes(2);
    auto total = [](const std::vector<int>& s) {
        long long t = 1;
        for (int v : s) t *= v;
        return t;
    };
    auto encode = [&](const std::vector<int>& s, const std::vector<int>& c) {
        long long x = 0;
        for (std::size_t i = 0; i < k; ++i) x = x * s[i] + c[i];
        return static_cast<int>(x);
    };
    auto decode = [&](const std::vector<int>& s, int x) {
        std::vector<int> c(k);
        for (std::size_t i = k; i-- > 0;) {
            c[i] = x % s[i];
            x /= s[i];
        }
        return c;
    };
    const long long t0 = total(s0), t1 = total(s1), t2 = total(s2);
    if (t0 + t1 + t2 > 50'000'000) throw StructureError("product too large");

    std::vector<std::string> ids(k);
    for (int x = 0; x < t0; ++x) {
        auto c = decode(s0, x);
        for (std::size_t i = 0; i < k; ++i) ids[i] = fs[i]->obj(c[i]);
        b.add_object(tuple_id(ids));
    }
    std::vector<int> cs(k), ct(k);
    for (int x = 0; x < t1; ++x) {
        auto c = decode(s1, x);
        for (std::size_t i = 0; i < k; ++i) {
            const auto& cell = fs[i]->one(c[i]);
            ids[i] = cell.id;
            cs[i] = cell.src;
            ct[i] = cell.tgt;
        }
        b.add_one(tuple_id(ids), encode(s0, cs), encode(s0, ct));
    }
    for (int x = 0; x < t2; ++x) {
        auto c = decode(s2, x);
        for (std::size_t i = 0; i < k; ++i) {
            const auto& cell = fs[i]->two(c[i]);
            ids[i] = cell.id;
            cs[i] = cell.src;
            ct[i] = cell.tgt;
        }
        b.add_two(tuple_id(ids), encode(s1, cs), encode(s1, ct));
    }
    for (int x = 0; x < t0; ++x) {
        auto c = decode(s0, x);
        for (std::size_t i = 0; i < k; ++i) c[i] = fs[i]->id1(c[i]);
        b.set_id1(x, encode(s1, c));
    }
    for (int x = 0; x < t1; ++x) {
        auto c = decode(s1, x);
        for (std::size_t i = 0; i < k; ++i) c[i] = fs[i]->id2(c[i]);
        b.set_id2(x, encode(s2, c));
    }
    auto lift = [&](const std::vector<int>& s, auto op) {
        return [&, op](int y, int x) {
            auto cy = decode(s, y), cx = decode(s, x);
            for (std::size_t i = 0; i < k; ++i) {
                int r = op(i, cy[i], cx[i]);
                if (r < 0) return -1;
                cy[i] = r;
            }
            return encode(s, cy);
        };
    };
    b.complete(lift(s1, [&](std::size_t i, int g, int f) { return fs[i]->try_comp1(g, f); }),
               lift(s2, [&](std::size_t i, int y, int x) { return fs[i]->try_vcomp(y, x); }),
               lift(s2, [&](std::size_t i, int y, int x) { return fs[i]->try_hcomp(y, x); }));
    return b.build();
}

CatPtr hom_category(const CatPtr& cp, int a, int bb) {
    const TwoCategory& c = *cp;
    TwoCategoryBuilder b(c.name() + "(" + c.obj(a) + "," + c.obj(bb) + ")");
    const auto& objs = c.ones(a, bb);
    std::unordered_map<int, int> o_of;  // C 1-cell -> object index
    for (int f : objs) o_of[f] = b.add_object(c.one(f).id);
    const auto& arrows = c.twos_between(a, bb);
    std::unordered_map<int, int> m_of;  // C 2-cell -> 1-cell index
    std::vector<int> back1;
    for (int al : arrows) {
        m_of[al] = b.add_one(c.two(al).id, o_of.at(c.two(al).src), o_of.at(c.two(al).tgt));
        back1.push_back(al);
    }
    for (std::size_t i = 0; i < back1.size(); ++i) {
        int e = b.add_two(ident_id(c.two(back1[i]).id), static_cast<int>(i), static_cast<int>(i));
        b.set_id2(static_cast<int>(i), e);
    }
    for (int f : objs) b.set_id1(o_of.at(f), m_of.at(c.id2(f)));
    b.complete([&](int y, int x) {
                   int r = c.try_vcomp(back1[y], back1[x]);
                   return r < 0 ? -1 : m_of.at(r);
               },
               [&](int y, int x) { return y == x ? y : -1; },
               [&](int y, int x) {
                   int r = c.try_vcomp(back1[y], back1[x]);
                   return r < 0 ? -1 : m_of.at(r);
               });
    return b.build();
}

CatPtr coproduct(const std::vector<std::pair<std::string, CatPtr>>& summands, const std::string& name) {
    TwoCategoryBuilder b(name);
    std::vector<int> off0, off1, off2;
    for (const auto& [tag, c] : summands) {
        off0.push_back(b.n0());
        off1.push_back(b.n1());
        off2.push_back(b.n2());
        int o0 = off0.back(), o1 = off1.back();
        for (int i = 0; i < c->n0(); ++i) b.add_object(pair_id(tag, c->obj(i)));
        for (int i = 0; i < c->n1(); ++i) b.add_one(pair_id(tag, c->one(i).id), o0 + c->one(i).src, o0 + c->one(i).tgt);
        for (int i = 0; i < c->n2(); ++i) b.add_two(pair_id(tag, c->two(i).id), o1 + c->two(i).src, o1 + c->two(i).tgt);
    }
    for (std::size_t s = 0; s < summands.size(); ++s) {
        const auto& c = summands[s].second;
        for (int i = 0; i < c->n0(); ++i) b.set_id1(off0[s] + i, off1[s] + c->id1(i));
        for (int i = 0; i < c->n1(); ++i) b.set_id2(off1[s] + i, off2[s] + c->id2(i));
        for (const auto& e : c->comp1_table()) b.put_comp1(off1[s] + e.second, off1[s] + e.first, off1[s] + e.result);
        for (const auto& e : c->vcomp_table()) b.put_vcomp(off2[s] + e.second, off2[s] + e.first, off2[s] + e.result);
        for (const auto& e : c->hcomp_table()) b.put_hcomp(off2[s] + e.second, off2[s] + e.first, off2[s] + e.result);
    }
    return b.build();
}

bool is_locally_discrete(const TwoCategory& c) {
    for (int a = 0; a < c.n2(); ++a)
        if (c.id2(c.two(a).src) != a) return false;
    return true;
}

}  // namespace tcat
