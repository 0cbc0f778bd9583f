#pragma once

// In-code copies of the bundled corpus, used as fixtures independent of the
// JSON reader.

#include "tcat/diagram.hpp"

namespace corpus {

using namespace tcat;

inline CatPtr make_cat(const std::string& name, const std::vector<std::string>& objs,
                       const std::vector<std::tuple<std::string, std::string, std::string>>& ones,
                       const std::vector<std::tuple<std::string, std::string, std::string>>& twos) {
    TwoCategoryBuilder b(name);
    for (const auto& o : objs) b.add_object(o);
    for (const auto& o : objs) b.set_id1(b.object(o), b.add_one("1_" + o, b.object(o), b.object(o)));
    for (const auto& [id, s, t] : ones) b.add_one(id, b.object(s), b.object(t));
    for (int f = 0; f < b.n1(); ++f) b.set_id2(f, b.add_two("1_" + b.one_cell(f).id, f, f));
    for (const auto& [id, s, t] : twos) b.add_two(id, b.one(s), b.one(t));
    b.put_unit_entries();
    return b.build();
}

inline CatPtr PT() { return make_cat("PT", {"*"}, {}, {}); }
inline CatPtr WA() { return make_cat("WA", {"0", "1"}, {{"e", "0", "1"}}, {}); }
inline CatPtr WTC() { return make_cat("WTC", {"a", "b"}, {{"f", "a", "b"}, {"g", "a", "b"}}, {{"phi", "f", "g"}}); }

// WA → WTC, e ↦ f.
inline TwoFunctor F(const CatPtr& wa, const CatPtr& wtc) {
    auto obj = [](const std::string& s) { return s == "0" ? std::string("a") : std::string("b"); };
    return functor_by_ids(
        "F", wa, wtc, obj,
        [&](const std::string& s) { return s == "e" ? std::string("f") : "1_" + obj(s.substr(2)); },
        [&](const std::string& s) {
            std::string one = s.substr(2);
            return "1_" + (one == "e" ? std::string("f") : "1_" + obj(one.substr(2)));
        });
}

// Covariant diagram over WA with D_0 = WTC, D_1 = WA; e_* collapses f, g to e.
inline DiagPtr fibre_diagram(const CatPtr& wa, const CatPtr& wtc) {
    auto d = std::make_shared<TwoDiagram>();
    d->name = "Dfib";
    d->base = wa;
    d->var = Variance::Covariant;
    d->fibre = {wtc, wa};
    auto push = [&](const std::string& f) {
        const int i = wa->find1(f);
        const int s = wa->one(i).src;
        const int t = wa->one(i).tgt;
        if (s == t) {
            d->on1.push_back(identity_functor(d->fibre[s]));
            return;
        }
        auto obj = [](const std::string& o) { return o == "a" ? std::string("0") : std::string("1"); };
        auto one = [&](const std::string& u) { return (u == "f" || u == "g") ? std::string("e") : "1_" + obj(u.substr(2)); };
        d->on1.push_back(functor_by_ids("e_*", wtc, wa, obj, one, [&](const std::string& a) {
            if (a == "phi") return std::string("1_e");
            return "1_" + one(a.substr(2));
        }));
    };
    for (int f = 0; f < wa->n1(); ++f) push(wa->one(f).id);
    for (int a = 0; a < wa->n2(); ++a) d->on2.push_back(identity_natural(d->on1[wa->two(a).src]));
    return d;
}

struct Fixture {
    CatPtr pt = PT(), wa = WA(), wtc = WTC();
    TwoFunctor f = F(wa, wtc);
    DiagPtr dfib = fibre_diagram(wa, wtc);
    DiagPtr rep = representable_into(wtc, wtc->find0("b"));
};

}  // namespace corpus
