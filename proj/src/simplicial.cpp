#include "tcat/simplicial.hpp"

#include <atomic>
#include <sstream>

namespace tcat {

namespace {

std::atomic<std::size_t> g_budget{20'000'000};

template <int K>
std::string show(const std::array<int, K>& ix) {
    std::ostringstream o;
    o << '(';
    for (int d = 0; d < K; ++d) o << (d ? "," : "") << ix[d];
    o << ')';
    return o.str();
}

}  // namespace

void set_simplex_budget(std::size_t n) { g_budget = n; }
std::size_t simplex_budget() { return g_budget; }

template <int K>
const typename MultiSimplicial<K>::Level& MultiSimplicial<K>::level(const Index& ix) const {
    auto it = levels.find(ix);
    if (it == levels.end()) throw StructureError(name + ": level " + show<K>(ix) + " outside the window");
    return it->second;
}

template <int K>
typename MultiSimplicial<K>::Level& MultiSimplicial<K>::level_mut(const Index& ix) {
    auto it = levels.find(ix);
    if (it == levels.end()) throw StructureError(name + ": level " + show<K>(ix) + " outside the window");
    return it->second;
}

template <int K>
std::shared_ptr<MultiSimplicial<K>> build_multi(const MultiSpec<K>& spec) {
    using Index = std::array<int, K>;
    auto x = std::make_shared<MultiSimplicial<K>>();
    x->name = spec.name;
    x->bound = spec.bound;
    std::size_t total = 0;
    const std::size_t budget = simplex_budget();
    for (const auto& ix : spec.window) {
        auto& l = x->levels[ix];
        l.keys = spec.enumerate(ix);
        l.index.reserve(l.keys.size());
        for (int s = 0; s < l.size(); ++s)
            if (!l.index.emplace(l.keys[s], s).second)
                throw StructureError(spec.name + ": duplicate simplex at level " + show<K>(ix));
        total += l.keys.size();
        if (total > budget)
            throw BudgetExceeded(spec.name + ": more than " + std::to_string(budget) +
                                 " simplices; raise the budget or lower the truncation");
    }
    for (auto& [ix, l] : x->levels) {
        for (int d = 0; d < K; ++d) {
            const int n = ix[d];
            const int sz = l.size();
            for (int deg = 0; deg < 2; ++deg) {
                auto& tab = deg ? l.degen[d] : l.face[d];
                const int count = deg ? n + 1 : (n > 0 ? n + 1 : 0);
                tab.assign(count, std::vector<int>(sz, -1));
                Index t = ix;
                t[d] += deg ? 1 : -1;
                auto it = x->levels.find(t);
                if (count == 0 || it == x->levels.end()) continue;
                const auto& tl = it->second;
                for (int i = 0; i < count; ++i)
                    for (int s = 0; s < sz; ++s) {
                        Key k = deg ? spec.degen(d, i, ix, l.keys[s]) : spec.face(d, i, ix, l.keys[s]);
                        int r = tl.find(k);
                        if (r < 0)
                            throw StructureError(spec.name + ": " + (deg ? "s" : "d") + std::to_string(i) +
                                                 " in direction " + std::to_string(d) + " sends a simplex at " +
                                                 show<K>(ix) + " outside " + show<K>(t));
                        tab[i][s] = r;
                    }
            }
        }
    }
    return x;
}

template <int K>
std::vector<std::array<int, K>> box_window(int n) {
    std::vector<std::array<int, K>> w;
    std::array<int, K> ix{};
    while (true) {
        w.push_back(ix);
        int d = K - 1;
        while (d >= 0 && ix[d] == n) ix[d--] = 0;
        if (d < 0) break;
        ++ix[d];
    }
    return w;
}

template <int K>
std::vector<std::array<int, K>> sum_window(int n) {
    std::vector<std::array<int, K>> w;
    for (const auto& ix : box_window<K>(n)) {
        int s = 0;
        for (int v : ix) s += v;
        if (s <= n) w.push_back(ix);
    }
    return w;
}

// ---------------------------------------------------------------- identities

template <int K>
Report check_simplicial_identities(const MultiSimplicial<K>& x) {
    using Index = std::array<int, K>;
    Report r;
    constexpr int kSkip = -2;
    struct Op {
        bool deg;
        int d, i;
    };
    // Applies ops right to left (as written in the identity); kSkip when a level is missing.
    auto run = [&](std::initializer_list<Op> ops, Index at, int s, const std::string& what) -> int {
        std::vector<Op> v(ops);
        for (auto it = v.rbegin(); it != v.rend(); ++it) {
            Index t = at;
            t[it->d] += it->deg ? 1 : -1;
            if (t[it->d] < 0 || !x.has(t)) return kSkip;
            const auto& l = x.level(at);
            const auto& tab = it->deg ? l.degen[it->d] : l.face[it->d];
            if (it->i >= static_cast<int>(tab.size())) return kSkip;
            int v2 = tab[it->i][s];
            if (v2 < 0 || v2 >= x.size(t)) {
                r.add(x.name + ": " + (it->deg ? "s" : "d") + std::to_string(it->i) + " in direction " +
                      std::to_string(it->d) + " out of range at " + show<K>(at) + " simplex " +
                      std::to_string(s) + " (while checking " + what + ")");
                return kSkip;
            }
            s = v2;
            at = t;
        }
        return s;
    };
    auto same = [&](std::initializer_list<Op> lhs, std::initializer_list<Op> rhs, const Index& ix, int s,
                    const std::string& what) {
        int a = run(lhs, ix, s, what);
        if (a == kSkip) return;
        int b = run(rhs, ix, s, what);
        if (b == kSkip) return;
        if (a != b) r.add(x.name + ": " + what + " fails at " + show<K>(ix) + " simplex " + std::to_string(s));
    };
    auto nm = [](const char* pat, int d, int i, int j) {
        return std::string(pat) + " dir " + std::to_string(d) + " i=" + std::to_string(i) + " j=" + std::to_string(j);
    };

    for (const auto& [ix, l] : x.levels) {
        for (int s = 0; s < l.size(); ++s) {
            for (int d = 0; d < K; ++d) {
                const int n = ix[d];
                for (int j = 1; j <= n; ++j)
                    for (int i = 0; i < j; ++i)
                        same({{false, d, i}, {false, d, j}}, {{false, d, j - 1}, {false, d, i}}, ix, s,
                             nm("d_i d_j = d_{j-1} d_i", d, i, j));
                for (int j = 0; j <= n; ++j)
                    for (int i = 0; i <= j; ++i)
                        same({{true, d, i}, {true, d, j}}, {{true, d, j + 1}, {true, d, i}}, ix, s,
                             nm("s_i s_j = s_{j+1} s_i", d, i, j));
                for (int j = 0; j <= n; ++j)
                    for (int i = 0; i <= n + 1; ++i) {
                        std::string what = nm("d_i s_j", d, i, j);
                        if (i < j)
                            same({{false, d, i}, {true, d, j}}, {{true, d, j - 1}, {false, d, i}}, ix, s, what);
                        else if (i == j || i == j + 1)
                            same({{false, d, i}, {true, d, j}}, {}, ix, s, what);
                        else
                            same({{false, d, i}, {true, d, j}}, {{true, d, j}, {false, d, i - 1}}, ix, s, what);
                    }
            }
            for (int d = 0; d < K; ++d)
                for (int e = d + 1; e < K; ++e)
                    for (int dd = 0; dd < 2; ++dd)
                        for (int de = 0; de < 2; ++de) {
                            const int nd = ix[d] + (dd ? 1 : 0), ne = ix[e] + (de ? 1 : 0);
                            for (int i = 0; i < nd; ++i)
                                for (int j = 0; j < ne; ++j)
                                    same({{dd != 0, d, i}, {de != 0, e, j}}, {{de != 0, e, j}, {dd != 0, d, i}}, ix,
                                         s,
                                         std::string("directions ") + std::to_string(d) + "/" + std::to_string(e) +
                                             " commute (" + (dd ? "s" : "d") + std::to_string(i) + "," +
                                             (de ? "s" : "d") + std::to_string(j) + ")");
                        }
        }
    }
    return r;
}

// ---------------------------------------------------------------- diagonal

template <int K>
std::shared_ptr<SimplicialSet> diag(const MultiSimplicial<K>& x) {
    auto out = std::make_shared<SimplicialSet>();
    out->name = "Diag " + x.name;
    auto full = [](int n) {
        std::array<int, K> a;
        a.fill(n);
        return a;
    };
    int top = -1;
    while (x.has(full(top + 1))) ++top;
    if (top < 0) throw StructureError(x.name + ": diagonal needs level 0");
    out->bound = top;
    for (int n = 0; n <= top; ++n) {
        auto& l = out->levels[{n}];
        const auto& src = x.level(full(n));
        l.keys = src.keys;
        l.index = src.index;
    }
    for (int n = 0; n <= top; ++n) {
        auto& l = out->levels[{n}];
        const int sz = l.size();
        for (int deg = 0; deg < 2; ++deg) {
            auto& tab = deg ? l.degen[0] : l.face[0];
            const int count = deg ? (n < top ? n + 1 : 0) : (n > 0 ? n + 1 : 0);
            const int count_alloc = deg ? n + 1 : (n > 0 ? n + 1 : 0);
            tab.assign(count_alloc, std::vector<int>(sz, -1));
            for (int i = 0; i < count; ++i)
                for (int s = 0; s < sz; ++s) {
                    auto at = full(n);
                    int v = s;
                    for (int d = 0; d < K && v >= 0; ++d) {
                        auto t = at;
                        t[d] += deg ? 1 : -1;
                        if (!x.has(t)) throw StructureError(x.name + ": insufficient window for the diagonal");
                        v = deg ? x.degen(d, i, at, v) : x.face(d, i, at, v);
                        at = t;
                    }
                    tab[i][s] = v;
                }
        }
    }
    return out;
}

// ---------------------------------------------------------------- W̄

namespace {

// A bisimplicial slice seen through accessors: (a,b) horizontal/vertical.
struct BiView {
    std::function<bool(int, int)> has;
    std::function<int(int, int)> size;
    // op(deg, dir, i, a, b, s)
    std::function<int(bool, int, int, int, int, int)> op;
};

std::vector<Key> wbar_enumerate(const BiView& v, int m) {
    for (int q = 0; q <= m; ++q)
        if (!v.has(m - q, q)) throw StructureError("W-bar: insufficient band at level " + std::to_string(m));
    std::vector<Key> out;
    // groups[q][value of last vertical face] for components t_q, q >= 1
    std::vector<std::unordered_map<int, std::vector<int>>> groups(m + 1);
    for (int q = 1; q <= m; ++q) {
        int a = m - q, n = v.size(a, q);
        for (int s = 0; s < n; ++s) groups[q][v.op(false, 1, q, a, q, s)].push_back(s);
    }
    Key cur(m + 1);
    std::function<void(int)> rec = [&](int q) {
        if (q == m) {
            out.push_back(cur);
            return;
        }
        int h0 = v.op(false, 0, 0, m - q, q, cur[q]);
        auto it = groups[q + 1].find(h0);
        if (it == groups[q + 1].end()) return;
        for (int s : it->second) {
            cur[q + 1] = s;
            rec(q + 1);
        }
    };
    for (int s = 0, n = v.size(m, 0); s < n; ++s) {
        cur[0] = s;
        rec(0);
    }
    return out;
}

Key wbar_face(const BiView& v, int i, int m, const Key& t) {
    Key r;
    r.reserve(m);
    for (int q = 0; q <= m; ++q) {
        int val;
        if (q < i)
            val = v.op(false, 0, i - q, m - q, q, t[q]);
        else if (q == i)
            continue;
        else
            val = v.op(false, 1, i, m - q, q, t[q]);
        if (val < 0) throw StructureError("W-bar: face leaves the band");
        r.push_back(val);
    }
    return r;
}

Key wbar_degen(const BiView& v, int i, int m, const Key& t) {
    Key r;
    r.reserve(m + 2);
    for (int q = 0; q <= m; ++q) {
        int val;
        if (q < i) {
            val = v.op(true, 0, i - q, m - q, q, t[q]);
        } else if (q == i) {
            int h = v.op(true, 0, 0, m - q, q, t[q]);
            if (h < 0) throw StructureError("W-bar: degeneracy leaves the band");
            r.push_back(h);
            val = v.op(true, 1, i, m - q, q, t[q]);
        } else {
            val = v.op(true, 1, i, m - q, q, t[q]);
        }
        if (val < 0) throw StructureError("W-bar: degeneracy leaves the band");
        r.push_back(val);
    }
    return r;
}

BiView view_of(const BisimplicialSet& b) {
    BiView v;
    v.has = [&b](int p, int q) { return b.has({p, q}); };
    v.size = [&b](int p, int q) { return b.size({p, q}); };
    v.op = [&b](bool deg, int d, int i, int p, int q, int s) {
        return deg ? b.degen(d, i, {p, q}, s) : b.face(d, i, {p, q}, s);
    };
    return v;
}

BiView view_of(const TrisimplicialSet& x, int p) {
    BiView v;
    v.has = [&x, p](int a, int b) { return x.has({p, a, b}); };
    v.size = [&x, p](int a, int b) { return x.size({p, a, b}); };
    v.op = [&x, p](bool deg, int d, int i, int a, int b, int s) {
        return deg ? x.degen(d + 1, i, {p, a, b}, s) : x.face(d + 1, i, {p, a, b}, s);
    };
    return v;
}

}  // namespace

std::shared_ptr<SimplicialSet> wbar(const BisimplicialSet& b, int n) {
    BiView v = view_of(b);
    MultiSpec<1> spec;
    spec.name = "Wbar " + b.name;
    spec.bound = n;
    for (int m = 0; m <= n; ++m) spec.window.push_back({m});
    spec.enumerate = [&](const std::array<int, 1>& ix) { return wbar_enumerate(v, ix[0]); };
    spec.face = [&](int, int i, const std::array<int, 1>& ix, const Key& k) { return wbar_face(v, i, ix[0], k); };
    spec.degen = [&](int, int i, const std::array<int, 1>& ix, const Key& k) { return wbar_degen(v, i, ix[0], k); };
    return build_multi<1>(spec);
}

std::shared_ptr<BisimplicialSet> wbar_inner(const TrisimplicialSet& x, int n) {
    int pmax = -1;
    while (x.has({pmax + 1, 0, 0}) && pmax + 1 <= n) ++pmax;
    std::vector<BiView> views;
    for (int p = 0; p <= pmax; ++p) views.push_back(view_of(x, p));
    MultiSpec<2> spec;
    spec.name = "Wbar_inner " + x.name;
    spec.bound = n;
    for (int p = 0; p <= pmax; ++p)
        for (int m = 0; p + m <= n; ++m) spec.window.push_back({p, m});
    spec.enumerate = [&](const std::array<int, 2>& ix) { return wbar_enumerate(views[ix[0]], ix[1]); };
    auto outer = [&](bool deg, int i, const std::array<int, 2>& ix, const Key& k) {
        const int p = ix[0], m = ix[1];
        Key r(k.size());
        for (int b = 0; b <= m; ++b) {
            std::array<int, 3> at{p, m - b, b};
            r[b] = deg ? x.degen(0, i, at, k[b]) : x.face(0, i, at, k[b]);
            if (r[b] < 0) throw StructureError(spec.name + ": outer map leaves the window");
        }
        return r;
    };
    spec.face = [&](int d, int i, const std::array<int, 2>& ix, const Key& k) {
        return d == 0 ? outer(false, i, ix, k) : wbar_face(views[ix[0]], i, ix[1], k);
    };
    spec.degen = [&](int d, int i, const std::array<int, 2>& ix, const Key& k) {
        return d == 0 ? outer(true, i, ix, k) : wbar_degen(views[ix[0]], i, ix[1], k);
    };
    return build_multi<2>(spec);
}

std::shared_ptr<BisimplicialSet> diag_inner(const TrisimplicialSet& x, int n) {
    MultiSpec<2> spec;
    spec.name = "Diag_inner " + x.name;
    spec.bound = n;
    for (int p = 0; p <= n; ++p)
        for (int m = 0; p + m <= n; ++m)
            if (x.has({p, m, m})) spec.window.push_back({p, m});
    spec.enumerate = [&](const std::array<int, 2>& ix) { return x.level({ix[0], ix[1], ix[1]}).keys; };
    auto apply = [&](bool deg, int d, int i, const std::array<int, 2>& ix, const Key& k) {
        std::array<int, 3> at{ix[0], ix[1], ix[1]};
        int s = x.find(at, k);
        auto step = [&](int dir) {
            std::array<int, 3> t = at;
            t[dir] += deg ? 1 : -1;
            if (!x.has(t)) throw StructureError(spec.name + ": insufficient window");
            s = deg ? x.degen(dir, i, at, s) : x.face(dir, i, at, s);
            at = t;
        };
        if (d == 0) {
            step(0);
        } else {
            step(1);
            step(2);
        }
        return x.key(at, s);
    };
    spec.face = [&](int d, int i, const std::array<int, 2>& ix, const Key& k) { return apply(false, d, i, ix, k); };
    spec.degen = [&](int d, int i, const std::array<int, 2>& ix, const Key& k) { return apply(true, d, i, ix, k); };
    return build_multi<2>(spec);
}

// ---------------------------------------------------------------- maps

Report check_simplicial_map(const SimplicialMap& f) {
    Report r;
    const auto &X = *f.src, &Y = *f.tgt;
    for (const auto& [ix, l] : X.levels) {
        const int n = ix[0];
        if (n >= static_cast<int>(f.map.size()) || static_cast<int>(f.map[n].size()) != l.size()) {
            r.add(f.name + ": map undefined at level " + std::to_string(n));
            continue;
        }
        if (!Y.has(ix)) {
            r.add(f.name + ": target lacks level " + std::to_string(n));
            continue;
        }
        for (int s = 0; s < l.size(); ++s)
            if (f.map[n][s] < 0 || f.map[n][s] >= Y.size(ix)) r.add(f.name + ": image out of range at level " + std::to_string(n));
    }
    if (!r.ok()) return r;
    for (const auto& [ix, l] : X.levels) {
        const int n = ix[0];
        for (int s = 0; s < l.size(); ++s) {
            const int fs = f.map[n][s];
            for (int i = 0; n > 0 && i <= n; ++i) {
                int a = l.face[0][i][s];
                if (a < 0) continue;
                if (f.map[n - 1][a] != Y.face(0, i, ix, fs))
                    r.add(f.name + ": does not commute with d" + std::to_string(i) + " at level " + std::to_string(n) +
                          " simplex " + std::to_string(s));
            }
            if (!X.has({n + 1}) || !Y.has({n + 1})) continue;
            for (int i = 0; i <= n; ++i) {
                int a = l.degen[0][i][s];
                if (a < 0) continue;
                if (f.map[n + 1][a] != Y.degen(0, i, ix, fs))
                    r.add(f.name + ": does not commute with s" + std::to_string(i) + " at level " + std::to_string(n) +
                          " simplex " + std::to_string(s));
            }
        }
    }
    return r;
}

Report iso_report(const SimplicialMap& f) {
    Report r;
    for (const auto& [ix, l] : f.src->levels) {
        const int n = ix[0];
        if (!f.tgt->has(ix)) {
            r.add(f.name + ": target lacks level " + std::to_string(n));
            continue;
        }
        const int m = f.tgt->size(ix);
        if (m != l.size())
            r.add(f.name + ": level " + std::to_string(n) + " sizes differ (" + std::to_string(l.size()) + " vs " +
                  std::to_string(m) + ")");
        if (n >= static_cast<int>(f.map.size()) || static_cast<int>(f.map[n].size()) != l.size()) {
            r.add(f.name + ": map undefined at level " + std::to_string(n));
            continue;
        }
        std::vector<char> hit(m, 0);
        for (int s = 0; s < l.size(); ++s) {
            int t = f.map[n][s];
            if (t < 0 || t >= m) {
                r.add(f.name + ": image out of range at level " + std::to_string(n));
                continue;
            }
            if (hit[t]) r.add(f.name + ": not injective at level " + std::to_string(n));
            hit[t] = 1;
        }
    }
    return r;
}

bool verify_iso(const SimplicialMap& f) { return iso_report(f).ok(); }

SimplicialMap identity_map(const SSetPtr& x) {
    SimplicialMap f{"1_" + x->name, x, x, {}};
    for (const auto& [ix, l] : x->levels) {
        if (static_cast<int>(f.map.size()) <= ix[0]) f.map.resize(ix[0] + 1);
        f.map[ix[0]].resize(l.size());
        for (int s = 0; s < l.size(); ++s) f.map[ix[0]][s] = s;
    }
    return f;
}

SimplicialMap aw_map(const BisimplicialSet& b, const SSetPtr& diag_b, const SSetPtr& wbar_b) {
    SimplicialMap f{"AW " + b.name, diag_b, wbar_b, {}};
    for (const auto& [ix, l] : diag_b->levels) {
        const int n = ix[0];
        if (!wbar_b->has(ix)) continue;
        if (static_cast<int>(f.map.size()) <= n) f.map.resize(n + 1);
        auto& row = f.map[n];
        row.assign(l.size(), -1);
        for (int s = 0; s < l.size(); ++s) {
            const int t = b.find({n, n}, l.keys[s]);
            if (t < 0) throw StructureError(f.name + ": diagonal simplex not found in the bisimplicial set");
            Key comp(n + 1);
            for (int q = 0; q <= n; ++q) {
                int v = t, p = n, qq = n;
                for (int k = 0; k < q; ++k) v = b.face(0, 0, {p--, qq}, v);
                for (int k = 0; k < n - q; ++k) v = b.face(1, q + 1, {p, qq--}, v);
                if (v < 0) throw StructureError(f.name + ": insufficient window");
                comp[q] = v;
            }
            row[s] = wbar_b->find(ix, comp);
            if (row[s] < 0) throw StructureError(f.name + ": image violates the W-bar compatibility condition");
        }
    }
    return f;
}

template class MultiSimplicial<1>;
template class MultiSimplicial<2>;
template class MultiSimplicial<3>;
template std::shared_ptr<MultiSimplicial<1>> build_multi<1>(const MultiSpec<1>&);
template std::shared_ptr<MultiSimplicial<2>> build_multi<2>(const MultiSpec<2>&);
template std::shared_ptr<MultiSimplicial<3>> build_multi<3>(const MultiSpec<3>&);
template std::vector<std::array<int, 1>> box_window<1>(int);
template std::vector<std::array<int, 2>> box_window<2>(int);
template std::vector<std::array<int, 3>> box_window<3>(int);
template std::vector<std::array<int, 1>> sum_window<1>(int);
template std::vector<std::array<int, 2>> sum_window<2>(int);
template std::vector<std::array<int, 3>> sum_window<3>(int);
template Report check_simplicial_identities<1>(const MultiSimplicial<1>&);
template Report check_simplicial_identities<2>(const MultiSimplicial<2>&);
template Report check_simplicial_identities<3>(const MultiSimplicial<3>&);
template std::shared_ptr<SimplicialSet> diag<2>(const MultiSimplicial<2>&);
template std::shared_ptr<SimplicialSet> diag<3>(const MultiSimplicial<3>&);

}  // namespace tcat
