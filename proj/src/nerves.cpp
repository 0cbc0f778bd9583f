#include "tcat/nerves.hpp"

namespace tcat {

const std::vector<Key>& HomChains::get(int a, int b, int q) const {
    auto k = std::make_tuple(a, b, q);
    auto it = cache_.find(k);
    if (it != cache_.end()) return it->second;
    const auto& c = *c_;
    std::vector<Key> out;
    std::vector<int> fs(q + 1), as(q);
    std::function<void(int)> rec = [&](int k2) {
        if (k2 == q) {
            Key key(fs.begin(), fs.end());
            key.insert(key.end(), as.begin(), as.end());
            out.push_back(std::move(key));
            return;
        }
        for (int al : c.twos_out(fs[k2])) {
            as[k2] = al;
            fs[k2 + 1] = c.two(al).tgt;
            rec(k2 + 1);
        }
    };
    for (int f : c.ones(a, b)) {
        fs[0] = f;
        rec(0);
    }
    return cache_.emplace(k, std::move(out)).first->second;
}

Key column_face(const TwoCategory& c, std::span<const int> col, int q, int j) {
    Key r;
    r.reserve(2 * q - 1);
    for (int k = 0; k <= q; ++k)
        if (k != j) r.push_back(col[k]);
    auto al = [&](int k) { return col[q + k]; };
    for (int k = 1; k <= q; ++k) {
        if (j == 0 && k == 1) continue;
        if (j == q && k == q) continue;
        if (0 < j && j < q) {
            if (k == j) {
                r.push_back(c.vcomp(al(j + 1), al(j)));
                continue;
            }
            if (k == j + 1) continue;
        }
        r.push_back(al(k));
    }
    return r;
}

Key column_degen(const TwoCategory& c, std::span<const int> col, int q, int j) {
    Key r;
    r.reserve(2 * q + 3);
    for (int k = 0; k <= q; ++k) {
        r.push_back(col[k]);
        if (k == j) r.push_back(col[k]);
    }
    for (int k = 1; k <= q; ++k) {
        if (k == j + 1) r.push_back(c.id2(col[j]));
        r.push_back(col[q + k]);
    }
    if (j == q) r.push_back(c.id2(col[j]));
    return r;
}

namespace {

std::vector<Key> nn_enumerate(const HomChains& hc, int p, int q) {
    const auto& c = hc.cat();
    std::vector<Key> out;
    Key cur;
    std::vector<int> objs(p + 1);
    std::function<void(int)> cols = [&](int m) {
        if (m > p) {
            out.push_back(cur);
            return;
        }
        for (const auto& ch : hc.get(objs[m - 1], objs[m], q)) {
            cur.insert(cur.end(), ch.begin(), ch.end());
            cols(m + 1);
            cur.resize(cur.size() - ch.size());
        }
    };
    std::function<void(int)> chain = [&](int m) {
        if (m > p) {
            cur.assign(objs.begin(), objs.end());
            cols(1);
            return;
        }
        for (int o = 0; o < c.n0(); ++o) {
            if (m > 0 && hc.get(objs[m - 1], o, q).empty()) continue;
            objs[m] = o;
            chain(m + 1);
        }
    };
    chain(0);
    return out;
}

Key nn_hface(const TwoCategory& c, const Key& k, int p, int q, int i) {
    const int w = 2 * q + 1;
    Key r;
    r.reserve(k.size() - w - 1);
    for (int m = 0; m <= p; ++m)
        if (m != i) r.push_back(k[m]);
    auto col = [&](int m) { return k.begin() + nn_column(p, q, m); };
    for (int m = 1; m <= p; ++m) {
        if (i == 0 && m == 1) continue;
        if (i == p && m == p) continue;
        if (0 < i && i < p && m == i) {
            auto a = col(i), b = col(i + 1);
            for (int t = 0; t <= q; ++t) r.push_back(c.comp1(b[t], a[t]));
            for (int t = 1; t <= q; ++t) r.push_back(c.hcomp(b[q + t], a[q + t]));
            continue;
        }
        if (0 < i && i < p && m == i + 1) continue;
        r.insert(r.end(), col(m), col(m) + w);
    }
    return r;
}

Key nn_hdegen(const TwoCategory& c, const Key& k, int p, int q, int i) {
    const int w = 2 * q + 1;
    Key r;
    r.reserve(k.size() + w + 1);
    for (int m = 0; m <= p; ++m) {
        r.push_back(k[m]);
        if (m == i) r.push_back(k[m]);
    }
    const int one = c.id1(k[i]);
    const int two = c.id2(one);
    for (int m = 0; m <= p; ++m) {
        if (m > 0) r.insert(r.end(), k.begin() + nn_column(p, q, m), k.begin() + nn_column(p, q, m) + w);
        if (m == i) {
            for (int t = 0; t <= q; ++t) r.push_back(one);
            for (int t = 1; t <= q; ++t) r.push_back(two);
        }
    }
    return r;
}

Key nn_vop(const TwoCategory& c, const Key& k, int p, int q, int j, bool deg) {
    const int w = 2 * q + 1;
    Key r(k.begin(), k.begin() + p + 1);
    for (int m = 1; m <= p; ++m) {
        std::span<const int> col(k.data() + nn_column(p, q, m), w);
        Key nc = deg ? column_degen(c, col, q, j) : column_face(c, col, q, j);
        r.insert(r.end(), nc.begin(), nc.end());
    }
    return r;
}

Key nn_op(const TwoCategory& c, bool deg, int d, int i, int p, int q, const Key& k) {
    if (d == 0) return deg ? nn_hdegen(c, k, p, q, i) : nn_hface(c, k, p, q, i);
    return nn_vop(c, k, p, q, i, deg);
}

}  // namespace

Key nn_structure(const TwoCategory& c, bool deg, int d, int i, int p, int q, const Key& k) {
    return nn_op(c, deg, d, i, p, q, k);
}

std::shared_ptr<SimplicialSet> nerve_category(const CatPtr& ap, int n) {
    const auto& a = *ap;
    if (!is_locally_discrete(a)) throw InputError(a.name() + ": nerve_category needs a 1-category (identity 2-cells only)");
    MultiSpec<1> spec;
    spec.name = "N " + a.name();
    spec.bound = n;
    for (int p = 0; p <= n; ++p) spec.window.push_back({p});
    spec.enumerate = [&](const std::array<int, 1>& ix) {
        const int p = ix[0];
        std::vector<Key> out;
        Key cur;
        std::function<void(int, int)> rec = [&](int at, int len) {
            if (len == p) {
                out.push_back(cur);
                return;
            }
            for (int f : a.ones_out(at)) {
                cur.push_back(f);
                rec(a.one(f).tgt, len + 1);
                cur.pop_back();
            }
        };
        for (int o = 0; o < a.n0(); ++o) {
            cur = {o};
            rec(o, 0);
        }
        return out;
    };
    spec.face = [&](int, int i, const std::array<int, 1>& ix, const Key& k) {
        const int p = ix[0];
        Key r;
        if (i == 0) {
            r.push_back(a.one(k[1]).tgt);
            r.insert(r.end(), k.begin() + 2, k.end());
        } else if (i == p) {
            r.assign(k.begin(), k.end() - 1);
        } else {
            r.assign(k.begin(), k.begin() + i);
            r.push_back(a.comp1(k[i + 1], k[i]));
            r.insert(r.end(), k.begin() + i + 2, k.end());
        }
        return r;
    };
    spec.degen = [&](int, int i, const std::array<int, 1>&, const Key& k) {
        const int obj = i == 0 ? k[0] : a.one(k[i]).tgt;
        Key r(k.begin(), k.begin() + i + 1);
        r.push_back(a.id1(obj));
        r.insert(r.end(), k.begin() + i + 1, k.end());
        return r;
    };
    return build_multi<1>(spec);
}

std::shared_ptr<BisimplicialSet> double_nerve(const CatPtr& cp, int n) {
    const auto& c = *cp;
    HomChains hc(cp);
    MultiSpec<2> spec;
    spec.name = "nn " + c.name();
    spec.bound = n;
    spec.window = box_window<2>(n);
    spec.enumerate = [&](const std::array<int, 2>& ix) { return nn_enumerate(hc, ix[0], ix[1]); };
    spec.face = [&](int d, int i, const std::array<int, 2>& ix, const Key& k) {
        return nn_op(c, false, d, i, ix[0], ix[1], k);
    };
    spec.degen = [&](int d, int i, const std::array<int, 2>& ix, const Key& k) {
        return nn_op(c, true, d, i, ix[0], ix[1], k);
    };
    return build_multi<2>(spec);
}

std::shared_ptr<SimplicialSet> wbar_double_nerve(const CatPtr& cp, int n) {
    const auto& c = *cp;
    HomChains hc(cp);
    MultiSpec<1> spec;
    spec.name = "Wnn " + c.name();
    spec.bound = n;
    for (int m = 0; m <= n; ++m) spec.window.push_back({m});
    spec.enumerate = [&](const std::array<int, 1>& ix) {
        const int m = ix[0];
        std::vector<Key> out;
        Key cur;
        std::vector<int> objs(m + 1);
        std::function<void(int)> cols = [&](int j) {
            if (j > m) {
                out.push_back(cur);
                return;
            }
            for (const auto& ch : hc.get(objs[j - 1], objs[j], j - 1)) {
                cur.insert(cur.end(), ch.begin(), ch.end());
                cols(j + 1);
                cur.resize(cur.size() - ch.size());
            }
        };
        std::function<void(int)> chain = [&](int j) {
            if (j > m) {
                cur.assign(objs.begin(), objs.end());
                cols(1);
                return;
            }
            for (int o = 0; o < c.n0(); ++o) {
                if (j > 0 && c.ones(objs[j - 1], o).empty()) continue;
                objs[j] = o;
                chain(j + 1);
            }
        };
        chain(0);
        return out;
    };
    spec.face = [&](int, int i, const std::array<int, 1>& ix, const Key& k) {
        const int m = ix[0];
        Key r;
        for (int t = 0; t <= m; ++t)
            if (t != i) r.push_back(k[t]);
        auto col = [&](int j) { return std::span<const int>(k.data() + wnn_column(m, j), 2 * j - 1); };
        for (int j = 1; j <= m; ++j) {
            if (j < i) {
                auto cl = col(j);
                r.insert(r.end(), cl.begin(), cl.end());
            } else if (j == i && i > 0 && i < m) {
                auto a = col(i), b = col(i + 1);
                // a: f^0..f^{i-1}, α^1..α^{i-1}; b: f^0..f^i, α^1..α^i
                for (int t = 0; t < i; ++t) r.push_back(c.comp1(b[t], a[t]));
                for (int t = 1; t < i; ++t) r.push_back(c.hcomp(b[i + t], a[i - 1 + t]));
            } else if (j > i + 1 || (i == 0 && j > 1)) {
                Key nc = column_face(c, col(j), j - 1, i);
                r.insert(r.end(), nc.begin(), nc.end());
            }
        }
        return r;
    };
    spec.degen = [&](int, int i, const std::array<int, 1>& ix, const Key& k) {
        const int m = ix[0];
        Key r;
        for (int t = 0; t <= m; ++t) {
            r.push_back(k[t]);
            if (t == i) r.push_back(k[t]);
        }
        auto col = [&](int j) { return std::span<const int>(k.data() + wnn_column(m, j), 2 * j - 1); };
        for (int j = 1; j <= i; ++j) {
            auto cl = col(j);
            r.insert(r.end(), cl.begin(), cl.end());
        }
        const int one = c.id1(k[i]);
        for (int t = 0; t <= i; ++t) r.push_back(one);
        for (int t = 0; t < i; ++t) r.push_back(c.id2(one));
        for (int j = i + 1; j <= m; ++j) {
            Key nc = column_degen(c, col(j), j - 1, i);
            r.insert(r.end(), nc.begin(), nc.end());
        }
        return r;
    };
    return build_multi<1>(spec);
}

SimplicialMap repackaging_map(const BisimplicialSet& nn, const SSetPtr& wbar_nn, const SSetPtr& wnn) {
    SimplicialMap f{"repackaging " + nn.name, wbar_nn, wnn, {}};
    for (const auto& [ix, l] : wbar_nn->levels) {
        const int n = ix[0];
        if (static_cast<int>(f.map.size()) <= n) f.map.resize(n + 1);
        auto& row = f.map[n];
        row.assign(l.size(), -1);
        for (int s = 0; s < l.size(); ++s) {
            const Key& t = l.keys[s];
            Key k;
            for (int m = 0; m <= n; ++m) k.push_back(nn.key({n - m, m}, t[m])[0]);
            for (int m = 1; m <= n; ++m) {
                const Key& src = nn.key({n - m + 1, m - 1}, t[m - 1]);
                const int off = nn_column(n - m + 1, m - 1, 1);
                k.insert(k.end(), src.begin() + off, src.begin() + off + 2 * m - 1);
            }
            row[s] = wnn->find(ix, k);
            if (row[s] < 0) throw StructureError(f.name + ": repackaged simplex not found at level " + std::to_string(n));
        }
    }
    return f;
}

Key map_nn_key(const TwoFunctor& f, const Key& k, int p, int q) {
    Key r(k.size());
    for (int m = 0; m <= p; ++m) r[m] = f.on0[k[m]];
    for (int m = 1; m <= p; ++m) {
        const int off = nn_column(p, q, m);
        for (int t = 0; t <= q; ++t) r[off + t] = f.on1[k[off + t]];
        for (int t = 1; t <= q; ++t) r[off + q + t] = f.on2[k[off + q + t]];
    }
    return r;
}

Key map_wnn_key(const TwoFunctor& f, const Key& k, int n) {
    Key r(k.size());
    for (int m = 0; m <= n; ++m) r[m] = f.on0[k[m]];
    for (int m = 1; m <= n; ++m) {
        const int off = wnn_column(n, m);
        for (int t = 0; t < m; ++t) r[off + t] = f.on1[k[off + t]];
        for (int t = 1; t < m; ++t) r[off + m - 1 + t] = f.on2[k[off + m - 1 + t]];
    }
    return r;
}

namespace {

SimplicialMap keyed_map(const std::string& name, const SSetPtr& src, const SSetPtr& tgt,
                        const std::function<Key(const Key&, int)>& act) {
    SimplicialMap m{name, src, tgt, {}};
    for (const auto& [ix, l] : src->levels) {
        const int n = ix[0];
        if (static_cast<int>(m.map.size()) <= n) m.map.resize(n + 1);
        auto& row = m.map[n];
        row.assign(l.size(), -1);
        if (!tgt->has(ix)) continue;
        for (int s = 0; s < l.size(); ++s) {
            row[s] = tgt->find(ix, act(l.keys[s], n));
            if (row[s] < 0) throw StructureError(name + ": image not found at level " + std::to_string(n));
        }
    }
    return m;
}

}  // namespace

SimplicialMap diag_nn_map(const TwoFunctor& f, const SSetPtr& src, const SSetPtr& tgt) {
    return keyed_map("Diag nn " + f.name, src, tgt, [&](const Key& k, int n) { return map_nn_key(f, k, n, n); });
}

SimplicialMap wnn_map(const TwoFunctor& f, const SSetPtr& src, const SSetPtr& tgt) {
    return keyed_map("Wnn " + f.name, src, tgt, [&](const Key& k, int n) { return map_wnn_key(f, k, n); });
}

std::shared_ptr<TrisimplicialSet> nerve_simplicial_twocat(const SimplicialTwoCategory& s, int n) {
    const int pmax = std::min(n, s.bound);
    std::vector<HomChains> hcs;
    for (int p = 0; p <= pmax; ++p) hcs.emplace_back(s.level[p]);
    MultiSpec<3> spec;
    spec.name = "nn " + s.name;
    spec.bound = n;
    for (const auto& ix : box_window<3>(n))
        if (ix[0] <= pmax) spec.window.push_back(ix);
    spec.enumerate = [&](const std::array<int, 3>& ix) { return nn_enumerate(hcs[ix[0]], ix[1], ix[2]); };
    spec.face = [&](int d, int i, const std::array<int, 3>& ix, const Key& k) {
        if (d == 0) return map_nn_key(s.face[ix[0]][i], k, ix[1], ix[2]);
        return nn_op(*s.level[ix[0]], false, d - 1, i, ix[1], ix[2], k);
    };
    spec.degen = [&](int d, int i, const std::array<int, 3>& ix, const Key& k) {
        if (d == 0) return map_nn_key(s.degen[ix[0]][i], k, ix[1], ix[2]);
        return nn_op(*s.level[ix[0]], true, d - 1, i, ix[1], ix[2], k);
    };
    return build_multi<3>(spec);
}

Report check_simplicial_twocat(const SimplicialTwoCategory& s) {
    Report r;
    const int N = s.bound;
    for (int p = 0; p <= N; ++p) r.absorb(validate(*s.level[p]), s.name + " level " + std::to_string(p));
    auto typed = [&](const TwoFunctor& f, int from, int to, const std::string& what) {
        if (f.src != s.level[from] || f.tgt != s.level[to]) {
            r.add(s.name + ": " + what + " has wrong source/target");
            return;
        }
        r.absorb(check_functor(f), s.name + " " + what);
    };
    for (int p = 1; p <= N; ++p)
        for (int i = 0; i <= p; ++i) typed(s.face[p][i], p, p - 1, "d" + std::to_string(i) + " at " + std::to_string(p));
    for (int p = 0; p < N; ++p)
        for (int i = 0; i <= p; ++i) typed(s.degen[p][i], p, p + 1, "s" + std::to_string(i) + " at " + std::to_string(p));
    if (!r.ok()) return r;
    auto eq = [&](const TwoFunctor& a, const TwoFunctor& b, const std::string& what) {
        if (compare_functors(a, b).count()) r.add(s.name + ": " + what + " fails");
    };
    auto tag = [](const char* id, int p, int i, int j) {
        return std::string(id) + " at level " + std::to_string(p) + " (i=" + std::to_string(i) + ", j=" + std::to_string(j) + ")";
    };
    for (int p = 2; p <= N; ++p)
        for (int j = 1; j <= p; ++j)
            for (int i = 0; i < j; ++i)
                eq(compose(s.face[p - 1][i], s.face[p][j]), compose(s.face[p - 1][j - 1], s.face[p][i]),
                   tag("d_i d_j = d_{j-1} d_i", p, i, j));
    for (int p = 0; p + 2 <= N; ++p)
        for (int j = 0; j <= p; ++j)
            for (int i = 0; i <= j; ++i)
                eq(compose(s.degen[p + 1][i], s.degen[p][j]), compose(s.degen[p + 1][j + 1], s.degen[p][i]),
                   tag("s_i s_j = s_{j+1} s_i", p, i, j));
    for (int p = 0; p < N; ++p)
        for (int j = 0; j <= p; ++j)
            for (int i = 0; i <= p + 1; ++i) {
                TwoFunctor lhs = compose(s.face[p + 1][i], s.degen[p][j]);
                if (i == j || i == j + 1) {
                    eq(lhs, identity_functor(s.level[p]), tag("d_i s_j = 1", p, i, j));
                } else if (i < j) {
                    eq(lhs, compose(s.degen[p - 1][j - 1], s.face[p][i]), tag("d_i s_j = s_{j-1} d_i", p, i, j));
                } else {
                    eq(lhs, compose(s.degen[p - 1][j], s.face[p][i - 1]), tag("d_i s_j = s_j d_{i-1}", p, i, j));
                }
            }
    return r;
}

}  // namespace tcat
