#include "tcat/homology.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace tcat {

std::string HomologyResult::str() const {
    std::ostringstream o;
    if (betti == 0 && torsion.empty()) return "0";
    bool first = true;
    if (betti > 0) {
        o << "Z";
        if (betti > 1) o << "^" << betti;
        first = false;
    }
    for (const auto& t : torsion) {
        o << (first ? "" : " + ") << "Z/" << t.get_str();
        first = false;
    }
    return o.str();
}

ChainComplex normalized_chain_complex(const SimplicialSet& x) {
    ChainComplex cc;
    cc.name = x.name;
    while (x.has({cc.top + 1})) ++cc.top;
    cc.basis.resize(cc.top + 1);
    cc.position.resize(cc.top + 1);
    for (int n = 0; n <= cc.top; ++n) {
        const int sz = x.size({n});
        cc.position[n].assign(sz, -1);
        for (int s = 0; s < sz; ++s) {
            bool degenerate = false;
            for (int i = 0; n > 0 && i < n && !degenerate; ++i) {
                int f = x.face(0, i, {n}, s);
                if (f >= 0 && x.degen(0, i, {n - 1}, f) == s) degenerate = true;
            }
            if (!degenerate) {
                cc.position[n][s] = static_cast<int>(cc.basis[n].size());
                cc.basis[n].push_back(s);
            }
        }
    }
    cc.boundary.resize(cc.top + 1);
    cc.boundary[0].rows = 0;
    cc.boundary[0].cols = cc.rank(0);
    cc.boundary[0].col.resize(cc.rank(0));
    for (int n = 1; n <= cc.top; ++n) {
        SparseMatrix& m = cc.boundary[n];
        m.rows = cc.rank(n - 1);
        m.cols = cc.rank(n);
        m.col.resize(m.cols);
        for (int j = 0; j < m.cols; ++j) {
            std::map<int, long> acc;
            for (int i = 0; i <= n; ++i) {
                int f = x.face(0, i, {n}, cc.basis[n][j]);
                if (f < 0) throw StructureError(x.name + ": face missing in normalized complex");
                int r = cc.position[n - 1][f];
                if (r >= 0) acc[r] += (i % 2 == 0) ? 1 : -1;
            }
            for (auto [r, v] : acc)
                if (v != 0) m.col[j].push_back({r, v});
        }
    }
    return cc;
}

Report check_boundary_squared(const ChainComplex& cc) {
    Report r;
    for (int n = 2; n <= cc.top; ++n) {
        const auto& a = cc.boundary[n - 1];
        const auto& b = cc.boundary[n];
        for (int j = 0; j < b.cols; ++j) {
            std::map<int, long> acc;
            for (auto [k, v] : b.col[j])
                for (auto [i, w] : a.col[k]) acc[i] += v * w;
            for (auto [i, v] : acc)
                if (v != 0) {
                    r.add(cc.name + ": boundary squared nonzero in degree " + std::to_string(n));
                    break;
                }
        }
    }
    return r;
}

// ---- Smith normal form -------------------------------------------------------

namespace {

using Dense = std::vector<std::vector<Integer>>;

// Elementary reduction of a dense block, optionally tracking U, U^{-1}
// (rows) and V, V^{-1} (columns) with D = U A V.
struct Smith {
    Dense A;
    Dense *U = nullptr, *Ui = nullptr, *V = nullptr, *Vi = nullptr;
    int m = 0, n = 0;

    void swap_rows(int i, int j) {
        std::swap(A[i], A[j]);
        if (U) {
            std::swap((*U)[i], (*U)[j]);
            for (auto& row : *Ui) std::swap(row[i], row[j]);
        }
    }
    void swap_cols(int i, int j) {
        for (auto& row : A) std::swap(row[i], row[j]);
        if (V) {
            for (auto& row : *V) std::swap(row[i], row[j]);
            std::swap((*Vi)[i], (*Vi)[j]);
        }
    }
    // row_i += k row_j
    void add_row(int i, int j, const Integer& k) {
        if (k == 0) return;
        for (int c = 0; c < n; ++c)
            if (A[j][c] != 0) A[i][c] += k * A[j][c];
        if (U) {
            auto& u = *U;
            for (std::size_t c = 0; c < u[j].size(); ++c) u[i][c] += k * u[j][c];
            for (auto& row : *Ui) row[j] -= k * row[i];
        }
    }
    // col_i += k col_j
    void add_col(int i, int j, const Integer& k) {
        if (k == 0) return;
        for (int r = 0; r < m; ++r)
            if (A[r][j] != 0) A[r][i] += k * A[r][j];
        if (V) {
            for (auto& row : *V) row[i] += k * row[j];
            auto& vi = *Vi;
            for (std::size_t c = 0; c < vi[i].size(); ++c) vi[j][c] -= k * vi[i][c];
        }
    }
    void negate_row(int i) {
        for (auto& v : A[i]) v = -v;
        if (U) {
            for (auto& v : (*U)[i]) v = -v;
            for (auto& row : *Ui) row[i] = -row[i];
        }
    }

    // Returns the diagonal; A is diagonal with d_1 | d_2 | ... afterwards.
    std::vector<Integer> run() {
        std::vector<Integer> diag;
        for (int t = 0; t < std::min(m, n); ++t) {
            for (;;) {
                int pi = -1, pj = -1;
                for (int i = t; i < m; ++i)
                    for (int j = t; j < n; ++j)
                        if (A[i][j] != 0 && (pi < 0 || abs(A[i][j]) < abs(A[pi][pj]))) pi = i, pj = j;
                if (pi < 0) return diag;
                if (pi != t) swap_rows(t, pi);
                if (pj != t) swap_cols(t, pj);
                bool clean = true;
                for (int i = t + 1; i < m; ++i)
                    if (A[i][t] != 0) {
                        Integer q;
                        mpz_fdiv_q(q.get_mpz_t(), A[i][t].get_mpz_t(), A[t][t].get_mpz_t());
                        add_row(i, t, -q);
                        if (A[i][t] != 0) clean = false;
                    }
                for (int j = t + 1; j < n; ++j)
                    if (A[t][j] != 0) {
                        Integer q;
                        mpz_fdiv_q(q.get_mpz_t(), A[t][j].get_mpz_t(), A[t][t].get_mpz_t());
                        add_col(j, t, -q);
                        if (A[t][j] != 0) clean = false;
                    }
                if (!clean) continue;
                // divisibility of the rest by the pivot
                int bad = -1;
                for (int i = t + 1; i < m && bad < 0; ++i)
                    for (int j = t + 1; j < n; ++j)
                        if (A[i][j] % A[t][t] != 0) {
                            bad = i;
                            break;
                        }
                if (bad < 0) break;
                add_row(t, bad, 1);
            }
            if (A[t][t] < 0) negate_row(t);
            diag.push_back(A[t][t]);
        }
        return diag;
    }
};

Dense identity(int n) {
    Dense d(n, std::vector<Integer>(n, 0));
    for (int i = 0; i < n; ++i) d[i][i] = 1;
    return d;
}

Dense to_dense(const SparseMatrix& s) {
    Dense d(s.rows, std::vector<Integer>(s.cols, 0));
    for (int j = 0; j < s.cols; ++j)
        for (auto [i, v] : s.col[j]) d[i][j] = v;
    return d;
}

constexpr int kDenseLimit = 600;

}  // namespace

std::vector<Integer> invariant_factors(const SparseMatrix& mat) {
    // unit pivots on the sparse matrix first, then a dense Smith form of the rest
    std::vector<std::map<int, Integer>> cols(mat.cols);
    std::vector<std::set<int>> rows(mat.rows);
    for (int j = 0; j < mat.cols; ++j)
        for (auto [i, v] : mat.col[j]) {
            cols[j][i] = v;
            rows[i].insert(j);
        }
    std::vector<char> col_alive(mat.cols, 1);
    int units = 0;
    for (;;) {
        int best_r = -1, best_c = -1;
        std::size_t best_cost = 0;
        for (int j = 0; j < mat.cols; ++j) {
            if (!col_alive[j]) continue;
            for (const auto& [i, v] : cols[j]) {
                if (v != 1 && v != -1) continue;
                std::size_t cost = (cols[j].size() - 1) * (rows[i].size() - 1);
                if (best_r < 0 || cost < best_cost) {
                    best_r = i, best_c = j, best_cost = cost;
                    if (cost == 0) break;
                }
            }
            if (best_r >= 0 && best_cost == 0) break;
        }
        if (best_r < 0) break;
        const int r = best_r, c = best_c;
        const Integer pv = cols[c][r];  // ±1, its own inverse
        std::vector<int> others(rows[r].begin(), rows[r].end());
        for (int j : others) {
            if (j == c) continue;
            Integer k = cols[j][r] * pv;
            for (const auto& [i, v] : cols[c]) {
                Integer& e = cols[j][i];
                e -= k * v;
                if (e == 0) {
                    cols[j].erase(i);
                    rows[i].erase(j);
                } else {
                    rows[i].insert(j);
                }
            }
        }
        for (const auto& [i, v] : cols[c]) rows[i].erase(c);
        cols[c].clear();
        col_alive[c] = 0;
        ++units;
    }
    std::vector<int> rest_c, rest_r;
    std::map<int, int> rpos;
    for (int j = 0; j < mat.cols; ++j)
        if (col_alive[j] && !cols[j].empty()) rest_c.push_back(j);
    for (int i = 0; i < mat.rows; ++i)
        if (!rows[i].empty()) {
            rpos[i] = static_cast<int>(rest_r.size());
            rest_r.push_back(i);
        }
    std::vector<Integer> out(units, 1);
    if (rest_c.empty()) return out;
    if (static_cast<int>(std::max(rest_c.size(), rest_r.size())) > 4 * kDenseLimit)
        throw BudgetExceeded("Smith form: dense remainder too large");
    Smith s;
    s.m = static_cast<int>(rest_r.size());
    s.n = static_cast<int>(rest_c.size());
    s.A.assign(s.m, std::vector<Integer>(s.n, 0));
    for (int jj = 0; jj < s.n; ++jj)
        for (const auto& [i, v] : cols[rest_c[jj]]) s.A[rpos[i]][jj] = v;
    for (auto& d : s.run()) out.push_back(d);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

void check_degree(const ChainComplex& cc, int i) {
    if (i < 0 || i > cc.top - 1)
        throw InputError(cc.name + ": homology in degree " + std::to_string(i) +
                         " is not determined by a complex truncated at " + std::to_string(cc.top));
}

HomologyResult assemble(const ChainComplex& cc, int i, const std::vector<Integer>& in, const std::vector<Integer>& out) {
    HomologyResult h;
    h.degree = i;
    h.valid_upto = cc.top - 1;
    h.betti = cc.rank(i) - static_cast<int>(in.size()) - static_cast<int>(out.size());
    for (const auto& t : out)
        if (t != 1) h.torsion.push_back(t);
    return h;
}

}  // namespace

HomologyResult homology(const ChainComplex& cc, int i) {
    check_degree(cc, i);
    return assemble(cc, i, invariant_factors(cc.boundary[i]), invariant_factors(cc.boundary[i + 1]));
}

std::vector<HomologyResult> homology_upto(const ChainComplex& cc, int k) {
    check_degree(cc, k);
    std::vector<std::vector<Integer>> inv;
    for (int n = 0; n <= k + 1; ++n) inv.push_back(invariant_factors(cc.boundary[n]));
    std::vector<HomologyResult> out;
    for (int i = 0; i <= k; ++i) out.push_back(assemble(cc, i, inv[i], inv[i + 1]));
    return out;
}

SparseMatrix chain_map(const SimplicialMap& f, const ChainComplex& src, const ChainComplex& tgt, int n) {
    SparseMatrix m;
    m.rows = tgt.rank(n);
    m.cols = src.rank(n);
    m.col.resize(m.cols);
    for (int j = 0; j < m.cols; ++j) {
        int img = f.map.at(n).at(src.basis[n][j]);
        if (img < 0) throw StructureError(f.name + ": map undefined in degree " + std::to_string(n));
        int r = tgt.position[n][img];
        if (r >= 0) m.col[j].push_back({r, 1});
    }
    return m;
}

namespace {

// Z-basis data for H_i/torsion: cycles K (columns), the kernel coordinates
// map Vi restricted to the kernel rows, and the Smith row transform P of
// the boundaries in kernel coordinates.
struct FreeHomology {
    int rank_in = 0;     // rank ∂_i
    Dense Vi;            // n_i × n_i
    Dense V;             // n_i × n_i
    Dense P, Pi;         // z × z
    int rank_out = 0;    // rank of boundaries in kernel coordinates
    int z = 0;
};

FreeHomology free_homology(const ChainComplex& cc, int i) {
    FreeHomology h;
    const int ni = cc.rank(i);
    if (ni > kDenseLimit || cc.rank(i + 1) > kDenseLimit)
        throw BudgetExceeded(cc.name + ": induced map needs a dense Smith form that is too large");
    Dense U1, U1i;
    h.V = identity(ni);
    h.Vi = identity(ni);
    Smith s;
    s.A = to_dense(cc.boundary[i]);
    s.m = cc.boundary[i].rows;
    s.n = ni;
    U1 = identity(s.m);
    U1i = identity(s.m);
    s.U = &U1;
    s.Ui = &U1i;
    s.V = &h.V;
    s.Vi = &h.Vi;
    h.rank_in = static_cast<int>(s.run().size());
    h.z = ni - h.rank_in;
    // boundaries in kernel coordinates: rows rank_in.. of Vi ∂_{i+1}
    const auto& b = cc.boundary[i + 1];
    Smith t;
    t.m = h.z;
    t.n = b.cols;
    t.A.assign(t.m, std::vector<Integer>(t.n, 0));
    for (int j = 0; j < b.cols; ++j)
        for (auto [r, v] : b.col[j])
            for (int k = 0; k < h.z; ++k) t.A[k][j] += h.Vi[h.rank_in + k][r] * v;
    h.P = identity(h.z);
    h.Pi = identity(h.z);
    Dense W = identity(t.n), Wi = identity(t.n);
    t.U = &h.P;
    t.Ui = &h.Pi;
    t.V = &W;
    t.Vi = &Wi;
    h.rank_out = static_cast<int>(t.run().size());
    return h;
}

}  // namespace

std::vector<std::vector<Integer>> induced_homology_map(const SimplicialMap& f, const ChainComplex& src,
                                                       const ChainComplex& tgt, int i) {
    check_degree(src, i);
    check_degree(tgt, i);
    auto hs = free_homology(src, i);
    auto ht = free_homology(tgt, i);
    auto fm = chain_map(f, src, tgt, i);
    const int fs = hs.z - hs.rank_out, ft = ht.z - ht.rank_out;
    std::vector<std::vector<Integer>> out(ft, std::vector<Integer>(fs, 0));
    const int ns = src.rank(i), nt = tgt.rank(i);
    for (int g = 0; g < fs; ++g) {
        // generator: kernel coordinates Pi e_{rank_out+g}, chain V[:, rank_in + k]
        std::vector<Integer> kc(hs.z);
        for (int k = 0; k < hs.z; ++k) kc[k] = hs.Pi[k][hs.rank_out + g];
        std::vector<Integer> chain(ns, 0);
        for (int k = 0; k < hs.z; ++k)
            if (kc[k] != 0)
                for (int r = 0; r < ns; ++r) chain[r] += hs.V[r][hs.rank_in + k] * kc[k];
        std::vector<Integer> img(nt, 0);
        for (int j = 0; j < ns; ++j)
            if (chain[j] != 0)
                for (auto [r, v] : fm.col[j]) img[r] += chain[j] * v;
        std::vector<Integer> kt(ht.z, 0);
        for (int k = 0; k < ht.z; ++k)
            for (int r = 0; r < nt; ++r)
                if (img[r] != 0) kt[k] += ht.Vi[ht.rank_in + k][r] * img[r];
        for (int q = 0; q < ft; ++q)
            for (int k = 0; k < ht.z; ++k) out[q][g] += ht.P[ht.rank_out + q][k] * kt[k];
    }
    return out;
}

bool is_homology_iso_upto(const SimplicialMap& f, const ChainComplex& src, const ChainComplex& tgt, int k,
                          std::string* detail) {
    check_degree(src, k);
    check_degree(tgt, k);
    auto say = [&](const std::string& s) {
        if (detail) *detail = s;
        return false;
    };
    // Cone_n = Y_n ⊕ X_{n-1}, ∂(y,x) = (∂y + f x, −∂x)
    ChainComplex cone;
    cone.name = "cone(" + f.name + ")";
    cone.top = k + 1;
    cone.basis.resize(k + 2);
    cone.boundary.resize(k + 2);
    for (int n = 0; n <= k + 1; ++n) cone.basis[n].resize(tgt.rank(n) + (n > 0 ? src.rank(n - 1) : 0));
    for (int n = 0; n <= k + 1; ++n) {
        SparseMatrix& m = cone.boundary[n];
        const int yn = tgt.rank(n), yn1 = n > 0 ? tgt.rank(n - 1) : 0;
        m.rows = n > 0 ? cone.rank(n - 1) : 0;
        m.cols = cone.rank(n);
        m.col.resize(m.cols);
        if (n == 0) continue;
        for (int j = 0; j < yn; ++j) m.col[j] = tgt.boundary[n].col[j];
        auto fm = chain_map(f, src, tgt, n - 1);
        for (int j = 0; j < src.rank(n - 1); ++j) {
            auto& c = m.col[yn + j];
            c = fm.col[j];
            if (n >= 2)
                for (auto [r, v] : src.boundary[n - 1].col[j]) c.push_back({yn1 + r, -v});
        }
    }
    auto hc = homology_upto(cone, k);
    for (const auto& h : hc)
        if (!(h.betti == 0 && h.torsion.empty()))
            return say("cone has H_" + std::to_string(h.degree) + " = " + h.str());
    auto a = homology(src, k), b = homology(tgt, k);
    if (!(a == b)) return say("H_" + std::to_string(k) + " differs: " + a.str() + " vs " + b.str());
    return true;
}

}  // namespace tcat
