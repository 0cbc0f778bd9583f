#pragma once

#include <map>
#include <span>
#include <tuple>

#include "tcat/cellmap.hpp"
#include "tcat/simplicial.hpp"

namespace tcat {

// Simplicial object in 2-categories, levels 0..bound.
struct SimplicialTwoCategory {
    std::string name;
    int bound = 0;
    std::vector<CatPtr> level;
    std::vector<std::vector<TwoFunctor>> face;   // face[p][i] : level p → p-1
    std::vector<std::vector<TwoFunctor>> degen;  // degen[p][i] : level p → p+1, p < bound
};

Report check_simplicial_twocat(const SimplicialTwoCategory& s);

// Vertical chains f^0 ⇒ ... ⇒ f^q of 2-cells between 1-cells a → b, encoded
// as [f^0..f^q, α^1..α^q].
class HomChains {
public:
    explicit HomChains(CatPtr c) : c_(std::move(c)) {}
    const std::vector<Key>& get(int a, int b, int q) const;
    const TwoCategory& cat() const { return *c_; }

private:
    CatPtr c_;
    mutable std::map<std::tuple<int, int, int>, std::vector<Key>> cache_;
};

// Column (f^0..f^q, α^1..α^q) operations of the vertical nerve.
Key column_face(const TwoCategory& c, std::span<const int> col, int q, int j);
Key column_degen(const TwoCategory& c, std::span<const int> col, int q, int j);

// Key layouts.
//   nerve level p:       [c_0, f_1..f_p]
//   double nerve (p,q):  [c_0..c_p, then per column f^0..f^q, α^1..α^q]
//   W̄nn level n:         [c_0..c_n, then column m = 1..n: f^0..f^{m-1}, α^1..α^{m-1}]
inline int nn_column(int p, int q, int m) { return p + 1 + (m - 1) * (2 * q + 1); }
inline int wnn_column(int n, int m) { return n + 1 + (m - 1) * (m - 1); }

// Face (deg = false) or degeneracy of a double-nerve key; d = 0 horizontal, 1 vertical.
Key nn_structure(const TwoCategory& c, bool deg, int d, int i, int p, int q, const Key& k);
inline int nn_length(int p, int q) { return p + 1 + p * (2 * q + 1); }

std::shared_ptr<SimplicialSet> nerve_category(const CatPtr& a, int n);
std::shared_ptr<BisimplicialSet> double_nerve(const CatPtr& c, int n);
std::shared_ptr<SimplicialSet> wbar_double_nerve(const CatPtr& c, int n);

// W̄(nn C) → W̄nn C, built from the staircase components.
SimplicialMap repackaging_map(const BisimplicialSet& nn, const SSetPtr& wbar_nn, const SSetPtr& wnn);

// (p, a, b) ↦ nn_{a,b}(S_p); box window up to n.
std::shared_ptr<TrisimplicialSet> nerve_simplicial_twocat(const SimplicialTwoCategory& s, int n);

Key map_nn_key(const TwoFunctor& f, const Key& k, int p, int q);
Key map_wnn_key(const TwoFunctor& f, const Key& k, int n);

// Simplicial maps induced by a 2-functor on Diag nn and on W̄nn.
SimplicialMap diag_nn_map(const TwoFunctor& f, const SSetPtr& diag_src, const SSetPtr& diag_tgt);
SimplicialMap wnn_map(const TwoFunctor& f, const SSetPtr& src, const SSetPtr& tgt);

}  // namespace tcat
