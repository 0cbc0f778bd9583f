#pragma once

#include <map>

#include "tcat/grothendieck.hpp"
#include "tcat/nerves.hpp"

namespace tcat {

// Hom 2-categories C(a,b) promoted to 2-categories, with index translation.
//   object i  <-> 1-cell ones(a,b)[i]
//   1-cell j  <-> 2-cell twos_between(a,b)[j]; the 2-cell j is its identity
class HomTable {
public:
    explicit HomTable(CatPtr c) : c_(std::move(c)) {}

    struct Hom {
        CatPtr cat;
        std::vector<int> ones, twos;  // hom index -> cell of C
        std::unordered_map<int, int> obj_of, arrow_of;  // cell of C -> hom index
    };
    const Hom& get(int a, int b) const;
    const TwoCategory& base() const { return *c_; }
    const CatPtr& base_ptr() const { return c_; }

private:
    CatPtr c_;
    mutable std::map<std::pair<int, int>, Hom> cache_;
};

// Level p of hocolim: a coproduct over object strings c_0..c_p of products.
//   covariant:      D_{c_0} × C(c_0,c_1) × ... × C(c_{p-1},c_p)
//   contravariant:  C(c_0,c_1) × ... × C(c_{p-1},c_p) × D_{c_p}
// Summands with an empty factor are left out.
struct HocolimLevel {
    int p = 0;
    bool covariant = true;
    CatPtr cat;
    std::vector<Key> chains;
    std::vector<std::vector<CatPtr>> factors;
    std::array<std::vector<int>, 3> offset;
    std::map<Key, int> summand_of;

    struct Cell {
        int summand = -1;
        std::vector<int> comp;
    };
    Cell decode(int dim, int idx) const;
    int encode(int dim, int summand, const std::vector<int>& comp) const;
    int fibre_factor() const { return covariant ? 0 : p; }
};

struct Hocolim {
    DiagPtr diagram;
    std::shared_ptr<HomTable> homs;
    SimplicialTwoCategory s;
    std::vector<HocolimLevel> levels;
};

using HocolimPtr = std::shared_ptr<const Hocolim>;

HocolimPtr hocolim(const DiagPtr& d, int n);

// Γ_* and m_*, level by level.
std::vector<TwoFunctor> hocolim_map(const DiagramMorphism& gamma, const Hocolim& src, const Hocolim& tgt);
std::vector<TwoNatural> hocolim_modification(const DiagramModification& m, const Hocolim& src, const Hocolim& tgt);
// Levelwise functor axioms plus commutation with every face and degeneracy.
Report check_hocolim_map(const std::vector<TwoFunctor>& f, const Hocolim& src, const Hocolim& tgt);
Report check_hocolim_modification(const std::vector<TwoNatural>& m, const Hocolim& src, const Hocolim& tgt);

// Diag of the trisimplicial nerve (p,a,b) ↦ nn_{a,b}(S_p).
SSetPtr diag_nn(const SimplicialTwoCategory& s, int n);
SimplicialMap diag_nn_family_map(const std::string& name, const std::vector<TwoFunctor>& family,
                                 const SSetPtr& src, const SSetPtr& tgt);

// For a constant diagram over a 1-category: level p → product(fibre, discrete N_p C).
TwoFunctor constant_level_comparison(const Hocolim& h, int p, const SimplicialSet& nerve);

// E with levels (p,n,q), p + max(n,q) <= N. Key: double-nerve (p,q) key of C,
// then x_0..x_p, then per column m: u^0..u^n, φ^1..φ^n with u^k : f^q_{m*}x_{m-1} → x_m.
std::shared_ptr<TrisimplicialSet> build_E(const DiagPtr& d, int n);
inline int e_object(int p, int q, int m) { return nn_length(p, q) + m; }
inline int e_column(int p, int n, int q, int m) { return nn_length(p, q) + p + 1 + (m - 1) * (2 * n + 1); }

struct IsoResult {
    SimplicialMap map;
    Report report;  // construction problems (lookups that failed, non-injective keys)
};

// W̄([p] ↦ Diag E_p) → W̄([p] ↦ W̄nn hocolim_p)
IsoResult iso_112(const DiagPtr& d, int n);
// W̄([p] ↦ W̄ E_p) → W̄nn ∫D
IsoResult iso_114(const DiagPtr& d, int n);

// Covariant replacement of a contravariant diagram: over C^coop with fibres D_c^coop.
DiagPtr dual_diagram(const DiagPtr& d);
// ∫ D^∨ ≅ (∫ D)^coop by identifiers.
Report check_dual_grothendieck(const DiagPtr& d, const DiagPtr& dual);
// hocolim(D^∨)_p ≅ (hocolim D)_p^coop with reversed strings, d_i ↔ d_{p-i}, s_i ↔ s_{p-i}.
Report check_dual_hocolim(const Hocolim& h, const Hocolim& dual);

// The bisimplicial set (p,m) ↦ W̄nn(S_p)_m, window p + m <= n.
std::shared_ptr<BisimplicialSet> wnn_simplicial_twocat(const SimplicialTwoCategory& s, int n);

}  // namespace tcat
