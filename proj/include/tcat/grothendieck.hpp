#pragma once

#include "tcat/diagram.hpp"

namespace tcat {

// ∫_C D with component maps back to the base and the fibres. Cells are
// identified by their pair of components plus endpoints; identifiers are
// pair_id(base, fibre), widened with the endpoints only where a pair repeats.
struct Grothendieck {
    DiagPtr diagram;
    CatPtr total;
    std::vector<int> obj_base, obj_fibre;
    std::vector<int> one_base, one_fibre;
    std::vector<int> two_base, two_fibre;

    int object(int a, int x) const;
    int one(int f, int u, int src, int tgt) const;      // src/tgt: objects of total
    int two(int al, int phi, int src1, int tgt1) const;  // src1/tgt1: 1-cells of total
    // 2-cell over α whose fibre part is an identity, or -1 when there is none.
    int flat_two(int al, int src1, int tgt1) const;

    std::unordered_map<std::uint64_t, int> obj_index;
    std::unordered_map<Key, int, KeyHash> one_index, two_index;
};

using GrothPtr = std::shared_ptr<const Grothendieck>;

GrothPtr grothendieck(const DiagPtr& d);

TwoFunctor projection(const Grothendieck& g);  // ∫D → C
// ∫Γ : ∫D → ∫E
TwoFunctor grothendieck_transformation(const DiagramMorphism& gamma, const Grothendieck& src, const Grothendieck& tgt);
// ∫m : ∫Γ ⇒ ∫Γ'
TwoNatural grothendieck_modification(const DiagramModification& m, const Grothendieck& src, const Grothendieck& tgt);
// c̄ : D_c → ∫D
TwoFunctor fibre_embedding(const Grothendieck& g, int c);

struct BaseChange {
    DiagPtr pulled;        // F^*D
    GrothPtr groth_pulled;  // ∫F^*D
    TwoFunctor lift;       // F̄ : ∫F^*D → ∫D
};
BaseChange base_change(const TwoFunctor& F, const DiagPtr& d, const Grothendieck& gd);
// π∘F̄ = F∘π cellwise, and ∫F^*D → A ×_C ∫D bijective on cells.
Report check_base_change_square(const TwoFunctor& F, const BaseChange& bc, const Grothendieck& gd);

}  // namespace tcat
