#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tcat/cellmap.hpp"

namespace tcat {

enum class Variance { Covariant, Contravariant };

const char* to_string(Variance v);

// Strict 2-functor C → 2Cat (or C^op → 2Cat) given cell by cell.
// Covariant: on1[f] is f_* : D_a → D_b.  Contravariant: on1[f] is f^* : D_b → D_a.
// on2[α] for α : f ⇒ g is α_* : f_* ⇒ g_* (resp. α^* : f^* ⇒ g^*).
struct TwoDiagram {
    std::string name;
    CatPtr base;
    Variance var = Variance::Covariant;
    std::vector<CatPtr> fibre;
    std::vector<TwoFunctor> on1;
    std::vector<TwoNatural> on2;

    bool covariant() const { return var == Variance::Covariant; }
};

using DiagPtr = std::shared_ptr<const TwoDiagram>;

Report check_diagram(const TwoDiagram& d);

// 2-transformation Γ : D ⇒ E between diagrams of the same variance on the same base.
struct DiagramMorphism {
    std::string name;
    DiagPtr D, E;
    std::vector<TwoFunctor> comp;  // Γ_c : D_c → E_c
};

struct DiagramModification {
    std::string name;
    DiagramMorphism S, T;
    std::vector<TwoNatural> comp;  // m_c : S_c ⇒ T_c
};

Report check_morphism(const DiagramMorphism& g);
Report check_modification(const DiagramModification& m);

DiagramMorphism identity_morphism(const DiagPtr& d);
DiagramMorphism compose(const DiagramMorphism& g2, const DiagramMorphism& g1);  // g2 ∘ g1

DiagPtr constant_diagram(const CatPtr& base, const CatPtr& fibre, Variance var, const std::string& name = {});
// F^*D over A, for F : A → C and D over C.
DiagPtr pullback(const TwoFunctor& F, const DiagPtr& d);
// Hom 2-functors with hom categories promoted to 2-categories.
DiagPtr representable_into(const CatPtr& c, int obj);   // C(−,c), contravariant
DiagPtr representable_from(const CatPtr& c, int obj);   // C(c,−), covariant
// A 1-cell h : c → c' acts on representables: C(−,c) ⇒ C(−,c') by
// postcomposition, C(c',−) ⇒ C(c,−) by precomposition. `from`/`to` must be
// the representables in that order.
DiagramMorphism representable_into_map(const DiagPtr& from, const DiagPtr& to, int h);
DiagramMorphism representable_from_map(const DiagPtr& from, const DiagPtr& to, int h);
// ψ : h ⇒ h' between the maps above, with components ψ∘1_p (into) and 1_p∘ψ (from).
DiagramModification representable_into_mod(const DiagramMorphism& s, const DiagramMorphism& t, int psi);
DiagramModification representable_from_mod(const DiagramMorphism& s, const DiagramMorphism& t, int psi);
// F^*Γ between given pullbacks F^*D and F^*E.
DiagramMorphism pullback(const TwoFunctor& F, const DiagramMorphism& g, const DiagPtr& fd, const DiagPtr& fe);
DiagramModification pullback(const TwoFunctor& F, const DiagramModification& m, const DiagramMorphism& s,
                             const DiagramMorphism& t);
// Γ : D ⇒ D' where D' has every fibre renamed (ids get `suffix`); each Γ_c
// is an isomorphism that keeps cell indices.
DiagramMorphism relabel_diagram(const DiagPtr& d, const std::string& suffix);
// Collapse Γ : D ⇒ pt to the constant terminal diagram.
DiagramMorphism collapse_to_point(const DiagPtr& d);

}  // namespace tcat
