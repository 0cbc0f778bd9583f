#pragma once

#include "tcat/grothendieck.hpp"

namespace tcat {

enum class Side { Over, Under };

const char* to_string(Side s);

// F↓c (over) is ∫_A F^*C(−,c); c↓F (under) is ∫_A F^*C(c,−).
// Objects (a,p), 1-cells (u,φ), 2-cells α. Here p and φ are read back as
// cells of C rather than as cells of the promoted hom categories.
struct Comma {
    TwoFunctor F;
    int c = -1;
    Side side = Side::Over;
    DiagPtr rep, pulled;
    GrothPtr groth;

    const TwoCategory& cat() const { return *groth->total; }
    const CatPtr& cat_ptr() const { return groth->total; }

    int object(int a, int p) const;                  // p : 1-cell of C
    int one(int u, int phi, int src, int tgt) const;  // phi : 2-cell of C
    int two(int al, int src1, int tgt1) const;

    int base0(int o) const { return groth->obj_base[o]; }
    int base1(int i) const { return groth->one_base[i]; }
    int base2(int j) const { return groth->two_base[j]; }
    int hom0(int o) const;  // p
    int hom1(int i) const;  // φ
};

using CommaPtr = std::shared_ptr<const Comma>;

CommaPtr comma(const TwoFunctor& F, int c, Side side);

// All fibres c ↦ F↓c (covariant) or c ↦ c↓F (contravariant) as a diagram over C,
// with its Grothendieck construction.
struct CommaFamily {
    TwoFunctor F;
    Side side = Side::Over;
    std::vector<CommaPtr> at;
    std::vector<DiagramMorphism> maps;        // per 1-cell h, on representables
    std::vector<DiagramModification> mods;   // per 2-cell ψ
    DiagPtr diagram;
    GrothPtr total;
};

using FamilyPtr = std::shared_ptr<const CommaFamily>;

FamilyPtr comma_family(const TwoFunctor& F, Side side);
// h_* : F↓c → F↓c' (over) or h^* : c'↓F → c↓F (under)
TwoFunctor induced_fibre_functor(const CommaFamily& fam, int h);
// ψ_* : h_* ⇒ h'_*, components (1_a, ψ∘1_p); under, (1_a, 1_p∘ψ)
TwoNatural induced_fibre_transformation(const CommaFamily& fam, int psi);
DiagPtr fibre_diagram(const TwoFunctor& F, Side side);

// Π : ∫(F↓−) → A with section ι and the oplax ιΠ ⇒ 1.
struct Projections {
    FamilyPtr fam;
    std::vector<TwoFunctor> pi;  // F↓c → A, per c
    TwoFunctor Pi, iota;
    OplaxTransformation witness;
};
Projections projections(const TwoFunctor& F);

// For Γ : D ⇒ E, c, y ∈ E_c:
//   over:  R : ∫Γ↓(c,y) → Γ_c↓y, section c̄, oplax 1 ⇒ c̄R (D, E covariant)
//   under: R : (c,y)↓∫Γ → y↓Γ_c, section c̄, oplax c̄R ⇒ 1 (D, E contravariant)
struct Retraction {
    Side side = Side::Over;
    int c = -1, y = -1;
    GrothPtr gd, ge;
    TwoFunctor int_gamma;
    CommaPtr big, small;
    TwoFunctor R, cbar;
    OplaxTransformation witness;
};
Retraction retraction_R(const DiagramMorphism& gamma, int c, int y);

// For F : A → C, D over C, z ∈ D_c:
//   D contravariant: π̄ : F̄↓(c,z) → F↓c, section i_z, oplax 1 ⇒ i_z π̄
//   D covariant:     π̄ : (c,z)↓F̄ → c↓F, section i_z, oplax i_z π̄ ⇒ 1
// j_z : F↓c → ∫_A F^*D (resp. c↓F → ∫_A F^*D).
struct Section {
    Side side = Side::Over;
    GrothPtr gd;
    BaseChange bc;
    CommaPtr big, small;
    TwoFunctor jz, iz, pibar;
    OplaxTransformation witness;
};
Section section_jz_iz(const TwoFunctor& F, const DiagPtr& d, int c, int z);

// For a commuting square T∘G = H∘F (G : A → D, F : A → B, H : B → C, T : D → C)
// and d ∈ D: F̄ : G↓d → H↓Td (over) or d↓G → Td↓H (under), (a,p) ↦ (Fa, Tp).
TwoFunctor comma_base_change(const TwoFunctor& G, const TwoFunctor& H, const TwoFunctor& T, const TwoFunctor& F,
                             int d, Side side);
TwoFunctor comma_base_change(const Comma& from, const Comma& to, const TwoFunctor& T, const TwoFunctor& F);

// Cellwise identities around these constructions: retraction equations,
// witness axioms, commuting squares with the projections.
Report check_projections(const Projections& p);
Report check_retraction(const Retraction& r);
Report check_section(const Section& s);

}  // namespace tcat
