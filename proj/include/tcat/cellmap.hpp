#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "tcat/twocat.hpp"

namespace tcat {

struct TwoFunctor {
    std::string name;
    CatPtr src, tgt;
    std::vector<int> on0, on1, on2;

    int operator()(int dim, int cell) const { return dim == 0 ? on0[cell] : dim == 1 ? on1[cell] : on2[cell]; }
};

// Strict 2-natural transformation F ⇒ G: components η_a : Fa → Ga.
struct TwoNatural {
    std::string name;
    TwoFunctor F, G;
    std::vector<int> comp;
};

// Direction of the naturality 2-cells of a non-strict transformation.
enum class OplaxDirection {
    TargetFirst,  // η_f : η_b ∘ Ff ⇒ Gf ∘ η_a
    SourceFirst   // η_f : Gf ∘ η_a ⇒ η_b ∘ Ff
};

struct OplaxTransformation {
    std::string name;
    TwoFunctor F, G;
    std::vector<int> comp;  // per object of the source
    std::vector<int> nat;   // per 1-cell of the source
    OplaxDirection dir = OplaxDirection::SourceFirst;
};

struct Modification {
    std::string name;
    TwoNatural S, T;
    std::vector<int> comp;  // per object a: 2-cell S_a ⇒ T_a
};

TwoFunctor identity_functor(const CatPtr& c);
TwoFunctor compose(const TwoFunctor& G, const TwoFunctor& F);  // G ∘ F
TwoNatural identity_natural(const TwoFunctor& F);

// Typing and strict preservation of identities and all three compositions.
Report check_functor(const TwoFunctor& F);
Report check_natural(const TwoNatural& t);
Report check_oplax(const OplaxTransformation& t);
Report check_modification(const Modification& m);

using CellMap = std::variant<const TwoFunctor*, const TwoNatural*, const OplaxTransformation*, const Modification*>;
Report check_cell_map(const CellMap& m);

// Pointwise equality (same source/target identifiers and same cell images).
Report compare_functors(const TwoFunctor& F, const TwoFunctor& G);
Report compare_naturals(const TwoNatural& s, const TwoNatural& t);
// Bijective on every dimension and a valid 2-functor.
bool is_isomorphism(const TwoFunctor& F);

// Builds a functor from per-cell maps given on identifiers; unknown targets throw StructureError.
TwoFunctor functor_by_ids(const std::string& name, const CatPtr& src, const CatPtr& tgt,
                          const std::function<std::string(const std::string&)>& f0,
                          const std::function<std::string(const std::string&)>& f1,
                          const std::function<std::string(const std::string&)>& f2);

}  // namespace tcat
