#pragma once

#include <gmpxx.h>

#include "tcat/simplicial.hpp"

namespace tcat {

using Integer = mpz_class;

// Column-major sparse integer matrix.
struct SparseMatrix {
    int rows = 0, cols = 0;
    std::vector<std::vector<std::pair<int, long>>> col;  // sorted by row
};

// Normalized chains: basis in degree n = nondegenerate n-simplices.
struct ChainComplex {
    std::string name;
    int top = -1;                            // highest degree present
    std::vector<std::vector<int>> basis;     // basis element -> simplex
    std::vector<std::vector<int>> position;  // simplex -> basis element, or -1 if degenerate
    std::vector<SparseMatrix> boundary;      // boundary[n] : C_n → C_{n-1}; boundary[0] is 0 × n_0

    int rank(int n) const { return n < 0 || n > top ? 0 : static_cast<int>(basis[n].size()); }
};

ChainComplex normalized_chain_complex(const SimplicialSet& x);
Report check_boundary_squared(const ChainComplex& cc);

// H_i = ℤ^betti ⊕ ⊕ ℤ/t. Only degrees i ≤ top − 1 are determined by a
// truncated complex; homology() rejects the rest.
struct HomologyResult {
    int degree = 0;
    int betti = 0;
    std::vector<Integer> torsion;
    int valid_upto = 0;

    std::string str() const;
    bool operator==(const HomologyResult& o) const { return betti == o.betti && torsion == o.torsion; }
};

HomologyResult homology(const ChainComplex& cc, int i);
std::vector<HomologyResult> homology_upto(const ChainComplex& cc, int k);

// Nonzero invariant factors of an integer matrix, in divisibility order.
std::vector<Integer> invariant_factors(const SparseMatrix& m);

// f_# in degree n on normalized chains (degenerate images go to 0).
SparseMatrix chain_map(const SimplicialMap& f, const ChainComplex& src, const ChainComplex& tgt, int n);
// f_* : H_i(src)/torsion → H_i(tgt)/torsion in bases read off Smith forms.
// Dense; BudgetExceeded above a few hundred basis elements.
std::vector<std::vector<Integer>> induced_homology_map(const SimplicialMap& f, const ChainComplex& src,
                                                       const ChainComplex& tgt, int i);
// f_* an isomorphism in every degree ≤ k: the mapping cone is acyclic through
// degree k and H_k agrees on both sides. detail receives the first failure.
bool is_homology_iso_upto(const SimplicialMap& f, const ChainComplex& src, const ChainComplex& tgt, int k,
                          std::string* detail = nullptr);

}  // namespace tcat
