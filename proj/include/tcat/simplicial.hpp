#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "tcat/common.hpp"

namespace tcat {

// Raised when a construction would exceed the configured simplex budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void set_simplex_budget(std::size_t n);
std::size_t simplex_budget();

// Truncated K-fold simplicial set. Levels are indexed by K-tuples and only
// the levels of an explicit window are populated; structure maps leaving the
// window are recorded as -1. Simplices carry structural keys.
template <int K>
class MultiSimplicial {
public:
    using Index = std::array<int, K>;

    struct Level {
        std::vector<Key> keys;
        std::unordered_map<Key, int, KeyHash> index;
        // face[d][i][s], degen[d][i][s]
        std::array<std::vector<std::vector<int>>, K> face, degen;

        int size() const { return static_cast<int>(keys.size()); }
        int find(const Key& k) const {
            auto it = index.find(k);
            return it == index.end() ? -1 : it->second;
        }
    };

    std::string name;
    int bound = 0;
    std::map<Index, Level> levels;

    bool has(const Index& ix) const { return levels.count(ix) != 0; }
    const Level& level(const Index& ix) const;
    Level& level_mut(const Index& ix);
    int size(const Index& ix) const {
        auto it = levels.find(ix);
        return it == levels.end() ? 0 : it->second.size();
    }
    const Key& key(const Index& ix, int s) const { return level(ix).keys[s]; }
    int find(const Index& ix, const Key& k) const { return level(ix).find(k); }
    int face(int d, int i, const Index& ix, int s) const { return level(ix).face[d][i][s]; }
    int degen(int d, int i, const Index& ix, int s) const { return level(ix).degen[d][i][s]; }
    std::size_t total() const {
        std::size_t t = 0;
        for (const auto& [ix, l] : levels) t += l.keys.size();
        return t;
    }
};

using SimplicialSet = MultiSimplicial<1>;
using BisimplicialSet = MultiSimplicial<2>;
using TrisimplicialSet = MultiSimplicial<3>;
template <int K>
using MultiPtr = std::shared_ptr<const MultiSimplicial<K>>;
using SSetPtr = MultiPtr<1>;
using BiPtr = MultiPtr<2>;
using TriPtr = MultiPtr<3>;

// Recipe for a multi-simplicial set given on keys.
template <int K>
struct MultiSpec {
    using Index = std::array<int, K>;
    std::string name;
    int bound = 0;
    std::vector<Index> window;
    std::function<std::vector<Key>(const Index&)> enumerate;
    std::function<Key(int d, int i, const Index&, const Key&)> face, degen;
};

// Populates every window level, then tabulates faces and degeneracies whose
// targets lie in the window. A structure map producing an unknown key throws.
template <int K>
std::shared_ptr<MultiSimplicial<K>> build_multi(const MultiSpec<K>& spec);

template <int K>
std::vector<std::array<int, K>> box_window(int n);
template <int K>
std::vector<std::array<int, K>> sum_window(int n);

// All simplicial identities within each direction and the commutation of
// structure maps across directions, wherever every level involved is present.
template <int K>
Report check_simplicial_identities(const MultiSimplicial<K>& x);

template <int K>
std::shared_ptr<SimplicialSet> diag(const MultiSimplicial<K>& x);

// Artin–Mazur codiagonal, levels 0..n; needs every (p,q) with p+q <= n.
std::shared_ptr<SimplicialSet> wbar(const BisimplicialSet& b, int n);
// W̄ applied to the last two directions for each fixed first index; the
// result has levels (p,m) with p+m <= n.
std::shared_ptr<BisimplicialSet> wbar_inner(const TrisimplicialSet& x, int n);
// (p,m) ↦ X_{p,m,m}.
std::shared_ptr<BisimplicialSet> diag_inner(const TrisimplicialSet& x, int n);

struct SimplicialMap {
    std::string name;
    SSetPtr src, tgt;
    std::vector<std::vector<int>> map;  // per level
};

Report check_simplicial_map(const SimplicialMap& f);
// Levelwise bijection on every level of the source.
bool verify_iso(const SimplicialMap& f);
Report iso_report(const SimplicialMap& f);

SimplicialMap identity_map(const SSetPtr& x);
// Alexander–Whitney comparison diag(B) → wbar(B); src/tgt must be those two.
SimplicialMap aw_map(const BisimplicialSet& b, const SSetPtr& diag_b, const SSetPtr& wbar_b);

}  // namespace tcat
