#pragma once

#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "tcat/common.hpp"

namespace tcat {

// Finite strict 2-category with complete composition tables. Cells are
// addressed by dense indices; identifiers are opaque strings.
class TwoCategory {
public:
    struct Cell {
        std::string id;
        int src = -1;
        int tgt = -1;
    };
    // result = second ∘ first (hcomp) or second · first (vcomp)
    struct Entry {
        int second;
        int first;
        int result;
    };

    const std::string& name() const { return name_; }

    int n0() const { return static_cast<int>(objects_.size()); }
    int n1() const { return static_cast<int>(ones_.size()); }
    int n2() const { return static_cast<int>(twos_.size()); }

    const std::string& obj(int i) const { return objects_[i]; }
    const Cell& one(int i) const { return ones_[i]; }
    const Cell& two(int i) const { return twos_[i]; }

    int find0(const std::string& id) const;
    int find1(const std::string& id) const;
    int find2(const std::string& id) const;

    int id1(int o) const { return id1_[o]; }
    int id2(int f) const { return id2_[f]; }

    // Table lookups; the plain versions throw StructureError when undefined.
    int try_comp1(int g, int f) const;
    int try_vcomp(int b, int a) const;
    int try_hcomp(int b, int a) const;
    int comp1(int g, int f) const;
    int vcomp(int b, int a) const;
    int hcomp(int b, int a) const;

    // Whiskering: 1_g ∘ α and β ∘ 1_f.
    int lw(int g, int a) const { return hcomp(id2(g), a); }
    int rw(int b, int f) const { return hcomp(b, id2(f)); }

    // Source/target objects of a 2-cell.
    int src0(int a) const { return ones_[twos_[a].src].src; }
    int tgt0(int a) const { return ones_[twos_[a].src].tgt; }

    const std::vector<int>& ones(int a, int b) const;   // 1-cells a → b
    const std::vector<int>& twos(int f, int g) const;   // 2-cells f ⇒ g
    const std::vector<int>& ones_out(int a) const { return out1_[a]; }
    const std::vector<int>& ones_in(int b) const { return in1_[b]; }
    const std::vector<int>& twos_out(int f) const { return out2_[f]; }
    const std::vector<int>& twos_in(int g) const { return in2_[g]; }
    // all 2-cells whose 1-cells go a → b
    const std::vector<int>& twos_between(int a, int b) const;

    const std::vector<Entry>& comp1_table() const { return t_comp1_; }
    const std::vector<Entry>& vcomp_table() const { return t_vcomp_; }
    const std::vector<Entry>& hcomp_table() const { return t_hcomp_; }

    // Table entries rejected at construction (shape mismatch, conflicts, missing identities).
    const std::vector<std::string>& malformed() const { return malformed_; }

    std::size_t total_cells() const { return objects_.size() + ones_.size() + twos_.size(); }

private:
    friend class TwoCategoryBuilder;

    std::string name_;
    std::vector<std::string> objects_;
    std::vector<Cell> ones_, twos_;
    std::vector<int> id1_, id2_;
    std::unordered_map<std::string, int> idx0_, idx1_, idx2_;
    std::unordered_map<std::uint64_t, int> comp1_, vcomp_, hcomp_;
    std::vector<Entry> t_comp1_, t_vcomp_, t_hcomp_;
    std::unordered_map<std::uint64_t, std::vector<int>> hom1_, hom2_, between2_;
    std::vector<std::vector<int>> out1_, in1_, out2_, in2_;
    std::vector<std::string> malformed_;
};

using CatPtr = std::shared_ptr<const TwoCategory>;

class TwoCategoryBuilder {
public:
    explicit TwoCategoryBuilder(std::string name);

    int add_object(const std::string& id);
    int add_one(const std::string& id, int src, int tgt);
    int add_two(const std::string& id, int src, int tgt);

    int object(const std::string& id) const;  // throws InputError when unknown
    int one(const std::string& id) const;
    int two(const std::string& id) const;
    bool has_object(const std::string& id) const { return idx0_.count(id) != 0; }
    bool has_one(const std::string& id) const { return idx1_.count(id) != 0; }
    bool has_two(const std::string& id) const { return idx2_.count(id) != 0; }

    int n0() const { return static_cast<int>(objects_.size()); }
    int n1() const { return static_cast<int>(ones_.size()); }
    int n2() const { return static_cast<int>(twos_.size()); }
    const TwoCategory::Cell& one_cell(int i) const { return ones_[i]; }
    const TwoCategory::Cell& two_cell(int i) const { return twos_[i]; }

    void set_id1(int o, int f);
    void set_id2(int f, int a);

    void put_comp1(int g, int f, int r) { raw_comp1_.push_back({g, f, r}); }
    void put_vcomp(int b, int a, int r) { raw_vcomp_.push_back({b, a, r}); }
    void put_hcomp(int b, int a, int r) { raw_hcomp_.push_back({b, a, r}); }
    // Adds every composite with an identity factor (needs identities set).
    void put_unit_entries();

    // Fills every composition table over all composable pairs using the
    // given formulas (indices refer to cells already added).
    void complete(const std::function<int(int, int)>& comp1,
                  const std::function<int(int, int)>& vcomp,
                  const std::function<int(int, int)>& hcomp);

    std::shared_ptr<TwoCategory> build();

private:
    std::string name_;
    std::vector<std::string> objects_;
    std::vector<TwoCategory::Cell> ones_, twos_;
    std::vector<int> id1_, id2_;
    std::unordered_map<std::string, int> idx0_, idx1_, idx2_;
    std::vector<TwoCategory::Entry> raw_comp1_, raw_vcomp_, raw_hcomp_;
};

// Empty report iff C is a strict 2-category with total, well-typed tables.
Report validate(const TwoCategory& c);

// Cellwise identity of two 2-categories (same identifiers, shapes and tables).
Report compare_cells(const TwoCategory& a, const TwoCategory& b);

CatPtr terminal();
CatPtr opposite(const CatPtr& c);
// Both 1-cells and 2-cells reversed; cell indices are preserved.
CatPtr co_opposite(const CatPtr& c);
CatPtr product(const std::vector<CatPtr>& factors, const std::string& name = {});
CatPtr hom_category(const CatPtr& c, int a, int b);
// Coproduct; each summand's identifiers are prefixed by its tag as a pair.
CatPtr coproduct(const std::vector<std::pair<std::string, CatPtr>>& summands, const std::string& name);
// Same cells and tables under new identifiers; indices are preserved.
CatPtr relabel(const CatPtr& c, const std::function<std::string(const std::string&)>& rename, const std::string& name);
// Every 2-cell an identity (a 1-category viewed as a 2-category).
bool is_locally_discrete(const TwoCategory& c);

}  // namespace tcat
