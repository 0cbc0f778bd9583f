#pragma once

#include <map>
#include <optional>

#include <json.hpp>

#include "tcat/diagram.hpp"
#include "tcat/simplicial.hpp"

namespace tcat {

using Json = nlohmann::ordered_json;

template <class T>
struct Named {
    std::vector<std::string> order;
    std::map<std::string, T> items;

    bool has(const std::string& n) const { return items.count(n) != 0; }
    const T& at(const std::string& n) const {
        auto it = items.find(n);
        if (it == items.end()) throw InputError("unknown identifier '" + n + "'");
        return it->second;
    }
    void put(const std::string& n, T v) {
        if (!has(n)) order.push_back(n);
        items[n] = std::move(v);
    }
};

// Fully resolved set of named objects read from one manifest and its includes.
struct Manifest {
    std::string name;
    std::optional<int> truncation;
    std::vector<std::string> suites;
    Named<CatPtr> cats;
    Named<TwoFunctor> functors;
    Named<DiagPtr> diagrams;
    Named<DiagramMorphism> transformations;
    // construction documents for entries not given cell by cell
    std::map<std::string, Json> recipe;
    // diagrams registered as a by-product of another entry; not serialized
    std::vector<std::string> derived;
    Json inject = Json::array();
};

// Throws InputError listing every problem found, each prefixed by file:line.
Manifest parse_manifest(const std::string& path);
Manifest parse_manifest_text(const std::string& text, const std::string& label, const std::string& dir = ".");

// Self-contained manifest document; includes are inlined.
Json serialize(const Manifest& m);
Json serialize_cat(const TwoCategory& c);
Json serialize_map(const TwoFunctor& f);
Report compare_manifests(const Manifest& a, const Manifest& b);

// Single-cell corruptions addressed by the name of a built object. Used to
// check that the verification suites notice a broken fixture.
//   face / degen : {"level": [..], "dir": d, "index": i, "simplex": s}
//   map          : {"level": n, "simplex": s}
//   on0/on1/on2  : {"cell": id}                 (functors)
//   comp / nat   : {"cell": id}                 (oplax transformations)
//   component    : {"at": obj, "dim": 0|1|2, "cell": id}   (transformations)
// "index" may replace "cell". An optional "to" names the new value; without it
// the entry moves to the next cell.
class Injector {
public:
    Injector() = default;
    explicit Injector(const Json& specs);

    bool wants(const std::string& target) const;
    void apply(const std::string& target, TwoFunctor& f);
    void apply(const std::string& target, OplaxTransformation& t);
    void apply(const std::string& target, SimplicialMap& m);
    void apply(const std::string& target, DiagramMorphism& g);
    template <int K>
    MultiPtr<K> apply(const std::string& target, const MultiPtr<K>& x);

    // Targets never seen by apply().
    std::vector<std::string> unused() const;

private:
    std::vector<Json> specs_;
    std::vector<bool> used_;
};

}  // namespace tcat
