#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcat {

// Bad user input: unknown identifiers, malformed files, shape mismatches.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A construction produced a cell or simplex outside its declared range.
class StructureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Accumulated axiom violations. Empty means the checked property holds.
struct Report {
    static constexpr std::size_t kCap = 200;

    std::vector<std::string> issues;
    std::size_t dropped = 0;

    bool ok() const { return issues.empty() && dropped == 0; }
    std::size_t count() const { return issues.size() + dropped; }

    void add(std::string msg) {
        if (issues.size() < kCap)
            issues.push_back(std::move(msg));
        else
            ++dropped;
    }

    void absorb(const Report& other, const std::string& prefix = {}) {
        for (const auto& s : other.issues) add(prefix.empty() ? s : prefix + ": " + s);
        dropped += other.dropped;
    }

    std::string summary() const;
};

// Structural simplex encoding; equal keys mean equal simplices.
using Key = std::vector<std::int32_t>;

struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
        std::uint64_t h = 1469598103934665603ull ^ k.size();
        for (auto v : k) {
            h ^= static_cast<std::uint32_t>(v);
            h *= 1099511628211ull;
            h ^= h >> 29;
        }
        return static_cast<std::size_t>(h);
    }
};

inline std::uint64_t pair_key(int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

// Canonical identifiers for composite cells. User identifiers never contain
// '(' ',' ')' so these encodings are injective.
std::string pair_id(const std::string& a, const std::string& b);
std::string tuple_id(const std::vector<std::string>& parts);
std::string ident_id(const std::string& cell);  // formal identity 2-cell on a promoted 1-cell

bool is_plain_identifier(const std::string& id);

}  // namespace tcat
