#include "tcat/common.hpp"

namespace tcat {

std::string Report::summary() const {
    if (ok()) return "ok";
    std::string s = std::to_string(count()) + " issue(s); first: " + issues.front();
    return s;
}

std::string pair_id(const std::string& a, const std::string& b) {
    std::string s;
    s.reserve(a.size() + b.size() + 3);
    s += '(';
    s += a;
    s += ',';
    s += b;
    s += ')';
    return s;
}

std::string tuple_id(const std::vector<std::string>& parts) {
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ',';
        s += parts[i];
    }
    s += ')';
    return s;
}

std::string ident_id(const std::string& cell) { return "1<" + cell + ">"; }

bool is_plain_identifier(const std::string& id) {
    if (id.empty()) return false;
    for (char c : id) {
        if (c == '(' || c == ')' || c == ',' || c == '<' || c == '>' || c == '"' ||
            static_cast<unsigned char>(c) < 0x20)
            return false;
    }
    return true;
}

}  // namespace tcat
