#include "tcat/io.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace tcat {

namespace {

namespace fs = std::filesystem;

// ---------------------------------------------------------------- positions

struct Cursor {
    int line = 1;
    int last = 1;  // line of the last non-blank character consumed
};

class CountingIt {
public:
    using iterator_category = std::input_iterator_tag;
    using value_type = char;
    using difference_type = std::ptrdiff_t;
    using pointer = const char*;
    using reference = const char&;

    CountingIt(const char* p, Cursor* c) : p_(p), c_(c) {}
    reference operator*() const { return *p_; }
    CountingIt& operator++() {
        const char ch = *p_;
        if (ch == '\n')
            ++c_->line;
        else if (!std::isspace(static_cast<unsigned char>(ch)))
            c_->last = c_->line;
        ++p_;
        return *this;
    }
    CountingIt operator++(int) {
        auto t = *this;
        ++*this;
        return t;
    }
    bool operator==(const CountingIt& o) const { return p_ == o.p_; }
    bool operator!=(const CountingIt& o) const { return p_ != o.p_; }

private:
    const char* p_;
    Cursor* c_;
};

std::string escape(const std::string& k) {
    std::string s;
    for (char c : k) {
        if (c == '~')
            s += "~0";
        else if (c == '/')
            s += "~1";
        else
            s += c;
    }
    return s;
}

// Records the line of every value under its JSON pointer.
class LineIndex : public nlohmann::json_sax<Json> {
public:
    LineIndex(Cursor* c, std::map<std::string, int>* out) : c_(c), out_(out) {}

    bool null() override { return value(); }
    bool boolean(bool) override { return value(); }
    bool number_integer(number_integer_t) override { return value(); }
    bool number_unsigned(number_unsigned_t) override { return value(); }
    bool number_float(number_float_t, const string_t&) override { return value(); }
    bool string(string_t&) override { return value(); }
    bool binary(binary_t&) override { return value(); }
    bool start_object(std::size_t) override { return open(false); }
    bool start_array(std::size_t) override { return open(true); }
    bool key(string_t& k) override {
        stack_.back().key = k;
        return true;
    }
    bool end_object() override { return close(); }
    bool end_array() override { return close(); }
    bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) override { return false; }

private:
    struct Frame {
        bool array;
        std::size_t idx = 0;
        std::string key;
    };

    std::string here() const {
        std::string p;
        for (const auto& f : stack_) p += "/" + (f.array ? std::to_string(f.idx) : escape(f.key));
        return p;
    }
    void advance() {
        if (!stack_.empty() && stack_.back().array) ++stack_.back().idx;
    }
    bool value() {
        out_->emplace(here(), c_->last);
        advance();
        return true;
    }
    bool open(bool array) {
        out_->emplace(here(), c_->last);
        stack_.push_back({array, 0, {}});
        return true;
    }
    bool close() {
        stack_.pop_back();
        advance();
        return true;
    }

    Cursor* c_;
    std::map<std::string, int>* out_;
    std::vector<Frame> stack_;
};

struct Doc {
    std::string file;
    Json j;
    std::map<std::string, int> lines;

    std::string at(std::string ptr) const {
        for (;;) {
            auto it = lines.find(ptr);
            if (it != lines.end()) return file + ":" + std::to_string(it->second);
            if (ptr.empty()) return file;
            ptr = ptr.substr(0, ptr.rfind('/'));
        }
    }
};

using DocPtr = std::shared_ptr<const Doc>;

DocPtr load_doc(const std::string& text, const std::string& label) {
    auto d = std::make_shared<Doc>();
    d->file = label;
    try {
        d->j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        int line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n')
                ++line, col = 1;
            else
                ++col;
        }
        std::string msg = e.what();
        auto p = msg.find("syntax error");
        throw InputError(label + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                         (p == std::string::npos ? msg : msg.substr(p)));
    }
    Cursor cur;
    LineIndex idx(&cur, &d->lines);
    Json::sax_parse(CountingIt(text.data(), &cur), CountingIt(text.data() + text.size(), &cur), &idx);
    return d;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path + ": cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------- nodes

// A name that may be defined by a later document.
class Unresolved : public InputError {
public:
    using InputError::InputError;
};

struct Node {
    DocPtr doc;
    const Json* j;
    std::string ptr;

    std::string where() const { return doc->at(ptr) + " (" + (ptr.empty() ? "/" : ptr) + ")"; }
    [[noreturn]] void fail(const std::string& m) const { throw InputError(where() + ": " + m); }

    bool has(const std::string& k) const { return j->is_object() && j->contains(k); }
    Node operator[](const std::string& k) const {
        if (!j->is_object()) fail("expected an object");
        auto it = j->find(k);
        if (it == j->end()) fail("missing field '" + k + "'");
        return {doc, &*it, ptr + "/" + escape(k)};
    }
    Node operator[](std::size_t i) const {
        if (!j->is_array() || i >= j->size()) fail("expected an array with at least " + std::to_string(i + 1) + " entries");
        return {doc, &(*j)[i], ptr + "/" + std::to_string(i)};
    }
    std::string str() const {
        if (!j->is_string()) fail("expected a string");
        return j->get<std::string>();
    }
    std::string ident() const {
        auto s = str();
        if (!is_plain_identifier(s)) fail("'" + s + "' is not a plain identifier");
        return s;
    }
    int integer() const {
        if (!j->is_number_integer()) fail("expected an integer");
        return j->get<int>();
    }
    std::vector<Node> items() const {
        if (!j->is_array()) fail("expected an array");
        std::vector<Node> out;
        for (std::size_t i = 0; i < j->size(); ++i) out.push_back((*this)[i]);
        return out;
    }
    std::vector<std::pair<std::string, Node>> fields() const {
        if (!j->is_object()) fail("expected an object");
        std::vector<std::pair<std::string, Node>> out;
        for (auto it = j->begin(); it != j->end(); ++it)
            out.push_back({it.key(), Node{doc, &it.value(), ptr + "/" + escape(it.key())}});
        return out;
    }
};

struct Errors {
    std::vector<std::string> list;

    template <class F>
    void guard(F&& f) {
        try {
            f();
        } catch (const InputError& e) {
            list.push_back(e.what());
        } catch (const StructureError& e) {
            list.push_back(e.what());
        }
    }
    void raise() const {
        if (list.empty()) return;
        std::string s;
        for (const auto& m : list) s += (s.empty() ? "" : "\n") + m;
        throw InputError(s);
    }
};

bool is_identity1(const TwoCategory& c, int f) { return c.id1(c.one(f).src) == f; }
bool is_identity2(const TwoCategory& c, int a) { return c.id2(c.two(a).src) == a; }
bool is_unit2(const TwoCategory& c, int a) { return is_identity2(c, a) && is_identity1(c, c.two(a).src); }

// ---------------------------------------------------------------- 2-categories

CatPtr read_cat(const Node& n, Errors& errs) {
    const std::string name = n["name"].ident();
    TwoCategoryBuilder b(name);
    std::map<std::string, std::string> id1, id2;
    if (n.has("identity_ones"))
        for (const auto& [k, v] : n["identity_ones"].fields()) id1[k] = v.ident();
    if (n.has("identity_twos"))
        for (const auto& [k, v] : n["identity_twos"].fields()) id2[k] = v.ident();

    std::vector<std::string> objs;
    for (const auto& o : n["objects"].items())
        errs.guard([&] {
            b.add_object(o.ident());
            objs.push_back(o.str());
        });
    for (const auto& [k, v] : id1)
        if (!b.has_object(k)) errs.list.push_back(n["identity_ones"][k].where() + ": unknown object '" + k + "'");
    std::vector<int> id1_of(b.n0(), -1);
    for (int o = 0, n0 = b.n0(); o < n0; ++o) {
        errs.guard([&] {
            const std::string& oid = objs[o];
            auto it = id1.find(oid);
            id1_of[o] = b.add_one(it == id1.end() ? "1_" + oid : it->second, o, o);
            b.set_id1(o, id1_of[o]);
        });
    }
    auto cell = [&](const Node& e, bool two) {
        std::array<int, 3> r{};
        for (int i = 0; i < 3; ++i) {
            const Node x = e[static_cast<std::size_t>(i)];
            const std::string s = x.ident();
            if (i == 0) continue;
            r[i] = two ? (b.has_one(s) ? b.one(s) : -1) : (b.has_object(s) ? b.object(s) : -1);
            if (r[i] < 0) x.fail("unknown identifier '" + s + "'");
        }
        return r;
    };
    if (n.has("ones"))
        for (const auto& e : n["ones"].items())
            errs.guard([&] {
                auto r = cell(e, false);
                b.add_one(e[0].ident(), r[1], r[2]);
            });
    for (const auto& [k, v] : id2)
        if (!b.has_one(k)) errs.list.push_back(n["identity_twos"][k].where() + ": unknown 1-cell '" + k + "'");
    std::vector<int> id2_of(b.n1(), -1);
    for (int f = 0, n1 = b.n1(); f < n1; ++f) {
        errs.guard([&] {
            const std::string fid = b.one_cell(f).id;
            auto it = id2.find(fid);
            id2_of[f] = b.add_two(it == id2.end() ? "1_" + fid : it->second, f, f);
            b.set_id2(f, id2_of[f]);
        });
    }
    if (n.has("twos"))
        for (const auto& e : n["twos"].items())
            errs.guard([&] {
                auto r = cell(e, true);
                b.add_two(e[0].ident(), r[1], r[2]);
            });

    auto table = [&](const char* key, bool two, auto put) {
        if (!n.has(key)) return;
        for (const auto& e : n[key].items())
            errs.guard([&] {
                std::array<int, 3> r{};
                for (int i = 0; i < 3; ++i) {
                    const Node x = e[static_cast<std::size_t>(i)];
                    const std::string s = x.ident();
                    r[i] = two ? (b.has_two(s) ? b.two(s) : -1) : (b.has_one(s) ? b.one(s) : -1);
                    if (r[i] < 0) x.fail("unknown identifier '" + s + "'");
                }
                put(r[0], r[1], r[2]);
            });
    };
    std::map<std::pair<int, int>, int> c1;
    std::set<std::pair<int, int>> h2;
    table("comp1", false, [&](int g, int f, int r) {
        b.put_comp1(g, f, r);
        c1.emplace(std::pair{g, f}, r);
    });
    table("vcomp", true, [&](int g, int f, int r) { b.put_vcomp(g, f, r); });
    table("hcomp", true, [&](int g, int f, int r) {
        b.put_hcomp(g, f, r);
        h2.insert({g, f});
    });
    if (!errs.list.empty()) return nullptr;

    b.put_unit_entries();
    // 1_g ∘ 1_f = 1_{g∘f} is implied as well
    for (int f = 0; f < b.n1(); ++f)
        for (int g = 0; g < b.n1(); ++g) {
            const auto &cf = b.one_cell(f), &cg = b.one_cell(g);
            if (cf.tgt != cg.src) continue;
            int r = -1;
            if (auto it = c1.find({g, f}); it != c1.end())
                r = it->second;
            else if (g == id1_of[cg.src])
                r = f;
            else if (f == id1_of[cf.src])
                r = g;
            if (r < 0) continue;
            const int ig = id2_of[g], i_f = id2_of[f];
            if (!h2.count({ig, i_f})) b.put_hcomp(ig, i_f, id2_of[r]);
        }
    CatPtr c = b.build();
    // Shape problems are input errors; axiom failures are left to validate.
    for (const auto& m : validate(*c).issues)
        if (m.rfind("malformed table", 0) == 0 || m.rfind("non-total table", 0) == 0 ||
            m.find("between non-parallel") != std::string::npos)
            errs.list.push_back(n.where() + ": " + name + ": " + m);
    return c;
}

}  // namespace

Json serialize_cat(const TwoCategory& c) {
    Json j;
    j["kind"] = "2cat";
    j["name"] = c.name();
    j["objects"] = Json::array();
    for (int o = 0; o < c.n0(); ++o) j["objects"].push_back(c.obj(o));
    Json ov1 = Json::object(), ov2 = Json::object();
    for (int o = 0; o < c.n0(); ++o)
        if (c.one(c.id1(o)).id != "1_" + c.obj(o)) ov1[c.obj(o)] = c.one(c.id1(o)).id;
    for (int f = 0; f < c.n1(); ++f)
        if (c.two(c.id2(f)).id != "1_" + c.one(f).id) ov2[c.one(f).id] = c.two(c.id2(f)).id;
    if (!ov1.empty()) j["identity_ones"] = ov1;
    if (!ov2.empty()) j["identity_twos"] = ov2;
    j["ones"] = Json::array();
    for (int f = 0; f < c.n1(); ++f)
        if (!is_identity1(c, f)) j["ones"].push_back({c.one(f).id, c.obj(c.one(f).src), c.obj(c.one(f).tgt)});
    j["twos"] = Json::array();
    for (int a = 0; a < c.n2(); ++a)
        if (!is_identity2(c, a)) j["twos"].push_back({c.two(a).id, c.one(c.two(a).src).id, c.one(c.two(a).tgt).id});
    auto dump = [&](const std::vector<TwoCategory::Entry>& t, bool two, auto unit) {
        Json arr = Json::array();
        for (const auto& e : t) {
            if (unit(e.second) || unit(e.first)) continue;
            if (two)
                arr.push_back({c.two(e.second).id, c.two(e.first).id, c.two(e.result).id});
            else
                arr.push_back({c.one(e.second).id, c.one(e.first).id, c.one(e.result).id});
        }
        return arr;
    };
    j["comp1"] = dump(c.comp1_table(), false, [&](int f) { return is_identity1(c, f); });
    j["vcomp"] = dump(c.vcomp_table(), true, [&](int a) { return is_identity2(c, a); });
    Json h = Json::array();
    for (const auto& e : c.hcomp_table()) {
        if (is_unit2(c, e.second) || is_unit2(c, e.first)) continue;
        if (is_identity2(c, e.second) && is_identity2(c, e.first)) {
            int r = c.try_comp1(c.two(e.second).src, c.two(e.first).src);
            if (r >= 0 && c.id2(r) == e.result) continue;
        }
        h.push_back({c.two(e.second).id, c.two(e.first).id, c.two(e.result).id});
    }
    j["hcomp"] = h;
    return j;
}

Json serialize_map(const TwoFunctor& F) {
    const TwoCategory &A = *F.src, &B = *F.tgt;
    Json j;
    j["objects"] = Json::object();
    for (int o = 0; o < A.n0(); ++o) j["objects"][A.obj(o)] = B.obj(F.on0[o]);
    j["ones"] = Json::object();
    for (int f = 0; f < A.n1(); ++f) {
        const bool implied = is_identity1(A, f) && F.on1[f] == B.id1(F.on0[A.one(f).src]);
        if (!implied) j["ones"][A.one(f).id] = B.one(F.on1[f]).id;
    }
    j["twos"] = Json::object();
    for (int a = 0; a < A.n2(); ++a) {
        const bool implied = is_identity2(A, a) && F.on2[a] == B.id2(F.on1[A.two(a).src]);
        if (!implied) j["twos"][A.two(a).id] = B.two(F.on2[a]).id;
    }
    return j;
}

namespace {

// ---------------------------------------------------------------- functors and diagrams

TwoFunctor read_map(const std::string& name, const CatPtr& src, const CatPtr& tgt, const Node& n) {
    TwoFunctor F{name, src, tgt, std::vector<int>(src->n0(), -1), std::vector<int>(src->n1(), -1),
                 std::vector<int>(src->n2(), -1)};
    auto section = [&](const char* key, auto find_src, auto find_tgt, std::vector<int>& out, const char* what) {
        if (!n.has(key)) return;
        for (const auto& [k, v] : n[key].fields()) {
            int i = find_src(k);
            if (i < 0) v.fail(name + ": unknown " + what + " '" + k + "' in " + src->name());
            const std::string t = v.str();
            int r = find_tgt(t);
            if (r < 0) v.fail(name + ": unknown " + what + " '" + t + "' in " + tgt->name());
            out[i] = r;
        }
    };
    section("objects", [&](const std::string& s) { return src->find0(s); },
            [&](const std::string& s) { return tgt->find0(s); }, F.on0, "object");
    section("ones", [&](const std::string& s) { return src->find1(s); },
            [&](const std::string& s) { return tgt->find1(s); }, F.on1, "1-cell");
    section("twos", [&](const std::string& s) { return src->find2(s); },
            [&](const std::string& s) { return tgt->find2(s); }, F.on2, "2-cell");
    for (int o = 0; o < src->n0(); ++o)
        if (F.on0[o] < 0) n.fail(name + ": no image for object " + src->obj(o));
    for (int f = 0; f < src->n1(); ++f)
        if (F.on1[f] < 0) {
            if (!is_identity1(*src, f)) n.fail(name + ": no image for 1-cell " + src->one(f).id);
            F.on1[f] = tgt->id1(F.on0[src->one(f).src]);
        }
    for (int a = 0; a < src->n2(); ++a)
        if (F.on2[a] < 0) {
            if (!is_identity2(*src, a)) n.fail(name + ": no image for 2-cell " + src->two(a).id);
            F.on2[a] = tgt->id2(F.on1[src->two(a).src]);
        }
    return F;
}

Variance read_variance(const Node& n) {
    const std::string s = n.str();
    if (s == "covariant") return Variance::Covariant;
    if (s == "contravariant") return Variance::Contravariant;
    n.fail("variance must be 'covariant' or 'contravariant'");
}

class Reader {
public:
    Manifest& m;
    Errors& errs;

    CatPtr cat(const Node& n) const {
        const std::string s = n.str();
        if (!m.cats.has(s)) n.fail("unknown 2-category '" + s + "'");
        return m.cats.at(s);
    }
    template <class T>
    const T& ref(const Named<T>& table, const Node& n, const char* what) const {
        const std::string s = n.str();
        if (!table.has(s)) throw Unresolved(n.where() + ": unknown " + what + " '" + s + "'");
        return table.at(s);
    }
    int object(const CatPtr& c, const Node& n) const {
        int o = c->find0(n.str());
        if (o < 0) n.fail("unknown object '" + n.str() + "' in " + c->name());
        return o;
    }

    void functor(const Node& n) {
        const std::string name = n["name"].ident();
        if (n.has("construction")) {
            const Node how = n["construction"];
            if (how.str() != "identity") how.fail("unknown construction '" + how.str() + "'");
            auto F = identity_functor(cat(n["category"]));
            F.name = name;
            m.functors.put(name, F);
            m.recipe[name] = *n.j;
            return;
        }
        m.functors.put(name, read_map(name, cat(n["src"]), cat(n["tgt"]), n));
    }

    void diagram(const Node& n) {
        const std::string name = n["name"].ident();
        if (n.has("construction")) {
            const Node how = n["construction"];
            const std::string k = how.str();
            DiagPtr d;
            if (k == "representable_into" || k == "representable_from") {
                auto c = cat(n["category"]);
                int o = object(c, n["object"]);
                d = k == "representable_into" ? representable_into(c, o) : representable_from(c, o);
            } else if (k == "constant") {
                d = constant_diagram(cat(n["base"]), cat(n["fibre"]), read_variance(n["variance"]));
            } else if (k == "pullback") {
                const auto& F = ref(m.functors, n["functor"], "2-functor");
                const auto& D = ref(m.diagrams, n["diagram"], "diagram");
                if (F.tgt != D->base) n.fail("pullback: " + F.name + " does not land in the base of " + D->name);
                d = pullback(F, D);
            } else {
                how.fail("unknown construction '" + k + "'");
            }
            auto named = std::make_shared<TwoDiagram>(*d);
            named->name = name;
            m.diagrams.put(name, named);
            m.recipe[name] = *n.j;
            return;
        }
        auto d = std::make_shared<TwoDiagram>();
        d->name = name;
        d->base = cat(n["base"]);
        d->var = read_variance(n["variance"]);
        const TwoCategory& B = *d->base;
        const Node fib = n["fibres"];
        for (const auto& [k, v] : fib.fields())
            if (B.find0(k) < 0) v.fail("unknown object '" + k + "' in " + B.name());
        for (int c = 0; c < B.n0(); ++c) d->fibre.push_back(cat(fib[B.obj(c)]));
        const char* mark = d->covariant() ? "_*" : "^*";
        auto check_keys = [&](const char* key, auto find) {
            if (!n.has(key)) return;
            for (const auto& [k, v] : n[key].fields())
                if (find(k) < 0) v.fail("unknown cell '" + k + "' in " + B.name());
        };
        check_keys("on1", [&](const std::string& s) { return B.find1(s); });
        check_keys("on2", [&](const std::string& s) { return B.find2(s); });
        for (int f = 0; f < B.n1(); ++f) {
            const auto& cf = B.one(f);
            const CatPtr& s = d->fibre[d->covariant() ? cf.src : cf.tgt];
            const CatPtr& t = d->fibre[d->covariant() ? cf.tgt : cf.src];
            if (n.has("on1") && n["on1"].has(cf.id)) {
                d->on1.push_back(read_map(cf.id + mark, s, t, n["on1"][cf.id]));
            } else {
                if (!is_identity1(B, f)) n.fail(name + ": no transport for 1-cell " + cf.id);
                if (s != t) n.fail(name + ": identity " + cf.id + " between different fibres");
                auto F = identity_functor(s);
                F.name = cf.id + mark;
                d->on1.push_back(F);
            }
        }
        for (int a = 0; a < B.n2(); ++a) {
            const auto& ca = B.two(a);
            const TwoFunctor &S = d->on1[ca.src], &T = d->on1[ca.tgt];
            if (n.has("on2") && n["on2"].has(ca.id)) {
                const Node comps = n["on2"][ca.id];
                TwoNatural t{ca.id + mark, S, T, {}};
                for (int x = 0; x < S.src->n0(); ++x) {
                    const Node v = comps[S.src->obj(x)];
                    int u = T.tgt->find1(v.str());
                    if (u < 0) v.fail("unknown 1-cell '" + v.str() + "' in " + T.tgt->name());
                    t.comp.push_back(u);
                }
                for (const auto& [k, v] : comps.fields())
                    if (S.src->find0(k) < 0) v.fail("unknown object '" + k + "' in " + S.src->name());
                d->on2.push_back(t);
            } else {
                if (!is_identity2(B, a)) n.fail(name + ": no transport for 2-cell " + ca.id);
                auto t = identity_natural(S);
                t.name = ca.id + mark;
                d->on2.push_back(t);
            }
        }
        m.diagrams.put(name, d);
    }

    void transformation(const Node& n) {
        const std::string name = n["name"].ident();
        if (n.has("construction")) {
            const Node how = n["construction"];
            const std::string k = how.str();
            const DiagPtr D = ref(m.diagrams, n["diagram"], "diagram");
            DiagramMorphism g;
            if (k == "identity")
                g = identity_morphism(D);
            else if (k == "collapse")
                g = collapse_to_point(D);
            else if (k == "relabel")
                g = relabel_diagram(D, n["suffix"].str());
            else
                how.fail("unknown construction '" + k + "'");
            if (k != "identity" && n.has("target")) {
                const std::string t = n["target"].ident();
                if (m.diagrams.has(t)) n["target"].fail("diagram '" + t + "' already defined");
                auto e = std::make_shared<TwoDiagram>(*g.E);
                e->name = t;
                g.E = e;
                m.diagrams.put(t, e);
                m.derived.push_back(t);
            }
            g.name = name;
            m.transformations.put(name, g);
            m.recipe[name] = *n.j;
            return;
        }
        DiagramMorphism g{name, ref(m.diagrams, n["source"], "diagram"), ref(m.diagrams, n["target"], "diagram"), {}};
        if (g.D->base != g.E->base) n.fail(name + ": source and target have different bases");
        if (g.D->var != g.E->var) n.fail(name + ": variance mismatch between " + g.D->name + " and " + g.E->name);
        const TwoCategory& B = *g.D->base;
        const Node comps = n["components"];
        for (const auto& [k, v] : comps.fields())
            if (B.find0(k) < 0) v.fail("unknown object '" + k + "' in " + B.name());
        for (int c = 0; c < B.n0(); ++c)
            g.comp.push_back(read_map(name + "_" + B.obj(c), g.D->fibre[c], g.E->fibre[c], comps[B.obj(c)]));
        m.transformations.put(name, g);
    }
};

const std::set<std::string> kInjectKinds = {"face", "degen", "map", "on0", "on1", "on2", "comp", "nat", "component"};

void check_inject(const Node& n) {
    for (const auto& s : n.items()) {
        s["target"].str();
        const std::string k = s["kind"].str();
        if (!kInjectKinds.count(k)) s["kind"].fail("unknown inject kind '" + k + "'");
        if (k == "face" || k == "degen") {
            for (const auto& x : s["level"].items()) x.integer();
            s["dir"].integer(), s["index"].integer(), s["simplex"].integer();
        } else if (k == "map") {
            s["level"].integer(), s["simplex"].integer();
        } else {
            if (s.has("index"))
                s["index"].integer();
            else
                s["cell"].str();
            if (k == "component") s["at"].str(), s["dim"].integer();
        }
    }
}

void collect(const Node& root, const std::string& dir, std::vector<Node> (&by_kind)[4], Errors& errs,
             std::vector<DocPtr>& keep, int depth = 0) {
    if (depth > 16) root.fail("includes nested too deeply");
    auto place = [&](const Node& d, const std::string& from) {
        const std::string k = d["kind"].str();
        if (k == "manifest")
            collect(d, from, by_kind, errs, keep, depth + 1);
        else if (k == "2cat")
            by_kind[0].push_back(d);
        else if (k == "2fun")
            by_kind[1].push_back(d);
        else if (k == "2diag")
            by_kind[2].push_back(d);
        else if (k == "transformation")
            by_kind[3].push_back(d);
        else
            d["kind"].fail("unknown document kind '" + k + "'");
    };
    if (root.has("include"))
        for (const auto& inc : root["include"].items())
            errs.guard([&] {
                const std::string rel = inc.str();
                const std::string path = (fs::path(dir) / rel).lexically_normal().string();
                std::string text;
                try {
                    text = read_file(path);
                } catch (const InputError&) {
                    inc.fail("cannot open include '" + rel + "'");
                }
                auto doc = load_doc(text, path);
                keep.push_back(doc);
                place(Node{doc, &doc->j, ""}, fs::path(path).parent_path().string());
            });
    const char* keys[4] = {"categories", "functors", "diagrams", "transformations"};
    for (int i = 0; i < 4; ++i)
        if (root.has(keys[i]))
            for (const auto& d : root[keys[i]].items()) {
                if (d.has("kind")) errs.guard([&] { place(d, dir); });
                else by_kind[i].push_back(d);
            }
}

Manifest assemble(const DocPtr& doc, const std::string& dir) {
    Manifest m;
    Errors errs;
    const Node root{doc, &doc->j, ""};
    std::vector<DocPtr> keep{doc};
    errs.guard([&] {
        if (root.has("kind") && root["kind"].str() != "manifest") {
            // a bare document stands for a manifest holding just that document
            m.name = root.has("name") ? root["name"].str() : doc->file;
            return;
        }
        m.name = root["name"].str();
        if (root.has("truncation")) m.truncation = root["truncation"].integer();
        if (root.has("suites"))
            for (const auto& s : root["suites"].items()) m.suites.push_back(s.str());
        if (root.has("inject")) {
            check_inject(root["inject"]);
            m.inject = *root["inject"].j;
        }
    });
    std::vector<Node> by_kind[4];
    if (root.has("kind") && root["kind"].str() != "manifest") {
        errs.guard([&] {
            const std::string k = root["kind"].str();
            int slot = k == "2cat" ? 0 : k == "2fun" ? 1 : k == "2diag" ? 2 : k == "transformation" ? 3 : -1;
            if (slot < 0) root["kind"].fail("unknown document kind '" + k + "'");
            by_kind[slot].push_back(root);
        });
    } else {
        errs.guard([&] { collect(root, dir, by_kind, errs, keep); });
    }
    errs.raise();

    std::set<std::string> names;
    auto fresh = [&](const Node& d) {
        const std::string nm = d["name"].ident();
        if (!names.insert(nm).second) d["name"].fail("duplicate name '" + nm + "'");
    };
    for (const auto& d : by_kind[0])
        errs.guard([&] {
            fresh(d);
            auto c = read_cat(d, errs);
            if (c) m.cats.put(c->name(), c);
        });
    errs.raise();

    Reader rd{m, errs};
    for (int k = 1; k < 4; ++k) {
        std::vector<Node> pending;
        for (const auto& d : by_kind[k])
            errs.guard([&] {
                fresh(d);
                pending.push_back(d);
            });
        // documents may refer to entries defined later in the same list
        for (bool progress = true; progress && !pending.empty();) {
            progress = false;
            std::vector<Node> again;
            std::vector<std::string> why;
            for (const auto& d : pending) {
                try {
                    if (k == 1) rd.functor(d);
                    if (k == 2) rd.diagram(d);
                    if (k == 3) rd.transformation(d);
                    progress = true;
                } catch (const Unresolved& e) {
                    again.push_back(d);
                    why.push_back(e.what());
                } catch (const InputError& e) {
                    errs.list.push_back(e.what());
                } catch (const StructureError& e) {
                    errs.list.push_back(d.where() + ": " + e.what());
                }
            }
            pending = again;
            if (!progress)
                for (const auto& w : why) errs.list.push_back(w);
        }
    }
    for (const auto& t : m.derived)
        if (names.count(t)) errs.list.push_back(doc->file + ": derived diagram '" + t + "' clashes with a defined name");

    if (m.inject.is_array()) {
        Injector inj(m.inject);
        for (const auto& n : m.transformations.order)
            if (inj.wants(n)) errs.guard([&] {
                auto g = m.transformations.at(n);
                inj.apply(n, g);
                m.transformations.put(n, g);
            });
        for (const auto& n : m.functors.order)
            if (inj.wants(n)) errs.guard([&] {
                auto f = m.functors.at(n);
                inj.apply(n, f);
                m.functors.put(n, f);
            });
    }
    errs.raise();
    return m;
}

}  // namespace

Manifest parse_manifest_text(const std::string& text, const std::string& label, const std::string& dir) {
    return assemble(load_doc(text, label), dir);
}

Manifest parse_manifest(const std::string& path) {
    if (!fs::exists(path)) throw InputError(path + ": no such file");
    return parse_manifest_text(read_file(path), path, fs::path(path).parent_path().string());
}

// ---------------------------------------------------------------- serialize

Json serialize(const Manifest& m) {
    Json j;
    j["kind"] = "manifest";
    j["name"] = m.name;
    if (m.truncation) j["truncation"] = *m.truncation;
    if (!m.suites.empty()) j["suites"] = m.suites;
    j["categories"] = Json::array();
    for (const auto& n : m.cats.order) j["categories"].push_back(serialize_cat(*m.cats.at(n)));
    auto recipe_or = [&](const std::string& n, auto explicit_form) {
        auto it = m.recipe.find(n);
        return it != m.recipe.end() ? it->second : explicit_form();
    };
    j["functors"] = Json::array();
    for (const auto& n : m.functors.order)
        j["functors"].push_back(recipe_or(n, [&] {
            const auto& F = m.functors.at(n);
            Json f;
            f["kind"] = "2fun";
            f["name"] = n;
            f["src"] = F.src->name();
            f["tgt"] = F.tgt->name();
            const Json body = serialize_map(F);
            for (auto& [k, v] : body.items()) f[k] = v;
            return f;
        }));
    j["diagrams"] = Json::array();
    for (const auto& n : m.diagrams.order) {
        if (std::find(m.derived.begin(), m.derived.end(), n) != m.derived.end()) continue;
        j["diagrams"].push_back(recipe_or(n, [&] {
            const TwoDiagram& d = *m.diagrams.at(n);
            const TwoCategory& B = *d.base;
            Json o;
            o["kind"] = "2diag";
            o["name"] = n;
            o["base"] = B.name();
            o["variance"] = to_string(d.var);
            o["fibres"] = Json::object();
            for (int c = 0; c < B.n0(); ++c) o["fibres"][B.obj(c)] = d.fibre[c]->name();
            o["on1"] = Json::object();
            for (int f = 0; f < B.n1(); ++f) {
                const bool implied = is_identity1(B, f) && d.on1[f].src == d.on1[f].tgt &&
                                     compare_functors(d.on1[f], identity_functor(d.on1[f].src)).ok();
                if (!implied) o["on1"][B.one(f).id] = serialize_map(d.on1[f]);
            }
            o["on2"] = Json::object();
            for (int a = 0; a < B.n2(); ++a) {
                const auto& t = d.on2[a];
                bool implied = is_identity2(B, a);
                for (int x = 0; implied && x < t.F.src->n0(); ++x)
                    implied = t.comp[x] == t.F.tgt->id1(t.F.on0[x]);
                if (implied) continue;
                Json c = Json::object();
                for (int x = 0; x < t.F.src->n0(); ++x) c[t.F.src->obj(x)] = t.F.tgt->one(t.comp[x]).id;
                o["on2"][B.two(a).id] = c;
            }
            return o;
        }));
    }
    j["transformations"] = Json::array();
    for (const auto& n : m.transformations.order)
        j["transformations"].push_back(recipe_or(n, [&] {
            const auto& g = m.transformations.at(n);
            Json o;
            o["kind"] = "transformation";
            o["name"] = n;
            o["source"] = g.D->name;
            o["target"] = g.E->name;
            o["components"] = Json::object();
            for (int c = 0; c < g.D->base->n0(); ++c) o["components"][g.D->base->obj(c)] = serialize_map(g.comp[c]);
            return o;
        }));
    if (!m.inject.empty()) j["inject"] = m.inject;
    return j;
}

Report compare_manifests(const Manifest& a, const Manifest& b) {
    Report r;
    if (a.name != b.name) r.add("name differs");
    if (a.truncation != b.truncation) r.add("truncation differs");
    if (a.suites != b.suites) r.add("suites differ");
    if (a.inject != b.inject) r.add("inject lists differ");
    if (a.recipe != b.recipe) r.add("construction documents differ");
    auto same_order = [&](const auto& x, const auto& y, const char* what) {
        if (x.order != y.order) r.add(std::string(what) + " differ in names or order");
        return x.order == y.order;
    };
    if (same_order(a.cats, b.cats, "2-categories"))
        for (const auto& n : a.cats.order) r.absorb(compare_cells(*a.cats.at(n), *b.cats.at(n)), n);
    if (same_order(a.functors, b.functors, "2-functors"))
        for (const auto& n : a.functors.order) r.absorb(compare_functors(a.functors.at(n), b.functors.at(n)), n);
    if (same_order(a.diagrams, b.diagrams, "diagrams"))
        for (const auto& n : a.diagrams.order) {
            const auto &x = *a.diagrams.at(n), &y = *b.diagrams.at(n);
            if (x.base->name() != y.base->name() || x.var != y.var || x.fibre.size() != y.fibre.size() ||
                x.on1.size() != y.on1.size() || x.on2.size() != y.on2.size()) {
                r.add(n + ": shape differs");
                continue;
            }
            for (std::size_t c = 0; c < x.fibre.size(); ++c)
                r.absorb(compare_cells(*x.fibre[c], *y.fibre[c]), n + " fibre " + std::to_string(c));
            for (std::size_t f = 0; f < x.on1.size(); ++f) r.absorb(compare_functors(x.on1[f], y.on1[f]), n);
            for (std::size_t al = 0; al < x.on2.size(); ++al) r.absorb(compare_naturals(x.on2[al], y.on2[al]), n);
        }
    if (same_order(a.transformations, b.transformations, "transformations"))
        for (const auto& n : a.transformations.order) {
            const auto &x = a.transformations.at(n), &y = b.transformations.at(n);
            if (x.D->name != y.D->name || x.E->name != y.E->name || x.comp.size() != y.comp.size()) {
                r.add(n + ": endpoints differ");
                continue;
            }
            for (std::size_t c = 0; c < x.comp.size(); ++c) r.absorb(compare_functors(x.comp[c], y.comp[c]), n);
        }
    return r;
}

// ---------------------------------------------------------------- injection

Injector::Injector(const Json& specs) {
    if (!specs.is_array()) throw InputError("inject: expected an array");
    for (const auto& s : specs) specs_.push_back(s);
    used_.assign(specs_.size(), false);
}

bool Injector::wants(const std::string& target) const {
    for (const auto& s : specs_)
        if (s.value("target", "") == target) return true;
    return false;
}

std::vector<std::string> Injector::unused() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < specs_.size(); ++i)
        if (!used_[i]) out.push_back(specs_[i].value("target", ""));
    return out;
}

namespace {

[[noreturn]] void bad_inject(const Json& s, const std::string& why) {
    throw InputError("inject " + s.dump() + ": " + why);
}

int shifted(const Json& s, int old, int range, const std::function<int(const std::string&)>& find) {
    if (range <= 0) bad_inject(s, "empty range");
    if (s.contains("to")) {
        int v = s["to"].is_string() ? find(s["to"].get<std::string>()) : s["to"].get<int>();
        if (v < 0 || v >= range) bad_inject(s, "replacement out of range");
        return v;
    }
    return (old + 1) % range;
}

// "index" addresses cells of generated 2-categories whose identifiers are unwieldy.
int locate(const Json& s, int count, const std::function<int(const std::string&)>& find) {
    int i = s.contains("index") ? s["index"].get<int>() : find(s["cell"].get<std::string>());
    if (i < 0 || i >= count) bad_inject(s, "no such cell");
    return i;
}

void corrupt_functor(const Json& s, TwoFunctor& F, int dim) {
    const TwoCategory &A = *F.src, &B = *F.tgt;
    int i = dim == 0   ? locate(s, A.n0(), [&](const std::string& x) { return A.find0(x); })
            : dim == 1 ? locate(s, A.n1(), [&](const std::string& x) { return A.find1(x); })
                       : locate(s, A.n2(), [&](const std::string& x) { return A.find2(x); });
    auto& v = dim == 0 ? F.on0 : dim == 1 ? F.on1 : F.on2;
    int range = dim == 0 ? B.n0() : dim == 1 ? B.n1() : B.n2();
    v[i] = shifted(s, v[i], range, [&](const std::string& t) {
        return dim == 0 ? B.find0(t) : dim == 1 ? B.find1(t) : B.find2(t);
    });
}

}  // namespace

void Injector::apply(const std::string& target, TwoFunctor& f) {
    for (std::size_t i = 0; i < specs_.size(); ++i) {
        const auto& s = specs_[i];
        if (s.value("target", "") != target) continue;
        const std::string k = s.value("kind", "");
        if (k != "on0" && k != "on1" && k != "on2") continue;
        corrupt_functor(s, f, k[2] - '0');
        used_[i] = true;
    }
}

void Injector::apply(const std::string& target, OplaxTransformation& t) {
    for (std::size_t i = 0; i < specs_.size(); ++i) {
        const auto& s = specs_[i];
        if (s.value("target", "") != target) continue;
        const std::string k = s.value("kind", "");
        if (k != "comp" && k != "nat") continue;
        const TwoCategory &A = *t.F.src, &B = *t.F.tgt;
        if (k == "comp") {
            int o = locate(s, A.n0(), [&](const std::string& x) { return A.find0(x); });
            t.comp[o] = shifted(s, t.comp[o], B.n1(), [&](const std::string& x) { return B.find1(x); });
        } else {
            int f = locate(s, A.n1(), [&](const std::string& x) { return A.find1(x); });
            t.nat[f] = shifted(s, t.nat[f], B.n2(), [&](const std::string& x) { return B.find2(x); });
        }
        used_[i] = true;
    }
}

void Injector::apply(const std::string& target, SimplicialMap& m) {
    for (std::size_t i = 0; i < specs_.size(); ++i) {
        const auto& s = specs_[i];
        if (s.value("target", "") != target || s.value("kind", "") != "map") continue;
        const int n = s["level"].get<int>(), x = s["simplex"].get<int>();
        if (n < 0 || n >= static_cast<int>(m.map.size()) || x < 0 || x >= static_cast<int>(m.map[n].size()))
            bad_inject(s, "no such simplex");
        m.map[n][x] = shifted(s, m.map[n][x], m.tgt->size({n}), [](const std::string&) { return -1; });
        used_[i] = true;
    }
}

void Injector::apply(const std::string& target, DiagramMorphism& g) {
    for (std::size_t i = 0; i < specs_.size(); ++i) {
        const auto& s = specs_[i];
        if (s.value("target", "") != target || s.value("kind", "") != "component") continue;
        int c = g.D->base->find0(s["at"].get<std::string>());
        if (c < 0) bad_inject(s, "unknown object");
        const int dim = s["dim"].get<int>();
        if (dim < 0 || dim > 2) bad_inject(s, "dim must be 0, 1 or 2");
        corrupt_functor(s, g.comp[c], dim);
        used_[i] = true;
    }
}

template <int K>
MultiPtr<K> Injector::apply(const std::string& target, const MultiPtr<K>& x) {
    std::shared_ptr<MultiSimplicial<K>> copy;
    for (std::size_t i = 0; i < specs_.size(); ++i) {
        const auto& s = specs_[i];
        const std::string k = s.value("kind", "");
        if (s.value("target", "") != target || (k != "face" && k != "degen")) continue;
        if (!copy) copy = std::make_shared<MultiSimplicial<K>>(*x);
        std::array<int, K> ix{};
        const auto& lv = s["level"];
        if (!lv.is_array() || lv.size() != K) bad_inject(s, "level needs " + std::to_string(K) + " indices");
        for (int d = 0; d < K; ++d) ix[d] = lv[d].get<int>();
        const int dir = s["dir"].get<int>(), idx = s["index"].get<int>(), sx = s["simplex"].get<int>();
        if (!copy->has(ix) || dir < 0 || dir >= K) bad_inject(s, "no such level");
        auto& l = copy->level_mut(ix);
        auto& tab = k == "face" ? l.face[dir] : l.degen[dir];
        if (idx < 0 || idx >= static_cast<int>(tab.size()) || sx < 0 || sx >= static_cast<int>(tab[idx].size()))
            bad_inject(s, "no such structure map entry");
        auto to = ix;
        to[dir] += k == "face" ? -1 : 1;
        tab[idx][sx] = shifted(s, tab[idx][sx], copy->size(to), [](const std::string&) { return -1; });
        used_[i] = true;
    }
    return copy ? MultiPtr<K>(copy) : x;
}

template MultiPtr<1> Injector::apply<1>(const std::string&, const MultiPtr<1>&);
template MultiPtr<2> Injector::apply<2>(const std::string&, const MultiPtr<2>&);
template MultiPtr<3> Injector::apply<3>(const std::string&, const MultiPtr<3>&);

}  // namespace tcat
