#include "tcat/cli.hpp"

#include <CLI11.hpp>
#include <fstream>

#include "tcat/comma.hpp"
#include "tcat/hocolim.hpp"
#include "tcat/homology.hpp"
#include "tcat/suites.hpp"

namespace tcat {

namespace {

struct Flags {
    std::vector<std::string> positional;
    std::optional<int> trunc;
    std::string out;
    std::optional<std::size_t> budget;
    std::string suite, cat, diagram, functor, object, side;
    std::optional<int> degree;
};

std::vector<std::string> pick(const std::vector<std::string>& all, const std::string& sel, const char* what) {
    if (sel.empty()) return all;
    if (std::find(all.begin(), all.end(), sel) == all.end()) throw InputError(std::string("unknown ") + what + " '" + sel + "'");
    return {sel};
}

std::vector<Side> sides(const std::string& s) {
    if (s.empty()) return {Side::Over, Side::Under};
    if (s == "over") return {Side::Over};
    if (s == "under") return {Side::Under};
    throw InputError("--side must be 'over' or 'under'");
}

std::string cells(const TwoCategory& c) {
    return std::to_string(c.n0()) + " objects, " + std::to_string(c.n1()) + " 1-cells, " + std::to_string(c.n2()) +
           " 2-cells";
}

template <int K>
std::string level_sizes(const MultiSimplicial<K>& x) {
    std::string s;
    for (const auto& [ix, l] : x.levels) {
        s += s.empty() ? "" : " ";
        s += "(";
        for (int d = 0; d < K; ++d) s += (d ? "," : "") + std::to_string(ix[d]);
        s += ")=" + std::to_string(l.size());
    }
    return s;
}

struct Space {
    std::string name;
    CatPtr cat;
};

// Comma categories picked by --functor/--cat, --object and --side.
std::vector<std::pair<std::string, CommaPtr>> commas(const Manifest& m, const Flags& f) {
    std::vector<std::pair<std::string, TwoFunctor>> fs;
    if (!f.functor.empty()) {
        fs.push_back({f.functor, m.functors.at(f.functor)});
    } else {
        for (const auto& n : pick(m.cats.order, f.cat, "2-category")) fs.push_back({n, identity_functor(m.cats.at(n))});
    }
    std::vector<std::pair<std::string, CommaPtr>> out;
    for (const auto& [n, F] : fs) {
        if (!check_functor(F).ok()) throw InputError(n + " is not a 2-functor");
        const TwoCategory& C = *F.tgt;
        std::vector<int> objs;
        if (f.object.empty()) {
            for (int o = 0; o < C.n0(); ++o) objs.push_back(o);
        } else {
            int o = C.find0(f.object);
            if (o < 0) throw InputError("unknown object '" + f.object + "' in " + C.name());
            objs.push_back(o);
        }
        const std::string kind = f.functor.empty() ? "slice " : "comma ";
        for (Side s : sides(f.side))
            for (int o : objs)
                out.push_back({kind + n + (s == Side::Over ? " over " : " under ") + C.obj(o), comma(F, o, s)});
    }
    return out;
}

SuiteReport command(const std::string& cmd, const Manifest& m, const Flags& f, int N) {
    SuiteReport rep;
    rep.suite = cmd;
    rep.truncation = N;
    auto add = [&](const std::string& name, const Report& r, const std::string& ok_detail) {
        rep.checks.push_back({name, r.ok(), r.ok() ? ok_detail : r.summary()});
    };
    const auto cats = pick(m.cats.order, f.cat, "2-category");
    const auto diagrams = pick(m.diagrams.order, f.diagram, "diagram");
    auto valid_cat = [&](const std::string& n) {
        auto r = validate(*m.cats.at(n));
        if (!r.ok()) add("validate " + n, r, {});
        return r.ok();
    };
    if (cmd == "validate") {
        for (const auto& n : m.cats.order) add("validate " + n, validate(*m.cats.at(n)), cells(*m.cats.at(n)));
        for (const auto& n : m.functors.order) add("functor " + n, check_functor(m.functors.at(n)), {});
        for (const auto& n : m.diagrams.order)
            add("TwoDiagram invariants " + n, check_diagram(*m.diagrams.at(n)), to_string(m.diagrams.at(n)->var));
        for (const auto& n : m.transformations.order)
            add("transformation " + n, check_morphism(m.transformations.at(n)), {});
    } else if (cmd == "nerve") {
        for (const auto& n : cats) {
            if (!valid_cat(n)) continue;
            if (is_locally_discrete(*m.cats.at(n))) {
                auto x = nerve_category(m.cats.at(n), N);
                add("nerve " + n, check_simplicial_identities(*x), level_sizes(*x));
            }
            auto nn = double_nerve(m.cats.at(n), N);
            add("nn " + n, check_simplicial_identities(*nn), level_sizes(*nn));
        }
    } else if (cmd == "wbar") {
        for (const auto& n : cats) {
            if (!valid_cat(n)) continue;
            auto nn = double_nerve(m.cats.at(n), N);
            SSetPtr w = wbar(*nn, N);
            SSetPtr wnn = wbar_double_nerve(m.cats.at(n), N);
            add("wbar nn " + n, check_simplicial_identities(*w), level_sizes(*w));
            add("wbar-nn " + n, check_simplicial_identities(*wnn), level_sizes(*wnn));
            add("repackaging " + n, iso_report(repackaging_map(*nn, w, wnn)), {});
        }
    } else if (cmd == "diag") {
        for (const auto& n : cats) {
            if (!valid_cat(n)) continue;
            auto d = diag(*double_nerve(m.cats.at(n), N));
            add("diag nn " + n, check_simplicial_identities(*d), level_sizes(*d));
        }
    } else if (cmd == "groth") {
        for (const auto& n : diagrams) {
            auto r = check_diagram(*m.diagrams.at(n));
            if (!r.ok()) {
                add("TwoDiagram invariants " + n, r, {});
                continue;
            }
            auto g = grothendieck(m.diagrams.at(n));
            add("grothendieck " + n, validate(*g->total), cells(*g->total));
        }
    } else if (cmd == "hocolim") {
        for (const auto& n : diagrams) {
            auto r = check_diagram(*m.diagrams.at(n));
            if (!r.ok()) {
                add("TwoDiagram invariants " + n, r, {});
                continue;
            }
            auto h = hocolim(m.diagrams.at(n), N);
            std::string sizes;
            for (const auto& l : h->levels)
                sizes += (sizes.empty() ? "" : "; ") + ("level " + std::to_string(l.p) + ": " + cells(*l.cat));
            add("hocolim " + n, check_simplicial_twocat(h->s), sizes);
        }
    } else if (cmd == "comma") {
        for (const auto& [name, c] : commas(m, f)) add(name, validate(c->cat()), cells(c->cat()));
    } else if (cmd == "homology") {
        std::vector<Space> spaces;
        if (!f.diagram.empty()) {
            auto r = check_diagram(*m.diagrams.at(f.diagram));
            if (!r.ok()) throw InputError(f.diagram + ": " + r.summary());
            spaces.push_back({"grothendieck " + f.diagram, grothendieck(m.diagrams.at(f.diagram))->total});
        } else if (!f.object.empty() || !f.functor.empty() || !f.side.empty()) {
            for (const auto& [name, c] : commas(m, f)) spaces.push_back({name, c->cat_ptr()});
        } else {
            for (const auto& n : cats)
                if (valid_cat(n)) spaces.push_back({n, m.cats.at(n)});
        }
        if (f.degree && (*f.degree < 0 || *f.degree > N - 1))
            throw InputError("--degree must lie in 0.." + std::to_string(N - 1) + " at truncation " + std::to_string(N));
        for (const auto& s : spaces) {
            auto x = diag(*double_nerve(s.cat, N));
            auto r = check_simplicial_identities(*x);
            if (!r.ok()) {
                add("simplicial identities " + s.name, r, {});
                continue;
            }
            auto cc = normalized_chain_complex(*x);
            const int lo = f.degree ? *f.degree : 0, hi = f.degree ? *f.degree : N - 1;
            for (int i = lo; i <= hi; ++i) {
                auto h = homology(cc, i);
                std::string tors;
                for (const auto& t : h.torsion) tors += (tors.empty() ? "" : ",") + t.get_str();
                rep.checks.push_back({"H_" + std::to_string(i) + " " + s.name, true,
                                      h.str() + " (rank " + std::to_string(h.betti) + ", " +
                                          (tors.empty() ? std::string("no torsion") : "torsion " + tors) + ")"});
            }
        }
    }
    return rep;
}

const std::vector<std::string> kCommands = {"validate", "nerve", "wbar", "diag", "groth", "hocolim", "comma", "homology", "verify"};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite strict 2-categories: nerves, Grothendieck constructions, homotopy colimits, verification suites",
                 "tcat"};
    app.require_subcommand(1);
    Flags f;
    std::string chosen;
    for (const auto& name : kCommands) {
        auto* sub = app.add_subcommand(name);
        if (name == "verify")
            sub->add_option("args", f.positional, "[suite] manifest")->required()->expected(1, 2);
        else
            sub->add_option("manifest", f.positional, "manifest or single document")->required()->expected(1);
        sub->add_option("--trunc", f.trunc, "truncation bound N");
        sub->add_option("--out", f.out, "write the JSON report here");
        sub->add_option("--budget", f.budget, "abort when a simplicial level exceeds this many simplices");
        sub->add_option("--suite", f.suite, "verification suite");
        sub->add_option("--cat", f.cat, "2-category by name");
        sub->add_option("--diagram", f.diagram, "diagram by name");
        sub->add_option("--functor", f.functor, "2-functor by name");
        sub->add_option("--object", f.object, "object of the target 2-category");
        sub->add_option("--side", f.side, "over or under");
        sub->add_option("--degree", f.degree, "homology degree");
        sub->callback([&chosen, name] { chosen = name; });
    }
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "tcat: " << e.what() << "\n";
        return 2;
    }
    struct RestoreBudget {
        std::size_t saved = simplex_budget();
        ~RestoreBudget() { set_simplex_budget(saved); }
    } restore;
    try {
        if (f.budget) set_simplex_budget(*f.budget);
        std::string suite = f.suite, path;
        if (f.positional.size() == 2) {
            if (!suite.empty() && suite != f.positional[0]) throw InputError("suite given twice");
            suite = f.positional[0];
        }
        path = f.positional.back();
        Manifest m = parse_manifest(path);
        SuiteReport rep;
        if (chosen == "verify") {
            if (suite.empty()) suite = m.suites.size() == 1 ? m.suites[0] : "all";
            rep = verify(suite, m, RunOptions{f.trunc});
        } else {
            const int N = f.trunc ? *f.trunc : m.truncation ? *m.truncation : 4;
            if (N < 1) throw InputError("truncation must be at least 1");
            rep = command(chosen, m, f, N);
        }
        out << rep.text();
        if (!f.out.empty()) {
            std::ofstream o(f.out, std::ios::binary);
            if (!o) throw InputError(f.out + ": cannot write report");
            o << rep.to_json().dump(2) << "\n";
        }
        return rep.ok() ? 0 : 1;
    } catch (const InputError& e) {
        err << "tcat: input error\n" << e.what() << "\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        err << "tcat: simplex budget exceeded: " << e.what() << "\n";
        return 2;
    } catch (const StructureError& e) {
        err << "tcat: construction failed: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace tcat
