#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "corpus.hpp"
#include "tcat/cli.hpp"
#include "tcat/io.hpp"
#include "tcat/nerves.hpp"
#include "tcat/suites.hpp"

using namespace tcat;
namespace fs = std::filesystem;

namespace {

std::string path(const std::string& rel) { return std::string(TCAT_CORPUS_DIR) + "/" + rel; }

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream o, e;
    int c = run_cli(args, o, e);
    return {c, o.str(), e.str()};
}

std::string input_error(const std::string& file) {
    try {
        parse_manifest(path(file));
    } catch (const InputError& e) {
        return e.what();
    }
    return {};
}

std::vector<std::string> manifests() {
    std::vector<std::string> out{path("corpus.manifest.json")};
    for (const auto& e : fs::directory_iterator(path("mutants"))) out.push_back(e.path().string());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("bundled files parse to the in-code corpus") {
    corpus::Fixture fx;
    auto m = parse_manifest(path("corpus.manifest.json"));
    CHECK(compare_cells(*m.cats.at("WTC"), *fx.wtc).ok());
    CHECK(compare_cells(*m.cats.at("WA"), *fx.wa).ok());
    CHECK(compare_cells(*m.cats.at("PT"), *fx.pt).ok());
    CHECK(compare_functors(m.functors.at("F"), fx.f).ok());
    const auto& d = *m.diagrams.at("Dfib");
    CHECK(check_diagram(d).ok());
    REQUIRE(d.on1.size() == fx.dfib->on1.size());
    for (std::size_t f = 0; f < d.on1.size(); ++f) CHECK(compare_functors(d.on1[f], fx.dfib->on1[f]).ok());
    CHECK(m.diagrams.at("Crep")->var == Variance::Contravariant);

    auto single = parse_manifest(path("wtc.2cat"));
    REQUIRE(single.cats.order.size() == 1);
    CHECK(compare_cells(*single.cats.at("WTC"), *fx.wtc).ok());
}

TEST_CASE("input errors carry positions") {
    auto e = input_error("bad/missing-composite.2cat");
    CHECK(e.find("non-total table") != std::string::npos);
    CHECK(e.find("missing (z,z)") != std::string::npos);
    CHECK(e.find("missing-composite.2cat:1") != std::string::npos);

    e = input_error("bad/syntax-error.2cat");
    CHECK(e.find("syntax-error.2cat:5:") != std::string::npos);

    e = input_error("bad/unknown-identifier.manifest.json");
    CHECK(e.find("unknown-identifier.manifest.json:12") != std::string::npos);
    CHECK(e.find("unknown 1-cell 'h'") != std::string::npos);

    e = input_error("bad/variance-mismatch.manifest.json");
    CHECK(e.find("variance mismatch") != std::string::npos);

    CHECK_THROWS_AS(parse_manifest(path("no-such-file.2cat")), InputError);
}

TEST_CASE("later documents may be referenced first") {
    const std::string text = R"({
      "kind": "manifest", "name": "order",
      "categories": [{"name": "WA", "objects": ["0", "1"], "ones": [["e", "0", "1"]]}],
      "diagrams": [
        {"name": "P", "construction": "pullback", "functor": "I", "diagram": "K"},
        {"name": "K", "construction": "constant", "base": "WA", "fibre": "WA", "variance": "covariant"}
      ],
      "functors": [{"name": "I", "construction": "identity", "category": "WA"}]
    })";
    auto m = parse_manifest_text(text, "inline");
    CHECK(m.diagrams.order == std::vector<std::string>{"K", "P"});
    CHECK(check_diagram(*m.diagrams.at("P")).ok());
}

TEST_CASE("parse, serialize, parse is the identity") {
    for (const auto& p : manifests()) {
        CAPTURE(p);
        auto a = parse_manifest(p);
        auto text = serialize(a).dump(2);
        auto b = parse_manifest_text(text, "roundtrip");
        auto r = compare_manifests(a, b);
        CHECK_MESSAGE(r.ok(), r.summary());
        CHECK(serialize(b).dump(2) == text);
    }
}

TEST_CASE("serialized tables omit only implied entries") {
    auto m = parse_manifest(path("mutants/table-entry.manifest.json"));
    auto j = serialize_cat(*m.cats.at("M3"));
    CHECK(j["comp1"].size() == 4);
    CHECK(j["hcomp"].empty());
    CHECK(j["vcomp"].empty());
}

TEST_CASE("exit codes") {
    CHECK(cli({"validate", path("corpus.manifest.json")}).code == 0);
    CHECK(cli({"verify", "oplax", path("corpus.manifest.json")}).code == 0);
    CHECK(cli({"verify", "--suite", "retractions", path("corpus.manifest.json")}).code == 0);
    CHECK(cli({"verify", "bogus", path("corpus.manifest.json")}).code == 2);
    CHECK(cli({"validate", path("bad/missing-composite.2cat")}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"validate"}).code == 2);
    auto r = cli({"verify", "identities", path("mutants/table-entry.manifest.json")});
    CHECK(r.code == 1);
    CHECK(r.out.find("first failure: validate M3") != std::string::npos);
}

TEST_CASE("budget aborts with an input-class exit") {
    auto r = cli({"nerve", path("corpus.manifest.json"), "--cat", "WTC", "--budget", "5"});
    CHECK(r.code == 2);
    CHECK(r.err.find("budget") != std::string::npos);
}

TEST_CASE("iso114 names the broken diagram invariant") {
    auto r = cli({"verify", "iso114", path("mutants/functoriality.manifest.json")});
    CHECK(r.code == 1);
    CHECK(r.out.find("FAIL TwoDiagram invariants Dfib") != std::string::npos);
}

TEST_CASE("homology of a slice in degree 1") {
    auto r = cli({"homology", path("corpus.manifest.json"), "--cat", "WTC", "--object", "b", "--side", "over",
                  "--degree", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("H_1 slice WTC over b: 0 (rank 0, no torsion)") != std::string::npos);
    CHECK(cli({"homology", path("corpus.manifest.json"), "--degree", "9"}).code == 2);
}

TEST_CASE("commands run on the corpus") {
    for (const char* c : {"nerve", "wbar", "diag", "groth", "hocolim", "comma"}) {
        CAPTURE(c);
        auto r = cli({c, path("corpus.manifest.json"), "--trunc", "3"});
        CHECK(r.code == 0);
        CHECK_FALSE(r.out.empty());
    }
    auto r = cli({"wbar", path("corpus.manifest.json"), "--cat", "WTC", "--trunc", "2"});
    CHECK(r.out.find("(2)=7") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs") {
    const auto dir = fs::temp_directory_path();
    const std::string a = (dir / "tcat_report_a.json").string(), b = (dir / "tcat_report_b.json").string();
    auto r1 = cli({"verify", "retractions", path("corpus.manifest.json"), "--out", a});
    auto r2 = cli({"verify", "retractions", path("corpus.manifest.json"), "--out", b});
    CHECK(r1.out == r2.out);
    auto slurp = [](const std::string& p) {
        std::ifstream in(p);
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    };
    const std::string ja = slurp(a);
    CHECK(ja == slurp(b));
    auto j = Json::parse(ja);
    CHECK(j["suite"] == "retractions");
    CHECK(j["truncation"] == 3);
    CHECK(j["checks"].size() > 5);
    CHECK(j["checks"][0].contains("status"));
}

TEST_CASE("injected faces break the simplicial identities") {
    corpus::Fixture fx;
    Json spec = Json::parse(R"([{"target": "x", "kind": "face", "level": [2], "dir": 0, "index": 1, "simplex": 0}])");
    Injector inj(spec);
    SSetPtr x = nerve_category(fx.wa, 3);
    auto y = inj.apply<1>("x", x);
    CHECK(check_simplicial_identities(*x).ok());
    CHECK_FALSE(check_simplicial_identities(*y).ok());
    CHECK(inj.unused().empty());
}
