#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <sphertwist/report.hpp>

using namespace sphertwist;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path catalog() { return std::filesystem::path(SPHERTWIST_DATA_DIR) / "catalog"; }

ErrorKind kind_of(const std::string& text, std::string* msg = nullptr) {
    try {
        parse_scenario(text);
    } catch (const Error& e) {
        if (msg) *msg = e.what();
        return e.kind();
    }
    return ErrorKind::InvalidArgument;
}

} // namespace

TEST(Io, MinimalDocumentIsBaseField) {
    auto d = parse_scenario(R"({"field": "rational"})");
    EXPECT_EQ(d.algebra.form, "field");
    auto b = build(d);
    EXPECT_EQ(b.algebra->dim(), 1u);
    auto r = run(d);
    EXPECT_EQ(r.exit_code(), 0);
    EXPECT_TRUE(r.body.contains("scenario"));
    EXPECT_FALSE(r.body.contains("spherical"));
}

TEST(Io, TruncatedFileGivesLocatedParseError) {
    std::string msg;
    EXPECT_EQ(kind_of("{\n  \"field\": \"rational\",\n  \"modules\": [", &msg), ErrorKind::ParseError);
    EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
    EXPECT_NE(msg.find("column"), std::string::npos) << msg;
}

TEST(Io, SchemaErrorsCarryPointer) {
    std::string msg;
    EXPECT_EQ(kind_of(R"({"field": "reals"})", &msg), ErrorKind::SchemaError);
    EXPECT_NE(msg.find("/field"), std::string::npos);
    EXPECT_EQ(kind_of(R"({"field": {"prime": 6}})", &msg), ErrorKind::SchemaError);
    EXPECT_EQ(kind_of(R"({"field": "rational", "modules": [{"name": "M", "kind": "weird"}]})", &msg), ErrorKind::SchemaError);
    EXPECT_NE(msg.find("/modules/0/kind"), std::string::npos) << msg;
    EXPECT_EQ(kind_of(R"({"field": "rational", "scenario": {"X": [{"module": "nope"}]}})", &msg), ErrorKind::SchemaError);
    EXPECT_NE(msg.find("/scenario/X/0/module"), std::string::npos) << msg;
    EXPECT_EQ(kind_of(R"({"field": "rational", "modules": [{"name": "A", "kind": "regular"}],
                          "scenario": {"X": [{"module": "A", "multiplicity": 0}]}})", &msg), ErrorKind::SchemaError);
    EXPECT_EQ(kind_of(R"({"field": "rational", "algebra": {"structure": {"basis": ["1"], "mult": [[["1.5"]]], "unit": ["1"]}}})", &msg),
              ErrorKind::SchemaError);
    EXPECT_NE(msg.find("/algebra/structure/mult/0/0/0"), std::string::npos) << msg;
    EXPECT_EQ(kind_of(R"({"field": "rational", "extra": 1})", &msg), ErrorKind::SchemaError);
}

TEST(Io, RoundTripOnCatalog) {
    std::size_t n = 0;
    for (const auto& entry : std::filesystem::directory_iterator(catalog())) {
        auto d1 = parse_scenario(slurp(entry.path()));
        auto d2 = parse_scenario(scenario_to_json(d1).dump(2));
        EXPECT_TRUE(d1 == d2) << entry.path();
        EXPECT_EQ(scenario_to_json(d1).dump(), scenario_to_json(d2).dump());
        ++n;
    }
    EXPECT_GE(n, 12u);
}

TEST(Io, FixCtx1BuildsTheFixture) {
    auto d = parse_scenario(slurp(catalog() / "fix_ctx1.json"));
    auto b = build(d);
    auto ctx = build_scenario_context(d, b);
    EXPECT_EQ(b.algebra->dim(), 2u);
    EXPECT_EQ(ctx.Lambda->dim(), 5u);
    EXPECT_EQ(ctx.Lambda_con()->dim(), 1u);
}

TEST(Io, ActionsModuleMatchesSimple) {
    // S over k[x]/x^2 given by explicit actions of (1, x)
    auto d = parse_scenario(R"({"field": "rational",
        "algebra": {"structure": {"basis": ["1", "x"], "mult": [[["1","0"],["0","1"]],[["0","1"],["0","0"]]], "unit": [1, 0]}},
        "modules": [{"name": "A", "kind": "regular"}, {"name": "S", "kind": "actions", "dim": 1, "actions": [[["1"]], [["0"]]]},
                    {"name": "W", "kind": "omega", "of": "S"}],
        "scenario": {"X": [{"module": "A", "projective_part": true}, {"module": "S"}], "t": 2, "audits": ["spherical"]}})");
    auto b = build(d);
    EXPECT_EQ(b.modules.at("W")->dim(), 1u);
    auto r = run(d);
    EXPECT_EQ(r.exit_code(), 0);
    EXPECT_TRUE(r.body["spherical"][0]["verdict"].get<bool>());
}

TEST(Io, BadActionsRejected) {
    auto d = parse_scenario(R"({"field": "rational",
        "algebra": {"structure": {"basis": ["1", "x"], "mult": [[["1","0"],["0","1"]],[["0","1"],["0","0"]]], "unit": [1, 0]}},
        "modules": [{"name": "S", "kind": "actions", "dim": 1, "actions": [[["1"]]]}]})");
    EXPECT_THROW(build(d), Error);
}

TEST(Io, PrimeFieldQuiver) {
    auto d = parse_scenario(slurp(catalog() / "fix_ctx3.json"));
    d.prime = 5;
    auto b = build(d);
    EXPECT_EQ(b.algebra->dim(), 6u);
    auto r = run(d, RunOptions{std::nullopt, std::nullopt, std::vector<std::string>{"spherical"}, 1});
    EXPECT_TRUE(r.body["spherical"][0]["verdict"].get<bool>());
    EXPECT_FALSE(r.body["spherical"][1]["verdict"].get<bool>());
}

TEST(Report, CtxThreeBVerdicts) {
    auto d = parse_scenario(slurp(catalog() / "fix_ctx3b.json"));
    auto r = run(d, RunOptions{std::nullopt, std::nullopt, std::vector<std::string>{"spherical"}, 1});
    std::vector<bool> v, agree;
    for (const auto& s : r.body["spherical"]) {
        v.push_back(s["verdict"].get<bool>());
        agree.push_back(s["agreement"].get<bool>());
    }
    EXPECT_EQ(v, (std::vector<bool>{false, false, true}));
    EXPECT_EQ(agree, (std::vector<bool>{true, true, true}));
    EXPECT_EQ(r.exit_code(), 0);
}

TEST(Report, ThreadCountDoesNotChangeBytes) {
    auto d = parse_scenario(slurp(catalog() / "fix_ctx1.json"));
    auto one = serialize_report(run(d, RunOptions{std::nullopt, std::nullopt, std::nullopt, 1}).body, "json");
    auto four = serialize_report(run(d, RunOptions{std::nullopt, std::nullopt, std::nullopt, 4}).body, "json");
    EXPECT_EQ(one, four);
    EXPECT_EQ(one, serialize_report(run(d, RunOptions{std::nullopt, std::nullopt, std::nullopt, 1}).body, "json"));
}

TEST(Report, NonPerfectKernelExitsWithTruncation) {
    auto d = parse_scenario(slurp(catalog() / "fix_a_to_k.json"));
    auto r = run(d);
    EXPECT_EQ(r.exit_code(), 3);
    EXPECT_FALSE(r.body["twist"]["verdict"].get<bool>());
}

TEST(Report, WindowRestrictsTables) {
    auto d = parse_scenario(slurp(catalog() / "fix_ctx1.json"));
    auto r = run(d, RunOptions{std::nullopt, std::make_pair(0, 0), std::vector<std::string>{"twist"}, 1});
    for (const auto& tr : r.body["triangles"]) {
        EXPECT_EQ(tr["cone"]["lo"], 0);
        EXPECT_LE(tr["cone"]["dims"].size(), 1u);
    }
}

TEST(Io, ConstructionErrorsAreSchemaErrors) {
    auto expect_schema = [](const std::string& text, const std::string& where) {
        try {
            auto d = parse_scenario(text);
            auto b = build(d);
            if (!d.scenario.X.empty()) build_scenario_context(d, b);
            if (!d.scenario.surjection.ideal.empty()) build_surjection(d, b);
            ADD_FAILURE() << "no error for " << where;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::SchemaError) << e.what();
            EXPECT_NE(std::string(e.what()).find(where), std::string::npos) << e.what();
        }
    };
    // x is not a unit
    expect_schema(R"({"field": "rational", "algebra": {"structure": {"basis": ["1", "x"],
        "mult": [[["1","0"],["0","1"]],[["0","1"],["0","0"]]], "unit": [0, 1]}}})", "/algebra");
    // actions that do not respect x*x = 0
    expect_schema(R"({"field": "rational", "algebra": {"structure": {"basis": ["1", "x"],
        "mult": [[["1","0"],["0","1"]],[["0","1"],["0","0"]]], "unit": [1, 0]}},
        "modules": [{"name": "M", "kind": "actions", "dim": 1, "actions": [[["1"]], [["1"]]]}]})", "/modules/0/actions");
    // X without a progenerator
    expect_schema(R"({"field": "rational", "algebra": {"structure": {"basis": ["1", "x"],
        "mult": [[["1","0"],["0","1"]],[["0","1"],["0","0"]]], "unit": [1, 0]}},
        "modules": [{"name": "S", "kind": "simple", "vertex": 0}], "scenario": {"X": [{"module": "S"}]}})", "/scenario/X");
    // a one-sided span that is not an ideal of a path algebra
    expect_schema(R"({"field": "rational", "algebra": {"quiver": {"vertices": ["1", "2"], "arrows": [{"name": "a", "from": "1", "to": "2"}]}},
        "scenario": {"surjection": {"ideal": "rows", "rows": [[1, 0, 0]]}}})", "/scenario/surjection/rows");
    // 1/5 over F_5
    expect_schema(R"({"field": {"prime": 5}, "algebra": {"structure": {"basis": ["1"], "mult": [[["1/5"]]], "unit": [1]}}})",
                  "/algebra/structure/mult/0/0/0");
}
