#include "sltl/errors.hpp"
#include "sltl/json_io.hpp"
#include "sltl/parser.hpp"
#include "sltl/solver.hpp"
#include "sltl/translate.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

using namespace sltl;
using nlohmann::json;

namespace {

Witness sample() {
    Witness w;
    w.model.prefix_len = 1;
    w.model.period_len = 2;
    w.model.traces.push_back({"t0", {{{"p"}}, {{"p", "q"}, {}}}});
    w.model.traces.push_back({"t1", {{{}}, {{}, {"q"}}}});
    w.model.lambda[Standpoint::universal()] = {"t0", "t1"};
    w.model.lambda[Standpoint("s")] = {"t1"};
    w.designated = "t0";
    return w;
}

} // namespace

TEST(Json, WitnessSchemaShape) {
    json j = json::parse(witness_to_json(sample()));
    EXPECT_EQ(j["prefix_len"], 1);
    EXPECT_EQ(j["period_len"], 2);
    EXPECT_EQ(j["traces"]["t0"].size(), 3u);
    EXPECT_EQ(j["traces"]["t0"][1], json::array({"p", "q"}));
    EXPECT_EQ(j["lambda"]["@s"], json::array({"t1"}));
    EXPECT_EQ(j["lambda"]["@*"].size(), 2u);
    EXPECT_EQ(j["designated"], "t0");
}

TEST(Json, WitnessRoundTrip) {
    Witness w = sample();
    Witness back = witness_from_json(witness_to_json(w, 2));
    EXPECT_EQ(back.model, w.model);
    EXPECT_EQ(back.designated, w.designated);
}

TEST(Json, UniversalStandpointMayBeOmitted) {
    Witness w = witness_from_json(
        R"({"prefix_len":0,"period_len":1,"traces":{"a":[["p"]],"b":[[]]},"lambda":{},"designated":"b"})");
    EXPECT_EQ(w.model.lambda.at(Standpoint::universal()), (std::set<TraceId>{"a", "b"}));
}

TEST(Json, MalformedWitnessNamesTheSchema) {
    for (const char* bad : {
             R"({"prefix_len":0,"period_len":1,"traces":{"a":[["p"]]},"lam)",
             R"([1, 2])",
             R"({"prefix_len":0,"period_len":0,"traces":{"a":[]},"lambda":{},"designated":"a"})",
             R"({"prefix_len":0,"period_len":1,"traces":{"a":[["p"],["q"]]},"lambda":{},"designated":"a"})",
             R"({"prefix_len":0,"period_len":1,"traces":{"a":[["p"]]},"lambda":{"s":["a"]},"designated":"a"})",
             R"({"prefix_len":0,"period_len":1,"traces":{"a":[["p"]]},"lambda":{},"designated":"z"})",
             R"({"prefix_len":-1,"period_len":1,"traces":{"a":[["p"]]},"lambda":{},"designated":"a"})",
         }) {
        try {
            witness_from_json(bad);
            ADD_FAILURE() << "accepted: " << bad;
        } catch (const ModelError& e) {
            EXPECT_NE(std::string(e.what()).find("\"prefix_len\":k"), std::string::npos);
        }
    }
}

TEST(Json, PslWitness) {
    PslWitness w;
    w.model.s_family.sets = {{Standpoint::universal()}, {Standpoint::universal(), Standpoint("s")}};
    w.model.n = 1;
    w.model.valuation[{0, 1}] = {"p"};
    w.model.valuation[{1, 1}] = {};
    json j = json::parse(psl_witness_to_json(w));
    EXPECT_EQ(j["s_family"], json::parse(R"([["@*"],["@*","@s"]])"));
    EXPECT_EQ(j["n"], 1);
    EXPECT_EQ(j["valuation"]["0,1"], json::array({"p"}));
    EXPECT_EQ(j["designated"], "0,1");
}

TEST(Json, SatVerdict) {
    Verdict v = solve(parse("!(@s <= @t) | X p"));
    json j = json::parse(verdict_to_json(v));
    EXPECT_EQ(j["status"], "sat");
    EXPECT_EQ(j["engine"], "automaton");
    EXPECT_TRUE(j["partition"].contains("i_plus"));
    EXPECT_TRUE(j["partition"].contains("i_minus"));
    Witness back = witness_from_json(j["witness"].dump());
    EXPECT_TRUE(check_witness(parse("!(@s <= @t) | X p"), back.model, back.designated));
}

TEST(Json, UnknownVerdictCarriesBoundsAndTranslation) {
    SolveOptions opts;
    opts.bounds = SearchBounds{1, 0, 1, {}};
    Verdict v = solve(gen_phi_c(1), opts);
    ASSERT_EQ(v.status, Status::Unknown);
    json j = json::parse(verdict_to_json(v));
    EXPECT_EQ(j["status"], "unknown");
    EXPECT_EQ(j["engine"], "oracle");
    EXPECT_EQ(j["bounds"], json::parse(R"({"traces":1,"prefix":0,"period":1})"));
    EXPECT_EQ(parse(j["translation"].get<std::string>(), {.allow_reserved = true}), sltl_to_ptls5(gen_phi_c(1)));
    EXPECT_TRUE(j["witness"].is_null());
}

TEST(Json, UnsatVerdict) {
    json j = json::parse(verdict_to_json(solve(parse("p & !p"))));
    EXPECT_EQ(j["status"], "unsat");
    EXPECT_TRUE(j["witness"].is_null());
}
