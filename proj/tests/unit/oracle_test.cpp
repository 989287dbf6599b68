#include "generator.hpp"
#include "reference.hpp"

#include "sltl/errors.hpp"
#include "sltl/oracle.hpp"
#include "sltl/parser.hpp"
#include "sltl/semantics.hpp"
#include "sltl/translate.hpp"

#include <gtest/gtest.h>

using namespace sltl;
using namespace sltl::testing;

TEST(Oracle, Contradiction) {
    EXPECT_FALSE(oracle_sat(parse("p & !p"), SearchBounds{3, 2, 2, {}}).has_value());
}

TEST(Oracle, SmallModalModel) {
    Formula f = parse("<@s> p & [@s] !q");
    auto w = oracle_sat_shape(f, 2, 0, 1);
    ASSERT_TRUE(w.has_value());
    EXPECT_TRUE(eval_sltl(w->model, w->designated, 0, f));
    auto w1 = oracle_sat(f, SearchBounds{2, 0, 1, {}});
    ASSERT_TRUE(w1.has_value());
    EXPECT_EQ(w1->model.traces.size(), 1u);
}

TEST(Oracle, CounterStandpointHasNoFiniteModel) {
    Formula f = gen_phi_c(1);
    EXPECT_FALSE(oracle_sat(f, SearchBounds{2, 1, 2, {}}).has_value());
}

TEST(Oracle, MinimalShapeFirst) {
    auto w = oracle_sat(parse("X X p & G F !p"), SearchBounds{2, 3, 3, {}});
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->model.traces.size(), 1u);
    EXPECT_EQ(w->model.prefix_len, 0u);
    EXPECT_EQ(w->model.period_len, 2u);
}

TEST(Oracle, WitnessIsLexicographicallyMinimal) {
    // Bits are minimized in proposition order, so p is dropped before q.
    auto w = oracle_sat(parse("p | q"), SearchBounds{1, 0, 1, {}});
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->model.traces[0].trace.at(0), (Valuation{"q"}));
}

TEST(Oracle, ExtraPropsAppearInVocabulary) {
    SearchBounds b{1, 0, 1, {"z"}};
    EXPECT_NO_THROW(b.validate());
    EXPECT_TRUE(oracle_sat(parse("p"), b).has_value());
}

TEST(Oracle, InvalidBounds) {
    EXPECT_THROW(oracle_sat(parse("p"), SearchBounds{0, 0, 1, {}}), Error);
    EXPECT_THROW(oracle_sat(parse("p"), SearchBounds{1, 0, 0, {}}), Error);
}

TEST(Oracle, VariableLimit) {
    OracleLimits lim;
    lim.max_vars = 10;
    try {
        oracle_sat(parse("G F p & F G !p"), SearchBounds{3, 2, 2, {}}, lim);
        FAIL() << "expected ResourceError";
    } catch (const ResourceError& e) {
        EXPECT_EQ(e.limit(), "oracle-vars");
    }
}

TEST(Oracle, Ptls5Examples) {
    EXPECT_TRUE(oracle_sat_ptls5(parse("<> p"), SearchBounds{1, 0, 1, {}}).has_value());
    for (std::size_t k = 1; k <= 3; ++k)
        EXPECT_FALSE(oracle_sat_ptls5(parse("[] p & <> !p"), SearchBounds{k, 2, 2, {}}).has_value());
    auto w = oracle_sat_ptls5(parse("G <> p"), SearchBounds{1, 0, 1, {}});
    ASSERT_TRUE(w.has_value());
    EXPECT_TRUE(eval_ptls5(w->model, w->designated, 0, parse("G <> p")));
    EXPECT_THROW(oracle_sat_ptls5(parse("<@s> p"), SearchBounds{1, 0, 1, {}}), EvalError);
}

TEST(Oracle, AgreesWithNaiveEnumeration) {
    GenConfig cfg;
    cfg.shape = Shape::Full;
    cfg.max_depth = 3;
    cfg.props = {"p"};
    cfg.standpoints = {"s"};
    cfg.max_sharper = 1;
    FormulaGen gen(cfg, 2027);
    const NaiveBounds nb{2, 1, 1};
    for (int i = 0; i < 60; ++i) {
        Formula f = gen.next();
        auto w = oracle_sat(f, SearchBounds{nb.max_traces, nb.max_prefix, nb.max_period, {}});
        EXPECT_EQ(w.has_value(), naive_sat(f, nb)) << to_string(f);
        if (w)
            EXPECT_TRUE(ref_eval(w->model, *w->model.index_of(w->designated), 0, f)) << to_string(f);
    }
}
