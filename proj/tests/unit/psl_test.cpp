#include "generator.hpp"
#include "reference.hpp"
#include "type_oracle.hpp"

#include "sltl/errors.hpp"
#include "sltl/parser.hpp"
#include "sltl/psl.hpp"
#include "sltl/solver.hpp"

#include <gtest/gtest.h>

using namespace sltl;
using namespace sltl::testing;

namespace {

const Standpoint kStar = Standpoint::universal();
const Standpoint kS{"s"};

PSLModel two_set_grid(std::size_t n) {
    PSLModel m;
    m.s_family.sets = {{kStar}, {kStar, kS}};
    m.n = n;
    for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t j = 1; j <= n; ++j)
            m.valuation[{c, j}] = {};
    return m;
}

} // namespace

TEST(PslEval, SingleCell) {
    PSLModel m;
    m.s_family.sets = {{kStar}};
    m.valuation[{0, 1}] = {"p"};
    EXPECT_TRUE(psl_eval(m, {0, 1}, parse("<> p")));
    EXPECT_FALSE(psl_eval(m, {0, 1}, parse("<> !p")));
}

TEST(PslEval, BoxOverStandpointCells) {
    // With family {{*}, {*, s}} and one column, the only s-cell is ({*, s}, 1).
    for (bool p_at_s : {false, true}) {
        PSLModel m = two_set_grid(1);
        if (p_at_s)
            m.valuation[{1, 1}] = {"p"};
        EXPECT_EQ(psl_eval(m, {0, 1}, parse("[@s] p")), p_at_s);
        EXPECT_EQ(psl_eval(m, {1, 1}, parse("[@s] p")), p_at_s);
    }
    EXPECT_FALSE(psl_eval(two_set_grid(1), {0, 1}, parse("[@s] false")));
}

TEST(PslEval, SharpeningIsSetInclusion) {
    PSLModel m;
    m.s_family.sets = {{kStar}, {kStar, kS}, {kStar, kS, Standpoint("t")}};
    for (std::size_t c = 0; c < 3; ++c)
        m.valuation[{c, 1}] = {};
    EXPECT_TRUE(psl_eval(m, {0, 1}, parse("@t <= @s")));
    EXPECT_FALSE(psl_eval(m, {0, 1}, parse("@s <= @t")));
    EXPECT_TRUE(psl_eval(m, {0, 1}, parse("@s <= @*")));
}

TEST(PslModel, Validation) {
    PSLModel m = two_set_grid(2);
    EXPECT_NO_THROW(m.validate());
    PSLModel missing = m;
    missing.valuation.erase({1, 2});
    EXPECT_THROW(missing.validate(), ModelError);
}

TEST(Normalize, SplitsTopLevelAtoms) {
    auto r = normalize_for_theorem(parse("@s <= @s' & <@s> p"));
    auto* n = std::get_if<NormalizedPsl>(&r);
    ASSERT_NE(n, nullptr);
    std::vector<SharpeningAtom> want{{kS, Standpoint("s'")}, {kStar, kStar}};
    EXPECT_EQ(n->phi1, want);
    EXPECT_EQ(n->phi2, parse("<@s> p"));
}

TEST(Normalize, PushesNegation) {
    auto r = normalize_for_theorem(parse("<@s> !(p & q)"));
    auto* n = std::get_if<NormalizedPsl>(&r);
    ASSERT_NE(n, nullptr);
    EXPECT_EQ(n->phi1, (std::vector<SharpeningAtom>{{kStar, kStar}}));
    EXPECT_EQ(n->phi2, parse("<@s> (!p | !q)"));
}

TEST(Normalize, NegatedAtomIsUnrepresentable) {
    auto r = normalize_for_theorem(parse("!(@s <= @s')"));
    EXPECT_TRUE(std::holds_alternative<Unrepresentable>(r));
    EXPECT_THROW(normalize_for_theorem(parse("X p")), FragmentError);
}

TEST(SharpeningClosure, ImagesAreReflexiveTransitiveAndContainStar) {
    std::vector<SharpeningAtom> atoms{{kS, Standpoint("t")}, {Standpoint("t"), Standpoint("u")}};
    SharpeningClosure r(atoms, {kS, Standpoint("t"), Standpoint("u")});
    EXPECT_TRUE(r.entails(kS, Standpoint("u")));
    EXPECT_TRUE(r.entails(kS, kS));
    EXPECT_TRUE(r.entails(kS, kStar));
    EXPECT_FALSE(r.entails(Standpoint("u"), kS));
    SFamily fam = SFamily::from(r);
    EXPECT_EQ(fam.sets[fam.s_star()], (std::set<Standpoint>{kStar}));
    EXPECT_EQ(fam.sets.size(), 4u);
}

TEST(PslSat, Proposition) {
    auto w = psl_sat(std::vector<SharpeningAtom>{}, prop("p"));
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->designated, Cell(0, 1));
    EXPECT_TRUE(w->model.valuation.at({0, 1}).contains("p"));
}

TEST(PslSat, DirectContradiction) {
    EXPECT_FALSE(psl_sat(std::vector<SharpeningAtom>{}, parse("<@s> p & [@s] !p")).has_value());
}

TEST(PslSat, TwoDistinctStandpointCells) {
    Formula phi2 = parse("<@s> p & <@s> !p");
    auto w = psl_sat(std::vector<SharpeningAtom>{}, phi2);
    ASSERT_TRUE(w.has_value());
    EXPECT_TRUE(psl_eval(w->model, w->designated, phi2));
    // Brute force over the grid {{*}, {*, s}} x 3 agrees.
    bool found = false;
    for (unsigned bits = 0; bits < 64 && !found; ++bits) {
        PSLModel m = two_set_grid(3);
        for (unsigned k = 0; k < 6; ++k)
            if (bits >> k & 1)
                m.valuation[{k / 3, k % 3 + 1}] = {"p"};
        found = psl_eval(m, {0, 1}, phi2);
    }
    EXPECT_TRUE(found);
}

TEST(PslSat, FixedGrid) {
    std::vector<SharpeningAtom> none;
    SharpeningClosure r(none, {kS});
    GridSpec grid{SFamily::from(r), 2};
    auto w = psl_sat(none, parse("<@s> p & <@s> !p"), grid);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->model.n, 2u);
    EXPECT_EQ(w->model.s_family, grid.family);
    EXPECT_FALSE(psl_sat(none, parse("<@s> p & <@s> (q & !p) & <@s> (!q & !p)"), grid).has_value());
}

TEST(PslSatGeneral, NegatedSharpening) {
    Formula f = parse("!(@s <= @s')");
    auto w = psl_sat_general(f);
    ASSERT_TRUE(w.has_value());
    EXPECT_TRUE(psl_eval(w->model, w->designated, f));
    bool separating = false;
    for (const auto& S : w->model.s_family.sets)
        separating = separating || (S.contains(kS) && !S.contains(Standpoint("s'")));
    EXPECT_TRUE(separating);
}

TEST(PslSatGeneral, AtomAndItsNegation) {
    EXPECT_FALSE(psl_sat_general(parse("@s <= @s' & !(@s <= @s')")).has_value());
}

TEST(PslSatGeneral, NestedModalitiesFlatten) {
    Formula nested = parse("<@s> <@t> p");
    Formula flat = parse("<@t> p");
    EXPECT_EQ(psl_sat_general(nested).has_value(), psl_sat_general(flat).has_value());
    TypeOracle oracle({"p"}, {"s", "t"});
    EXPECT_EQ(oracle.satisfiable(nested), psl_sat_general(nested).has_value());
    EXPECT_EQ(naive_sat(nested, NaiveBounds{2, 0, 1}), psl_sat_general(nested).has_value());
}

TEST(PslSatGeneral, RejectsTemporalInput) { EXPECT_THROW(psl_sat_general(parse("X p")), FragmentError); }

TEST(PslSatGeneral, AgreesWithTypeOracle) {
    GenConfig cfg;
    cfg.shape = Shape::Psl;
    cfg.max_depth = 5;
    cfg.props = {"p"};
    cfg.standpoints = {"s", "t"};
    cfg.max_sharper = 2;
    FormulaGen gen(cfg, 77);
    TypeOracle oracle({"p"}, {"s", "t"});
    for (int i = 0; i < 400; ++i) {
        Formula f = gen.next();
        auto w = psl_sat_general(f);
        ASSERT_EQ(w.has_value(), oracle.satisfiable(f)) << to_string(f);
        if (w) {
            EXPECT_TRUE(psl_eval(w->model, w->designated, f)) << to_string(f);
            Witness lifted = lift_psl_witness(*w);
            EXPECT_TRUE(check_witness(f, lifted.model, lifted.designated)) << to_string(f);
        }
    }
}

TEST(StandpointConsistency, Examples) {
    std::vector<Formula> clash{prop("p"), neg(prop("p"))};
    EXPECT_FALSE(standpoint_consistent(clash));
    std::vector<Formula> star{parse("<@s> p"), parse("[@*] !p")};
    EXPECT_FALSE(standpoint_consistent(star));
    std::vector<Formula> ok{parse("<@s> p"), parse("<@s> !p"), parse("@s <= @s'")};
    EXPECT_TRUE(standpoint_consistent(ok));
    EXPECT_TRUE(standpoint_consistent(ok, false));
    clear_consistency_cache();
    EXPECT_TRUE(standpoint_consistent(ok));
}
