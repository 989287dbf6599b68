#include "generator.hpp"
#include "reference.hpp"

#include "sltl/errors.hpp"
#include "sltl/oracle.hpp"
#include "sltl/parser.hpp"
#include "sltl/semantics.hpp"
#include "sltl/solver.hpp"
#include "sltl/syntax.hpp"
#include "sltl/translate.hpp"

#include <gtest/gtest.h>

using namespace sltl;
using namespace sltl::testing;

namespace {

void expect_valid(const Formula& f, const Verdict& v) {
    ASSERT_EQ(v.status, Status::Sat) << to_string(f);
    ASSERT_TRUE(v.witness.has_value());
    EXPECT_TRUE(check_witness(f, v.witness->model, v.witness->designated)) << to_string(f);
    auto idx = v.witness->model.index_of(v.witness->designated);
    ASSERT_TRUE(idx.has_value());
    EXPECT_TRUE(ref_eval(v.witness->model, *idx, 0, f)) << to_string(f);
}

} // namespace

TEST(Solve, LtlPslExample) {
    Formula f = parse("G([@*]!m) -> [@*]t");
    Verdict v = solve(f);
    expect_valid(f, v);
    EXPECT_EQ(v.engine, Engine::Automaton);
}

TEST(Solve, LtlContradiction) {
    Verdict v = solve(parse("(p U q) & G !q"));
    EXPECT_EQ(v.status, Status::Unsat);
    EXPECT_EQ(v.engine, Engine::Automaton);
    EXPECT_FALSE(v.witness.has_value());
}

TEST(Solve, CounterStandpointIsUnknown) {
    Formula f = gen_phi_c(1);
    SolveOptions opts;
    opts.bounds = SearchBounds{2, 1, 2, {}};
    Verdict v = solve(f, opts);
    EXPECT_EQ(v.status, Status::Unknown);
    EXPECT_EQ(v.engine, Engine::Oracle);
    ASSERT_TRUE(v.translation.has_value());
    EXPECT_EQ(*v.translation, sltl_to_ptls5(f));
    ASSERT_TRUE(v.bounds.has_value());
    EXPECT_EQ(*v.bounds, opts.bounds);
}

TEST(Solve, StrictFragmentMode) {
    SolveOptions opts;
    opts.fragment_strict = true;
    Verdict v = solve(gen_phi_c(1), opts);
    EXPECT_EQ(v.status, Status::OutOfFragment);
    EXPECT_EQ(v.engine, Engine::None);
}

TEST(Solve, FullFragmentSatFromOracle) {
    Formula f = parse("[@*](G !malf -> test) & <@it> F malf");
    Verdict v = solve(f);
    expect_valid(f, v);
    EXPECT_EQ(v.engine, Engine::Oracle);
}

TEST(Solve, PslRoutesToGridSearch) {
    Formula f = parse("!(@s <= @t) & <@s> p & [@t] !p");
    Verdict v = solve(f);
    expect_valid(f, v);
    EXPECT_EQ(v.engine, Engine::Psl);
    EXPECT_EQ(v.witness->model.prefix_len, 0u);
    EXPECT_EQ(v.witness->model.period_len, 1u);
    EXPECT_EQ(solve(parse("<@s> p & [@t] !p & @s <= @t")).status, Status::Unsat);
}

TEST(Solve, SharpeningPartitionsUnderTime) {
    Formula f = parse("G <@s> p & F [@t] !p & (@s <= @t | X q)");
    Verdict v = solve(f);
    expect_valid(f, v);
    ASSERT_TRUE(v.partition.has_value());
    EXPECT_EQ(v.partition->i_minus.size(), 1u);
    EXPECT_EQ(solve(parse("G <@s> p & F [@s] !p")).status, Status::Unsat);
}

TEST(Solve, StandpointFreeWitnessUsesOneSet) {
    Formula f = parse("G F p & X !p");
    Verdict v = solve(f);
    expect_valid(f, v);
    EXPECT_EQ(v.witness->model.traces.size(), uniform_grid_width(f));
}

TEST(Solve, UniversalBoxWitness) {
    // A box is read at position 0 only; under G it constrains every position.
    for (const char* text : {"[@*] p & F q", "G [@*] p & F q"}) {
        Formula f = parse(text);
        Verdict v = solve(f);
        expect_valid(f, v);
        const auto& m = v.witness->model;
        const bool everywhere = f.lhs().op() != Op::Box;
        for (const auto& t : m.traces)
            for (std::size_t i = 0; i < (everywhere ? m.length() : 1); ++i)
                EXPECT_TRUE(t.trace.at(i).contains("p")) << text;
        bool reaches_q = false;
        for (std::size_t i = 0; i < m.length(); ++i)
            reaches_q = reaches_q || m.traces[*m.index_of(v.witness->designated)].trace.at(i).contains("q");
        EXPECT_TRUE(reaches_q) << text;
    }
}

TEST(Solve, ParallelBatchesMatchSequential) {
    GenConfig cfg;
    cfg.shape = Shape::LtlPsl;
    cfg.max_depth = 4;
    cfg.props = {"p", "q"};
    cfg.standpoints = {"s", "t"};
    cfg.max_sharper = 2;
    FormulaGen gen(cfg, 88);
    SolveOptions par;
    par.jobs = 3;
    for (int i = 0; i < 40; ++i) {
        Formula f = gen.next();
        Verdict a = solve(f);
        Verdict b = solve(f, par);
        EXPECT_EQ(a.status, b.status) << to_string(f);
        EXPECT_EQ(a.partition, b.partition) << to_string(f);
    }
}

TEST(Solve, AgreesWithOracleOnLtlPsl) {
    GenConfig cfg;
    cfg.shape = Shape::LtlPsl;
    cfg.max_depth = 3;
    cfg.props = {"p", "q"};
    cfg.standpoints = {"s", "t"};
    cfg.max_sharper = 1;
    FormulaGen gen(cfg, 4242);
    for (int i = 0; i < 80; ++i) {
        Formula f = gen.next();
        Verdict v = solve(f);
        if (v.status == Status::Sat)
            expect_valid(f, v);
        if (oracle_sat(f, SearchBounds{2, 1, 2, {}}))
            EXPECT_EQ(v.status, Status::Sat) << to_string(f);
    }
}

TEST(Solve, AutomatonResourceLimit) {
    SolveOptions opts;
    opts.automaton.max_states = 3;
    EXPECT_THROW(solve(parse("G F p & G F q & G F !p"), opts), ResourceError);
}

TEST(CheckWitness, FlippedBitFails) {
    Formula f = prop("p");
    Verdict v = solve(f);
    ASSERT_EQ(v.status, Status::Sat);
    SLTLModel m = v.witness->model;
    EXPECT_TRUE(check_witness(f, m, v.witness->designated));
    auto idx = *m.index_of(v.witness->designated);
    auto& val = m.prefix_len > 0 ? m.traces[idx].trace.prefix[0] : m.traces[idx].trace.period[0];
    val.erase("p");
    EXPECT_FALSE(check_witness(f, m, v.witness->designated));
    EXPECT_THROW(check_witness(f, m, "missing"), ModelError);
}

TEST(CheckWitness, TransportedPtls5Witness) {
    Formula f = parse("<> p & [] F q");
    auto w = oracle_sat_ptls5(f, SearchBounds{2, 1, 2, {}});
    ASSERT_TRUE(w.has_value());
    SLTLModel m = SLTLModel::from_ptls5(w->model);
    EXPECT_TRUE(check_witness(t1(f), m, w->designated));
}

TEST(Solve, Names) {
    EXPECT_EQ(to_string(Status::Sat), "sat");
    EXPECT_EQ(to_string(Status::OutOfFragment), "out_of_fragment");
    EXPECT_EQ(to_string(Engine::Automaton), "automaton");
}
