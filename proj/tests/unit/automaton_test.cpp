#include "sltl/automaton.hpp"
#include "sltl/closure.hpp"
#include "sltl/errors.hpp"
#include "sltl/parser.hpp"
#include "sltl/semantics.hpp"
#include "sltl/solver.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace sltl;

namespace {

std::vector<SElementarySet> drain(StateStream s) {
    std::vector<SElementarySet> out;
    while (auto b = s.next())
        out.push_back(std::move(*b));
    return out;
}

SElementarySet with(const ClosureSet& cl, std::initializer_list<Formula> members) {
    SElementarySet b(cl.size());
    for (const auto& f : members)
        b.set(cl.index_of(f), true);
    return b;
}

} // namespace

TEST(Gnba, InitialStatesOfProposition) {
    Gnba a(prop("p"));
    auto states = drain(a.initial_states());
    // Closure {true, false, p, !p}: p is forced.
    ASSERT_EQ(states.size(), 1u);
    std::size_t p = a.closure().index_of(prop("p"));
    for (const auto& b : states) {
        EXPECT_TRUE(b.contains(p));
        EXPECT_TRUE(a.is_elementary(b));
    }
}

TEST(Gnba, InitialStatesCarryTheFormula) {
    Gnba a(parse("p | X q"));
    auto states = drain(a.initial_states());
    EXPECT_EQ(states.size(), 6u);
    std::size_t root = a.closure().index_of(a.phi_d());
    for (const auto& b : states)
        EXPECT_TRUE(b.contains(root));
}

TEST(Gnba, ContradictionHasNoStates) {
    EXPECT_TRUE(drain(Gnba(parse("p & !p")).initial_states()).empty());
}

TEST(Gnba, StandpointInconsistencyHasNoStates) {
    EXPECT_TRUE(drain(Gnba(parse("<@s> p & [@*] !p")).initial_states()).empty());
}

TEST(Gnba, NextPropagates) {
    for (bool positive : {true, false}) {
        Formula f = positive ? parse("X p") : parse("!X p");
        Gnba a(f);
        std::size_t p = a.closure().index_of(prop("p"));
        for (const auto& b : drain(a.initial_states())) {
            auto succ = drain(a.successors(b));
            EXPECT_FALSE(succ.empty());
            for (const auto& s : succ) {
                EXPECT_EQ(s.contains(p), positive);
                EXPECT_TRUE(a.is_transition(b, s));
            }
        }
    }
}

TEST(Gnba, WithoutNextEverySetIsASuccessor) {
    Gnba a(parse("p & <@s> q"));
    auto init = drain(a.initial_states());
    ASSERT_FALSE(init.empty());
    auto succ = drain(a.successors(init[0]));
    std::size_t elementary = 0;
    const std::size_t n = a.closure().size();
    ASSERT_LE(n, 20u);
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
        SElementarySet b(n);
        for (std::size_t i = 0; i < n; ++i)
            b.set(i, bits >> i & 1);
        elementary += a.is_elementary(b);
    }
    EXPECT_EQ(succ.size(), elementary);
}

TEST(Gnba, AcceptanceFamily) {
    Formula u = parse("p U q");
    ClosureSet cl(u);
    auto fam = acceptance_family(cl);
    ASSERT_EQ(fam.size(), 1u);
    EXPECT_TRUE(fam[0](with(cl, {u, prop("q")})));
    EXPECT_FALSE(fam[0](with(cl, {u, neg(prop("q"))})));
    EXPECT_TRUE(fam[0](with(cl, {neg(u)})));

    ClosureSet g(parse("G p"));
    auto gf = acceptance_family(g);
    ASSERT_EQ(gf.size(), 1u);
    EXPECT_EQ(g[gf[0].until_index], until(top(), neg(prop("p"))));

    EXPECT_TRUE(acceptance_family(ClosureSet(parse("<@s> p & q"))).empty());
}

TEST(Gnba, LassoForAlways) {
    Formula f = parse("G p");
    auto lasso = find_accepting_lasso(f);
    ASSERT_TRUE(lasso.has_value());
    ASSERT_FALSE(lasso->cycle.empty());
    Gnba a(f);
    std::size_t p = a.closure().index_of(prop("p"));
    std::size_t pending = a.closure().index_of(until(top(), neg(prop("p"))));
    for (const auto* part : {&lasso->stem, &lasso->cycle})
        for (const auto& b : *part) {
            EXPECT_TRUE(b.contains(p));
            EXPECT_FALSE(b.contains(pending));
        }
    Witness w = witness_from_lasso(*lasso, f);
    EXPECT_TRUE(eval_sltl(w.model, w.designated, 0, f));
}

TEST(Gnba, EmptyLanguages) {
    EXPECT_FALSE(find_accepting_lasso(parse("p & G !p")).has_value());
    EXPECT_FALSE(find_accepting_lasso(parse("F p & G !p")).has_value());
    EXPECT_FALSE(find_accepting_lasso(parse("G F p & F G !p")).has_value());
}

TEST(Gnba, LassoRunIsConsistent) {
    Formula f = parse("G F p & G F !p & (q U X r)");
    Gnba a(f);
    auto lasso = a.find_accepting_lasso();
    ASSERT_TRUE(lasso.has_value());
    std::vector<SElementarySet> run = lasso->stem;
    run.insert(run.end(), lasso->cycle.begin(), lasso->cycle.end());
    EXPECT_TRUE(run.front().contains(a.closure().index_of(f)));
    for (std::size_t i = 0; i < run.size(); ++i) {
        EXPECT_TRUE(a.is_elementary(run[i]));
        const auto& nxt = i + 1 < run.size() ? run[i + 1] : lasso->cycle.front();
        EXPECT_TRUE(a.is_transition(run[i], nxt));
    }
    for (const auto& cond : a.acceptance_family()) {
        bool met = false;
        for (const auto& b : lasso->cycle)
            met = met || cond(b);
        EXPECT_TRUE(met);
    }
}

TEST(Gnba, StateLimit) {
    AutomatonOptions opts;
    opts.max_states = 2;
    try {
        find_accepting_lasso(parse("G F p & G F q & G F r"), opts);
        FAIL() << "expected ResourceError";
    } catch (const ResourceError& e) {
        EXPECT_EQ(e.limit(), "automaton-states");
    }
}

TEST(Gnba, TemporalInsideModalityIsRejected) { EXPECT_THROW(Gnba(parse("<@s> X p")), FragmentError); }

TEST(Gnba, Dump) {
    std::ostringstream out;
    AutomatonOptions opts;
    opts.dump = &out;
    ASSERT_TRUE(find_accepting_lasso(parse("X p"), opts).has_value());
    std::string text = out.str();
    EXPECT_NE(text.find("state 0 init"), std::string::npos);
    EXPECT_NE(text.find("edge "), std::string::npos);
}

TEST(Gnba, Describe) {
    Gnba a(parse("X p"));
    auto states = drain(a.initial_states());
    ASSERT_FALSE(states.empty());
    EXPECT_NE(a.describe(states[0]).find("X p"), std::string::npos);
}
