#include "sltl/errors.hpp"
#include "sltl/parser.hpp"

#include <gtest/gtest.h>

using namespace sltl;

namespace {
const Standpoint kStar = Standpoint::universal();
Formula p() { return prop("p"); }
Formula q() { return prop("q"); }
} // namespace

TEST(Parser, ConjunctionWithNext) { EXPECT_EQ(parse("p & X q"), conj(p(), next(q()))); }

TEST(Parser, UniversalBoxOverImplication) {
    EXPECT_EQ(parse("[@*](G !malf -> test)"), box(kStar, implies(always(neg(prop("malf"))), prop("test"))));
}

TEST(Parser, SharpeningAtom) {
    EXPECT_EQ(parse("@it <= @*"), sharper(Standpoint("it"), kStar));
    EXPECT_EQ(parse("@s <= @s'"), sharper(Standpoint("s"), Standpoint("s'")));
}

TEST(Parser, UnmarkedModalitiesAreUniversal) {
    EXPECT_EQ(parse("<> p"), diamond(kStar, p()));
    EXPECT_EQ(parse("[] p"), box(kStar, p()));
    EXPECT_EQ(parse("<@s> p"), diamond(Standpoint("s"), p()));
}

TEST(Parser, Constants) {
    EXPECT_EQ(parse("true"), top());
    EXPECT_EQ(parse("false"), bottom());
}

TEST(Parser, Precedence) {
    Formula r = prop("r");
    EXPECT_EQ(parse("p | q & r"), disj(p(), conj(q(), r)));
    EXPECT_EQ(parse("p & q U r"), conj(p(), until(q(), r)));
    EXPECT_EQ(parse("!p U q"), until(neg(p()), q()));
    EXPECT_EQ(parse("p -> q | r"), implies(p(), disj(q(), r)));
    EXPECT_EQ(parse("p <-> q -> r"), iff(p(), implies(q(), r)));
    EXPECT_EQ(parse("X p U q"), until(next(p()), q()));
}

TEST(Parser, Associativity) {
    Formula r = prop("r");
    EXPECT_EQ(parse("p U q U r"), until(p(), until(q(), r)));
    EXPECT_EQ(parse("p -> q -> r"), implies(p(), implies(q(), r)));
    EXPECT_EQ(parse("p <-> q <-> r"), iff(iff(p(), q()), r));
}

TEST(Parser, SugarOperators) {
    EXPECT_EQ(parse("F p"), eventually(p()));
    EXPECT_EQ(parse("G p"), always(p()));
    EXPECT_EQ(parse("G F p"), always(eventually(p())));
}

TEST(Parser, WhitespaceAndParentheses) {
    EXPECT_EQ(parse("  ( (p) )\n&\tq "), conj(p(), q()));
}

TEST(Parser, ErrorsCarryPosition) {
    try {
        parse("p &\n  & q");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_EQ(e.column(), 3u);
    }
}

TEST(Parser, RejectsMalformedInput) {
    for (const char* bad : {"", "p &", "(p", "p)", "@s", "<@s p", "[@] p", "p q", "@s <= p", "#"})
        EXPECT_THROW(parse(bad), ParseError) << bad;
}

TEST(Parser, ReleaseIsNotAnOperator) { EXPECT_THROW(parse("p R q"), ParseError); }

TEST(Parser, ReservedNames) {
    EXPECT_THROW(parse("$u0 & p"), ParseError);
    ParseOptions opts;
    opts.allow_reserved = true;
    EXPECT_EQ(parse("$u0 & p", opts), conj(prop("$u0"), p()));
}
