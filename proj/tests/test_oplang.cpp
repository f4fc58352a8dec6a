#include "support.hpp"

#include <gtest/gtest.h>

using namespace gmdual;
using namespace gmdual::testing;

namespace {

std::string error_of(const std::string& src) {
    try {
        eval(src);
    } catch (const ParseError& e) {
        return e.what();
    }
    return {};
}

TEST(Parse, KeepsWrittenOrder) {
    const OpExprPtr e = parse("dt*t");
    const auto* mul = std::get_if<OpExpr::Mul>(&e->node);
    ASSERT_NE(mul, nullptr);
    EXPECT_EQ(std::get<OpExpr::Var>(mul->lhs->node).var, Variable::DT);
    EXPECT_EQ(std::get<OpExpr::Var>(mul->rhs->node).var, Variable::T);
    EXPECT_EQ(print(eval(*e)), "t*dt + 1");
}

TEST(Parse, GeneratorText) {
    EXPECT_EQ(eval("theta^2*t^2*dt^2 + theta^2*t*dt - (1/4)*t"), build_generators(n2()).P1);
}

TEST(Eval, OreRelations) {
    EXPECT_EQ(eval("theta*dtheta - dtheta*theta"), OreOperator(-1));
    EXPECT_EQ(eval("t^-1 * t"), OreOperator(1));
    EXPECT_EQ(eval("dt*t - t*dt"), OreOperator(1));
    EXPECT_EQ(eval("(t*dt)^2"), eval("t^2*dt^2 + t*dt"));
    EXPECT_EQ(eval("-(-3/6)"), OreOperator(q(1, 2)));
    EXPECT_EQ(eval("2^3"), OreOperator(8));
    EXPECT_EQ(eval("theta^0"), OreOperator(1));
}

TEST(Parse, Errors) {
    EXPECT_NE(error_of("dt^-1").find("negative derivation exponent"), std::string::npos);
    EXPECT_NE(error_of("dtheta^-2").find("negative derivation exponent"), std::string::npos);
    EXPECT_NE(error_of("(t+1)^-1").find("negative exponent requires theta or t"), std::string::npos);
    EXPECT_NE(error_of("x*t").find("unknown identifier 'x'"), std::string::npos);
    EXPECT_NE(error_of("1/0").find("zero denominator"), std::string::npos);
    EXPECT_NE(error_of("t^100000").find("exponent too large"), std::string::npos);
    EXPECT_FALSE(error_of("t*").empty());
    EXPECT_FALSE(error_of("(t").empty());
    EXPECT_FALSE(error_of("t t").empty());
    EXPECT_FALSE(error_of("").empty());
}

TEST(Parse, ErrorPosition) {
    try {
        eval("t*dt +\n  theta*)");
        FAIL() << "no error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2);
        EXPECT_EQ(e.column(), 9);
        EXPECT_TRUE(e.expected().count("theta"));
        EXPECT_NE(std::string(e.what()).find("2:9:"), std::string::npos);
    }
}

TEST(Print, Canonical) {
    EXPECT_EQ(print(OreOperator()), "0");
    EXPECT_EQ(print(eval("dt*t")), "t*dt + 1");
    EXPECT_EQ(print(eval("dt^2*t^2")), "t^2*dt^2 + 4*t*dt + 2");
    EXPECT_EQ(print(eval("-2*theta^-2")), "-2*theta^-2");
    EXPECT_EQ(print(eval("t*1/4")), "(1/4)*t");
    EXPECT_EQ(print(eval("-1/3")), "-1/3");
    EXPECT_EQ(print(laurent_monomial(1, -1, q(-3, 2))), "-(3/2)*theta*t^-1");
}

TEST(Print, RoundTripRandom) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const OreOperator op = random_operator(rng, {-3, 3, 3, 6});
        const std::string text = print(op);
        ASSERT_EQ(eval(text), op) << text;
        ASSERT_EQ(print(eval(text)), text);
    }
}

TEST(Parse, FuzzNeverCrashes) {
    // Random token soup either parses or raises ParseError; nothing else.
    const std::vector<std::string> pieces{"theta", "t", "dt", "dtheta", "+", "-", "*", "^", "(", ")",
                                          "1", "2", "/", "3", " ", "\n", "x", "^-", "0", "7/2"};
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1), len(0, 12);
    int parsed = 0;
    for (int i = 0; i < 2000; ++i) {
        std::string src;
        for (std::size_t k = len(rng); k > 0; --k) src += pieces[pick(rng)];
        try {
            eval(src);
            ++parsed;
        } catch (const ParseError&) {
        }
    }
    EXPECT_GT(parsed, 0);
}

} // namespace
