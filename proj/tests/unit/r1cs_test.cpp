#include <arion/counts.hpp>
#include <arion/r1cs.hpp>

#include "support/generators.hpp"

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

using namespace arion;
using arion::testing::Gen;

namespace {

ArionParameters params_for(const FieldPtr& f, size_t n, uint64_t d2 = 257)
{
    ParameterRequest req;
    req.field = f;
    req.n = n;
    req.d2 = d2;
    return make_parameters(req);
}

} // namespace

TEST(R1cs, LinearCombinationArithmetic)
{
    const auto f = PrimeField::from_u64(101);
    const auto a = LinearCombination::variable(2, f->element(int64_t{3})) + LinearCombination::constant(f->one());
    const auto b = LinearCombination::variable(2, f->element(int64_t{-3}));
    const auto sum = a + b;
    EXPECT_FALSE(sum.coefficient(2));
    EXPECT_EQ(sum.terms().size(), 1u);
    const std::vector<FieldElement> w = {f->one(), f->zero(), f->element(int64_t{7})};
    EXPECT_EQ(a.evaluate(w, f).value(), 22);
    EXPECT_EQ((a * f->element(int64_t{2})).evaluate(w, f).value(), 44);
    EXPECT_TRUE((a - a).empty());
}

TEST(R1cs, ConstraintCountEqualsClosedForm)
{
    for (const auto& f : {PrimeField::bls12(), PrimeField::bn254()}) {
        for (size_t n : {3u, 4u, 5u, 6u, 8u}) {
            for (uint64_t d2 : {125u, 257u}) {
                const auto params = params_for(f, n, d2);
                const auto sponge = make_sponge(params, 1);
                const auto cs = build_r1cs(params, sponge);
                CountQuery q;
                q.n = n;
                q.d = params.d1;
                q.d2 = d2;
                q.rounds = RoundSpec{params.rounds, 0, 0};
                EXPECT_EQ(cs.constraints().size(), count_r1cs(q)) << f->name() << " n=" << n << " d2=" << d2;
            }
        }
    }
}

TEST(R1csProperty, HonestWitnessSatisfiesAndPerturbationsFail)
{
    Gen g(41);
    const auto params = params_for(PrimeField::bn254(), 3);
    const auto sponge = make_sponge(params, 1);
    const auto cs = build_r1cs(params, sponge);
    const auto msg = g.state(params.field, cs.message_len());
    auto w = generate_witness(cs, msg, params);
    ASSERT_EQ(w.size(), cs.num_vars());
    EXPECT_TRUE(cs.is_satisfied(w));
    EXPECT_TRUE(cs.is_satisfied(w, 3));
    EXPECT_EQ(w[cs.digest_var()], arion_hash1(msg, params, sponge));
    for (int t = 0; t < 100; ++t) {
        auto bad = w;
        const size_t v = 1 + g.index(w.size() - 1);
        bad[v] += g.nonzero(params.field);
        EXPECT_FALSE(cs.violations(bad).empty()) << "variable " << v;
    }
}

TEST(R1cs, MultiBlockMessages)
{
    Gen g(42);
    const auto params = params_for(PrimeField::bn254(), 4);
    const auto sponge = make_sponge(params, 1);
    for (size_t len : {1u, 3u, 5u, 7u}) {
        const auto cs = build_r1cs(params, sponge, len);
        const auto msg = g.state(params.field, len);
        const auto w = generate_witness(cs, msg, params);
        EXPECT_TRUE(cs.is_satisfied(w)) << len;
        EXPECT_EQ(w[cs.digest_var()], arion_hash1(msg, params, sponge)) << len;
        EXPECT_THROW(generate_witness(cs, g.state(params.field, len + 1), params), InvalidArgument);
    }
}

TEST(R1cs, JsonRoundTrip)
{
    Gen g(43);
    const auto params = params_for(PrimeField::bn254(), 3);
    const auto sponge = make_sponge(params, 1);
    const auto cs = build_r1cs(params, sponge);
    const auto j = to_json(cs);
    const auto back = constraint_system_from_json(j);
    EXPECT_EQ(to_json(back), j);
    EXPECT_EQ(back.constraints().size(), cs.constraints().size());

    const auto w = generate_witness(cs, g.state(params.field, cs.message_len()), params);
    const auto wj = witness_to_json(params.field, w);
    const auto w2 = witness_from_json(wj, params.field);
    EXPECT_EQ(w2, w);
    EXPECT_TRUE(back.is_satisfied(w2));

    auto broken = j;
    broken["num_vars"] = 1;
    EXPECT_THROW(constraint_system_from_json(broken), Error);
}

TEST(R1cs, RejectsWideDigest)
{
    const auto params = params_for(PrimeField::bn254(), 3);
    EXPECT_THROW(build_r1cs(params, make_sponge(params, 1, 2)), InvalidArgument);
}
