#include <arion/chain.hpp>
#include <arion/permutation.hpp>
#include <arion/r1cs.hpp>
#include <arion/security.hpp>
#include <arion/sponge.hpp>

#include <benchmark/benchmark.h>

using namespace arion;

namespace {

ArionParameters params_for(int field, size_t n)
{
    ParameterRequest req;
    req.field = field == 0 ? PrimeField::bn254() : PrimeField::bls12();
    req.n = n;
    return make_parameters(req);
}

StateVector sample(const ArionParameters& p)
{
    return expand_elements(p.field, "bench", p.n, p.n, "bench");
}

void BM_Permutation(benchmark::State& state)
{
    const auto p = params_for(static_cast<int>(state.range(0)), static_cast<size_t>(state.range(1)));
    auto x = sample(p);
    for (auto _ : state) {
        x = arion_pi(x, p);
        benchmark::DoNotOptimize(x);
    }
    state.SetLabel(p.field->name() + " r=" + std::to_string(p.rounds));
}
BENCHMARK(BM_Permutation)->ArgsProduct({{0, 1}, {3, 4, 5, 6, 8}});

void BM_PermutationInverse(benchmark::State& state)
{
    const auto p = params_for(0, static_cast<size_t>(state.range(0)));
    auto x = sample(p);
    for (auto _ : state) {
        x = arion_permute(x, {}, p, Direction::inverse);
        benchmark::DoNotOptimize(x);
    }
}
BENCHMARK(BM_PermutationInverse)->Arg(3)->Arg(8);

void BM_Hash(benchmark::State& state)
{
    const auto p = params_for(0, 3);
    const auto sponge = make_sponge(p, 1);
    const auto msg = expand_elements(p.field, "bench-msg", p.n, static_cast<size_t>(state.range(0)), "bench");
    for (auto _ : state) {
        benchmark::DoNotOptimize(arion_hash1(msg, p, sponge));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Hash)->Arg(2)->Arg(16)->Arg(64);

void BM_ChainPow(benchmark::State& state)
{
    const auto f = PrimeField::bn254();
    const auto& chain = ExponentChain::for_d2(static_cast<uint64_t>(state.range(0)));
    auto x = f->element(int64_t{123456789});
    for (auto _ : state) {
        x = chain_pow(x, chain);
        benchmark::DoNotOptimize(x);
    }
}
BENCHMARK(BM_ChainPow)->Arg(121)->Arg(129)->Arg(257);

void BM_GenericPow(benchmark::State& state)
{
    const auto f = PrimeField::bn254();
    auto x = f->element(int64_t{123456789});
    const auto d = static_cast<uint64_t>(state.range(0));
    for (auto _ : state) {
        x = x.pow(d);
        benchmark::DoNotOptimize(x);
    }
}
BENCHMARK(BM_GenericPow)->Arg(121)->Arg(129)->Arg(257);

void BM_R1csBuild(benchmark::State& state)
{
    const auto p = params_for(0, static_cast<size_t>(state.range(0)));
    const auto sponge = make_sponge(p, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_r1cs(p, sponge));
    }
}
BENCHMARK(BM_R1csBuild)->Arg(3)->Arg(8);

void BM_R1csWitness(benchmark::State& state)
{
    const auto p = params_for(0, 3);
    const auto sponge = make_sponge(p, 1);
    const auto cs = build_r1cs(p, sponge);
    const auto msg = expand_elements(p.field, "bench-msg", p.n, cs.message_len(), "bench");
    for (auto _ : state) {
        const auto w = generate_witness(cs, msg, p);
        benchmark::DoNotOptimize(cs.is_satisfied(w));
    }
}
BENCHMARK(BM_R1csWitness);

void BM_MerkleRoot(benchmark::State& state)
{
    const auto p = params_for(0, 3);
    const auto sponge = make_sponge(p, 1);
    const auto leaves = expand_elements(p.field, "bench-leaves", p.n, static_cast<size_t>(state.range(0)), "bench");
    for (auto _ : state) {
        benchmark::DoNotOptimize(merkle_root(leaves, p, sponge));
    }
}
BENCHMARK(BM_MerkleRoot)->Arg(16)->Arg(256);

void BM_SecurityReport(benchmark::State& state)
{
    const auto p = params_for(0, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(full_report(p));
    }
}
BENCHMARK(BM_SecurityReport);

} // namespace

BENCHMARK_MAIN();
