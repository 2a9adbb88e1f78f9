// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Usage: arion_acceptance [--criterion N]

#include <arion/chain.hpp>
#include <arion/counts.hpp>
#include <arion/lab.hpp>
#include <arion/permutation.hpp>
#include <arion/r1cs.hpp>
#include <arion/security.hpp>
#include <arion/sponge.hpp>

#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace arion;
using arion::testing::Gen;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            notes.push_back("failed: " + what);
        }
    }
    void note(const std::string& s) { notes.push_back(s); }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

unsigned workers()
{
    return std::max(1u, std::thread::hardware_concurrency());
}

ArionParameters big(const FieldPtr& f, size_t n, std::optional<uint64_t> d1 = {}, std::optional<size_t> rounds = {})
{
    ParameterRequest req;
    req.field = f;
    req.n = n;
    req.d1 = d1;
    req.rounds = rounds;
    return make_parameters(req);
}

StateVector from_index(size_t idx, size_t n, const FieldPtr& f, uint64_t p)
{
    StateVector x;
    for (size_t i = 0; i < n; ++i, idx /= p) {
        x.push_back(f->element(static_cast<int64_t>(idx % p)));
    }
    return x;
}

std::string fmt(long double v)
{
    std::ostringstream s;
    s.precision(6);
    s << static_cast<double>(v);
    return s.str();
}

Outcome permutation_correctness()
{
    Outcome o;
    const auto t0 = Clock::now();
    Gen g(1001);
    for (const auto& f : {PrimeField::bls12(), PrimeField::bn254()}) {
        ParameterRequest three;
        three.field = f;
        three.d1 = 3;
        bool rejected = false;
        try {
            make_parameters(three);
        } catch (const Error&) {
            rejected = true;
        }
        o.check(rejected, f->name() + " accepts d1 = 3 although 3 | p - 1");

        for (auto [n, rounds] : {std::pair<size_t, size_t>{3, 6}, {8, 4}}) {
            const auto params = big(f, n, 5, rounds);
            size_t bad = 0;
            for (int i = 0; i < 1000; ++i) {
                const auto x = g.state(f, n);
                const auto k = g.state(f, n);
                if (arion_permute(arion_permute(x, k, params), k, params, Direction::inverse) != x) {
                    ++bad;
                }
            }
            o.check(bad == 0, f->name() + " n=" + std::to_string(n) + ": " + std::to_string(bad) + " round trips differ");
        }
    }
    o.note("d1 = 5 on BLS12/BN254 (3 divides p - 1 there; d1 = 3 rejected)");
    o.check(exhaustive_bijection_check(lab_parameters(11, 2, 3, 3)), "p=11 n=2 is not a bijection");
    const double s = seconds_since(t0);
    o.check(s < 10.0, "runtime " + fmt(s) + " s >= 10 s");
    o.note("runtime " + fmt(s) + " s");
    return o;
}

Outcome addition_chains()
{
    Outcome o;
    const std::map<uint64_t, size_t> mults = {{121, 9}, {123, 9}, {125, 9}, {129, 8}, {161, 9}, {193, 9}, {195, 9}, {257, 9}};
    Gen g(1002);
    o.check(allowed_d2().size() == 8, "expected eight tabulated exponents");
    for (const auto& [d2, m] : mults) {
        const auto& chain = ExponentChain::for_d2(d2);
        o.check(chain.multiplications() == m, "d2=" + std::to_string(d2) + " uses " + std::to_string(chain.multiplications())
                                                  + " multiplications");
        for (const auto& f : {PrimeField::bls12(), PrimeField::bn254()}) {
            size_t bad = 0;
            for (int i = 0; i < 1000; ++i) {
                const auto x = g.element(f);
                if (chain_pow(x, chain).value() != oracle::pow_big(x.value(), mpz_class(static_cast<unsigned long>(d2)), f->modulus())) {
                    ++bad;
                }
            }
            o.check(bad == 0, "d2=" + std::to_string(d2) + " on " + f->name() + ": " + std::to_string(bad) + " mismatches");
        }
    }
    return o;
}

Outcome affine_layer_check()
{
    Outcome o;
    Gen g(1003);
    const auto f = PrimeField::bn254();
    for (size_t n = 2; n <= 8; ++n) {
        size_t bad = 0;
        for (int i = 0; i < 1000; ++i) {
            const auto v = g.state(f, n);
            const auto c = g.state(f, n);
            if (oracle::raw(affine_layer(v, c)) != oracle::circulant(oracle::raw(v), oracle::raw(c), f->modulus())) {
                ++bad;
            }
        }
        o.check(bad == 0, "n=" + std::to_string(n) + ": " + std::to_string(bad) + " mismatches");
    }
    for (const auto& p : {PrimeField::from_u64(131), PrimeField::from_u64(10007), PrimeField::bn254()}) {
        for (size_t n : {2u, 3u, 4u}) {
            o.check(mds_check(n, *p), "circ(1.." + std::to_string(n) + ") not MDS mod " + p->name());
        }
    }
    return o;
}

bool ccz_holds(const StateVector& x, const ArionParameters& params)
{
    const size_t n = x.size();
    const auto y = gtds_forward(x, params, 0);
    auto in = x;
    in[n - 1] = y[n - 1];
    auto expect = y;
    expect[n - 1] = x[n - 1];
    return gtds_ccz(in, params, 0) == expect;
}

Outcome ccz_property()
{
    Outcome o;
    for (size_t n : {2u, 3u}) {
        const auto params = lab_parameters(11, n, 3, 3, 1);
        const size_t total = n == 2 ? 121 : 1331;
        size_t bad = 0;
        for (size_t idx = 0; idx < total; ++idx) {
            bad += ccz_holds(from_index(idx, n, params.field, 11), params) ? 0 : 1;
        }
        o.check(bad == 0, "p=11 n=" + std::to_string(n) + ": " + std::to_string(bad) + " failures");
    }
    Gen g(1004);
    const auto params = big(PrimeField::bn254(), 3);
    size_t bad = 0;
    for (int i = 0; i < 10'000; ++i) {
        bad += ccz_holds(g.state(params.field, 3), params) ? 0 : 1;
    }
    o.check(bad == 0, "BN254: " + std::to_string(bad) + " failures");
    return o;
}

/// Smallest prime above 2^255 with 3 and 257 both coprime to p - 1, so d1 = 3 is the admissible choice.
FieldPtr prime_for_d1_three()
{
    mpz_class p = mpz_class(1) << 255;
    for (;;) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        if (p % 3 == 2 && (p - 1) % 257 != 0) {
            return PrimeField::create(p);
        }
    }
}

Outcome constraint_counts()
{
    Outcome o;
    struct Cell {
        HashFamily h;
        size_t n;
        uint64_t d;
        uint64_t expect;
    };
    const std::vector<Cell> cells = {
        {HashFamily::arion, 3, 3, 102},  {HashFamily::arion, 4, 3, 126},    {HashFamily::arion, 8, 3, 148},
        {HashFamily::poseidon, 3, 3, 216}, {HashFamily::poseidon, 3, 5, 240}, {HashFamily::griffin, 3, 3, 96},
        {HashFamily::anemoi, 4, 3, 96},
    };
    for (const auto& c : cells) {
        CountQuery q;
        q.hash = c.h;
        q.n = c.n;
        q.d = c.d;
        const auto got = count_r1cs(q);
        o.check(got == c.expect, to_string(c.h) + " n=" + std::to_string(c.n) + " d=" + std::to_string(c.d) + ": " + std::to_string(got));
    }

    Gen g(1005);
    for (const auto& f : {prime_for_d1_three(), PrimeField::bn254()}) {
        const auto params = big(f, 3);
        const auto sponge = make_sponge(params, 1);
        const auto cs = build_r1cs(params, sponge);
        CountQuery q;
        q.n = 3;
        q.d = params.d1;
        q.d2 = params.d2;
        q.rounds = RoundSpec{params.rounds, 0, 0};
        o.check(cs.constraints().size() == count_r1cs(q), f->name() + ": circuit has " + std::to_string(cs.constraints().size())
                                                              + " constraints, formula " + std::to_string(count_r1cs(q)));
        const auto msg = g.state(f, cs.message_len());
        const auto w = generate_witness(cs, msg, params);
        o.check(cs.is_satisfied(w), f->name() + ": honest witness rejected");
        o.check(w[cs.digest_var()] == arion_hash1(msg, params, sponge), f->name() + ": digest differs from the sponge");
        size_t undetected = 0;
        for (int t = 0; t < 100; ++t) {
            auto bad = w;
            bad[1 + g.index(w.size() - 1)] += g.nonzero(f);
            undetected += cs.violations(bad).empty() ? 1 : 0;
        }
        o.check(undetected == 0, f->name() + ": " + std::to_string(undetected) + " perturbations undetected");
        o.note(f->name() + " d1=" + std::to_string(params.d1) + ": " + std::to_string(cs.constraints().size()) + " constraints");
    }
    return o;
}

Outcome plonk_counts()
{
    Outcome o;
    CountQuery a;
    a.n = 3;
    a.d = 3;
    o.check(count_plonk(a, 3) == 147, "n=3 d1=3 gives " + std::to_string(count_plonk(a, 3)));
    CountQuery b;
    b.n = 4;
    b.d = 5;
    o.check(count_plonk(b, 3) == 192, "n=4 d1=5 gives " + std::to_string(count_plonk(b, 3)));

    std::string flags;
    size_t lines = 0;
    for (Scheme s : {Scheme::r1cs, Scheme::plonk2, Scheme::plonk3}) {
        for (const auto& line : deviation_flags(comparison_table(s))) {
            flags += line + "\n";
            ++lines;
        }
    }
    std::ifstream in(ARION_TEST_DATA_DIR "/count_deviations.txt");
    o.check(in.is_open(), "deviation snapshot missing");
    std::stringstream snap;
    snap << in.rdbuf();
    o.check(flags == snap.str(), "deviation flags differ from the snapshot");
    o.note(std::to_string(lines) + " flagged cells");
    return o;
}

Outcome security_estimators()
{
    Outcome o;
    const auto t0 = Clock::now();
    auto exact = [&](long double k, long long expect, const std::string& what) {
        const auto got = static_cast<long long>(std::floor(k + 1e-9L));
        o.check(got == expect, what + ": " + std::to_string(got) + " vs " + std::to_string(expect));
    };
    exact(kappa_diff_trail(250, 9, 1), 241, "trail N=250 r=1");
    exact(kappa_diff_trail(120, 9, 2), 222, "trail N=120 r=2");
    exact(kappa_diff_trail(60, 9, 3), 153, "trail N=60 r=3");

    exact(kappa_diff_full_hull(250, 3, 6, 257, 1), 121, "full hull N=250 n=3");
    exact(kappa_diff_full_hull(250, 4, 5, 257, 1), 113, "full hull N=250 n=4");
    exact(kappa_diff_full_hull(250, 8, 4, 257, 1), 49, "full hull N=250 n=8");
    exact(kappa_diff_full_hull(60, 3, 6, 257, 3), 35, "full hull N=60 n=3");
    exact(kappa_diff_full_hull(60, 6, 5, 257, 4), 15, "full hull N=60 n=6");
    exact(kappa_diff_full_hull(60, 8, 4, 257, 4), 15, "full hull N=60 n=8");

    exact(kappa_diff_restricted(250, 3, 257, 125), 475, "restricted differential N=250");
    exact(kappa_diff_restricted(120, 4, 257, 60), 267, "restricted differential N=120");
    exact(kappa_diff_restricted(60, 5, 257, 30), 139, "restricted differential N=60");
    exact(kappa_linear_restricted_hull(250, 3, 257, 125), 475, "restricted linear N=250");
    exact(kappa_linear_restricted_hull(120, 4, 257, 60), 267, "restricted linear N=120");
    exact(kappa_linear_restricted_hull(60, 5, 257, 30), 139, "restricted linear N=60");

    exact(kappa_truncated_first_round(250, 3, 257, 250), 475, "truncated first round N=250");
    exact(kappa_truncated_first_round(120, 3, 257, 120), 215, "truncated first round N=120");
    exact(kappa_truncated_first_round(60, 4, 257, 100), 107, "truncated first round N=60");
    exact(kappa_truncated_two_round(250, 4, 257, 125), 233, "two-round truncated N=250");
    exact(kappa_truncated_two_round(120, 5, 257, 60), 155, "two-round truncated N=120");
    exact(kappa_truncated_two_round(60, 6, 257, 30), 87, "two-round truncated N=60");

    exact(kappa_linear_trail(250, 2, 9, 250), 216, "linear trail N=250 r=2");
    exact(kappa_linear_trail(250, 3, 9, 500), 198, "linear trail N=250 r=3");
    exact(kappa_linear_trail(60, 5, 9, 60), 152, "linear trail N=60 r=5");

    auto near = [&](long double k, double expect, const std::string& what) {
        o.check(std::fabs(static_cast<double>(k) - expect) <= 1.0, what + ": " + fmt(k) + " vs " + fmt(expect));
    };
    near(gb_solving_bits(GbModel::arion, 3, 6, 3, 121, 2, SolveFlavor::probabilistic), 143, "cipher n=3 r=6 probabilistic");
    near(gb_solving_bits(GbModel::arion, 3, 6, 3, 121, 2, SolveFlavor::deterministic), 207, "cipher n=3 r=6 deterministic");
    near(gb_solving_bits(GbModel::arionhash, 3, 5, 3, 121, 2, SolveFlavor::probabilistic), 110, "hash n=3 r=5 probabilistic");
    near(gb_solving_bits(GbModel::arionhash, 3, 5, 3, 121, 2, SolveFlavor::deterministic), 158, "hash n=3 r=5 deterministic");

    const double s = seconds_since(t0);
    o.check(s < 1.0, "runtime " + fmt(s) + " s >= 1 s");
    return o;
}

Outcome quotient_dimensions()
{
    Outcome o;
    struct Row {
        GbModel m;
        size_t n, r;
        uint64_t d1, d2;
        unsigned long dim;
    };
    const std::vector<Row> rows = {
        {GbModel::arion, 2, 1, 3, 7, 35},         {GbModel::arion, 2, 1, 5, 7, 49},
        {GbModel::arion, 3, 1, 3, 7, 175},        {GbModel::arion, 3, 1, 5, 7, 343},
        {GbModel::arion, 4, 1, 3, 7, 875},        {GbModel::arion, 2, 1, 3, 257, 1285},
        {GbModel::arion, 2, 1, 5, 257, 1799},     {GbModel::arionhash, 3, 1, 3, 7, 91},
        {GbModel::arionhash, 3, 1, 5, 7, 133},    {GbModel::arionhash, 4, 1, 3, 7, 203},
        {GbModel::arionhash, 4, 1, 5, 7, 301},    {GbModel::arionhash, 5, 1, 3, 7, 427},
        {GbModel::arionhash, 5, 1, 5, 7, 637},    {GbModel::arionhash, 3, 1, 3, 257, 3341},
        {GbModel::arionhash, 3, 1, 5, 257, 4833}, {GbModel::collision, 2, 1, 3, 3, 225},
        {GbModel::collision, 2, 1, 5, 5, 1225},   {GbModel::collision, 2, 1, 5, 7, 2401},
        {GbModel::collision, 3, 1, 3, 7, 8281},   {GbModel::collision, 3, 1, 5, 7, 17689},
        {GbModel::collision, 2, 2, 3, 3, 50625},  {GbModel::collision, 3, 1, 3, 3, 1521},
        {GbModel::collision, 3, 1, 5, 5, 9025},   {GbModel::collision, 4, 1, 3, 3, 7569},
        {GbModel::collision, 4, 1, 3, 7, 41209},  {GbModel::collision, 2, 1, 3, 7, 1225},
    };
    for (const auto& r : rows) {
        const mpz_class got = quotient_dim(r.m, r.n, r.r, r.d1, r.d2);
        o.check(got == r.dim, to_string(r.m) + " n=" + std::to_string(r.n) + " r=" + std::to_string(r.r) + " d1=" + std::to_string(r.d1)
                                  + " d2=" + std::to_string(r.d2) + ": " + got.get_str() + " vs " + std::to_string(r.dim));
    }
    return o;
}

Outcome density_experiment_check()
{
    Outcome o;
    const auto t0 = Clock::now();
    const std::map<uint64_t, double> bound = {{11, 0.82}, {13, 0.91}, {17, 0.91}, {19, 0.92}, {23, 0.90}};
    const std::vector<size_t> ns = {3};
    for (const auto& [p, b] : bound) {
        const std::vector<uint64_t> primes = {p};
        for (uint64_t d1 : {3u, 5u}) {
            for (uint64_t d2 : {3u, 5u}) {
                if (!lab_exponents_valid(p, d1, d2)) {
                    continue;
                }
                const auto rep = density_experiment(primes, ns, d1, d2, 5, 2, 6, workers()).front();
                const std::string tag = "p=" + std::to_string(p) + " d1=" + std::to_string(d1) + " d2=" + std::to_string(d2);
                o.check(rep.samples.size() >= 5, tag + ": fewer than 5 seeds");
                o.check(rep.min_density >= b, tag + ": min density " + fmt(rep.min_density) + " < " + fmt(b));
                for (const auto& s : rep.samples) {
                    uint64_t total = 0, uni = 0;
                    for (const auto& c : s.components) {
                        total = std::max(total, c.total_degree);
                        uni = std::max(uni, c.univariate_degree);
                    }
                    o.check(total == 3 * (p - 1) - 1, tag + " " + s.seed + ": total degree " + std::to_string(total));
                    o.check(uni == p - 1, tag + " " + s.seed + ": univariate degree " + std::to_string(uni));
                }
            }
        }
    }
    const double s = seconds_since(t0);
    o.check(s < 300.0, "runtime " + fmt(s) + " s >= 300 s");
    o.note("degrees taken over the polynomial vector (max over components)");
    o.note("runtime " + fmt(s) + " s");
    return o;
}

Outcome sponge_and_merkle()
{
    Outcome o;
    Gen g(1010);
    const auto params = big(PrimeField::bn254(), 3);
    const auto& f = params.field;
    auto sponge = make_sponge(params, 1);
    sponge.iv = {g.nonzero(f)};

    const auto full = pad(g.state(f, 4), sponge.rate, f);
    o.check(!full.length && full.message.size() == 4, "multiple-of-rate message was padded");

    for (size_t len : {1u, 3u, 5u}) {
        const auto m = g.state(f, len);
        StateVector state(3, f->zero());
        state[2] = f->element(static_cast<int64_t>(len));
        auto msg = m;
        msg.resize(len + (len % 2), f->zero());
        for (size_t off = 0; off < msg.size(); off += 2) {
            state[0] += msg[off];
            state[1] += msg[off + 1];
            state = arion_pi(state, params);
        }
        o.check(arion_hash1(m, params, sponge) == state[0], "padded message of length " + std::to_string(len)
                                                                 + " does not start from the length-encoded IV");
    }
    {
        const auto m = g.state(f, 2);
        StateVector state = {m[0], m[1], sponge.iv[0]};
        o.check(arion_hash1(m, params, sponge) == arion_pi(state, params)[0], "unpadded message does not start from IV");
    }
    for (size_t len = 0; len < 8; ++len) {
        auto m = g.state(f, len);
        const auto h = arion_hash1(m, params, sponge);
        m.push_back(f->zero());
        o.check(h != arion_hash1(m, params, sponge), "hash(m) == hash(m || 0) at length " + std::to_string(len));
    }

    const auto base = make_sponge(params, 1);
    const auto leaves = g.state(f, 16);
    const MerkleTree tree(leaves, params, base, workers());
    for (size_t i = 0; i < leaves.size(); ++i) {
        o.check(merkle_verify(leaves[i], tree.prove(i), tree.root(), params, base), "honest path " + std::to_string(i) + " rejected");
    }
    size_t accepted = 0;
    for (int t = 0; t < 100; ++t) {
        const size_t i = g.index(leaves.size());
        auto path = tree.prove(i);
        auto leaf = leaves[i];
        auto root = tree.root();
        switch (g.below(4)) {
        case 0: leaf += g.nonzero(f); break;
        case 1: root += g.nonzero(f); break;
        case 2: path.index = (i + 1 + g.index(leaves.size() - 1)) % leaves.size(); break;
        default: {
            auto& level = path.siblings[g.index(path.siblings.size())];
            level[g.index(level.size())] += g.nonzero(f);
        }
        }
        accepted += merkle_verify(leaf, path, root, params, base) ? 1 : 0;
    }
    o.check(accepted == 0, std::to_string(accepted) + " tampered paths accepted");
    return o;
}

const std::vector<std::pair<std::string, std::function<Outcome()>>>& criteria()
{
    static const std::vector<std::pair<std::string, std::function<Outcome()>>> list = {
        {"permutation correctness", permutation_correctness},
        {"addition chains", addition_chains},
        {"affine layer", affine_layer_check},
        {"CCZ property", ccz_property},
        {"R1CS constraint counts", constraint_counts},
        {"Plonk counts", plonk_counts},
        {"security estimators", security_estimators},
        {"quotient dimensions", quotient_dimensions},
        {"density experiment", density_experiment_check},
        {"sponge and Merkle", sponge_and_merkle},
    };
    return list;
}

} // namespace

int main(int argc, char** argv)
{
    size_t only = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--criterion" && i + 1 < argc) {
            only = std::stoul(argv[++i]);
        } else {
            std::cerr << "usage: " << argv[0] << " [--criterion N]\n";
            return 2;
        }
    }
    if (only > criteria().size()) {
        std::cerr << "no criterion " << only << "\n";
        return 2;
    }
    bool all = true;
    for (size_t i = 0; i < criteria().size(); ++i) {
        if (only != 0 && only != i + 1) {
            continue;
        }
        Outcome o;
        try {
            o = criteria()[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.notes.push_back(std::string("exception: ") + e.what());
        }
        all = all && o.pass;
        std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << " " << criteria()[i].first;
        if (!o.notes.empty()) {
            std::cout << " [";
            for (size_t k = 0; k < o.notes.size(); ++k) {
                std::cout << (k ? "; " : "") << o.notes[k];
            }
            std::cout << "]";
        }
        std::cout << std::endl;
    }
    return all ? 0 : 1;
}
