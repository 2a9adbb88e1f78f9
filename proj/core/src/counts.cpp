#include <arion/counts.hpp>

#include <arion/chain.hpp>

#include <nlohmann/json.hpp>

#include <array>
#include <map>
#include <tuple>

namespace arion {

namespace {

uint64_t ceil_half(int64_t v)
{
    // ceil(v / 2) for possibly negative v, clamped at zero.
    if (v <= 0) {
        return 0;
    }
    return static_cast<uint64_t>((v + 1) / 2);
}

uint64_t arion_affine(size_t n, unsigned wires)
{
    if (wires == 2) {
        return n <= 3 ? n * (n - 1) : 4 * (n - 1);
    }
    if (n <= 3) {
        return n;
    }
    return n + 2 + ceil_half(static_cast<int64_t>(n) - 3) + ceil_half(static_cast<int64_t>(n) - 4);
}

using CellKey = std::tuple<HashFamily, size_t, uint64_t>;

// Published cells, keyed by (hash, n, d).
const std::map<CellKey, uint64_t>& published(Scheme s)
{
    static const auto build = [](std::initializer_list<std::tuple<HashFamily, size_t, uint64_t, uint64_t>> rows) {
        std::map<CellKey, uint64_t> m;
        for (const auto& [h, n, d, v] : rows) {
            m[{h, n, d}] = v;
        }
        return m;
    };
    using H = HashFamily;
    static const auto r1cs = build({
        {H::arion, 3, 3, 102}, {H::arion, 4, 3, 126}, {H::arion, 5, 3, 120}, {H::arion, 6, 3, 145}, {H::arion, 8, 3, 148},
        {H::aggressive_arion, 3, 3, 85}, {H::aggressive_arion, 4, 3, 84}, {H::aggressive_arion, 5, 3, 100},
        {H::aggressive_arion, 6, 3, 116}, {H::aggressive_arion, 8, 3, 148},
        {H::griffin, 3, 3, 96}, {H::griffin, 4, 3, 112}, {H::griffin, 8, 3, 176},
        {H::anemoi, 4, 3, 96}, {H::anemoi, 6, 3, 120}, {H::anemoi, 8, 3, 160},
        {H::poseidon, 3, 3, 216}, {H::poseidon, 4, 3, 232}, {H::poseidon, 5, 3, 248}, {H::poseidon, 6, 3, 264},
        {H::poseidon, 8, 3, 296},
        {H::arion, 3, 5, 114}, {H::arion, 4, 5, 120}, {H::arion, 5, 5, 125}, {H::arion, 6, 5, 170}, {H::arion, 8, 5, 176},
        {H::aggressive_arion, 3, 5, 76}, {H::aggressive_arion, 4, 5, 96}, {H::aggressive_arion, 5, 5, 116},
        {H::aggressive_arion, 6, 5, 136}, {H::aggressive_arion, 8, 5, 176},
        {H::griffin, 3, 5, 96}, {H::griffin, 4, 5, 110}, {H::griffin, 8, 5, 162},
        {H::anemoi, 4, 5, 120}, {H::anemoi, 6, 5, 150}, {H::anemoi, 8, 5, 200},
        {H::poseidon, 3, 5, 240}, {H::poseidon, 4, 5, 264}, {H::poseidon, 5, 5, 288}, {H::poseidon, 6, 5, 312},
        {H::poseidon, 8, 5, 360},
    });
    static const auto plonk2 = build({
        {H::arion, 3, 3, 200}, {H::arion, 4, 3, 276}, {H::arion, 5, 3, 296}, {H::arion, 6, 3, 360}, {H::arion, 8, 3, 396},
        {H::aggressive_arion, 3, 3, 168}, {H::aggressive_arion, 4, 3, 188}, {H::aggressive_arion, 5, 3, 240},
        {H::aggressive_arion, 6, 3, 292}, {H::aggressive_arion, 8, 3, 396},
        {H::poseidon, 3, 3, 768}, {H::poseidon, 4, 3, 1336}, {H::poseidon, 5, 3, 2088}, {H::poseidon, 6, 3, 3024},
        {H::poseidon, 8, 3, 5448},
        {H::griffin, 3, 3, 165}, {H::griffin, 4, 3, 246}, {H::griffin, 8, 3, 563},
        {H::anemoi, 4, 3, 220}, {H::anemoi, 6, 3, 320}, {H::anemoi, 8, 3, 456},
        {H::arion, 3, 5, 212}, {H::arion, 4, 5, 247}, {H::arion, 5, 5, 316}, {H::arion, 6, 5, 385}, {H::arion, 8, 5, 424},
        {H::aggressive_arion, 3, 5, 144}, {H::aggressive_arion, 4, 5, 200}, {H::aggressive_arion, 5, 5, 256},
        {H::aggressive_arion, 6, 5, 312}, {H::aggressive_arion, 8, 5, 424},
        {H::poseidon, 3, 5, 624}, {H::poseidon, 4, 5, 1032}, {H::poseidon, 5, 5, 1568}, {H::poseidon, 6, 5, 2232},
        {H::poseidon, 8, 5, 3944},
        {H::griffin, 3, 5, 173}, {H::griffin, 4, 5, 275}, {H::griffin, 8, 5, 561},
        {H::anemoi, 4, 5, 244}, {H::anemoi, 6, 5, 350}, {H::anemoi, 8, 5, 496},
    });
    static const auto plonk3 = build({
        {H::arion, 3, 3, 147}, {H::arion, 4, 3, 211}, {H::arion, 5, 3, 219}, {H::arion, 6, 3, 261}, {H::arion, 8, 3, 279},
        {H::aggressive_arion, 3, 3, 123}, {H::aggressive_arion, 4, 3, 143}, {H::aggressive_arion, 5, 3, 177},
        {H::aggressive_arion, 6, 3, 211}, {H::aggressive_arion, 8, 3, 279},
        {H::poseidon, 3, 3, 492}, {H::poseidon, 4, 3, 600}, {H::poseidon, 5, 3, 708}, {H::poseidon, 6, 3, 1368},
        {H::poseidon, 8, 3, 2504},
        {H::griffin, 3, 3, 131}, {H::griffin, 4, 3, 202}, {H::griffin, 8, 3, 460},
        {H::anemoi, 4, 3, 172}, {H::anemoi, 6, 3, 216}, {H::anemoi, 8, 3, 332},
        {H::arion, 3, 5, 159}, {H::arion, 4, 5, 192}, {H::arion, 5, 5, 239}, {H::arion, 6, 5, 286}, {H::arion, 8, 5, 307},
        {H::aggressive_arion, 3, 5, 107}, {H::aggressive_arion, 4, 5, 155}, {H::aggressive_arion, 5, 5, 193},
        {H::aggressive_arion, 6, 5, 231}, {H::aggressive_arion, 8, 5, 307},
        {H::poseidon, 3, 5, 432}, {H::poseidon, 4, 5, 520}, {H::poseidon, 5, 5, 608}, {H::poseidon, 6, 5, 1080},
        {H::poseidon, 8, 5, 1896},
        {H::griffin, 3, 5, 123}, {H::griffin, 4, 5, 182}, {H::griffin, 8, 5, 398},
        {H::anemoi, 4, 5, 196}, {H::anemoi, 6, 5, 246}, {H::anemoi, 8, 5, 372},
    });
    switch (s) {
    case Scheme::r1cs: return r1cs;
    case Scheme::plonk2: return plonk2;
    case Scheme::plonk3: return plonk3;
    }
    throw InternalInvariant("unknown scheme");
}

void require(bool ok, const std::string& what)
{
    if (!ok) {
        throw InvalidArgument(what);
    }
}

RoundSpec rounds_of(const CountQuery& q)
{
    return q.rounds ? *q.rounds : default_rounds(q.hash, q.n, q.d);
}

} // namespace

std::string to_string(HashFamily h)
{
    switch (h) {
    case HashFamily::arion: return "arion";
    case HashFamily::aggressive_arion: return "aggressive_arion";
    case HashFamily::griffin: return "griffin";
    case HashFamily::anemoi: return "anemoi";
    case HashFamily::poseidon: return "poseidon";
    }
    return "unknown";
}

std::string to_string(Scheme s)
{
    switch (s) {
    case Scheme::r1cs: return "r1cs";
    case Scheme::plonk2: return "plonk2";
    case Scheme::plonk3: return "plonk3";
    }
    return "unknown";
}

HashFamily parse_hash_family(std::string_view s)
{
    for (auto h : {HashFamily::arion, HashFamily::aggressive_arion, HashFamily::griffin, HashFamily::anemoi, HashFamily::poseidon}) {
        if (s == to_string(h)) {
            return h;
        }
    }
    if (s == "arionhash") {
        return HashFamily::arion;
    }
    if (s == "aggressive" || s == "a-arion") {
        return HashFamily::aggressive_arion;
    }
    throw InvalidArgument("unknown hash '" + std::string(s) + "'");
}

Scheme parse_scheme(std::string_view s)
{
    for (auto sc : {Scheme::r1cs, Scheme::plonk2, Scheme::plonk3}) {
        if (s == to_string(sc)) {
            return sc;
        }
    }
    throw InvalidArgument("unknown scheme '" + std::string(s) + "' (expected r1cs, plonk2 or plonk3)");
}

RoundSpec default_rounds(HashFamily h, size_t n, uint64_t d)
{
    require(d == 3 || d == 5, "round numbers are listed for d = 3 and d = 5 only");
    RoundSpec r;
    switch (h) {
    case HashFamily::arion:
        r.r = rounds_for(n, d, Mode::standard);
        return r;
    case HashFamily::aggressive_arion:
        r.r = rounds_for(n, d, Mode::aggressive);
        return r;
    case HashFamily::griffin: {
        static const std::map<std::pair<size_t, uint64_t>, size_t> t = {
            {{3, 3}, 16}, {{4, 3}, 14}, {{8, 3}, 11}, {{3, 5}, 12}, {{4, 5}, 11}, {{8, 5}, 9}};
        auto it = t.find({n, d});
        require(it != t.end(), "no Griffin round number for n = " + std::to_string(n));
        r.r = it->second;
        return r;
    }
    case HashFamily::anemoi: {
        static const std::map<size_t, size_t> t = {{4, 12}, {6, 10}, {8, 10}};
        auto it = t.find(n);
        require(it != t.end(), "no Anemoi round number for n = " + std::to_string(n));
        r.r = it->second;
        return r;
    }
    case HashFamily::poseidon:
        r.rf = 8;
        r.rp = d == 3 ? 84 : 56;
        r.r = r.rf + r.rp;
        return r;
    }
    throw InvalidArgument("unknown hash");
}

uint64_t count_r1cs(const CountQuery& q)
{
    const RoundSpec rs = rounds_of(q);
    const uint64_t n = q.n;
    const uint64_t r = rs.r;
    switch (q.hash) {
    case HashFamily::arion:
    case HashFamily::aggressive_arion:
        require(n >= 2, "ArionHash needs n >= 2");
        return r * ((n - 1) * (d_inc(q.d) + 2) + d_inc(q.d2));
    case HashFamily::griffin:
        require(n >= 3, "Griffin needs n >= 3");
        return 2 * r * (d_inc(q.d) + n - 2);
    case HashFamily::anemoi:
        require(n >= 2 && n % 2 == 0, "Anemoi needs an even n");
        return r * n / 2 * (d_inc(q.d) + 2);
    case HashFamily::poseidon:
        return d_inc(q.d) * (n * rs.rf + rs.rp);
    }
    throw InvalidArgument("unknown hash");
}

uint64_t count_plonk(const CountQuery& q, unsigned wires)
{
    require(wires == 2 || wires == 3, "Plonk counts exist for 2 and 3 wires");
    const RoundSpec rs = rounds_of(q);
    const uint64_t n = q.n;
    const uint64_t r = rs.r;
    const uint64_t di = d_inc(q.d);
    switch (q.hash) {
    case HashFamily::arion:
    case HashFamily::aggressive_arion: {
        require(n >= 2, "ArionHash needs n >= 2");
        const uint64_t d2i = d_inc(q.d2);
        const uint64_t gtds = wires == 2 ? (n - 1) * (di + 6) + d2i - 1 : (n - 1) * (di + 4) + d2i;
        return r * gtds + (r + 1) * arion_affine(n, wires);
    }
    case HashFamily::anemoi: {
        if (wires == 2) {
            static const std::map<uint64_t, uint64_t> lin = {{2, 2}, {6, 10}, {8, 16}};
            uint64_t l = 0;
            if (n == 4) {
                l = n * (n / 2 - 1);
            } else {
                auto it = lin.find(n);
                require(it != lin.end(), "Anemoi Plonk count needs n in {2, 4, 6, 8}");
                l = it->second;
            }
            return r * n / 2 * (di + 5) + (r + 1) * l;
        }
        static const std::map<uint64_t, uint64_t> lin = {{2, 2}, {4, 4}, {6, 6}, {8, 12}};
        auto it = lin.find(n);
        require(it != lin.end(), "Anemoi Plonk count needs n in {2, 4, 6, 8}");
        return r * n / 2 * (di + 3) + (r + 1) * it->second;
    }
    case HashFamily::griffin: {
        require(n == 3 || n == 4 || n == 8 || (n >= 12 && n % 4 == 0), "Griffin Plonk count needs n in {3, 4, 8} or a multiple of 4 >= 12");
        if (wires == 2) {
            uint64_t l = n == 3 ? 5 : n == 4 ? 8 : n == 8 ? 24 : 8 * n / 4 + 2 * n - 4;
            return r * (2 * di + 4 * n - 11) + (r + 1) * l;
        }
        uint64_t l = n == 3 ? 3 : n == 4 ? 6 : n == 8 ? 20 : 6 * n / 4 + 4 * ((n / 4 - 1) / 2) + n;
        return r * (2 * di + 3 * n - 8) + (r + 1) * l;
    }
    case HashFamily::poseidon: {
        const uint64_t sbox = di * (n * rs.rf + rs.rp);
        if (wires == 2) {
            return sbox + (r + 1) * n * (n - 1);
        }
        const uint64_t per = n <= 3 ? n : ceil_half(static_cast<int64_t>(n) - 3);
        return sbox + (r + 1) * n * per;
    }
    }
    throw InvalidArgument("unknown hash");
}

uint64_t count(const CountQuery& q, Scheme s)
{
    switch (s) {
    case Scheme::r1cs: return count_r1cs(q);
    case Scheme::plonk2: return count_plonk(q, 2);
    case Scheme::plonk3: return count_plonk(q, 3);
    }
    throw InvalidArgument("unknown scheme");
}

std::string count_formula(HashFamily h, Scheme s)
{
    const bool arion = h == HashFamily::arion || h == HashFamily::aggressive_arion;
    switch (s) {
    case Scheme::r1cs:
        if (arion) {
            return "r*((n-1)*(d1_inc+2)+d2_inc)";
        }
        if (h == HashFamily::griffin) {
            return "2*r*(d_inc+n-2)";
        }
        if (h == HashFamily::anemoi) {
            return "(r*n/2)*(d_inc+2)";
        }
        return "d_inc*(n*r_f+r_p)";
    case Scheme::plonk2:
        if (arion) {
            return "r*((n-1)*(d1_inc+6)+d2_inc-1)+(r+1)*{n(n-1) if n<=3; 4(n-1) if n>=4}";
        }
        if (h == HashFamily::griffin) {
            return "r*(2*d_inc+4n-11)+(r+1)*{5,8,24 for n=3,4,8; 8n/4+2n-4 for n>=12}";
        }
        if (h == HashFamily::anemoi) {
            return "(r*n/2)*(d_inc+5)+(r+1)*{2,n(n/2-1),10,16 for n=2,4,6,8}";
        }
        return "d_inc*(n*r_f+r_p)+(r+1)*n*(n-1), r=r_f+r_p";
    case Scheme::plonk3:
        if (arion) {
            return "r*((n-1)*(d1_inc+4)+d2_inc)+(r+1)*{n if n<=3; n+2+ceil((n-3)/2)+ceil((n-4)/2) if n>=4}";
        }
        if (h == HashFamily::griffin) {
            return "r*(2*d_inc+3n-8)+(r+1)*{3,6,20 for n=3,4,8; 6n/4+4*floor((n/4-1)/2)+n for n>=12}";
        }
        if (h == HashFamily::anemoi) {
            return "(r*n/2)*(d_inc+3)+(r+1)*{n,n,6,12 for n=2,4,6,8}";
        }
        return "d_inc*(n*r_f+r_p)+(r+1)*n*{n if n<=3; ceil((n-3)/2) if n>=4}, r=r_f+r_p";
    }
    return "";
}

std::vector<PlonkGate> plonk_gate_trace(size_t n, size_t rounds, uint64_t d1, uint64_t d2, unsigned wires)
{
    require(wires == 2 || wires == 3, "Plonk traces exist for 2 and 3 wires");
    require(n >= 2 && rounds >= 1, "need n >= 2 and r >= 1");
    const size_t d1i = d_inc(d1);
    const size_t d2i = d_inc(d2);
    std::vector<PlonkGate> gates;
    auto emit = [&gates](size_t round, const char* stage, const char* sel, size_t count) {
        for (size_t k = 0; k < count; ++k) {
            gates.push_back({round, stage, sel});
        }
    };
    const char* add2 = "qL qR qO";
    const char* add3 = "qL qR qF qO";
    const char* mul = "qM qO";
    auto affine = [&](size_t layer) {
        if (wires == 2) {
            if (n <= 3) {
                emit(layer, "affine-generic", add2, n * (n - 1));
                return;
            }
            emit(layer, "affine-sigma", add2, n - 1);
            emit(layer, "affine-weighted", add2, n - 2);
            emit(layer, "affine-combine", "qL qR qO qC", 1);
            emit(layer, "affine-component", add2, 2 * (n - 1));
            return;
        }
        if (n <= 3) {
            emit(layer, "affine-generic", add3, n);
            return;
        }
        emit(layer, "affine-sigma", add3, 1 + ceil_half(static_cast<int64_t>(n) - 3));
        emit(layer, "affine-weighted", add3, 1 + ceil_half(static_cast<int64_t>(n) - 4));
        emit(layer, "affine-combine", "qL qR qO qC", 1);
        emit(layer, "affine-component", add3, n - 1);
    };

    affine(0);
    for (size_t r = 1; r <= rounds; ++r) {
        emit(r, "power-d2", mul, d2i);
        emit(r, "power-d1", mul, (n - 1) * d1i);
        if (wires == 2) {
            emit(r, "tau", add2, 1 + 2 * (n - 2));
            emit(r, "g-h", "qM qL qO qC", 2 * (n - 1));
            emit(r, "product-add", "qM qO / qL qR qO", 2 * (n - 1));
        } else {
            emit(r, "tau", add3, n - 1);
            emit(r, "g-h", "qM qL qO qC", 2 * (n - 1));
            emit(r, "product-add", "qM qF qO", n - 1);
        }
        affine(r);
    }
    return gates;
}

std::vector<PlonkGate> plonk_gate_trace(const ArionParameters& params, unsigned wires)
{
    return plonk_gate_trace(params.n, params.rounds, params.d1, params.d2, wires);
}

std::vector<CountEntry> comparison_table(Scheme s)
{
    const auto& pub = published(s);
    std::vector<CountEntry> out;
    const std::array<HashFamily, 5> order = {HashFamily::arion, HashFamily::aggressive_arion, HashFamily::griffin,
                                             HashFamily::anemoi, HashFamily::poseidon};
    for (uint64_t d : {3u, 5u}) {
        for (auto h : order) {
            for (size_t n : {3u, 4u, 5u, 6u, 8u}) {
                auto it = pub.find({h, n, d});
                if (it == pub.end()) {
                    continue;
                }
                CountQuery q{h, n, d, 257, std::nullopt};
                CountEntry e{h, s, n, d, default_rounds(h, n, d), count(q, s), count_formula(h, s), it->second, {}};
                if (h == HashFamily::anemoi && s == Scheme::plonk3) {
                    e.note = "linear-layer term read as (r+1)*n; the printed (r+1)*(r+1)*n does not reproduce any cell";
                }
                out.push_back(e);
                if (h == HashFamily::arion && n == 5 && d == 3) {
                    CountQuery alt{h, n, d, 257, RoundSpec{4, 0, 0}};
                    CountEntry a{h, s, n, d, RoundSpec{4, 0, 0}, count(alt, s), count_formula(h, s), it->second,
                                 "4 rounds, as in the competing round-number listing"};
                    out.push_back(a);
                }
            }
        }
    }
    return out;
}

std::vector<std::string> deviation_flags(const std::vector<CountEntry>& entries)
{
    std::vector<std::string> flags;
    for (const auto& e : entries) {
        if (e.deviates()) {
            flags.push_back(to_string(e.hash) + "/" + to_string(e.scheme) + "/n=" + std::to_string(e.n) + "/d=" + std::to_string(e.d)
                            + "/r=" + std::to_string(e.rounds.r) + ": computed " + std::to_string(e.value) + ", published "
                            + std::to_string(*e.published));
        }
    }
    return flags;
}

nlohmann::json to_json(const CountEntry& e)
{
    nlohmann::json j;
    j["hash"] = to_string(e.hash);
    j["scheme"] = to_string(e.scheme);
    j["n"] = e.n;
    j["d"] = e.d;
    if (e.hash == HashFamily::poseidon) {
        j["rounds"] = {{"r_f", e.rounds.rf}, {"r_p", e.rounds.rp}};
    } else {
        j["rounds"] = e.rounds.r;
    }
    j["count"] = e.value;
    j["formula"] = e.formula;
    if (e.published) {
        j["published"] = *e.published;
        j["deviation"] = e.deviates();
    } else {
        j["published"] = nullptr;
        j["deviation"] = false;
    }
    if (!e.note.empty()) {
        j["note"] = e.note;
    }
    return j;
}

} // namespace arion
