#include <arion/params.hpp>

#include <arion/chain.hpp>

#include "xof.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <map>

namespace arion {

namespace {

constexpr int kMaxAttempts = 1000;
constexpr const char* kTranscriptVersion = "arion-constants-v1";

struct RoundRow {
    size_t n;
    size_t d1_3[2];
    size_t d1_5[2];
};

// {standard, aggressive} for p >= 2^250 at 128-bit security.
constexpr std::array<RoundRow, 5> kRoundTable = {{
    {3, {6, 5}, {6, 4}},
    {4, {6, 4}, {5, 4}},
    {5, {5, 4}, {5, 4}},
    {6, {5, 4}, {5, 4}},
    {8, {4, 4}, {4, 4}},
}};

mpz_class p_minus_one(const PrimeField& f)
{
    return f.modulus() - 1;
}

bool coprime(uint64_t d, const mpz_class& m)
{
    return gcd(mpz_class(static_cast<unsigned long>(d)), m) == 1;
}

void check_alpha_pair(const GtdsCoefficients& c, size_t round, size_t branch, std::vector<Violation>& out)
{
    const FieldElement disc = c.alpha1.square() - c.alpha2 * c.alpha1.field()->element(int64_t{4});
    if (disc.is_zero() || !disc.is_qnr()) {
        out.push_back({ViolationKind::Discriminant, "round " + std::to_string(round) + " branch " + std::to_string(branch + 1)
                                                        + ": alpha1^2 - 4 alpha2 is not a quadratic non-residue"});
    }
}

nlohmann::json hex_matrix(const std::vector<std::vector<FieldElement>>& rows)
{
    auto j = nlohmann::json::array();
    for (const auto& row : rows) {
        auto r = nlohmann::json::array();
        for (const auto& x : row) {
            r.push_back(x.to_hex());
        }
        j.push_back(std::move(r));
    }
    return j;
}

std::vector<std::vector<FieldElement>> parse_matrix(const PrimeField& f, const nlohmann::json& j, const char* what)
{
    if (!j.is_array()) {
        throw InvalidArgument(std::string(what) + " must be an array of arrays");
    }
    std::vector<std::vector<FieldElement>> rows;
    for (const auto& row : j) {
        if (!row.is_array()) {
            throw InvalidArgument(std::string(what) + " must be an array of arrays");
        }
        std::vector<FieldElement> r;
        for (const auto& x : row) {
            r.push_back(f.from_hex(x.get<std::string>()));
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace

std::string to_string(Mode m)
{
    return m == Mode::standard ? "standard" : "aggressive";
}

Mode parse_mode(std::string_view s)
{
    if (s == "standard") {
        return Mode::standard;
    }
    if (s == "aggressive") {
        return Mode::aggressive;
    }
    throw InvalidArgument("unknown mode '" + std::string(s) + "' (expected standard or aggressive)");
}

const GtdsCoefficients& ArionParameters::coeff(size_t round, size_t branch) const
{
    const auto& set = coefficients.size() == 1 ? coefficients[0] : coefficients.at(round);
    return set.at(branch);
}

uint64_t select_d1(const PrimeField& field)
{
    const mpz_class m = p_minus_one(field);
    for (uint64_t d = 2;; ++d) {
        if (coprime(d, m)) {
            return d;
        }
    }
}

mpz_class compute_e(uint64_t d2, const PrimeField& field)
{
    return inv_mod(mpz_class(static_cast<unsigned long>(d2)), p_minus_one(field));
}

mpz_class degree_overflow_factor(const PrimeField& field, uint64_t d2)
{
    const mpz_class e = compute_e(d2, field);
    mpz_class m;
    mpz_cdiv_q(m.get_mpz_t(), field.modulus().get_mpz_t(), e.get_mpz_t());
    return m;
}

std::optional<size_t> try_rounds_for(size_t n, uint64_t d1, Mode mode)
{
    if (d1 != 3 && d1 != 5) {
        return std::nullopt;
    }
    for (const auto& row : kRoundTable) {
        if (row.n == n) {
            const size_t col = mode == Mode::standard ? 0 : 1;
            return d1 == 3 ? row.d1_3[col] : row.d1_5[col];
        }
    }
    return std::nullopt;
}

size_t rounds_for(size_t n, uint64_t d1, Mode mode)
{
    auto r = try_rounds_for(n, d1, mode);
    if (!r) {
        throw InvalidArgument("no tabulated round number for n = " + std::to_string(n) + ", d1 = " + std::to_string(d1));
    }
    return *r;
}

ConstantStream::ConstantStream(FieldPtr field, std::string_view label, size_t n, size_t rounds, std::string_view seed)
    : field_(std::move(field)), chunk_(field_->byte_width() + 8)
{
    prefix_ = std::string(kTranscriptVersion) + "|" + std::string(label) + "|p=" + to_hex(field_->modulus())
              + "|n=" + std::to_string(n) + "|r=" + std::to_string(rounds) + "|seed=" + std::string(seed);
    mpz_class range;
    mpz_ui_pow_ui(range.get_mpz_t(), 2, 8 * chunk_);
    limit_ = range - range % field_->modulus();
}

FieldElement ConstantStream::next()
{
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::vector<uint8_t> input(prefix_.begin(), prefix_.end());
        for (int s = 56; s >= 0; s -= 8) {
            input.push_back(static_cast<uint8_t>(counter_ >> s));
        }
        ++counter_;
        const auto block = detail::shake256(input, chunk_);
        mpz_class v;
        mpz_import(v.get_mpz_t(), block.size(), 1, 1, 0, 0, block.data());
        if (v < limit_) {
            return field_->element(v);
        }
    }
    throw InternalInvariant("constant expansion exceeded the attempt limit");
}

GeneratedConstants generate_constants(const FieldPtr& field, size_t n, size_t rounds, std::string_view seed, bool per_round)
{
    if (n < 2 || rounds < 1) {
        throw InvalidArgument("need n >= 2 and r >= 1");
    }
    ConstantStream alpha(field, "gtds-alpha", n, rounds, seed);
    ConstantStream beta(field, "gtds-beta", n, rounds, seed);
    ConstantStream rc(field, "round-constants", n, rounds, seed);
    const FieldElement four = field->element(int64_t{4});

    GeneratedConstants out;
    const size_t sets = per_round ? rounds : 1;
    for (size_t s = 0; s < sets; ++s) {
        std::vector<GtdsCoefficients> set;
        for (size_t i = 0; i + 1 < n; ++i) {
            GtdsCoefficients c;
            int attempt = 0;
            for (;; ++attempt) {
                if (attempt == kMaxAttempts) {
                    throw InternalInvariant("no non-residue discriminant found within the attempt limit");
                }
                c.alpha1 = alpha.next();
                c.alpha2 = alpha.next();
                const FieldElement disc = c.alpha1.square() - four * c.alpha2;
                if (!disc.is_zero() && disc.is_qnr()) {
                    break;
                }
            }
            c.beta = beta.next();
            set.push_back(std::move(c));
        }
        out.coefficients.push_back(std::move(set));
    }
    for (size_t k = 0; k < rounds; ++k) {
        std::vector<FieldElement> c;
        for (size_t i = 0; i < n; ++i) {
            c.push_back(rc.next());
        }
        out.round_constants.push_back(std::move(c));
    }
    return out;
}

std::vector<FieldElement> expand_elements(const FieldPtr& field, std::string_view label, size_t n, size_t count, std::string_view seed)
{
    ConstantStream s(field, label, n, 0, seed);
    std::vector<FieldElement> out;
    for (size_t i = 0; i < count; ++i) {
        out.push_back(s.next());
    }
    return out;
}

ArionParameters make_parameters(const ParameterRequest& req)
{
    if (!req.field) {
        throw InvalidArgument("no prime field given");
    }
    if (req.n < 2) {
        throw InvalidArgument("n must be at least 2");
    }
    ArionParameters p;
    p.field = req.field;
    p.n = req.n;
    p.d1 = req.d1.value_or(select_d1(*req.field));
    p.d2 = req.d2;
    p.mode = req.mode;
    p.seed = req.seed;
    p.profile_128 = req.profile_128;
    p.strict_d1 = req.strict_d1;
    p.unsafe_d2 = req.unsafe_d2;
    if (req.rounds) {
        p.rounds = *req.rounds;
    } else {
        auto r = try_rounds_for(p.n, p.d1, p.mode);
        if (!r) {
            throw InvalidArgument("no tabulated round number for n = " + std::to_string(p.n) + ", d1 = " + std::to_string(p.d1)
                                  + "; pass an explicit round count");
        }
        p.rounds = *r;
    }
    if (p.rounds < 1) {
        throw InvalidArgument("round count must be at least 1");
    }
    const mpz_class m = p_minus_one(*p.field);
    if (coprime(p.d2, m)) {
        p.e = compute_e(p.d2, *p.field);
    }
    if (coprime(p.d1, m)) {
        p.d1_inv = inv_mod(mpz_class(static_cast<unsigned long>(p.d1)), m);
    }
    auto consts = generate_constants(p.field, p.n, p.rounds, p.seed, req.fresh_coefficients_per_round);
    p.coefficients = std::move(consts.coefficients);
    p.round_constants = std::move(consts.round_constants);

    auto violations = validate(p);
    if (!violations.empty()) {
        std::string msg = "invalid parameters:";
        for (const auto& v : violations) {
            msg += "\n  " + to_string(v.kind) + ": " + v.detail;
        }
        throw InvalidArgument(msg);
    }
    return p;
}

std::string to_string(ViolationKind k)
{
    switch (k) {
    case ViolationKind::Shape: return "Shape";
    case ViolationKind::Gcd_d1: return "Gcd(d1)";
    case ViolationKind::NonMinimal_d1: return "NonMinimal(d1)";
    case ViolationKind::Gcd_d2: return "Gcd(d2)";
    case ViolationKind::Disallowed_d2: return "Disallowed(d2)";
    case ViolationKind::InverseExponent: return "InverseExponent";
    case ViolationKind::Discriminant: return "Discriminant";
    case ViolationKind::TooFewRounds: return "TooFewRounds";
    case ViolationKind::SingularAffine: return "SingularAffine";
    case ViolationKind::ForeignElement: return "ForeignElement";
    }
    return "Unknown";
}

std::vector<Violation> validate(const ArionParameters& p)
{
    std::vector<Violation> out;
    if (!p.field) {
        out.push_back({ViolationKind::Shape, "no prime field"});
        return out;
    }
    const PrimeField& f = *p.field;
    const mpz_class m = p_minus_one(f);

    if (p.n < 2) {
        out.push_back({ViolationKind::Shape, "n must be at least 2"});
    }
    if (p.rounds < 1) {
        out.push_back({ViolationKind::Shape, "r must be at least 1"});
    }
    if (p.d1 < 2 || !coprime(p.d1, m)) {
        out.push_back({ViolationKind::Gcd_d1, "gcd(d1, p - 1) != 1 for d1 = " + std::to_string(p.d1)});
    } else {
        if (p.strict_d1 && p.d1 != select_d1(f)) {
            out.push_back({ViolationKind::NonMinimal_d1, "d1 = " + std::to_string(p.d1) + " but the smallest admissible value is "
                                                             + std::to_string(select_d1(f))});
        }
        if (p.d1_inv * p.d1 % m != 1) {
            out.push_back({ViolationKind::InverseExponent, "cached d1^-1 is not an inverse mod p - 1"});
        }
    }
    if (!p.unsafe_d2 && !is_allowed_d2(p.d2)) {
        out.push_back({ViolationKind::Disallowed_d2, "d2 = " + std::to_string(p.d2) + " is not one of the tabulated exponents"});
    }
    if (p.d2 < 2 || !coprime(p.d2, m)) {
        out.push_back({ViolationKind::Gcd_d2, "gcd(d2, p - 1) != 1 for d2 = " + std::to_string(p.d2)});
    } else if (p.e * p.d2 % m != 1) {
        out.push_back({ViolationKind::InverseExponent, "e * d2 != 1 mod p - 1"});
    }

    // circ(1..n) has determinant +-(n + 1)/2 * n^(n-1).
    const mpz_class nn(static_cast<unsigned long>(p.n));
    if (p.n >= 2 && (nn % f.modulus() == 0 || (nn * (nn + 1) / 2) % f.modulus() == 0)) {
        out.push_back({ViolationKind::SingularAffine, "circ(1, ..., n) is singular modulo p"});
    }

    if (p.profile_128 && p.n >= 2 && f.bit_length() > 250) {
        if (auto table = try_rounds_for(p.n, p.d1, p.mode); table && p.rounds < *table) {
            out.push_back({ViolationKind::TooFewRounds, "r = " + std::to_string(p.rounds) + " is below the 128-bit table value "
                                                            + std::to_string(*table)});
        }
    }

    auto same_field = [&](const FieldElement& x) { return x.field() && *x.field() == f; };

    if (p.coefficients.size() != 1 && p.coefficients.size() != p.rounds) {
        out.push_back({ViolationKind::Shape, "expected 1 or r coefficient sets, got " + std::to_string(p.coefficients.size())});
    }
    for (size_t s = 0; s < p.coefficients.size(); ++s) {
        const auto& set = p.coefficients[s];
        if (set.size() + 1 != p.n) {
            out.push_back({ViolationKind::Shape, "coefficient set " + std::to_string(s) + " must have n - 1 entries"});
            continue;
        }
        for (size_t i = 0; i < set.size(); ++i) {
            const auto& c = set[i];
            if (!same_field(c.alpha1) || !same_field(c.alpha2) || !same_field(c.beta)) {
                out.push_back({ViolationKind::ForeignElement, "coefficient outside the parameter field"});
                continue;
            }
            check_alpha_pair(c, s, i, out);
        }
    }
    if (p.round_constants.size() != p.rounds) {
        out.push_back({ViolationKind::Shape, "expected r round-constant vectors, got " + std::to_string(p.round_constants.size())});
    }
    for (const auto& c : p.round_constants) {
        if (c.size() != p.n) {
            out.push_back({ViolationKind::Shape, "round-constant vector must have length n"});
        }
        for (const auto& x : c) {
            if (!same_field(x)) {
                out.push_back({ViolationKind::ForeignElement, "round constant outside the parameter field"});
                break;
            }
        }
    }
    return out;
}

nlohmann::json to_json(const ArionParameters& p)
{
    nlohmann::json j;
    j["format"] = "arion-params-v1";
    j["prime"] = "0x" + to_hex(p.field->modulus());
    j["prime_name"] = p.field->name();
    j["n"] = p.n;
    j["rounds"] = p.rounds;
    j["d1"] = p.d1;
    j["d2"] = p.d2;
    j["e"] = "0x" + to_hex(p.e);
    j["mode"] = to_string(p.mode);
    j["seed"] = p.seed;
    j["transcript"] = kTranscriptVersion;
    j["profile_128"] = p.profile_128;
    j["strict_d1"] = p.strict_d1;
    j["unsafe_d2"] = p.unsafe_d2;
    std::vector<std::vector<FieldElement>> a1, a2, b;
    for (const auto& set : p.coefficients) {
        auto& r1 = a1.emplace_back();
        auto& r2 = a2.emplace_back();
        auto& rb = b.emplace_back();
        for (const auto& c : set) {
            r1.push_back(c.alpha1);
            r2.push_back(c.alpha2);
            rb.push_back(c.beta);
        }
    }
    j["alpha1"] = hex_matrix(a1);
    j["alpha2"] = hex_matrix(a2);
    j["beta"] = hex_matrix(b);
    j["round_constants"] = hex_matrix(p.round_constants);
    return j;
}

ArionParameters parameters_from_json(const nlohmann::json& j)
{
    try {
        ArionParameters p;
        p.field = PrimeField::from_string(j.at("prime").get<std::string>());
        p.n = j.at("n").get<size_t>();
        p.rounds = j.at("rounds").get<size_t>();
        p.d1 = j.at("d1").get<uint64_t>();
        p.d2 = j.at("d2").get<uint64_t>();
        p.e = parse_hex(j.at("e").get<std::string>());
        p.mode = parse_mode(j.at("mode").get<std::string>());
        p.seed = j.value("seed", "");
        p.profile_128 = j.value("profile_128", true);
        p.strict_d1 = j.value("strict_d1", true);
        p.unsafe_d2 = j.value("unsafe_d2", false);
        const mpz_class m = p_minus_one(*p.field);
        if (coprime(p.d1, m)) {
            p.d1_inv = inv_mod(mpz_class(static_cast<unsigned long>(p.d1)), m);
        }
        const auto a1 = parse_matrix(*p.field, j.at("alpha1"), "alpha1");
        const auto a2 = parse_matrix(*p.field, j.at("alpha2"), "alpha2");
        const auto b = parse_matrix(*p.field, j.at("beta"), "beta");
        if (a1.size() != a2.size() || a1.size() != b.size()) {
            throw InvalidArgument("alpha1, alpha2 and beta must have the same number of sets");
        }
        for (size_t s = 0; s < a1.size(); ++s) {
            if (a1[s].size() != a2[s].size() || a1[s].size() != b[s].size()) {
                throw InvalidArgument("alpha1, alpha2 and beta sets must have equal length");
            }
            auto& set = p.coefficients.emplace_back();
            for (size_t i = 0; i < a1[s].size(); ++i) {
                set.push_back({a1[s][i], a2[s][i], b[s][i]});
            }
        }
        p.round_constants = parse_matrix(*p.field, j.at("round_constants"), "round_constants");
        auto violations = validate(p);
        if (!violations.empty()) {
            std::string msg = "invalid parameters:";
            for (const auto& v : violations) {
                msg += "\n  " + to_string(v.kind) + ": " + v.detail;
            }
            throw InvalidArgument(msg);
        }
        return p;
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidArgument(std::string("malformed parameter file: ") + ex.what());
    }
}

std::string params_id(const ArionParameters& p)
{
    const auto digest = detail::shake256(to_json(p).dump(), 4);
    return p.field->name() + "_n" + std::to_string(p.n) + "_r" + std::to_string(p.rounds) + "_d1-" + std::to_string(p.d1) + "_d2-"
           + std::to_string(p.d2) + "_" + to_string(p.mode) + "_" + detail::hex_bytes(digest);
}

} // namespace arion
