#include <arion/security.hpp>

#include <arion/error.hpp>

#include <nlohmann/json.hpp>

#include <bit>
#include <cmath>
#include <numbers>

namespace arion {

namespace {

long double lg(uint64_t v)
{
    return std::log2(static_cast<long double>(v));
}

long long floor_bits(long double kappa)
{
    // Exact integer levels must not drop a bit to rounding noise.
    return static_cast<long long>(std::floor(kappa + 1e-9L));
}

void require_rounds(size_t r)
{
    if (r == 0) {
        throw InvalidArgument("algebraic estimators need at least one round");
    }
}

void require_omega(long double omega)
{
    if (!(omega >= 2.0L && omega <= 2.3727L)) {
        throw InvalidArgument("omega must lie in [2, 2.3727]");
    }
}

} // namespace

std::string to_string(AttackKind k)
{
    switch (k) {
    case AttackKind::diff_trail: return "diff_trail";
    case AttackKind::diff_full_hull: return "diff_full_hull";
    case AttackKind::diff_restricted_hull: return "diff_restricted_hull";
    case AttackKind::truncated_first_round: return "truncated_first_round";
    case AttackKind::truncated_two_round: return "truncated_two_round";
    case AttackKind::linear_trail: return "linear_trail";
    case AttackKind::linear_restricted_hull: return "linear_restricted_hull";
    case AttackKind::gb_min: return "gb_min";
    case AttackKind::gb_macaulay: return "gb_macaulay";
    case AttackKind::gb_solve_det: return "gb_solve_det";
    case AttackKind::gb_solve_prob: return "gb_solve_prob";
    case AttackKind::collision_gb: return "collision_gb";
    }
    throw InternalInvariant("unknown attack kind");
}

const std::vector<AttackKind>& all_attack_kinds()
{
    static const std::vector<AttackKind> kinds = {
        AttackKind::diff_trail,      AttackKind::diff_full_hull, AttackKind::diff_restricted_hull,
        AttackKind::truncated_first_round, AttackKind::truncated_two_round, AttackKind::linear_trail,
        AttackKind::linear_restricted_hull, AttackKind::gb_min, AttackKind::gb_macaulay,
        AttackKind::gb_solve_det,    AttackKind::gb_solve_prob, AttackKind::collision_gb,
    };
    return kinds;
}

AttackKind parse_attack_kind(std::string_view s)
{
    for (auto k : all_attack_kinds()) {
        if (s == to_string(k)) {
            return k;
        }
    }
    throw InvalidArgument("unknown attack kind '" + std::string(s) + "'");
}

long double kappa_diff_trail(long double N, long double d2_bits, size_t r)
{
    return static_cast<long double>(r) * (N - d2_bits);
}

long double kappa_diff_full_hull(long double N, size_t n, size_t r, uint64_t d2, unsigned wt)
{
    if (r == 0) {
        throw InvalidArgument("differential hull needs at least one round");
    }
    // (d2 + 1)^n - 1 can exceed 64 bits.
    mpz_class trails;
    mpz_ui_pow_ui(trails.get_mpz_t(), d2 + 1, n);
    trails -= 1;
    return static_cast<long double>(wt) * (N - lg(d2)) - static_cast<long double>(r - 1) * log2_big(trails);
}

std::optional<HullLevel> kappa_diff_full_hull_min_weight(long double N, size_t n, size_t r, uint64_t d2)
{
    for (unsigned wt = 1; wt <= n; ++wt) {
        const long double k = kappa_diff_full_hull(N, n, r, d2, wt);
        if (k > 0) {
            return HullLevel{wt, k};
        }
    }
    return std::nullopt;
}

long double kappa_diff_restricted(long double N, size_t r, uint64_t d2, long double M)
{
    if (r > 1 && M >= N - lg(d2)) {
        throw InvalidArgument("restricted hull budget M must be below N - log2 d2");
    }
    const auto rr = static_cast<long double>(r);
    return rr * (N - lg(d2)) - (r == 0 ? 0.0L : (rr - 1) * M);
}

long double kappa_truncated_first_round(long double N, size_t n, uint64_t d2, long double log2_M)
{
    return static_cast<long double>(n) * (N - lg(d2)) - log2_M;
}

long double kappa_truncated_two_round(long double N, size_t r, uint64_t d2, long double M)
{
    if (r <= 2) {
        return 0.0L;
    }
    return static_cast<long double>(r - 2) * (N - lg(d2) - M);
}

long double kappa_linear_trail(long double N, size_t r, long double d2_bits, long double log2_D)
{
    return 2.0L + static_cast<long double>(r) * (N - 2.0L * d2_bits) - log2_D;
}

long double kappa_linear_restricted_hull(long double N, size_t r, uint64_t d2, long double log2_M)
{
    if (d2 < 2) {
        throw InvalidArgument("linear hull needs d2 >= 2");
    }
    const auto rr = static_cast<long double>(r);
    return rr * (N - 2.0L * lg(d2 - 1)) - (r == 0 ? 0.0L : (rr - 1) * log2_M);
}

mpz_class macaulay_bound(size_t n, size_t r, uint64_t d1, uint64_t d2)
{
    if (n < 2) {
        throw InvalidArgument("Macaulay bound needs n >= 2");
    }
    mpz_class pow2;
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2, n - 1);
    const mpz_class per_round = mpz_class(d2) + 2 * (mpz_class(d1) + 1) * (pow2 - 1) - mpz_class(n - 1) * d1 - mpz_class(n);
    return mpz_class(r) * per_round + 1;
}

std::string to_string(GbModel m)
{
    switch (m) {
    case GbModel::arion: return "arion";
    case GbModel::arionhash: return "arionhash";
    case GbModel::collision: return "collision";
    }
    throw InternalInvariant("unknown model");
}

GbModel parse_gb_model(std::string_view s)
{
    for (auto m : {GbModel::arion, GbModel::arionhash, GbModel::collision}) {
        if (s == to_string(m)) {
            return m;
        }
    }
    throw InvalidArgument("unknown polynomial model '" + std::string(s) + "'");
}

mpz_class quotient_dim(GbModel model, size_t n, size_t r, uint64_t d1, uint64_t d2)
{
    if (n < 2) {
        throw InvalidArgument("quotient dimension needs n >= 2");
    }
    mpz_class base;
    if (model == GbModel::arion) {
        mpz_ui_pow_ui(base.get_mpz_t(), d1 + 2, n - 1);
        base *= d2;
    } else {
        mpz_ui_pow_ui(base.get_mpz_t(), 2, n - 1);
        base = base * d2 * (d1 + 1) - mpz_class(d1) * d2;
    }
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), model == GbModel::collision ? 2 * r : r);
    return out;
}

size_t gb_variables(GbModel model, size_t n, size_t r)
{
    const size_t nv = r * (n + 1);
    return model == GbModel::collision ? 2 * nv - 1 : nv;
}

long double gb_solving_bits(GbModel model, size_t n, size_t r, uint64_t d1, uint64_t d2, long double omega, SolveFlavor flavor)
{
    require_rounds(r);
    require_omega(omega);
    const auto nv = static_cast<long double>(gb_variables(model, n, r));
    const long double log_d = log2_big(quotient_dim(model, n, r, d1, d2));
    if (flavor == SolveFlavor::probabilistic) {
        return std::log2(nv) + omega * log_d;
    }
    return 0.5L * std::log2(nv) + (2.0L + (nv - 1.0L) / nv) * log_d;
}

mpz_class gb_min_degree(size_t n, uint64_t d1, uint64_t d2)
{
    mpz_class pow2;
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2, n - 1);
    const mpz_class top = pow2 * (d1 + 1) - d1;
    return top > d2 ? top : mpz_class(d2);
}

long double gb_groebner_bits(size_t n, size_t r, uint64_t d1, uint64_t d2, long double omega, GbDegree which)
{
    require_rounds(r);
    require_omega(omega);
    const mpz_class nv = gb_variables(GbModel::arion, n, r);
    const mpz_class d = which == GbDegree::min ? gb_min_degree(n, d1, d2) : macaulay_bound(n, r, d1, d2);
    return omega * log2_binomial(nv + d - 1, d);
}

long double log2_binomial_exact(uint64_t n, uint64_t k)
{
    if (k > n) {
        throw InvalidArgument("binomial with k > n");
    }
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return log2_big(b);
}

long double log2_binomial_entropy(const mpz_class& n, const mpz_class& k)
{
    if (k < 0 || k > n) {
        throw InvalidArgument("binomial with k outside [0, n]");
    }
    if (k == 0 || k == n) {
        return 0.0L;
    }
    const long double nn = mpz_get_d(n.get_mpz_t());
    const long double kk = mpz_get_d(k.get_mpz_t());
    const long double q = kk / nn;
    const long double h2 = -q * std::log2(q) - (1 - q) * std::log2(1 - q);
    return 0.5L * std::log2(nn / (std::numbers::pi_v<long double> * kk * (nn - kk))) + nn * h2;
}

long double log2_binomial(const mpz_class& n, const mpz_class& k, uint64_t exact_limit)
{
    if (n <= exact_limit) {
        return log2_binomial_exact(n.get_ui(), k.get_ui());
    }
    return log2_binomial_entropy(n, k);
}

const std::vector<GbTableRow>& published_gb_table()
{
    using M = GbModel;
    static const std::vector<GbTableRow> rows = {
        {M::arion, 3, 4, 3, 123, 129, 137, 96},     {M::arion, 3, 6, 3, 162, 170, 207, 143},
        {M::arion, 4, 4, 3, 143, 160, 165, 115},    {M::arion, 4, 5, 3, 166, 186, 207, 143},
        {M::arion, 5, 3, 3, 134, 164, 145, 101},    {M::arion, 5, 4, 3, 162, 201, 194, 134},
        {M::arion, 6, 3, 3, 150, 208, 166, 115},    {M::arion, 6, 4, 3, 181, 257, 222, 153},
        {M::arion, 8, 2, 3, 204, 244, 138, 96},     {M::arion, 8, 3, 3, 279, 338, 208, 143},
        {M::arion, 3, 4, 5, 123, 131, 149, 104},    {M::arion, 3, 5, 5, 143, 153, 187, 129},
        {M::arion, 4, 3, 5, 118, 135, 136, 95},     {M::arion, 4, 5, 5, 166, 195, 229, 158},
        {M::arion, 5, 3, 5, 134, 174, 162, 113},    {M::arion, 5, 4, 5, 162, 215, 217, 149},
        {M::arion, 6, 3, 5, 172, 225, 187, 130},    {M::arion, 8, 2, 5, 225, 263, 158, 110},
        {M::arion, 8, 3, 5, 309, 366, 238, 164},
        {M::arionhash, 3, 5, 3, 143, 150, 158, 110}, {M::arionhash, 3, 6, 3, 162, 170, 190, 132},
        {M::arionhash, 4, 4, 3, 143, 160, 141, 98},  {M::arionhash, 4, 6, 3, 187, 210, 212, 146},
        {M::arionhash, 5, 4, 3, 162, 201, 154, 107}, {M::arionhash, 5, 5, 3, 187, 235, 193, 133},
        {M::arionhash, 6, 4, 3, 181, 257, 167, 115}, {M::arionhash, 6, 5, 3, 208, 301, 208, 143},
        {M::arionhash, 8, 3, 3, 279, 338, 143, 100}, {M::arionhash, 8, 4, 3, 345, 423, 191, 132},
        {M::arionhash, 3, 4, 5, 123, 131, 133, 93},  {M::arionhash, 3, 6, 5, 162, 173, 200, 138},
        {M::arionhash, 4, 4, 5, 143, 143, 167, 103}, {M::arionhash, 4, 5, 5, 179, 166, 195, 128},
        {M::arionhash, 5, 3, 5, 162, 215, 161, 111}, {M::arionhash, 5, 5, 5, 187, 251, 201, 139},
        {M::arionhash, 6, 3, 5, 172, 225, 130, 91},  {M::arionhash, 6, 5, 5, 244, 328, 217, 149},
        {M::arionhash, 8, 3, 5, 309, 366, 148, 103}, {M::arionhash, 8, 4, 5, 385, 461, 198, 137},
    };
    return rows;
}

std::optional<GbTableRow> published_gb_row(GbModel model, size_t n, size_t r, uint64_t d1)
{
    for (const auto& row : published_gb_table()) {
        if (row.model == model && row.n == n && row.r == r && row.d1 == d1) {
            return row;
        }
    }
    return std::nullopt;
}

const SecurityEntry& SecurityReport::at(AttackKind k) const
{
    for (const auto& e : entries) {
        if (e.kind == k) {
            return e;
        }
    }
    throw InvalidArgument("report has no entry for " + to_string(k));
}

SecurityReport full_report(const ArionParameters& params, long double omega, GbModel model)
{
    require_omega(omega);
    const size_t n = params.n;
    const size_t r = params.rounds;
    const uint64_t d1 = params.d1;
    const uint64_t d2 = params.d2;
    const unsigned Nbits = static_cast<unsigned>(params.field->bit_length() - 1);
    const auto N = static_cast<long double>(Nbits);
    const auto d2_bits = static_cast<long double>(std::bit_width(d2));
    const long double half = N / 2;

    SecurityReport rep{params_id(params), n, r, d1, d2, params.mode, Nbits, omega, {}};
    const auto add = [&](AttackKind kind, long double kappa, std::string formula, std::vector<std::string> flags = {}) {
        if (floor_bits(kappa) < 128) {
            flags.emplace_back("below-128");
        }
        rep.entries.push_back({kind, kappa, floor_bits(kappa), std::move(formula), std::move(flags)});
    };

    add(AttackKind::diff_trail, kappa_diff_trail(N, d2_bits, r), "r*(N - bits(d2))");

    if (r == 0) {
        add(AttackKind::diff_full_hull, 0, "wt*(N - log2 d2) - (r-1)*log2((d2+1)^n - 1)", {"no-rounds"});
    } else if (auto hull = kappa_diff_full_hull_min_weight(N, n, r, d2)) {
        add(AttackKind::diff_full_hull, hull->kappa, "wt*(N - log2 d2) - (r-1)*log2((d2+1)^n - 1)",
            {"wt=" + std::to_string(hull->wt)});
    } else {
        add(AttackKind::diff_full_hull, 0, "wt*(N - log2 d2) - (r-1)*log2((d2+1)^n - 1)", {"no-positive-weight"});
    }

    add(AttackKind::diff_restricted_hull, kappa_diff_restricted(N, r, d2, half), "r*(N - log2 d2) - (r-1)*M, M = N/2");
    add(AttackKind::truncated_first_round, kappa_truncated_first_round(N, n, d2, N), "n*(N - log2 d2) - log2 M, log2 M = N");
    add(AttackKind::truncated_two_round, kappa_truncated_two_round(N, r, d2, half), "(r-2)*(N - log2 d2 - M), M = N/2");
    add(AttackKind::linear_trail, kappa_linear_trail(N, r, d2_bits, N), "2 + r*(N - 2*bits(d2)) - log2 D, log2 D = N");
    add(AttackKind::linear_restricted_hull, kappa_linear_restricted_hull(N, r, d2, half),
        "r*(N - 2*log2(d2-1)) - (r-1)*log2 M, log2 M = N/2");

    if (r == 0) {
        for (auto k : {AttackKind::gb_min, AttackKind::gb_macaulay, AttackKind::gb_solve_det, AttackKind::gb_solve_prob,
                       AttackKind::collision_gb}) {
            add(k, 0, "undefined without rounds", {"no-rounds"});
        }
        return rep;
    }

    const auto published = d2 == 121 && omega == 2.0L ? published_gb_row(model, n, r, d1) : std::nullopt;
    std::vector<std::string> min_flags{"gb-column-convention-unresolved"};
    std::vector<std::string> mb_flags{"gb-column-convention-unresolved"};
    if (published) {
        min_flags.push_back("published=" + std::to_string(published->gb_min));
        mb_flags.push_back("published=" + std::to_string(published->gb_macaulay));
    }
    add(AttackKind::gb_min, gb_groebner_bits(n, r, d1, d2, omega, GbDegree::min),
        "omega*log2 binom(nv+d-1, d), d = max(d2, 2^(n-1)(d1+1)-d1), nv = r(n+1)", min_flags);
    add(AttackKind::gb_macaulay, gb_groebner_bits(n, r, d1, d2, omega, GbDegree::macaulay),
        "omega*log2 binom(nv+d-1, d), d = Macaulay bound, nv = r(n+1)", mb_flags);
    add(AttackKind::gb_solve_det, gb_solving_bits(model, n, r, d1, d2, omega, SolveFlavor::deterministic),
        "log2(nv)/2 + (2 + (nv-1)/nv)*log2 dim, " + to_string(model) + " quotient");
    add(AttackKind::gb_solve_prob, gb_solving_bits(model, n, r, d1, d2, omega, SolveFlavor::probabilistic),
        "log2 nv + omega*log2 dim, " + to_string(model) + " quotient");
    add(AttackKind::collision_gb, gb_solving_bits(GbModel::collision, n, r, d1, d2, omega, SolveFlavor::probabilistic),
        "log2 nv + omega*log2 dim, collision quotient, nv = 2r(n+1)-1");
    return rep;
}

nlohmann::json to_json(const SecurityReport& r)
{
    nlohmann::json j;
    j["format"] = "arion-security-v1";
    j["params_id"] = r.params_id;
    j["n"] = r.n;
    j["rounds"] = r.rounds;
    j["d1"] = r.d1;
    j["d2"] = r.d2;
    j["mode"] = to_string(r.mode);
    j["N"] = r.N;
    j["omega"] = static_cast<double>(r.omega);
    auto entries = nlohmann::json::array();
    for (const auto& e : r.entries) {
        entries.push_back({{"kind", to_string(e.kind)},
                           {"kappa_bits", e.kappa_bits},
                           {"kappa", static_cast<double>(e.kappa)},
                           {"formula_ref", e.formula_ref},
                           {"flags", e.flags}});
    }
    j["attacks"] = std::move(entries);
    return j;
}

} // namespace arion
