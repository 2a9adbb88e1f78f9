#pragma once

/**
 * @file security.hpp
 * @brief Closed-form security levels against statistical and algebraic attacks.
 *
 * All levels are in bits. N is a lower bound on log2 p. Estimators return the
 * real value; reports floor it.
 */

#include <arion/params.hpp>

#include <gmpxx.h>
#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <vector>

namespace arion {

enum class AttackKind {
    diff_trail,
    diff_full_hull,
    diff_restricted_hull,
    truncated_first_round,
    truncated_two_round,
    linear_trail,
    linear_restricted_hull,
    gb_min,
    gb_macaulay,
    gb_solve_det,
    gb_solve_prob,
    collision_gb,
};

std::string to_string(AttackKind k);
AttackKind parse_attack_kind(std::string_view s);
/// All twelve kinds in declaration order.
const std::vector<AttackKind>& all_attack_kinds();

/// r * (N - d2_bits).
long double kappa_diff_trail(long double N, long double d2_bits, size_t r);

/// wt * (N - log2 d2) - (r - 1) * log2((d2 + 1)^n - 1).
long double kappa_diff_full_hull(long double N, size_t n, size_t r, uint64_t d2, unsigned wt);

struct HullLevel {
    unsigned wt;
    long double kappa;
};

/// Smallest input weight wt in 1..n giving a positive level, or nullopt if none does.
std::optional<HullLevel> kappa_diff_full_hull_min_weight(long double N, size_t n, size_t r, uint64_t d2);

/// r * (N - log2 d2) - (r - 1) * M. Requires M < N - log2 d2.
long double kappa_diff_restricted(long double N, size_t r, uint64_t d2, long double M);

/// n * (N - log2 d2) - log2_M.
long double kappa_truncated_first_round(long double N, size_t n, uint64_t d2, long double log2_M);

/// (r - 2) * (N - log2 d2 - M). Zero for r <= 2.
long double kappa_truncated_two_round(long double N, size_t r, uint64_t d2, long double M);

/// 2 + r * (N - 2 * d2_bits) - log2_D.
long double kappa_linear_trail(long double N, size_t r, long double d2_bits, long double log2_D);

/// r * (N - 2 * log2(d2 - 1)) - (r - 1) * log2_M.
long double kappa_linear_restricted_hull(long double N, size_t r, uint64_t d2, long double log2_M);

/// r * (d2 + 2 (d1 + 1)(2^(n-1) - 1) - (n - 1) d1 - n) + 1.
mpz_class macaulay_bound(size_t n, size_t r, uint64_t d1, uint64_t d2);

enum class GbModel { arion, arionhash, collision };
std::string to_string(GbModel m);
GbModel parse_gb_model(std::string_view s);

/// Conjectured quotient space dimension of the polynomial model.
mpz_class quotient_dim(GbModel model, size_t n, size_t r, uint64_t d1, uint64_t d2);

/// Variables left in the model: r (n + 1), or 2 r (n + 1) - 1 for collisions after one guess.
size_t gb_variables(GbModel model, size_t n, size_t r);

enum class SolveFlavor { deterministic, probabilistic };

/// Dominant term of FGLM-style solving on a quotient of dimension d.
/// probabilistic: log2 nv + omega log2 d; deterministic: log2 nv / 2 + (2 + (nv - 1) / nv) log2 d.
long double gb_solving_bits(GbModel model, size_t n, size_t r, uint64_t d1, uint64_t d2, long double omega, SolveFlavor flavor);

enum class GbDegree { min, macaulay };

/// Largest polynomial degree of the model: max(d2, 2^(n-1) (d1 + 1) - d1).
mpz_class gb_min_degree(size_t n, uint64_t d1, uint64_t d2);

/// omega * log2 binom(nv + d - 1, d), with d the minimal degree or the Macaulay bound.
long double gb_groebner_bits(size_t n, size_t r, uint64_t d1, uint64_t d2, long double omega, GbDegree which);

/// log2 binom(n, k), exact when n <= exact_limit, otherwise via the binary-entropy approximation.
long double log2_binomial(const mpz_class& n, const mpz_class& k, uint64_t exact_limit = 1u << 16);
long double log2_binomial_entropy(const mpz_class& n, const mpz_class& k);
long double log2_binomial_exact(uint64_t n, uint64_t k);

/// One row of the published Groebner cost tables (d2 = 121, omega = 2).
struct GbTableRow {
    GbModel model;
    size_t n;
    size_t r;
    uint64_t d1;
    unsigned gb_min;
    unsigned gb_macaulay;
    unsigned deterministic;
    unsigned probabilistic;
};

const std::vector<GbTableRow>& published_gb_table();
std::optional<GbTableRow> published_gb_row(GbModel model, size_t n, size_t r, uint64_t d1);

struct SecurityEntry {
    AttackKind kind;
    long double kappa;
    /// Floor of kappa.
    long long kappa_bits;
    std::string formula_ref;
    std::vector<std::string> flags;
};

struct SecurityReport {
    std::string params_id;
    size_t n;
    size_t rounds;
    uint64_t d1;
    uint64_t d2;
    Mode mode;
    /// floor(log2 p).
    unsigned N;
    long double omega;
    std::vector<SecurityEntry> entries;

    const SecurityEntry& at(AttackKind k) const;
};

/**
 * @brief Every attack kind evaluated for @p params.
 *
 * Budgets: restricted hulls and the two-round truncated attack use M = N / 2;
 * the first-round truncated attack and the linear trail allow 2^N data. The
 * algebraic rows use @p model. Levels below 128 bits carry the flag "below-128".
 */
SecurityReport full_report(const ArionParameters& params, long double omega = 2.0L, GbModel model = GbModel::arionhash);

nlohmann::json to_json(const SecurityReport& r);

} // namespace arion
