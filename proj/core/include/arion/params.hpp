#pragma once

/**
 * @file params.hpp
 * @brief Arion / ArionHash parameter sets.
 *
 * A parameter set fixes the prime, the branch count n, the round count r, the
 * exponents (d1, d2, e), the per-branch GTDS coefficients and the round
 * constants. Constants are expanded deterministically from a seed; see
 * generate_constants() for the transcript.
 */

#include <arion/field.hpp>

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace arion {

enum class Mode { standard, aggressive };

std::string to_string(Mode m);
Mode parse_mode(std::string_view s);

/// Coefficients of g_i(s) = s^2 + alpha1 s + alpha2 and h_i(s) = s^2 + beta s.
struct GtdsCoefficients {
    FieldElement alpha1;
    FieldElement alpha2;
    FieldElement beta;
};

struct ArionParameters {
    FieldPtr field;
    size_t n = 0;
    size_t rounds = 0;
    uint64_t d1 = 0;
    uint64_t d2 = 0;
    /// e = d2^-1 mod (p - 1).
    mpz_class e;
    /// d1^-1 mod (p - 1), used by the inverse GTDS.
    mpz_class d1_inv;
    Mode mode = Mode::standard;
    std::string seed;

    /// Either one set (shared by every round) or one set per round; each set has n - 1 entries.
    std::vector<std::vector<GtdsCoefficients>> coefficients;
    /// rounds vectors of length n.
    std::vector<std::vector<FieldElement>> round_constants;

    /// Demand the 128-bit round count when p >= 2^250.
    bool profile_128 = true;
    /// Demand that d1 is the smallest admissible exponent, not merely coprime to p - 1.
    bool strict_d1 = true;
    /// Permit d2 outside the tabulated set.
    bool unsafe_d2 = false;

    bool shared_coefficients() const { return coefficients.size() == 1; }
    /// Coefficients of branch @p branch (0-based, < n - 1) in round @p round (0-based).
    const GtdsCoefficients& coeff(size_t round, size_t branch) const;
};

/// Everything needed to build a parameter set; unset fields take their defaults.
struct ParameterRequest {
    FieldPtr field;
    size_t n = 3;
    /// Defaults to rounds_for(n, d1, mode); required when that table has no entry.
    std::optional<size_t> rounds;
    /// Defaults to select_d1(p).
    std::optional<uint64_t> d1;
    uint64_t d2 = 257;
    Mode mode = Mode::standard;
    std::string seed = "arion";
    bool fresh_coefficients_per_round = false;
    bool profile_128 = true;
    bool strict_d1 = true;
    bool unsafe_d2 = false;
};

/// Builds and validates; throws InvalidArgument listing every violation.
ArionParameters make_parameters(const ParameterRequest& request);

/// Smallest d >= 2 with gcd(d, p - 1) = 1.
uint64_t select_d1(const PrimeField& field);
/// d2^-1 mod (p - 1); throws NotInvertible.
mpz_class compute_e(uint64_t d2, const PrimeField& field);
/// Smallest m with m * e >= p, i.e. ceil(p / e).
mpz_class degree_overflow_factor(const PrimeField& field, uint64_t d2);

/// Round count from the 128-bit parameter table (p >= 2^250). n in {3,4,5,6,8}, d1 in {3,5}.
size_t rounds_for(size_t n, uint64_t d1, Mode mode);
std::optional<size_t> try_rounds_for(size_t n, uint64_t d1, Mode mode);

/// Uniform field elements expanded from (label, p, n, r, seed). See generate_constants().
class ConstantStream {
  public:
    ConstantStream(FieldPtr field, std::string_view label, size_t n, size_t rounds, std::string_view seed);

    /// Next uniform element (rejection sampled).
    FieldElement next();

  private:
    FieldPtr field_;
    std::string prefix_;
    uint64_t counter_ = 0;
    size_t chunk_;
    mpz_class limit_;
};

struct GeneratedConstants {
    std::vector<std::vector<GtdsCoefficients>> coefficients;
    std::vector<std::vector<FieldElement>> round_constants;
};

/**
 * @brief Deterministic constant expansion, transcript version 1.
 *
 * Each constant class reads its own stream. Block k of a stream is
 * SHAKE256("arion-constants-v1|" label "|p=" hex(p) "|n=" n "|r=" r "|seed=" seed || be64(k))
 * truncated to ceil(bitlen(p)/8) + 8 bytes, read big-endian, rejected when
 * it is not below the largest multiple of p that fits, and reduced mod p.
 *
 * Labels: "gtds-alpha" yields (alpha1, alpha2) pairs, retried until
 * alpha1^2 - 4 alpha2 is a non-residue; "gtds-beta" yields beta;
 * "round-constants" yields c^(1) .. c^(r) in order. With per-round
 * coefficients the sets are drawn round by round from the same streams.
 * Every individual draw gives up after 1000 attempts.
 */
GeneratedConstants generate_constants(const FieldPtr& field, size_t n, size_t rounds, std::string_view seed, bool per_round = false);

/// @p count elements from a single labelled stream, for domain-separated IVs.
std::vector<FieldElement> expand_elements(const FieldPtr& field, std::string_view label, size_t n, size_t count, std::string_view seed);

enum class ViolationKind {
    Shape,
    Gcd_d1,
    NonMinimal_d1,
    Gcd_d2,
    Disallowed_d2,
    InverseExponent,
    Discriminant,
    TooFewRounds,
    SingularAffine,
    ForeignElement,
};

struct Violation {
    ViolationKind kind;
    std::string detail;
};

std::string to_string(ViolationKind k);

/// Empty iff every parameter invariant holds.
std::vector<Violation> validate(const ArionParameters& params);

/// Short stable identifier, e.g. "bn254_n3_r6_d1-5_d2-257_standard_1a2b3c4d".
std::string params_id(const ArionParameters& params);

nlohmann::json to_json(const ArionParameters& params);
/// Parses and validates. Throws InvalidArgument.
ArionParameters parameters_from_json(const nlohmann::json& j);

} // namespace arion
