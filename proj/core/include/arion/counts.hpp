#pragma once

/**
 * @file counts.hpp
 * @brief Closed-form R1CS and Plonk constraint counts for ArionHash and its competitors.
 *
 * Competitor hashes are only counted, never built. Every count carries the
 * formula it came from and, where one exists, the value printed in the
 * published comparison tables, so disagreements stay visible.
 */

#include <arion/params.hpp>

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace arion {

enum class HashFamily { arion, aggressive_arion, griffin, anemoi, poseidon };
enum class Scheme { r1cs, plonk2, plonk3 };

std::string to_string(HashFamily h);
std::string to_string(Scheme s);
HashFamily parse_hash_family(std::string_view s);
Scheme parse_scheme(std::string_view s);

/// Poseidon uses (rf, rp); everything else uses r.
struct RoundSpec {
    size_t r = 0;
    size_t rf = 0;
    size_t rp = 0;
};

/// Round numbers for 256-bit fields at 128-bit security. Throws InvalidArgument when none is listed.
RoundSpec default_rounds(HashFamily h, size_t n, uint64_t d);

struct CountQuery {
    HashFamily hash = HashFamily::arion;
    size_t n = 3;
    /// d1 for ArionHash, the S-box degree otherwise.
    uint64_t d = 3;
    uint64_t d2 = 257;
    std::optional<RoundSpec> rounds;
};

uint64_t count_r1cs(const CountQuery& q);
/// @p wires is 2 or 3.
uint64_t count_plonk(const CountQuery& q, unsigned wires);
uint64_t count(const CountQuery& q, Scheme s);
/// Human readable formula used for (q.hash, s).
std::string count_formula(HashFamily h, Scheme s);

/// One audit gate of the ArionHash Plonk circuit.
struct PlonkGate {
    /// Affine layers are numbered 0..r (0 is the initial layer), GTDS gates by round 1..r.
    size_t round;
    std::string stage;
    /// Nonzero selectors, e.g. "qM qO" for a product or "qL qR qO" for an addition.
    std::string selectors;
};

/// Symbolic gate sequence whose length equals count_plonk for the same shape.
std::vector<PlonkGate> plonk_gate_trace(size_t n, size_t rounds, uint64_t d1, uint64_t d2, unsigned wires);
std::vector<PlonkGate> plonk_gate_trace(const ArionParameters& params, unsigned wires);

struct CountEntry {
    HashFamily hash;
    Scheme scheme;
    size_t n;
    uint64_t d;
    RoundSpec rounds;
    uint64_t value;
    std::string formula;
    /// Value printed in the published comparison table, if the cell exists.
    std::optional<uint64_t> published;
    std::string note;

    bool deviates() const { return published && *published != value; }
};

/// Every (hash, n, d) cell of the published comparison for @p s, recomputed.
/// ArionHash n = 5, d1 = 3 is listed twice: with 5 rounds (parameter table)
/// and with 4 rounds (the competing round-number listing).
std::vector<CountEntry> comparison_table(Scheme s);

/// "hash/scheme/n/d: computed vs published" lines for deviating cells.
std::vector<std::string> deviation_flags(const std::vector<CountEntry>& entries);

nlohmann::json to_json(const CountEntry& e);

} // namespace arion
