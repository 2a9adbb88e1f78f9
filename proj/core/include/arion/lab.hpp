#pragma once

/**
 * @file lab.hpp
 * @brief Brute-force experiments on tiny primes.
 *
 * Every function here walks the whole state space, so p^n is capped at 10^6.
 */

#include <arion/params.hpp>

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace arion {

inline constexpr uint64_t lab_state_limit = 1'000'000;

/// Reduced polynomial in Fp[x_1..x_n]/(x_i^p - x_i). Coefficient of x^k sits at index sum k_i p^(i-1).
struct PolynomialTable {
    uint64_t p = 0;
    size_t n = 0;
    std::vector<uint64_t> coeffs;

    size_t nonzero() const;
    /// nonzero / p^n.
    double density() const;
    uint64_t total_degree() const;
    /// Largest exponent of a single variable over all monomials present.
    uint64_t univariate_degree() const;
    uint64_t evaluate(std::span<const uint64_t> x) const;
};

/// Parameters for a lab prime: coprimality replaces minimality for d1, any d2 coprime to p - 1 is accepted.
ArionParameters lab_parameters(uint64_t p, size_t n, uint64_t d1, uint64_t d2, size_t rounds = 6, std::string_view seed = "lab");

/// True when d1 and d2 are both invertible exponents mod p - 1.
bool lab_exponents_valid(uint64_t p, uint64_t d1, uint64_t d2);

/**
 * @brief The @p rounds -round prefix of Arion-pi on every point of Fp^n.
 *
 * Zero rounds is the identity. Otherwise the initial affine layer runs first.
 * Result[i] lists component i by point index sum x_j p^(j-1).
 */
std::vector<std::vector<uint64_t>> evaluate_pi_grid(const ArionParameters& params, size_t rounds, unsigned threads = 1);

/// Univariate coefficients c_0..c_(p-1) of the function with values v(0..p-1).
std::vector<uint64_t> interpolate_univariate(std::span<const uint64_t> values, uint64_t p);

/// Per-axis interpolation of a full value grid.
PolynomialTable interpolate_grid(std::vector<uint64_t> values, uint64_t p, size_t n);

/// Unique reduced polynomials of the @p rounds -round prefix, one per component.
std::vector<PolynomialTable> interpolate_pi(const ArionParameters& params, size_t rounds, unsigned threads = 1);

struct ComponentStats {
    double density;
    size_t nonzero;
    uint64_t total_degree;
    uint64_t univariate_degree;
};

struct DensitySample {
    std::string seed;
    std::vector<ComponentStats> components;
};

struct DensityReport {
    uint64_t p;
    size_t n;
    uint64_t d1;
    uint64_t d2;
    size_t rounds_evaluated;
    /// Round count the parameters were generated for.
    size_t param_rounds;
    std::vector<DensitySample> samples;
    double min_density;
    uint64_t min_total_degree;
    uint64_t max_total_degree;
    uint64_t min_univariate_degree;
    uint64_t max_univariate_degree;
};

/// Seeds "density-0" .. "density-(count-1)".
std::vector<std::string> density_seeds(size_t count);

/**
 * @brief Density of the @p rounds -round prefix, for every (p, n) pair.
 *
 * Parameters are built for @p param_rounds rounds, one set per seed.
 * Throws InvalidArgument if d1 or d2 is not invertible mod some p - 1.
 */
std::vector<DensityReport> density_experiment(std::span<const uint64_t> primes, std::span<const size_t> ns, uint64_t d1,
                                              uint64_t d2, size_t seeds = 5, size_t rounds = 2, size_t param_rounds = 6,
                                              unsigned threads = 1);

/// True iff the full Arion-pi hits each of the p^n states exactly once.
bool exhaustive_bijection_check(const ArionParameters& params, unsigned threads = 1);

/// circ(1, ..., n), first row (1, ..., n), each row the previous shifted right.
std::vector<std::vector<int64_t>> circulant_matrix(size_t n);

/// Every square submatrix of circ(1..n) is nonsingular mod p. n in {2, 3, 4}, p > 130.
bool mds_check(size_t n, const PrimeField& field);

nlohmann::json to_json(const DensityReport& r);

} // namespace arion
