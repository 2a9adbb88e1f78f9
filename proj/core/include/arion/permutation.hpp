#pragma once

/**
 * @file permutation.hpp
 * @brief The Arion GTDS, the circulant affine layer and the keyed permutation.
 *
 * Branches are 0-based in code: state[0] is x_1 and state[n-1] is x_n.
 * Rounds are 0-based as well and select round_constants[round] and, when
 * coefficients are drawn per round, coefficients[round].
 */

#include <arion/params.hpp>

#include <span>
#include <vector>

namespace arion {

using StateVector = std::vector<FieldElement>;

enum class Direction { forward, inverse };

/// f_n = x_n^e, then f_i = x_i^d1 g_i(s) + h_i(s) with s = sum_{j>i} (x_j + f_j), swept from the bottom.
StateVector gtds_forward(const StateVector& x, const ArionParameters& params, size_t round);

/// Inverse of gtds_forward. Throws InternalInvariant if some g_i(s) vanishes.
StateVector gtds_inverse(const StateVector& y, const ArionParameters& params, size_t round);

/**
 * @brief The low-degree map G with the same graph as gtds_forward up to a swap.
 *
 * Last branch is x_n^d2 (evaluated with the d2 chain). For y = gtds_forward(x):
 * gtds_ccz(x_1, .., x_{n-1}, y_n) = (y_1, .., y_{n-1}, x_n).
 */
StateVector gtds_ccz(const StateVector& x, const ArionParameters& params, size_t round);

/// circ(1, ..., n) v + c in O(n). An empty @p c means c = 0.
StateVector affine_layer(const StateVector& v, std::span<const FieldElement> c = {});
/// Inverse of affine_layer in O(n). Throws InternalInvariant if circ(1..n) is singular mod p.
StateVector affine_layer_inverse(const StateVector& w, std::span<const FieldElement> c = {});

/// deg f_i = 2^(n-i) (d1 + e) - d1 for i = 1..n.
std::vector<mpz_class> gtds_degrees(size_t n, const mpz_class& d1, const mpz_class& e);

/// x + k; an empty key is the zero key.
StateVector add_key(const StateVector& x, std::span<const FieldElement> key);
StateVector sub_key(const StateVector& x, std::span<const FieldElement> key);

/// Affine layer with zero constant applied to x + k.
StateVector initial_layer(const StateVector& x, std::span<const FieldElement> key);
/// GTDS, affine layer with c^(round), key addition.
StateVector round_function(const StateVector& x, std::span<const FieldElement> key, const ArionParameters& params, size_t round);
StateVector round_function_inverse(const StateVector& y, std::span<const FieldElement> key, const ArionParameters& params, size_t round);

/// The keyed permutation. The same key is added before the first layer and after every round.
StateVector arion_permute(const StateVector& x, std::span<const FieldElement> key, const ArionParameters& params,
                          Direction direction = Direction::forward);

/// Unkeyed permutation (zero key).
StateVector arion_pi(const StateVector& x, const ArionParameters& params);

/// Applies arion_permute to every state using up to @p threads workers (0 = hardware concurrency).
std::vector<StateVector> arion_permute_batch(std::span<const StateVector> states, std::span<const FieldElement> key,
                                             const ArionParameters& params, Direction direction = Direction::forward,
                                             unsigned threads = 0);

} // namespace arion
