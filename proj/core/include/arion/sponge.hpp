#pragma once

/**
 * @file sponge.hpp
 * @brief ArionHash: the unkeyed permutation in sponge mode, plus a Merkle tree.
 *
 * The state is (rate part, capacity part) in that order. Blocks are added
 * into the rate part and digests are read from the front of the rate part.
 */

#include <arion/params.hpp>
#include <arion/permutation.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace arion {

struct SpongeParameters {
    size_t rate = 0;
    size_t capacity = 0;
    size_t output_len = 1;
    /// Capacity initial value for messages that need no padding.
    std::vector<FieldElement> iv;
    /// Tail of the capacity for padded messages, after the length |m|. Length capacity - 1.
    std::vector<FieldElement> iv_prime;
};

/// IV = 0^c and IV' = 0^(c-1).
SpongeParameters make_sponge(const ArionParameters& params, size_t capacity = 1, size_t output_len = 1);

/// Violations of rate + capacity = n, rate/capacity >= 1, IV shapes, and of the
/// security inequalities rate >= kappa / log2 p, capacity >= 2 kappa / log2 p.
/// log2 p is taken as the nominal size 8 * ceil(bitlen(p) / 8).
std::vector<std::string> validate_sponge(const ArionParameters& params, const SpongeParameters& sponge, unsigned kappa = 128);

struct Padded {
    std::vector<FieldElement> message;
    /// Set when zeros were appended: the message length as a field element.
    std::optional<FieldElement> length;
};

/// Appends the fewest zeros (< rate) reaching a multiple of rate. The empty message becomes one zero block.
Padded pad(std::span<const FieldElement> m, size_t rate, const FieldPtr& field);

/// Digest of @p m (output_len elements). Rejects messages with p or more elements.
std::vector<FieldElement> arion_hash(std::span<const FieldElement> m, const ArionParameters& params, const SpongeParameters& sponge);
/// Single-element digest (output_len is ignored).
FieldElement arion_hash1(std::span<const FieldElement> m, const ArionParameters& params, const SpongeParameters& sponge);

/// Bytes as field elements: floor(bitlen(p-1)/8)-byte big-endian chunks, the last one
/// right-padded with zeros, followed by the byte count. Format "bytes-v1".
std::vector<FieldElement> bytes_to_elements(std::span<const uint8_t> bytes, const PrimeField& field);

struct MerklePath {
    size_t index = 0;
    /// siblings[level] holds the arity - 1 other children, in order, bottom level first.
    std::vector<std::vector<FieldElement>> siblings;
};

/// Arity is the sponge rate. Leaf digest = arion_hash([leaf]); a node absorbs its
/// children as one block under the IV expanded from the label "merkle-node".
class MerkleTree {
  public:
    MerkleTree(std::vector<FieldElement> leaves, const ArionParameters& params, const SpongeParameters& sponge, unsigned threads = 1);

    const FieldElement& root() const { return levels_.back().front(); }
    size_t arity() const { return arity_; }
    size_t height() const { return levels_.size() - 1; }
    std::span<const FieldElement> leaves() const { return leaves_; }
    MerklePath prove(size_t index) const;

  private:
    std::vector<FieldElement> leaves_;
    std::vector<std::vector<FieldElement>> levels_;
    size_t arity_;
};

/// The sponge used for internal nodes.
SpongeParameters merkle_node_sponge(const ArionParameters& params, const SpongeParameters& sponge);

FieldElement merkle_root(std::span<const FieldElement> leaves, const ArionParameters& params, const SpongeParameters& sponge,
                         unsigned threads = 1);
bool merkle_verify(const FieldElement& leaf, const MerklePath& path, const FieldElement& root, const ArionParameters& params,
                   const SpongeParameters& sponge);

} // namespace arion
