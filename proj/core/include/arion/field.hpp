#pragma once

/**
 * @file field.hpp
 * @brief Arbitrary precision prime field arithmetic.
 *
 * Elements are always kept fully reduced in [0, p). Arithmetic is backed by
 * GMP; nothing here is constant time.
 */

#include <arion/error.hpp>

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace arion {

class FieldElement;

/**
 * @brief An odd prime modulus p > 4 together with derived sizes.
 *
 * Instances are immutable and shared between elements through
 * std::shared_ptr, so a field can be used from many threads at once.
 */
class PrimeField : public std::enable_shared_from_this<PrimeField> {
    struct Private {};

  public:
    PrimeField(Private, mpz_class p, std::string name);

    /// Checks p > 4 and primality (error probability <= 2^-128).
    static std::shared_ptr<const PrimeField> create(const mpz_class& p);
    static std::shared_ptr<const PrimeField> from_u64(uint64_t p);
    /// Parses "bls12", "bn254", a decimal number or a 0x-prefixed hex number.
    static std::shared_ptr<const PrimeField> from_string(std::string_view spec);

    static std::shared_ptr<const PrimeField> bls12();
    static std::shared_ptr<const PrimeField> bn254();

    const mpz_class& modulus() const { return p_; }
    /// "bls12", "bn254" for the built-in moduli, otherwise "p" + decimal value.
    const std::string& name() const { return name_; }
    size_t bit_length() const { return bits_; }
    /// ceil(bitlen(p) / 8): width of the big-endian encoding.
    size_t byte_width() const { return (bits_ + 7) / 8; }
    long double log2_modulus() const;

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement element(const mpz_class& v) const;
    FieldElement element(int64_t v) const;
    /// Lowercase or uppercase hex, optional 0x prefix; must encode a value < p.
    FieldElement from_hex(std::string_view hex) const;
    /// Big-endian bytes; must encode a value < p.
    FieldElement from_bytes(std::span<const uint8_t> bytes) const;

    bool operator==(const PrimeField& other) const { return p_ == other.p_; }

  private:
    static std::shared_ptr<const PrimeField> make(mpz_class p, std::string name, bool trusted);

    mpz_class p_;
    std::string name_;
    size_t bits_;
};

using FieldPtr = std::shared_ptr<const PrimeField>;

class FieldElement {
  public:
    FieldElement() = default;
    /// @p v must already be canonical.
    FieldElement(FieldPtr field, mpz_class v) : field_(std::move(field)), v_(std::move(v)) {}

    const mpz_class& value() const { return v_; }
    const FieldPtr& field() const { return field_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    FieldElement operator+(const FieldElement& b) const;
    FieldElement operator-(const FieldElement& b) const;
    FieldElement operator*(const FieldElement& b) const;
    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& b);
    FieldElement& operator-=(const FieldElement& b);
    FieldElement& operator*=(const FieldElement& b);

    FieldElement square() const { return *this * *this; }
    FieldElement pow(const mpz_class& k) const;
    FieldElement pow(uint64_t k) const;
    /// Multiplicative inverse; throws NotInvertible for zero.
    FieldElement inverse() const;

    /// True iff this is a quadratic non-residue. Throws InvalidArgument on zero.
    bool is_qnr() const;

    /// Fixed-width lowercase hex, zero padded to the modulus width.
    std::string to_hex() const;
    std::vector<uint8_t> to_bytes() const;

    bool operator==(const FieldElement& b) const;
    bool operator!=(const FieldElement& b) const { return !(*this == b); }

  private:
    void check_same(const FieldElement& b) const;

    FieldPtr field_;
    mpz_class v_;
};

/// b with a*b = 1 (mod m), 0 <= b < m. Throws NotInvertible if gcd(a, m) != 1.
mpz_class inv_mod(const mpz_class& a, const mpz_class& m);

/// Legendre-symbol test: a^((p-1)/2) == p-1.
bool legendre_is_qnr(const FieldElement& a);

mpz_class gcd(const mpz_class& a, const mpz_class& b);

/// log2 of a positive big integer, from its top 64 bits (64-bit mantissa).
long double log2_big(const mpz_class& v);

std::string to_hex(const mpz_class& v);
mpz_class parse_hex(std::string_view hex);

/// Comma separated hex list, as used on the command line.
std::vector<FieldElement> parse_hex_list(const PrimeField& field, std::string_view csv);
std::string join_hex(std::span<const FieldElement> elems, std::string_view sep = ",");

} // namespace arion
