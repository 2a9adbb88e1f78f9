#pragma once

/**
 * @file r1cs.hpp
 * @brief Rank-1 constraint systems for ArionHash.
 *
 * The circuit never raises to the huge exponent e. For the last branch it
 * introduces y = x^e as a witness variable and checks y^d2 = x with the d2
 * addition chain. The other branches cost d1_inc + 2 constraints each: the
 * chain for x^d1, one squaring s = sigma^2 shared by g and h, and one product
 * x^d1 * g. Affine layers and partial sums are linear and therefore free.
 */

#include <arion/params.hpp>
#include <arion/sponge.hpp>

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <vector>

namespace arion {

struct Term {
    size_t var;
    FieldElement coeff;
};

/// Sparse combination sum coeff * w[var], sorted by var with no zero coefficients.
class LinearCombination {
  public:
    LinearCombination() = default;

    static LinearCombination variable(size_t var, const FieldElement& coeff);
    /// Multiple of the constant-one variable.
    static LinearCombination constant(const FieldElement& value);

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    /// Coefficient of @p var, or nullopt when absent.
    std::optional<FieldElement> coefficient(size_t var) const;

    LinearCombination operator+(const LinearCombination& b) const;
    LinearCombination operator-(const LinearCombination& b) const;
    LinearCombination operator*(const FieldElement& k) const;
    LinearCombination& operator+=(const LinearCombination& b);

    FieldElement evaluate(const std::vector<FieldElement>& w, const FieldPtr& field) const;

  private:
    std::vector<Term> terms_;
};

struct Constraint {
    LinearCombination a;
    LinearCombination b;
    LinearCombination c;
};

/// How the honest prover fills one variable.
struct WitnessHint {
    enum class Kind {
        /// Message element number @c index.
        Input,
        /// lc^e.
        PowE,
        /// The variable's own constraint solved for it: (A*B - rest of C) / coefficient.
        Solve,
    };
    Kind kind;
    size_t var;
    size_t index = 0;
    LinearCombination lc;
};

class ConstraintSystem {
  public:
    static constexpr size_t one_var = 0;

    explicit ConstraintSystem(FieldPtr field);

    const FieldPtr& field() const { return field_; }
    size_t num_vars() const { return num_vars_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }
    const std::vector<size_t>& public_inputs() const { return public_; }
    const std::vector<WitnessHint>& schedule() const { return schedule_; }
    /// Number of message elements the circuit hashes.
    size_t message_len() const { return message_len_; }
    size_t digest_var() const { return digest_var_; }

    size_t new_var();
    void mark_public(size_t var) { public_.push_back(var); }
    size_t add(Constraint c);
    void hint(WitnessHint h) { schedule_.push_back(std::move(h)); }
    void set_message_len(size_t len) { message_len_ = len; }
    void set_digest_var(size_t var) { digest_var_ = var; }

    bool is_satisfied(const std::vector<FieldElement>& w, unsigned threads = 1) const;
    /// Indices of violated constraints.
    std::vector<size_t> violations(const std::vector<FieldElement>& w, unsigned threads = 1) const;

  private:
    FieldPtr field_;
    size_t num_vars_ = 1;
    size_t message_len_ = 0;
    size_t digest_var_ = 0;
    std::vector<Constraint> constraints_;
    std::vector<size_t> public_;
    std::vector<WitnessHint> schedule_;
};

/**
 * @brief Circuit proving digest = ArionHash(m) for messages of @p message_len elements.
 *
 * Variable 0 is the constant one, variable 1 is the public digest, then the
 * message. Needs output_len == 1. The default length is one full block.
 */
ConstraintSystem build_r1cs(const ArionParameters& params, const SpongeParameters& sponge, std::optional<size_t> message_len = {});

/// Honest assignment for @p message; the digest variable equals arion_hash(message).
std::vector<FieldElement> generate_witness(const ConstraintSystem& cs, std::span<const FieldElement> message,
                                           const ArionParameters& params);

nlohmann::json to_json(const ConstraintSystem& cs);
ConstraintSystem constraint_system_from_json(const nlohmann::json& j);
nlohmann::json witness_to_json(const FieldPtr& field, const std::vector<FieldElement>& w);
std::vector<FieldElement> witness_from_json(const nlohmann::json& j, const FieldPtr& field);

} // namespace arion
