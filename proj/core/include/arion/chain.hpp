#pragma once

/**
 * @file chain.hpp
 * @brief Addition chains for the power maps x^d1 and x^d2.
 *
 * A chain is a straight-line program over registers. Register 0 holds the
 * input x, step k writes register k + 1 as the product of two earlier
 * registers, and the last register is the result. Every step costs one
 * multiplication (squarings included), which is exactly the d_inc count used
 * by the constraint-count formulas.
 */

#include <arion/field.hpp>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace arion {

struct ChainStep {
    size_t lhs;
    size_t rhs;
    /// Name of the intermediate this step completes ("y", "z", ...), may be empty.
    std::string label;

    bool is_square() const { return lhs == rhs; }
};

class ExponentChain {
  public:
    ExponentChain() = default;
    ExponentChain(uint64_t exponent, std::vector<ChainStep> steps);

    /// The hand-optimised chain for one of the eight allowed d2 values.
    static const ExponentChain& for_d2(uint64_t d2);
    /// A chain of minimal length, found by iterative deepening. Practical for d < 2^10.
    static ExponentChain shortest(uint64_t d);
    /// Plain left-to-right square-and-multiply.
    static ExponentChain binary(uint64_t d);
    /// Table chain when @p d is an allowed d2, otherwise a shortest chain.
    static ExponentChain best(uint64_t d);

    uint64_t exponent() const { return exponent_; }
    size_t multiplications() const { return steps_.size(); }
    std::span<const ChainStep> steps() const { return steps_; }

    /// Runs the program on exponents instead of field elements; equals exponent() for a correct chain.
    uint64_t symbolic_exponent() const;

    /// Evaluates the chain with a caller supplied product.
    template <typename T, typename Mul>
    T evaluate(const T& x, Mul&& mul) const
    {
        std::vector<T> regs;
        regs.reserve(steps_.size() + 1);
        regs.push_back(x);
        for (const auto& s : steps_) {
            T next = mul(regs[s.lhs], regs[s.rhs]);
            regs.push_back(std::move(next));
        }
        return regs.back();
    }

    /// "y = x^2 * x; ..." style rendering.
    std::string describe() const;

  private:
    uint64_t exponent_ = 1;
    std::vector<ChainStep> steps_;
};

/// The exponents d2 with a tabulated chain: {121, 123, 125, 129, 161, 193, 195, 257}.
std::span<const uint64_t> allowed_d2();
bool is_allowed_d2(uint64_t d2);

/// Minimal multiplication count for x^d, as used by the counting formulas.
size_t d_inc(uint64_t d);

/// x^d via the chain. When @p multiplications is given it receives the number of products taken.
FieldElement chain_pow(const FieldElement& x, const ExponentChain& chain, size_t* multiplications = nullptr);

} // namespace arion
