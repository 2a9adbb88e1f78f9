#include <arion/chain.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <mutex>

namespace arion {

namespace {

constexpr std::array<uint64_t, 8> kAllowedD2 = {121, 123, 125, 129, 161, 193, 195, 257};

class Builder {
  public:
    static constexpr size_t x = 0;

    size_t mul(size_t a, size_t b, std::string label = {})
    {
        steps_.push_back({a, b, std::move(label)});
        return steps_.size();
    }
    size_t sq(size_t a, std::string label = {}) { return mul(a, a, std::move(label)); }
    size_t sq_n(size_t a, int times, std::string label = {})
    {
        for (int i = 0; i + 1 < times; ++i) {
            a = sq(a);
        }
        return sq(a, std::move(label));
    }

    ExponentChain finish(uint64_t exponent) { return ExponentChain(exponent, std::move(steps_)); }

  private:
    std::vector<ChainStep> steps_;
};

ExponentChain table_chain(uint64_t d2)
{
    Builder b;
    const size_t x = Builder::x;
    switch (d2) {
    case 121: {
        size_t y = b.sq_n(x, 2, "y");
        size_t z = b.sq(b.mul(b.sq(y), y), "z");
        b.mul(b.mul(b.sq_n(z, 2), z), x, "x^121");
        break;
    }
    case 123: {
        size_t y = b.mul(b.sq(x), x, "y");
        size_t z = b.sq_n(y, 3, "z");
        b.mul(b.mul(b.sq_n(z, 2), z), y, "x^123");
        break;
    }
    case 125: {
        size_t y = b.mul(b.sq_n(x, 2), x, "y");
        size_t z = b.sq_n(y, 3, "z");
        b.mul(b.mul(b.sq(z), z), y, "x^125");
        break;
    }
    case 129: {
        size_t y = b.sq_n(x, 4, "y");
        size_t z = b.sq_n(y, 3, "z");
        b.mul(z, x, "x^129");
        break;
    }
    case 161: {
        size_t y = b.mul(b.sq_n(x, 2), x, "y");
        size_t z = b.sq_n(y, 3, "z");
        b.mul(b.sq_n(z, 2), x, "x^161");
        break;
    }
    case 193: {
        size_t y = b.mul(b.sq(x), x, "y");
        size_t z = b.sq_n(y, 4, "z");
        b.mul(b.sq_n(z, 2), x, "x^193");
        break;
    }
    case 195: {
        size_t y = b.mul(b.sq(x), x, "y");
        size_t z = b.sq_n(y, 4, "z");
        b.mul(b.sq_n(z, 2), y, "x^195");
        break;
    }
    case 257: {
        size_t y = b.sq_n(x, 4, "y");
        size_t z = b.sq_n(y, 4, "z");
        b.mul(z, x, "x^257");
        break;
    }
    default:
        throw InvalidArgument("no tabulated chain for d2 = " + std::to_string(d2));
    }
    return b.finish(d2);
}

// Depth-first search for an ascending addition chain 1 = a_0 < ... < a_len = target.
bool extend(std::vector<uint64_t>& chain, std::vector<std::pair<size_t, size_t>>& ops, uint64_t target, size_t len)
{
    const size_t k = chain.size() - 1;
    const uint64_t last = chain.back();
    if (last == target) {
        return true;
    }
    if (k == len) {
        return false;
    }
    // Even doubling every remaining step cannot reach the target.
    if ((last << (len - k)) < target) {
        return false;
    }
    for (size_t i = k + 1; i-- > 0;) {
        for (size_t j = i + 1; j-- > 0;) {
            const uint64_t next = chain[i] + chain[j];
            if (next <= last) {
                break;
            }
            if (next > target) {
                continue;
            }
            chain.push_back(next);
            ops.emplace_back(i, j);
            if (extend(chain, ops, target, len)) {
                return true;
            }
            chain.pop_back();
            ops.pop_back();
        }
    }
    return false;
}

} // namespace

ExponentChain::ExponentChain(uint64_t exponent, std::vector<ChainStep> steps)
    : exponent_(exponent), steps_(std::move(steps))
{}

const ExponentChain& ExponentChain::for_d2(uint64_t d2)
{
    static const std::map<uint64_t, ExponentChain> chains = [] {
        std::map<uint64_t, ExponentChain> m;
        for (uint64_t d : kAllowedD2) {
            m.emplace(d, table_chain(d));
        }
        return m;
    }();
    auto it = chains.find(d2);
    if (it == chains.end()) {
        throw InvalidArgument("no tabulated chain for d2 = " + std::to_string(d2));
    }
    return it->second;
}

ExponentChain ExponentChain::shortest(uint64_t d)
{
    if (d == 0) {
        throw InvalidArgument("exponent must be positive");
    }
    if (d >= (uint64_t{1} << 20)) {
        throw InvalidArgument("shortest chain search is limited to small exponents");
    }
    if (d == 1) {
        return ExponentChain(1, {});
    }
    size_t lower = 0;
    while ((uint64_t{1} << lower) < d) {
        ++lower;
    }
    for (size_t len = lower;; ++len) {
        std::vector<uint64_t> chain{1};
        std::vector<std::pair<size_t, size_t>> ops;
        if (extend(chain, ops, d, len)) {
            std::vector<ChainStep> steps;
            for (auto [i, j] : ops) {
                steps.push_back({i, j, {}});
            }
            return ExponentChain(d, std::move(steps));
        }
    }
}

ExponentChain ExponentChain::binary(uint64_t d)
{
    if (d == 0) {
        throw InvalidArgument("exponent must be positive");
    }
    Builder b;
    size_t acc = Builder::x;
    int top = 63;
    while (!((d >> top) & 1)) {
        --top;
    }
    for (int bit = top - 1; bit >= 0; --bit) {
        acc = b.sq(acc);
        if ((d >> bit) & 1) {
            acc = b.mul(acc, Builder::x);
        }
    }
    return b.finish(d);
}

ExponentChain ExponentChain::best(uint64_t d)
{
    if (is_allowed_d2(d)) {
        return for_d2(d);
    }
    if (d < 1024) {
        static std::mutex mu;
        static std::map<uint64_t, ExponentChain> cache;
        std::lock_guard lock(mu);
        auto it = cache.find(d);
        if (it == cache.end()) {
            it = cache.emplace(d, shortest(d)).first;
        }
        return it->second;
    }
    return binary(d);
}

uint64_t ExponentChain::symbolic_exponent() const
{
    return evaluate<uint64_t>(1, [](uint64_t a, uint64_t b) { return a + b; });
}

std::string ExponentChain::describe() const
{
    std::string out;
    auto name = [&](size_t reg) {
        if (reg == 0) {
            return std::string("x");
        }
        const auto& label = steps_[reg - 1].label;
        return label.empty() ? "t" + std::to_string(reg) : label;
    };
    for (size_t k = 0; k < steps_.size(); ++k) {
        const auto& s = steps_[k];
        if (!out.empty()) {
            out += "; ";
        }
        out += name(k + 1) + " = ";
        out += s.is_square() ? name(s.lhs) + "^2" : name(s.lhs) + " * " + name(s.rhs);
    }
    return out;
}

std::span<const uint64_t> allowed_d2()
{
    return kAllowedD2;
}

bool is_allowed_d2(uint64_t d2)
{
    return std::find(kAllowedD2.begin(), kAllowedD2.end(), d2) != kAllowedD2.end();
}

size_t d_inc(uint64_t d)
{
    return ExponentChain::best(d).multiplications();
}

FieldElement chain_pow(const FieldElement& x, const ExponentChain& chain, size_t* multiplications)
{
    size_t count = 0;
    FieldElement r = chain.evaluate(x, [&count](const FieldElement& a, const FieldElement& b) {
        ++count;
        return a * b;
    });
    if (multiplications) {
        *multiplications = count;
    }
    return r;
}

} // namespace arion
