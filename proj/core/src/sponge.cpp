#include <arion/sponge.hpp>

#include <algorithm>
#include <cmath>
#include <thread>

namespace arion {

namespace {

constexpr const char* kNodeLabel = "merkle-node";

void check_sponge(const ArionParameters& params, const SpongeParameters& sponge)
{
    if (sponge.rate < 1 || sponge.capacity < 1 || sponge.rate + sponge.capacity != params.n) {
        throw InvalidArgument("sponge needs rate >= 1, capacity >= 1 and rate + capacity = n");
    }
    if (sponge.iv.size() != sponge.capacity || sponge.iv_prime.size() + 1 != sponge.capacity) {
        throw InvalidArgument("sponge IV has the wrong length");
    }
    if (sponge.output_len < 1) {
        throw InvalidArgument("output length must be at least 1");
    }
}

bool is_power_of(size_t count, size_t base)
{
    if (count == 0) {
        return false;
    }
    if (base == 1) {
        return count == 1;
    }
    while (count % base == 0) {
        count /= base;
    }
    return count == 1;
}

} // namespace

SpongeParameters make_sponge(const ArionParameters& params, size_t capacity, size_t output_len)
{
    if (capacity < 1 || capacity >= params.n) {
        throw InvalidArgument("capacity must lie in [1, n - 1]");
    }
    SpongeParameters s;
    s.rate = params.n - capacity;
    s.capacity = capacity;
    s.output_len = output_len;
    s.iv.assign(capacity, params.field->zero());
    s.iv_prime.assign(capacity - 1, params.field->zero());
    return s;
}

std::vector<std::string> validate_sponge(const ArionParameters& params, const SpongeParameters& sponge, unsigned kappa)
{
    std::vector<std::string> out;
    if (sponge.rate < 1) {
        out.push_back("rate must be at least 1");
    }
    if (sponge.capacity < 1) {
        out.push_back("capacity must be at least 1");
    }
    if (sponge.rate + sponge.capacity != params.n) {
        out.push_back("rate + capacity must equal n");
    }
    if (sponge.iv.size() != sponge.capacity || sponge.iv_prime.size() + 1 != sponge.capacity) {
        out.push_back("IV lengths must be c and c - 1");
    }
    if (sponge.output_len < 1) {
        out.push_back("output length must be at least 1");
    }
    const double bits = 8.0 * static_cast<double>(params.field->byte_width());
    if (static_cast<double>(sponge.rate) * bits < kappa) {
        out.push_back("rate below kappa / log2(p)");
    }
    if (static_cast<double>(sponge.capacity) * bits < 2.0 * kappa) {
        out.push_back("capacity below 2 kappa / log2(p)");
    }
    return out;
}

Padded pad(std::span<const FieldElement> m, size_t rate, const FieldPtr& field)
{
    if (rate < 1) {
        throw InvalidArgument("rate must be at least 1");
    }
    Padded out;
    out.message.assign(m.begin(), m.end());
    const size_t rem = m.size() % rate;
    if (m.empty() || rem != 0) {
        out.message.resize(m.size() + rate - rem, field->zero());
        out.length = field->element(mpz_class(static_cast<unsigned long>(m.size())));
    }
    return out;
}

std::vector<FieldElement> arion_hash(std::span<const FieldElement> m, const ArionParameters& params, const SpongeParameters& sponge)
{
    check_sponge(params, sponge);
    const auto& field = params.field;
    if (mpz_class(static_cast<unsigned long>(m.size())) >= field->modulus()) {
        throw InvalidArgument("message has p or more elements");
    }
    const Padded padded = pad(m, sponge.rate, field);

    StateVector state(params.n);
    for (size_t i = 0; i < sponge.rate; ++i) {
        state[i] = field->zero();
    }
    if (padded.length) {
        state[sponge.rate] = *padded.length;
        for (size_t i = 1; i < sponge.capacity; ++i) {
            state[sponge.rate + i] = sponge.iv_prime[i - 1];
        }
    } else {
        for (size_t i = 0; i < sponge.capacity; ++i) {
            state[sponge.rate + i] = sponge.iv[i];
        }
    }

    for (size_t off = 0; off < padded.message.size(); off += sponge.rate) {
        for (size_t i = 0; i < sponge.rate; ++i) {
            state[i] += padded.message[off + i];
        }
        state = arion_pi(state, params);
    }

    std::vector<FieldElement> out;
    while (true) {
        for (size_t i = 0; i < sponge.rate && out.size() < sponge.output_len; ++i) {
            out.push_back(state[i]);
        }
        if (out.size() == sponge.output_len) {
            return out;
        }
        state = arion_pi(state, params);
    }
}

FieldElement arion_hash1(std::span<const FieldElement> m, const ArionParameters& params, const SpongeParameters& sponge)
{
    SpongeParameters one = sponge;
    one.output_len = 1;
    return arion_hash(m, params, one).front();
}

std::vector<FieldElement> bytes_to_elements(std::span<const uint8_t> bytes, const PrimeField& field)
{
    const size_t chunk = mpz_sizeinbase(mpz_class(field.modulus() - 1).get_mpz_t(), 2) / 8;
    if (chunk == 0) {
        throw InvalidArgument("modulus too small for byte hashing");
    }
    std::vector<FieldElement> out;
    for (size_t off = 0; off < bytes.size(); off += chunk) {
        std::vector<uint8_t> block(chunk, 0);
        const size_t len = std::min(chunk, bytes.size() - off);
        std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(off), len, block.begin());
        out.push_back(field.from_bytes(block));
    }
    out.push_back(field.element(mpz_class(static_cast<unsigned long>(bytes.size()))));
    return out;
}

SpongeParameters merkle_node_sponge(const ArionParameters& params, const SpongeParameters& sponge)
{
    SpongeParameters node = sponge;
    node.output_len = 1;
    node.iv = expand_elements(params.field, kNodeLabel, params.n, sponge.capacity, params.seed);
    node.iv_prime.assign(node.iv.begin() + 1, node.iv.end());
    return node;
}

MerkleTree::MerkleTree(std::vector<FieldElement> leaves, const ArionParameters& params, const SpongeParameters& sponge, unsigned threads)
    : leaves_(std::move(leaves)), arity_(sponge.rate)
{
    check_sponge(params, sponge);
    if (!is_power_of(leaves_.size(), arity_)) {
        throw InvalidArgument("leaf count " + std::to_string(leaves_.size()) + " is not a power of the arity "
                              + std::to_string(arity_));
    }
    const SpongeParameters node = merkle_node_sponge(params, sponge);
    threads = std::max(1u, threads);

    auto parallel = [threads](size_t count, auto&& body) {
        if (threads == 1 || count < 2) {
            for (size_t i = 0; i < count; ++i) {
                body(i);
            }
            return;
        }
        const unsigned workers = static_cast<unsigned>(std::min<size_t>(threads, count));
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (size_t i = t; i < count; i += workers) {
                        body(i);
                    }
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) {
            th.join();
        }
        for (auto& e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    };

    std::vector<FieldElement> level(leaves_.size());
    parallel(leaves_.size(), [&](size_t i) { level[i] = arion_hash1(std::span(&leaves_[i], 1), params, sponge); });
    levels_.push_back(std::move(level));
    while (levels_.back().size() > 1) {
        const auto& below = levels_.back();
        std::vector<FieldElement> above(below.size() / arity_);
        parallel(above.size(), [&](size_t i) {
            above[i] = arion_hash1(std::span(below).subspan(i * arity_, arity_), params, node);
        });
        levels_.push_back(std::move(above));
    }
}

MerklePath MerkleTree::prove(size_t index) const
{
    if (index >= leaves_.size()) {
        throw InvalidArgument("leaf index out of range");
    }
    MerklePath path;
    path.index = index;
    size_t pos = index;
    for (size_t l = 0; l + 1 < levels_.size(); ++l) {
        const size_t first = pos - pos % arity_;
        std::vector<FieldElement> sib;
        for (size_t k = first; k < first + arity_; ++k) {
            if (k != pos) {
                sib.push_back(levels_[l][k]);
            }
        }
        path.siblings.push_back(std::move(sib));
        pos /= arity_;
    }
    return path;
}

FieldElement merkle_root(std::span<const FieldElement> leaves, const ArionParameters& params, const SpongeParameters& sponge,
                         unsigned threads)
{
    return MerkleTree(std::vector<FieldElement>(leaves.begin(), leaves.end()), params, sponge, threads).root();
}

bool merkle_verify(const FieldElement& leaf, const MerklePath& path, const FieldElement& root, const ArionParameters& params,
                   const SpongeParameters& sponge)
{
    check_sponge(params, sponge);
    const size_t arity = sponge.rate;
    size_t span = 1;
    for (size_t l = 0; l < path.siblings.size(); ++l) {
        span *= arity;
    }
    if (path.index >= span) {
        return false;
    }
    const SpongeParameters node = merkle_node_sponge(params, sponge);
    FieldElement cur = arion_hash1(std::span(&leaf, 1), params, sponge);
    size_t pos = path.index;
    for (const auto& sib : path.siblings) {
        if (sib.size() + 1 != arity) {
            return false;
        }
        const size_t slot = pos % arity;
        std::vector<FieldElement> block;
        block.reserve(arity);
        for (size_t k = 0, s = 0; k < arity; ++k) {
            block.push_back(k == slot ? cur : sib[s++]);
        }
        cur = arion_hash1(block, params, node);
        pos /= arity;
    }
    return cur == root;
}

} // namespace arion
