#include "xof.hpp"

#include <arion/error.hpp>

#include <openssl/evp.h>

#include <memory>
#include <string>

namespace arion::detail {

std::vector<uint8_t> shake256(std::span<const uint8_t> data, size_t out_len)
{
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    std::vector<uint8_t> out(out_len);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_shake256(), nullptr) != 1
        || EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1
        || EVP_DigestFinalXOF(ctx.get(), out.data(), out.size()) != 1) {
        throw InternalInvariant("SHAKE256 evaluation failed");
    }
    return out;
}

std::vector<uint8_t> shake256(std::string_view data, size_t out_len)
{
    return shake256(std::span(reinterpret_cast<const uint8_t*>(data.data()), data.size()), out_len);
}

std::string hex_bytes(std::span<const uint8_t> bytes)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * bytes.size());
    for (uint8_t b : bytes) {
        out += digits[b >> 4];
        out += digits[b & 15];
    }
    return out;
}

} // namespace arion::detail
