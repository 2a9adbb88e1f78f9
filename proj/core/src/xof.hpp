#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace arion::detail {

/// SHAKE256(data) truncated to @p out_len bytes.
std::vector<uint8_t> shake256(std::span<const uint8_t> data, size_t out_len);
std::vector<uint8_t> shake256(std::string_view data, size_t out_len);

std::string hex_bytes(std::span<const uint8_t> bytes);

} // namespace arion::detail
