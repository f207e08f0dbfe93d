#pragma once

#include <cstdint>
#include <string>

namespace hkcob {

inline constexpr const char* kEngineVersion = "0.1.0";

/// Text listing every convention that can change a computed value.
std::string conventions_text(const std::string& correction_name = "sum_squares");

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(const std::string& data);
/// 16 lowercase hex digits of fnv1a64(conventions_text(correction_name)).
std::string conventions_hash(const std::string& correction_name = "sum_squares");

}  // namespace hkcob
