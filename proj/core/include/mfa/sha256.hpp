#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace mfa {

// Incremental SHA-256 (FIPS 180-4). Used for input provenance digests in
// run manifests; self-contained so reports stay dependency-free.
class Sha256 {
  public:
    Sha256() { reset(); }

    void reset();
    void update(const void* data, std::size_t len);
    void update(std::string_view s) { update(s.data(), s.size()); }

    // Finalizes and returns the digest as 64 lowercase hex characters.
    std::string hex_digest();

  private:
    void process_block(const std::uint8_t* block);

    std::uint32_t state_[8];
    std::uint8_t buffer_[64];
    std::size_t buffer_len_ = 0;
    std::uint64_t total_len_ = 0;
};

std::string sha256_hex(std::string_view data);
std::string sha256_file_hex(const std::filesystem::path& path);

}  // namespace mfa
