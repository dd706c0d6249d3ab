#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace memloop {

// Self-contained SHA-256, used for cache keys, config hashes and cue digests.
class Sha256 {
public:
    Sha256();
    void update(const void* data, size_t len);
    void update(std::string_view s) { update(s.data(), s.size()); }
    std::array<uint8_t, 32> finish();

private:
    void process_block(const uint8_t* block);

    std::array<uint32_t, 8> state_;
    std::array<uint8_t, 64> buffer_;
    uint64_t bit_count_ = 0;
    size_t buffer_len_ = 0;
};

std::string sha256_hex(std::string_view data);

// First 16 hex chars; enough for trace digests and short ids.
std::string short_digest(std::string_view data);

} // namespace memloop
