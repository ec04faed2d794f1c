#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pdeid {

/// Incremental SHA-256.
class Sha256 {
public:
    Sha256();
    void update(const void* data, size_t len);
    /// Hex digest; the object must not be updated afterwards.
    std::string hex_digest();

private:
    void process_block(const uint8_t* block);
    uint32_t state_[8];
    uint64_t total_ = 0;
    uint8_t buffer_[64];
    size_t buffered_ = 0;
};

std::string sha256_hex(const void* data, size_t len);
std::string sha256_hex(const std::string& s);
std::string sha256_file_hex(const std::string& path);

} // namespace pdeid
