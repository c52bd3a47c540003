#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lam/lambda.hpp"

namespace lam::rangesieve {

enum class TableKind : uint8_t { lambda64 = 0, L8 = 1, H8 = 2 };

// H8 tables carry this at non-prime indices (and at index 1).
inline constexpr uint8_t kH8Sentinel = 255;

// Dense per-n table over [1, N]. Payload vectors are sized N+1 with index 0
// unused and zeroed; on disk only indices 1..N are stored.
struct RangeTable {
    TableKind kind = TableKind::L8;
    LambdaVariant variant = LambdaVariant::standard;
    uint64_t limit = 0;
    std::vector<uint64_t> payload64; // lambda64 only
    std::vector<uint8_t> payload8;   // L8 / H8 only

    bool operator==(const RangeTable&) const = default;
};

struct SieveOptions {
    uint32_t workers = 0; // 0: use hardware concurrency
    uint64_t mem_budget = uint64_t{2} << 30;
    uint64_t segment_size = uint64_t{1} << 22;
};

// table[n] = carmichael_lambda(n, v) for all n in [1, N].
RangeTable sieve_lambda(uint64_t N, LambdaVariant v = LambdaVariant::standard,
                        const SieveOptions& opts = {});

// table[n] = big_L(n, v) for all n in [1, N].
RangeTable sieve_L(uint64_t N, LambdaVariant v = LambdaVariant::standard,
                   const SieveOptions& opts = {});

// table[p] = height(p) for primes p <= N; sentinel elsewhere.
RangeTable sieve_heights(uint64_t N, const SieveOptions& opts = {});

// Binary format, little-endian: magic "CLT1", version byte = 1, kind byte,
// variant byte, reserved byte = 0, N as u64, payload for indices 1..N,
// trailing CRC32 (IEEE) of the payload bytes.
void write_table(const RangeTable& t, const std::string& path);
RangeTable read_table(const std::string& path);

// CRC32 (IEEE 802.3, reflected, polynomial 0xEDB88320). crc32("123456789")
// is 0xCBF43926.
uint32_t crc32(const void* data, size_t len, uint32_t seed = 0);

// CRC32 of the table's on-disk payload bytes (indices 1..N).
uint32_t payload_crc(const RangeTable& t);

} // namespace lam::rangesieve
