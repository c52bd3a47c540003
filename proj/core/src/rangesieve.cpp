#include "lam/rangesieve.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <condition_variable>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "lam/errors.hpp"
#include "lam/pratt.hpp"

namespace lam::rangesieve {

namespace {

const uint32_t* crc_table() {
    static const auto table = [] {
        std::array<uint32_t, 256> t{};
        for (uint32_t i = 0; i < 256; ++i) {
            uint32_t c = i;
            for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    return table.data();
}

} // namespace

uint32_t crc32(const void* data, size_t len, uint32_t seed) {
    const uint32_t* tab = crc_table();
    uint32_t c = seed ^ 0xFFFFFFFFu;
    const auto* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) c = tab[(c ^ p[i]) & 0xFFu] ^ (c >> 8);
    return c ^ 0xFFFFFFFFu;
}

namespace {

uint64_t isqrt(uint64_t n) {
    auto r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && static_cast<__uint128_t>(r) * r > n) --r;
    while (static_cast<__uint128_t>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

uint32_t resolve_workers(uint32_t requested) {
    if (requested > 0) return requested;
    uint32_t hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Runs produce(idx, lo, hi) for segments of [first, last] across worker
// threads and feeds the results to consume(idx, lo, hi, result) on the calling
// thread in ascending segment order. Parked results are bounded so memory
// stays proportional to the worker count. Results are identical for any
// worker count because produce is pure and consume runs sequentially.
template <typename T, typename Produce, typename Consume>
void run_segments(uint64_t first, uint64_t last, uint64_t seg_size, uint32_t workers,
                  Produce produce, Consume consume) {
    const uint64_t total = last - first + 1;
    const uint64_t nseg = (total + seg_size - 1) / seg_size;
    auto seg_lo = [&](uint64_t idx) { return first + idx * seg_size; };
    auto seg_hi = [&](uint64_t idx) { return std::min(last + 1, first + (idx + 1) * seg_size); };

    if (workers <= 1 || nseg <= 1) {
        for (uint64_t idx = 0; idx < nseg; ++idx)
            consume(idx, seg_lo(idx), seg_hi(idx), produce(idx, seg_lo(idx), seg_hi(idx)));
        return;
    }

    std::mutex mu;
    std::condition_variable cv_produced, cv_space;
    std::map<uint64_t, T> parked;
    std::atomic<uint64_t> next{0};
    uint64_t consumed = 0;
    const uint64_t max_ahead = workers + 2;
    std::exception_ptr error;
    bool abort = false;

    auto work = [&] {
        for (;;) {
            uint64_t idx = next.fetch_add(1);
            if (idx >= nseg) return;
            {
                std::unique_lock<std::mutex> lock(mu);
                cv_space.wait(lock, [&] { return abort || idx < consumed + max_ahead; });
                if (abort) return;
            }
            try {
                T result = produce(idx, seg_lo(idx), seg_hi(idx));
                {
                    std::lock_guard<std::mutex> lock(mu);
                    parked.emplace(idx, std::move(result));
                }
                cv_produced.notify_all();
            } catch (...) {
                {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!error) error = std::current_exception();
                    abort = true;
                }
                cv_produced.notify_all();
                cv_space.notify_all();
                return;
            }
        }
    };

    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (uint32_t w = 0; w < workers; ++w) threads.emplace_back(work);

    for (uint64_t idx = 0; idx < nseg; ++idx) {
        T result;
        {
            std::unique_lock<std::mutex> lock(mu);
            cv_produced.wait(lock, [&] { return abort || parked.count(idx) > 0; });
            if (abort) break;
            auto it = parked.find(idx);
            result = std::move(it->second);
            parked.erase(it);
        }
        consume(idx, seg_lo(idx), seg_hi(idx), std::move(result));
        {
            std::lock_guard<std::mutex> lock(mu);
            consumed = idx + 1;
        }
        cv_space.notify_all();
    }

    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

uint64_t lambda_of_two_power(uint32_t e, LambdaVariant v) {
    if (v == LambdaVariant::two_adic) return uint64_t{1} << (e - 1);
    if (e == 1) return 1;
    if (e == 2) return 2;
    return uint64_t{1} << (e - 2);
}

// Fills lam[0..hi-lo) with carmichael lambda of lo..hi-1. primes must cover
// every prime <= sqrt(hi-1). scratch must have room for hi-lo values.
void lambda_segment(uint64_t lo, uint64_t hi, const std::vector<uint64_t>& primes,
                    LambdaVariant v, uint64_t* lam, uint64_t* scratch) {
    const uint64_t len = hi - lo;
    for (uint64_t i = 0; i < len; ++i) {
        lam[i] = 1;
        scratch[i] = lo + i;
    }
    // p = 2: exponent via trailing zeros; lam is still 1 here so no lcm needed
    uint64_t first_even = lo + (lo & 1);
    if (first_even < 2) first_even = 2;
    for (uint64_t m = first_even; m < hi; m += 2) {
        uint64_t i = m - lo;
        auto e = static_cast<uint32_t>(std::countr_zero(scratch[i]));
        scratch[i] >>= e;
        lam[i] = lambda_of_two_power(e, v);
    }
    for (uint64_t p : primes) {
        if (p == 2) continue;
        uint64_t start = ((lo + p - 1) / p) * p;
        if (start < p) start = p;
        for (uint64_t m = start; m < hi; m += p) {
            uint64_t i = m - lo;
            uint64_t r = scratch[i];
            uint64_t contrib = p - 1;
            r /= p;
            while (r % p == 0) {
                r /= p;
                contrib *= p;
            }
            scratch[i] = r;
            lam[i] = std::lcm(lam[i], contrib);
        }
    }
    // leftover cofactor is a prime > sqrt(hi-1), exponent 1
    for (uint64_t i = 0; i < len; ++i) {
        if (scratch[i] > 1) lam[i] = std::lcm(lam[i], scratch[i] - 1);
    }
}

std::vector<uint64_t> sieve_primes_for(uint64_t N) {
    return arith::primes_upto(isqrt(N));
}

void check_budget(uint64_t needed, uint64_t budget) {
    if (needed > budget)
        throw resource_error("sieve needs about " + std::to_string(needed >> 20) +
                             " MiB, over the " + std::to_string(budget >> 20) +
                             " MiB budget");
}

void validate_args(uint64_t N, const SieveOptions& opts) {
    if (N < 2) throw std::invalid_argument("sieve limit must be >= 2");
    if (opts.segment_size < 16) throw std::invalid_argument("segment_size too small");
}

} // namespace

RangeTable sieve_lambda(uint64_t N, LambdaVariant v, const SieveOptions& opts) {
    validate_args(N, opts);
    const uint32_t workers = resolve_workers(opts.workers);
    const uint64_t seg = std::min(opts.segment_size, N);
    check_budget(8 * (N + 1) + uint64_t{workers} * seg * 8 + (isqrt(N) + 1), opts.mem_budget);

    RangeTable t;
    t.kind = TableKind::lambda64;
    t.variant = v;
    t.limit = N;
    t.payload64.assign(N + 1, 0);
    t.payload64[1] = 1;

    const auto primes = sieve_primes_for(N);
    // workers write disjoint slices of the table; order does not matter
    run_segments<char>(
        1, N, seg, workers,
        [&](uint64_t, uint64_t lo, uint64_t hi) -> char {
            std::vector<uint64_t> scratch(hi - lo);
            lambda_segment(lo, hi, primes, v, &t.payload64[lo], scratch.data());
            return 0;
        },
        [](uint64_t, uint64_t, uint64_t, char) {});
    return t;
}

RangeTable sieve_L(uint64_t N, LambdaVariant v, const SieveOptions& opts) {
    validate_args(N, opts);
    const uint32_t workers = resolve_workers(opts.workers);
    const uint64_t seg = std::min(opts.segment_size, N);
    check_budget((N + 1) + (uint64_t{workers} * 3 + 2) * seg * 8, opts.mem_budget);

    RangeTable t;
    t.kind = TableKind::L8;
    t.variant = v;
    t.limit = N;
    t.payload8.assign(N + 1, 0);

    const auto primes = sieve_primes_for(N);
    uint8_t* L = t.payload8.data();
    run_segments<std::vector<uint64_t>>(
        1, N, seg, workers,
        [&](uint64_t, uint64_t lo, uint64_t hi) {
            std::vector<uint64_t> lam(hi - lo);
            std::vector<uint64_t> scratch(hi - lo);
            lambda_segment(lo, hi, primes, v, lam.data(), scratch.data());
            return lam;
        },
        [&](uint64_t, uint64_t lo, uint64_t hi, std::vector<uint64_t>&& lam) {
            // ascending pass; lambda(n) < n so L of it is already filled
            for (uint64_t n = lo; n < hi; ++n)
                L[n] = n == 1 ? 0 : static_cast<uint8_t>(1 + L[lam[n - lo]]);
        });
    return t;
}

namespace {

struct HeightSegment {
    std::vector<uint8_t> is_prime;
    std::vector<uint8_t> maxh_small; // max height over small primes dividing n-1
    std::vector<uint64_t> bigrem;    // cofactor of n-1 above sqrt(N), 1 if none
};

} // namespace

RangeTable sieve_heights(uint64_t N, const SieveOptions& opts) {
    validate_args(N, opts);
    const uint32_t workers = resolve_workers(opts.workers);
    const uint64_t seg = std::min(opts.segment_size, N);
    check_budget((N + 1) + (uint64_t{workers} * 2 + 2) * seg * 10, opts.mem_budget);

    RangeTable t;
    t.kind = TableKind::H8;
    t.variant = LambdaVariant::standard;
    t.limit = N;
    t.payload8.assign(N + 1, kH8Sentinel);
    t.payload8[0] = 0;

    const auto primes = sieve_primes_for(N);
    std::vector<uint8_t> prime_height(primes.size());
    for (size_t i = 0; i < primes.size(); ++i)
        prime_height[i] = static_cast<uint8_t>(pratt::height(primes[i]));

    uint8_t* H = t.payload8.data();
    run_segments<HeightSegment>(
        1, N, seg, workers,
        [&](uint64_t, uint64_t lo, uint64_t hi) {
            const uint64_t len = hi - lo;
            HeightSegment s;
            s.is_prime.assign(len, 1);
            s.maxh_small.assign(len, 0);
            s.bigrem.assign(len, 0);
            if (lo == 1) s.is_prime[0] = 0;
            // factor the shifted window m = n-1 while marking composites in n
            const uint64_t mlo = lo - 1;
            for (uint64_t i = 0; i < len; ++i) s.bigrem[i] = mlo + i;
            if (mlo == 0) s.bigrem[0] = 1;
            for (size_t pi = 0; pi < primes.size(); ++pi) {
                const uint64_t p = primes[pi];
                // composite marking: multiples of p in [lo, hi) from p^2 up
                uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
                for (uint64_t m = start; m < hi; m += p) s.is_prime[m - lo] = 0;
                if (lo <= p && p < hi) s.is_prime[p - lo] = 1;
                // exponent extraction on the shifted window
                uint64_t mstart = ((mlo + p - 1) / p) * p;
                if (mstart < p) mstart = p;
                for (uint64_t m = mstart; m < mlo + len; m += p) {
                    uint64_t i = m - mlo;
                    uint64_t r = s.bigrem[i];
                    do r /= p; while (r % p == 0);
                    s.bigrem[i] = r;
                    s.maxh_small[i] = std::max(s.maxh_small[i], prime_height[pi]);
                }
            }
            return s;
        },
        [&](uint64_t, uint64_t lo, uint64_t hi, HeightSegment&& s) {
            for (uint64_t n = lo; n < hi; ++n) {
                if (!s.is_prime[n - lo]) continue;
                if (n == 2) {
                    H[2] = 0;
                    continue;
                }
                // n-1 sits at shifted index n-lo; its big cofactor is a prime
                // <= (n-1)/2 < n, so its height is already in the table
                uint32_t best = s.maxh_small[n - lo];
                uint64_t r = s.bigrem[n - lo];
                if (r > 1) best = std::max(best, uint32_t{H[r]});
                H[n] = static_cast<uint8_t>(1 + best);
            }
        });
    return t;
}

namespace {

void put_u64_le(unsigned char* out, uint64_t v) {
    for (int b = 0; b < 8; ++b) out[b] = static_cast<unsigned char>(v >> (8 * b));
}

uint64_t get_u64_le(const unsigned char* in) {
    uint64_t v = 0;
    for (int b = 0; b < 8; ++b) v |= uint64_t{in[b]} << (8 * b);
    return v;
}

constexpr size_t kHeaderSize = 16;

size_t element_width(TableKind k) {
    return k == TableKind::lambda64 ? 8 : 1;
}

} // namespace

uint32_t payload_crc(const RangeTable& t) {
    if (t.kind != TableKind::lambda64) return crc32(t.payload8.data() + 1, t.limit);
    std::vector<unsigned char> buf(size_t{1} << 16);
    uint32_t crc = 0;
    size_t pos = 0;
    for (uint64_t n = 1; n <= t.limit; ++n) {
        put_u64_le(&buf[pos], t.payload64[n]);
        pos += 8;
        if (pos == buf.size()) {
            crc = crc32(buf.data(), pos, crc);
            pos = 0;
        }
    }
    if (pos) crc = crc32(buf.data(), pos, crc);
    return crc;
}

void write_table(const RangeTable& t, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");

    unsigned char header[kHeaderSize];
    std::memcpy(header, "CLT1", 4);
    header[4] = 1;
    header[5] = static_cast<uint8_t>(t.kind);
    header[6] = static_cast<uint8_t>(t.variant);
    header[7] = 0;
    put_u64_le(header + 8, t.limit);
    out.write(reinterpret_cast<const char*>(header), kHeaderSize);

    uint32_t crc = 0;
    if (t.kind == TableKind::lambda64) {
        std::vector<unsigned char> buf(size_t{1} << 16);
        size_t pos = 0;
        for (uint64_t n = 1; n <= t.limit; ++n) {
            put_u64_le(&buf[pos], t.payload64[n]);
            pos += 8;
            if (pos == buf.size()) {
                crc = crc32(buf.data(), pos, crc);
                out.write(reinterpret_cast<const char*>(buf.data()),
                          static_cast<std::streamsize>(pos));
                pos = 0;
            }
        }
        if (pos) {
            crc = crc32(buf.data(), pos, crc);
            out.write(reinterpret_cast<const char*>(buf.data()),
                      static_cast<std::streamsize>(pos));
        }
    } else {
        crc = crc32(t.payload8.data() + 1, t.limit);
        out.write(reinterpret_cast<const char*>(t.payload8.data() + 1),
                  static_cast<std::streamsize>(t.limit));
    }

    unsigned char tail[4];
    for (int b = 0; b < 4; ++b) tail[b] = static_cast<unsigned char>(crc >> (8 * b));
    out.write(reinterpret_cast<const char*>(tail), 4);
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + path);
}

RangeTable read_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);

    unsigned char header[kHeaderSize];
    in.read(reinterpret_cast<char*>(header), kHeaderSize);
    if (in.gcount() != kHeaderSize) throw std::runtime_error("truncated header in " + path);
    if (std::memcmp(header, "CLT1", 4) != 0)
        throw std::runtime_error("bad magic in " + path);
    if (header[4] != 1)
        throw std::runtime_error("unsupported version " + std::to_string(header[4]));
    if (header[5] > 2) throw std::runtime_error("bad kind byte in " + path);
    if (header[6] > 1) throw std::runtime_error("bad variant byte in " + path);
    if (header[7] != 0) throw std::runtime_error("bad reserved byte in " + path);

    RangeTable t;
    t.kind = static_cast<TableKind>(header[5]);
    t.variant = static_cast<LambdaVariant>(header[6]);
    t.limit = get_u64_le(header + 8);
    if (t.limit < 1 || t.limit > (uint64_t{1} << 40))
        throw std::runtime_error("bad table limit in " + path);

    const size_t width = element_width(t.kind);
    uint32_t crc = 0;
    if (t.kind == TableKind::lambda64) {
        t.payload64.assign(t.limit + 1, 0);
        std::vector<unsigned char> buf(size_t{1} << 16);
        uint64_t n = 1;
        uint64_t remaining = t.limit * width;
        while (remaining > 0) {
            size_t chunk = std::min<uint64_t>(remaining, buf.size());
            in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(chunk));
            if (static_cast<size_t>(in.gcount()) != chunk)
                throw std::runtime_error("truncated payload in " + path);
            crc = crc32(buf.data(), chunk, crc);
            for (size_t off = 0; off < chunk; off += 8) t.payload64[n++] = get_u64_le(&buf[off]);
            remaining -= chunk;
        }
    } else {
        t.payload8.assign(t.limit + 1, 0);
        in.read(reinterpret_cast<char*>(t.payload8.data() + 1),
                static_cast<std::streamsize>(t.limit));
        if (static_cast<uint64_t>(in.gcount()) != t.limit)
            throw std::runtime_error("truncated payload in " + path);
        crc = crc32(t.payload8.data() + 1, t.limit);
    }

    unsigned char tail[4];
    in.read(reinterpret_cast<char*>(tail), 4);
    if (in.gcount() != 4) throw std::runtime_error("truncated checksum in " + path);
    uint32_t stored = 0;
    for (int b = 0; b < 4; ++b) stored |= uint32_t{tail[b]} << (8 * b);
    if (stored != crc) throw std::runtime_error("checksum mismatch in " + path);
    return t;
}

} // namespace lam::rangesieve
