#pragma once
// Small shared utilities: deterministic RNG helpers, a capped parallel_for,
// and the FNV-1a hash used for config fingerprints.
#include <cstdint>
#include <functional>
#include <random>
#include <string>

namespace sympcy {

// Global worker cap for data-parallel pointwise loops. 1 = serial.
void set_max_workers(int n);
int max_workers();

// Runs fn(begin, end) over [0, n) split into contiguous chunks. Chunk
// boundaries depend only on n (fixed block size), never on the worker count,
// so per-chunk results are reproducible across machines and thread settings.
void parallel_for(long long n, const std::function<void(long long, long long)>& fn);

// Uniform double in [-1, 1), derived from the top 53 bits of the engine
// output. Avoids std::uniform_real_distribution so streams are identical
// across standard libraries.
inline double uniform_pm1(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * (1.0 / 4503599627370496.0) * 2.0 - 1.0;
}

inline double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * (1.0 / 9007199254740992.0);
}

std::uint64_t fnv1a64(const std::string& s);
std::string hex64(std::uint64_t v);

}  // namespace sympcy
