#include "sympcy/util.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace sympcy {

namespace {
std::atomic<int> g_workers{1};
}

void set_max_workers(int n) { g_workers.store(std::max(1, n)); }
int max_workers() { return g_workers.load(); }

void parallel_for(long long n, const std::function<void(long long, long long)>& fn) {
  if (n <= 0) return;
  const long long block = 2048;  // fixed: chunking independent of worker count
  const long long nblocks = (n + block - 1) / block;
  int workers = std::min<long long>(max_workers(), nblocks);
  if (workers <= 1) {
    fn(0, n);
    return;
  }
  std::atomic<long long> next{0};
  auto run = [&] {
    for (;;) {
      long long b = next.fetch_add(1);
      if (b >= nblocks) break;
      fn(b * block, std::min(n, (b + 1) * block));
    }
  };
  std::vector<std::thread> pool;
  for (int i = 0; i < workers - 1; ++i) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

}  // namespace sympcy
