#include "dmclab/util.hpp"

#include <cstdio>
#include <mutex>

namespace dmclab {

double log2_factorial(int k) {
  if (k < 0) throw std::invalid_argument("log2_factorial: negative argument");
  static std::vector<double> cache{0.0, 0.0};  // 0! and 1!
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(cache.size()) <= k) {
    int i = static_cast<int>(cache.size());
    cache.push_back(cache.back() + std::log2(static_cast<double>(i)));
  }
  return cache[k];
}

double log2_multinomial(int n, const std::vector<int>& counts) {
  int sum = 0;
  double out = log2_factorial(n);
  for (int c : counts) {
    sum += c;
    out -= log2_factorial(c);
  }
  if (sum != n) throw std::invalid_argument("log2_multinomial: counts do not sum to n");
  return out;
}

void parallel_for(long total, int threads, const std::function<void(long, long, int)>& fn) {
  if (total <= 0) return;
  int workers = std::max(1, threads);
  workers = static_cast<int>(std::min<long>(workers, total));
  if (workers == 1) {
    fn(0, total, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  long chunk = (total + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    long begin = w * chunk;
    long end = std::min(total, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end, w] { fn(begin, end, w); });
  }
  for (auto& t : pool) t.join();
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("DMCLAB_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace dmclab
