#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace simplex_approx {

/// Cascade (pairwise) summation with a fixed reduction tree, so results are
/// reproducible regardless of how callers schedule the evaluations.
template <typename Get>
double pairwise_sum(std::size_t lo, std::size_t hi, Get&& get) {
  const std::size_t n = hi - lo;
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += get(i);
    return s;
  }
  const std::size_t mid = lo + n / 2;
  return pairwise_sum(lo, mid, get) + pairwise_sum(mid, hi, get);
}

template <typename Get>
double pairwise_sum(std::size_t n, Get&& get) {
  return pairwise_sum(std::size_t{0}, n, get);
}

inline double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum(v.size(), [&](std::size_t i) { return v[i]; });
}

/// Thread budget: hardware concurrency capped by SIMPLEX_APPROX_THREADS.
inline unsigned thread_cap() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("SIMPLEX_APPROX_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
  }
  return hw;
}

/// Index-parallel loop. Each index owns its output slot, so the result is
/// identical for any thread count.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const unsigned threads = std::min<std::size_t>(thread_cap(), n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += threads) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

/// Write a report file once: temp file in the same directory, then rename.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  namespace fs = std::filesystem;
  fs::path dir = path.parent_path();
  if (dir.empty()) dir = fs::current_path();
  fs::path tmp = dir / (path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << contents;
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

/// splitmix64: small deterministic generator for randomized sweeps.
/// Chosen over std:: distributions so that identical seeds give identical
/// streams on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::int64_t below(std::int64_t n) {
    return static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(n));
  }

 private:
  std::uint64_t state_;
};

}  // namespace simplex_approx
