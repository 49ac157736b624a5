#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace cyzeta {

// Raised for mathematically invalid input or refused computations.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

class BudgetExceeded : public DomainError {
 public:
  explicit BudgetExceeded(const std::string& msg) : DomainError("budget", msg) {}
};

class PrecisionError : public DomainError {
 public:
  explicit PrecisionError(const std::string& msg) : DomainError("precision", msg) {}
};

inline std::int64_t gcd_all(const std::vector<std::int64_t>& xs) {
  std::int64_t g = 0;
  for (auto x : xs) g = std::gcd(g, x);
  return g;
}

inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  a %= m;
  return a < 0 ? a + m : a;
}

inline std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

inline std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t f = 2; f * f <= n; ++f) {
    if (n % f) continue;
    out.push_back(f);
    while (n % f == 0) n /= f;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Worker count: explicit value if positive, else CYZETA_THREADS, else hardware.
inline unsigned resolve_threads(int requested = 0) {
  if (requested > 0) return static_cast<unsigned>(requested);
  if (const char* env = std::getenv("CYZETA_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Splits [0, n) into contiguous chunks, runs fn(lo, hi, worker) on each, and
// returns the per-worker results in order.
template <class R, class Fn>
std::vector<R> parallel_chunks(std::int64_t n, unsigned threads, Fn fn) {
  if (threads < 1) threads = 1;
  if (n < static_cast<std::int64_t>(threads)) threads = n > 0 ? static_cast<unsigned>(n) : 1;
  std::vector<R> out(threads);
  if (threads == 1) {
    out[0] = fn(std::int64_t{0}, n, 0u);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(threads);
  for (unsigned t = 0; t < threads; ++t) {
    std::int64_t lo = n * t / threads, hi = n * (t + 1) / threads;
    pool.emplace_back([&, lo, hi, t] {
      try {
        out[t] = fn(lo, hi, t);
      } catch (...) {
        errs[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace cyzeta
