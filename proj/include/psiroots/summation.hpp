#pragma once

#include <cmath>
#include <cstdint>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

namespace psiroots {

// Neumaier variant of compensated summation: the correction term also
// absorbs the error made when |v| exceeds |sum|.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double init) : sum_(init) {}

  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline unsigned default_threads() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1u : n;
}

namespace detail {

// Work is split into fixed-size chunks whose results are combined in chunk
// order, so the result does not depend on the number of worker threads.
inline constexpr std::int64_t kChunk = 1 << 15;

template <class ChunkFn>
void run_chunked(std::int64_t lo, std::int64_t hi, unsigned threads, ChunkFn chunk_fn) {
  const std::int64_t count = hi - lo;
  if (count <= 0) return;
  const std::int64_t nchunks = (count + kChunk - 1) / kChunk;
  unsigned nthreads = threads == 0 ? 1u : threads;
  if (static_cast<std::int64_t>(nthreads) > nchunks) nthreads = static_cast<unsigned>(nchunks);

  std::vector<std::exception_ptr> errors(nchunks);
  auto worker = [&](unsigned tid) {
    for (std::int64_t ci = tid; ci < nchunks; ci += nthreads) {
      const std::int64_t a = lo + ci * kChunk;
      const std::int64_t b = std::min(hi, a + kChunk);
      try {
        chunk_fn(ci, a, b);
      } catch (...) {
        errors[ci] = std::current_exception();
      }
    }
  };

  if (nthreads <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);  // lowest-index failure wins
  }
}

}  // namespace detail

// Deterministic parallel sum of term(k) for k in [lo, hi). Each chunk is
// accumulated sequentially with compensation, then chunks are combined in
// index order; the bytes of the result are independent of `threads`.
template <class TermFn>
double sum_indexed(std::int64_t lo, std::int64_t hi, unsigned threads, TermFn term) {
  if (hi <= lo) return 0.0;
  const std::int64_t nchunks = (hi - lo + detail::kChunk - 1) / detail::kChunk;
  std::vector<double> partial(nchunks, 0.0);
  detail::run_chunked(lo, hi, threads, [&](std::int64_t ci, std::int64_t a, std::int64_t b) {
    CompensatedSum s;
    for (std::int64_t k = a; k < b; ++k) s.add(term(k));
    partial[ci] = s.value();
  });
  CompensatedSum total;
  for (double p : partial) total.add(p);
  return total.value();
}

// Deterministic parallel fill: fn(k) must only touch slot k of its output.
template <class Fn>
void parallel_for_index(std::int64_t n, unsigned threads, Fn fn) {
  detail::run_chunked(0, n, threads, [&](std::int64_t, std::int64_t a, std::int64_t b) {
    for (std::int64_t k = a; k < b; ++k) fn(k);
  });
}

}  // namespace psiroots
