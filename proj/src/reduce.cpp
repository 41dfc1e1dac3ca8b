#include "paradiff/reduce.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <vector>

namespace paradiff {

namespace {

std::atomic<int> g_user_threads{0};
thread_local bool t_inside_parallel = false;

int resolve_default_threads() {
  if (const char* env = std::getenv("PARADIFF_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

constexpr std::size_t kLeaf = 4096;

template <typename T, typename Term>
T tree_reduce(std::size_t lo, std::size_t hi, const Term& term) {
  if (hi - lo <= kLeaf) {
    T acc{};
    for (std::size_t i = lo; i < hi; ++i) acc += term(i);
    return acc;
  }
  // split at the leaf-aligned midpoint so the tree shape is a function of
  // (lo, hi) alone
  std::size_t nleaves = (hi - lo + kLeaf - 1) / kLeaf;
  std::size_t mid = lo + (nleaves / 2) * kLeaf;
  return tree_reduce<T>(lo, mid, term) + tree_reduce<T>(mid, hi, term);
}

}  // namespace

int max_threads() {
  int u = g_user_threads.load();
  return u > 0 ? u : resolve_default_threads();
}

void set_max_threads(int n) { g_user_threads.store(n > 0 ? n : 0); }

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  int nw = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(max_threads()), n));
  if (nw <= 1 || t_inside_parallel) {  // no nested pools
    fn(0, n);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(nw));
  std::size_t chunk = (n + nw - 1) / nw;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (int w = 0; w < nw; ++w) {
    std::size_t lo = static_cast<std::size_t>(w) * chunk;
    if (lo >= n) break;
    std::size_t hi = std::min(n, lo + chunk);
    workers.emplace_back([&fn, &first_error, &error_mutex, lo, hi] {
      t_inside_parallel = true;
      try {
        fn(lo, hi);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
      t_inside_parallel = false;
    });
  }
  for (auto& t : workers) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

double deterministic_sum(std::size_t n, const std::function<double(std::size_t)>& term) {
  if (n == 0) return 0.0;
  std::size_t nleaves = (n + kLeaf - 1) / kLeaf;
  if (nleaves <= 2) return tree_reduce<double>(0, n, term);
  // compute leaf partials in parallel, then combine with the same fixed tree
  std::vector<double> partial(nleaves);
  parallel_for(nleaves, [&](std::size_t l0, std::size_t l1) {
    for (std::size_t l = l0; l < l1; ++l) {
      std::size_t lo = l * kLeaf, hi = std::min(n, lo + kLeaf);
      double acc = 0.0;
      for (std::size_t i = lo; i < hi; ++i) acc += term(i);
      partial[l] = acc;
    }
  });
  std::function<double(std::size_t, std::size_t)> comb = [&](std::size_t lo, std::size_t hi) -> double {
    if (hi - lo == 1) return partial[lo];
    std::size_t mid = lo + (hi - lo) / 2;
    return comb(lo, mid) + comb(mid, hi);
  };
  return comb(0, nleaves);
}

std::complex<double> deterministic_csum(std::size_t n,
                                        const std::function<std::complex<double>(std::size_t)>& term) {
  double re = deterministic_sum(n, [&](std::size_t i) { return term(i).real(); });
  double im = deterministic_sum(n, [&](std::size_t i) { return term(i).imag(); });
  return {re, im};
}

double deterministic_max(std::size_t n, const std::function<double(std::size_t)>& term) {
  if (n == 0) return 0.0;
  std::size_t nleaves = (n + kLeaf - 1) / kLeaf;
  std::vector<double> partial(nleaves);
  parallel_for(nleaves, [&](std::size_t l0, std::size_t l1) {
    for (std::size_t l = l0; l < l1; ++l) {
      std::size_t lo = l * kLeaf, hi = std::min(n, lo + kLeaf);
      double m = term(lo);
      for (std::size_t i = lo + 1; i < hi; ++i) m = std::max(m, term(i));
      partial[l] = m;
    }
  });
  double m = partial[0];
  for (std::size_t l = 1; l < nleaves; ++l) m = std::max(m, partial[l]);
  return m;
}

}  // namespace paradiff
