#include "becfem/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace becfem
{

namespace
{

std::size_t initial_worker_count()
{
  if (const char* env = std::getenv("BECFEM_THREADS"))
  {
    const long v = std::atol(env);
    if (v >= 1)
      return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

std::atomic<std::size_t> workers{0};

}  // namespace

std::size_t worker_count()
{
  std::size_t w = workers.load(std::memory_order_relaxed);
  if (w == 0)
  {
    w = initial_worker_count();
    workers.store(w, std::memory_order_relaxed);
  }
  return w;
}

void set_worker_count(std::size_t n)
{
  // Zero resets to the BECFEM_THREADS / hardware default.
  workers.store(n, std::memory_order_relaxed);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn)
{
  const std::size_t nw = worker_count();
  if (n == 0)
    return;
  if (nw <= 1 || n < 2 * nw)
  {
    fn(0, n);
    return;
  }
  const std::size_t chunk = (n + nw - 1) / nw;
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (std::size_t t = 0; t < nw; ++t)
  {
    const std::size_t begin = t * chunk;
    const std::size_t end = begin + chunk < n ? begin + chunk : n;
    if (begin >= end)
      break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& th : pool)
    th.join();
}

}  // namespace becfem
