#include "prequant/sampling.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "prequant/parallel.hpp"

namespace prequant {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

} // namespace

Sampler Sampler::stream(std::uint64_t seed, std::uint64_t salt) {
  return Sampler(splitmix64(seed ^ splitmix64(salt)));
}

Vec Sampler::gaussian(int dim, double sigma) {
  std::normal_distribution<double> normal(0.0, sigma);
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = normal(engine_);
  return v;
}

Point Sampler::point(const ManifoldPtr& space) {
  for (;;) {
    const Vec g = gaussian(space->ambient_dim());
    if (g.norm() > 1e-6) return Point::on(space, g);
  }
}

Tangent Sampler::tangent(const Point& p) {
  return tangent_project(p, gaussian(p.space().ambient_dim()));
}

double Sampler::uniform(double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(engine_);
}

int Sampler::integer(int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  return dist(engine_);
}

int thread_count() {
  if (const char* env = std::getenv("PREQUANT_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(thread_count()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

} // namespace prequant
