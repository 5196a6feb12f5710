#include "dsw/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace dsw {

unsigned parallel_width() {
  static const unsigned width = [] {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("DSW_THREADS")) {
      long cap = std::strtol(env, nullptr, 10);
      if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
    }
    return hw;
  }();
  return width;
}

void parallel_for(std::size_t count,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
  const unsigned width = parallel_width();
  constexpr std::size_t kSerialCutoff = 1 << 15;
  if (width <= 1 || count < kSerialCutoff) {
    fn(0, count);
    return;
  }
  const std::size_t chunk = (count + width - 1) / width;
  std::vector<std::thread> pool;
  pool.reserve(width);
  for (std::size_t begin = 0; begin < count; begin += chunk) {
    std::size_t end = std::min(count, begin + chunk);
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace dsw
