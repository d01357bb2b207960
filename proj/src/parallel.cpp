#include "cancov/parallel.hpp"

namespace cancov {

namespace {
std::atomic<std::size_t> g_threads{1};
}

void set_thread_count(std::size_t k) { g_threads = std::max<std::size_t>(k, 1); }
std::size_t thread_count() { return g_threads; }

}  // namespace cancov
