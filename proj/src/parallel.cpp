#include "sofic/parallel.hpp"

#include <atomic>
#include <cstdlib>

namespace sofic {

namespace {

int threads_from_environment() noexcept
{
    if (const char* env = std::getenv("SOFIC_LAB_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0)
            return n;
    }
    return 1;
}

std::atomic<int>& configured_threads() noexcept
{
    static std::atomic<int> n{threads_from_environment()};
    return n;
}

} // namespace

int thread_count() noexcept
{
    return configured_threads().load(std::memory_order_relaxed);
}

void set_thread_count(int n) noexcept
{
    configured_threads().store(n > 0 ? n : 1, std::memory_order_relaxed);
}

} // namespace sofic
