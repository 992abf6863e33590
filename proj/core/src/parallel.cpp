#include "heatcontent/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "heatcontent/random.hpp"

namespace heatcontent {

namespace {
std::atomic<std::size_t> g_jobs{0};
}

std::size_t default_jobs() {
    const std::size_t j = g_jobs.load();
    if (j > 0) return j;
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void set_default_jobs(std::size_t jobs) { g_jobs.store(jobs); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, std::size_t jobs) {
    if (jobs == 0) jobs = default_jobs();
    jobs = std::min(jobs, n);
    if (jobs <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::jthread> threads;
    threads.reserve(jobs);
    for (std::size_t k = 0; k < jobs; ++k) threads.emplace_back(worker);
    threads.clear();
    if (failure) std::rethrow_exception(failure);
}

std::uint64_t round_up_pow2(std::uint64_t n) {
    std::uint64_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace heatcontent
