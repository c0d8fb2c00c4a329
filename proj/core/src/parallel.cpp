#include "singlab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

namespace singlab {

namespace {
int g_threads = 0;

int resolve_threads() {
    if (g_threads > 0) return g_threads;
    if (const char* env = std::getenv("LAB_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}
}  // namespace

void set_thread_count(int n) { g_threads = n; }
int thread_count() { return resolve_threads(); }

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    const std::size_t nchunks = (n + kChunk - 1) / kChunk;
    int workers = std::min<std::size_t>(resolve_threads(), nchunks);
    if (workers <= 1) {
        fn(0, n);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            std::size_t c = next.fetch_add(1);
            if (c >= nchunks) return;
            std::size_t lo = c * kChunk;
            std::size_t hi = std::min(lo + kChunk, n);
            fn(lo, hi);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (int i = 1; i < workers; ++i) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
}

double parallel_sum(std::size_t n, const std::function<double(std::size_t, std::size_t)>& chunk_sum) {
    if (n == 0) return 0.0;
    const std::size_t nchunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial(nchunks, 0.0);
    parallel_for(n, [&](std::size_t lo, std::size_t hi) {
        // [lo,hi) is exactly one chunk by construction
        partial[lo / kChunk] = chunk_sum(lo, hi);
    });
    double acc = 0.0;
    for (double p : partial) acc += p;
    return acc;
}

}  // namespace singlab
