#ifndef SZPIRO_PARALLEL_HPP
#define SZPIRO_PARALLEL_HPP

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace szpiro {

// Deterministic block-parallel driver.  The half-open index range
// [lo, hi) is cut into fixed-size blocks; `produce` runs on worker
// threads, one block at a time, and `consume` sees the results strictly
// in block order.  Output is therefore identical for any worker count.
template <class T>
void run_ordered_blocks(int64_t lo, int64_t hi, int64_t block_size, unsigned workers,
                        const std::function<std::vector<T>(int64_t, int64_t)>& produce,
                        const std::function<void(std::vector<T>&&)>& consume) {
    if (hi <= lo) return;
    if (workers < 1) workers = 1;
    int64_t nblocks = (hi - lo + block_size - 1) / block_size;

    if (workers == 1) {
        for (int64_t b = 0; b < nblocks; ++b) {
            int64_t s = lo + b * block_size;
            int64_t e = std::min(hi, s + block_size);
            std::vector<T> out = produce(s, e);
            consume(std::move(out));
        }
        return;
    }

    std::mutex mu;
    std::condition_variable cv;
    std::vector<std::vector<T>> slots(nblocks);
    std::vector<char> ready(nblocks, 0);
    std::atomic<int64_t> next{0};
    // Workers stay at most `window` blocks ahead of the consumer to bound
    // memory; the consumer advances `drained`.
    std::atomic<int64_t> drained{0};
    const int64_t window = 4 * static_cast<int64_t>(workers);

    auto work = [&]() {
        for (;;) {
            int64_t b = next.fetch_add(1);
            if (b >= nblocks) return;
            {
                std::unique_lock<std::mutex> lk(mu);
                cv.wait(lk, [&] { return b - drained.load() < window; });
            }
            int64_t s = lo + b * block_size;
            int64_t e = std::min(hi, s + block_size);
            std::vector<T> out = produce(s, e);
            {
                std::lock_guard<std::mutex> lk(mu);
                slots[b] = std::move(out);
                ready[b] = 1;
            }
            cv.notify_all();
        }
    };

    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);

    for (int64_t b = 0; b < nblocks; ++b) {
        std::vector<T> out;
        {
            std::unique_lock<std::mutex> lk(mu);
            cv.wait(lk, [&] { return ready[b] != 0; });
            out = std::move(slots[b]);
            slots[b].clear();
            slots[b].shrink_to_fit();
        }
        drained.store(b + 1);
        cv.notify_all();
        consume(std::move(out));
    }
    for (auto& t : pool) t.join();
}

// Worker-count default: explicit value, else SZPIRO_LAB_THREADS, else 1.
unsigned default_workers();

}  // namespace szpiro

#endif
