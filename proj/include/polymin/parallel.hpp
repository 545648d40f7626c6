#ifndef POLYMIN_PARALLEL_HPP
#define POLYMIN_PARALLEL_HPP

#include <exception>
#include <thread>
#include <vector>

namespace polymin {

// Index-parallel loop with deterministic result placement; fn(i) must only
// write to its own slot. jobs = 0 means hardware concurrency.
template <class F>
void parallel_for(std::size_t count, unsigned jobs, F&& fn) {
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    if (jobs == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(jobs);
    std::size_t workers = std::min<std::size_t>(jobs, count);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (std::size_t i = w; i < count; i += workers) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace polymin

#endif
