#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace simplexfold {

/// requested > 0 wins; otherwise SIMPLEXFOLD_JOBS; otherwise 1.
inline unsigned resolve_jobs(unsigned requested = 0) {
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("SIMPLEXFOLD_JOBS")) {
        try {
            const long v = std::stol(env);
            if (v > 0)
                return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return 1;
}

/// Calls fn(i) for i in [0, count) on up to `jobs` threads. Results must be
/// written to index-keyed slots, so output does not depend on scheduling.
/// The exception from the lowest failing index is rethrown.
template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(count);
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> threads;
    const std::size_t nthreads = std::min<std::size_t>(jobs, count);
    for (std::size_t t = 0; t < nthreads; ++t)
        threads.emplace_back(worker);
    for (auto& t : threads)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace simplexfold
