#include "qsl2r/par.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <string>

namespace qsl2r {

int thread_count() {
    static const int cached = [] {
        int n = omp_get_max_threads();
        if (const char* env = std::getenv("QSL2R_THREADS")) {
            try {
                int limit = std::stoi(env);
                if (limit > 0) n = std::min(n, limit);
            } catch (const std::exception&) {
                // ignore malformed values, keep the OpenMP default
            }
        }
        return std::max(n, 1);
    }();
    return cached;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const int threads = thread_count();
    if (threads <= 1 || n <= 1) {
        serial_for(n, body);
        return;
    }
    const long long chunk =
        std::max(1LL, static_cast<long long>(n) / (8LL * threads));
#pragma omp parallel for schedule(dynamic, chunk) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        body(static_cast<std::size_t>(i));
    }
}

void serial_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace qsl2r
