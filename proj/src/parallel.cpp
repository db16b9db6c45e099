#include "morsedyn/parallel.hpp"

#include <atomic>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace morsedyn::parallel {

namespace {

bool initial_state() {
#ifndef _OPENMP
    return false;
#else
    const char* env = std::getenv("MORSEDYN_SERIAL");
    return !(env && env[0] == '1');
#endif
}

std::atomic<bool>& flag() {
    static std::atomic<bool> on{initial_state()};
    return on;
}

} // namespace

bool enabled() { return flag().load(std::memory_order_relaxed); }

void set_enabled(bool on) { flag().store(on, std::memory_order_relaxed); }

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace morsedyn::parallel
