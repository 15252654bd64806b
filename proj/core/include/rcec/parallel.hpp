#pragma once

#include <cstddef>
#include <functional>

namespace rcec {

// Number of worker threads to use: the RCEC_THREADS environment variable if
// set to a positive integer, else std::thread::hardware_concurrency(). Read on
// every call.
std::size_t worker_count();

// Runs body(i) for i in [0, count). Work is spread over worker_count()
// threads; calls nested inside another parallel_for run serially on the
// calling thread. Callers write results into per-index slots and reduce them
// in index order afterwards, so results never depend on the thread count.
// The first exception thrown by any body is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace rcec
