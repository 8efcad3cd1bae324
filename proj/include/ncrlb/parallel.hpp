#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace ncrlb {

// NCRLB_THREADS, 0 or unset -> hardware concurrency
int thread_count();
void set_thread_count(int n);  // overrides the env var, 0 restores it

// fn(i) for i in [0, n); each index runs exactly once, order unspecified
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// independent generator for (seed, stream)
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream);

}  // namespace ncrlb
