// Copyright (c) 2026 lsi-forge contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace lsiforge {

/// Resolves a worker-pool size: a positive request wins, otherwise the
/// LSI_FORGE_THREADS environment variable, otherwise 1. The returned value
/// is always >= 1. Work is partitioned into fixed chunks seeded
/// independently of the pool size, so the thread count never changes
/// results — only wall time.
inline int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("LSI_FORGE_THREADS")) {
    try {
      const int parsed = std::stoi(env);
      if (parsed > 0) return parsed;
    } catch (const std::exception&) {
      // fall through to the default
    }
  }
  return 1;
}

/// Runs fn(0), ..., fn(chunks - 1) on up to `threads` workers. Each chunk
/// index is claimed exactly once; fn must confine writes to per-chunk
/// storage (merge afterwards in index order for determinism). Exceptions
/// from workers are rethrown on the calling thread.
inline void parallel_chunks(std::size_t chunks, int threads,
                            const std::function<void(std::size_t)>& fn) {
  if (chunks == 0) return;
  if (threads < 1) threads = 1;
  const std::size_t workers = std::min(static_cast<std::size_t>(threads), chunks);
  if (workers <= 1) {
    for (std::size_t i = 0; i < chunks; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&]() {
      while (!failed.load(std::memory_order_relaxed)) {
        const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= chunks) break;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
        }
      }
    });
  }
  for (auto& worker : pool) worker.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace lsiforge
