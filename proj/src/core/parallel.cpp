// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include "acoustic_layer/core/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace acoustic_layer
{

std::size_t worker_count()
{
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char *env = std::getenv("ACOUSTIC_LAYER_THREADS"))
  {
    try
    {
      const long cap = std::stol(env);
      if (cap >= 1)
      {
        n = std::min(n, static_cast<std::size_t>(cap));
      }
    }
    catch (const std::exception &)
    {
      // Ignore unparsable values.
    }
  }
  return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body)
{
  const std::size_t workers = std::min(worker_count(), n);
  if (workers <= 1)
  {
    for (std::size_t i = 0; i < n; ++i)
    {
      body(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&]() {
    for (std::size_t i = next++; i < n; i = next++)
    {
      try
      {
        body(i);
      }
      catch (...)
      {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error)
        {
          error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
  {
    pool.emplace_back(run);
  }
  for (auto &t : pool)
  {
    t.join();
  }
  if (error)
  {
    std::rethrow_exception(error);
  }
}

}  // namespace acoustic_layer
