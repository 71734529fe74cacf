// SPDX-License-Identifier: Apache-2.0

#ifndef OMMI_PARALLEL_HPP
#define OMMI_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ommi
{

// Thread count from OMMI_NUM_THREADS, default 1.
int thread_count();

// Calls fn(i) for i in [0, n) on up to `threads` workers. Results must be written to
// per-index slots by fn; the first exception thrown is rethrown after all workers join.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn &&fn)
{
  if (threads <= 1 || n <= 1)
  {
    for (std::size_t i = 0; i < n; i++)
    {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  const std::size_t workers = std::min<std::size_t>(threads, n);
  for (std::size_t t = 0; t < workers; t++)
  {
    pool.emplace_back(
        [&]
        {
          for (std::size_t i = next++; i < n; i = next++)
          {
            try
            {
              fn(i);
            }
            catch (...)
            {
              std::lock_guard lock(error_mutex);
              if (!error)
              {
                error = std::current_exception();
              }
            }
          }
        });
  }
  pool.clear();
  if (error)
  {
    std::rethrow_exception(error);
  }
}

}  // namespace ommi

#endif  // OMMI_PARALLEL_HPP
