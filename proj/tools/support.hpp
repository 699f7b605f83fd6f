#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace period_atlas::cli {

/// Bad flags or flag values; maps to exit code 64.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int { kOk = 0, kCertificateFailed = 1, kComputeFailed = 2, kUsage = 64 };

/// `start:stop:lin|log:count`, count >= 2, start < stop, log needs start > 0.
std::vector<double> parse_grid(const std::string& spec);

/// Writes to a sibling temporary file and renames it over `path`.
void atomic_write(const std::string& path, const std::string& content);

/// PERIOD_ATLAS_THREADS when set (0 means serial), else the hardware count.
unsigned thread_count();

/// Runs body(i) for i in [0, n) on up to `threads` workers. The first
/// exception (by index) is rethrown after all workers finish.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace period_atlas::cli
