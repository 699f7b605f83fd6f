#include "support.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>
#include <unistd.h>

namespace period_atlas::cli {

namespace {

double parse_double(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw UsageError("grid " + what + " is not a number: '" + s + "'");
  }
  if (pos != s.size() || !std::isfinite(v)) throw UsageError("grid " + what + " is not a number: '" + s + "'");
  return v;
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 4) throw UsageError("grid must look like start:stop:lin|log:count, got '" + spec + "'");
  const double a = parse_double(parts[0], "start");
  const double b = parse_double(parts[1], "stop");
  const std::string& mode = parts[2];
  long count = 0;
  const auto [p, ec] = std::from_chars(parts[3].data(), parts[3].data() + parts[3].size(), count);
  if (ec != std::errc() || p != parts[3].data() + parts[3].size())
    throw UsageError("grid count is not an integer: '" + parts[3] + "'");
  if (count < 2) throw UsageError("grid count must be at least 2");
  if (!(a < b)) throw UsageError("grid start must be below stop");
  std::vector<double> out(static_cast<std::size_t>(count));
  if (mode == "lin") {
    for (long i = 0; i < count; ++i) out[i] = a + (b - a) * static_cast<double>(i) / (count - 1);
  } else if (mode == "log") {
    if (!(a > 0.0)) throw UsageError("log grid needs a positive start");
    const double la = std::log(a), lb = std::log(b);
    for (long i = 0; i < count; ++i) out[i] = std::exp(la + (lb - la) * static_cast<double>(i) / (count - 1));
  } else {
    throw UsageError("grid spacing must be lin or log, got '" + mode + "'");
  }
  out.front() = a;
  out.back() = b;
  for (std::size_t i = 1; i < out.size(); ++i)
    if (!(out[i] > out[i - 1])) throw UsageError("grid is not strictly increasing (too many points)");
  return out;
}

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os << content;
    os.flush();
    if (!os) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot move output into " + path + ": " + ec.message());
  }
}

unsigned thread_count() {
  if (const char* env = std::getenv("PERIOD_ATLAS_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 0) throw UsageError("PERIOD_ATLAS_THREADS must be a nonnegative integer");
    return v == 0 ? 1u : static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  std::vector<std::exception_ptr> errors(n);
  auto run = [&](std::size_t i) {
    try {
      body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) run(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) run(i);
      });
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace period_atlas::cli
