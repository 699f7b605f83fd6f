#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "period_atlas/errors.hpp"
#include "period_atlas/exactalg/algorithms.hpp"

namespace period_atlas::exactalg {

namespace {

bool all_constant(const std::vector<std::vector<MPoly>>& m) {
  for (const auto& row : m) {
    for (const auto& x : row) {
      if (!x.is_constant()) return false;
    }
  }
  return true;
}

// Bareiss over Z after clearing row denominators.
Rational integer_determinant(const std::vector<std::vector<MPoly>>& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
  Rational scale = 1;  // det(m) = det(a) / scale
  for (std::size_t i = 0; i < n; ++i) {
    Integer den = 1;
    for (const auto& x : m[i]) {
      const Rational c = x.constant_term();
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    }
    for (std::size_t j = 0; j < n; ++j) {
      const Rational c = m[i][j].constant_term();
      a[i][j] = c.get_num() * (den / c.get_den());
    }
    scale *= den;
  }
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a[k][k] * a[i][j];
        mpz_submul(t.get_mpz_t(), a[i][k].get_mpz_t(), a[k][j].get_mpz_t());
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  Rational det(a[n - 1][n - 1]);
  if (sign < 0) det = -det;
  det /= scale;
  return det;
}

}  // namespace

namespace {

MPoly bareiss(std::vector<std::vector<MPoly>> m, const Deadline* deadline) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw std::invalid_argument("determinant: matrix is not square");
  }
  if (n == 0) return MPoly(1);
  if (all_constant(m)) return MPoly(integer_determinant(m));

  int sign = 1;
  MPoly prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (deadline != nullptr && std::chrono::steady_clock::now() > *deadline) {
      throw BudgetExceeded("determinant: wall-clock budget exceeded");
    }
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return {};
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MPoly t = m[k][k] * m[i][j];
        if (!m[i][k].is_zero() && !m[k][j].is_zero()) t -= m[i][k] * m[k][j];
        m[i][j] = exact_divide(t, prev);
      }
      m[i][k] = MPoly{};
    }
    prev = m[k][k];
  }
  MPoly det = m[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

}  // namespace

MPoly determinant(std::vector<std::vector<MPoly>> m) { return bareiss(std::move(m), nullptr); }

std::vector<std::vector<MPoly>> sylvester_matrix(const MPoly& p, const MPoly& q, Var v) {
  const auto a = p.coeffs_in(v);
  const auto b = q.coeffs_in(v);
  const std::size_t m = a.size() - 1;
  const std::size_t n = b.size() - 1;
  const std::size_t size = m + n;
  std::vector<std::vector<MPoly>> s(size, std::vector<MPoly>(size));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= m; ++j) s[i][i + j] = a[m - j];
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= n; ++j) s[n + i][i + j] = b[n - j];
  }
  return s;
}

MPoly resultant(const MPoly& p, const MPoly& q, Var v) {
  if (p.is_zero() || q.is_zero()) throw ZeroInput("resultant: zero input");
  return determinant(sylvester_matrix(p, q, v));
}

std::optional<MPoly> resultant_within(const MPoly& p, const MPoly& q, Var v,
                                      std::chrono::steady_clock::duration budget) {
  if (p.is_zero() || q.is_zero()) throw ZeroInput("resultant: zero input");
  const Deadline deadline = std::chrono::steady_clock::now() + budget;
  try {
    return bareiss(sylvester_matrix(p, q, v), &deadline);
  } catch (const BudgetExceeded&) {
    return std::nullopt;
  }
}

MPoly discriminant_from_resultant(const MPoly& res, const MPoly& p, Var v) {
  const unsigned n = p.degree(v);
  MPoly r = exact_divide(res, p.leading_coeff(v));
  return (n * (n - 1) / 2) % 2 == 1 ? -r : r;
}

MPoly discriminant(const MPoly& p, Var v) {
  if (p.is_zero()) throw ZeroInput("discriminant: zero input");
  if (p.degree(v) < 2) throw std::invalid_argument("discriminant: degree must be at least 2");
  return discriminant_from_resultant(resultant(p, p.derivative(v), v), p, v);
}

MPoly interpolate(const std::vector<Rational>& nodes, const std::vector<MPoly>& values,
                  Var param) {
  if (nodes.size() != values.size() || nodes.empty()) {
    throw std::invalid_argument("interpolate: need matching, nonempty node/value lists");
  }
  const std::size_t n = nodes.size();
  std::vector<MPoly> dd = values;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      const Rational gap = nodes[i] - nodes[i - j];
      if (gap == 0) throw std::invalid_argument("interpolate: repeated node");
      MPoly diff = dd[i] - dd[i - 1];
      diff *= Rational(1 / gap);
      dd[i] = std::move(diff);
    }
  }
  Exponent step{};
  step[static_cast<std::size_t>(param)] = 1;
  MPoly result = dd[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    MPoly shifted;
    shifted.add_scaled(result, 1, step);
    shifted.add_scaled(result, -nodes[i], Exponent{});
    shifted += dd[i];
    result = std::move(shifted);
  }
  return result;
}

MPoly interpolated_resultant(const MPoly& p, const MPoly& q, Var v, Var param,
                             const InterpolationOptions& opts) {
  if (p.is_zero() || q.is_zero()) throw ZeroInput("interpolated_resultant: zero input");
  if (param == v) throw std::invalid_argument("interpolated_resultant: param equals elimination variable");
  if (!p.uses(param) && !q.uses(param)) return resultant(p, q, v);

  const unsigned m = p.degree(v);
  const unsigned n = q.degree(v);
  const std::size_t bound = std::size_t{n} * p.degree(param) + std::size_t{m} * q.degree(param);
  const MPoly lcp = p.leading_coeff(v);
  const MPoly lcq = q.leading_coeff(v);

  // Nodes 0, 1, -1, 2, -2, ... skipping values where a leading coefficient vanishes.
  std::vector<Rational> nodes;
  for (long i = 0; nodes.size() < bound + 1; ++i) {
    const Rational x((i % 2 == 1) ? (i + 1) / 2 : -(i / 2));
    if (lcp.substitute(param, x).is_zero() || lcq.substitute(param, x).is_zero()) continue;
    nodes.push_back(x);
  }

  std::vector<MPoly> values(nodes.size());
  auto work = [&](std::size_t i) {
    values[i] = resultant(p.substitute(param, nodes[i]), q.substitute(param, nodes[i]), v);
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, nodes.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < nodes.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < nodes.size(); i = next++) {
          try {
            work(i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }
  return interpolate(nodes, values, param);
}

MPoly interpolated_discriminant(const MPoly& p, Var v, Var param, const InterpolationOptions& opts) {
  if (p.is_zero()) throw ZeroInput("interpolated_discriminant: zero input");
  const unsigned n = p.degree(v);
  if (n < 2) throw std::invalid_argument("interpolated_discriminant: degree must be at least 2");
  return discriminant_from_resultant(interpolated_resultant(p, p.derivative(v), v, param, opts), p, v);
}

}  // namespace period_atlas::exactalg
