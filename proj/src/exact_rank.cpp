#include "gcm/exact_rank.hpp"

#include <optional>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "gcm/error.hpp"

namespace gcm {

namespace {

struct Overflow {};

struct CheckedI64 {
  static std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
};

// Bareiss: after step k every entry of the trailing block is a (k+1)x(k+1)
// minor, so the division by the previous pivot is exact.
template <typename T, typename Ops>
std::size_t bareiss_rank(std::vector<std::vector<T>> m, Ops ops) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m[0].size();
  T prev_pivot = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    const T p = m[rank][c];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const T lead = m[r][c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        m[r][j] = ops.sub(ops.mul(p, m[r][j]), ops.mul(lead, m[rank][j])) / prev_pivot;
      }
      m[r][c] = 0;
    }
    prev_pivot = p;
    ++rank;
  }
  return rank;
}

struct PlainOps {
  template <typename T>
  static T mul(const T& a, const T& b) { return a * b; }
  template <typename T>
  static T sub(const T& a, const T& b) { return a - b; }
};

}  // namespace

std::size_t exact_rank(const std::vector<std::vector<std::int64_t>>& rows) {
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) throw InputError("ragged matrix");
  }
  // Eliminate along the shorter dimension.
  std::vector<std::vector<std::int64_t>> m = rows;
  if (!m.empty() && m[0].size() < m.size()) {
    std::vector<std::vector<std::int64_t>> t(m[0].size(), std::vector<std::int64_t>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m[0].size(); ++j) t[j][i] = m[i][j];
    }
    m = std::move(t);
  }
  try {
    return bareiss_rank(m, CheckedI64{});
  } catch (const Overflow&) {
    using boost::multiprecision::cpp_int;
    std::vector<std::vector<cpp_int>> big(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) big[i].assign(m[i].begin(), m[i].end());
    return bareiss_rank(std::move(big), PlainOps{});
  }
}

}  // namespace gcm
