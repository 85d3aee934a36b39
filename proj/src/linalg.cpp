#include "dlat/linalg.hpp"

#include <fmt/format.h>

#include "dlat/errors.hpp"

namespace dlat {

Mat rref(const FiniteField& f, Mat m) {
  if (m.empty()) return m;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    auto inv = f.inv(m[r][c]);
    for (auto& e : m[r]) e = f.mul(e, inv);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      auto factor = f.neg(m[i][c]);
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = f.add(m[i][j], f.mul(factor, m[r][j]));
    }
    ++r;
  }
  m.resize(r);
  return m;
}

std::size_t rank(const FiniteField& f, const Mat& rows) { return rref(f, rows).size(); }

Mat null_space(const FiniteField& f, const Mat& rows, std::size_t n) {
  Mat r = rows.empty() ? Mat{} : rref(f, rows);
  std::vector<long> pivot_of_col(n, -1);
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t c = 0; c < n; ++c)
      if (r[i][c] != 0) { pivot_of_col[c] = static_cast<long>(i); break; }
  Mat basis;
  for (std::size_t freec = 0; freec < n; ++freec) {
    if (pivot_of_col[freec] >= 0) continue;
    Vec v(n, 0);
    v[freec] = 1;
    for (std::size_t c = 0; c < n; ++c)
      if (pivot_of_col[c] >= 0) v[c] = f.neg(r[pivot_of_col[c]][freec]);
    basis.push_back(v);
  }
  return basis.empty() ? basis : rref(f, basis);
}

std::uint64_t gaussian_binomial(std::uint64_t q, std::size_t n, std::size_t d) {
  if (d > n) return 0;
  // product formula, exact at every step
  std::uint64_t num = 1, den = 1;
  for (std::size_t i = 0; i < d; ++i) {
    std::uint64_t a = 1, b = 1;
    for (std::size_t j = 0; j < n - i; ++j) a *= q;
    for (std::size_t j = 0; j < i + 1; ++j) b *= q;
    num *= (a - 1);
    den *= (b - 1);
  }
  return num / den;
}

std::vector<Mat> all_subspaces(const FiniteField& f, std::size_t n, std::size_t limit) {
  const std::uint32_t q = f.q();
  std::uint64_t total = 0;
  for (std::size_t d = 0; d <= n; ++d) total += gaussian_binomial(q, n, d);
  if (total > limit)
    throw SizeLimitError(fmt::format("GF({})^{} has {} subspaces, limit {}", q, n, total, limit));
  std::vector<Mat> out;
  out.reserve(total);
  for (std::size_t d = 0; d <= n; ++d) {
    std::vector<std::size_t> piv(d);
    for (std::size_t i = 0; i < d; ++i) piv[i] = i;
    while (true) {
      // free slots: (row, col) with col > piv[row], col not a pivot
      std::vector<std::pair<std::size_t, std::size_t>> slots;
      std::vector<char> is_piv(n, 0);
      for (auto c : piv) is_piv[c] = 1;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t c = piv[i] + 1; c < n; ++c)
          if (!is_piv[c]) slots.emplace_back(i, c);
      std::vector<std::uint32_t> digits(slots.size(), 0);
      while (true) {
        Mat m(d, Vec(n, 0));
        for (std::size_t i = 0; i < d; ++i) m[i][piv[i]] = 1;
        for (std::size_t s = 0; s < slots.size(); ++s) m[slots[s].first][slots[s].second] = digits[s];
        out.push_back(std::move(m));
        std::size_t s = 0;
        while (s < digits.size() && ++digits[s] == q) digits[s++] = 0;
        if (s == digits.size()) break;
      }
      // next pivot combination
      long i = static_cast<long>(d) - 1;
      while (i >= 0 && piv[i] == n - d + static_cast<std::size_t>(i)) --i;
      if (i < 0) break;
      ++piv[i];
      for (std::size_t j = i + 1; j < d; ++j) piv[j] = piv[j - 1] + 1;
    }
  }
  return out;
}

std::uint64_t encode_vector(const Vec& v, std::uint32_t q) {
  std::uint64_t code = 0;
  for (auto it = v.rbegin(); it != v.rend(); ++it) code = code * q + *it;
  return code;
}

Vec decode_vector(std::uint64_t code, std::uint32_t q, std::size_t n) {
  Vec v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = static_cast<FiniteField::Elem>(code % q);
    code /= q;
  }
  return v;
}

Bits span_points(const FiniteField& f, const Mat& basis, std::size_t n) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= f.q();
  Bits pts(total);
  const std::size_t d = basis.size();
  std::vector<std::uint32_t> coef(d, 0);
  while (true) {
    Vec v(n, 0);
    for (std::size_t i = 0; i < d; ++i)
      if (coef[i])
        for (std::size_t j = 0; j < n; ++j) v[j] = f.add(v[j], f.mul(coef[i], basis[i][j]));
    pts.set(encode_vector(v, f.q()));
    std::size_t s = 0;
    while (s < d && ++coef[s] == f.q()) coef[s++] = 0;
    if (s == d) break;
  }
  return pts;
}

std::string vector_label(const Vec& v, std::uint32_t q) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (q > 10 && i > 0) s += '.';
    s += std::to_string(v[i]);
  }
  return s;
}

std::string subspace_label(const Mat& basis, std::uint32_t q) {
  std::string s = "<";
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (i) s += ',';
    s += vector_label(basis[i], q);
  }
  return s + ">";
}

}  // namespace dlat
