#include "dlat/field.hpp"

#include <numeric>

#include <fmt/format.h>

#include "dlat/errors.hpp"

namespace dlat {

std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q) {
  if (q < 2) return {0, 0};
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) { p = d; break; }
  if (p == 0) p = q;
  std::uint32_t k = 0;
  while (q % p == 0) { q /= p; ++k; }
  if (q != 1) return {0, 0};
  return {static_cast<std::uint32_t>(p), k};
}

namespace {

using Poly = std::vector<std::uint32_t>;  // low degree first

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint32_t r = 1, e = p - 2, b = a % p;
  while (e) {
    if (e & 1) r = static_cast<std::uint32_t>(std::uint64_t(r) * b % p);
    b = static_cast<std::uint32_t>(std::uint64_t(b) * b % p);
    e >>= 1;
  }
  return r;
}

// remainder of f modulo g over GF(p)
Poly poly_mod(Poly f, const Poly& g, std::uint32_t p) {
  trim(f);
  const auto dg = g.size() - 1;
  const auto lead_inv = inv_mod(g.back(), p);
  while (f.size() >= g.size()) {
    auto c = static_cast<std::uint32_t>(std::uint64_t(f.back()) * lead_inv % p);
    auto shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i < g.size(); ++i)
      f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + std::uint64_t(p - c) * g[i]) % p);
    trim(f);
  }
  return f;
}

bool irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t k = f.size() - 1;
  // trial division by monic polynomials of degree 1..k/2
  for (std::size_t d = 1; d <= k / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t m = 0; m < count; ++m) {
      Poly g(d + 1);
      auto t = m;
      for (std::size_t i = 0; i < d; ++i) { g[i] = t % p; t /= p; }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

FiniteField::FiniteField(std::uint32_t q) {
  auto [p, k] = prime_power(q);
  if (p == 0) throw NotPrimePowerError(fmt::format("{} is not a prime power", q));
  if (q > 65536) throw SizeLimitError(fmt::format("field order {} exceeds 2^16", q));
  p_ = p;
  k_ = k;
  q_ = q;
  if (k_ > 1) {
    // lexicographically smallest, comparing c_0 first
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < k_; ++i) total *= p_;
    for (std::uint64_t m = 0; m < total; ++m) {
      Poly f(k_ + 1);
      auto t = m;
      for (std::uint32_t i = 0; i < k_; ++i) {
        f[k_ - 1 - i] = t % p_;
        t /= p_;
      }
      f[k_] = 1;
      if (irreducible(f, p_)) { modulus_ = f; break; }
    }
  }
  if (q_ <= 256) {
    add_table_.resize(std::size_t(q_) * q_);
    for (Elem a = 0; a < q_; ++a)
      for (Elem b = 0; b < q_; ++b) {
        Elem r = 0, pw = 1, x = a, y = b;
        for (std::uint32_t i = 0; i < k_; ++i) {
          r += ((x % p_ + y % p_) % p_) * pw;
          x /= p_;
          y /= p_;
          pw *= p_;
        }
        add_table_[std::size_t(a) * q_ + b] = static_cast<std::uint16_t>(r);
      }
  }
  log_.assign(q_, 0);
  exp_.assign(q_ - 1, 0);
  for (Elem g = (q_ == 2 ? 1 : 2); g < q_; ++g) {
    Elem x = 1;
    std::uint32_t n = 0;
    do {
      exp_[n++] = x;
      x = slow_mul(x, g);
    } while (x != 1 && n < q_ - 1);
    if (x == 1 && n == q_ - 1) break;
  }
  for (std::uint32_t i = 0; i < q_ - 1; ++i) log_[exp_[i]] = i;
}

FiniteField::Elem FiniteField::slow_mul(Elem a, Elem b) const {
  if (k_ == 1) return static_cast<Elem>(std::uint64_t(a) * b % p_);
  Poly fa(k_), fb(k_);
  for (std::uint32_t i = 0; i < k_; ++i) {
    fa[i] = a % p_; a /= p_;
    fb[i] = b % p_; b /= p_;
  }
  Poly prod(2 * k_, 0);
  for (std::uint32_t i = 0; i < k_; ++i)
    for (std::uint32_t j = 0; j < k_; ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t(fa[i]) * fb[j]) % p_);
  auto r = poly_mod(prod, modulus_, p_);
  Elem out = 0, pw = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    if (i < r.size()) out += r[i] * pw;
    pw *= p_;
  }
  return out;
}

FiniteField::Elem FiniteField::add(Elem a, Elem b) const {
  if (!add_table_.empty()) return add_table_[std::size_t(a) * q_ + b];
  if (k_ == 1) return (a + b) % p_;
  if (p_ == 2) return a ^ b;
  Elem r = 0, pw = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    r += ((a % p_ + b % p_) % p_) * pw;
    a /= p_;
    b /= p_;
    pw *= p_;
  }
  return r;
}

FiniteField::Elem FiniteField::neg(Elem a) const {
  if (k_ == 1) return (p_ - a % p_) % p_;
  Elem r = 0, pw = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    r += ((p_ - a % p_) % p_) * pw;
    a /= p_;
    pw *= p_;
  }
  return r;
}

FiniteField::Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw InvariantError("inverse of zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

FiniteField::Elem FiniteField::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return exp_[(std::uint64_t(log_[a]) * (e % (q_ - 1))) % (q_ - 1)];
}

std::uint32_t FiniteField::order(Elem a) const {
  if (a == 0) throw InvariantError("order of zero");
  return (q_ - 1) / std::gcd(log_[a], q_ - 1);
}

}  // namespace dlat
