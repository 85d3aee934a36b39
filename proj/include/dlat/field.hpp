#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dlat {

// GF(q), q = p^k <= 2^16. Element e encodes the polynomial whose
// coefficient of x^i is the i-th base-p digit of e.
class FiniteField {
 public:
  using Elem = std::uint32_t;

  explicit FiniteField(std::uint32_t q);  // NotPrimePowerError, SizeLimitError

  std::uint32_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t q() const { return q_; }
  // Coefficients c_0..c_k of the monic modulus (empty for prime fields).
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Elem add(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
  }
  Elem inv(Elem a) const;  // InvariantError on 0
  Elem pow(Elem a, std::uint64_t e) const;
  Elem frobenius(Elem a) const { return pow(a, p_); }
  Elem generator() const { return exp_.size() > 1 ? exp_[1] : 1; }
  // Order of a in the multiplicative group.
  std::uint32_t order(Elem a) const;

 private:
  Elem slow_mul(Elem a, Elem b) const;

  std::uint32_t p_ = 0, k_ = 0, q_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> log_, exp_;
  std::vector<std::uint16_t> add_table_;  // q <= 256 only
};

// p^k = q with p prime, or {0,0}.
std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q);

}  // namespace dlat
