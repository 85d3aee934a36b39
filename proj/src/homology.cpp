#include <algorithm>
#include <cstdlib>
#include <unordered_map>

#include <boost/functional/hash.hpp>
#include <gmpxx.h>

#include "dlat/budget.hpp"
#include "dlat/errors.hpp"
#include "dlat/topology.hpp"

namespace dlat {

namespace {

struct Overflow {};

// Scalar helpers: int64 with overflow detection, mpz exact.
inline bool is_unit(std::int64_t a) { return a == 1 || a == -1; }
inline bool is_unit(const mpz_class& a) { return a == 1 || a == -1; }
inline bool is_zero(std::int64_t a) { return a == 0; }
inline bool is_zero(const mpz_class& a) { return sgn(a) == 0; }
inline std::int64_t sub_mul(std::int64_t a, std::int64_t f, std::int64_t b) {
  std::int64_t p, r;
  if (__builtin_mul_overflow(f, b, &p) || __builtin_sub_overflow(a, p, &r)) throw Overflow{};
  return r;
}
inline mpz_class sub_mul(const mpz_class& a, const mpz_class& f, const mpz_class& b) { return a - f * b; }
inline mpz_class to_mpz(std::int64_t a) { return mpz_class(static_cast<long>(a)); }
inline mpz_class to_mpz(const mpz_class& a) { return a; }

template <class T>
using Row = std::vector<std::pair<std::uint32_t, T>>;  // sorted by column

struct SmithResult {
  std::size_t rank = 0;
  std::vector<mpz_class> divisors;  // nonzero elementary divisors > 1
};

// row_a -= f * row_b
template <class T>
void row_axpy(Row<T>& a, const T& f, const Row<T>& b, std::vector<std::vector<std::uint32_t>>& col_rows,
              std::uint32_t a_id) {
  Row<T> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(std::move(a[i++]));
    } else if (i == a.size() || b[j].first < a[i].first) {
      T v = sub_mul(T(0), f, b[j].second);
      col_rows[b[j].first].push_back(a_id);
      out.emplace_back(b[j].first, std::move(v));
      ++j;
    } else {
      T v = sub_mul(a[i].second, f, b[j].second);
      if (!is_zero(v)) out.emplace_back(a[i].first, std::move(v));
      ++i, ++j;
    }
  }
  a = std::move(out);
}

template <class T>
const T* entry(const Row<T>& r, std::uint32_t c) {
  auto it = std::lower_bound(r.begin(), r.end(), c, [](const auto& e, std::uint32_t v) { return e.first < v; });
  return it != r.end() && it->first == c ? &it->second : nullptr;
}

// Dense Smith normal form of the residual block.
void dense_smith(std::vector<std::vector<mpz_class>> m, SmithResult& res) {
  const std::size_t R = m.size(), C = R ? m[0].size() : 0;
  std::size_t t = 0;
  while (t < R && t < C) {
    // smallest nonzero entry in the active block
    std::size_t pr = R, pc = C;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j)
        if (sgn(m[i][j]) != 0 && (pr == R || abs(m[i][j]) < abs(m[pr][pc]))) pr = i, pc = j;
    if (pr == R) break;
    std::swap(m[t], m[pr]);
    for (auto& row : m) std::swap(row[t], row[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (sgn(m[i][t]) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m[i][t].get_mpz_t(), m[t][t].get_mpz_t());
        for (std::size_t j = t; j < C; ++j) m[i][j] -= q * m[t][j];
        if (sgn(m[i][t]) != 0) {
          std::swap(m[t], m[i]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (sgn(m[t][j]) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m[t][j].get_mpz_t(), m[t][t].get_mpz_t());
        for (std::size_t i = t; i < R; ++i) m[i][j] -= q * m[i][t];
        if (sgn(m[t][j]) != 0) {
          for (auto& row : m) std::swap(row[t], row[j]);
          clean = false;
        }
      }
      if (clean) {
        // the pivot must divide the rest of the block
        for (std::size_t i = t + 1; i < R && clean; ++i)
          for (std::size_t j = t + 1; j < C; ++j)
            if (!mpz_divisible_p(m[i][j].get_mpz_t(), m[t][t].get_mpz_t())) {
              for (std::size_t k = t; k < C; ++k) m[t][k] += m[i][k];
              clean = false;
              break;
            }
      }
    }
    mpz_class d = abs(m[t][t]);
    if (d != 1) res.divisors.push_back(d);
    ++res.rank;
    ++t;
  }
}

// Rank and elementary divisors of a sparse integer matrix given by rows.
template <class T>
SmithResult smith(std::vector<Row<T>> rows, std::size_t ncols) {
  SmithResult res;
  std::vector<std::vector<std::uint32_t>> col_rows(ncols);
  for (std::uint32_t r = 0; r < rows.size(); ++r)
    for (auto& [c, v] : rows[r]) col_rows[c].push_back(r);
  std::vector<char> row_alive(rows.size(), 1), col_alive(ncols, 1);
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::uint32_t c = 0; c < ncols; ++c) {
      if (!col_alive[c]) continue;
      auto& cr = col_rows[c];
      std::sort(cr.begin(), cr.end());
      cr.erase(std::unique(cr.begin(), cr.end()), cr.end());
      std::vector<std::uint32_t> live;
      for (auto r : cr)
        if (row_alive[r] && entry(rows[r], c)) live.push_back(r);
      cr = live;
      if (live.empty()) {
        col_alive[c] = 0;
        continue;
      }
      std::uint32_t piv = UINT32_MAX;
      for (auto r : live)
        if (is_unit(*entry(rows[r], c)) && (piv == UINT32_MAX || rows[r].size() < rows[piv].size())) piv = r;
      if (piv == UINT32_MAX) continue;
      const T pv = *entry(rows[piv], c);
      const Row<T> prow = rows[piv];
      for (auto r : live) {
        if (r == piv) continue;
        T f = *entry(rows[r], c);
        if (pv != T(1)) f = sub_mul(T(0), f, T(1));  // f / pv with pv = -1
        row_axpy(rows[r], f, prow, col_rows, r);
      }
      row_alive[piv] = 0;
      col_alive[c] = 0;
      ++res.rank;
      progress = true;
    }
  }
  // residual block without unit pivots
  std::vector<std::uint32_t> rr, cc;
  std::vector<std::int64_t> col_pos(ncols, -1);
  for (std::uint32_t r = 0; r < rows.size(); ++r)
    if (row_alive[r] && !rows[r].empty()) {
      bool any = false;
      for (auto& [c, v] : rows[r])
        if (col_alive[c]) any = true;
      if (any) rr.push_back(r);
    }
  for (auto r : rr)
    for (auto& [c, v] : rows[r])
      if (col_alive[c] && col_pos[c] < 0) {
        col_pos[c] = static_cast<std::int64_t>(cc.size());
        cc.push_back(c);
      }
  if (!rr.empty()) {
    std::vector<std::vector<mpz_class>> dense(rr.size(), std::vector<mpz_class>(cc.size()));
    for (std::size_t i = 0; i < rr.size(); ++i)
      for (auto& [c, v] : rows[rr[i]])
        if (col_alive[c]) dense[i][static_cast<std::size_t>(col_pos[c])] = to_mpz(v);
    dense_smith(std::move(dense), res);
  }
  std::sort(res.divisors.begin(), res.divisors.end());
  return res;
}

SmithResult smith_auto(const std::vector<Row<std::int64_t>>& rows, std::size_t ncols) {
  try {
    return smith<std::int64_t>(rows, ncols);
  } catch (const Overflow&) {
    std::vector<Row<mpz_class>> big(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (auto& [c, v] : rows[r]) big[r].emplace_back(c, to_mpz(v));
    return smith<mpz_class>(std::move(big), ncols);
  }
}

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const { return boost::hash_range(s.begin(), s.end()); }
};

// cells[k] lists the k-dimensional cells; faces are found by deletion.
HomologyResult homology_of_cells(std::vector<std::vector<Simplex>> cells, Ring ring) {
  HomologyResult h;
  h.ring = ring;
  while (!cells.empty() && cells.back().empty()) cells.pop_back();
  const int dim = static_cast<int>(cells.size()) - 1;
  h.dim = dim;
  std::vector<std::unordered_map<Simplex, std::uint32_t, SimplexHash>> index(cells.size());
  for (std::size_t k = 0; k < cells.size(); ++k)
    for (std::uint32_t i = 0; i < cells[k].size(); ++i) index[k].emplace(cells[k][i], i);

  // rank[k] = rank of d_k : C_k -> C_{k-1}, k = 0..dim (d_0 is the augmentation)
  std::vector<std::size_t> rank(cells.size() + 1, 0);
  std::vector<std::vector<mpz_class>> divisors(cells.size() + 1);
  std::vector<std::vector<Row<std::int64_t>>> boundary(cells.size());
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k == 0) {
      rank[0] = cells[0].empty() ? 0 : 1;
      continue;
    }
    auto& rows = boundary[k];
    rows.assign(cells[k - 1].size(), {});
    for (std::uint32_t j = 0; j < cells[k].size(); ++j) {
      const auto& s = cells[k][j];
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex f;
        f.reserve(s.size() - 1);
        for (std::size_t t = 0; t < s.size(); ++t)
          if (t != i) f.push_back(s[t]);
        rows[index[k - 1].at(f)].emplace_back(j, i % 2 ? -1 : 1);
      }
    }
    for (auto& r : rows) std::sort(r.begin(), r.end());
  }
  // d_{k-1} d_k = 0
  for (std::size_t k = 2; k < cells.size(); ++k) {
    // column j of d_k as (row, coef); compose with d_{k-1} given by rows
    std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> dk_cols(cells[k].size());
    for (std::uint32_t r = 0; r < boundary[k].size(); ++r)
      for (auto& [c, v] : boundary[k][r]) dk_cols[c].emplace_back(r, v);
    std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> dk1_cols(cells[k - 1].size());
    for (std::uint32_t r = 0; r < boundary[k - 1].size(); ++r)
      for (auto& [c, v] : boundary[k - 1][r]) dk1_cols[c].emplace_back(r, v);
    for (std::size_t j = 0; j < dk_cols.size(); ++j) {
      std::unordered_map<std::uint32_t, std::int64_t> acc;
      for (auto& [mid, a] : dk_cols[j])
        for (auto& [r, b] : dk1_cols[mid]) acc[r] += a * b;
      for (auto& [r, v] : acc)
        if (v != 0) throw InvariantError("boundary of a boundary is nonzero");
    }
  }
  for (std::size_t k = 1; k < cells.size(); ++k) {
    auto s = smith_auto(boundary[k], cells[k].size());
    rank[k] = s.rank;
    divisors[k] = std::move(s.divisors);
  }
  // degrees -1..dim; C_{-1} = Z
  auto c = [&](int k) -> std::int64_t { return k == -1 ? 1 : static_cast<std::int64_t>(cells[k].size()); };
  auto rk = [&](int k) -> std::int64_t {  // rank of d_k, d_{-1} = 0
    if (k < 0 || k > dim) return 0;
    return static_cast<std::int64_t>(rank[k]);
  };
  std::int64_t euler_cells = 0, euler_betti = 0;
  for (int k = -1; k <= dim; ++k) {
    std::int64_t b = c(k) - rk(k) - rk(k + 1);
    if (b) h.betti[k] = b;
    euler_cells += (k % 2 == 0 ? 1 : -1) * c(k);
    euler_betti += (k % 2 == 0 ? 1 : -1) * b;
    if (ring == Ring::Z && k + 1 <= dim && k + 1 >= 1 && !divisors[k + 1].empty()) {
      for (auto& d : divisors[k + 1]) h.torsion[k].push_back(d.get_str());
    }
  }
  if (euler_cells != euler_betti) throw InvariantError("Euler characteristic mismatch in homology");
  h.euler = euler_cells;
  return h;
}

}  // namespace

std::string ring_name(Ring r) { return r == Ring::Z ? "Z" : "Q"; }

std::optional<Ring> parse_ring(const std::string& s) {
  if (s == "Z") return Ring::Z;
  if (s == "Q") return Ring::Q;
  return std::nullopt;
}

std::int64_t HomologyResult::rank(int degree) const {
  auto it = betti.find(degree);
  return it == betti.end() ? 0 : it->second;
}

bool HomologyResult::concentrated_in(int d) const {
  for (auto& [k, b] : betti)
    if (k != d) return false;
  // torsion anywhere breaks either concentration or freeness
  for (auto& [k, t] : torsion)
    if (!t.empty()) return false;
  return true;
}

nlohmann::json homology_to_json(const HomologyResult& h) {
  nlohmann::json betti = nlohmann::json::object(), torsion = nlohmann::json::object();
  for (auto& [k, b] : h.betti) betti[std::to_string(k)] = b;
  for (auto& [k, t] : h.torsion) torsion[std::to_string(k)] = t;
  nlohmann::json j = {{"ring", ring_name(h.ring)}, {"betti", betti}, {"torsion", torsion}, {"euler", h.euler}};
  j["spherical"] = h.spherical ? nlohmann::json(*h.spherical) : nlohmann::json(nullptr);
  j["cm"] = h.cm ? nlohmann::json(*h.cm) : nlohmann::json(nullptr);
  if (h.certificate) j["certificate"] = *h.certificate;
  return j;
}

HomologyResult homology(const SimplicialComplex& k, Ring ring) {
  std::vector<std::vector<Simplex>> cells(static_cast<std::size_t>(k.dim() + 1));
  k.for_each_face([&](const Simplex& s) { cells[s.size() - 1].push_back(s); });
  for (auto& c : cells) std::sort(c.begin(), c.end());
  return homology_of_cells(std::move(cells), ring);
}

HomologyResult homology(const Poset& p, Ring ring) {
  std::vector<std::vector<Simplex>> cells;
  Budget budget(default_budget(), "order complex");
  Simplex cur;
  std::function<void(std::size_t)> grow = [&](std::size_t x) {
    budget.tick();
    cur.push_back(static_cast<Index>(x));
    if (cells.size() < cur.size()) cells.resize(cur.size());
    cells[cur.size() - 1].push_back(cur);
    for (auto y : p.up(x))
      if (y != x) grow(y);
    cur.pop_back();
  };
  for (std::size_t x = 0; x < p.size(); ++x) grow(x);
  return homology_of_cells(std::move(cells), ring);
}

}  // namespace dlat
