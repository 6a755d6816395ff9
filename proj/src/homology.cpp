#include "spherecx/homology.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

namespace spherecx {

namespace {

using boost::multiprecision::abs;

// Swaps rows and columns so that (r, c) lands on (t, t).
void move_to(IntMatrix& m, std::size_t r, std::size_t c, std::size_t t) {
  if (r != t) {
    for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(r, j), m.at(t, j));
  }
  if (c != t) {
    for (std::size_t i = 0; i < m.rows; ++i) std::swap(m.at(i, c), m.at(i, t));
  }
}

// Smallest nonzero |entry| in the trailing block; stops at the first unit.
bool find_pivot(const IntMatrix& m, std::size_t t, std::size_t& r, std::size_t& c) {
  bool found = false;
  Integer best;
  for (std::size_t i = t; i < m.rows; ++i) {
    for (std::size_t j = t; j < m.cols; ++j) {
      const Integer& v = m.at(i, j);
      if (v.is_zero()) continue;
      Integer a = abs(v);
      if (!found || a < best) {
        found = true;
        best = a;
        r = i;
        c = j;
        if (best == 1) return true;
      }
    }
  }
  return found;
}

std::uint64_t mod_of(const Integer& v, std::uint64_t p) {
  Integer r = v % p;
  if (r < 0) r += p;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t out = 1;
  b %= p;
  while (e) {
    if (e & 1) out = out * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < m.rows; ++i) {
    if (rows[i].size() != m.cols) throw std::invalid_argument("ragged matrix");
    for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(entries.begin(), entries.end(), [](const Integer& v) { return v.is_zero(); });
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matrix shapes do not compose");
  IntMatrix out(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t k = 0; k < a.cols; ++k) {
      const Integer& x = a.at(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols; ++j) {
        if (!b.at(k, j).is_zero()) out.at(i, j) += x * b.at(k, j);
      }
    }
  }
  return out;
}

std::vector<ChainBoundary> boundary_matrices(const FlagComplex& c, int max_dim) {
  if (max_dim < 1) throw std::invalid_argument("boundary_matrices needs max_dim >= 1");
  const auto groups = cliques_by_size(c, static_cast<std::size_t>(max_dim) + 1);
  std::vector<ChainBoundary> out;
  for (int k = 1; k <= max_dim; ++k) {
    const auto& faces = groups[static_cast<std::size_t>(k) - 1];
    const auto& cells = groups[static_cast<std::size_t>(k)];
    std::map<Simplex, std::size_t> row_of;
    for (std::size_t i = 0; i < faces.size(); ++i) row_of.emplace(faces[i], i);
    ChainBoundary b{k, IntMatrix(faces.size(), cells.size())};
    for (std::size_t j = 0; j < cells.size(); ++j) {
      for (std::size_t pos = 0; pos < cells[j].size(); ++pos) {
        Simplex face = cells[j];
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(pos));
        b.matrix.at(row_of.at(face), j) = pos % 2 == 0 ? 1 : -1;
      }
    }
    out.push_back(std::move(b));
  }
  return out;
}

SmithForm smith_normal_form(IntMatrix m) {
  std::vector<Integer> diagonal;
  const std::size_t limit = std::min(m.rows, m.cols);
  for (std::size_t t = 0; t < limit; ++t) {
    std::size_t r = 0, c = 0;
    if (!find_pivot(m, t, r, c)) break;
    move_to(m, r, c, t);
    for (;;) {
      bool clean = true;
      std::vector<std::size_t> row_support;
      for (std::size_t j = t + 1; j < m.cols; ++j) {
        if (!m.at(t, j).is_zero()) row_support.push_back(j);
      }
      for (std::size_t i = t + 1; i < m.rows; ++i) {
        if (m.at(i, t).is_zero()) continue;
        Integer q = m.at(i, t) / m.at(t, t);
        m.at(i, t) -= q * m.at(t, t);
        for (std::size_t j : row_support) m.at(i, j) -= q * m.at(t, j);
        if (!m.at(i, t).is_zero()) clean = false;
      }
      std::vector<std::size_t> col_support;
      for (std::size_t i = t + 1; i < m.rows; ++i) {
        if (!m.at(i, t).is_zero()) col_support.push_back(i);
      }
      for (std::size_t j = t + 1; j < m.cols; ++j) {
        if (m.at(t, j).is_zero()) continue;
        Integer q = m.at(t, j) / m.at(t, t);
        m.at(t, j) -= q * m.at(t, t);
        for (std::size_t i : col_support) m.at(i, j) -= q * m.at(i, t);
        if (!m.at(t, j).is_zero()) clean = false;
      }
      if (clean) break;
      // A remainder survived: move the smallest entry of row/column t to the corner.
      std::size_t br = t, bc = t;
      Integer best = abs(m.at(t, t));
      for (std::size_t i = t + 1; i < m.rows; ++i) {
        if (!m.at(i, t).is_zero() && abs(m.at(i, t)) < best) {
          best = abs(m.at(i, t));
          br = i;
          bc = t;
        }
      }
      for (std::size_t j = t + 1; j < m.cols; ++j) {
        if (!m.at(t, j).is_zero() && abs(m.at(t, j)) < best) {
          best = abs(m.at(t, j));
          br = t;
          bc = j;
        }
      }
      move_to(m, br, bc, t);
    }
    diagonal.push_back(abs(m.at(t, t)));
  }
  // Diagonal to divisibility chain: (a, b) -> (gcd, lcm) over all pairs.
  for (std::size_t i = 0; i < diagonal.size(); ++i) {
    for (std::size_t j = i + 1; j < diagonal.size(); ++j) {
      Integer g = gcd(diagonal[i], diagonal[j]);
      Integer l = diagonal[i] / g * diagonal[j];
      diagonal[i] = g;
      diagonal[j] = l;
    }
  }
  return SmithForm{diagonal.size(), std::move(diagonal)};
}

std::size_t rank_mod_p(const IntMatrix& m, std::uint64_t p) {
  std::vector<std::vector<std::uint64_t>> a(m.rows, std::vector<std::uint64_t>(m.cols));
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) a[i][j] = mod_of(m.at(i, j), p);
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < m.rows && a[pivot][col] == 0) ++pivot;
    if (pivot == m.rows) continue;
    std::swap(a[pivot], a[rank]);
    const std::uint64_t inv = pow_mod(a[rank][col], p - 2, p);
    for (std::size_t i = rank + 1; i < m.rows; ++i) {
      if (a[i][col] == 0) continue;
      const std::uint64_t f = a[i][col] * inv % p;
      for (std::size_t j = col; j < m.cols; ++j) {
        a[i][j] = (a[i][j] + (p - f) * a[rank][j]) % p;
      }
    }
    ++rank;
  }
  return rank;
}

std::uint64_t random_large_prime(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(std::uint64_t{1} << 30, (std::uint64_t{1} << 31) - 1);
  std::uint64_t n = dist(rng) | 1;
  while (!is_prime(n)) n += 2;
  return n;
}

HomologyReport betti_numbers(const FlagComplex& c, int max_dim, std::uint64_t seed) {
  if (max_dim < 0) throw std::invalid_argument("betti_numbers needs max_dim >= 0");
  HomologyReport r;
  r.max_dim = max_dim;
  r.check_prime = random_large_prime(seed);
  const auto groups = cliques_by_size(c, static_cast<std::size_t>(max_dim) + 2);
  for (const auto& g : groups) r.simplex_counts.push_back(g.size());
  r.full = r.simplex_counts.back() == 0;

  const auto boundaries = boundary_matrices(c, max_dim + 1);
  std::vector<SmithForm> forms;
  r.boundary_ranks.push_back(0);
  for (const auto& b : boundaries) {
    forms.push_back(smith_normal_form(b.matrix));
    r.boundary_ranks.push_back(forms.back().rank);
    if (rank_mod_p(b.matrix, r.check_prime) != forms.back().rank) r.modular_ranks_agree = false;
  }
  for (int k = 0; k <= max_dim; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    long long b = static_cast<long long>(r.simplex_counts[ku]) - static_cast<long long>(r.boundary_ranks[ku]) -
                  static_cast<long long>(r.boundary_ranks[ku + 1]);
    r.betti.push_back(b);
    std::vector<Integer> tors;
    for (const Integer& f : forms[ku].invariant_factors) {
      if (f > 1) tors.push_back(f);
    }
    r.torsion.push_back(std::move(tors));
    r.euler_from_betti += (k % 2 == 0 ? 1 : -1) * b;
    r.euler_from_counts += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(r.simplex_counts[ku]);
  }
  return r;
}

nlohmann::json homology_to_json(const HomologyReport& r) {
  nlohmann::json dims = nlohmann::json::array();
  for (int k = 0; k <= r.max_dim; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    nlohmann::json torsion = nlohmann::json::array();
    for (const Integer& f : r.torsion[ku]) torsion.push_back(f.str());
    dims.push_back({{"dim", k},
                    {"simplices", r.simplex_counts[ku]},
                    {"boundary_rank", r.boundary_ranks[ku]},
                    {"betti", r.betti[ku]},
                    {"torsion", torsion}});
  }
  return {{"max_dim", r.max_dim},
          {"dimensions", dims},
          {"euler_from_betti", r.euler_from_betti},
          {"euler_from_counts", r.euler_from_counts},
          {"full", r.full},
          {"check_prime", r.check_prime},
          {"modular_ranks_agree", r.modular_ranks_agree}};
}

}  // namespace spherecx
