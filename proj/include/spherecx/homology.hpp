#pragma once

// Integer simplicial homology of flag complexes.

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "spherecx/flag_complex.hpp"

namespace spherecx {

using Integer = boost::multiprecision::cpp_int;

/// Dense row-major integer matrix.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Integer> entries;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);

  Integer& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  const Integer& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
  bool is_zero() const;
};

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

/// Boundary map from k-simplices (columns) to (k-1)-simplices (rows), both
/// in lexicographic order of sorted vertex lists. Removing position i from a
/// simplex contributes (-1)^i.
struct ChainBoundary {
  int dim = 0;
  IntMatrix matrix;
};

/// Boundary matrices for dimensions 1..max_dim. Throws std::invalid_argument
/// when max_dim < 1.
std::vector<ChainBoundary> boundary_matrices(const FlagComplex& c, int max_dim);

struct SmithForm {
  std::size_t rank = 0;
  std::vector<Integer> invariant_factors;  // nonzero diagonal, each divides the next
};

SmithForm smith_normal_form(IntMatrix m);

/// Rank over Z/p. p must be a prime below 2^31.
std::size_t rank_mod_p(const IntMatrix& m, std::uint64_t p);

/// A prime in [2^30, 2^31) picked deterministically from the seed.
std::uint64_t random_large_prime(std::uint64_t seed);

struct HomologyReport {
  int max_dim = 0;
  std::vector<std::size_t> simplex_counts;     // dims 0..max_dim+1
  std::vector<std::size_t> boundary_ranks;     // rank of boundary k for k = 0..max_dim+1
  std::vector<long long> betti;                // dims 0..max_dim
  std::vector<std::vector<Integer>> torsion;   // dims 0..max_dim, factors > 1
  long long euler_from_betti = 0;
  long long euler_from_counts = 0;             // alternating sum of counts 0..max_dim
  bool full = false;                           // no simplices above max_dim
  std::uint64_t check_prime = 0;
  bool modular_ranks_agree = true;
};

/// Throws std::invalid_argument when max_dim < 0.
HomologyReport betti_numbers(const FlagComplex& c, int max_dim, std::uint64_t seed = 1);

nlohmann::json homology_to_json(const HomologyReport& r);

}  // namespace spherecx
