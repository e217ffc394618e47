#pragma once

#include <span>
#include <vector>

#include "eqgeo/bigint.hpp"
#include "eqgeo/group.hpp"

namespace eqgeo {

using IntVec = std::vector<BigInt>;
using IntMat = std::vector<IntVec>;  // row vectors

// Row Hermite normal form with zero rows dropped: pivots strictly move right,
// pivots are positive, entries above a pivot lie in [0, pivot). Canonical for
// the lattice spanned by the rows.
IntMat hnf(IntMat rows);

// Integer kernel {y in Z^N : sum y_i r_i = 0}, as a list of N-1 or N basis
// vectors.
IntMat row_kernel(std::span<const BigInt> r);

// Sublattice of Z^n cut out by congruences sum beta_i a_i = 0 (mod m);
// m = 0 means an exact equation. Starts as all of Z^n.
class KernelLattice {
 public:
  explicit KernelLattice(std::size_t n);
  KernelLattice(std::size_t n, IntMat basis);

  // Returns true if the lattice strictly shrank.
  bool constrain(std::span<const BigInt> a, const BigInt& modulus);
  bool annihilates(std::span<const BigInt> a, const BigInt& modulus) const;
  // First basis vector that violates the congruence, if any.
  std::optional<IntVec> violator(std::span<const BigInt> a, const BigInt& modulus) const;

  bool contains(std::span<const BigInt> v) const;
  const IntMat& basis() const { return basis_; }
  std::size_t dim() const { return n_; }
  std::size_t rank() const { return basis_.size(); }
  bool operator==(const KernelLattice& other) const { return n_ == other.n_ && basis_ == other.basis_; }

  json to_json() const;

 private:
  std::size_t n_;
  IntMat basis_;
};

// Applies every coordinate constraint of one group-valued row: the values
// coords[i] (one integer vector per variable) under the model's moduli.
bool constrain_by_model(KernelLattice& lattice, const std::vector<IntVec>& coords, const std::vector<BigInt>& moduli);
bool annihilates_model(const KernelLattice& lattice, const std::vector<IntVec>& coords,
                       const std::vector<BigInt>& moduli);
std::optional<IntVec> model_violator(const KernelLattice& lattice, const std::vector<IntVec>& coords,
                                     const std::vector<BigInt>& moduli);

// Solutions y in Z^n of sum_i a[r][i] y_i = b[r] (mod moduli[r]) for every
// row r: particular + span(lattice).
struct AffineIntSolution {
  bool solvable = false;
  IntVec particular;
  IntMat lattice;
};
AffineIntSolution solve_affine(const IntMat& a, const IntVec& b, const IntVec& moduli, std::size_t n);

json intmat_to_json(const IntMat& m);

}  // namespace eqgeo
