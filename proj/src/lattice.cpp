#include "eqgeo/lattice.hpp"

#include <algorithm>

#include "eqgeo/errors.hpp"

namespace eqgeo {

namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void axpy(IntVec& y, const BigInt& t, const IntVec& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= t * x[i];
}

BigInt dot(std::span<const BigInt> u, std::span<const BigInt> v) {
  BigInt s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

bool vanishes(const BigInt& v, const BigInt& modulus) { return modulus == 0 ? v == 0 : floor_mod(v, modulus) == 0; }

}  // namespace

IntMat hnf(IntMat rows) {
  if (rows.empty()) return rows;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    // Euclid on column c among rows r.. until one nonzero entry remains.
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        axpy(rows[i], rows[i][c] / rows[r][c], rows[r]);
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (r >= rows.size() || rows[r][c] == 0) continue;
    if (rows[r][c] < 0)
      for (auto& x : rows[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) axpy(rows[i], floor_div(rows[i][c], rows[r][c]), rows[r]);
    ++r;
  }
  rows.resize(r);
  return rows;
}

IntMat row_kernel(std::span<const BigInt> r) {
  const std::size_t n = r.size();
  IntVec v(r.begin(), r.end());
  IntMat u(n, IntVec(n, 0));  // u[j] is column j of the unimodular transform
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  while (true) {
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i)
      if (v[i] != 0 && (p == n || abs(v[i]) < abs(v[p]))) p = i;
    if (p == n) break;
    bool done = true;
    for (std::size_t q = 0; q < n; ++q) {
      if (q == p || v[q] == 0) continue;
      BigInt t = v[q] / v[p];
      v[q] -= t * v[p];
      axpy(u[q], t, u[p]);
      if (v[q] != 0) done = false;
    }
    if (done) break;
  }
  IntMat kernel;
  for (std::size_t q = 0; q < n; ++q)
    if (v[q] == 0) kernel.push_back(u[q]);
  return kernel;
}

KernelLattice::KernelLattice(std::size_t n) : n_(n) {
  for (std::size_t i = 0; i < n; ++i) {
    IntVec e(n, 0);
    e[i] = 1;
    basis_.push_back(std::move(e));
  }
}

KernelLattice::KernelLattice(std::size_t n, IntMat basis) : n_(n), basis_(hnf(std::move(basis))) {}

bool KernelLattice::annihilates(std::span<const BigInt> a, const BigInt& modulus) const {
  return !violator(a, modulus).has_value();
}

std::optional<IntVec> KernelLattice::violator(std::span<const BigInt> a, const BigInt& modulus) const {
  for (const auto& b : basis_)
    if (!vanishes(dot(b, a), modulus)) return b;
  return std::nullopt;
}

bool KernelLattice::constrain(std::span<const BigInt> a, const BigInt& modulus) {
  if (a.size() != n_) throw ArityError("constraint has the wrong dimension");
  if (annihilates(a, modulus)) return false;
  IntVec row;
  for (const auto& b : basis_) row.push_back(modulus == 0 ? dot(b, a) : BigInt(floor_mod(dot(b, a), modulus)));
  const std::size_t k = row.size();
  if (modulus != 0) row.push_back(modulus);
  IntMat next;
  for (const auto& y : row_kernel(row)) {
    IntVec v(n_, 0);
    for (std::size_t j = 0; j < k; ++j)
      if (y[j] != 0)
        for (std::size_t i = 0; i < n_; ++i) v[i] += y[j] * basis_[j][i];
    next.push_back(std::move(v));
  }
  basis_ = hnf(std::move(next));
  return true;
}

bool KernelLattice::contains(std::span<const BigInt> v) const {
  IntVec r(v.begin(), v.end());
  for (const auto& b : basis_) {
    auto c = std::find_if(b.begin(), b.end(), [](const BigInt& x) { return x != 0; }) - b.begin();
    if (r[c] % b[c] != 0) return false;
    axpy(r, r[c] / b[c], b);
  }
  return std::all_of(r.begin(), r.end(), [](const BigInt& x) { return x == 0; });
}

json KernelLattice::to_json() const { return intmat_to_json(basis_); }

json intmat_to_json(const IntMat& m) {
  json j = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& x : row) {
      if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        r.push_back(static_cast<std::int64_t>(x));
      else
        r.push_back(to_string(x));
    }
    j.push_back(r);
  }
  return j;
}

namespace {

IntVec column(const std::vector<IntVec>& coords, std::size_t k) {
  IntVec a;
  a.reserve(coords.size());
  for (const auto& c : coords) a.push_back(c[k]);
  return a;
}

}  // namespace

bool constrain_by_model(KernelLattice& lattice, const std::vector<IntVec>& coords, const std::vector<BigInt>& moduli) {
  bool shrank = false;
  for (std::size_t k = 0; k < moduli.size(); ++k) shrank = lattice.constrain(column(coords, k), moduli[k]) || shrank;
  return shrank;
}

bool annihilates_model(const KernelLattice& lattice, const std::vector<IntVec>& coords,
                       const std::vector<BigInt>& moduli) {
  return !model_violator(lattice, coords, moduli).has_value();
}

std::optional<IntVec> model_violator(const KernelLattice& lattice, const std::vector<IntVec>& coords,
                                     const std::vector<BigInt>& moduli) {
  for (std::size_t k = 0; k < moduli.size(); ++k)
    if (auto v = lattice.violator(column(coords, k), moduli[k])) return v;
  return std::nullopt;
}

AffineIntSolution solve_affine(const IntMat& a, const IntVec& b, const IntVec& moduli, std::size_t n) {
  // Homogenize with z in front: b z - sum a_i y_i = 0, then look for z = 1.
  KernelLattice lat(n + 1);
  for (std::size_t r = 0; r < a.size(); ++r) {
    IntVec row(n + 1);
    row[0] = b[r];
    for (std::size_t i = 0; i < n; ++i) row[i + 1] = -a[r][i];
    lat.constrain(row, moduli[r]);
  }
  AffineIntSolution sol;
  const auto& basis = lat.basis();
  std::size_t start = 0;
  if (!basis.empty() && basis[0][0] != 0) {
    if (basis[0][0] != 1) return sol;
    sol.solvable = true;
    sol.particular.assign(basis[0].begin() + 1, basis[0].end());
    start = 1;
  } else {
    return sol;
  }
  for (std::size_t i = start; i < basis.size(); ++i) sol.lattice.emplace_back(basis[i].begin() + 1, basis[i].end());
  return sol;
}

}  // namespace eqgeo
