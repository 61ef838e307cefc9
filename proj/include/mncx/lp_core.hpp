#pragma once

#include <span>
#include <utility>
#include <vector>

#include "mncx/errors.hpp"

namespace mncx {

// Ambient sequence-space parameters shared by every computation.
struct SpaceSpec {
  double p = 2.0;             // exponent, 1 < p < inf (closed forms need p >= 2)
  int truncation_dim = 4096;  // highest coordinate index finite realizations may use
  double eq_tol = 1e-9;       // comparison tolerance for membership/distinctness

  void validate() const;
};

// Conjugate exponent q with 1/p + 1/q = 1.
double dual_exponent(double p);

// Finitely supported point of the sequence space. Entries are kept sorted by
// coordinate index with exact zeros removed, so equality is structural and
// tail families at large indices cost nothing.
class SparseVector {
 public:
  using Entry = std::pair<int, double>;

  SparseVector() = default;

  // Unit multiple of a basis direction; index must be >= 1.
  static SparseVector basis(int index, double coeff = 1.0);
  // Dense coefficient list starting at coordinate index 1.
  static SparseVector from_dense(std::span<const double> coeffs);

  double coeff(int index) const;
  void set(int index, double value);

  const std::vector<Entry>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  int max_index() const { return entries_.empty() ? 0 : entries_.back().first; }
  std::size_t support_size() const { return entries_.size(); }

  SparseVector& operator+=(const SparseVector& rhs);
  SparseVector& operator-=(const SparseVector& rhs);
  SparseVector& operator*=(double k);

  friend SparseVector operator+(SparseVector a, const SparseVector& b) {
    a += b;
    return a;
  }
  friend SparseVector operator-(SparseVector a, const SparseVector& b) {
    a -= b;
    return a;
  }
  friend SparseVector operator*(double k, SparseVector v) {
    v *= k;
    return v;
  }
  friend SparseVector operator*(SparseVector v, double k) {
    v *= k;
    return v;
  }

  bool operator==(const SparseVector&) const = default;

 private:
  std::vector<Entry> entries_;
};

// p-norm of a finitely supported vector; rejects p <= 1.
double norm(const SparseVector& v, double p);
double distance(const SparseVector& u, const SparseVector& v, double p);
double dot(const SparseVector& u, const SparseVector& v);
// Componentwise comparison within tol.
bool approx_equal(const SparseVector& u, const SparseVector& v, double tol);

}  // namespace mncx
