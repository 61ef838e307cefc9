#include "mncx/lp_core.hpp"

#include <algorithm>
#include <cmath>

namespace mncx {

void SpaceSpec::validate() const {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw DomainError("space exponent p must satisfy 1 < p < inf");
  }
  if (truncation_dim < 2) {
    throw DomainError("truncation_dim must be at least 2");
  }
  if (!(eq_tol > 0.0)) {
    throw DomainError("comparison tolerance must be positive");
  }
}

double dual_exponent(double p) {
  if (!(p > 1.0)) throw DomainError("dual exponent needs p > 1");
  return p / (p - 1.0);
}

SparseVector SparseVector::basis(int index, double coeff) {
  SparseVector v;
  v.set(index, coeff);
  return v;
}

SparseVector SparseVector::from_dense(std::span<const double> coeffs) {
  SparseVector v;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0.0) v.entries_.emplace_back(static_cast<int>(i) + 1, coeffs[i]);
  }
  return v;
}

double SparseVector::coeff(int index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, int i) { return e.first < i; });
  if (it != entries_.end() && it->first == index) return it->second;
  return 0.0;
}

void SparseVector::set(int index, double value) {
  if (index < 1) throw DomainError("coordinate indices start at 1");
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, int i) { return e.first < i; });
  if (it != entries_.end() && it->first == index) {
    if (value == 0.0) {
      entries_.erase(it);
    } else {
      it->second = value;
    }
  } else if (value != 0.0) {
    entries_.insert(it, {index, value});
  }
}

namespace {

// Merge rhs into lhs with coefficient factor; drops exact zeros.
void merge_add(std::vector<SparseVector::Entry>& lhs,
               const std::vector<SparseVector::Entry>& rhs, double factor) {
  std::vector<SparseVector::Entry> out;
  out.reserve(lhs.size() + rhs.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < lhs.size() || j < rhs.size()) {
    if (j == rhs.size() || (i < lhs.size() && lhs[i].first < rhs[j].first)) {
      out.push_back(lhs[i++]);
    } else if (i == lhs.size() || rhs[j].first < lhs[i].first) {
      double v = factor * rhs[j].second;
      if (v != 0.0) out.emplace_back(rhs[j].first, v);
      ++j;
    } else {
      double v = lhs[i].second + factor * rhs[j].second;
      if (v != 0.0) out.emplace_back(lhs[i].first, v);
      ++i;
      ++j;
    }
  }
  lhs = std::move(out);
}

}  // namespace

SparseVector& SparseVector::operator+=(const SparseVector& rhs) {
  merge_add(entries_, rhs.entries_, 1.0);
  return *this;
}

SparseVector& SparseVector::operator-=(const SparseVector& rhs) {
  merge_add(entries_, rhs.entries_, -1.0);
  return *this;
}

SparseVector& SparseVector::operator*=(double k) {
  if (k == 0.0) {
    entries_.clear();
    return *this;
  }
  for (auto& e : entries_) e.second *= k;
  return *this;
}

double norm(const SparseVector& v, double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw DomainError("p-norm requires 1 < p < inf");
  }
  double sum = 0.0;
  for (const auto& [idx, c] : v.entries()) {
    (void)idx;
    sum += std::pow(std::abs(c), p);
  }
  if (sum == 0.0) return 0.0;
  return std::pow(sum, 1.0 / p);
}

double distance(const SparseVector& u, const SparseVector& v, double p) {
  return norm(u - v, p);
}

double dot(const SparseVector& u, const SparseVector& v) {
  const auto& a = u.entries();
  const auto& b = v.entries();
  double sum = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) {
      ++i;
    } else if (b[j].first < a[i].first) {
      ++j;
    } else {
      sum += a[i].second * b[j].second;
      ++i;
      ++j;
    }
  }
  return sum;
}

bool approx_equal(const SparseVector& u, const SparseVector& v, double tol) {
  const auto& a = u.entries();
  const auto& b = v.entries();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      if (std::abs(a[i].second) > tol) return false;
      ++i;
    } else if (i == a.size() || b[j].first < a[i].first) {
      if (std::abs(b[j].second) > tol) return false;
      ++j;
    } else {
      if (std::abs(a[i].second - b[j].second) > tol) return false;
      ++i;
      ++j;
    }
  }
  return true;
}

}  // namespace mncx
