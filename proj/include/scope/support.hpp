#pragma once

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace scope {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Strictly increasing set of coordinate indices in [0, p).
///
/// Construction validates the invariant; every support the solvers build
/// goes through here, so downstream code can rely on sorted, unique, in-range
/// indices without re-checking.
class SupportSet {
 public:
  SupportSet() = default;

  /// Throws std::invalid_argument unless `indices` are strictly increasing and in [0, dim).
  SupportSet(std::vector<Index> indices, Index dim);

  /// Sorts and validates; throws on duplicates or out-of-range entries.
  static SupportSet from_unsorted(std::vector<Index> indices, Index dim);

  /// [0, dim).
  static SupportSet full(Index dim);

  Index dim() const { return dim_; }
  Index size() const { return static_cast<Index>(indices_.size()); }
  bool empty() const { return indices_.empty(); }

  const std::vector<Index>& indices() const { return indices_; }
  Index operator[](Index i) const { return indices_[static_cast<std::size_t>(i)]; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  bool contains(Index j) const;

  /// Indices of [0, dim) not in this set, ascending.
  std::vector<Index> complement() const;

  /// Swaps out `remove` and swaps in `add` (both must be valid w.r.t. membership).
  SupportSet exchange(std::span<const Index> remove, std::span<const Index> add) const;

  std::size_t intersection_size(const SupportSet& other) const;
  bool is_subset_of(const SupportSet& other) const;

  /// "0;4;7" (empty string for the empty set).
  std::string to_string() const;

  friend bool operator==(const SupportSet& a, const SupportSet& b) {
    return a.dim_ == b.dim_ && a.indices_ == b.indices_;
  }

 private:
  std::vector<Index> indices_;
  Index dim_ = 0;
};

/// Dense parameter vector together with the support it was fit on.
/// Off-support entries are exactly zero.
struct ParamVector {
  Vector values;
  SupportSet support;
  std::optional<double> objective;
  // False when the restricted solve stopped on max_iter or a stalled line search.
  bool subsolver_converged = true;

  /// All-zero vector on an empty support.
  static ParamVector zeros(Index dim);

  /// Values on `support`, in index order.
  Vector restricted_values() const;

  /// Scatters `coef` (ordered like `support`) into a dense vector of length support.dim().
  static ParamVector scatter(const SupportSet& support, const Vector& coef);
};

/// Indices of the t largest entries of `keys`, ordered by decreasing key; ties keep the lower index.
std::vector<Index> top_indices(std::span<const double> keys, std::span<const Index> candidates, Index t);

/// Indices of the t smallest entries, ordered by increasing key; ties keep the lower index.
std::vector<Index> bottom_indices(std::span<const double> keys, std::span<const Index> candidates, Index t);

/// Keeps the t largest-magnitude coordinates of v (ties: lower index) and zeroes the rest.
Vector hard_threshold(const Vector& v, Index t);

/// Support of hard_threshold(v, t), i.e. the kept coordinates.
SupportSet hard_threshold_support(const Vector& v, Index t);

/// Gathers v over `support`.
Vector gather(const Vector& v, const SupportSet& support);

}  // namespace scope
