#include "scope/support.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace scope {

SupportSet::SupportSet(std::vector<Index> indices, Index dim) : indices_(std::move(indices)), dim_(dim) {
  if (dim < 0) throw std::invalid_argument("SupportSet: negative dimension");
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    const Index j = indices_[i];
    if (j < 0 || j >= dim) {
      throw std::invalid_argument("SupportSet: index " + std::to_string(j) + " outside [0, " +
                                  std::to_string(dim) + ")");
    }
    if (i > 0 && indices_[i - 1] >= j) {
      throw std::invalid_argument("SupportSet: indices must be strictly increasing");
    }
  }
}

SupportSet SupportSet::from_unsorted(std::vector<Index> indices, Index dim) {
  std::sort(indices.begin(), indices.end());
  return SupportSet(std::move(indices), dim);
}

SupportSet SupportSet::full(Index dim) {
  std::vector<Index> idx(static_cast<std::size_t>(dim));
  std::iota(idx.begin(), idx.end(), Index{0});
  return SupportSet(std::move(idx), dim);
}

bool SupportSet::contains(Index j) const {
  return std::binary_search(indices_.begin(), indices_.end(), j);
}

std::vector<Index> SupportSet::complement() const {
  std::vector<Index> out;
  out.reserve(static_cast<std::size_t>(dim_ - size()));
  auto it = indices_.begin();
  for (Index j = 0; j < dim_; ++j) {
    if (it != indices_.end() && *it == j) {
      ++it;
    } else {
      out.push_back(j);
    }
  }
  return out;
}

SupportSet SupportSet::exchange(std::span<const Index> remove, std::span<const Index> add) const {
  std::vector<Index> removed(remove.begin(), remove.end());
  std::sort(removed.begin(), removed.end());
  std::vector<Index> kept;
  kept.reserve(indices_.size());
  std::set_difference(indices_.begin(), indices_.end(), removed.begin(), removed.end(), std::back_inserter(kept));
  if (kept.size() + removed.size() != indices_.size()) {
    throw std::invalid_argument("SupportSet::exchange: removed index not in the set");
  }
  for (Index j : add) {
    if (contains(j)) throw std::invalid_argument("SupportSet::exchange: added index already in the set");
    kept.push_back(j);
  }
  return from_unsorted(std::move(kept), dim_);
}

std::size_t SupportSet::intersection_size(const SupportSet& other) const {
  std::size_t count = 0;
  auto a = indices_.begin();
  auto b = other.indices_.begin();
  while (a != indices_.end() && b != other.indices_.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++count;
      ++a;
      ++b;
    }
  }
  return count;
}

bool SupportSet::is_subset_of(const SupportSet& other) const {
  return intersection_size(other) == indices_.size();
}

std::string SupportSet::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(indices_[i]);
  }
  return out;
}

ParamVector ParamVector::zeros(Index dim) {
  ParamVector pv;
  pv.values = Vector::Zero(dim);
  pv.support = SupportSet({}, dim);
  return pv;
}

Vector ParamVector::restricted_values() const { return gather(values, support); }

ParamVector ParamVector::scatter(const SupportSet& support, const Vector& coef) {
  if (coef.size() != support.size()) throw std::invalid_argument("ParamVector::scatter: size mismatch");
  ParamVector pv;
  pv.values = Vector::Zero(support.dim());
  for (Index i = 0; i < support.size(); ++i) pv.values[support[i]] = coef[i];
  pv.support = support;
  return pv;
}

namespace {

template <class Better>
std::vector<Index> ranked(std::span<const double> keys, std::span<const Index> candidates, Index t, Better better) {
  if (t < 0 || t > static_cast<Index>(candidates.size())) {
    throw std::invalid_argument("ranking: requested " + std::to_string(t) + " of " +
                                std::to_string(candidates.size()) + " candidates");
  }
  std::vector<Index> order(candidates.begin(), candidates.end());
  auto cmp = [&](Index a, Index b) {
    const double ka = keys[static_cast<std::size_t>(a)];
    const double kb = keys[static_cast<std::size_t>(b)];
    if (better(ka, kb)) return true;
    if (better(kb, ka)) return false;
    return a < b;
  };
  std::partial_sort(order.begin(), order.begin() + t, order.end(), cmp);
  order.resize(static_cast<std::size_t>(t));
  return order;
}

}  // namespace

std::vector<Index> top_indices(std::span<const double> keys, std::span<const Index> candidates, Index t) {
  return ranked(keys, candidates, t, std::greater<double>{});
}

std::vector<Index> bottom_indices(std::span<const double> keys, std::span<const Index> candidates, Index t) {
  return ranked(keys, candidates, t, std::less<double>{});
}

SupportSet hard_threshold_support(const Vector& v, Index t) {
  if (t < 1 || t > v.size()) {
    throw std::invalid_argument("hard_threshold: t=" + std::to_string(t) + " outside [1, " +
                                std::to_string(v.size()) + "]");
  }
  std::vector<double> mags(static_cast<std::size_t>(v.size()));
  for (Index j = 0; j < v.size(); ++j) mags[static_cast<std::size_t>(j)] = std::abs(v[j]);
  const auto all = SupportSet::full(v.size());
  return SupportSet::from_unsorted(top_indices(mags, all.indices(), t), v.size());
}

Vector hard_threshold(const Vector& v, Index t) {
  const auto keep = hard_threshold_support(v, t);
  Vector out = Vector::Zero(v.size());
  for (Index j : keep) out[j] = v[j];
  return out;
}

Vector gather(const Vector& v, const SupportSet& support) {
  Vector out(support.size());
  for (Index i = 0; i < support.size(); ++i) out[i] = v[support[i]];
  return out;
}

}  // namespace scope
