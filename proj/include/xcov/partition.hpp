#pragma once

#include "xcov/rational.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <map>
#include <vector>

namespace xcov {

/// Elements are 1-based: a partition of size n covers {1, ..., n}.
using Block = std::vector<int>;

/// A set partition in canonical form: every block sorted ascending, blocks
/// ordered by their least element. Equality is structural.
class SetPartition {
 public:
  SetPartition() = default;

  /// Validates coverage and disjointness, then canonicalizes.
  /// Throws DomainError on an invalid block list.
  SetPartition(int n, std::vector<Block> blocks);

  static SetPartition singletons(int n);  // 0_n
  static SetPartition one_block(int n);   // 1_n

  int size() const { return n_; }
  std::size_t block_count() const { return blocks_.size(); }
  const std::vector<Block>& blocks() const { return blocks_; }

  /// labels()[i - 1] is the index of the block containing element i.
  const std::vector<int>& labels() const { return labels_; }

  std::string to_string() const;

  friend bool operator==(const SetPartition& a, const SetPartition& b) {
    return a.n_ == b.n_ && a.blocks_ == b.blocks_;
  }
  friend auto operator<=>(const SetPartition& a, const SetPartition& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.blocks_ <=> b.blocks_;
  }

 private:
  int n_ = 0;
  std::vector<Block> blocks_;
  std::vector<int> labels_;
};

/// True iff no a < b < c < d has a, c in one block and b, d in another.
bool is_noncrossing(const SetPartition& p);

/// Refinement order: every block of s lies inside some block of p.
/// Throws DomainError when the ground sets differ.
bool leq(const SetPartition& s, const SetPartition& p);

class NCPartition {
 public:
  NCPartition() = default;
  /// Throws DomainError if p has a crossing.
  explicit NCPartition(SetPartition p);
  NCPartition(int n, std::vector<Block> blocks) : NCPartition(SetPartition(n, std::move(blocks))) {}

  static NCPartition singletons(int n) { return NCPartition(SetPartition::singletons(n)); }
  static NCPartition one_block(int n) { return NCPartition(SetPartition::one_block(n)); }

  const SetPartition& partition() const { return base_; }
  int size() const { return base_.size(); }
  std::size_t block_count() const { return base_.block_count(); }
  const std::vector<Block>& blocks() const { return base_.blocks(); }
  std::string to_string() const { return base_.to_string(); }

  friend bool operator==(const NCPartition&, const NCPartition&) = default;
  friend auto operator<=>(const NCPartition& a, const NCPartition& b) { return a.base_ <=> b.base_; }

 private:
  SetPartition base_;
};

/// A partition of {1..2k} into pairs (not necessarily non-crossing).
class PairPartition {
 public:
  PairPartition() = default;
  /// Throws DomainError unless every block has exactly two elements.
  explicit PairPartition(SetPartition p);

  const SetPartition& partition() const { return base_; }
  int size() const { return base_.size(); }
  const std::vector<Block>& blocks() const { return base_.blocks(); }
  std::string to_string() const { return base_.to_string(); }

  friend bool operator==(const PairPartition&, const PairPartition&) = default;

 private:
  SetPartition base_;
};

bool leq(const NCPartition& s, const NCPartition& p);

/// Default cap on n for exhaustive NC(n) enumeration (Catalan(10) = 16796).
inline constexpr int kDefaultEnumerationCap = 10;
int enumeration_cap();
void set_enumeration_cap(int cap);

/// All of NC(n) in canonical form, ordered by decreasing block count.
/// Throws SizeLimitError outside 1 <= n <= enumeration_cap().
std::vector<NCPartition> enumerate_nc(int n);

/// All non-crossing pair partitions of {1..two_k}; two_k must be even, <= 16.
std::vector<PairPartition> enumerate_nc_pair(int two_k);

/// K(p) on the barred points 1̄..n̄ of the interleaved circle 1,1̄,2,2̄,...,n,n̄.
NCPartition kreweras_complement(const NCPartition& p);

/// Moebius function of the interval [s, p] in NC(n). Throws DomainError
/// unless s <= p.
std::int64_t mobius_nc(const NCPartition& s, const NCPartition& p);

/// C_m, exact; m <= 30.
BigInt catalan(int m);

/// Cached lattice NC(n). Instances are immutable apart from the internally
/// synchronized Moebius memo, so one lattice can be shared across threads.
class NCLattice {
 public:
  explicit NCLattice(int n);

  int size() const { return n_; }
  const std::vector<NCPartition>& elements() const { return elements_; }
  std::size_t index_of(const NCPartition& p) const;
  std::size_t top_index() const { return top_; }

  bool leq(std::size_t s, std::size_t p) const;

  /// mu(s, p) by mu(s,s) = 1, mu(s,p) = -sum_{s <= r < p} mu(s,r), memoized per s.
  std::int64_t mobius(std::size_t s, std::size_t p) const;

 private:
  const std::vector<std::int64_t>& mobius_row(std::size_t s) const;

  int n_;
  std::vector<NCPartition> elements_;
  std::map<std::vector<int>, std::size_t> index_;
  std::size_t top_ = 0;

  mutable std::mutex memo_mutex_;
  mutable std::vector<std::unique_ptr<std::vector<std::int64_t>>> mobius_rows_;
};

/// Shared lattice for NC(n), built on first use. Thread safe.
const NCLattice& nc_lattice(int n);

}  // namespace xcov
