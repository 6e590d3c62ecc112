#include "xcov/partition.hpp"

#include "xcov/errors.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

namespace xcov {

SetPartition::SetPartition(int n, std::vector<Block> blocks) : n_(n), blocks_(std::move(blocks)) {
  if (n < 0) throw DomainError("partition size must be nonnegative");
  labels_.assign(static_cast<std::size_t>(n), -1);
  for (auto& block : blocks_) {
    if (block.empty()) throw DomainError("partition has an empty block");
    std::sort(block.begin(), block.end());
  }
  std::sort(blocks_.begin(), blocks_.end(),
            [](const Block& a, const Block& b) { return a.front() < b.front(); });
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    for (int element : blocks_[b]) {
      if (element < 1 || element > n) {
        throw DomainError("partition element " + std::to_string(element) + " outside 1.." +
                          std::to_string(n));
      }
      auto& label = labels_[static_cast<std::size_t>(element - 1)];
      if (label != -1) throw DomainError("partition blocks are not disjoint");
      label = static_cast<int>(b);
    }
  }
  if (std::find(labels_.begin(), labels_.end(), -1) != labels_.end()) {
    throw DomainError("partition blocks do not cover 1..n");
  }
}

SetPartition SetPartition::singletons(int n) {
  std::vector<Block> blocks;
  for (int i = 1; i <= n; ++i) blocks.push_back({i});
  return SetPartition(n, std::move(blocks));
}

SetPartition SetPartition::one_block(int n) {
  Block all;
  for (int i = 1; i <= n; ++i) all.push_back(i);
  return SetPartition(n, n > 0 ? std::vector<Block>{all} : std::vector<Block>{});
}

std::string SetPartition::to_string() const {
  std::ostringstream out;
  out << '{';
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (b) out << ',';
    out << '{';
    for (std::size_t i = 0; i < blocks_[b].size(); ++i) {
      if (i) out << ',';
      out << blocks_[b][i];
    }
    out << '}';
  }
  out << '}';
  return out.str();
}

bool is_noncrossing(const SetPartition& p) {
  // Blocks are sorted, so a crossing exists iff two blocks interleave as
  // a < b < c < d. Scan each pair of blocks with a two-pointer merge and
  // count alternations of membership.
  const auto& blocks = p.blocks();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t j = i + 1; j < blocks.size(); ++j) {
      const Block& a = blocks[i];
      const Block& b = blocks[j];
      std::size_t ia = 0, ib = 0;
      int switches = 0;
      int last = -1;
      while (ia < a.size() || ib < b.size()) {
        int which;
        if (ib == b.size() || (ia < a.size() && a[ia] < b[ib])) {
          which = 0;
          ++ia;
        } else {
          which = 1;
          ++ib;
        }
        if (last != -1 && which != last) ++switches;
        last = which;
      }
      // a..b..a..b needs at least three switches.
      if (switches >= 3) return false;
    }
  }
  return true;
}

bool leq(const SetPartition& s, const SetPartition& p) {
  if (s.size() != p.size()) throw DomainError("leq: partitions of different ground sets");
  const auto& plabels = p.labels();
  for (const auto& block : s.blocks()) {
    int target = plabels[static_cast<std::size_t>(block.front() - 1)];
    for (int e : block) {
      if (plabels[static_cast<std::size_t>(e - 1)] != target) return false;
    }
  }
  return true;
}

bool leq(const NCPartition& s, const NCPartition& p) { return leq(s.partition(), p.partition()); }

NCPartition::NCPartition(SetPartition p) : base_(std::move(p)) {
  if (!is_noncrossing(base_)) throw DomainError("partition " + base_.to_string() + " is crossing");
}

PairPartition::PairPartition(SetPartition p) : base_(std::move(p)) {
  for (const auto& block : base_.blocks()) {
    if (block.size() != 2) throw DomainError("pair partition has a block of size != 2");
  }
}

namespace {

std::atomic<int> g_enumeration_cap{kDefaultEnumerationCap};

using BlockList = std::vector<Block>;

void shift(BlockList& blocks, int offset) {
  for (auto& b : blocks)
    for (auto& e : b) e += offset;
}

// All non-crossing partitions of {1..m}, as raw block lists. The block of 1
// splits the remaining points into gaps that are partitioned independently.
const std::vector<BlockList>& nc_blocks(int m) {
  static std::mutex mutex;
  static std::vector<std::unique_ptr<std::vector<BlockList>>> memo;
  {
    std::lock_guard lock(mutex);
    if (static_cast<std::size_t>(m) < memo.size() && memo[static_cast<std::size_t>(m)]) {
      return *memo[static_cast<std::size_t>(m)];
    }
  }
  std::vector<BlockList> result;
  if (m == 0) {
    result.push_back({});
  } else {
    // Bit i of mask set: element i + 2 joins the block of 1.
    for (unsigned mask = 0; mask < (1u << (m - 1)); ++mask) {
      Block first{1};
      for (int i = 0; i < m - 1; ++i)
        if (mask & (1u << i)) first.push_back(i + 2);
      // Gaps between consecutive members of the first block, and the tail.
      std::vector<std::pair<int, int>> gaps;  // (offset, length)
      for (std::size_t k = 0; k < first.size(); ++k) {
        int lo = first[k];
        int hi = k + 1 < first.size() ? first[k + 1] : m + 1;
        if (hi - lo - 1 > 0) gaps.emplace_back(lo, hi - lo - 1);
      }
      std::vector<BlockList> partial{{first}};
      for (auto [offset, length] : gaps) {
        const auto& sub = nc_blocks(length);
        std::vector<BlockList> next;
        next.reserve(partial.size() * sub.size());
        for (const auto& head : partial) {
          for (auto tail : sub) {
            shift(tail, offset);
            BlockList merged = head;
            merged.insert(merged.end(), tail.begin(), tail.end());
            next.push_back(std::move(merged));
          }
        }
        partial = std::move(next);
      }
      for (auto& blocks : partial) result.push_back(std::move(blocks));
    }
  }
  std::lock_guard lock(mutex);
  if (memo.size() <= static_cast<std::size_t>(m)) memo.resize(static_cast<std::size_t>(m) + 1);
  if (!memo[static_cast<std::size_t>(m)]) {
    memo[static_cast<std::size_t>(m)] = std::make_unique<std::vector<BlockList>>(std::move(result));
  }
  return *memo[static_cast<std::size_t>(m)];
}

void nc_pairings(int m, std::vector<BlockList>& out) {
  if (m == 0) {
    out.push_back({});
    return;
  }
  for (int partner = 2; partner <= m; partner += 2) {
    std::vector<BlockList> inner, outer;
    nc_pairings(partner - 2, inner);
    nc_pairings(m - partner, outer);
    for (auto in : inner) {
      shift(in, 1);
      for (auto ou : outer) {
        shift(ou, partner);
        BlockList blocks{{1, partner}};
        blocks.insert(blocks.end(), in.begin(), in.end());
        blocks.insert(blocks.end(), ou.begin(), ou.end());
        out.push_back(std::move(blocks));
      }
    }
  }
}

}  // namespace

int enumeration_cap() { return g_enumeration_cap.load(); }

void set_enumeration_cap(int cap) {
  if (cap < 1 || cap > 14) throw DomainError("enumeration cap must lie in 1..14");
  g_enumeration_cap.store(cap);
}

std::vector<NCPartition> enumerate_nc(int n) {
  if (n < 1 || n > enumeration_cap()) {
    throw SizeLimitError("enumerate_nc: n = " + std::to_string(n) + " outside 1.." +
                         std::to_string(enumeration_cap()));
  }
  std::vector<NCPartition> result;
  for (const auto& blocks : nc_blocks(n)) result.emplace_back(SetPartition(n, blocks));
  std::stable_sort(result.begin(), result.end(), [](const NCPartition& a, const NCPartition& b) {
    if (a.block_count() != b.block_count()) return a.block_count() > b.block_count();
    return a < b;
  });
  return result;
}

std::vector<PairPartition> enumerate_nc_pair(int two_k) {
  if (two_k < 2 || two_k % 2 != 0) {
    throw DomainError("enumerate_nc_pair: size must be a positive even integer, got " +
                      std::to_string(two_k));
  }
  if (two_k > 16) throw SizeLimitError("enumerate_nc_pair: size above 16");
  std::vector<BlockList> raw;
  nc_pairings(two_k, raw);
  std::vector<PairPartition> result;
  result.reserve(raw.size());
  for (auto& blocks : raw) result.emplace_back(SetPartition(two_k, std::move(blocks)));
  return result;
}

NCPartition kreweras_complement(const NCPartition& p) {
  // Walk the interleaved circle: from barred point i step to i + 1, then
  // back along the block of i + 1 to its predecessor j; the next barred
  // point of the complement block is j. As permutations K = p^{-1} * gamma.
  const int n = p.size();
  std::vector<int> prev(static_cast<std::size_t>(n) + 1);
  for (const auto& block : p.blocks()) {
    for (std::size_t k = 0; k < block.size(); ++k) {
      int predecessor = block[(k + block.size() - 1) % block.size()];
      prev[static_cast<std::size_t>(block[k])] = predecessor;
    }
  }
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  std::vector<Block> blocks;
  for (int start = 1; start <= n; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    Block cycle;
    int i = start;
    while (!seen[static_cast<std::size_t>(i)]) {
      seen[static_cast<std::size_t>(i)] = true;
      cycle.push_back(i);
      i = prev[static_cast<std::size_t>(i % n + 1)];
    }
    blocks.push_back(std::move(cycle));
  }
  return NCPartition(n, std::move(blocks));
}

BigInt catalan(int m) {
  if (m < 0) throw DomainError("catalan: negative index");
  if (m > 30) throw SizeLimitError("catalan: index above 30");
  return binomial(static_cast<unsigned>(2 * m), static_cast<unsigned>(m)) / (m + 1);
}

NCLattice::NCLattice(int n) : n_(n), elements_(enumerate_nc(n)) {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    index_.emplace(elements_[i].partition().labels(), i);
  }
  top_ = index_of(NCPartition::one_block(n));
  mobius_rows_.resize(elements_.size());
}

std::size_t NCLattice::index_of(const NCPartition& p) const {
  if (p.size() != n_) throw DomainError("partition does not belong to this lattice");
  return index_.at(p.partition().labels());
}

bool NCLattice::leq(std::size_t s, std::size_t p) const {
  return xcov::leq(elements_[s].partition(), elements_[p].partition());
}

const std::vector<std::int64_t>& NCLattice::mobius_row(std::size_t s) const {
  std::lock_guard lock(memo_mutex_);
  if (mobius_rows_[s]) return *mobius_rows_[s];

  // Elements are ordered by decreasing block count, so every r < q in the
  // lattice appears before q.
  auto row = std::make_unique<std::vector<std::int64_t>>(elements_.size(), 0);
  std::vector<std::size_t> above;
  for (std::size_t r = 0; r < elements_.size(); ++r) {
    if (!leq(s, r)) continue;
    std::int64_t value = 0;
    if (r == s) {
      value = 1;
    } else {
      for (std::size_t q : above) {
        if (leq(q, r)) value -= (*row)[q];
      }
    }
    (*row)[r] = value;
    above.push_back(r);
  }
  mobius_rows_[s] = std::move(row);
  return *mobius_rows_[s];
}

std::int64_t NCLattice::mobius(std::size_t s, std::size_t p) const {
  if (!leq(s, p)) throw DomainError("mobius: s is not below p");
  return mobius_row(s)[p];
}

const NCLattice& nc_lattice(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<NCLattice>> lattices;
  std::lock_guard lock(mutex);
  auto& slot = lattices[n];
  if (!slot) slot = std::make_unique<NCLattice>(n);
  return *slot;
}

std::int64_t mobius_nc(const NCPartition& s, const NCPartition& p) {
  if (s.size() != p.size()) throw DomainError("mobius: partitions of different ground sets");
  if (!leq(s, p)) throw DomainError("mobius: " + s.to_string() + " is not below " + p.to_string());
  const auto& lattice = nc_lattice(s.size());
  return lattice.mobius(lattice.index_of(s), lattice.index_of(p));
}

}  // namespace xcov
