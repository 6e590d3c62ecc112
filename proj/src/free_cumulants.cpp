#include "xcov/free_cumulants.hpp"

#include "xcov/errors.hpp"

#include <atomic>
#include <mutex>
#include <unordered_map>

namespace xcov {

struct MomentFunctional::Cache {
  std::mutex mutex;
  std::unordered_map<StarWord, ExactScalar, StarWordHash> values;
};

MomentFunctional::MomentFunctional(std::string name, Evaluator evaluator)
    : name_(std::move(name)), evaluator_(std::move(evaluator)), cache_(std::make_shared<Cache>()) {}

ExactScalar MomentFunctional::operator()(const StarWord& w) const {
  if (w.empty()) return 1;
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->values.find(w); it != cache_->values.end()) return it->second;
  }
  ExactScalar value = evaluator_(w);
  std::lock_guard lock(cache_->mutex);
  cache_->values.emplace(w, value);
  return value;
}

ExactScalar CumulantFunctional::operator()(const StarWord& w) const {
  if (w.empty()) throw DomainError("free cumulants start at order 1");
  return evaluator_(w);
}

namespace {

std::atomic<int> g_word_cap{kDefaultWordCap};

void check_word_length(const StarWord& w, const char* what) {
  if (static_cast<int>(w.size()) > word_cap()) {
    throw SizeLimitError(std::string(what) + ": word length " + std::to_string(w.size()) +
                         " exceeds cap " + std::to_string(word_cap()));
  }
}

void check_length(const NCPartition& p, const StarWord& w) {
  if (static_cast<std::size_t>(p.size()) != w.size()) {
    throw DomainError("partition size " + std::to_string(p.size()) + " does not match word length " +
                      std::to_string(w.size()));
  }
}

bool label_constant(const Block& block, const StarWord& w) {
  int label = w[static_cast<std::size_t>(block.front() - 1)].label;
  for (int pos : block) {
    if (w[static_cast<std::size_t>(pos - 1)].label != label) return false;
  }
  return true;
}

const CrossCovParams& lookup(const FamilyParams& params, int label) {
  auto it = params.find(label);
  if (it == params.end()) throw DomainError("no parameters for label " + std::to_string(label));
  return it->second;
}

const ExactScalar& lookup(const EllipticParams& params, int label) {
  auto it = params.find(label);
  if (it == params.end()) throw DomainError("no parameters for label " + std::to_string(label));
  return it->second;
}

constexpr int kPairingCap = 16;

const std::vector<PairPartition>& cached_nc_pairings(int two_k) {
  static std::mutex mutex;
  static std::map<int, std::vector<PairPartition>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(two_k);
  if (it == cache.end()) it = cache.emplace(two_k, enumerate_nc_pair(two_k)).first;
  return it->second;
}

}  // namespace

int word_cap() { return g_word_cap.load(); }

void set_word_cap(int cap) {
  if (cap < 1 || cap > enumeration_cap()) {
    throw DomainError("word cap must lie in 1..enumeration_cap()");
  }
  g_word_cap.store(cap);
}

void validate(const FamilyParams& params) {
  for (const auto& [label, p] : params) {
    if (label < 1) throw DomainError("labels must be positive");
    if (abs(p.rho) > 1) throw DomainError("|rho| must not exceed 1 for label " + std::to_string(label));
    if (p.y < 0) throw DomainError("y must be nonnegative for label " + std::to_string(label));
  }
}

void validate(const EllipticParams& params) {
  for (const auto& [label, r] : params) {
    if (label < 1) throw DomainError("labels must be positive");
    if (abs(r) > 1) throw DomainError("elliptic parameter must lie in [-1, 1]");
  }
}

ExactScalar phi_pi(const NCPartition& p, const StarWord& w, const MomentFunctional& phi) {
  check_length(p, w);
  ExactScalar product = 1;
  for (const auto& block : p.blocks()) {
    product *= phi(w.subword(block));
    if (product == 0) break;
  }
  return product;
}

ExactScalar kappa_pi(const NCPartition& p, const StarWord& w, const CumulantFunctional& kappa) {
  check_length(p, w);
  ExactScalar product = 1;
  for (const auto& block : p.blocks()) {
    product *= kappa(w.subword(block));
    if (product == 0) break;
  }
  return product;
}

ExactScalar moments_from_cumulants(const StarWord& w, const CumulantFunctional& kappa) {
  if (w.empty()) return 1;
  check_word_length(w, "moments_from_cumulants");
  ExactScalar sum = 0;
  for (const auto& p : nc_lattice(static_cast<int>(w.size())).elements()) sum += kappa_pi(p, w, kappa);
  return sum;
}

ExactScalar cumulants_from_moments(const StarWord& w, const MomentFunctional& phi) {
  if (w.empty()) throw DomainError("free cumulants start at order 1");
  check_word_length(w, "cumulants_from_moments");
  const auto& lattice = nc_lattice(static_cast<int>(w.size()));
  const std::size_t top = lattice.top_index();
  ExactScalar sum = 0;
  for (std::size_t s = 0; s < lattice.elements().size(); ++s) {
    std::int64_t mu = lattice.mobius(s, top);
    if (mu == 0) continue;
    sum += phi_pi(lattice.elements()[s], w, phi) * mu;
  }
  return sum;
}

unsigned s_statistic(std::span<const Exponent> etas) {
  if (etas.empty()) throw DomainError("s_statistic of an empty exponent list");
  unsigned count = 0;
  for (std::size_t u = 0; u < etas.size(); ++u) {
    if (etas[u] == etas[(u + 1) % etas.size()]) ++count;
  }
  return count;
}

unsigned t_block_statistic(const Block& block, std::span<const Exponent> etas) {
  std::vector<Exponent> restricted;
  restricted.reserve(block.size());
  for (int pos : block) {
    if (pos < 1 || static_cast<std::size_t>(pos) > etas.size()) {
      throw DomainError("block index " + std::to_string(pos) + " outside the exponent list");
    }
    restricted.push_back(etas[static_cast<std::size_t>(pos - 1)]);
  }
  return s_statistic(restricted);
}

ExactScalar cc_cumulant(std::span<const Exponent> etas, const ExactScalar& rho, const ExactScalar& y) {
  if (etas.empty()) throw DomainError("cc_cumulant of an empty word");
  if (abs(rho) > 1) throw DomainError("cc_cumulant: |rho| > 1");
  if (y <= 0) {
    throw DomainError("cc_cumulant: y must be positive; y = 0 is the centered elliptic regime");
  }
  const unsigned k = static_cast<unsigned>(etas.size());
  const unsigned s = s_statistic(etas);
  ExactScalar scale = ipow(y, k - 1);
  if (rho == 0) return s == 0 ? scale : ExactScalar(0);
  return scale * ipow(rho, s);
}

ExactScalar cc_family_moment(const StarWord& w, const FamilyParams& params) {
  if (w.empty()) return 1;
  check_word_length(w, "cc_family_moment");
  for (const auto& letter : w) {
    if (lookup(params, letter.label).y <= 0) {
      throw DomainError("cc_family_moment: y must be positive for every label");
    }
  }
  const auto etas = w.exponents();
  ExactScalar sum = 0;
  for (const auto& p : nc_lattice(static_cast<int>(w.size())).elements()) {
    ExactScalar term = 1;
    for (const auto& block : p.blocks()) {
      if (!label_constant(block, w)) {
        term = 0;
        break;
      }
      const auto& lp = lookup(params, w[static_cast<std::size_t>(block.front() - 1)].label);
      std::vector<Exponent> sub;
      sub.reserve(block.size());
      for (int pos : block) sub.push_back(etas[static_cast<std::size_t>(pos - 1)]);
      term *= cc_cumulant(sub, lp.rho, lp.y);
      if (term == 0) break;
    }
    sum += term;
  }
  return sum;
}

CumulantFunctional cc_cumulant_functional(FamilyParams params) {
  validate(params);
  return CumulantFunctional([params = std::move(params)](const StarWord& w) -> ExactScalar {
    const int label = w[0].label;
    for (const auto& letter : w) {
      if (letter.label != label) return 0;
    }
    const auto& lp = lookup(params, label);
    return cc_cumulant(w.exponents(), lp.rho, lp.y);
  });
}

ExactScalar cc_family_moment_generic(const StarWord& w, const FamilyParams& params) {
  return moments_from_cumulants(w, cc_cumulant_functional(params));
}

MomentFunctional cc_moment_functional(FamilyParams params) {
  validate(params);
  return MomentFunctional("cross-covariance", [params = std::move(params)](const StarWord& w) {
    return cc_family_moment(w, params);
  });
}

ExactScalar elliptic_cumulant(std::span<const Exponent> etas, const ExactScalar& r) {
  if (etas.size() != 2) return 0;
  return etas[0] == etas[1] ? r : ExactScalar(1);
}

ExactScalar elliptic_family_moment(const StarWord& w, const EllipticParams& params) {
  if (w.empty()) return 1;
  if (w.size() % 2 != 0) return 0;
  if (w.size() > static_cast<std::size_t>(kPairingCap)) {
    throw SizeLimitError("elliptic_family_moment: word length " + std::to_string(w.size()) +
                         " exceeds " + std::to_string(kPairingCap));
  }
  for (const auto& letter : w) lookup(params, letter.label);
  ExactScalar sum = 0;
  for (const auto& pairing : cached_nc_pairings(static_cast<int>(w.size()))) {
    ExactScalar term = 1;
    for (const auto& pair : pairing.blocks()) {
      const Letter& a = w[static_cast<std::size_t>(pair[0] - 1)];
      const Letter& b = w[static_cast<std::size_t>(pair[1] - 1)];
      if (a.label != b.label) {
        term = 0;
        break;
      }
      if (a.exp == b.exp) term *= params.at(a.label);
      if (term == 0) break;
    }
    sum += term;
  }
  return sum;
}

CumulantFunctional elliptic_cumulant_functional(EllipticParams params) {
  validate(params);
  return CumulantFunctional([params = std::move(params)](const StarWord& w) -> ExactScalar {
    const int label = w[0].label;
    for (const auto& letter : w) {
      if (letter.label != label) return 0;
    }
    return elliptic_cumulant(w.exponents(), lookup(params, label));
  });
}

ExactScalar elliptic_family_moment_generic(const StarWord& w, const EllipticParams& params) {
  return moments_from_cumulants(w, elliptic_cumulant_functional(params));
}

MomentFunctional elliptic_moment_functional(EllipticParams params) {
  validate(params);
  return MomentFunctional("elliptic", [params = std::move(params)](const StarWord& w) {
    return elliptic_family_moment(w, params);
  });
}

bool is_free_check(const StarWord& w, const MomentFunctional& phi) {
  if (w.labels().size() < 2) throw DomainError("is_free_check needs a word with at least two labels");
  return cumulants_from_moments(w, phi) == 0;
}

bool is_free_check(const StarWord& w, const FamilyParams& params) {
  return is_free_check(w, cc_moment_functional(params));
}

}  // namespace xcov
