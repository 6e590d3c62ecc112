#pragma once

#include "xcov/partition.hpp"
#include "xcov/rational.hpp"
#include "xcov/star_word.hpp"

#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>

namespace xcov {

/// Limit parameters of one cross-covariance matrix C_l = X_l Y_l^T / n_l:
/// entry correlation rho in [-1, 1] and aspect ratio y = lim p / n_l.
struct CrossCovParams {
  ExactScalar rho;
  ExactScalar y;
};

/// Per-label parameters; labels are the keys.
using FamilyParams = std::map<int, CrossCovParams>;

/// Per-label elliptic parameter (kappa_2(e, e) for that label).
using EllipticParams = std::map<int, ExactScalar>;

/// A tracial state on the *-algebra generated by the family, evaluated on
/// monomials. The empty word always evaluates to 1. Values are memoized in a
/// cache shared by copies of the functional and guarded by a mutex.
class MomentFunctional {
 public:
  using Evaluator = std::function<ExactScalar(const StarWord&)>;

  MomentFunctional(std::string name, Evaluator evaluator);

  ExactScalar operator()(const StarWord& w) const;
  const std::string& name() const { return name_; }

 private:
  struct Cache;
  std::string name_;
  Evaluator evaluator_;
  std::shared_ptr<Cache> cache_;
};

/// Joint free cumulants kappa_n evaluated on monomial arguments (one letter per
/// argument). Order zero is undefined and throws DomainError.
class CumulantFunctional {
 public:
  using Evaluator = std::function<ExactScalar(const StarWord&)>;

  explicit CumulantFunctional(Evaluator evaluator) : evaluator_(std::move(evaluator)) {}

  ExactScalar operator()(const StarWord& w) const;

 private:
  Evaluator evaluator_;
};

/// Longest word accepted by the exhaustive NC(n) sums (NC(8) has 1430 elements).
inline constexpr int kDefaultWordCap = 8;
int word_cap();
/// Must not exceed enumeration_cap().
void set_word_cap(int cap);

/// Product over blocks V of p of phi(w restricted to V).
ExactScalar phi_pi(const NCPartition& p, const StarWord& w, const MomentFunctional& phi);

/// Product over blocks V of p of kappa(w restricted to V).
ExactScalar kappa_pi(const NCPartition& p, const StarWord& w, const CumulantFunctional& kappa);

/// phi(w) = sum over pi in NC(|w|) of kappa_pi[w].
ExactScalar moments_from_cumulants(const StarWord& w, const CumulantFunctional& kappa);

/// kappa_n(w) = sum over s in NC(n) of phi_s[w] mu(s, 1_n).
ExactScalar cumulants_from_moments(const StarWord& w, const MomentFunctional& phi);

/// Number of cyclically adjacent equal exponents (eta_{k+1} = eta_1).
/// Throws DomainError on an empty list.
unsigned s_statistic(std::span<const Exponent> etas);

/// s_statistic of the exponents restricted to the 1-based positions of block.
unsigned t_block_statistic(const Block& block, std::span<const Exponent> etas);

/// Marginal free cumulant of a cross-covariance variable:
///   y^{k-1} rho^{S(eta)}  for rho != 0,
///   y^{k-1} [S(eta) = 0]  for rho == 0.
/// Requires y > 0 (y == 0 belongs to the elliptic regime).
ExactScalar cc_cumulant(std::span<const Exponent> etas, const ExactScalar& rho, const ExactScalar& y);

/// Limit *-moment of free cross-covariance variables: sum over the
/// label-constant pi in NC(|w|) of the product of block cumulants.
ExactScalar cc_family_moment(const StarWord& w, const FamilyParams& params);

/// Same value routed through moments_from_cumulants with a cumulant
/// functional whose mixed cumulants vanish. Used to cross-check the direct sum.
ExactScalar cc_family_moment_generic(const StarWord& w, const FamilyParams& params);

CumulantFunctional cc_cumulant_functional(FamilyParams params);
MomentFunctional cc_moment_functional(FamilyParams params);

/// Free cumulant of an elliptic variable with parameter r: order two only,
/// kappa_2(e, e) = kappa_2(e*, e*) = r and kappa_2(e, e*) = kappa_2(e*, e) = 1.
ExactScalar elliptic_cumulant(std::span<const Exponent> etas, const ExactScalar& r);

/// Joint moment of free elliptic variables: zero for odd length, otherwise a
/// sum over NC_2(|w|) of prod_l r_l^{T_l(pi)} restricted to label-matching pairings.
ExactScalar elliptic_family_moment(const StarWord& w, const EllipticParams& params);

ExactScalar elliptic_family_moment_generic(const StarWord& w, const EllipticParams& params);

CumulantFunctional elliptic_cumulant_functional(EllipticParams params);
MomentFunctional elliptic_moment_functional(EllipticParams params);

/// True iff the mixed joint cumulant of w under the cross-covariance limit
/// state is exactly zero. Throws DomainError for a single-label word.
bool is_free_check(const StarWord& w, const FamilyParams& params);

/// Same test for an arbitrary state.
bool is_free_check(const StarWord& w, const MomentFunctional& phi);

void validate(const FamilyParams& params);
void validate(const EllipticParams& params);

}  // namespace xcov
