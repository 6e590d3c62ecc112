#pragma once

#include "xcov/free_cumulants.hpp"
#include "xcov/rational.hpp"

#include <vector>

namespace xcov {

/// Moments m_1..m_order of a law on the real line.
struct MomentSequence {
  std::vector<ExactScalar> values;

  std::size_t order() const { return values.size(); }
  /// 1-based: at(k) is the k-th moment.
  const ExactScalar& at(std::size_t k) const { return values.at(k - 1); }
};

// Marcenko-Pastur law MP(y): free cumulants kappa_j = y^{j-1}.

/// k-th moment of MP(y) through the moment-cumulant relation.
ExactScalar mp_moment(int k, const ExactScalar& y);

/// Narayana form sum_{r=0}^{k-1} C(k,r) C(k-1,r) y^r / (r+1).
ExactScalar mp_moment_closed_form(int k, const ExactScalar& y);

/// Symmetrized MP: y^{k-1} for even k, 0 for odd k.
ExactScalar sym_mp_cumulant(int k, const ExactScalar& y);

/// kappa_k(c c*) of the rho = 0 cross-covariance variable:
/// sum_{r=0}^{k-1} C(k-1,r) C(k,r) y^{k+r} / (r+1).
ExactScalar cc_star_moment_rho0(int k, const ExactScalar& y);

/// Moments of c c* at rho = 0 induced by cc_star_moment_rho0 as free cumulants.
MomentSequence cc_star_moments_rho0(int order, const ExactScalar& y);

/// kappa_k(c + c*) = y^{k-1} sum over eta in {1,*}^k of rho^{S(eta)}
/// (or [S(eta) = 0] when rho = 0). k <= 16.
ExactScalar c_plus_cstar_cumulant(int k, const ExactScalar& y, const ExactScalar& rho);

/// Alternating cumulant kappa_{2k}(c1 c2*, c2 c1*, ...) at rho1 = rho2 = 0 by
/// the double sum over pi in NC(k), sigma <= K(pi) of
/// prod_{V in pi} y1^{2|V|-1} prod_{W in sigma} y2^{2|W|-1}.
ExactScalar prod_alt_cumulant(int k, const ExactScalar& y1, const ExactScalar& y2);

/// phi((y1 M_{y1} y2 M_{y2})^k) for free MP variables, computed as
/// sum_pi kappa_pi[y1 M_{y1}] phi_{K(pi)}[y2 M_{y2}]. Equal to prod_alt_cumulant.
ExactScalar prod_alt_cumulant_free_product(int k, const ExactScalar& y1, const ExactScalar& y2);

/// k-th moment of the compound free Poisson law with free cumulants
/// kappa_j = rate * (j-th jump moment). Throws DomainError if fewer than k
/// jump moments are supplied.
ExactScalar compound_poisson_moment(int k, const ExactScalar& rate, const MomentSequence& jump_moments);

/// Moment sequence of a single-variable law from its free cumulants kappa_1..kappa_order.
MomentSequence moments_from_cumulant_sequence(const std::vector<ExactScalar>& cumulants);

/// Inverse of moments_from_cumulant_sequence.
std::vector<ExactScalar> cumulants_from_moment_sequence(const MomentSequence& moments);

}  // namespace xcov
