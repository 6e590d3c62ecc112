#include "xcov/limit_laws.hpp"

#include "xcov/errors.hpp"
#include "xcov/partition.hpp"

namespace xcov {

namespace {

StarWord plain_word(int k) { return StarWord(std::vector<Letter>(static_cast<std::size_t>(k), Letter{})); }

void check_order(int k, const char* what) {
  if (k < 1) throw DomainError(std::string(what) + ": order must be at least 1");
}

}  // namespace

MomentSequence moments_from_cumulant_sequence(const std::vector<ExactScalar>& cumulants) {
  CumulantFunctional kappa([&cumulants](const StarWord& w) { return cumulants.at(w.size() - 1); });
  MomentSequence out;
  for (std::size_t k = 1; k <= cumulants.size(); ++k) {
    out.values.push_back(moments_from_cumulants(plain_word(static_cast<int>(k)), kappa));
  }
  return out;
}

std::vector<ExactScalar> cumulants_from_moment_sequence(const MomentSequence& moments) {
  MomentFunctional phi("sequence", [&moments](const StarWord& w) { return moments.at(w.size()); });
  std::vector<ExactScalar> out;
  for (std::size_t k = 1; k <= moments.order(); ++k) {
    out.push_back(cumulants_from_moments(plain_word(static_cast<int>(k)), phi));
  }
  return out;
}

ExactScalar mp_moment(int k, const ExactScalar& y) {
  check_order(k, "mp_moment");
  if (y <= 0) throw DomainError("mp_moment: y must be positive");
  CumulantFunctional kappa([&y](const StarWord& w) { return ipow(y, static_cast<unsigned>(w.size() - 1)); });
  return moments_from_cumulants(plain_word(k), kappa);
}

ExactScalar mp_moment_closed_form(int k, const ExactScalar& y) {
  check_order(k, "mp_moment_closed_form");
  const auto uk = static_cast<unsigned>(k);
  ExactScalar sum = 0;
  for (unsigned r = 0; r < uk; ++r) {
    sum += ExactScalar(binomial(uk, r) * binomial(uk - 1, r), r + 1) * ipow(y, r);
  }
  return sum;
}

ExactScalar sym_mp_cumulant(int k, const ExactScalar& y) {
  check_order(k, "sym_mp_cumulant");
  return k % 2 == 0 ? ipow(y, static_cast<unsigned>(k - 1)) : ExactScalar(0);
}

ExactScalar cc_star_moment_rho0(int k, const ExactScalar& y) {
  check_order(k, "cc_star_moment_rho0");
  if (k > word_cap()) throw SizeLimitError("cc_star_moment_rho0: order above the word cap");
  const auto uk = static_cast<unsigned>(k);
  ExactScalar sum = 0;
  for (unsigned r = 0; r < uk; ++r) {
    sum += ExactScalar(binomial(uk - 1, r) * binomial(uk, r), r + 1) * ipow(y, uk + r);
  }
  return sum;
}

MomentSequence cc_star_moments_rho0(int order, const ExactScalar& y) {
  std::vector<ExactScalar> cumulants;
  for (int k = 1; k <= order; ++k) cumulants.push_back(cc_star_moment_rho0(k, y));
  return moments_from_cumulant_sequence(cumulants);
}

ExactScalar c_plus_cstar_cumulant(int k, const ExactScalar& y, const ExactScalar& rho) {
  check_order(k, "c_plus_cstar_cumulant");
  if (k > 16) throw SizeLimitError("c_plus_cstar_cumulant: order above 16");
  if (y <= 0) throw DomainError("c_plus_cstar_cumulant: y must be positive");
  std::vector<Exponent> etas(static_cast<std::size_t>(k));
  ExactScalar sum = 0;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    for (int i = 0; i < k; ++i) etas[static_cast<std::size_t>(i)] = (mask >> i) & 1u ? Exponent::Star : Exponent::Plain;
    const unsigned s = s_statistic(etas);
    if (rho == 0) {
      if (s == 0) sum += 1;
    } else {
      sum += ipow(rho, s);
    }
  }
  return ipow(y, static_cast<unsigned>(k - 1)) * sum;
}

ExactScalar prod_alt_cumulant(int k, const ExactScalar& y1, const ExactScalar& y2) {
  check_order(k, "prod_alt_cumulant");
  if (k > enumeration_cap()) throw SizeLimitError("prod_alt_cumulant: order above the enumeration cap");
  const auto& lattice = nc_lattice(k);
  const auto& elements = lattice.elements();
  ExactScalar sum = 0;
  for (const auto& pi : elements) {
    ExactScalar left = 1;
    for (const auto& v : pi.blocks()) left *= ipow(y1, static_cast<unsigned>(2 * v.size() - 1));
    const NCPartition complement = kreweras_complement(pi);
    ExactScalar inner = 0;
    for (const auto& sigma : elements) {
      if (!leq(sigma, complement)) continue;
      ExactScalar right = 1;
      for (const auto& w : sigma.blocks()) right *= ipow(y2, static_cast<unsigned>(2 * w.size() - 1));
      inner += right;
    }
    sum += left * inner;
  }
  return sum;
}

ExactScalar prod_alt_cumulant_free_product(int k, const ExactScalar& y1, const ExactScalar& y2) {
  check_order(k, "prod_alt_cumulant_free_product");
  ExactScalar sum = 0;
  for (const auto& pi : nc_lattice(k).elements()) {
    // kappa_j(y1 M_{y1}) = y1^j * y1^{j-1}; phi_m(y2 M_{y2}) = y2^m * mp_moment(m, y2).
    ExactScalar kappa = 1;
    for (const auto& v : pi.blocks()) kappa *= ipow(y1, static_cast<unsigned>(2 * v.size() - 1));
    ExactScalar phi = 1;
    const NCPartition complement = kreweras_complement(pi);
    for (const auto& u : complement.blocks()) {
      const int m = static_cast<int>(u.size());
      phi *= ipow(y2, static_cast<unsigned>(m)) * mp_moment(m, y2);
    }
    sum += kappa * phi;
  }
  return sum;
}

ExactScalar compound_poisson_moment(int k, const ExactScalar& rate, const MomentSequence& jump_moments) {
  check_order(k, "compound_poisson_moment");
  if (jump_moments.order() < static_cast<std::size_t>(k)) {
    throw DomainError("compound_poisson_moment: need " + std::to_string(k) + " jump moments, got " +
                      std::to_string(jump_moments.order()));
  }
  if (rate < 0) throw DomainError("compound_poisson_moment: negative rate");
  CumulantFunctional kappa(
      [&rate, &jump_moments](const StarWord& w) { return rate * jump_moments.at(w.size()); });
  return moments_from_cumulants(plain_word(k), kappa);
}

}  // namespace xcov
