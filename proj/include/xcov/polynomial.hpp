#pragma once

#include "xcov/errors.hpp"
#include "xcov/free_cumulants.hpp"
#include "xcov/partition.hpp"
#include "xcov/star_word.hpp"
#include "xcov/surd.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xcov {

/// Noncommutative *-polynomial: a finite linear combination of StarWords,
/// the empty word standing for the identity. Zero coefficients are never stored.
template <class Coeff>
class BasicPolynomial {
 public:
  using Terms = std::map<StarWord, Coeff>;

  BasicPolynomial() = default;

  static BasicPolynomial identity() { return monomial(StarWord{}, Coeff(1)); }
  static BasicPolynomial symbol(int label, Exponent exp = Exponent::Plain) {
    return monomial(StarWord({Letter{label, exp}}), Coeff(1));
  }
  static BasicPolynomial monomial(const StarWord& w, const Coeff& c) {
    BasicPolynomial p;
    p.add(w, c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  std::size_t degree() const {
    std::size_t d = 0;
    for (const auto& [w, c] : terms_) d = std::max(d, w.size());
    return d;
  }

  std::vector<int> labels() const {
    std::vector<int> out;
    for (const auto& [w, c] : terms_)
      for (const auto& l : w) out.push_back(l.label);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  void add(const StarWord& w, const Coeff& c) {
    if (xcov::is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (xcov::is_zero(it->second)) terms_.erase(it);
    }
  }

  BasicPolynomial& operator+=(const BasicPolynomial& other) {
    for (const auto& [w, c] : other.terms_) add(w, c);
    return *this;
  }
  BasicPolynomial& operator-=(const BasicPolynomial& other) {
    for (const auto& [w, c] : other.terms_) add(w, Coeff(0) - c);
    return *this;
  }
  BasicPolynomial& operator*=(const Coeff& scalar) {
    if (xcov::is_zero(scalar)) {
      terms_.clear();
      return *this;
    }
    for (auto& [w, c] : terms_) c *= scalar;
    return *this;
  }

  friend BasicPolynomial operator+(BasicPolynomial a, const BasicPolynomial& b) { return a += b; }
  friend BasicPolynomial operator-(BasicPolynomial a, const BasicPolynomial& b) { return a -= b; }
  friend BasicPolynomial operator*(BasicPolynomial a, const Coeff& s) { return a *= s; }
  friend BasicPolynomial operator*(const Coeff& s, BasicPolynomial a) { return a *= s; }
  friend BasicPolynomial operator*(const BasicPolynomial& a, const BasicPolynomial& b) {
    BasicPolynomial out;
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) out.add(wa * wb, ca * cb);
    return out;
  }
  friend bool operator==(const BasicPolynomial&, const BasicPolynomial&) = default;

  /// e.g. "1*C1 C1* - 2*I" with symbol 'C'.
  std::string to_string(char symbol = 'c') const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : terms_) {
      if (!first) out += " + ";
      first = false;
      out += "(" + coefficient_string(c) + ")*";
      if (w.empty()) {
        out += "I";
      } else {
        for (std::size_t i = 0; i < w.size(); ++i) {
          if (i) out += "*";
          out += std::string(1, symbol) + std::to_string(w[i].label);
          if (w[i].exp == Exponent::Star) out += "^*";
        }
      }
    }
    return out;
  }

 private:
  Terms terms_;
};

using NCPolynomial = BasicPolynomial<ExactScalar>;
using SurdPolynomial = BasicPolynomial<Surd>;

template <class Coeff>
BasicPolynomial<Coeff> poly_mul(const BasicPolynomial<Coeff>& a, const BasicPolynomial<Coeff>& b) {
  return a * b;
}

/// Reverses every word, flips every exponent; coefficients are real.
template <class Coeff>
BasicPolynomial<Coeff> poly_adjoint(const BasicPolynomial<Coeff>& a) {
  BasicPolynomial<Coeff> out;
  for (const auto& [w, c] : a.terms()) out.add(w.adjoint(), c);
  return out;
}

/// Structural self-adjointness a == a*.
template <class Coeff>
bool is_symmetric(const BasicPolynomial<Coeff>& a) {
  return a == poly_adjoint(a);
}

template <class Coeff>
BasicPolynomial<Coeff> poly_power(const BasicPolynomial<Coeff>& a, int k) {
  if (k < 0) throw DomainError("negative polynomial power");
  auto out = BasicPolynomial<Coeff>::identity();
  for (int i = 0; i < k; ++i) out = out * a;
  return out;
}

/// phi applied linearly to a polynomial.
template <class Coeff>
Coeff apply_state(const BasicPolynomial<Coeff>& a, const MomentFunctional& phi) {
  Coeff sum(0);
  for (const auto& [w, c] : a.terms()) {
    ExactScalar value = phi(w);
    if (value != 0) sum += c * Coeff(value);
  }
  return sum;
}

/// phi(a^k). Words longer than the backend's cap raise SizeLimitError naming the length.
template <class Coeff>
Coeff poly_moment(const BasicPolynomial<Coeff>& a, int k, const MomentFunctional& phi) {
  return apply_state(poly_power(a, k), phi);
}

/// Joint free cumulant kappa_n(a_1, ..., a_n) of polynomial arguments, by
/// Moebius inversion of the moments of products of the arguments.
template <class Coeff>
Coeff poly_cumulant(std::span<const BasicPolynomial<Coeff>> args, const MomentFunctional& phi) {
  if (args.empty()) throw DomainError("free cumulants start at order 1");
  const int n = static_cast<int>(args.size());
  if (n > enumeration_cap()) throw SizeLimitError("poly_cumulant: order above the enumeration cap");
  const auto& lattice = nc_lattice(n);
  const std::size_t top = lattice.top_index();
  std::map<Block, Coeff> block_moments;
  auto moment_of = [&](const Block& block) -> const Coeff& {
    auto it = block_moments.find(block);
    if (it != block_moments.end()) return it->second;
    auto product = BasicPolynomial<Coeff>::identity();
    for (int pos : block) product = product * args[static_cast<std::size_t>(pos - 1)];
    return block_moments.emplace(block, apply_state(product, phi)).first->second;
  };
  Coeff sum(0);
  for (std::size_t s = 0; s < lattice.elements().size(); ++s) {
    const std::int64_t mu = lattice.mobius(s, top);
    if (mu == 0) continue;
    Coeff term(static_cast<int>(mu));
    for (const auto& block : lattice.elements()[s].blocks()) {
      term *= moment_of(block);
      if (xcov::is_zero(term)) break;
    }
    sum += term;
  }
  return sum;
}

/// kappa_k(a, a, ..., a).
template <class Coeff>
Coeff poly_cumulant_power(const BasicPolynomial<Coeff>& a, int k, const MomentFunctional& phi) {
  if (k < 1) throw DomainError("free cumulants start at order 1");
  std::vector<BasicPolynomial<Coeff>> args(static_cast<std::size_t>(k), a);
  return poly_cumulant<Coeff>(args, phi);
}

/// Which matrix family the symbols of a parsed polynomial refer to.
enum class SymbolKind { Raw, Centered };  // C<l> or E<l>

struct ParsedPolynomial {
  NCPolynomial polynomial;
  /// Empty when the text contains no C or E symbol (only I and constants).
  std::optional<SymbolKind> kind;
};

/// Grammar:
///   poly   := term (('+' | '-') term)*
///   term   := [sign] [number '*'] factor ('*' factor)* | [sign] number
///   factor := 'I' | ('C' | 'E') digits ['^*']
/// number accepts integers, decimals, exponents and a/b fractions, parsed
/// exactly. Mixing C and E symbols is an error. Throws ParseError.
ParsedPolynomial parse_polynomial(std::string_view text);

/// Limit of a raw aspect ratio n_ref / n_l (possibly infinite).
struct RatioLimit {
  ExactScalar value = 1;
  bool infinite = false;

  static RatioLimit finite(ExactScalar v) { return {std::move(v), false}; }
  static RatioLimit infinity() { return {0, true}; }
};

/// Raised when the centered and scaled polynomial has no finite limit.
class DivergenceError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Limit, as p/n_l -> 0, of sqrt(n_ref / p) * a(C_1, ..., C_t) after the
/// substitution C_l = rho_l I + sqrt(p / n_l) E_l. ratios[l] = lim n_ref / n_l.
/// Terms of E-degree >= 2 vanish; degree 1 keeps coefficient sqrt(ratio);
/// a nonzero degree 0 part (or a surviving term with infinite ratio) diverges.
SurdPolynomial centered_scaled_limit(const NCPolynomial& a, const std::map<int, ExactScalar>& rhos,
                                     const std::map<int, RatioLimit>& ratios);

}  // namespace xcov
