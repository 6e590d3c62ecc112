#pragma once

#include "xcov/rational.hpp"

#include <map>
#include <string>

namespace xcov {

/// Element of Q[sqrt(q) : q rational], stored as sum_f c_f * sqrt(f) with f
/// squarefree positive integers (f = 1 is the rational part) and c_f != 0.
/// Only produced by centered_scaled_limit.
class Surd {
 public:
  Surd() = default;
  Surd(const ExactScalar& rational);  // NOLINT(google-explicit-constructor)
  Surd(int value) : Surd(ExactScalar(value)) {}  // NOLINT(google-explicit-constructor)

  /// sqrt(q) for rational q >= 0. Throws DomainError for negative q.
  static Surd sqrt(const ExactScalar& q);

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  /// Rational part when is_rational(); throws DomainError otherwise.
  ExactScalar rational() const;

  double to_double() const;
  /// "3/2 + 1/4*sqrt(2)".
  std::string to_string() const;

  const std::map<BigInt, ExactScalar>& terms() const { return terms_; }

  Surd& operator+=(const Surd& other);
  Surd& operator-=(const Surd& other);
  Surd& operator*=(const Surd& other);
  friend Surd operator+(Surd a, const Surd& b) { return a += b; }
  friend Surd operator-(Surd a, const Surd& b) { return a -= b; }
  friend Surd operator*(Surd a, const Surd& b) { return a *= b; }
  friend Surd operator-(Surd a) {
    for (auto& [f, c] : a.terms_) c = -c;
    return a;
  }
  friend bool operator==(const Surd&, const Surd&) = default;

 private:
  void add_term(const BigInt& radicand, const ExactScalar& coefficient);

  std::map<BigInt, ExactScalar> terms_;
};

inline bool is_zero(const ExactScalar& x) { return x == 0; }
inline bool is_zero(const Surd& x) { return x.is_zero(); }

inline std::string coefficient_string(const ExactScalar& x) { return to_fraction_string(x); }
inline std::string coefficient_string(const Surd& x) { return x.to_string(); }

inline double coefficient_value(const ExactScalar& x) { return to_double(x); }
inline double coefficient_value(const Surd& x) { return x.to_double(); }

}  // namespace xcov
