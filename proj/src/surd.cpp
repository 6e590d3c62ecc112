#include "xcov/surd.hpp"

#include "xcov/errors.hpp"

#include <cmath>
#include <sstream>

namespace xcov {

namespace {

// n = square^2 * free with free squarefree. Trial division is exhaustive up to
// 10^6; a larger leftover cofactor is kept in `free` as is.
void split_square(BigInt n, BigInt& square, BigInt& free) {
  square = 1;
  free = 1;
  for (BigInt d = 2; d * d <= n && d <= 1000000; ++d) {
    int multiplicity = 0;
    while (n % d == 0) {
      n /= d;
      ++multiplicity;
    }
    for (int i = 0; i < multiplicity / 2; ++i) square *= d;
    if (multiplicity % 2) free *= d;
  }
  BigInt root = boost::multiprecision::sqrt(n);
  if (root * root == n) {
    square *= root;
  } else {
    free *= n;
  }
}

}  // namespace

Surd::Surd(const ExactScalar& rational) {
  if (rational != 0) terms_.emplace(BigInt(1), rational);
}

Surd Surd::sqrt(const ExactScalar& q) {
  if (q < 0) throw DomainError("square root of a negative rational");
  Surd out;
  if (q == 0) return out;
  // sqrt(a/b) = sqrt(a*b) / b
  const BigInt& a = boost::multiprecision::numerator(q);
  const BigInt& b = boost::multiprecision::denominator(q);
  BigInt square, free;
  split_square(a * b, square, free);
  out.terms_.emplace(free, ExactScalar(square, b));
  return out;
}

bool Surd::is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1); }

ExactScalar Surd::rational() const {
  if (!is_rational()) throw DomainError("surd " + to_string() + " is irrational");
  return terms_.empty() ? ExactScalar(0) : terms_.begin()->second;
}

double Surd::to_double() const {
  double sum = 0;
  for (const auto& [f, c] : terms_) sum += xcov::to_double(c) * std::sqrt(f.convert_to<double>());
  return sum;
}

std::string Surd::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [f, c] : terms_) {
    ExactScalar magnitude = c;
    if (!first) {
      out << (c < 0 ? " - " : " + ");
      magnitude = abs(c);
    }
    first = false;
    if (f == 1) {
      out << to_fraction_string(magnitude);
    } else if (magnitude == 1) {
      out << "sqrt(" << f.str() << ")";
    } else if (magnitude == -1) {
      out << "-sqrt(" << f.str() << ")";
    } else {
      out << to_fraction_string(magnitude) << "*sqrt(" << f.str() << ")";
    }
  }
  return out.str();
}

void Surd::add_term(const BigInt& radicand, const ExactScalar& coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.emplace(radicand, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

Surd& Surd::operator+=(const Surd& other) {
  for (const auto& [f, c] : other.terms_) add_term(f, c);
  return *this;
}

Surd& Surd::operator-=(const Surd& other) {
  for (const auto& [f, c] : other.terms_) add_term(f, -c);
  return *this;
}

Surd& Surd::operator*=(const Surd& other) {
  Surd product;
  for (const auto& [f1, c1] : terms_) {
    for (const auto& [f2, c2] : other.terms_) {
      // sqrt(f1) sqrt(f2) = g sqrt(f1 f2 / g^2) with g = gcd(f1, f2) for squarefree f1, f2
      BigInt g = boost::multiprecision::gcd(f1, f2);
      product.add_term(f1 / g * (f2 / g), c1 * c2 * g);
    }
  }
  terms_ = std::move(product.terms_);
  return *this;
}

}  // namespace xcov
