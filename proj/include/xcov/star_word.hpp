#pragma once

#include "xcov/partition.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xcov {

enum class Exponent : std::uint8_t { Plain, Star };

inline Exponent flip(Exponent e) { return e == Exponent::Plain ? Exponent::Star : Exponent::Plain; }

struct Letter {
  int label = 1;
  Exponent exp = Exponent::Plain;

  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// A monomial a_{l1}^{e1} ... a_{lk}^{ek} in the family symbols and their
/// adjoints. The empty word is the identity.
class StarWord {
 public:
  StarWord() = default;
  /// Throws DomainError on a nonpositive label.
  explicit StarWord(std::vector<Letter> letters);

  /// Parses whitespace separated tokens such as "1 1* 2*" or "c1 c1* c2*".
  static StarWord parse(std::string_view text);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }
  const std::vector<Letter>& letters() const { return letters_; }

  std::vector<Exponent> exponents() const;
  /// Distinct labels, ascending.
  std::vector<int> labels() const;

  /// Letters at the 1-based positions of block, in block order.
  StarWord subword(const Block& block) const;
  /// Cyclic rotation: the letter at position shift becomes the first.
  StarWord rotated(std::size_t shift) const;
  /// (w)^*: reversed, every exponent flipped.
  StarWord adjoint() const;

  friend StarWord operator*(const StarWord& a, const StarWord& b);

  /// "c1 c1* c2"; the identity prints as "I".
  std::string to_string(char symbol = 'c') const;

  friend auto operator<=>(const StarWord&, const StarWord&) = default;

 private:
  std::vector<Letter> letters_;
};

struct StarWordHash {
  std::size_t operator()(const StarWord& w) const noexcept;
};

/// Every word of the given length over labels 1..num_labels and both exponents.
std::vector<StarWord> all_words(std::size_t length, int num_labels);

}  // namespace xcov
