#include "xcov/star_word.hpp"

#include "xcov/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace xcov {

StarWord::StarWord(std::vector<Letter> letters) : letters_(std::move(letters)) {
  for (const auto& l : letters_) {
    if (l.label < 1) throw DomainError("word labels must be positive");
  }
}

StarWord StarWord::parse(std::string_view text) {
  std::vector<Letter> letters;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t digits = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == digits) throw ParseError("expected label digits in word", i);
    Letter letter;
    letter.label = std::stoi(std::string(text.substr(digits, i - digits)));
    if (i < text.size() && text[i] == '*') {
      letter.exp = Exponent::Star;
      ++i;
    }
    if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
      throw ParseError("unexpected character in word", i);
    }
    letters.push_back(letter);
  }
  return StarWord(std::move(letters));
}

std::vector<Exponent> StarWord::exponents() const {
  std::vector<Exponent> out;
  out.reserve(letters_.size());
  for (const auto& l : letters_) out.push_back(l.exp);
  return out;
}

std::vector<int> StarWord::labels() const {
  std::vector<int> out;
  for (const auto& l : letters_) out.push_back(l.label);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

StarWord StarWord::subword(const Block& block) const {
  std::vector<Letter> out;
  out.reserve(block.size());
  for (int pos : block) {
    if (pos < 1 || static_cast<std::size_t>(pos) > letters_.size()) {
      throw DomainError("subword position out of range");
    }
    out.push_back(letters_[static_cast<std::size_t>(pos - 1)]);
  }
  StarWord w;
  w.letters_ = std::move(out);
  return w;
}

StarWord StarWord::rotated(std::size_t shift) const {
  StarWord w = *this;
  if (!w.letters_.empty()) {
    std::rotate(w.letters_.begin(), w.letters_.begin() + static_cast<std::ptrdiff_t>(shift % w.size()),
                w.letters_.end());
  }
  return w;
}

StarWord StarWord::adjoint() const {
  StarWord w;
  w.letters_.assign(letters_.rbegin(), letters_.rend());
  for (auto& l : w.letters_) l.exp = flip(l.exp);
  return w;
}

StarWord operator*(const StarWord& a, const StarWord& b) {
  StarWord w = a;
  w.letters_.insert(w.letters_.end(), b.letters_.begin(), b.letters_.end());
  return w;
}

std::string StarWord::to_string(char symbol) const {
  if (letters_.empty()) return "I";
  std::ostringstream out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) out << ' ';
    out << symbol << letters_[i].label;
    if (letters_[i].exp == Exponent::Star) out << '*';
  }
  return out.str();
}

std::size_t StarWordHash::operator()(const StarWord& w) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (const auto& l : w) {
    h ^= static_cast<std::size_t>(l.label) * 2 + (l.exp == Exponent::Star ? 1 : 0);
    h *= 0x100000001b3ull;
  }
  return h;
}

std::vector<StarWord> all_words(std::size_t length, int num_labels) {
  std::vector<StarWord> out;
  const std::size_t alphabet = static_cast<std::size_t>(num_labels) * 2;
  std::size_t total = 1;
  for (std::size_t i = 0; i < length; ++i) total *= alphabet;
  out.reserve(total);
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<Letter> letters(length);
    std::size_t c = code;
    for (std::size_t i = 0; i < length; ++i) {
      std::size_t symbol = c % alphabet;
      c /= alphabet;
      letters[i].label = static_cast<int>(symbol / 2) + 1;
      letters[i].exp = symbol % 2 ? Exponent::Star : Exponent::Plain;
    }
    out.emplace_back(std::move(letters));
  }
  return out;
}

}  // namespace xcov
