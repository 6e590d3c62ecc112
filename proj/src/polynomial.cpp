#include "xcov/polynomial.hpp"

#include <cctype>

namespace xcov {

namespace {

class PolynomialParser {
 public:
  explicit PolynomialParser(std::string_view text) : text_(text) {}

  ParsedPolynomial parse() {
    ParsedPolynomial out;
    skip_space();
    if (at_end()) throw ParseError("empty polynomial", pos_);
    bool first = true;
    while (true) {
      skip_space();
      ExactScalar sign = 1;
      if (!at_end() && (peek() == '+' || peek() == '-')) {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        throw ParseError("expected '+' or '-' between terms", pos_);
      }
      first = false;
      parse_term(sign, out);
      skip_space();
      if (at_end()) break;
    }
    return out;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  bool number_ahead() const {
    if (at_end()) return false;
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '+' || c == '-';
  }

  ExactScalar parse_number() {
    const std::size_t start = pos_;
    if (peek() == '+' || peek() == '-') ++pos_;
    while (!at_end()) {
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '/') {
        ++pos_;
      } else if ((c == 'e' || c == 'E') && pos_ + 1 < text_.size() &&
                 (std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) || text_[pos_ + 1] == '-' ||
                  text_[pos_ + 1] == '+')) {
        // An exponent, not an E symbol: E symbols follow '*', never a digit.
        pos_ += 2;
      } else {
        break;
      }
    }
    try {
      return parse_exact(text_.substr(start, pos_ - start));
    } catch (const ParseError& e) {
      throw ParseError("malformed coefficient", start + e.position());
    }
  }

  void parse_term(const ExactScalar& sign, ParsedPolynomial& out) {
    skip_space();
    if (at_end()) throw ParseError("expected a term", pos_);
    ExactScalar coefficient = sign;
    bool need_factor = true;
    if (number_ahead()) {
      coefficient *= parse_number();
      skip_space();
      if (!at_end() && peek() == '*') {
        ++pos_;
      } else {
        need_factor = false;  // bare constant
      }
    }
    StarWord word;
    if (need_factor) {
      word = parse_factor(out);
      skip_space();
      while (!at_end() && peek() == '*') {
        ++pos_;
        word = word * parse_factor(out);
        skip_space();
      }
    }
    out.polynomial.add(word, coefficient);
  }

  StarWord parse_factor(ParsedPolynomial& out) {
    skip_space();
    if (at_end()) throw ParseError("expected a symbol", pos_);
    const char c = peek();
    if (c == 'I') {
      ++pos_;
      return StarWord{};
    }
    if (c != 'C' && c != 'E') throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    const SymbolKind kind = c == 'C' ? SymbolKind::Raw : SymbolKind::Centered;
    if (out.kind && *out.kind != kind) throw ParseError("cannot mix C and E symbols", pos_);
    out.kind = kind;
    ++pos_;
    const std::size_t digits = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == digits) throw ParseError("expected a label after the symbol letter", pos_);
    const int label = std::stoi(std::string(text_.substr(digits, pos_ - digits)));
    if (label < 1) throw ParseError("labels start at 1", digits);
    Exponent exp = Exponent::Plain;
    if (!at_end() && peek() == '^') {
      ++pos_;
      if (at_end() || peek() != '*') throw ParseError("expected '*' after '^'", pos_);
      ++pos_;
      exp = Exponent::Star;
    }
    return StarWord({Letter{label, exp}});
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ParsedPolynomial parse_polynomial(std::string_view text) { return PolynomialParser(text).parse(); }

SurdPolynomial centered_scaled_limit(const NCPolynomial& a, const std::map<int, ExactScalar>& rhos,
                                     const std::map<int, RatioLimit>& ratios) {
  auto rho_of = [&](int label) -> const ExactScalar& {
    auto it = rhos.find(label);
    if (it == rhos.end()) throw DomainError("no rho for label " + std::to_string(label));
    return it->second;
  };
  auto ratio_of = [&](int label) -> const RatioLimit& {
    auto it = ratios.find(label);
    if (it == ratios.end()) throw DomainError("no ratio limit for label " + std::to_string(label));
    return it->second;
  };

  // C_l = rho_l I + s_l E_l. Collect the E-degree 0 and 1 parts of every word.
  ExactScalar constant = 0;
  std::map<Letter, ExactScalar> linear;
  for (const auto& [w, c] : a.terms()) {
    ExactScalar all_rho = c;
    for (const auto& letter : w) all_rho *= rho_of(letter.label);
    constant += all_rho;
    for (std::size_t i = 0; i < w.size(); ++i) {
      ExactScalar coefficient = c;
      for (std::size_t j = 0; j < w.size(); ++j) {
        if (j != i) coefficient *= rho_of(w[j].label);
      }
      if (coefficient != 0) linear[w[i]] += coefficient;
    }
    // Degree >= 2 parts scale like sqrt(p / n_ref)^{j-1} and vanish unless
    // one of their ratios is infinite.
    if (w.size() >= 2) {
      for (const auto& letter : w) {
        if (ratio_of(letter.label).infinite) {
          throw DivergenceError("term " + w.to_string('C') + " involves a label with infinite ratio " +
                                "n_ref/n_" + std::to_string(letter.label));
        }
      }
    }
  }
  if (constant != 0) {
    throw DivergenceError("centering constant does not cancel: the identity coefficient of the E expansion is " +
                          to_fraction_string(constant));
  }

  SurdPolynomial out;
  for (const auto& [letter, coefficient] : linear) {
    if (coefficient == 0) continue;
    const RatioLimit& ratio = ratio_of(letter.label);
    if (ratio.infinite) {
      throw DivergenceError("coefficient of E" + std::to_string(letter.label) +
                            " diverges: n_ref/n_l tends to infinity");
    }
    if (ratio.value < 0) throw DomainError("ratio limits must be nonnegative");
    out.add(StarWord({letter}), Surd(coefficient) * Surd::sqrt(ratio.value));
  }
  return out;
}

}  // namespace xcov
