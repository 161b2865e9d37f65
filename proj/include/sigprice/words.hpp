#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sigprice {

// a word is a sequence of letters from {1..d}; empty sequence is the empty word.
using Letter = std::uint8_t;
using Word = std::vector<Letter>;

// graded-lexicographic order: shorter words first, then lexicographic.
// fixes the term order everywhere (serialization, golden tests).
struct GradedLexLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

// finite linear combination of words over a fixed alphabet {1..d}.
// terms with coefficient exactly 0 are never stored.
class WeightedWord {
 public:
  using TermMap = std::map<Word, double, GradedLexLess>;

  explicit WeightedWord(int alphabet_size);
  WeightedWord(int alphabet_size, const Word& w, double coef = 1.0);

  int alphabet_size() const { return alphabet_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // longest word present; 0 for the zero element and for pure multiples of the empty word
  int max_word_length() const;

  // adds coef * w, validating letters against the alphabet; erases on exact cancellation
  void add_term(const Word& w, double coef);

  WeightedWord& operator+=(const WeightedWord& other);
  WeightedWord& operator-=(const WeightedWord& other);
  WeightedWord& operator*=(double scalar);

  friend WeightedWord operator+(WeightedWord a, const WeightedWord& b) { return a += b; }
  friend WeightedWord operator-(WeightedWord a, const WeightedWord& b) { return a -= b; }
  friend WeightedWord operator*(WeightedWord a, double s) { return a *= s; }
  friend WeightedWord operator*(double s, WeightedWord a) { return a *= s; }
  bool operator==(const WeightedWord& other) const {
    return alphabet_ == other.alphabet_ && terms_ == other.terms_;
  }

 private:
  int alphabet_;
  TermMap terms_;
};

// bilinear extension of word concatenation.
WeightedWord concat(const WeightedWord& a, const WeightedWord& b);

// bilinear extension of the word shuffle product,
// (ua) sh (vb) = ((u sh vb))a + ((ua sh v))b with the empty word as unit.
WeightedWord shuffle(const WeightedWord& a, const WeightedWord& b);

// p_0 = empty word, p_n = shuffle(p_{n-1}, p).
WeightedWord shuffle_power(const WeightedWord& p, int n);

// sum of squared coefficients (orthonormal word basis).
double fock_norm_sq(const WeightedWord& p);

// text grammar. words: "e" for the empty word; digits per letter for d <= 9
// ("21"); dot-separated integers for d > 9 ("2.1.11"). weighted words:
// signed "coef*word" terms, e.g. "2*e + 3*1 + 1*12"; a bare word means coefficient 1.
std::string format_word(const Word& w, int alphabet_size);
std::string format_weighted_word(const WeightedWord& p);
Word parse_word(const std::string& text, int alphabet_size);
WeightedWord parse_weighted_word(const std::string& text, int alphabet_size);

}  // namespace sigprice
