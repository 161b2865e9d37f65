#include "sigprice/words.hpp"

#include <cctype>
#include <cstdlib>

#include "sigprice/errors.hpp"
#include "sigprice/util.hpp"

namespace sigprice {

namespace {

void check_letters(const Word& w, int alphabet) {
  for (Letter l : w) {
    if (l < 1 || int(l) > alphabet)
      throw InputError("letter " + std::to_string(int(l)) + " outside alphabet {1.." +
                       std::to_string(alphabet) + "}");
  }
}

}  // namespace

WeightedWord::WeightedWord(int alphabet_size) : alphabet_(alphabet_size) {
  if (alphabet_size < 1) throw InputError("alphabet size must be >= 1");
}

WeightedWord::WeightedWord(int alphabet_size, const Word& w, double coef)
    : WeightedWord(alphabet_size) {
  add_term(w, coef);
}

int WeightedWord::max_word_length() const {
  // graded order: the longest word is the last key
  if (terms_.empty()) return 0;
  return int(terms_.rbegin()->first.size());
}

void WeightedWord::add_term(const Word& w, double coef) {
  check_letters(w, alphabet_);
  if (coef == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(w, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0.0) terms_.erase(it);
  }
}

WeightedWord& WeightedWord::operator+=(const WeightedWord& other) {
  if (alphabet_ != other.alphabet_) throw InputError("alphabet size mismatch in +");
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

WeightedWord& WeightedWord::operator-=(const WeightedWord& other) {
  if (alphabet_ != other.alphabet_) throw InputError("alphabet size mismatch in -");
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

WeightedWord& WeightedWord::operator*=(double scalar) {
  if (scalar == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, c] : terms_) c *= scalar;
  return *this;
}

WeightedWord concat(const WeightedWord& a, const WeightedWord& b) {
  if (a.alphabet_size() != b.alphabet_size())
    throw InputError("alphabet size mismatch in concat");
  WeightedWord out(a.alphabet_size());
  for (const auto& [u, cu] : a.terms()) {
    for (const auto& [v, cv] : b.terms()) {
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      out.add_term(w, cu * cv);
    }
  }
  return out;
}

namespace {

// shuffle of two plain words by the prefix-grid recursion:
// S[i][j] = shuffle of u[0..i) with v[0..j),
// S[i][j] = S[i-1][j] append u[i-1]  +  S[i][j-1] append v[j-1].
using CountMap = std::map<Word, double, GradedLexLess>;

CountMap shuffle_words(const Word& u, const Word& v) {
  const size_t n = u.size(), m = v.size();
  std::vector<std::vector<CountMap>> grid(n + 1, std::vector<CountMap>(m + 1));
  grid[0][0][Word{}] = 1.0;
  for (size_t i = 0; i <= n; ++i) {
    for (size_t j = 0; j <= m; ++j) {
      if (i == 0 && j == 0) continue;
      CountMap& cell = grid[i][j];
      if (i > 0) {
        for (const auto& [w, c] : grid[i - 1][j]) {
          Word ext = w;
          ext.push_back(u[i - 1]);
          cell[ext] += c;
        }
      }
      if (j > 0) {
        for (const auto& [w, c] : grid[i][j - 1]) {
          Word ext = w;
          ext.push_back(v[j - 1]);
          cell[ext] += c;
        }
      }
    }
  }
  return grid[n][m];
}

}  // namespace

WeightedWord shuffle(const WeightedWord& a, const WeightedWord& b) {
  if (a.alphabet_size() != b.alphabet_size())
    throw InputError("alphabet size mismatch in shuffle");
  WeightedWord out(a.alphabet_size());
  for (const auto& [u, cu] : a.terms()) {
    for (const auto& [v, cv] : b.terms()) {
      for (const auto& [w, count] : shuffle_words(u, v)) out.add_term(w, cu * cv * count);
    }
  }
  return out;
}

WeightedWord shuffle_power(const WeightedWord& p, int n) {
  if (n < 0) throw InputError("shuffle_power needs n >= 0");
  WeightedWord acc(p.alphabet_size(), Word{}, 1.0);  // empty word
  for (int i = 0; i < n; ++i) acc = shuffle(acc, p);
  return acc;
}

double fock_norm_sq(const WeightedWord& p) {
  double s = 0.0;
  for (const auto& [w, c] : p.terms()) s += c * c;
  return s;
}

std::string format_word(const Word& w, int alphabet_size) {
  if (w.empty()) return "e";
  std::string out;
  if (alphabet_size <= 9) {
    for (Letter l : w) out += char('0' + l);
  } else {
    for (size_t i = 0; i < w.size(); ++i) {
      if (i) out += '.';
      out += std::to_string(int(w[i]));
    }
  }
  return out;
}

std::string format_weighted_word(const WeightedWord& p) {
  if (p.is_zero()) return "0*e";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    double mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) out += "-";
      first = false;
    } else {
      out += c < 0 ? " - " : " + ";
    }
    out += format_double(mag);
    out += '*';
    out += format_word(w, p.alphabet_size());
  }
  return out;
}

Word parse_word(const std::string& text, int alphabet_size) {
  if (text.empty()) throw InputError("empty word text");
  if (text == "e") return Word{};
  Word w;
  if (alphabet_size <= 9) {
    for (char ch : text) {
      if (!std::isdigit(static_cast<unsigned char>(ch)) || ch == '0')
        throw InputError("bad letter '" + std::string(1, ch) + "' in word '" + text + "'");
      w.push_back(Letter(ch - '0'));
    }
  } else {
    size_t pos = 0;
    while (pos < text.size()) {
      size_t dot = text.find('.', pos);
      std::string tok = text.substr(pos, dot == std::string::npos ? dot : dot - pos);
      long v = parse_long(tok, "word letter");
      if (v < 1 || v > 255) throw InputError("letter out of range in word '" + text + "'");
      w.push_back(Letter(v));
      if (dot == std::string::npos) break;
      pos = dot + 1;
      if (pos == text.size()) throw InputError("trailing '.' in word '" + text + "'");
    }
  }
  for (Letter l : w) {
    if (int(l) > alphabet_size)
      throw InputError("letter " + std::to_string(int(l)) + " outside alphabet {1.." +
                       std::to_string(alphabet_size) + "} in word '" + text + "'");
  }
  return w;
}

namespace {

bool is_word_char(char ch, int alphabet_size) {
  if (std::isdigit(static_cast<unsigned char>(ch))) return true;
  return alphabet_size > 9 && ch == '.';
}

}  // namespace

WeightedWord parse_weighted_word(const std::string& text, int alphabet_size) {
  // sequential scan; terms are [sign] [number '*'] word, separated by +/-.
  // numbers may carry exponent signs ("1e-3*21"), so splitting on +/- up front
  // would be wrong; instead try a numeric prefix and only keep it if '*' follows.
  WeightedWord out(alphabet_size);
  size_t pos = 0;
  const size_t n = text.size();
  auto skip_ws = [&] {
    while (pos < n && text[pos] == ' ') ++pos;
  };
  skip_ws();
  if (pos == n) throw InputError("empty weighted-word text");
  bool any = false;
  while (pos < n) {
    double sign = 1.0;
    if (text[pos] == '+' || text[pos] == '-') {
      if (text[pos] == '-') sign = -1.0;
      ++pos;
      skip_ws();
    } else if (any) {
      throw InputError("expected '+' or '-' at position " + std::to_string(pos) + " in '" +
                       text + "'");
    }
    if (pos >= n) throw InputError("dangling sign in '" + text + "'");
    double coef = 1.0;
    const char* start = text.c_str() + pos;
    char* numend = nullptr;
    double v = std::strtod(start, &numend);
    if (numend != start) {
      size_t after = pos + size_t(numend - start);
      size_t look = after;
      while (look < n && text[look] == ' ') ++look;
      if (look < n && text[look] == '*') {
        coef = v;
        pos = look + 1;
        skip_ws();
      }
      // otherwise the digits belong to the word itself
    }
    size_t wstart = pos;
    if (pos < n && text[pos] == 'e' && (pos + 1 == n || !is_word_char(text[pos + 1], alphabet_size))) {
      ++pos;
    } else {
      while (pos < n && is_word_char(text[pos], alphabet_size)) ++pos;
    }
    if (pos == wstart)
      throw InputError("expected a word at position " + std::to_string(wstart) + " in '" +
                       text + "'");
    Word w = parse_word(text.substr(wstart, pos - wstart), alphabet_size);
    out.add_term(w, sign * coef);
    any = true;
    skip_ws();
    if (pos < n && text[pos] != '+' && text[pos] != '-')
      throw InputError("unexpected character '" + std::string(1, text[pos]) + "' in '" +
                       text + "'");
  }
  return out;
}

}  // namespace sigprice
