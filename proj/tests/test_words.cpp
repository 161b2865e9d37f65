#include <doctest.h>

#include <map>
#include <random>

#include "sigprice/errors.hpp"
#include "sigprice/words.hpp"

#include "oracles.hpp"

using namespace sigprice;

namespace {

Word random_word(std::mt19937& gen, int alphabet, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> letter(1, alphabet);
  Word w(static_cast<std::size_t>(len(gen)));
  for (auto& l : w) l = static_cast<Letter>(letter(gen));
  return w;
}

}  // namespace

TEST_CASE("graded lexicographic order ranks by length first") {
  GradedLexLess less;
  CHECK(less(Word{}, Word{1}));
  CHECK(less(Word{2}, Word{1, 1}));
  CHECK(less(Word{1, 2}, Word{2, 1}));
  CHECK_FALSE(less(Word{2, 1}, Word{1, 2}));
  CHECK_FALSE(less(Word{1}, Word{1}));
}

TEST_CASE("weighted word term bookkeeping") {
  WeightedWord p(3);
  CHECK(p.is_zero());
  CHECK(p.max_word_length() == 0);

  p.add_term(Word{1, 2}, 2.0);
  p.add_term(Word{}, -1.0);
  CHECK(p.terms().size() == 2);
  CHECK(p.max_word_length() == 2);

  SUBCASE("zero coefficients are never stored") {
    p.add_term(Word{3}, 0.0);
    CHECK(p.terms().count(Word{3}) == 0);
  }
  SUBCASE("exact cancellation erases the term") {
    p.add_term(Word{1, 2}, -2.0);
    CHECK(p.terms().count(Word{1, 2}) == 0);
    CHECK(p.max_word_length() == 0);  // only the empty word remains
  }
  SUBCASE("letters outside the alphabet are rejected") {
    CHECK_THROWS_AS(p.add_term(Word{4}, 1.0), InputError);
    CHECK_THROWS_AS(p.add_term(Word{0}, 1.0), InputError);
  }
}

TEST_CASE("weighted word arithmetic") {
  WeightedWord a(2, Word{1}, 2.0);
  WeightedWord b(2, Word{2}, 3.0);
  WeightedWord c = a + b;
  CHECK(c.terms().at(Word{1}) == 2.0);
  CHECK(c.terms().at(Word{2}) == 3.0);
  c -= a;
  CHECK(c == b);
  c *= -2.0;
  CHECK(c.terms().at(Word{2}) == -6.0);

  WeightedWord other(3, Word{1}, 1.0);
  CHECK_THROWS_AS(a += other, InputError);
  CHECK_THROWS_AS(a -= other, InputError);
}

TEST_CASE("concatenation is bilinear with the empty word as unit") {
  WeightedWord unit(2, Word{}, 1.0);
  WeightedWord p(2);
  p.add_term(Word{1}, 2.0);
  p.add_term(Word{2, 1}, -1.0);
  CHECK(concat(unit, p) == p);
  CHECK(concat(p, unit) == p);

  WeightedWord q(2, Word{2}, 3.0);
  WeightedWord r = concat(p, q);
  CHECK(r.terms().at(Word{1, 2}) == 6.0);
  CHECK(r.terms().at(Word{2, 1, 2}) == -3.0);
  CHECK(r.terms().size() == 2);

  CHECK_THROWS_AS(concat(p, WeightedWord(3)), InputError);
}

TEST_CASE("shuffle of single letters and a known triple") {
  WeightedWord x(2, Word{1});
  WeightedWord y(2, Word{2});
  WeightedWord s = shuffle(x, y);
  CHECK(s.terms().at(Word{1, 2}) == 1.0);
  CHECK(s.terms().at(Word{2, 1}) == 1.0);

  // 12 shuffled with 1: interleavings give 2*112 + 121
  WeightedWord t = shuffle(WeightedWord(2, Word{1, 2}), x);
  CHECK(t.terms().at(Word{1, 1, 2}) == 2.0);
  CHECK(t.terms().at(Word{1, 2, 1}) == 1.0);
  CHECK(t.terms().size() == 2);
}

TEST_CASE("shuffle matches brute force interleaving enumeration") {
  std::mt19937 gen(7);
  for (int rep = 0; rep < 60; ++rep) {
    const Word a = random_word(gen, 3, 4);
    const Word b = random_word(gen, 3, 4);
    const auto expected = oracles::brute_shuffle(a, b);
    const WeightedWord got = shuffle(WeightedWord(3, a), WeightedWord(3, b));
    CHECK(got.terms().size() == expected.size());
    for (const auto& [w, coef] : expected) {
      REQUIRE(got.terms().count(w) == 1);
      CHECK(got.terms().at(w) == doctest::Approx(coef).epsilon(1e-14));
    }
  }
}

TEST_CASE("shuffle is bilinear over term combinations") {
  WeightedWord p(2);
  p.add_term(Word{1}, 2.0);
  p.add_term(Word{}, 1.0);
  WeightedWord q(2);
  q.add_term(Word{2}, -3.0);
  q.add_term(Word{1, 1}, 0.5);
  const WeightedWord lhs = shuffle(p, q);
  WeightedWord rhs(2);
  rhs += shuffle(WeightedWord(2, Word{1}, 2.0), WeightedWord(2, Word{2}, -3.0));
  rhs += shuffle(WeightedWord(2, Word{1}, 2.0), WeightedWord(2, Word{1, 1}, 0.5));
  rhs += shuffle(WeightedWord(2, Word{}, 1.0), WeightedWord(2, Word{2}, -3.0));
  rhs += shuffle(WeightedWord(2, Word{}, 1.0), WeightedWord(2, Word{1, 1}, 0.5));
  CHECK(lhs == rhs);
}

TEST_CASE("shuffle power of a single letter gives factorial coefficients") {
  WeightedWord x(2, Word{1});
  for (int n = 0; n <= 5; ++n) {
    const WeightedWord p = shuffle_power(x, n);
    double fact = 1.0;
    for (int k = 2; k <= n; ++k) fact *= k;
    CHECK(p.terms().size() == 1);
    const Word expect(static_cast<std::size_t>(n), Letter{1});
    CHECK(p.terms().at(expect) == doctest::Approx(fact));
  }
  CHECK_THROWS_AS(shuffle_power(x, -1), InputError);
}

TEST_CASE("fock norm is the sum of squared coefficients") {
  WeightedWord p(2);
  CHECK(fock_norm_sq(p) == 0.0);
  p.add_term(Word{}, 3.0);
  p.add_term(Word{1, 2}, -2.0);
  CHECK(fock_norm_sq(p) == doctest::Approx(13.0));
}

TEST_CASE("word formatting round trips") {
  CHECK(format_word(Word{}, 3) == "e");
  CHECK(format_word(Word{2, 1, 3}, 3) == "213");
  CHECK(format_word(Word{2, 11}, 12) == "2.11");

  CHECK(parse_word("e", 3) == Word{});
  CHECK(parse_word("213", 3) == Word{2, 1, 3});
  CHECK(parse_word("2.11", 12) == Word{2, 11});

  std::mt19937 gen(11);
  for (int rep = 0; rep < 40; ++rep) {
    for (int alphabet : {3, 9, 15}) {
      const Word w = random_word(gen, alphabet, 5);
      CHECK(parse_word(format_word(w, alphabet), alphabet) == w);
    }
  }
}

TEST_CASE("word parsing rejects malformed text") {
  CHECK_THROWS_AS(parse_word("", 3), InputError);
  CHECK_THROWS_AS(parse_word("14", 3), InputError);   // letter outside alphabet
  CHECK_THROWS_AS(parse_word("1a", 3), InputError);
  CHECK_THROWS_AS(parse_word("1.2", 3), InputError);  // dots only for d > 9
  CHECK_THROWS_AS(parse_word("1..2", 12), InputError);
  CHECK_THROWS_AS(parse_word(".1", 12), InputError);
  CHECK_THROWS_AS(parse_word("0", 3), InputError);
}

TEST_CASE("weighted word parsing") {
  const WeightedWord p = parse_weighted_word("2*e + 3*1 - 12", 2);
  CHECK(p.terms().at(Word{}) == 2.0);
  CHECK(p.terms().at(Word{1}) == 3.0);
  CHECK(p.terms().at(Word{1, 2}) == -1.0);

  const WeightedWord q = parse_weighted_word("21 - 31", 3);
  CHECK(q.terms().at(Word{2, 1}) == 1.0);
  CHECK(q.terms().at(Word{3, 1}) == -1.0);

  const WeightedWord r = parse_weighted_word("-0.5*11", 2);
  CHECK(r.terms().at(Word{1, 1}) == -0.5);

  // terms over a wide alphabet with explicit coefficients
  const WeightedWord s = parse_weighted_word("1.5*2.11 + e", 12);
  CHECK(s.terms().at(Word{2, 11}) == 1.5);
  CHECK(s.terms().at(Word{}) == 1.0);

  CHECK_THROWS_AS(parse_weighted_word("", 2), InputError);
  CHECK_THROWS_AS(parse_weighted_word("1 +", 2), InputError);
  CHECK_THROWS_AS(parse_weighted_word("2**1", 2), InputError);
  CHECK_THROWS_AS(parse_weighted_word("x", 2), InputError);
  CHECK_THROWS_AS(parse_weighted_word("3", 2), InputError);  // letter outside alphabet
}

TEST_CASE("weighted word formatting round trips through the parser") {
  std::mt19937 gen(13);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  for (int rep = 0; rep < 40; ++rep) {
    WeightedWord p(3);
    for (int t = 0; t < 4; ++t) p.add_term(random_word(gen, 3, 4), coef(gen));
    const WeightedWord back = parse_weighted_word(format_weighted_word(p), 3);
    CHECK(back == p);
  }
  // the zero element prints as an explicit zero multiple so it stays parseable
  CHECK(format_weighted_word(WeightedWord(2)) == "0*e");
  CHECK(parse_weighted_word("0*e", 2).is_zero());
}
