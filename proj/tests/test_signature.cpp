#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "sigprice/errors.hpp"
#include "sigprice/signature.hpp"

#include "oracles.hpp"

using namespace sigprice;

namespace {

SampledPath random_path(std::mt19937& gen, int dim, int segments) {
  std::normal_distribution<double> step(0.0, 0.6);
  std::vector<double> times;
  std::vector<double> values(static_cast<std::size_t>(dim), 0.0);
  times.push_back(0.0);
  for (int i = 1; i <= segments; ++i) {
    times.push_back(times.back() + 0.25 + 0.05 * (i % 3));
    for (int c = 0; c < dim; ++c)
      values.push_back(values[(i - 1) * static_cast<std::size_t>(dim) + c] + step(gen));
  }
  return SampledPath(times, values, dim);
}

}  // namespace

TEST_CASE("sampled path validation") {
  CHECK_THROWS_AS(SampledPath({0.0, 0.0}, {0.0, 1.0}, 1), InputError);  // flat time
  CHECK_THROWS_AS(SampledPath({0.0, -1.0}, {0.0, 1.0}, 1), InputError);
  CHECK_THROWS_AS(SampledPath({0.0, 1.0}, {0.0, 1.0, 2.0}, 1), InputError);
  CHECK_THROWS_AS(SampledPath({0.0, 1.0}, {0.0, NAN}, 1), InputError);
  CHECK_THROWS_AS(SampledPath({0.0, 1.0}, {0.0, INFINITY}, 1), InputError);
  CHECK_THROWS_AS(SampledPath({}, {}, 1), InputError);
  CHECK_THROWS_AS(SampledPath({0.0}, {0.0}, 0), InputError);

  const SampledPath p({0.0, 0.5, 1.0}, {1.0, 2.0, 3.0, 4.0, 5.0, 6.0}, 2);
  CHECK(p.n_points() == 3);
  CHECK(p.value(1, 0) == 3.0);
  CHECK(p.value(2, 1) == 6.0);
}

TEST_CASE("time enhancement prepends the clock as component 1") {
  const SampledPath p({0.0, 0.5, 2.0}, {1.0, -1.0, 7.0}, 1);
  const SampledPath e = time_enhance(p);
  CHECK(e.dim() == 2);
  CHECK(e.n_points() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(e.value(i, 0) == p.time(i));
    CHECK(e.value(i, 1) == p.value(i, 0));
  }
}

TEST_CASE("lift kind names") {
  CHECK(parse_lift_kind("stratonovich") == LiftKind::Stratonovich);
  CHECK(parse_lift_kind("ito") == LiftKind::Ito);
  CHECK(lift_kind_name(LiftKind::Stratonovich) == "stratonovich");
  CHECK(lift_kind_name(LiftKind::Ito) == "ito");
  CHECK_THROWS_AS(parse_lift_kind("euler"), InputError);
}

TEST_CASE("truncated signature layout") {
  TruncatedSignature sig(3, 4, 0.0, 0.0);
  REQUIRE(sig.levels().size() == 5);
  CHECK(sig.levels()[0] == std::vector<double>{1.0});
  CHECK(sig.levels()[2].size() == 9);
  CHECK(sig.levels()[4].size() == 81);
  // row-major word order with the first letter most significant
  CHECK(sig.word_index(Word{2, 1}) == 3);
  CHECK(sig.word_index(Word{3, 3}) == 8);
  CHECK(sig.word_index(Word{1, 2, 3}) == 5);

  CHECK_THROWS_AS(TruncatedSignature(0, 2, 0.0, 0.0), InputError);
  CHECK_THROWS_AS(TruncatedSignature(2, -1, 0.0, 0.0), InputError);
  // 10^9 entries on one level exceeds the dense storage cap
  CHECK_THROWS_AS(TruncatedSignature(10, 9, 0.0, 0.0), InputError);
}

TEST_CASE("single linear segment gives the truncated tensor exponential") {
  const double a = 0.3, b = -0.7;
  const SampledPath p({0.0, 1.0}, {0.0, 0.0, a, b}, 2);
  const TruncatedSignature sig = stratonovich_lift(p, 4);
  const double inc[2] = {a, b};
  for (const Word& w : {Word{1}, Word{2}, Word{1, 2}, Word{2, 1}, Word{1, 1, 2},
                        Word{2, 2, 2}, Word{1, 2, 1, 2}}) {
    double expect = 1.0;
    for (std::size_t k = 0; k < w.size(); ++k) expect *= inc[w[k] - 1] / double(k + 1);
    CHECK(sig.entry(w) == doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("stratonovich lift matches refinement quadrature of iterated integrals") {
  std::mt19937 gen(23);
  const SampledPath p = random_path(gen, 2, 4);
  const TruncatedSignature sig = stratonovich_lift(p, 4);
  for (const Word& w : {Word{1}, Word{2}, Word{1, 2}, Word{2, 1}, Word{2, 2},
                        Word{1, 2, 1}, Word{2, 1, 1}, Word{1, 1, 2, 2}, Word{2, 1, 2, 1}}) {
    const double oracle = oracles::riemann_iterated_integral(p, w, 600);
    CHECK(sig.entry(w) == doctest::Approx(oracle).epsilon(5e-7));
  }
}

TEST_CASE("ito lift matches the left point iterated sum") {
  std::mt19937 gen(29);
  for (int rep = 0; rep < 5; ++rep) {
    const SampledPath p = random_path(gen, 3, 6);
    const TruncatedSignature sig = ito_lift(p, 3);
    for (const Word& w : {Word{1}, Word{3}, Word{2, 1}, Word{3, 3}, Word{1, 2, 3},
                          Word{2, 2, 2}, Word{3, 1, 2}}) {
      const double oracle = oracles::leftpoint_iterated_sum(p, w);
      CHECK(sig.entry(w) == doctest::Approx(oracle).epsilon(1e-12));
    }
  }
}

TEST_CASE("level one of both lifts is the total increment") {
  std::mt19937 gen(31);
  const SampledPath p = random_path(gen, 2, 5);
  for (const LiftKind kind : {LiftKind::Stratonovich, LiftKind::Ito}) {
    const TruncatedSignature sig = lift_path(p, kind, 2);
    const std::size_t last = p.n_points() - 1;
    CHECK(sig.entry(Word{1}) ==
          doctest::Approx(p.value(last, 0) - p.value(0, 0)).epsilon(1e-13));
    CHECK(sig.entry(Word{2}) ==
          doctest::Approx(p.value(last, 1) - p.value(0, 1)).epsilon(1e-13));
    CHECK(sig.t_begin() == p.time(0));
    CHECK(sig.t_end() == p.time(last));
  }
}

TEST_CASE("chen combination glues adjacent sub-signatures") {
  std::mt19937 gen(37);
  for (const LiftKind kind : {LiftKind::Stratonovich, LiftKind::Ito}) {
    const SampledPath p = random_path(gen, 2, 8);
    const TruncatedSignature whole = lift_path(p, kind, 5);
    const TruncatedSignature left = kind == LiftKind::Stratonovich
                                        ? stratonovich_lift(p, 5, 0, 3)
                                        : ito_lift(p, 5, 0, 3);
    const TruncatedSignature right = kind == LiftKind::Stratonovich
                                         ? stratonovich_lift(p, 5, 3, 8)
                                         : ito_lift(p, 5, 3, 8);
    const TruncatedSignature glued = chen_combine(left, right);
    for (int lvl = 0; lvl <= 5; ++lvl)
      for (std::size_t i = 0; i < whole.levels()[lvl].size(); ++i)
        CHECK(glued.levels()[lvl][i] ==
              doctest::Approx(whole.levels()[lvl][i]).epsilon(1e-12));
  }
}

TEST_CASE("chen combination rejects mismatched operands") {
  std::mt19937 gen(41);
  const SampledPath p = random_path(gen, 2, 6);
  const TruncatedSignature a = stratonovich_lift(p, 3, 0, 2);
  const TruncatedSignature b = stratonovich_lift(p, 3, 4, 6);  // gap: not adjacent
  CHECK_THROWS_AS(chen_combine(a, b), InputError);
  const TruncatedSignature c = stratonovich_lift(p, 2, 2, 6);  // depth mismatch
  CHECK_THROWS_AS(chen_combine(a, c), InputError);
  const SampledPath q = random_path(gen, 3, 6);
  CHECK_THROWS_AS(chen_combine(a, stratonovich_lift(q, 3, 2, 6)), InputError);
}

TEST_CASE("pairing reads linear combinations of tensor entries") {
  std::mt19937 gen(43);
  const SampledPath p = random_path(gen, 2, 4);
  const TruncatedSignature sig = stratonovich_lift(p, 3);

  WeightedWord poly(2);
  poly.add_term(Word{}, 2.0);
  poly.add_term(Word{1, 2}, -3.0);
  poly.add_term(Word{2, 1, 1}, 0.5);
  const double expect =
      2.0 - 3.0 * sig.entry(Word{1, 2}) + 0.5 * sig.entry(Word{2, 1, 1});
  CHECK(pair(poly, sig) == doctest::Approx(expect).epsilon(1e-14));

  const CompiledPairing compiled = compile_pairing(poly, 2, 3);
  CHECK(pair(compiled, sig) == doctest::Approx(pair(poly, sig)).epsilon(1e-15));

  // words deeper than the truncation are an error, not silently zero
  WeightedWord deep(2, Word{1, 1, 2, 2}, 1.0);
  CHECK_THROWS_AS(pair(deep, sig), InputError);
  CHECK_THROWS_AS(compile_pairing(deep, 2, 3), InputError);
  // alphabet must equal the signature dimension exactly
  WeightedWord wide(3, Word{1}, 1.0);
  CHECK_THROWS_AS(pair(wide, sig), InputError);
}

TEST_CASE("stratonovich pairings satisfy the shuffle identity") {
  std::mt19937 gen(47);
  for (int rep = 0; rep < 10; ++rep) {
    const SampledPath path = random_path(gen, 2, 5);
    const TruncatedSignature sig = stratonovich_lift(path, 6);
    WeightedWord p(2);
    p.add_term(Word{1, 2}, 1.0);
    p.add_term(Word{2}, -0.5);
    WeightedWord q(2);
    q.add_term(Word{1}, 2.0);
    q.add_term(Word{2, 1, 1}, 1.0);
    const double lhs = pair(p, sig) * pair(q, sig);
    const double rhs = pair(shuffle(p, q), sig);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("ito level two shuffle defect equals the realized quadratic variation") {
  std::mt19937 gen(53);
  const SampledPath p = random_path(gen, 2, 12);
  const TruncatedSignature sig = ito_lift(p, 2);
  for (int c = 0; c < 2; ++c) {
    const Word a{static_cast<Letter>(c + 1)};
    const WeightedWord wa(2, a, 1.0);
    double qv = 0.0;
    for (std::size_t i = 0; i + 1 < p.n_points(); ++i) {
      const double d = p.value(i + 1, c) - p.value(i, c);
      qv += d * d;
    }
    const double defect = pair(wa, sig) * pair(wa, sig) - pair(shuffle(wa, wa), sig);
    CHECK(defect == doctest::Approx(qv).epsilon(1e-12));
  }
}

TEST_CASE("time enhanced lift integrates the clock exactly") {
  const SampledPath p({0.0, 0.4, 1.0}, {0.0, 1.0, -2.0}, 1);
  const SampledPath e = time_enhance(p);
  const TruncatedSignature sig = stratonovich_lift(e, 2);
  CHECK(sig.entry(Word{1}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sig.entry(Word{1, 1}) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("factorial decay holds for the stratonovich lift") {
  std::mt19937 gen(59);
  for (int rep = 0; rep < 5; ++rep) {
    const SampledPath p = random_path(gen, 2, 6);
    const TruncatedSignature sig = stratonovich_lift(p, 6);
    const DecayReport report = decay_check(sig, p);
    double v1 = 0.0;
    for (std::size_t i = 0; i + 1 < p.n_points(); ++i) {
      double s = 0.0;
      for (int c = 0; c < 2; ++c) {
        const double d = p.value(i + 1, c) - p.value(i, c);
        s += d * d;
      }
      v1 += std::sqrt(s);
    }
    CHECK(report.one_variation == doctest::Approx(v1).epsilon(1e-13));
    REQUIRE(report.ratios.size() == 6);
    for (const double r : report.ratios) CHECK(r <= 1.0 + 1e-12);
    CHECK(report.max_ratio <= 1.0 + 1e-12);
  }
}

TEST_CASE("path csv round trip") {
  std::mt19937 gen(61);
  const SampledPath p = random_path(gen, 3, 5);
  const std::string csv = path_to_csv(p);
  CHECK(csv.rfind("t,x1,x2,x3\n", 0) == 0);
  std::istringstream in(csv);
  const SampledPath back = path_from_csv(in);
  REQUIRE(back.dim() == 3);
  REQUIRE(back.n_points() == p.n_points());
  for (std::size_t i = 0; i < p.n_points(); ++i) {
    CHECK(back.time(i) == p.time(i));
    for (int c = 0; c < 3; ++c) CHECK(back.value(i, c) == p.value(i, c));
  }
}

TEST_CASE("path csv rejects malformed input") {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return path_from_csv(in);
  };
  CHECK_THROWS_AS(parse(""), InputError);
  CHECK_THROWS_AS(parse("t,x1\n0,0\n0,1\n"), InputError);      // time not increasing
  CHECK_THROWS_AS(parse("t,x1\n0,0\n1\n"), InputError);        // short row
  CHECK_THROWS_AS(parse("t,x1\n0,zero\n1,1\n"), InputError);   // not a number
  CHECK_THROWS_AS(parse("x1,t\n0,0\n1,1\n"), InputError);      // wrong header
}

TEST_CASE("signature csv layout") {
  const SampledPath p({0.0, 1.0}, {0.0, 0.0, 1.0, 2.0}, 2);
  const std::string csv = signature_to_csv(stratonovich_lift(p, 2));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "level,word,value");
  std::getline(in, line);
  CHECK(line == "0,e,1");
  std::getline(in, line);
  CHECK(line == "1,1,1");
  std::getline(in, line);
  CHECK(line == "1,2,2");
  std::getline(in, line);
  CHECK(line == "2,11,0.5");
  int rows = 5;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 1 + 1 + 2 + 4);  // header, level 0, level 1, level 2
}
