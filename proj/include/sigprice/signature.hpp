#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "sigprice/words.hpp"

namespace sigprice {

// discrete observations of a d-dimensional path on a strictly increasing grid.
// values are row-major, point i occupies values[i*d .. i*d+d).
class SampledPath {
 public:
  SampledPath(std::vector<double> times, std::vector<double> values, int dim);

  int dim() const { return dim_; }
  std::size_t n_points() const { return times_.size(); }
  double time(std::size_t i) const { return times_[i]; }
  double value(std::size_t i, int component) const { return values_[i * dim_ + component]; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> times_;
  std::vector<double> values_;
  int dim_;
};

// prepend the time coordinate as component 1; original components shift to 2..d+1.
SampledPath time_enhance(const SampledPath& path);

enum class LiftKind { Stratonovich, Ito };

LiftKind parse_lift_kind(const std::string& name);
std::string lift_kind_name(LiftKind kind);

// dense truncated signature: levels 0..N, level k holds d^k entries in
// row-major word order (first letter most significant). level 0 is the scalar 1.
class TruncatedSignature {
 public:
  // identity signature (1, 0, 0, ...) over the degenerate interval [t, t]
  TruncatedSignature(int dim, int depth, double t_begin, double t_end);

  int dim() const { return dim_; }
  int depth() const { return depth_; }
  double t_begin() const { return t_begin_; }
  double t_end() const { return t_end_; }
  const std::vector<std::vector<double>>& levels() const { return levels_; }
  std::vector<std::vector<double>>& levels() { return levels_; }
  void set_interval(double t_begin, double t_end) {
    t_begin_ = t_begin;
    t_end_ = t_end;
  }

  // flat index of a word inside its level
  std::size_t word_index(const Word& w) const;
  double entry(const Word& w) const;

 private:
  int dim_;
  int depth_;
  double t_begin_, t_end_;
  std::vector<std::vector<double>> levels_;
};

// signature of the piecewise-linear interpolant: per segment the truncated
// tensor exponential (level k term (dx)^{tensor k}/k!), segments chained together.
TruncatedSignature stratonovich_lift(const SampledPath& path, int depth);
TruncatedSignature stratonovich_lift(const SampledPath& path, int depth, std::size_t first,
                                     std::size_t last);

// discrete left-point lift: each step contributes the first-order tensor
// (1, dx, 0, ...) so <w a, sig_{0,t_n}> = sum_k <w, sig_{0,t_k}> dx^a_k.
TruncatedSignature ito_lift(const SampledPath& path, int depth);
TruncatedSignature ito_lift(const SampledPath& path, int depth, std::size_t first,
                            std::size_t last);

TruncatedSignature lift_path(const SampledPath& path, LiftKind kind, int depth);

// truncated tensor product z_n = sum_{k=0..n} a_k tensor b_{n-k}.
// requires a's interval to end where b's begins.
TruncatedSignature chen_combine(const TruncatedSignature& a, const TruncatedSignature& b);

// linear extension of reading tensor entries; throws if a word exceeds the depth.
double pair(const WeightedWord& p, const TruncatedSignature& sig);

// precompiled pairing for hot loops: words resolved to (level, index, coef).
struct CompiledPairing {
  struct Term {
    int level;
    std::size_t index;
    double coef;
  };
  std::vector<Term> terms;
};
CompiledPairing compile_pairing(const WeightedWord& p, int dim, int depth);
double pair(const CompiledPairing& p, const TruncatedSignature& sig);

// factorial-decay check for 1-variation: per level k the ratio
// |level k| * k! / V1^k where V1 is the interpolant's total variation.
struct DecayReport {
  double one_variation = 0.0;
  std::vector<double> ratios;  // levels 1..N
  double max_ratio = 0.0;
};
DecayReport decay_check(const TruncatedSignature& sig, const SampledPath& path);

// csv: paths as "t,x1,...,xd" rows, signatures as "level,word,value" rows
// in graded-lex order starting with "0,e,1".
std::string path_to_csv(const SampledPath& path);
SampledPath path_from_csv(std::istream& in);
std::string signature_to_csv(const TruncatedSignature& sig);

}  // namespace sigprice
