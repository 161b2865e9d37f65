#include "sigprice/signature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>

#include "sigprice/errors.hpp"
#include "sigprice/util.hpp"

namespace sigprice {

namespace {

// entries per level, with a hard cap so a typo cannot allocate the machine away
std::vector<std::size_t> level_sizes(int dim, int depth) {
  if (dim < 1) throw InputError("path dimension must be >= 1");
  if (depth < 0) throw InputError("truncation depth must be >= 0");
  constexpr std::size_t cap = 100'000'000;
  std::vector<std::size_t> sizes(static_cast<std::size_t>(depth) + 1);
  std::size_t size = 1;
  sizes[0] = 1;
  for (int k = 1; k <= depth; ++k) {
    if (size > cap / static_cast<std::size_t>(dim))
      throw InputError("signature of dimension " + std::to_string(dim) + " at depth " +
                       std::to_string(depth) + " exceeds 1e8 entries per level");
    size *= static_cast<std::size_t>(dim);
    sizes[static_cast<std::size_t>(k)] = size;
  }
  return sizes;
}

Word word_at(int dim, int level, std::size_t index) {
  Word w(static_cast<std::size_t>(level));
  for (int j = level - 1; j >= 0; --j) {
    w[static_cast<std::size_t>(j)] =
        static_cast<Letter>(index % static_cast<std::size_t>(dim) + 1);
    index /= static_cast<std::size_t>(dim);
  }
  return w;
}

}  // namespace

SampledPath::SampledPath(std::vector<double> times, std::vector<double> values, int dim)
    : times_(std::move(times)), values_(std::move(values)), dim_(dim) {
  if (dim_ < 1) throw InputError("path dimension must be >= 1");
  if (times_.empty()) throw InputError("path needs at least one sample point");
  if (values_.size() != times_.size() * static_cast<std::size_t>(dim_))
    throw InputError("path value count does not match times * dimension");
  for (std::size_t i = 1; i < times_.size(); ++i)
    if (!(times_[i] > times_[i - 1]))
      throw InputError("path times must be strictly increasing");
  for (double v : values_)
    if (!std::isfinite(v)) throw InputError("path values must be finite");
  if (!std::isfinite(times_.front()) || !std::isfinite(times_.back()))
    throw InputError("path times must be finite");
}

SampledPath time_enhance(const SampledPath& path) {
  const int d = path.dim();
  std::vector<double> values;
  values.reserve(path.n_points() * static_cast<std::size_t>(d + 1));
  for (std::size_t i = 0; i < path.n_points(); ++i) {
    values.push_back(path.time(i));
    for (int c = 0; c < d; ++c) values.push_back(path.value(i, c));
  }
  return SampledPath(path.times(), std::move(values), d + 1);
}

LiftKind parse_lift_kind(const std::string& name) {
  if (name == "stratonovich") return LiftKind::Stratonovich;
  if (name == "ito") return LiftKind::Ito;
  throw InputError("unknown lift '" + name + "' (expected stratonovich or ito)");
}

std::string lift_kind_name(LiftKind kind) {
  return kind == LiftKind::Stratonovich ? "stratonovich" : "ito";
}

TruncatedSignature::TruncatedSignature(int dim, int depth, double t_begin, double t_end)
    : dim_(dim), depth_(depth), t_begin_(t_begin), t_end_(t_end) {
  const auto sizes = level_sizes(dim, depth);
  levels_.resize(sizes.size());
  for (std::size_t k = 0; k < sizes.size(); ++k) levels_[k].assign(sizes[k], 0.0);
  levels_[0][0] = 1.0;
}

std::size_t TruncatedSignature::word_index(const Word& w) const {
  std::size_t index = 0;
  for (Letter a : w) {
    if (a < 1 || static_cast<int>(a) > dim_)
      throw InputError("word letter " + std::to_string(static_cast<int>(a)) +
                       " out of range for dimension " + std::to_string(dim_));
    index = index * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(a - 1);
  }
  return index;
}

double TruncatedSignature::entry(const Word& w) const {
  if (static_cast<int>(w.size()) > depth_)
    throw InputError("word of length " + std::to_string(w.size()) +
                     " exceeds truncation depth " + std::to_string(depth_));
  return levels_[w.size()][word_index(w)];
}

namespace {

// in-place chen combine of sig with the tensor exponential of one linear
// segment dx: levels[n] += sum_{k<n} levels[k] (x) dx^{(n-k)}/(n-k)!
// top-down so lower levels are still the pre-segment values when read.
void append_segment_exp(std::vector<std::vector<double>>& levels, const double* dx, int dim,
                        int depth) {
  if (depth == 0) return;
  // pw[j] = dx^{tensor j} / j!
  std::vector<std::vector<double>> pw(static_cast<std::size_t>(depth) + 1);
  pw[1].assign(dx, dx + dim);
  for (int j = 2; j <= depth; ++j) {
    const auto& prev = pw[static_cast<std::size_t>(j - 1)];
    auto& cur = pw[static_cast<std::size_t>(j)];
    cur.resize(prev.size() * static_cast<std::size_t>(dim));
    const double inv = 1.0 / j;
    for (std::size_t i = 0; i < prev.size(); ++i)
      for (int a = 0; a < dim; ++a)
        cur[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(a)] =
            prev[i] * dx[a] * inv;
  }
  for (int n = depth; n >= 1; --n) {
    auto& out = levels[static_cast<std::size_t>(n)];
    for (int k = 0; k < n; ++k) {
      const auto& left = levels[static_cast<std::size_t>(k)];
      const auto& right = pw[static_cast<std::size_t>(n - k)];
      for (std::size_t i = 0; i < left.size(); ++i) {
        if (left[i] == 0.0) continue;
        const double li = left[i];
        double* dst = out.data() + i * right.size();
        for (std::size_t j = 0; j < right.size(); ++j) dst[j] += li * right[j];
      }
    }
  }
}

// in-place chen combine with the first-order tensor (1, dx, 0, ...):
// levels[n] += levels[n-1] (x) dx, again top-down.
void append_segment_leftpoint(std::vector<std::vector<double>>& levels, const double* dx,
                              int dim, int depth) {
  for (int n = depth; n >= 1; --n) {
    const auto& left = levels[static_cast<std::size_t>(n - 1)];
    auto& out = levels[static_cast<std::size_t>(n)];
    for (std::size_t i = 0; i < left.size(); ++i) {
      if (left[i] == 0.0) continue;
      const double li = left[i];
      double* dst = out.data() + i * static_cast<std::size_t>(dim);
      for (int a = 0; a < dim; ++a) dst[a] += li * dx[a];
    }
  }
}

void check_range(const SampledPath& path, std::size_t first, std::size_t last) {
  if (first > last || last >= path.n_points())
    throw InputError("path index range [" + std::to_string(first) + ", " +
                     std::to_string(last) + "] out of bounds for " +
                     std::to_string(path.n_points()) + " points");
}

template <typename Step>
TruncatedSignature lift_range(const SampledPath& path, int depth, std::size_t first,
                              std::size_t last, Step step) {
  check_range(path, first, last);
  const int d = path.dim();
  TruncatedSignature sig(d, depth, path.time(first), path.time(last));
  std::vector<double> dx(static_cast<std::size_t>(d));
  for (std::size_t i = first; i < last; ++i) {
    for (int c = 0; c < d; ++c) dx[static_cast<std::size_t>(c)] = path.value(i + 1, c) - path.value(i, c);
    step(sig.levels(), dx.data(), d, depth);
  }
  return sig;
}

}  // namespace

TruncatedSignature stratonovich_lift(const SampledPath& path, int depth, std::size_t first,
                                     std::size_t last) {
  return lift_range(path, depth, first, last, append_segment_exp);
}

TruncatedSignature stratonovich_lift(const SampledPath& path, int depth) {
  return stratonovich_lift(path, depth, 0, path.n_points() - 1);
}

TruncatedSignature ito_lift(const SampledPath& path, int depth, std::size_t first,
                            std::size_t last) {
  return lift_range(path, depth, first, last, append_segment_leftpoint);
}

TruncatedSignature ito_lift(const SampledPath& path, int depth) {
  return ito_lift(path, depth, 0, path.n_points() - 1);
}

TruncatedSignature lift_path(const SampledPath& path, LiftKind kind, int depth) {
  return kind == LiftKind::Stratonovich ? stratonovich_lift(path, depth)
                                        : ito_lift(path, depth);
}

TruncatedSignature chen_combine(const TruncatedSignature& a, const TruncatedSignature& b) {
  if (a.dim() != b.dim()) throw InputError("cannot combine signatures of different dimensions");
  if (a.depth() != b.depth()) throw InputError("cannot combine signatures of different depths");
  const double scale = std::max({1.0, std::abs(a.t_end()), std::abs(b.t_begin())});
  if (std::abs(a.t_end() - b.t_begin()) > 1e-9 * scale)
    throw InputError("signature intervals are not adjacent: left ends at " +
                     format_double(a.t_end()) + ", right begins at " +
                     format_double(b.t_begin()));
  TruncatedSignature z(a.dim(), a.depth(), a.t_begin(), b.t_end());
  const auto& al = a.levels();
  const auto& bl = b.levels();
  for (int n = 0; n <= a.depth(); ++n) {
    auto& out = z.levels()[static_cast<std::size_t>(n)];
    if (n == 0) {
      out[0] = al[0][0] * bl[0][0];
      continue;
    }
    std::fill(out.begin(), out.end(), 0.0);
    for (int k = 0; k <= n; ++k) {
      const auto& left = al[static_cast<std::size_t>(k)];
      const auto& right = bl[static_cast<std::size_t>(n - k)];
      for (std::size_t i = 0; i < left.size(); ++i) {
        if (left[i] == 0.0) continue;
        const double li = left[i];
        double* dst = out.data() + i * right.size();
        for (std::size_t j = 0; j < right.size(); ++j) dst[j] += li * right[j];
      }
    }
  }
  return z;
}

double pair(const WeightedWord& p, const TruncatedSignature& sig) {
  if (p.alphabet_size() != sig.dim())
    throw InputError("word alphabet size " + std::to_string(p.alphabet_size()) +
                     " does not match signature dimension " + std::to_string(sig.dim()));
  double sum = 0.0;
  for (const auto& [w, c] : p.terms()) sum += c * sig.entry(w);
  return sum;
}

CompiledPairing compile_pairing(const WeightedWord& p, int dim, int depth) {
  if (p.alphabet_size() != dim)
    throw InputError("word alphabet size " + std::to_string(p.alphabet_size()) +
                     " does not match signature dimension " + std::to_string(dim));
  TruncatedSignature probe(dim, depth, 0.0, 0.0);
  CompiledPairing out;
  out.terms.reserve(p.terms().size());
  for (const auto& [w, c] : p.terms()) {
    if (static_cast<int>(w.size()) > depth)
      throw InputError("word " + format_word(w, dim) + " of length " +
                       std::to_string(w.size()) + " exceeds truncation depth " +
                       std::to_string(depth));
    out.terms.push_back({static_cast<int>(w.size()), probe.word_index(w), c});
  }
  return out;
}

double pair(const CompiledPairing& p, const TruncatedSignature& sig) {
  double sum = 0.0;
  for (const auto& t : p.terms)
    sum += t.coef * sig.levels()[static_cast<std::size_t>(t.level)][t.index];
  return sum;
}

DecayReport decay_check(const TruncatedSignature& sig, const SampledPath& path) {
  if (path.dim() != sig.dim())
    throw InputError("path dimension does not match signature dimension");
  DecayReport rep;
  for (std::size_t i = 0; i + 1 < path.n_points(); ++i) {
    double s = 0.0;
    for (int c = 0; c < path.dim(); ++c) {
      const double dx = path.value(i + 1, c) - path.value(i, c);
      s += dx * dx;
    }
    rep.one_variation += std::sqrt(s);
  }
  double v_pow = 1.0;
  double factorial = 1.0;
  for (int k = 1; k <= sig.depth(); ++k) {
    v_pow *= rep.one_variation;
    factorial *= k;
    double norm_sq = 0.0;
    for (double x : sig.levels()[static_cast<std::size_t>(k)]) norm_sq += x * x;
    const double norm = std::sqrt(norm_sq);
    double ratio;
    if (v_pow > 0.0)
      ratio = norm * factorial / v_pow;
    else
      ratio = norm == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    rep.ratios.push_back(ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
  }
  return rep;
}

std::string path_to_csv(const SampledPath& path) {
  std::string out = "t";
  for (int c = 1; c <= path.dim(); ++c) out += ",x" + std::to_string(c);
  out += "\n";
  for (std::size_t i = 0; i < path.n_points(); ++i) {
    out += format_double(path.time(i));
    for (int c = 0; c < path.dim(); ++c) out += "," + format_double(path.value(i, c));
    out += "\n";
  }
  return out;
}

SampledPath path_from_csv(std::istream& in) {
  std::string line;
  std::vector<double> times;
  std::vector<double> values;
  int dim = -1;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv(line);
    if (lineno == 1 && !fields.empty() && fields[0] == "t") {
      dim = static_cast<int>(fields.size()) - 1;
      if (dim < 1) throw InputError("path csv header needs at least one value column");
      continue;
    }
    if (dim < 0) dim = static_cast<int>(fields.size()) - 1;
    if (static_cast<int>(fields.size()) != dim + 1)
      throw InputError("path csv line " + std::to_string(lineno) + " has " +
                       std::to_string(fields.size()) + " fields, expected " +
                       std::to_string(dim + 1));
    times.push_back(parse_double(fields[0], "path csv time"));
    for (int c = 1; c <= dim; ++c)
      values.push_back(parse_double(fields[static_cast<std::size_t>(c)], "path csv value"));
  }
  if (dim < 1 || times.empty()) throw InputError("path csv contains no data rows");
  return SampledPath(std::move(times), std::move(values), dim);
}

std::string signature_to_csv(const TruncatedSignature& sig) {
  std::string out = "level,word,value\n";
  for (int k = 0; k <= sig.depth(); ++k) {
    const auto& lvl = sig.levels()[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < lvl.size(); ++i) {
      out += std::to_string(k) + "," + format_word(word_at(sig.dim(), k, i), sig.dim()) +
             "," + format_double(lvl[i]) + "\n";
    }
  }
  return out;
}

}  // namespace sigprice
