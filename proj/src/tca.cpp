#include <algorithm>
#include <set>
#include <utility>

#include "riffle/errors.hpp"
#include "riffle/tca.hpp"

namespace riffle {

namespace {

using Matrix = std::vector<std::vector<Int>>;

// Rank over the rationals by incremental fraction-free row reduction.
int matrix_rank(const Matrix& m, int cols) {
  std::vector<std::pair<int, std::vector<Int>>> basis;  // (pivot column, row)
  for (const auto& src : m) {
    std::vector<Int> row = src;
    for (const auto& [pc, b] : basis) {
      if (row[pc] == 0) continue;
      Int factor = row[pc];
      Int pivot = b[pc];
      for (int j = 0; j < cols; ++j) row[j] = row[j] * pivot - b[j] * factor;
    }
    int pivot_col = -1;
    Int g = 0;
    for (int j = 0; j < cols; ++j) {
      if (row[j] != 0) {
        if (pivot_col < 0) pivot_col = j;
        g = boost::multiprecision::gcd(g, abs_int(row[j]));
      }
    }
    if (pivot_col < 0) continue;
    if (g > 1)
      for (auto& x : row) x /= g;
    basis.emplace_back(pivot_col, std::move(row));
    if (static_cast<int>(basis.size()) == cols) break;
  }
  return static_cast<int>(basis.size());
}

std::vector<Int> multiply(const Matrix& m, const std::vector<int>& u) {
  std::vector<Int> y(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    Int acc = 0;
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (u[j] > 0)
        acc += m[i][j];
      else
        acc -= m[i][j];
    }
    y[i] = std::move(acc);
  }
  return y;
}

std::vector<Int> multiply_transposed(const Matrix& m, const std::vector<int>& v) {
  std::size_t cols = m.empty() ? 0 : m[0].size();
  std::vector<Int> z(cols, 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (v[i] > 0)
      for (std::size_t j = 0; j < cols; ++j) z[j] += m[i][j];
    else
      for (std::size_t j = 0; j < cols; ++j) z[j] -= m[i][j];
  }
  return z;
}

Int l1_norm(const std::vector<Int>& y) {
  Int s = 0;
  for (const auto& x : y) s += abs_int(x);
  return s;
}

std::vector<int> signs_of(const std::vector<Int>& y) {
  std::vector<int> v(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) v[i] = sign_of(y[i]);
  return v;
}

// Deterministic reduction over candidate axes: larger objective first, then
// larger |y(nega)|, then lexicographically smaller sign-fixed u.
struct BestCandidate {
  bool valid = false;
  Int objective;
  Int nega_abs;
  std::vector<int> u_fixed;
  long long tie_count = 0;

  void consider(const Int& obj, const Int& nega, const std::vector<int>& u, int nega_sign) {
    std::vector<int> fixed = u;
    if (nega_sign > 0)
      for (auto& s : fixed) s = -s;
    if (!valid || obj > objective) {
      valid = true;
      objective = obj;
      nega_abs = nega;
      u_fixed = std::move(fixed);
      tie_count = 1;
      return;
    }
    if (obj < objective) return;
    ++tie_count;
    if (nega > nega_abs ||
        (nega == nega_abs && std::lexicographical_compare(fixed.begin(), fixed.end(),
                                                          u_fixed.begin(), u_fixed.end()))) {
      nega_abs = nega;
      u_fixed = std::move(fixed);
    }
  }
};

// Iterate u <- sgn(P'v) to a sign-consistent fixed point; only ever
// needed when some b coordinate is exactly zero at the optimum.
TcaAxis canonicalize(const ResidualMatrix& rm, TcaAxis axis) {
  std::set<std::vector<int>> seen;
  for (int round = 0; round < 64; ++round) {
    std::vector<int> u_next(axis.u.size());
    for (std::size_t j = 0; j < axis.b.size(); ++j) u_next[j] = sign_of(axis.b[j]);
    if (u_next == axis.u) break;
    if (!seen.insert(axis.u).second) break;
    long long ties = axis.tie_count;
    int restarts = axis.restarts_used;
    TcaMethod method = axis.method;
    axis = factor_scores(rm, u_next);
    axis.tie_count = ties;
    axis.restarts_used = restarts;
    axis.method = method;
  }
  return axis;
}

}  // namespace

Rat CorrespondenceMatrix::row_mass(std::size_t i) const {
  if (static_cast<long long>(i) < n_voters) return Rat(1, 2 * n_voters);
  return Rat(1, 2);
}

CorrespondenceMatrix build_correspondence(const NegaTable& nt) {
  const Profile& p = nt.profile;
  const int d = p.d();
  const long long n = p.n();
  CorrespondenceMatrix cm;
  cm.n_voters = n;
  cm.d = d;
  cm.denom = nt.t;
  cm.num.reserve(n + 1);
  for (const auto& row : p.rows) {
    std::vector<Int> r(d);
    for (int j = 0; j < d; ++j) r[j] = row[j];
    cm.num.push_back(std::move(r));
  }
  std::vector<Int> negarow(d);
  for (int j = 0; j < d; ++j) negarow[j] = nt.nega[j];
  cm.num.push_back(std::move(negarow));
  cm.rank_bound = matrix_rank(cm.num, d) - 1;
  return cm;
}

ResidualMatrix residual(const CorrespondenceMatrix& cm) {
  const int d = cm.d;
  const long long n = cm.n_voters;
  ResidualMatrix rm;
  rm.axis_index = 1;
  rm.n_voters = n;
  rm.d = d;
  rm.denominator = Int(2) * cm.denom;
  rm.scaled_cells.reserve(n + 1);
  // 2t * (r_ij/t - 1/(2nd)) = 2 r_ij - (d-1); nega row: 2 nega_j - n(d-1)
  for (long long i = 0; i < n; ++i) {
    std::vector<Int> row(d);
    for (int j = 0; j < d; ++j) row[j] = Int(2) * cm.num[i][j] - (d - 1);
    rm.scaled_cells.push_back(std::move(row));
  }
  std::vector<Int> negarow(d);
  for (int j = 0; j < d; ++j) negarow[j] = Int(2) * cm.num[n][j] - Int(n) * (d - 1);
  rm.scaled_cells.push_back(std::move(negarow));
  return rm;
}

TcaAxis factor_scores(const ResidualMatrix& rm, std::vector<int> u) {
  const int d = rm.d;
  const long long n = rm.n_voters;
  if (static_cast<int>(u.size()) != d) throw InternalError("u has wrong length");
  for (int s : u)
    if (s != 1 && s != -1) throw InternalError("u must be a sign vector");

  std::vector<Int> y = multiply(rm.scaled_cells, u);
  if (y.back() > 0) {  // orient so the nega row score is nonpositive
    for (auto& s : u) s = -s;
    for (auto& x : y) x = -x;
  }
  std::vector<int> v = signs_of(y);
  std::vector<Int> z = multiply_transposed(rm.scaled_cells, v);

  TcaAxis axis;
  axis.u = std::move(u);
  axis.v = std::move(v);
  axis.axis_index = rm.axis_index;
  axis.a.reserve(y.size());
  axis.f.reserve(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    axis.a.emplace_back(y[i], rm.denominator);
    Int scale = (static_cast<long long>(i) < n) ? Int(2 * n) : Int(2);
    axis.f.emplace_back(scale * y[i], rm.denominator);
  }
  axis.b.reserve(z.size());
  axis.g.reserve(z.size());
  for (const auto& bj : z) {
    axis.b.emplace_back(bj, rm.denominator);
    axis.g.emplace_back(Int(d) * bj, rm.denominator);
  }
  axis.delta = Rat(l1_norm(y), rm.denominator);
  return axis;
}

std::vector<Int> TcaAxis::voter_f_numerators(int d) const {
  std::vector<Int> nums;
  nums.reserve(f.size() - 1);
  const Int dd = Int(d) * (d - 1);
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    Rat scaled = f[i] * dd;
    if (denominator(scaled) != 1)
      throw OffLattice("voter score " + std::to_string(i) + " is not over d(d-1)");
    nums.push_back(numerator(scaled));
  }
  return nums;
}

TcaAxis first_axis_enumerate(const ResidualMatrix& rm, const TcaOptions& opts) {
  const int d = rm.d;
  if (d > opts.enumeration_limit)
    throw DimensionTooLarge("d=" + std::to_string(d) + " exceeds the enumeration limit " +
                            std::to_string(opts.enumeration_limit));
  const std::size_t rows = rm.row_count();

  // Columns doubled once so a Gray-code flip of u_j is a single add per row.
  std::vector<std::vector<Int>> twice(d, std::vector<Int>(rows));
  for (std::size_t i = 0; i < rows; ++i)
    for (int j = 0; j < d; ++j) twice[j][i] = Int(2) * rm.scaled_cells[i][j];

  std::vector<int> u(d, 1);
  std::vector<Int> y = multiply(rm.scaled_cells, u);
  Int obj = l1_norm(y);

  BestCandidate best;
  best.consider(obj, abs_int(y.back()), u, sign_of(y.back()));

  const std::uint64_t patterns = 1ULL << (d - 1);
  for (std::uint64_t k = 1; k < patterns; ++k) {
#if defined(__GNUC__) || defined(__clang__)
    const int j = __builtin_ctzll(k);
#else
    int j = 0;
    while (((k >> j) & 1ULL) == 0) ++j;
#endif
    u[j] = -u[j];
    const auto& col = twice[j];
    if (u[j] > 0) {
      for (std::size_t i = 0; i < rows; ++i) {
        obj -= abs_int(y[i]);
        y[i] += col[i];
        obj += abs_int(y[i]);
      }
    } else {
      for (std::size_t i = 0; i < rows; ++i) {
        obj -= abs_int(y[i]);
        y[i] -= col[i];
        obj += abs_int(y[i]);
      }
    }
    best.consider(obj, abs_int(y.back()), u, sign_of(y.back()));
  }

  TcaAxis axis = factor_scores(rm, best.u_fixed);
  axis.method = TcaMethod::kEnumerate;
  axis.tie_count = best.tie_count;
  axis = canonicalize(rm, axis);
  if (axis.delta != Rat(best.objective, rm.denominator))
    throw InternalError("enumeration lost the optimum while canonicalizing");
  return axis;
}

AscentRun ascend_from(const ResidualMatrix& rm, std::vector<int> u0) {
  AscentRun run;
  std::set<std::vector<int>> seen;
  std::vector<int> u = std::move(u0);
  for (int iter = 0; iter < 1000; ++iter) {
    std::vector<Int> y = multiply(rm.scaled_cells, u);
    run.objectives.push_back(l1_norm(y));
    std::vector<int> v = signs_of(y);
    std::vector<Int> z = multiply_transposed(rm.scaled_cells, v);
    run.objectives.push_back(l1_norm(z));
    std::vector<int> u_next = signs_of(z);
    if (u_next == u) break;
    if (!seen.insert(u).second) break;  // plateau cycle
    u = std::move(u_next);
  }
  run.u = std::move(u);
  run.objective = l1_norm(multiply(rm.scaled_cells, run.u));
  return run;
}

TcaAxis first_axis_ascent(const ResidualMatrix& rm, const RestartPolicy& policy) {
  const int d = rm.d;
  const long long n = rm.n_voters;
  const std::size_t rows = rm.row_count();

  std::vector<std::vector<int>> starts;
  if (policy.column_seeds) {
    for (int j = 0; j < d; ++j) {
      std::vector<int> v(rows);
      for (std::size_t i = 0; i < rows; ++i) v[i] = sign_of(rm.scaled_cells[i][j]);
      starts.push_back(signs_of(multiply_transposed(rm.scaled_cells, v)));
    }
  }
  long long row_seed_count = std::min<long long>(n, policy.max_row_seeds);
  if (row_seed_count > 0) {
    std::vector<long long> idx(n);
    for (long long i = 0; i < n; ++i) idx[i] = i;
    SplitMix64 rng(policy.seed);
    for (long long i = 0; i < row_seed_count; ++i) {
      long long j = i + static_cast<long long>(rng.below(static_cast<std::uint64_t>(n - i)));
      std::swap(idx[i], idx[j]);
      const auto& row = rm.scaled_cells[idx[i]];
      std::vector<int> u0(d);
      for (int c = 0; c < d; ++c) u0[c] = sign_of(row[c]);
      starts.push_back(std::move(u0));
    }
  }
  if (starts.empty()) throw InputError("ascent needs at least one start");

  BestCandidate best;
  for (auto& u0 : starts) {
    AscentRun run = ascend_from(rm, std::move(u0));
    std::vector<Int> y = multiply(rm.scaled_cells, run.u);
    best.consider(run.objective, abs_int(y.back()), run.u, sign_of(y.back()));
  }

  TcaAxis axis = factor_scores(rm, best.u_fixed);
  axis.method = TcaMethod::kAscent;
  axis.restarts_used = static_cast<int>(starts.size());
  axis.tie_count = best.tie_count;
  return canonicalize(rm, axis);
}

TcaAxis first_axis(const ResidualMatrix& rm, EngineChoice engine, const TcaOptions& opts,
                   const RestartPolicy& policy) {
  switch (engine) {
    case EngineChoice::kEnumerate:
      return first_axis_enumerate(rm, opts);
    case EngineChoice::kAscent:
      return first_axis_ascent(rm, policy);
    case EngineChoice::kAuto:
    default:
      if (rm.d <= opts.enumeration_limit) return first_axis_enumerate(rm, opts);
      return first_axis_ascent(rm, policy);
  }
}

ResidualMatrix deflate(const ResidualMatrix& rm, const TcaAxis& axis) {
  if (axis.delta == 0) throw ZeroDispersion();
  std::vector<Int> y = multiply(rm.scaled_cells, axis.u);
  std::vector<Int> z = multiply_transposed(rm.scaled_cells, axis.v);
  Int s = l1_norm(y);
  if (Rat(s, rm.denominator) != axis.delta)
    throw InternalError("axis was not computed from this residual matrix");

  ResidualMatrix out;
  out.axis_index = rm.axis_index + 1;
  out.n_voters = rm.n_voters;
  out.d = rm.d;
  out.denominator = rm.denominator * s;
  out.scaled_cells.resize(rm.row_count());

  Int g = out.denominator;
  for (std::size_t i = 0; i < rm.row_count(); ++i) {
    auto& row = out.scaled_cells[i];
    row.resize(rm.d);
    for (int j = 0; j < rm.d; ++j) {
      row[j] = s * rm.scaled_cells[i][j] - y[i] * z[j];
      g = boost::multiprecision::gcd(g, abs_int(row[j]));
    }
  }
  if (g > 1) {
    out.denominator /= g;
    for (auto& row : out.scaled_cells)
      for (auto& x : row) x /= g;
  }
  return out;
}

Reconstitution reconstitute(const CorrespondenceMatrix& cm, const std::vector<TcaAxis>& axes) {
  const int d = cm.d;
  const long long n = cm.n_voters;
  Reconstitution rec;
  rec.all_axes = static_cast<int>(axes.size()) >= cm.rank_bound;
  rec.cells.assign(n + 1, std::vector<Rat>(d));
  const Rat col_mass(1, d);
  for (long long i = 0; i <= n; ++i) {
    Rat row_mass = cm.row_mass(i);
    for (int j = 0; j < d; ++j) {
      Rat bilinear(1);
      for (const auto& axis : axes) bilinear += axis.f[i] * axis.g[j] / axis.delta;
      rec.cells[i][j] = row_mass * col_mass * bilinear;
    }
  }
  return rec;
}

std::vector<TcaAxis> leading_axes(const CorrespondenceMatrix& cm, int count,
                                  const TcaOptions& opts, EngineChoice engine,
                                  const RestartPolicy& policy) {
  std::vector<TcaAxis> axes;
  ResidualMatrix rm = residual(cm);
  for (int alpha = 0; alpha < count && alpha < cm.rank_bound; ++alpha) {
    TcaAxis axis = first_axis(rm, engine, opts, policy);
    if (axis.delta == 0) break;
    if (alpha + 1 < count && alpha + 1 < cm.rank_bound) {
      ResidualMatrix next = deflate(rm, axis);
      axes.push_back(std::move(axis));
      rm = std::move(next);
    } else {
      axes.push_back(std::move(axis));
    }
  }
  return axes;
}

}  // namespace riffle
