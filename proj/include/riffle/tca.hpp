#pragma once

#include <cstdint>
#include <vector>

#include "riffle/numeric.hpp"
#include "riffle/profile.hpp"

namespace riffle {

// Taxicab correspondence analysis of the nega-coded table. Each axis
// maximizes ||P u||_1 over sign vectors u; the optimum is found either by
// complete enumeration of the 2^(d-1) essentially distinct patterns or by
// an alternating sign-iteration ascent with restarts. All quantities are
// exact rationals held as integer matrices over a common denominator.
//
// Relation to the doubled coding (scores stacked over reversed scores):
// analyzing the nega-coded table equals analyzing the doubled table with
// the reversed block pinned to the -1 side, so the first dispersion here
// never exceeds the doubled table's. Only the nega coding is implemented.

// P = R_nega / t with row masses 1/(2n) for voters, 1/2 for the nega row,
// and column masses 1/d.
struct CorrespondenceMatrix {
  std::vector<std::vector<Int>> num;  // (n+1) x d; cell = num/denom
  Int denom;                          // = t
  long long n_voters = 0;
  int d = 0;
  int rank_bound = 0;  // k = rank(P) - 1, the number of axes

  Rat cell(std::size_t i, std::size_t j) const { return Rat(num[i][j], denom); }
  Rat row_mass(std::size_t i) const;
  Rat col_mass() const { return Rat(1, d); }
};

// Residual correspondence matrix P_alpha scaled to integers. For alpha = 1
// the denominator is 2t and the cells are 2r_ij - (d-1) on voter rows and
// 2*nega_j - n(d-1) on the nega row; every row and column sums to zero.
struct ResidualMatrix {
  std::vector<std::vector<Int>> scaled_cells;
  Int denominator;
  int axis_index = 1;
  long long n_voters = 0;
  int d = 0;

  std::size_t row_count() const { return scaled_cells.size(); }
};

enum class TcaMethod { kEnumerate, kAscent };

// One principal axis: sign vectors u (items) and v (voters + nega row),
// basic vectors a = P u and b = P'v, factor scores f = D_n^-1 a and
// g = D_p^-1 b, and the dispersion delta = ||a||_1 = ||b||_1.
// The orientation is fixed so that f(nega) <= 0.
struct TcaAxis {
  std::vector<int> u;  // d signs, +-1
  std::vector<int> v;  // n+1 signs; v.back() is the nega row
  std::vector<Rat> a;
  std::vector<Rat> b;
  std::vector<Rat> f;  // f.back() is the nega row score
  std::vector<Rat> g;
  Rat delta;
  int axis_index = 1;
  TcaMethod method = TcaMethod::kEnumerate;
  int restarts_used = 0;
  long long tie_count = 1;  // enumerated patterns achieving the maximum

  Rat f_nega() const { return f.back(); }

  // Voter f scores as integer numerators over d(d-1). Exact on the first
  // axis (the cluster lattice); throws OffLattice if any denominator fails
  // to divide, which would indicate an implementation fault.
  std::vector<Int> voter_f_numerators(int d) const;
};

struct TcaOptions {
  int enumeration_limit = 24;  // max d for complete enumeration
};

inline constexpr std::uint64_t kDefaultSeed = 0x243f6a8885a308d3ULL;

// Restarts for the ascent: every column of the residual seeds a v sign
// pattern, plus up to max_row_seeds distinct voter rows sampled with the
// given seed each seeding a u pattern.
struct RestartPolicy {
  bool column_seeds = true;
  int max_row_seeds = 64;
  std::uint64_t seed = kDefaultSeed;
};

CorrespondenceMatrix build_correspondence(const NegaTable& nt);

ResidualMatrix residual(const CorrespondenceMatrix& cm);

// Builds the axis determined by the item sign vector u: a = P u, v = sgn(a),
// b = P'v, f = D_n^-1 a, g = D_p^-1 b, delta = ||a||_1. If f(nega) > 0 the
// whole axis is negated first, so the returned u may be -u.
TcaAxis factor_scores(const ResidualMatrix& rm, std::vector<int> u);

// Global maximum of ||P u||_1 by scanning 2^(d-1) sign patterns with
// u(last) fixed to +1 (Gray-code order). Ties resolve to the pattern with
// the largest |f(nega)|, then the lexicographically smallest sign-fixed u.
// Throws DimensionTooLarge past the enumeration limit.
TcaAxis first_axis_enumerate(const ResidualMatrix& rm, const TcaOptions& opts = {});

// Alternating ascent u -> sgn(P'v), v -> sgn(P u) from each restart; the
// objective never decreases within a restart and the result never exceeds
// the enumeration optimum. Restarts reduce with the same tie-break as the
// enumeration, so the outcome does not depend on scheduling.
TcaAxis first_axis_ascent(const ResidualMatrix& rm, const RestartPolicy& policy = {});

// Ascent from one starting sign vector; exposed so tests can check the
// per-iteration monotonicity of the objective.
struct AscentRun {
  std::vector<int> u;
  Int objective;              // scaled by rm.denominator
  std::vector<Int> objectives;  // one entry per half-iteration
};
AscentRun ascend_from(const ResidualMatrix& rm, std::vector<int> u0);

// P_{alpha+1} = P_alpha - D_n f g' D_p / delta. Exact: the denominator is
// multiplied by the scaled dispersion and the result reduced by the gcd.
// Throws ZeroDispersion when axis.delta == 0.
ResidualMatrix deflate(const ResidualMatrix& rm, const TcaAxis& axis);

// p_ij = p_i* p_*j [1 + sum_alpha f(i) g(j) / delta]; exact when all k axes
// are supplied (all_axes reports whether they were).
struct Reconstitution {
  std::vector<std::vector<Rat>> cells;
  bool all_axes = false;
};
Reconstitution reconstitute(const CorrespondenceMatrix& cm, const std::vector<TcaAxis>& axes);

enum class EngineChoice { kAuto, kEnumerate, kAscent };

// Enumerate when d fits under the limit, ascent otherwise.
TcaAxis first_axis(const ResidualMatrix& rm, EngineChoice engine, const TcaOptions& opts = {},
                   const RestartPolicy& policy = {});

// The first `count` axes of a profile's nega table (deflating in between).
std::vector<TcaAxis> leading_axes(const CorrespondenceMatrix& cm, int count,
                                  const TcaOptions& opts = {},
                                  EngineChoice engine = EngineChoice::kAuto,
                                  const RestartPolicy& policy = {});

}  // namespace riffle
