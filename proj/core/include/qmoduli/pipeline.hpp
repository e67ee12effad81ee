#pragma once

// End-to-end moduli computations for the blowup quiver and the Kronecker
// quiver: moduli fans, the maps between representation spaces, and the
// checks that tie them to the reference fans.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "qmoduli/numeric.hpp"
#include "qmoduli/quiver.hpp"
#include "qmoduli/semi_invariants.hpp"
#include "qmoduli/stability.hpp"
#include "qmoduli/toric.hpp"

namespace qmoduli {

enum class ModuliStatus {
  ok,
  /// No semistable points: the flow polytope is empty.
  empty,
  /// The flow polytope has lower than expected dimension (wall weights).
  degenerate,
};

std::string to_string(ModuliStatus s);

struct ModuliOptions {
  /// Generation is checked up to this degree.
  Int generation_r_max = 4;
  /// Largest Veronese degree tried when degree one does not generate.
  Int max_generation_degree = 6;
};

struct ModuliResult {
  Quiver quiver;
  Weight weight;
  ModuliStatus status = ModuliStatus::ok;
  /// Veronese degree d the fan was built from (1 when B(w) generates).
  std::optional<Int> generation_degree;
  std::optional<Fan> fan;
  /// Normal fans of the polytopes at degrees d and 2d agree.
  bool stabilized = false;
  bool fine = false;
  int polytope_dimension = -1;
  std::size_t expected_dimension = 0;
  /// Fan rays are functionals in these lattice coordinates.
  IntMatrix lattice_basis;
  std::vector<std::string> diagnostics;
};

ModuliResult moduli_fan(const Quiver& q, const Weight& w, const ModuliOptions& options = {});

/// The chart where e = 0: [a_0..a_m] x [b_{m+1}..b_n].
struct EChartPoint {
  RationalVector a;
  RationalVector b;
};

/// A point [a_0..a_n] with some a_i != 0 for i > m.
struct ComplementPoint {
  RationalVector a;
};

using BlowupPoint = std::variant<EChartPoint, ComplementPoint>;

/// Kronecker scalars X_i = x_i (i <= m) and e * x_i (i > m).
ThinRep pushforward_rep(int n, int m, const ThinRep& rep);

/// E-chart: (a, b, e = 0). Complement: (a, e = 1). Throws
/// std::invalid_argument on invalid chart data.
ThinRep tautological_rep(int n, int m, const BlowupPoint& point);

/// Image in P^n: (a_0..a_m, 0..0) on the E-chart, a on the complement.
RationalVector projection(int n, int m, const BlowupPoint& point);

/// Seeded random chart points with small-height rational coordinates.
class PointSampler {
 public:
  PointSampler(int n, int m, std::uint64_t seed);
  EChartPoint e_chart();
  ComplementPoint complement();
  Rational rational();
  Rational nonzero_rational();

 private:
  int n_;
  int m_;
  std::mt19937_64 engine_;
};

inline constexpr std::uint64_t default_seed = 20240611;

struct CommuteReport {
  std::size_t e_chart_samples = 0;
  std::size_t complement_samples = 0;
  std::size_t failures = 0;
  bool ok() const { return failures == 0; }
};

/// Compares T then F then the (-p, p) monomial map with projection then
/// T_0, on `samples` points of each chart.
CommuteReport verify_commute(int n, int m, Int p, Int q, std::size_t samples, std::uint64_t seed = default_seed);

struct ExceptionalLocusReport {
  NormalFan face;
  std::optional<FanIsomorphism> witness;
  bool ok = false;
};

/// Normal fan of the face {exponent of e = 0} of the flow polytope at
/// (-p, p-q, q), compared with P^m x P^(n-m-1).
ExceptionalLocusReport exceptional_locus(int n, int m, Int p, Int q);

struct BlowdownReport {
  bool ok = false;
  bool blowup_identified = false;
  bool kronecker_identified = false;
  /// The blowup moduli fan, carried into the Kronecker lattice, is a star
  /// subdivision of the Kronecker moduli fan.
  bool star_subdivision = false;
  /// The contracted ray corresponds to the exceptional ray of blowup_fan.
  bool contracted_is_exceptional = false;
  std::optional<FanIsomorphism> blowup_witness;
  std::optional<FanIsomorphism> kronecker_witness;
  /// T with Phi K_kron = K_blowup T, Phi the lattice map of the pushforward.
  std::optional<IntMatrix> lattice_map;
  std::string reason;
};

BlowdownReport blowdown_check(int n, int m, Int p, Int q);

struct ContractionReport {
  /// Every (-p, -1, p+1)-stable pattern is (-p, 0, p)-semistable.
  bool descent = false;
  /// E-chart points over a fixed [a] share one image at (-p, 0, p).
  bool collapse = false;
  /// Complement points map to their P^n coordinates.
  bool complement_match = false;
  std::size_t fibers_checked = 0;
  bool ok() const { return descent && collapse && complement_match; }
};

ContractionReport theta_prime_contraction(int n, int m, Int p, std::size_t samples = 20,
                                          std::uint64_t seed = default_seed, unsigned jobs = 1);

struct StageResult {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct VerifyOptions {
  std::size_t samples = 100;
  std::uint64_t seed = default_seed;
  unsigned jobs = 1;
};

struct VerifyReport {
  int n;
  int m;
  Int p;
  Int q;
  std::vector<StageResult> stages;
  bool ok() const;
};

/// Every check for one (n, m, p, q). Throws std::invalid_argument unless
/// 0 < p < q and the blowup bounds hold.
VerifyReport verify_all(int n, int m, Int p, Int q, const VerifyOptions& options = {});

}  // namespace qmoduli
