#include "properties.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"
#include "qmoduli/pipeline.hpp"
#include "qmoduli/sections.hpp"
#include "qmoduli/semi_invariants.hpp"
#include "qmoduli/stability.hpp"
#include "qmoduli/toric.hpp"

namespace qmoduli::props {

namespace {

using Rng = std::mt19937_64;

class Runner {
 public:
  Runner(const char* module, const char* name) {
    result_.module = module;
    result_.name = name;
  }

  void check(bool ok, const std::function<std::string()>& describe) {
    ++result_.cases;
    if (!ok && result_.failures++ == 0) {
      result_.first_failure = describe();
    }
  }

  std::size_t cases() const { return result_.cases; }
  PropertyResult result() const { return result_; }

 private:
  PropertyResult result_;
};

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::string vec_str(const IntVector& v) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    out << (i ? "," : "") << v[i];
  }
  out << ')';
  return out.str();
}

std::string ints_str(const std::vector<Integer>& v) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    out << (i ? "," : "") << v[i];
  }
  out << ')';
  return out.str();
}

std::string quiver_str(const Quiver& q) {
  std::ostringstream out;
  out << q.vertex_count() << " vertices:";
  for (const auto& a : q.arrows()) {
    out << ' ' << a.source << "->" << a.target;
  }
  return out.str();
}

Weight theta(Int p, Int q) { return Weight({Integer(-p), Integer(p - q), Integer(q)}); }

std::pair<int, int> random_blowup(Rng& rng, int n_min, int n_max) {
  int n = uniform(rng, n_min, n_max);
  return {n, uniform(rng, 0, n - 2)};
}

Quiver shuffled(const Quiver& q, Rng& rng) {
  auto arrows = q.arrows();
  std::shuffle(arrows.begin(), arrows.end(), rng);
  return Quiver(q.vertex_count(), std::move(arrows));
}

std::vector<bool> flags(const ZeroPattern& p) {
  std::vector<bool> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i] = p.nonzero(i);
  }
  return out;
}

ThinRep rep_with_pattern(const ZeroPattern& p, Rng& rng) {
  ThinRep r;
  for (std::size_t i = 0; i < p.size(); ++i) {
    r.values.push_back(p.nonzero(i) ? oracle::random_nonzero(rng) : Rational(0));
  }
  return r;
}

ZeroPattern random_pattern(std::size_t arrows, Rng& rng) {
  std::uint64_t bits = rng() & ((std::uint64_t{1} << arrows) - 1);
  return {arrows, bits};
}

ThinRep act(const Quiver& q, const RationalVector& g, const ThinRep& r) {
  ThinRep out = r;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    out.values[a] = g[static_cast<std::size_t>(q.arrow(a).target - 1)] * r.values[a] /
                    g[static_cast<std::size_t>(q.arrow(a).source - 1)];
  }
  return out;
}

RationalVector random_group(std::size_t vertices, Rng& rng) {
  RationalVector g;
  for (std::size_t v = 0; v < vertices; ++v) {
    g.push_back(oracle::random_nonzero(rng));
  }
  return g;
}

// Weight w = divergence of a sparse random nonnegative flow, so B(w) is
// nonempty.
Weight feasible_weight(const Quiver& q, Rng& rng, int max_flow) {
  std::vector<Integer> w(static_cast<std::size_t>(q.vertex_count()), 0);
  for (const auto& a : q.arrows()) {
    int f = uniform(rng, 0, 2) == 0 ? uniform(rng, 1, max_flow) : 0;
    w[static_cast<std::size_t>(a.target - 1)] += f;
    w[static_cast<std::size_t>(a.source - 1)] -= f;
  }
  return Weight(std::move(w));
}

// Largest r <= r_max keeping the total demand r * (sum of positive entries)
// at most 12, which bounds the basis size.
Int capped_degree(const Weight& w, Int r_max) {
  Integer supply = 0;
  for (const auto& x : w.entries()) {
    supply += x > 0 ? x : Integer(0);
  }
  Int r = r_max;
  while (r > 1 && supply * r > 12) {
    --r;
  }
  return r;
}

Fan random_smooth_complete_fan(Rng& rng) {
  Fan base = [&]() -> Fan {
    switch (uniform(rng, 0, 3)) {
      case 0:
        return projective_space_fan(uniform(rng, 1, 4));
      case 1: {
        auto [n, m] = random_blowup(rng, 2, 4);
        return blowup_fan(n, m);
      }
      case 2: {
        int a = uniform(rng, 1, 2);
        return product_fan(projective_space_fan(a), projective_space_fan(uniform(rng, 1, 4 - a)));
      }
      default: {
        int n = uniform(rng, 2, 4);
        Fan p = projective_space_fan(n);
        IntVector v(static_cast<std::size_t>(n), 0);
        for (const auto& r : p.cones().front()) {
          for (std::size_t k = 0; k < v.size(); ++k) {
            v[k] += p.ray(r)[k];
          }
        }
        return star_subdivision(p, v);
      }
    }
  }();
  return transform(base, oracle::random_unimodular(base.rank(), rng));
}

ToricDivisor principal(const Fan& f, const IntVector& u) {
  ToricDivisor d{IntVector(f.rays().size(), 0)};
  for (std::size_t i = 0; i < f.rays().size(); ++i) {
    d.coefficients[i] = dot(u, f.ray(i));
  }
  return d;
}

IntVector random_character(std::size_t rank, Rng& rng, int bound) {
  IntVector u(rank);
  for (auto& x : u) {
    x = uniform(rng, -bound, bound);
  }
  return u;
}

// {O, O(H-E), O(H)} with each bundle moved within its class by a random
// principal divisor.
LineBundleCollection twisted_blowup_collection(int n, int m, Rng& rng) {
  auto c = blowup_collection(n, m);
  std::vector<ToricDivisor> bundles;
  for (const auto& b : c.bundles) {
    bundles.push_back(b + principal(c.fan, random_character(c.fan.rank(), rng, 2)));
  }
  return LineBundleCollection(c.fan, std::move(bundles));
}

// --- quiver-core ---------------------------------------------------------

PropertyResult toric_round_trip(std::uint64_t s) {
  Runner run("quiver-core", "toric_form_round_trip");
  Rng rng(s);
  while (run.cases() < min_cases) {
    const std::size_t n = static_cast<std::size_t>(uniform(rng, 2, 7));
    std::vector<Integer> t(n - 1);
    for (auto& x : t) {
      x = Integer(uniform(rng, -1000000, 1000000)) * Integer(uniform(rng, -1000000, 1000000)) *
              Integer(uniform(rng, -1000000, 1000000)) +
          uniform(rng, -5, 5);
    }
    auto back = toric_form(weight_from_toric_form(t));
    run.check(back == t, [&] { return "toric vector " + ints_str(t) + " came back as " + ints_str(back); });
    Weight w = oracle::random_weight(rng, n, 1000);
    auto t2 = toric_form(w);
    run.check(weight_from_toric_form(t2) == w, [&] { return "weight " + to_string(w); });
  }
  return run.result();
}

PropertyResult blowup_quiver_validates(std::uint64_t) {
  Runner run("quiver-core", "blowup_quiver_validates");
  for (int n = 2; n <= 21; ++n) {
    for (int m = 0; m <= n - 2; ++m) {
      auto report = validate(blowup_quiver(n, m), SourceRequirement::vertex_one);
      run.check(report.ok() && report.unique_source == 1,
                [&] { return "blowup_quiver(" + std::to_string(n) + "," + std::to_string(m) + ")"; });
    }
  }
  return run.result();
}

PropertyResult arrow_counts(std::uint64_t) {
  Runner run("quiver-core", "arrow_counts");
  for (int n = 2; n <= 21; ++n) {
    for (int m = 0; m <= n - 2; ++m) {
      auto q = blowup_quiver(n, m);
      run.check(q.arrow_count() == static_cast<std::size_t>(n) + 2 && q.multiplicity(1, 3) == std::size_t(m + 1) &&
                    q.multiplicity(1, 2) == 1 && q.multiplicity(2, 3) == std::size_t(n - m),
                [&] { return "blowup_quiver(" + std::to_string(n) + "," + std::to_string(m) + ")"; });
    }
  }
  for (int n = 2; n <= 201; ++n) {
    run.check(kronecker_quiver(n).arrow_count() == static_cast<std::size_t>(n) + 1,
              [&] { return "kronecker_quiver(" + std::to_string(n) + ")"; });
  }
  return run.result();
}

// --- thin-stability ------------------------------------------------------

PropertyResult supports_are_closed(std::uint64_t s) {
  Runner run("thin-stability", "subrep_supports_closed");
  Rng rng(s);
  while (run.cases() < min_cases) {
    auto q = oracle::random_acyclic_quiver(rng, 6, 12);
    auto p = random_pattern(q.arrow_count(), rng);
    auto supports = subrep_supports(q, p);
    bool closed = std::all_of(supports.begin(), supports.end(), [&](const SupportSet& set) {
      for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        if (p.nonzero(a) && set.contains(q.arrow(a).source) && !set.contains(q.arrow(a).target)) {
          return false;
        }
      }
      return true;
    });
    std::vector<std::uint64_t> masks;
    for (const auto& set : supports) {
      masks.push_back(set.mask());
    }
    std::sort(masks.begin(), masks.end());
    bool complete = masks == oracle::closed_subsets(q, flags(p));
    run.check(closed && complete, [&] { return quiver_str(q) + " pattern " + p.to_string(); });
  }
  return run.result();
}

PropertyResult pattern_determines_class(std::uint64_t s) {
  Runner run("thin-stability", "classification_depends_only_on_pattern");
  Rng rng(s);
  while (run.cases() < min_cases) {
    auto q = oracle::random_acyclic_quiver(rng, 6, 12);
    auto w = oracle::random_weight(rng, static_cast<std::size_t>(q.vertex_count()), 4);
    auto p = random_pattern(q.arrow_count(), rng);
    auto r1 = rep_with_pattern(p, rng);
    auto r2 = rep_with_pattern(p, rng);
    std::vector<bool> nz;
    for (const auto& x : r1.values) {
      nz.push_back(x != 0);
    }
    auto c1 = semistability(q, pattern_of(r1), w);
    auto c2 = semistability(q, pattern_of(r2), w);
    run.check(pattern_of(r1) == pattern_of(r2) && c1 == c2 && c1 == oracle::stability(q, nz, w),
              [&] { return quiver_str(q) + " weight " + to_string(w) + " pattern " + p.to_string(); });
  }
  return run.result();
}

PropertyResult oracle_equivalence(std::uint64_t) {
  Runner run("thin-stability", "closed_form_oracle_equivalence");
  for (int n = 2; n <= 5; ++n) {
    for (int m = 0; m <= n - 2; ++m) {
      auto q = blowup_quiver(n, m);
      for (Int p = 1; p <= 3; ++p) {
        for (Int qq = p + 1; qq <= 3; ++qq) {
          const Weight w = theta(p, qq);
          const Weight wp = Weight({Integer(-p), Integer(0), Integer(p)});
          for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << q.arrow_count()); ++bits) {
            ZeroPattern pat(q.arrow_count(), bits);
            auto brute = oracle::stability(q, flags(pat), w);
            auto brute_prime = oracle::stability(q, flags(pat), wp);
            bool ok = paper_stability_oracle(n, m, pat, OracleCase::theta) == brute &&
                      semistability(q, pat, w) == brute &&
                      paper_stability_oracle(n, m, pat, OracleCase::theta_prime) == brute_prime &&
                      theta_prime_semistable(n, m, pat) == is_semistable(brute_prime);
            run.check(ok, [&] {
              return "n=" + std::to_string(n) + " m=" + std::to_string(m) + " p=" + std::to_string(p) +
                     " q=" + std::to_string(qq) + " pattern " + pat.to_string();
            });
          }
        }
      }
    }
  }
  return run.result();
}

PropertyResult fine_excludes_strict(std::uint64_t s) {
  Runner run("thin-stability", "fine_implies_no_strictly_semistable");
  Rng rng(s);
  ClassifyOptions options;
  options.max_arrows = 12;
  while (run.cases() < min_cases) {
    auto q = oracle::random_acyclic_quiver(rng, 5, 12);
    auto w = oracle::random_weight(rng, static_cast<std::size_t>(q.vertex_count()), 20);
    if (!fine_moduli_check(w)) {
      continue;
    }
    auto c = classify_patterns(q, w, options);
    run.check(c.count(Stability::strictly_semistable) == 0,
              [&] { return quiver_str(q) + " weight " + to_string(w); });
  }
  return run.result();
}

PropertyResult scaling_invariance(std::uint64_t s) {
  Runner run("thin-stability", "scaling_invariance");
  Rng rng(s);
  while (run.cases() < min_cases) {
    auto q = oracle::random_acyclic_quiver(rng, 5, 10);
    auto w = oracle::random_weight(rng, static_cast<std::size_t>(q.vertex_count()), 5);
    Integer k = uniform(rng, 2, 7);
    auto a = classify_patterns(q, w);
    auto b = classify_patterns(q, w.scaled(k));
    run.check(a.classes == b.classes, [&] { return quiver_str(q) + " weight " + to_string(w); });
  }
  return run.result();
}

// --- semi-invariants -----------------------------------------------------

PropertyResult divergence_consistency(std::uint64_t s) {
  Runner run("semi-invariants", "basis_has_weight_r_theta");
  Rng rng(s);
  while (run.cases() < min_cases) {
    auto q = oracle::random_acyclic_quiver(rng, 4, 8);
    auto w = feasible_weight(q, rng, 2);
    Int r = capped_degree(w, uniform(rng, 1, 4));
    auto basis = semi_invariant_basis(q, w, r);
    bool ok = std::all_of(basis.begin(), basis.end(),
                          [&](const Monomial& mo) { return monomial_weight(q, mo) == w.scaled(r); }) &&
              std::is_sorted(basis.begin(), basis.end(), grlex_less) &&
              std::adjacent_find(basis.begin(), basis.end()) == basis.end();
    run.check(ok, [&] { return quiver_str(q) + " weight " + to_string(w) + " r=" + std::to_string(r); });
  }
  return run.result();
}

PropertyResult lattice_point_equality(std::uint64_t s) {
  Runner run("semi-invariants", "basis_equals_flow_polytope_points");
  Rng rng(s);
  while (run.cases() < min_cases) {
    auto q = oracle::random_acyclic_quiver(rng, 4, 8);
    auto w = feasible_weight(q, rng, 1);
    Int r = capped_degree(w, uniform(rng, 1, 4));
    std::set<IntVector> basis;
    for (const auto& mo : semi_invariant_basis(q, w, r)) {
      basis.insert(mo.exponents);
    }
    auto poly = flow_polytope(q, w.scaled(r));
    auto pts = poly.lattice_points();
    std::set<IntVector> from_polytope(pts.begin(), pts.end());
    bool ok = basis == from_polytope;
    // Each exponent is at most the total inflow at the positive vertices.
    Integer supply = 0;
    for (const auto& x : w.entries()) {
      supply += x > 0 ? x : Integer(0);
    }
    const Int bound = to_int(Integer(supply * r));
    double box = std::pow(static_cast<double>(bound + 1), static_cast<double>(q.arrow_count()));
    if (ok && box <= 2.0e5) {
      auto brute = oracle::lattice_points(q, w, r, bound);
      ok = basis == std::set<IntVector>(brute.begin(), brute.end());
    }
    run.check(ok, [&] { return quiver_str(q) + " weight " + to_string(w) + " r=" + std::to_string(r); });
  }
  return run.result();
}

PropertyResult multiplicativity(std::uint64_t s) {
  Runner run("semi-invariants", "multiplicativity");
  Rng rng(s);
  while (run.cases() < min_cases) {
    auto q = oracle::random_acyclic_quiver(rng, 4, 7);
    auto w = feasible_weight(q, rng, 2);
    Int r1 = capped_degree(w, uniform(rng, 1, 2)), r2 = capped_degree(w, uniform(rng, 1, 2));
    auto b1 = semi_invariant_basis(q, w, r1);
    auto b2 = semi_invariant_basis(q, w, r2);
    auto b12 = semi_invariant_basis(q, w, r1 + r2);
    const auto& m1 = b1[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(b1.size()) - 1))];
    const auto& m2 = b2[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(b2.size()) - 1))];
    auto prod = m1 * m2;
    bool ok = std::find(b12.begin(), b12.end(), prod) != b12.end() &&
              monomial_weight(q, prod) == w.scaled(r1 + r2);
    run.check(ok, [&] { return quiver_str(q) + " product " + vec_str(prod.exponents); });
  }
  return run.result();
}

PropertyResult orbit_invariance(std::uint64_t s) {
  Runner run("semi-invariants", "evaluate_point_orbit_invariance");
  Rng rng(s);
  while (run.cases() < min_cases) {
    auto [n, m] = random_blowup(rng, 2, 4);
    auto q = blowup_quiver(n, m);
    Int p = uniform(rng, 1, 2);
    Int qq = p + uniform(rng, 1, 2);
    auto basis = semi_invariant_basis(q, theta(p, qq), 1);
    auto rep = rep_with_pattern(ZeroPattern::all_nonzero(q.arrow_count()), rng);
    auto g = random_group(3, rng);
    auto before = evaluate_point(rep, basis);
    auto after = evaluate_point(act(q, g, rep), basis);
    run.check(before.has_value() && before == after,
              [&] { return "n=" + std::to_string(n) + " m=" + std::to_string(m); });
  }
  return run.result();
}

PropertyResult git_consistency(std::uint64_t s) {
  Runner run("semi-invariants", "evaluate_point_undefined_iff_unstable");
  Rng rng(s);
  const std::pair<Int, Int> pq[] = {{1, 2}, {1, 3}, {2, 3}};
  for (int n = 2; n <= 4; ++n) {
    for (int m = 0; m <= n - 2; ++m) {
      auto q = blowup_quiver(n, m);
      for (auto [p, qq] : pq) {
        const Weight w = theta(p, qq);
        auto basis = semi_invariant_basis(q, w, 1);
        auto classes = classify_patterns(q, w);
        for (std::size_t k = 0; k < classes.classes.size(); ++k) {
          auto rep = rep_with_pattern(classes.pattern(k), rng);
          bool undefined = !evaluate_point(rep, basis).has_value();
          run.check(undefined == (classes.classes[k] == Stability::unstable), [&] {
            return "n=" + std::to_string(n) + " m=" + std::to_string(m) + " pattern " +
                   classes.pattern(k).to_string();
          });
        }
      }
    }
  }
  return run.result();
}

// --- toric-geometry ------------------------------------------------------

PropertyResult blowup_fan_shape(std::uint64_t s) {
  Runner run("toric-geometry", "blowup_fan_smooth_complete_picard_two");
  Rng rng(s);
  while (run.cases() < min_cases) {
    auto [n, m] = random_blowup(rng, 2, 5);
    Fan f = run.cases() < 14 ? blowup_fan(n, m) : transform(blowup_fan(n, m), oracle::random_unimodular(n, rng));
    bool ok = is_smooth(f) && is_complete(f) && f.rays().size() == static_cast<std::size_t>(n) + 2 &&
              f.rays().size() - f.rank() == 2;
    run.check(ok, [&] { return "blowup_fan(" + std::to_string(n) + "," + std::to_string(m) + ")"; });
  }
  return run.result();
}

PropertyResult trivial_cohomology(std::uint64_t s) {
  Runner run("toric-geometry", "trivial_bundle_cohomology");
  Rng rng(s);
  while (run.cases() < min_cases) {
    Fan f = random_smooth_complete_fan(rng);
    auto h = cohomology(f, ToricDivisor{IntVector(f.rays().size(), 0)});
    std::vector<Integer> expected(f.rank() + 1, 0);
    expected[0] = 1;
    run.check(h == expected, [&] { return "rank " + std::to_string(f.rank()) + " got " + ints_str(h); });
  }
  return run.result();
}

PropertyResult serre_duality(std::uint64_t s) {
  Runner run("toric-geometry", "serre_duality");
  Rng rng(s);
  while (run.cases() < min_cases) {
    auto [n, m] = random_blowup(rng, 2, 3);
    Fan f = blowup_fan(n, m);
    Int a, b;
    switch (run.cases() % 8) {
      case 0: a = 0, b = 0; break;
      case 1: a = 1, b = 0; break;
      case 2: a = 0, b = 1; break;
      default: a = uniform(rng, -3, 3), b = uniform(rng, -3, 3);
    }
    auto d = divisor_class(f, a, b);
    auto h = cohomology(f, d);
    auto dual = cohomology(f, canonical_divisor(f) - d);
    std::reverse(dual.begin(), dual.end());
    run.check(h == dual, [&] {
      return "blowup_fan(" + std::to_string(n) + "," + std::to_string(m) + ") D=" + std::to_string(a) + "H+" +
             std::to_string(b) + "E";
    });
  }
  return run.result();
}

PropertyResult isomorphism_reflexive_symmetric(std::uint64_t s) {
  Runner run("toric-geometry", "fans_isomorphic_reflexive_symmetric");
  Rng rng(s);
  while (run.cases() < min_cases) {
    Fan a = random_smooth_complete_fan(rng);
    Fan b = transform(a, oracle::random_unimodular(a.rank(), rng));
    auto self = fans_isomorphic(a, a);
    auto ab = fans_isomorphic(a, b);
    auto ba = fans_isomorphic(b, a);
    bool ok = self && ab && ba && oracle::valid_witness(a, a, *self) && oracle::valid_witness(a, b, *ab) &&
              oracle::valid_witness(b, a, *ba);
    if (ok) {
      // The inverse of a witness is a witness the other way.
      auto inv = integer_inverse(ab->matrix);
      FanIsomorphism back{inv.value_or(IntMatrix{}), std::vector<std::size_t>(ab->ray_map.size())};
      for (std::size_t i = 0; i < ab->ray_map.size(); ++i) {
        back.ray_map[ab->ray_map[i]] = i;
      }
      ok = inv.has_value() && oracle::valid_witness(b, a, back);
    }
    run.check(ok, [&] { return "rank " + std::to_string(a.rank()) + " with " + std::to_string(a.rays().size()) + " rays"; });
  }
  return run.result();
}

PropertyResult euler_matches_sections(std::uint64_t s) {
  Runner run("toric-geometry", "euler_characteristic_of_generated_bundles");
  Rng rng(s);
  std::size_t tries = 0;
  while (run.cases() < min_cases && tries++ < 5000) {
    Fan f = projective_space_fan(2);
    ToricDivisor d{{}};
    if (uniform(rng, 0, 1) == 0) {
      auto [n, m] = random_blowup(rng, 2, 4);
      f = blowup_fan(n, m);
      Int a = uniform(rng, 0, 3);
      d = divisor_class(f, a, uniform(rng, -a - 1, 1));
    } else {
      f = projective_space_fan(uniform(rng, 1, 4));
      d = ToricDivisor{IntVector(f.rays().size(), 0)};
      for (auto& x : d.coefficients) {
        x = uniform(rng, -1, 2);
      }
    }
    auto h = cohomology(f, d);
    if (!std::all_of(h.begin() + 1, h.end(), [](const Integer& x) { return x == 0; })) {
      continue;
    }
    Int bound = 1;
    for (auto x : d.coefficients) {
      bound += std::abs(x);
    }
    const auto brute = oracle::h0(f, d, bound);
    const auto listed = section_basis(f, d).size();
    run.check(h[0] == brute && listed == brute, [&] {
      return "rank " + std::to_string(f.rank()) + " D=" + vec_str(d.coefficients) + " h=" + ints_str(h) +
             " brute=" + std::to_string(brute);
    });
  }
  return run.result();
}

// --- sections-collections ------------------------------------------------

PropertyResult section_arrow_counts(std::uint64_t s) {
  Runner run("sections-collections", "arrow_multiplicities");
  Rng rng(s);
  while (run.cases() < min_cases) {
    auto [n, m] = random_blowup(rng, 2, 5);
    auto sq = quiver_of_sections(twisted_blowup_collection(n, m, rng));
    const auto& q = sq.quiver;
    bool ok = q.multiplicity(1, 3) == std::size_t(m + 1) && q.multiplicity(1, 2) == 1 &&
              q.multiplicity(2, 3) == std::size_t(n - m) && same_up_to_relabeling(q, blowup_quiver(n, m));
    run.check(ok, [&] { return "n=" + std::to_string(n) + " m=" + std::to_string(m) + " " + quiver_str(q); });
  }
  return run.result();
}

PropertyResult character_partition(std::uint64_t s) {
  Runner run("sections-collections", "long_arrow_character_partition");
  Rng rng(s);
  while (run.cases() < min_cases) {
    auto [n, m] = random_blowup(rng, 2, 5);
    auto c = twisted_blowup_collection(n, m, rng);
    auto e_sections = section_basis(c.fan, arrow_divisor(c, 1, 2));
    auto short_sections = section_basis(c.fan, arrow_divisor(c, 2, 3));
    auto irreducible = irreducible_sections(c, 1, 3);
    std::set<IntVector> short_set(short_sections.begin(), short_sections.end());
    std::set<IntVector> irr_set(irreducible.begin(), irreducible.end());
    bool ok = e_sections.size() == 1;
    for (const auto& u : section_basis(c.fan, arrow_divisor(c, 1, 3))) {
      if (!ok) {
        break;
      }
      IntVector rest(u.size());
      for (std::size_t k = 0; k < u.size(); ++k) {
        rest[k] = u[k] - e_sections.front()[k];
      }
      ok = irr_set.contains(u) != short_set.contains(rest);
    }
    run.check(ok, [&] { return "n=" + std::to_string(n) + " m=" + std::to_string(m); });
  }
  return run.result();
}

PropertyResult no_relations(std::uint64_t s) {
  Runner run("sections-collections", "bound_ideal_empty");
  Rng rng(s);
  while (run.cases() < min_cases) {
    auto [n, m] = random_blowup(rng, 2, 5);
    auto relations = bound_ideal(quiver_of_sections(twisted_blowup_collection(n, m, rng)));
    run.check(relations.empty(), [&] {
      return "n=" + std::to_string(n) + " m=" + std::to_string(m) + ": " + std::to_string(relations.size()) +
             " relations";
    });
  }
  return run.result();
}

PropertyResult twist_invariance(std::uint64_t s) {
  Runner run("sections-collections", "exceptionality_twist_invariance");
  Rng rng(s);
  while (run.cases() < min_cases) {
    std::optional<LineBundleCollection> c;
    if (uniform(rng, 0, 1) == 0) {
      auto [n, m] = random_blowup(rng, 2, 3);
      c = blowup_collection(n, m);
    } else {
      int n = uniform(rng, 1, 3);
      std::vector<Int> degrees{0};
      int k = uniform(rng, 1, 3);
      for (int i = 0; i < k; ++i) {
        degrees.push_back(degrees.back() + uniform(rng, 1, 3));
      }
      c = projective_collection(n, degrees);
    }
    ToricDivisor twist{IntVector(c->fan.rays().size(), 0)};
    for (auto& x : twist.coefficients) {
      x = uniform(rng, -2, 2);
    }
    std::vector<ToricDivisor> moved;
    for (const auto& b : c->bundles) {
      moved.push_back(b + twist);
    }
    auto before = is_strong_exceptional(*c);
    auto after = is_strong_exceptional(LineBundleCollection(c->fan, moved));
    bool ok = before.ok == after.ok && before.pairs.size() == after.pairs.size();
    for (std::size_t i = 0; ok && i < before.pairs.size(); ++i) {
      ok = before.pairs[i].forward == after.pairs[i].forward && before.pairs[i].backward == after.pairs[i].backward;
    }
    run.check(ok, [&] { return "twist " + vec_str(twist.coefficients); });
  }
  return run.result();
}

// --- moduli-pipeline -----------------------------------------------------

PropertyResult chamber_constancy(std::uint64_t s) {
  Runner run("moduli-pipeline", "theta_fan_is_blowup_fan");
  Rng rng(s);
  const std::pair<Int, Int> pq[] = {{1, 2}, {1, 3}, {2, 3}};
  while (run.cases() < min_cases) {
    auto [n, m] = random_blowup(rng, 2, 4);
    auto [p, qq] = pq[uniform(rng, 0, 2)];
    auto q = run.cases() < 27 ? blowup_quiver(n, m) : shuffled(blowup_quiver(n, m), rng);
    auto result = moduli_fan(q, theta(p, qq));
    bool ok = result.status == ModuliStatus::ok && result.fan && is_smooth(*result.fan) && is_complete(*result.fan);
    if (ok) {
      auto reference = blowup_fan(n, m);
      auto iso = fans_isomorphic(*result.fan, reference);
      ok = iso && oracle::valid_witness(*result.fan, reference, *iso);
    }
    run.check(ok, [&] {
      return "n=" + std::to_string(n) + " m=" + std::to_string(m) + " p=" + std::to_string(p) +
             " q=" + std::to_string(qq) + " " + quiver_str(q);
    });
  }
  return run.result();
}

PropertyResult pushforward_equivariance(std::uint64_t s) {
  Runner run("moduli-pipeline", "pushforward_intertwines_actions");
  Rng rng(s);
  while (run.cases() < min_cases) {
    auto [n, m] = random_blowup(rng, 2, 5);
    auto q = blowup_quiver(n, m);
    auto rep = rep_with_pattern(random_pattern(q.arrow_count(), rng), rng);
    auto g = random_group(3, rng);
    auto upstream = pushforward_rep(n, m, act(q, g, rep));
    auto downstream = act(kronecker_quiver(n), {g[0], g[2]}, pushforward_rep(n, m, rep));
    run.check(upstream == downstream, [&] { return "n=" + std::to_string(n) + " m=" + std::to_string(m); });
  }
  return run.result();
}

PropertyResult pushforward_injective(std::uint64_t s) {
  Runner run("moduli-pipeline", "equal_pushforward_same_orbit");
  Rng rng(s);
  while (run.cases() < min_cases) {
    auto [n, m] = random_blowup(rng, 2, 5);
    const BlowupLayout layout(n, m);
    auto q = blowup_quiver(n, m);
    auto basis = semi_invariant_basis(q, theta(1, 2), 1);
    auto r1 = rep_with_pattern(ZeroPattern::all_nonzero(q.arrow_count()), rng);
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      if (a != layout.e() && uniform(rng, 0, 3) == 0) {
        r1.values[a] = 0;
      }
    }
    // Any other rep with the same image: pick e freely, solve for the rest.
    ThinRep r2 = r1;
    r2.values[layout.e()] = oracle::random_nonzero(rng);
    for (int i = m + 1; i <= n; ++i) {
      r2.values[layout.x(i)] = r1.values[layout.e()] * r1.values[layout.x(i)] / r2.values[layout.e()];
    }
    auto p1 = evaluate_point(r1, basis);
    auto p2 = evaluate_point(r2, basis);
    bool ok = pushforward_rep(n, m, r1) == pushforward_rep(n, m, r2) && p1 == p2;
    run.check(ok, [&] { return "n=" + std::to_string(n) + " m=" + std::to_string(m); });
  }
  return run.result();
}

RationalVector random_vector_with_zeros(std::size_t size, Rng& rng, std::size_t must_be_nonzero_from) {
  RationalVector v(size);
  bool any = false;
  for (std::size_t i = 0; i < size; ++i) {
    if (uniform(rng, 0, 2) != 0) {
      v[i] = oracle::random_nonzero(rng);
      any = any || i >= must_be_nonzero_from;
    }
  }
  if (!any) {
    auto i = static_cast<std::size_t>(uniform(rng, static_cast<int>(must_be_nonzero_from), static_cast<int>(size) - 1));
    v[i] = oracle::random_nonzero(rng);
  }
  return v;
}

PropertyResult tautological_stable(std::uint64_t s) {
  Runner run("moduli-pipeline", "tautological_reps_are_stable");
  Rng rng(s);
  const std::pair<Int, Int> pq[] = {{1, 2}, {1, 3}, {2, 3}};
  while (run.cases() < min_cases) {
    auto [n, m] = random_blowup(rng, 2, 5);
    auto [p, qq] = pq[uniform(rng, 0, 2)];
    BlowupPoint point;
    if (uniform(rng, 0, 1) == 0) {
      point = EChartPoint{random_vector_with_zeros(std::size_t(m + 1), rng, 0),
                          random_vector_with_zeros(std::size_t(n - m), rng, 0)};
    } else {
      point = ComplementPoint{random_vector_with_zeros(std::size_t(n + 1), rng, std::size_t(m + 1))};
    }
    auto rep = tautological_rep(n, m, point);
    auto cls = semistability(blowup_quiver(n, m), pattern_of(rep), theta(p, qq));
    run.check(cls == Stability::stable, [&] {
      return "n=" + std::to_string(n) + " m=" + std::to_string(m) + " pattern " + pattern_of(rep).to_string();
    });
  }
  return run.result();
}

PropertyResult wall_weight_projective(std::uint64_t s) {
  Runner run("moduli-pipeline", "wall_weight_fan_is_projective_space");
  Rng rng(s);
  while (run.cases() < min_cases) {
    auto [n, m] = random_blowup(rng, 2, 4);
    Int p = uniform(rng, 1, 3);
    auto q = run.cases() < 9 ? blowup_quiver(n, m) : shuffled(blowup_quiver(n, m), rng);
    const Weight w({Integer(-p), Integer(0), Integer(p)});
    auto result = moduli_fan(q, w);
    bool ok = !fine_moduli_check(w) && result.fan.has_value();
    if (ok) {
      auto reference = projective_space_fan(n);
      auto iso = fans_isomorphic(*result.fan, reference);
      ok = iso && oracle::valid_witness(*result.fan, reference, *iso);
    }
    run.check(ok, [&] {
      return "n=" + std::to_string(n) + " m=" + std::to_string(m) + " p=" + std::to_string(p) + " status " +
             to_string(result.status);
    });
  }
  return run.result();
}

// --- cli -----------------------------------------------------------------

struct Invocation {
  std::vector<std::string> args;
  int expected;
};

std::string join(const std::vector<std::string>& args) {
  std::string out;
  for (const auto& a : args) {
    out += (out.empty() ? "" : " ") + a;
  }
  return out;
}

Invocation random_invocation(Rng& rng) {
  auto num = [](auto x) { return std::to_string(x); };
  switch (uniform(rng, 0, 9)) {
    case 0: {
      int n = uniform(rng, 2, 6), m = uniform(rng, -1, n);
      return {{"quiver", "blowup", "--n", num(n), "--m", num(m)}, m >= 0 && m <= n - 2 ? 0 : 2};
    }
    case 1: {
      int n = uniform(rng, 0, 6);
      return {{"quiver", "kronecker", "--n", num(n)}, n >= 2 ? 0 : 2};
    }
    case 2:
      return {{"quiver", "json", R"({"vertices":2,"arrows":[{"src":1,"dst":2},{"src":2,"dst":1}]})"}, 1};
    case 3: {
      auto [n, m] = random_blowup(rng, 2, 4);
      int p = uniform(rng, 1, 2), q = p + uniform(rng, 1, 2);
      return {{"stability", "--quiver", "blowup:" + num(n) + "," + num(m), "--theta",
               num(-p) + "," + num(p - q) + "," + num(q), "--check-paper-oracle", "--jobs", num(uniform(rng, 1, 4))},
              0};
    }
    case 4: {
      int a = uniform(rng, -3, 3), b = uniform(rng, -3, 3);
      return {{"stability", "--quiver", "kronecker:2", "--theta", num(a) + "," + num(b)}, a + b == 0 ? 0 : 2};
    }
    case 5: {
      auto [n, m] = random_blowup(rng, 2, 3);
      int p = uniform(rng, 1, 2), q = p + uniform(rng, 0, 1);
      return {{"moduli", "--quiver", "blowup:" + num(n) + "," + num(m), "--theta",
               num(-p) + "," + num(p - q) + "," + num(q), "--identify", "--r-max", num(uniform(rng, 0, 3))},
              0};
    }
    case 6: {
      int n = uniform(rng, 2, 3), p = uniform(rng, 1, 2);
      bool flip = uniform(rng, 0, 1) == 1;
      std::string w = flip ? num(p) + "," + num(-p) : num(-p) + "," + num(p);
      return {{"moduli", "--quiver", "kronecker:" + num(n), "--theta", w, "--strict"}, flip ? 1 : 0};
    }
    case 7: {
      int p = uniform(rng, 1, 3), q = uniform(rng, 1, 3);
      return {{"verify", "--n", "2", "--m", "0", "--p", num(p), "--q", num(q), "--samples", "3", "--seed",
               num(rng() % 1000)},
              p < q ? 0 : 2};
    }
    case 8:
      return {{"no-such-command"}, 2};
    default:
      return {{"stability", "--quiver", "triangle:3", "--theta", "-1,0,1"}, 2};
  }
}

PropertyResult cli_determinism(std::uint64_t s) {
  Runner run("cli", "identical_invocations_identical_output");
  Rng rng(s);
  while (run.cases() < min_cases) {
    auto inv = random_invocation(rng);
    std::ostringstream out1, err1, out2, err2;
    int c1 = cli::run(inv.args, out1, err1);
    auto args2 = inv.args;
    if (args2.front() == "stability" || args2.front() == "verify") {
      auto it = std::find(args2.begin(), args2.end(), "--jobs");
      if (it != args2.end()) args2.erase(it, it + 2);
      args2.insert(args2.begin(), {"--jobs", std::to_string(uniform(rng, 1, 4))});
    }
    int c2 = cli::run(args2, out2, err2);
    run.check(c1 == c2 && out1.str() == out2.str(), [&] { return join(inv.args); });
  }
  return run.result();
}

PropertyResult cli_exit_codes(std::uint64_t s) {
  Runner run("cli", "exit_code_contract");
  Rng rng(s);
  while (run.cases() < min_cases) {
    auto inv = random_invocation(rng);
    std::ostringstream out, err;
    int code = cli::run(inv.args, out, err);
    run.check(code == inv.expected, [&] {
      return join(inv.args) + " exited " + std::to_string(code) + ", expected " + std::to_string(inv.expected) +
             ": " + err.str();
    });
  }
  return run.result();
}

}  // namespace

const std::vector<PropertyEntry>& all_properties() {
  static const std::vector<PropertyEntry> entries = {
      {"quiver-core", "toric_form_round_trip", toric_round_trip},
      {"quiver-core", "blowup_quiver_validates", blowup_quiver_validates},
      {"quiver-core", "arrow_counts", arrow_counts},
      {"thin-stability", "subrep_supports_closed", supports_are_closed},
      {"thin-stability", "classification_depends_only_on_pattern", pattern_determines_class},
      {"thin-stability", "closed_form_oracle_equivalence", oracle_equivalence},
      {"thin-stability", "fine_implies_no_strictly_semistable", fine_excludes_strict},
      {"thin-stability", "scaling_invariance", scaling_invariance},
      {"semi-invariants", "basis_has_weight_r_theta", divergence_consistency},
      {"semi-invariants", "basis_equals_flow_polytope_points", lattice_point_equality},
      {"semi-invariants", "multiplicativity", multiplicativity},
      {"semi-invariants", "evaluate_point_orbit_invariance", orbit_invariance},
      {"semi-invariants", "evaluate_point_undefined_iff_unstable", git_consistency},
      {"toric-geometry", "blowup_fan_smooth_complete_picard_two", blowup_fan_shape},
      {"toric-geometry", "trivial_bundle_cohomology", trivial_cohomology},
      {"toric-geometry", "serre_duality", serre_duality},
      {"toric-geometry", "fans_isomorphic_reflexive_symmetric", isomorphism_reflexive_symmetric},
      {"toric-geometry", "euler_characteristic_of_generated_bundles", euler_matches_sections},
      {"sections-collections", "arrow_multiplicities", section_arrow_counts},
      {"sections-collections", "long_arrow_character_partition", character_partition},
      {"sections-collections", "bound_ideal_empty", no_relations},
      {"sections-collections", "exceptionality_twist_invariance", twist_invariance},
      {"moduli-pipeline", "theta_fan_is_blowup_fan", chamber_constancy},
      {"moduli-pipeline", "pushforward_intertwines_actions", pushforward_equivariance},
      {"moduli-pipeline", "equal_pushforward_same_orbit", pushforward_injective},
      {"moduli-pipeline", "tautological_reps_are_stable", tautological_stable},
      {"moduli-pipeline", "wall_weight_fan_is_projective_space", wall_weight_projective},
      {"cli", "identical_invocations_identical_output", cli_determinism},
      {"cli", "exit_code_contract", cli_exit_codes},
  };
  return entries;
}

}  // namespace qmoduli::props
