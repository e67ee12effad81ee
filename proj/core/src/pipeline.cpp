#include "qmoduli/pipeline.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "qmoduli/sections.hpp"

namespace qmoduli {

std::string to_string(ModuliStatus s) {
  switch (s) {
    case ModuliStatus::ok:
      return "ok";
    case ModuliStatus::empty:
      return "empty";
    case ModuliStatus::degenerate:
      return "degenerate";
  }
  return "unknown";
}

ModuliResult moduli_fan(const Quiver& q, const Weight& w, const ModuliOptions& options) {
  if (w.size() != static_cast<std::size_t>(q.vertex_count())) {
    throw std::invalid_argument("moduli_fan: weight size does not match the quiver");
  }
  ModuliResult result{q, w, ModuliStatus::ok, std::nullopt, std::nullopt, false, false, -1, 0, IntMatrix{}, {}};
  result.fine = fine_moduli_check(w);
  const IntMatrix divergence = divergence_matrix(q);
  result.expected_dimension = integer_kernel(divergence).cols();

  if (flow_polytope(q, w).empty()) {
    result.status = ModuliStatus::empty;
    result.diagnostics.push_back("the flow polytope is empty; there are no semistable points");
    return result;
  }
  result.generation_degree =
      generation_degree(q, w, options.generation_r_max, options.max_generation_degree);
  Int d = 1;
  if (!result.generation_degree) {
    result.diagnostics.push_back("no Veronese degree up to " + std::to_string(options.max_generation_degree) +
                                 " is generated in degree one; using degree 1");
  } else {
    d = *result.generation_degree;
    if (d > 1) {
      result.diagnostics.push_back("degree one does not generate; using Veronese degree " + std::to_string(d));
    }
  }

  NormalFan base = normal_fan(flow_polytope(q, w.scaled(d)).as_lattice_polytope());
  result.polytope_dimension = base.dimension;
  result.lattice_basis = base.lattice_basis;
  if (base.degenerate) {
    result.status = ModuliStatus::degenerate;
    result.diagnostics.push_back("the flow polytope has dimension " + std::to_string(base.dimension) +
                                 ", expected " + std::to_string(base.expected_dimension));
    return result;
  }
  NormalFan doubled = normal_fan(flow_polytope(q, w.scaled(2 * d)).as_lattice_polytope());
  result.stabilized = doubled.fan && doubled.fan->same_as(*base.fan);
  if (!result.stabilized) {
    result.diagnostics.push_back("normal fans at degrees d and 2d differ");
  }
  result.fan = std::move(base.fan);
  return result;
}

ThinRep pushforward_rep(int n, int m, const ThinRep& rep) {
  BlowupLayout layout(n, m);
  if (rep.values.size() != layout.arrow_count()) {
    throw std::invalid_argument("pushforward_rep: representation does not match blowup_quiver(n, m)");
  }
  ThinRep out;
  for (int i = 0; i <= n; ++i) {
    Rational x = rep.values[layout.x(i)];
    out.values.push_back(i <= m ? x : x * rep.values[layout.e()]);
  }
  return out;
}

namespace {

bool all_zero(const RationalVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

void check_point(int n, int m, const BlowupPoint& point) {
  BlowupLayout layout(n, m);
  if (const auto* e = std::get_if<EChartPoint>(&point)) {
    if (e->a.size() != static_cast<std::size_t>(m + 1) || e->b.size() != static_cast<std::size_t>(n - m)) {
      throw std::invalid_argument("E-chart point needs m+1 coordinates a and n-m coordinates b");
    }
    if (all_zero(e->a) || all_zero(e->b)) {
      throw std::invalid_argument("E-chart point has an all-zero factor");
    }
  } else {
    const auto& c = std::get<ComplementPoint>(point);
    if (c.a.size() != static_cast<std::size_t>(n + 1)) {
      throw std::invalid_argument("complement point needs n+1 coordinates");
    }
    if (all_zero(RationalVector(c.a.begin() + m + 1, c.a.end()))) {
      throw std::invalid_argument("complement point lies on the centre (all a_i = 0 for i > m)");
    }
  }
}

}  // namespace

ThinRep tautological_rep(int n, int m, const BlowupPoint& point) {
  check_point(n, m, point);
  BlowupLayout layout(n, m);
  ThinRep rep{RationalVector(layout.arrow_count(), Rational(0))};
  if (const auto* e = std::get_if<EChartPoint>(&point)) {
    for (int i = 0; i <= m; ++i) {
      rep.values[layout.x(i)] = e->a[static_cast<std::size_t>(i)];
    }
    for (int i = m + 1; i <= n; ++i) {
      rep.values[layout.x(i)] = e->b[static_cast<std::size_t>(i - m - 1)];
    }
  } else {
    const auto& c = std::get<ComplementPoint>(point);
    for (int i = 0; i <= n; ++i) {
      rep.values[layout.x(i)] = c.a[static_cast<std::size_t>(i)];
    }
    rep.values[layout.e()] = 1;
  }
  return rep;
}

RationalVector projection(int n, int m, const BlowupPoint& point) {
  check_point(n, m, point);
  if (const auto* e = std::get_if<EChartPoint>(&point)) {
    RationalVector out = e->a;
    out.resize(static_cast<std::size_t>(n + 1), Rational(0));
    return out;
  }
  return std::get<ComplementPoint>(point).a;
}

PointSampler::PointSampler(int n, int m, std::uint64_t seed) : n_(n), m_(m), engine_(seed) {
  BlowupLayout check(n, m);
}

Rational PointSampler::rational() {
  // Numerators in [-9, 9], denominators in [1, 5].
  auto num = static_cast<long long>(engine_() % 19) - 9;
  auto den = static_cast<long long>(engine_() % 5) + 1;
  return Rational(num, den);
}

Rational PointSampler::nonzero_rational() {
  Rational r = 0;
  while (r == 0) {
    r = rational();
  }
  return r;
}

EChartPoint PointSampler::e_chart() {
  EChartPoint p;
  p.a.resize(static_cast<std::size_t>(m_ + 1));
  p.b.resize(static_cast<std::size_t>(n_ - m_));
  do {
    for (auto& x : p.a) {
      x = rational();
    }
  } while (all_zero(p.a));
  do {
    for (auto& x : p.b) {
      x = rational();
    }
  } while (all_zero(p.b));
  return p;
}

ComplementPoint PointSampler::complement() {
  ComplementPoint p;
  p.a.resize(static_cast<std::size_t>(n_ + 1));
  do {
    for (auto& x : p.a) {
      x = rational();
    }
  } while (all_zero(RationalVector(p.a.begin() + m_ + 1, p.a.end())));
  return p;
}

namespace {

void check_pq(int n, int m, Int p, Int q) {
  BlowupLayout layout(n, m);
  if (!(0 < p && p < q)) {
    throw std::invalid_argument("require 0 < p < q (got p=" + std::to_string(p) + ", q=" + std::to_string(q) + ")");
  }
}

Weight theta_of(Int p, Int q) { return Weight::of({-p, p - q, q}); }

// Degree-d basis of B(w), d the generation degree (1 if none is found).
std::vector<Monomial> generating_basis(const Quiver& q, const Weight& w) {
  Int d = generation_degree(q, w).value_or(1);
  return semi_invariant_basis(q, w, d);
}

}  // namespace

CommuteReport verify_commute(int n, int m, Int p, Int q, std::size_t samples, std::uint64_t seed) {
  check_pq(n, m, p, q);
  const auto basis = generating_basis(kronecker_quiver(n), Weight::of({-p, p}));
  PointSampler sampler(n, m, seed);
  CommuteReport report;
  auto check = [&](const BlowupPoint& x) {
    auto upper = evaluate_point(pushforward_rep(n, m, tautological_rep(n, m, x)), basis);
    auto lower = evaluate_point(ThinRep{projection(n, m, x)}, basis);
    if (!upper || !lower || *upper != *lower) {
      ++report.failures;
    }
  };
  for (std::size_t s = 0; s < samples; ++s) {
    check(sampler.e_chart());
    ++report.e_chart_samples;
  }
  for (std::size_t s = 0; s < samples; ++s) {
    check(sampler.complement());
    ++report.complement_samples;
  }
  return report;
}

ExceptionalLocusReport exceptional_locus(int n, int m, Int p, Int q) {
  check_pq(n, m, p, q);
  const Quiver quiver = blowup_quiver(n, m);
  const Weight theta = theta_of(p, q);
  const Int d = generation_degree(quiver, theta).value_or(1);
  const IntMatrix divergence = divergence_matrix(quiver);
  BlowupLayout layout(n, m);

  IntMatrix equalities(divergence.rows() + 1, divergence.cols());
  IntVector rhs;
  for (std::size_t r = 0; r < divergence.rows(); ++r) {
    for (std::size_t c = 0; c < divergence.cols(); ++c) {
      equalities(r, c) = divergence(r, c);
    }
    rhs.push_back(to_int(Integer(theta[r] * d)));
  }
  equalities(divergence.rows(), layout.e()) = 1;
  rhs.push_back(0);

  LatticePolytope face{equalities, rhs, standard_form_vertices(equalities, rhs)};
  if (face.vertices.empty()) {
    throw std::domain_error("exceptional_locus: the face {e = 0} is empty");
  }
  ExceptionalLocusReport report;
  report.face = normal_fan(face);
  if (report.face.degenerate || !report.face.fan) {
    return report;
  }
  const Fan expected = product_fan(projective_space_fan(m), projective_space_fan(n - m - 1));
  report.witness = fans_isomorphic(*report.face.fan, expected);
  report.ok = report.witness.has_value();
  return report;
}

BlowdownReport blowdown_check(int n, int m, Int p, Int q) {
  check_pq(n, m, p, q);
  BlowdownReport report;
  const Quiver blowup = blowup_quiver(n, m);
  const Quiver kronecker = kronecker_quiver(n);
  ModuliResult upper = moduli_fan(blowup, theta_of(p, q));
  ModuliResult lower = moduli_fan(kronecker, Weight::of({-p, p}));
  if (!upper.fan || !lower.fan) {
    report.reason = "moduli fan missing (status " + to_string(upper.status) + " / " + to_string(lower.status) + ")";
    return report;
  }
  report.blowup_witness = fans_isomorphic(*upper.fan, blowup_fan(n, m));
  report.kronecker_witness = fans_isomorphic(*lower.fan, projective_space_fan(n));
  report.blowup_identified = report.blowup_witness.has_value();
  report.kronecker_identified = report.kronecker_witness.has_value();

  // Phi sends Kronecker exponents to blowup exponents: X_i -> x_i, or
  // e x_i for i > m.
  BlowupLayout layout(n, m);
  IntMatrix phi(layout.arrow_count(), static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) {
    phi(layout.x(i), static_cast<std::size_t>(i)) = 1;
    if (i > m) {
      phi(layout.e(), static_cast<std::size_t>(i)) = 1;
    }
  }
  const IntMatrix image = phi * lower.lattice_basis;
  const RationalMatrix kb = to_rational(upper.lattice_basis);
  const std::size_t k = upper.lattice_basis.cols();
  if (lower.lattice_basis.cols() != k) {
    report.reason = "lattice ranks differ";
    return report;
  }
  IntMatrix t(k, k);
  for (std::size_t c = 0; c < k; ++c) {
    auto col = solve(kb, to_rational(image.column(c)));
    if (!col) {
      report.reason = "the pushforward does not map the Kronecker lattice into the blowup lattice";
      return report;
    }
    for (std::size_t r = 0; r < k; ++r) {
      if (denominator((*col)[r]) != 1) {
        report.reason = "the lattice map is not integral";
        return report;
      }
      t(r, c) = to_int((*col)[r]);
    }
  }
  Integer det = determinant(t);
  if (det != 1 && det != -1) {
    report.reason = "the lattice map is not unimodular";
    return report;
  }
  report.lattice_map = t;

  const Fan carried = transform(*upper.fan, t.transpose());
  BlowdownResult blowdown = is_star_subdivision_blowdown(carried, *lower.fan);
  report.star_subdivision = blowdown.ok;
  if (!blowdown.ok) {
    report.reason = blowdown.reason;
    return report;
  }
  const std::size_t exceptional = static_cast<std::size_t>(n) + 1;
  report.contracted_is_exceptional =
      fans_isomorphic(*upper.fan, blowup_fan(n, m), {{*blowdown.contracted_ray, exceptional}}).has_value();
  report.ok = report.blowup_identified && report.kronecker_identified && report.star_subdivision &&
              report.contracted_is_exceptional;
  if (!report.ok) {
    report.reason = "reference identification failed";
  }
  return report;
}

ContractionReport theta_prime_contraction(int n, int m, Int p, std::size_t samples, std::uint64_t seed,
                                          unsigned jobs) {
  check_pq(n, m, p, p + 1);
  ContractionReport report;
  const Quiver quiver = blowup_quiver(n, m);
  const Weight theta = theta_of(p, p + 1);
  const Weight prime = Weight::of({-p, 0, p});
  ClassifyOptions options;
  options.jobs = jobs;
  options.max_arrows = std::max<std::size_t>(options.max_arrows, quiver.arrow_count());
  const auto at_theta = classify_patterns(quiver, theta, options);
  const auto at_prime = classify_patterns(quiver, prime, options);
  report.descent = true;
  for (std::size_t k = 0; k < at_theta.classes.size(); ++k) {
    if (at_theta.classes[k] == Stability::stable && !is_semistable(at_prime.classes[k])) {
      report.descent = false;
      break;
    }
  }

  // Each basis monomial at (-p, 0, p) is the image of a Kronecker monomial:
  // drop the exponent of e, which equals the total late exponent.
  BlowupLayout layout(n, m);
  const auto basis = generating_basis(quiver, prime);
  std::vector<Monomial> kronecker_basis;
  for (const auto& mo : basis) {
    Monomial k;
    Int late = 0;
    for (int i = 0; i <= n; ++i) {
      k.exponents.push_back(mo.exponents[layout.x(i)]);
      late += i > m ? mo.exponents[layout.x(i)] : 0;
    }
    if (late != mo.exponents[layout.e()]) {
      throw std::logic_error("theta_prime_contraction: basis monomial outside the image of the pushforward");
    }
    kronecker_basis.push_back(std::move(k));
  }

  PointSampler sampler(n, m, seed);
  report.collapse = true;
  report.complement_match = true;
  for (std::size_t s = 0; s < samples; ++s) {
    EChartPoint base = sampler.e_chart();
    auto expected = evaluate_point(ThinRep{projection(n, m, base)}, kronecker_basis);
    for (int t = 0; t < 3; ++t) {
      EChartPoint fiber{base.a, sampler.e_chart().b};
      auto image = evaluate_point(tautological_rep(n, m, fiber), basis);
      if (!image || !expected || *image != *expected) {
        report.collapse = false;
      }
    }
    ++report.fibers_checked;

    ComplementPoint c = sampler.complement();
    auto image = evaluate_point(tautological_rep(n, m, c), basis);
    auto coordinates = evaluate_point(ThinRep{c.a}, kronecker_basis);
    if (!image || !coordinates || *image != *coordinates) {
      report.complement_match = false;
    }
  }
  return report;
}

bool VerifyReport::ok() const {
  return std::all_of(stages.begin(), stages.end(), [](const StageResult& s) { return s.ok; });
}

namespace {

std::string join_counts(const std::vector<std::size_t>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out << (i ? "," : "") << v[i];
  }
  return out.str();
}

template <class F>
StageResult run_stage(const std::string& name, F&& body) {
  StageResult stage{name, false, ""};
  try {
    body(stage);
  } catch (const std::exception& e) {
    stage.ok = false;
    stage.detail = std::string("exception: ") + e.what();
  }
  return stage;
}

}  // namespace

VerifyReport verify_all(int n, int m, Int p, Int q, const VerifyOptions& options) {
  check_pq(n, m, p, q);
  VerifyReport report{n, m, p, q, {}};
  const Quiver quiver = blowup_quiver(n, m);
  const Weight theta = theta_of(p, q);
  const Weight prime = Weight::of({-p, 0, p});

  report.stages.push_back(run_stage("sections", [&](StageResult& s) {
    auto sq = quiver_of_sections(blowup_collection(n, m));
    std::vector<std::size_t> counts{sq.quiver.multiplicity(1, 3), sq.quiver.multiplicity(1, 2),
                                    sq.quiver.multiplicity(2, 3)};
    auto relations = bound_ideal(sq);
    s.ok = counts == std::vector<std::size_t>{static_cast<std::size_t>(m + 1), 1, static_cast<std::size_t>(n - m)} &&
           relations.empty() && same_up_to_relabeling(sq.quiver, quiver);
    s.detail = "arrows (1->3,1->2,2->3) = (" + join_counts(counts) + "), relations = " +
               std::to_string(relations.size());
  }));

  report.stages.push_back(run_stage("exceptional-collection", [&](StageResult& s) {
    auto r = is_strong_exceptional(blowup_collection(n, m));
    s.ok = r.ok;
    s.detail = std::to_string(r.pairs.size()) + " pairs checked";
  }));

  report.stages.push_back(run_stage("stability-oracle", [&](StageResult& s) {
    ClassifyOptions opts;
    opts.jobs = options.jobs;
    auto at_theta = classify_patterns(quiver, theta, opts);
    auto at_prime = classify_patterns(quiver, prime, opts);
    std::size_t mismatches = 0;
    for (std::size_t k = 0; k < at_theta.classes.size(); ++k) {
      ZeroPattern pattern = at_theta.pattern(k);
      if (paper_stability_oracle(n, m, pattern, OracleCase::theta) != at_theta.classes[k]) {
        ++mismatches;
      }
      if (theta_prime_semistable(n, m, pattern) != is_semistable(at_prime.classes[k]) ||
          paper_stability_oracle(n, m, pattern, OracleCase::theta_prime) != at_prime.classes[k]) {
        ++mismatches;
      }
    }
    s.ok = mismatches == 0;
    s.detail = std::to_string(at_theta.classes.size()) + " patterns, " + std::to_string(mismatches) + " mismatches";
  }));

  report.stages.push_back(run_stage("moduli-theta", [&](StageResult& s) {
    auto r = moduli_fan(quiver, theta);
    bool iso = r.fan && fans_isomorphic(*r.fan, blowup_fan(n, m)).has_value();
    s.ok = iso && r.fine && r.stabilized && is_smooth(*r.fan);
    s.detail = std::string("status ") + to_string(r.status) + (iso ? ", isomorphic to blowup_fan" : ", no match");
  }));

  report.stages.push_back(run_stage("moduli-theta-prime", [&](StageResult& s) {
    auto r = moduli_fan(quiver, prime);
    bool iso = r.fan && fans_isomorphic(*r.fan, projective_space_fan(n)).has_value();
    // The primitive weight (-1, 0, 1) has basis x_0..x_m, e x_{m+1}..e x_n.
    auto basis = semi_invariant_basis(quiver, Weight::of({-1, 0, 1}), 1);
    BlowupLayout layout(n, m);
    std::vector<Monomial> expected;
    for (int i = 0; i <= n; ++i) {
      Monomial mo{IntVector(layout.arrow_count(), 0)};
      mo.exponents[layout.x(i)] = 1;
      if (i > m) {
        mo.exponents[layout.e()] = 1;
      }
      expected.push_back(std::move(mo));
    }
    s.ok = iso && basis == expected;
    s.detail = std::string("status ") + to_string(r.status) + ", dim B = " + std::to_string(basis.size()) +
               (iso ? ", isomorphic to projective_space_fan" : ", no match");
  }));

  report.stages.push_back(run_stage("moduli-kronecker", [&](StageResult& s) {
    auto r = moduli_fan(kronecker_quiver(n), Weight::of({-p, p}));
    bool iso = r.fan && fans_isomorphic(*r.fan, projective_space_fan(n)).has_value();
    s.ok = iso;
    s.detail = std::string("status ") + to_string(r.status) + (iso ? ", isomorphic to projective_space_fan" : ", no match");
  }));

  report.stages.push_back(run_stage("commute", [&](StageResult& s) {
    auto r = verify_commute(n, m, p, q, options.samples, options.seed);
    s.ok = r.ok();
    s.detail = std::to_string(r.e_chart_samples) + " E-chart and " + std::to_string(r.complement_samples) +
               " complement samples, " + std::to_string(r.failures) + " failures";
  }));

  report.stages.push_back(run_stage("exceptional-locus", [&](StageResult& s) {
    auto r = exceptional_locus(n, m, p, q);
    s.ok = r.ok;
    s.detail = "face dimension " + std::to_string(r.face.dimension) +
               (r.ok ? ", isomorphic to P^m x P^(n-m-1)" : ", no match");
  }));

  report.stages.push_back(run_stage("blowdown", [&](StageResult& s) {
    auto r = blowdown_check(n, m, p, q);
    s.ok = r.ok;
    s.detail = r.ok ? "star subdivision at the exceptional ray" : r.reason;
  }));

  report.stages.push_back(run_stage("theta-prime-contraction", [&](StageResult& s) {
    auto r = theta_prime_contraction(n, m, p, std::min<std::size_t>(options.samples, 20), options.seed, options.jobs);
    s.ok = r.ok();
    s.detail = std::string("descent ") + (r.descent ? "yes" : "no") + ", collapse " + (r.collapse ? "yes" : "no") +
               ", complement " + (r.complement_match ? "yes" : "no");
  }));
  return report;
}

}  // namespace qmoduli
