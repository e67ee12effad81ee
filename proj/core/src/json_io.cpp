#include "qmoduli/json_io.hpp"

#include <limits>
#include <stdexcept>

namespace qmoduli {

namespace {

Json integer_json(const Integer& x) {
  if (x >= std::numeric_limits<Int>::min() && x <= std::numeric_limits<Int>::max()) {
    return static_cast<Int>(x);
  }
  return x.str();
}

Json rational_json(const Rational& x) {
  if (denominator(x) == 1) {
    return integer_json(numerator(x));
  }
  return to_string(x);
}

Json matrix_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    rows.push_back(m.row(r));
  }
  return rows;
}

Json integers_json(const std::vector<Integer>& v) {
  Json out = Json::array();
  for (const auto& x : v) {
    out.push_back(integer_json(x));
  }
  return out;
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw std::invalid_argument(std::string("JSON object lacks \"") + key + "\"");
  }
  return j.at(key);
}

}  // namespace

Json to_json(const Quiver& q) {
  Json arrows = Json::array();
  for (const auto& a : q.arrows()) {
    arrows.push_back({{"src", a.source}, {"dst", a.target}, {"name", a.name}});
  }
  return {{"vertices", q.vertex_count()}, {"arrows", arrows}};
}

Quiver quiver_from_json(const Json& j) {
  try {
    const Json& vertices = require(j, "vertices");
    if (!vertices.is_number_integer()) {
      throw std::invalid_argument("\"vertices\" must be an integer");
    }
    std::vector<Arrow> arrows;
    for (const auto& a : require(j, "arrows")) {
      Arrow arrow;
      arrow.source = require(a, "src").get<int>();
      arrow.target = require(a, "dst").get<int>();
      arrow.name = a.contains("name") ? a.at("name").get<std::string>() : "a" + std::to_string(arrows.size());
      arrows.push_back(std::move(arrow));
    }
    return Quiver(vertices.get<int>(), std::move(arrows));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed quiver JSON: ") + e.what());
  }
}

Json to_json(const ValidationReport& r) {
  Json issues = Json::array();
  for (const auto& i : r.issues) {
    issues.push_back({{"kind", to_string(i.kind)}, {"message", i.message}});
  }
  Json out = {{"valid", r.ok()}, {"issues", issues}};
  out["unique_source"] = r.unique_source ? Json(*r.unique_source) : Json(nullptr);
  return out;
}

Json to_json(const Weight& w) { return integers_json(w.entries()); }

Weight weight_from_json(const Json& j) {
  if (!j.is_array()) {
    throw std::invalid_argument("a weight must be a JSON array");
  }
  std::vector<Integer> entries;
  for (const auto& x : j) {
    if (x.is_number_integer()) {
      entries.emplace_back(x.get<Int>());
    } else if (x.is_string()) {
      entries.emplace_back(x.get<std::string>());
    } else {
      throw std::invalid_argument("weight entries must be integers");
    }
  }
  return Weight(std::move(entries));
}

Json to_json(const std::vector<Monomial>& basis) {
  Json out = Json::array();
  for (const auto& mo : basis) {
    out.push_back(mo.exponents);
  }
  return out;
}

Json to_json(const FlowPolytope& p) {
  Json vertices = Json::array();
  for (const auto& v : p.vertices) {
    Json row = Json::array();
    for (const auto& x : v) {
      row.push_back(rational_json(x));
    }
    vertices.push_back(std::move(row));
  }
  auto lp = p.as_lattice_polytope();
  return {{"equalities", matrix_json(lp.equalities)}, {"rhs", lp.rhs}, {"vertices", vertices}};
}

Json to_json(const Fan& f) {
  Json cones = Json::array();
  for (const auto& c : f.cones()) {
    cones.push_back(c);
  }
  return {{"rank", f.rank()}, {"rays", f.rays()}, {"cones", cones}};
}

Fan fan_from_json(const Json& j) {
  try {
    auto rank = require(j, "rank").get<std::size_t>();
    auto rays = require(j, "rays").get<std::vector<IntVector>>();
    auto cones = require(j, "cones").get<std::vector<Cone>>();
    return Fan(rank, std::move(rays), std::move(cones));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed fan JSON: ") + e.what());
  }
}

Json to_json(const FanIsomorphism& iso) {
  return {{"matrix", matrix_json(iso.matrix)}, {"ray_map", iso.ray_map}};
}

Json to_json(const PatternClassification& c) {
  Json patterns = {{"stable", Json::array()}, {"strictly-semistable", Json::array()}, {"unstable", Json::array()}};
  for (std::size_t k = 0; k < c.classes.size(); ++k) {
    patterns[to_string(c.classes[k])].push_back(c.pattern(k).to_string());
  }
  Json counts = {{"stable", c.count(Stability::stable)},
                 {"strictly-semistable", c.count(Stability::strictly_semistable)},
                 {"unstable", c.count(Stability::unstable)}};
  return {{"arrow_count", c.arrow_count}, {"counts", counts}, {"patterns", patterns}};
}

Json to_json(const ChamberDecomposition& c) {
  Json walls = Json::array();
  for (const auto& w : c.walls) {
    walls.push_back({{"subset", w.subset.vertices()},
                     {"normal", integers_json(w.normal)},
                     {"hyperplane", w.hyperplane},
                     {"realizable", w.realizable},
                     {"generic_point", to_json(w.generic_point)}});
  }
  Json chambers = Json::array();
  for (const auto& ch : c.chambers) {
    chambers.push_back({{"representative", to_json(ch.representative)}, {"signs", ch.signs}});
  }
  return {{"vertex_count", c.vertex_count},
          {"hyperplanes", c.hyperplane_normals},
          {"walls", walls},
          {"chambers", chambers}};
}

Json to_json(const SectionsQuiver& sq, const std::vector<PathRelation>& relations) {
  auto names = [&](const std::vector<std::size_t>& path) {
    Json out = Json::array();
    for (auto a : path) {
      out.push_back(sq.quiver.arrow(a).name);
    }
    return out;
  };
  Json rel = Json::array();
  for (const auto& r : relations) {
    rel.push_back({names(r.lhs), names(r.rhs)});
  }
  return {{"quiver", to_json(sq.quiver)},
          {"arrow_characters", sq.arrow_characters},
          {"vertex_bundle", sq.vertex_bundle},
          {"relations", rel}};
}

Json to_json(const ExceptionalityReport& r) {
  Json pairs = Json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back({{"i", p.i},
                     {"j", p.j},
                     {"forward", integers_json(p.forward)},
                     {"backward", integers_json(p.backward)},
                     {"ok", p.ok}});
  }
  return {{"strong_exceptional", r.ok}, {"pairs", pairs}};
}

Json to_json(const ModuliResult& r) {
  Json out = {{"quiver", to_json(r.quiver)}, {"weight", to_json(r.weight)}, {"status", to_string(r.status)}};
  out["generation_degree"] = r.generation_degree ? Json(*r.generation_degree) : Json(nullptr);
  out["fine"] = r.fine;
  out["polytope_dimension"] = r.polytope_dimension;
  out["expected_dimension"] = r.expected_dimension;
  out["stabilized"] = r.stabilized;
  out["fan"] = r.fan ? to_json(*r.fan) : Json(nullptr);
  out["lattice_basis"] = matrix_json(r.lattice_basis);
  out["diagnostics"] = r.diagnostics;
  return out;
}

Json to_json(const VerifyReport& r) {
  Json stages = Json::array();
  for (const auto& s : r.stages) {
    stages.push_back({{"name", s.name}, {"ok", s.ok}, {"detail", s.detail}});
  }
  return {{"n", r.n}, {"m", r.m}, {"p", r.p}, {"q", r.q}, {"ok", r.ok()}, {"stages", stages}};
}

}  // namespace qmoduli
