#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qmoduli/json_io.hpp"
#include "qmoduli/pipeline.hpp"
#include "qmoduli/semi_invariants.hpp"
#include "qmoduli/stability.hpp"
#include "qmoduli/toric.hpp"

namespace qmoduli::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuiverChoice {
  Quiver quiver;
  std::optional<std::pair<int, int>> blowup;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, sep)) {
    parts.push_back(part);
  }
  return parts;
}

int parse_int(const std::string& text) {
  try {
    std::size_t used = 0;
    int v = std::stoi(text, &used);
    if (used != text.size()) {
      throw std::invalid_argument(text);
    }
    return v;
  } catch (const std::exception&) {
    throw UsageError("not an integer: '" + text + "'");
  }
}

Integer parse_integer(const std::string& text) {
  std::string digits = text;
  digits.erase(std::remove(digits.begin(), digits.end(), ' '), digits.end());
  std::size_t start = (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) ? 1 : 0;
  if (start == digits.size() ||
      !std::all_of(digits.begin() + static_cast<std::ptrdiff_t>(start), digits.end(),
                   [](char c) { return c >= '0' && c <= '9'; })) {
    throw UsageError("not an integer: '" + text + "'");
  }
  if (digits[0] == '+') {
    digits.erase(0, 1);
  }
  return Integer(digits);
}

Weight parse_weight(const std::string& text) {
  std::vector<Integer> entries;
  for (const auto& part : split(text, ',')) {
    entries.push_back(parse_integer(part));
  }
  if (entries.empty()) {
    throw UsageError("empty weight");
  }
  try {
    return Weight(std::move(entries));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

QuiverChoice parse_quiver(const std::string& desc, const std::string& inline_json) {
  if (!desc.empty() && !inline_json.empty()) {
    throw UsageError("give exactly one of --quiver and --quiver-json");
  }
  if (!inline_json.empty()) {
    try {
      return {quiver_from_json(Json::parse(inline_json)), std::nullopt};
    } catch (const Json::parse_error& e) {
      throw UsageError(std::string("invalid quiver JSON: ") + e.what());
    }
  }
  if (desc.empty()) {
    throw UsageError("a quiver is required (--quiver blowup:n,m | kronecker:n, or --quiver-json)");
  }
  auto colon = desc.find(':');
  std::string kind = desc.substr(0, colon);
  auto params = colon == std::string::npos ? std::vector<std::string>{} : split(desc.substr(colon + 1), ',');
  if (kind == "blowup" && params.size() == 2) {
    int n = parse_int(params[0]), m = parse_int(params[1]);
    return {blowup_quiver(n, m), std::make_pair(n, m)};
  }
  if (kind == "kronecker" && params.size() == 1) {
    return {kronecker_quiver(parse_int(params[0])), std::nullopt};
  }
  throw UsageError("unknown quiver '" + desc + "' (expected blowup:n,m or kronecker:n)");
}

struct Output {
  std::string path;
  std::ostream* stream;

  void write(const Json& doc) const {
    if (path.empty()) {
      *stream << doc.dump(2) << '\n';
      return;
    }
    std::filesystem::path target(path);
    if (target.is_relative()) {
      if (const char* dir = std::getenv("QMODULI_OUTPUT_DIR"); dir && *dir) {
        target = std::filesystem::path(dir) / target;
      }
    }
    std::ofstream file(target);
    if (!file) {
      throw std::runtime_error("cannot write " + target.string());
    }
    file << doc.dump(2) << '\n';
  }
};

std::string stage_line(const StageResult& s) {
  return std::string(s.ok ? "pass " : "FAIL ") + s.name + ": " + s.detail;
}

// Attempts to match a fan against the reference fans of its rank.
Json identify(const Fan& fan) {
  const int n = static_cast<int>(fan.rank());
  if (auto iso = fans_isomorphic(fan, projective_space_fan(n))) {
    return {{"match", "projective_space_fan(" + std::to_string(n) + ")"}, {"witness", to_json(*iso)}};
  }
  for (int m = 0; m <= n - 2; ++m) {
    if (auto iso = fans_isomorphic(fan, blowup_fan(n, m))) {
      return {{"match", "blowup_fan(" + std::to_string(n) + "," + std::to_string(m) + ")"},
              {"witness", to_json(*iso)}};
    }
  }
  return {{"match", nullptr}};
}

}  // namespace

std::vector<std::string> config_to_args(const std::string& json_text) {
  Json config;
  try {
    config = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid config JSON: ") + e.what());
  }
  if (!config.is_object() || !config.contains("command") || !config["command"].is_string()) {
    throw std::invalid_argument("config needs a string \"command\"");
  }
  std::vector<std::string> args{config["command"].get<std::string>()};
  if (config.contains("quiver") && config.contains("quiver_json")) {
    throw std::invalid_argument("config gives both \"quiver\" and \"quiver_json\"");
  }
  auto scalar = [](const Json& v) {
    if (v.is_string()) {
      return v.get<std::string>();
    }
    if (v.is_number_integer() || v.is_boolean()) {
      return v.dump();
    }
    throw std::invalid_argument("config values must be strings, integers or booleans");
  };
  for (const auto& [key, value] : config.items()) {
    if (key == "command") {
      continue;
    }
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    if (key == "quiver_json") {
      args.push_back(flag);
      args.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    } else if (key == "theta") {
      std::string joined;
      if (value.is_array()) {
        for (const auto& x : value) {
          joined += (joined.empty() ? "" : ",") + scalar(x);
        }
      } else {
        joined = scalar(value);
      }
      args.push_back(flag + "=" + joined);
    } else if (value.is_boolean()) {
      if (value.get<bool>()) {
        args.push_back(flag);
      }
    } else {
      args.push_back(flag + "=" + scalar(value));
    }
  }
  return args;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args = raw_args;
  if (args.size() >= 2 && args[0] == "--config") {
    std::ifstream file(args[1]);
    if (!file) {
      err << "error: cannot read config " << args[1] << '\n';
      return usage;
    }
    std::stringstream text;
    text << file.rdbuf();
    try {
      auto extra = std::vector<std::string>(args.begin() + 2, args.end());
      args = config_to_args(text.str());
      args.insert(args.end(), extra.begin(), extra.end());
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << '\n';
      return usage;
    }
  }

  CLI::App app{"Moduli of thin quiver representations as toric varieties"};
  app.require_subcommand(1);
  // Global options may also follow the subcommand.
  app.fallthrough();
  std::string output_path;
  unsigned jobs = 1;
  app.add_option("--output", output_path, "Write the JSON report to this file");
  app.add_option("--jobs", jobs, "Worker threads for pattern enumeration")->check(CLI::Range(1U, 64U));

  // quiver
  auto* quiver_cmd = app.add_subcommand("quiver", "Print a quiver and its validation report");
  quiver_cmd->require_subcommand(1);
  int qn = 0, qm = 0;
  auto* q_blowup = quiver_cmd->add_subcommand("blowup", "Quiver of the blowup of P^n along a linear subspace");
  q_blowup->add_option("--n", qn)->required();
  q_blowup->add_option("--m", qm)->required();
  auto* q_kron = quiver_cmd->add_subcommand("kronecker", "(n+1)-Kronecker quiver");
  q_kron->add_option("--n", qn)->required();
  std::string q_json_text;
  auto* q_json = quiver_cmd->add_subcommand("json", "Validate an inline quiver JSON document");
  q_json->add_option("document", q_json_text)->required();

  // stability
  auto* stab = app.add_subcommand("stability", "Classify every zero pattern");
  std::string s_quiver, s_quiver_json, s_theta;
  bool check_oracle = false, chambers = false;
  std::size_t max_arrows = 20;
  stab->add_option("--quiver", s_quiver, "blowup:n,m or kronecker:n");
  stab->add_option("--quiver-json", s_quiver_json, "Inline quiver JSON");
  stab->add_option("--theta", s_theta, "Comma-separated weight")->required();
  stab->add_flag("--check-paper-oracle", check_oracle, "Cross-check the closed-form stability criteria");
  stab->add_flag("--chambers", chambers, "Include the wall-and-chamber decomposition");
  stab->add_option("--max-arrows", max_arrows, "Enumeration bound");

  // moduli
  auto* mod = app.add_subcommand("moduli", "Semi-invariants, Hilbert function and moduli fan");
  std::string m_quiver, m_quiver_json, m_theta;
  Int r_max = 3;
  bool identify_flag = false, strict = false;
  mod->add_option("--quiver", m_quiver, "blowup:n,m or kronecker:n");
  mod->add_option("--quiver-json", m_quiver_json, "Inline quiver JSON");
  mod->add_option("--theta", m_theta, "Comma-separated weight")->required();
  mod->add_option("--r-max", r_max, "Largest degree of the Hilbert function")->check(CLI::NonNegativeNumber);
  mod->add_flag("--identify", identify_flag, "Match the fan against reference fans");
  mod->add_flag("--strict", strict, "Exit 1 on empty or degenerate polytopes");

  // verify
  auto* ver = app.add_subcommand("verify", "Run every check for one (n, m, p, q)");
  int vn = 0, vm = 0;
  Int vp = 0, vq = 0;
  std::size_t samples = 100;
  std::uint64_t seed = default_seed;
  ver->add_option("--n", vn)->required();
  ver->add_option("--m", vm)->required();
  ver->add_option("--p", vp)->required();
  ver->add_option("--q", vq)->required();
  ver->add_option("--samples", samples, "Random points per chart");
  ver->add_option("--seed", seed, "Sampling seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }

  Output output{output_path, &out};
  try {
    if (quiver_cmd->parsed()) {
      Quiver q = q_blowup->parsed()  ? blowup_quiver(qn, qm)
                 : q_kron->parsed()  ? kronecker_quiver(qn)
                                     : parse_quiver("", q_json_text).quiver;
      auto report = validate(q);
      output.write({{"quiver", to_json(q)}, {"validation", to_json(report)}});
      err << (report.ok() ? "valid" : "invalid") << " quiver: " << q.vertex_count() << " vertices, "
          << q.arrow_count() << " arrows\n";
      for (const auto& issue : report.issues) {
        err << "  " << to_string(issue.kind) << ": " << issue.message << '\n';
      }
      return report.ok() ? ok : failure;
    }

    if (stab->parsed()) {
      Weight w = parse_weight(s_theta);
      QuiverChoice choice = parse_quiver(s_quiver, s_quiver_json);
      ClassifyOptions options;
      options.max_arrows = max_arrows;
      options.jobs = jobs;
      auto classification = classify_patterns(choice.quiver, w, options);
      Json doc = {{"quiver", to_json(choice.quiver)},
                  {"weight", to_json(w)},
                  {"fine", fine_moduli_check(w)},
                  {"classification", to_json(classification)}};
      int code = ok;
      if (check_oracle) {
        if (!choice.blowup) {
          throw UsageError("--check-paper-oracle needs --quiver blowup:n,m");
        }
        auto [n, m] = *choice.blowup;
        const Integer p = -w[0], q = w[2];
        std::optional<OracleCase> which;
        if (p > 0 && p < q && w[1] == p - q) {
          which = OracleCase::theta;
        } else if (p > 0 && w[1] == 0 && q == p) {
          which = OracleCase::theta_prime;
        } else {
          throw UsageError("the oracle applies to (-p, p-q, q) with 0 < p < q or to (-p, 0, p) with p > 0");
        }
        Json mismatches = Json::array();
        for (std::size_t k = 0; k < classification.classes.size(); ++k) {
          auto pattern = classification.pattern(k);
          auto expected = paper_stability_oracle(n, m, pattern, *which);
          bool agree = expected == classification.classes[k];
          if (*which == OracleCase::theta_prime) {
            agree = agree && theta_prime_semistable(n, m, pattern) == is_semistable(classification.classes[k]);
          }
          if (!agree) {
            mismatches.push_back({{"pattern", pattern.to_string()},
                                  {"oracle", to_string(expected)},
                                  {"computed", to_string(classification.classes[k])}});
          }
        }
        doc["oracle"] = {{"case", *which == OracleCase::theta ? "theta" : "theta-prime"},
                         {"checked", classification.classes.size()},
                         {"mismatches", mismatches}};
        err << "oracle: " << mismatches.size() << " mismatches over " << classification.classes.size()
            << " patterns\n";
        code = mismatches.empty() ? ok : failure;
      }
      if (chambers) {
        doc["chambers"] = to_json(chamber_decomposition(choice.quiver, options));
      }
      output.write(doc);
      err << "stable: " << classification.count(Stability::stable)
          << ", strictly-semistable: " << classification.count(Stability::strictly_semistable)
          << ", unstable: " << classification.count(Stability::unstable) << '\n';
      return code;
    }

    if (mod->parsed()) {
      Weight w = parse_weight(m_theta);
      QuiverChoice choice = parse_quiver(m_quiver, m_quiver_json);
      auto result = moduli_fan(choice.quiver, w);
      auto hilbert = hilbert_function(choice.quiver, w, r_max);
      Json doc = {{"moduli", to_json(result)},
                  {"hilbert", hilbert},
                  {"basis", to_json(semi_invariant_basis(choice.quiver, w, 1))}};
      if (identify_flag) {
        doc["identification"] = result.fan ? identify(*result.fan) : Json{{"match", nullptr}};
      }
      output.write(doc);
      err << "status: " << to_string(result.status) << ", hilbert:";
      for (auto h : hilbert) {
        err << ' ' << h;
      }
      err << '\n';
      if (identify_flag) {
        const auto& match = doc["identification"]["match"];
        err << "identified: " << (match.is_null() ? "none" : match.get<std::string>()) << '\n';
      }
      return strict && result.status != ModuliStatus::ok ? failure : ok;
    }

    if (ver->parsed()) {
      VerifyOptions options;
      options.samples = samples;
      options.seed = seed;
      options.jobs = jobs;
      auto report = verify_all(vn, vm, vp, vq, options);
      output.write(to_json(report));
      for (const auto& s : report.stages) {
        err << stage_line(s) << '\n';
      }
      return report.ok() ? ok : failure;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return failure;
  }
  return usage;
}

}  // namespace qmoduli::cli
