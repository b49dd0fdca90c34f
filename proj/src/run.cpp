#include "levylab/run.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "levylab/criterion.hpp"
#include "levylab/levy.hpp"
#include "levylab/posdef.hpp"
#include "levylab/proof_demo.hpp"
#include "levylab/report.hpp"
#include "levylab/spec_text.hpp"

namespace levylab {

namespace {

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string toml_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string levels_text(const std::vector<RefinementLevel>& levels) {
  std::string out;
  for (const auto& l : levels) {
    if (!out.empty()) out += ",";
    out += std::to_string(l.directions) + "x" + std::to_string(l.samples);
  }
  return out;
}

NormSpec parse_spec_or_throw(const std::string& text) {
  if (text.empty()) throw ConfigError("--spec is required");
  try {
    return parse_spec(text);
  } catch (const SpecParseError& e) {
    const std::size_t column = std::max<std::size_t>(e.column(), 1);
    throw ConfigError("invalid spec at column " + std::to_string(column) + ": " + e.reason() + "\n  " + text +
                      "\n  " + std::string(column - 1, ' ') + "^");
  }
}

struct Validated {
  NormSpec spec;
  std::vector<RefinementLevel> levels;
};

Validated validate(const RunConfig& c) {
  auto spec = parse_spec_or_throw(c.spec);
  if (!std::isfinite(c.p) || !(c.p > 0.0)) throw ConfigError("p must be a positive finite number");
  const bool uses_p = c.command != Command::Criterion;
  if (uses_p && c.p > 2.0) throw ConfigError("p must lie in (0, 2] for " + to_string(c.command));
  if (c.command == Command::Demo) {
    if (!(c.p < 1.0)) throw ConfigError("demo needs 0 < p < 1");
    if (auto issue = smoothness_issue(spec); !issue.empty()) throw ConfigError("demo: " + issue);
  }
  if (c.theta_count < 4) throw ConfigError("theta-count must be at least 4");
  if (!std::isfinite(c.x1_max) || !(c.x1_max > CriterionOptions{}.x1_min)) {
    throw ConfigError("x1-max must exceed " + format_double(CriterionOptions{}.x1_min));
  }
  if (c.trials < 1) throw ConfigError("trials must be at least 1");
  if (c.points < 2) throw ConfigError("points must be at least 2");
  if (c.demo_n.empty()) throw ConfigError("demo-n must list at least one index");
  for (int n : c.demo_n) {
    if (n < 1) throw ConfigError("demo-n entries must be positive");
  }
  if (!c.write_csv && !c.write_report) throw ConfigError("format selects no output");
  std::vector<RefinementLevel> levels;
  try {
    levels = c.levels.empty() ? default_levels(spec.dim()) : parse_levels(c.levels);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid levels: ") + e.what());
  }
  return {std::move(spec), std::move(levels)};
}

class ArtifactWriter {
 public:
  ArtifactWriter(std::filesystem::path dir, std::string stem_suffix)
      : dir_(std::move(dir)), suffix_(std::move(stem_suffix)) {
    std::filesystem::create_directories(dir_);
  }

  void write(const std::string& command, const std::string& extension, const std::string& content) {
    write_file(command + "_" + suffix_ + "." + extension, content);
  }

  void write_file(const std::string& name, const std::string& content) {
    const auto path = dir_ / name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << content;
    if (!f.flush()) throw std::runtime_error("cannot write " + path.string());
    entries_.push_back({name, sha256_hex(content)});
    paths_.push_back(path);
  }

  void write_manifest(const std::string& config_text) {
    std::string text = "# sha256  artifact\n";
    for (const auto& [name, hash] : entries_) text += hash + "  " + name + "\n";
    text += "# effective config\n" + config_text;
    const auto path = dir_ / "manifest.txt";
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << text;
    if (!f.flush()) throw std::runtime_error("cannot write " + path.string());
    paths_.push_back(path);
  }

  const std::vector<std::filesystem::path>& paths() const { return paths_; }

 private:
  std::filesystem::path dir_;
  std::string suffix_;
  std::vector<std::pair<std::string, std::string>> entries_;
  std::vector<std::filesystem::path> paths_;
};

struct Stage {
  std::string summary;
  bool numerical_failure = false;
};

Stage run_criterion(const RunConfig& c, const NormSpec& spec, ArtifactWriter& w, CriterionReport* keep) {
  CriterionOptions options;
  options.theta_count = c.theta_count;
  options.x1_max = c.x1_max;
  auto report = check_theorem1(spec, options);
  if (c.write_report) w.write("criterion", "txt", format_report(report));
  if (c.write_csv) w.write("criterion", "csv", decay_profile_csv(report));
  Stage s{"criterion: " + to_string(report.verdict) + " (" + report.reason + ")", false};
  if (keep) *keep = std::move(report);
  return s;
}

Stage run_levy(const RunConfig& c, const NormSpec& spec, const std::vector<RefinementLevel>& levels,
               ArtifactWriter& w, FeasibilityResult* keep) {
  auto result = feasibility_scan(spec, c.p, levels, c.seed);
  if (c.write_report) w.write("levy", "txt", format_feasibility(result));
  if (c.write_csv) w.write("levy", "csv", feasibility_csv(result));
  bool stalled = false;
  for (const auto& l : result.levels) stalled = stalled || !l.converged;
  Stage s{"levy: " + to_string(result.interpretation) + " (" + result.reason + ")", stalled};
  if (keep) *keep = std::move(result);
  return s;
}

std::string format_witness(const PsdWitness& wit, int trials) {
  std::string out;
  out += report_line("spec", wit.spec);
  out += report_line("p", wit.p);
  out += report_line("seed", std::to_string(wit.seed));
  out += report_line("trials", std::to_string(trials));
  out += report_line("points", std::to_string(wit.points.size()));
  out += report_line("found", wit.found ? "true" : "false");
  out += report_line("min_eigenvalue", wit.min_eigenvalue);
  out += report_line("threshold", wit.threshold);
  out += report_line("best_trial", std::to_string(wit.best_trial));
  out += report_line("scale", wit.scale);
  out += report_line("refinement_accepted", std::to_string(wit.refinement_accepted));
  out += report_line("interpretation",
                     wit.found ? "exp(-||x||^p) is not positive definite, so the space does not embed in L_p"
                               : "no witness found; this is not evidence of an embedding");
  return out;
}

Stage run_posdef(const RunConfig& c, const NormSpec& spec, ArtifactWriter& w, PsdWitness* keep) {
  auto wit = witness_search(spec, c.p, c.points, c.trials, c.seed);
  if (c.write_report) w.write("posdef", "txt", format_witness(wit, c.trials));
  if (c.write_csv) w.write("posdef", "csv", witness_csv(wit));
  Stage s{"posdef: " + std::string(wit.found ? "witness found" : "no witness") +
              " (min eigenvalue " + format_double(wit.min_eigenvalue) + ")",
          false};
  if (keep) *keep = std::move(wit);
  return s;
}

Stage run_demo_stage(const RunConfig& c, const NormSpec& spec, const std::optional<SphericalMeasure>& mu,
                     ArtifactWriter& w) {
  auto report = run_demo(spec, c.p, c.demo_n, mu);
  if (c.write_report) w.write("demo", "txt", format_demo(report));
  if (c.write_csv) w.write("demo", "csv", demo_csv(report));
  std::string summary = "demo: lhs";
  for (const auto& row : report.rows) summary += " n=" + std::to_string(row.n) + ":" + format_double(row.lhs.value);
  if (!report.all_converged) summary += " (quadrature error above target)";
  return {summary, !report.all_converged};
}

bool is_euclidean(const NormSpec& spec) {
  return spec.kind() == NormKind::Euclidean || (spec.kind() == NormKind::Lq && spec.q() == 2.0);
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::Criterion:
      return "criterion";
    case Command::Levy:
      return "levy";
    case Command::Posdef:
      return "posdef";
    case Command::Demo:
      return "demo";
    case Command::All:
      return "all";
  }
  return "unknown";
}

Command parse_command(const std::string& name) {
  for (Command c : {Command::Criterion, Command::Levy, Command::Posdef, Command::Demo, Command::All}) {
    if (to_string(c) == name) return c;
  }
  throw ConfigError("unknown command '" + name + "' (expected criterion, levy, posdef, demo or all)");
}

std::string serialize_config(const RunConfig& c) {
  std::string levels = c.levels;
  if (levels.empty()) {
    try {
      levels = levels_text(default_levels(parse_spec(c.spec).dim()));
    } catch (const std::exception&) {
    }
  }
  std::string demo_n;
  for (int n : c.demo_n) demo_n += (demo_n.empty() ? "" : ", ") + std::to_string(n);
  std::string formats;
  if (c.write_csv) formats += "\"csv\"";
  if (c.write_report) formats += std::string(formats.empty() ? "" : ", ") + "\"report\"";

  std::string out;
  out += "command = " + toml_string(to_string(c.command)) + "\n";
  out += "spec = " + toml_string(c.spec) + "\n";
  out += "p = " + shortest(c.p) + "\n";
  out += "seed = " + std::to_string(c.seed) + "\n";
  out += "theta-count = " + std::to_string(c.theta_count) + "\n";
  out += "x1-max = " + shortest(c.x1_max) + "\n";
  out += "levels = " + toml_string(levels) + "\n";
  out += "trials = " + std::to_string(c.trials) + "\n";
  out += "points = " + std::to_string(c.points) + "\n";
  out += "demo-n = [" + demo_n + "]\n";
  out += "out = " + toml_string(c.out.generic_string()) + "\n";
  out += "format = [" + formats + "]\n";
  return out;
}

ParsedArgs parse_args(const std::vector<std::string>& args) {
  RunConfig c;
  CLI::App app{"Numerical checks for isometric embeddings of finite-dimensional normed spaces into L_p", "levylab"};
  app.set_config("--config", "", "TOML/INI file with the same keys as the long flags");
  std::string command;
  std::vector<std::string> formats = {"csv", "report"};
  std::string out = c.out.string();
  app.add_option("command", command, "criterion | levy | posdef | demo | all")->required();
  app.add_option("--spec", c.spec, "norm spec, e.g. lq:q=4:dim=3");
  app.add_option("--p", c.p, "exponent p of L_p");
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--theta-count", c.theta_count, "criterion: samples on the unit circle of span(e_2, e_3)");
  app.add_option("--x1-max", c.x1_max, "criterion: end of the x_1 scan");
  app.add_option("--levels", c.levels, "levy: refinement levels DxS,... (directions x samples)");
  app.add_option("--trials", c.trials, "posdef: random point sets");
  app.add_option("--points", c.points, "posdef: points per set");
  app.add_option("--demo-n", c.demo_n, "demo: mollifier indices")->delimiter(',');
  app.add_option("--out", out, "output directory");
  app.add_option("--format", formats, "csv, report or both")->delimiter(',');

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    return {c, app.help()};
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  c.command = parse_command(command);
  c.out = out;
  c.write_csv = false;
  c.write_report = false;
  for (const auto& f : formats) {
    if (f == "csv") {
      c.write_csv = true;
    } else if (f == "report" || f == "txt") {
      c.write_report = true;
    } else {
      throw ConfigError("unknown format '" + f + "' (expected csv or report)");
    }
  }
  return {c, {}};
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

RunOutcome run(const RunConfig& config, std::ostream& log) {
  RunOutcome outcome;
  std::optional<Validated> v;
  try {
    v = validate(config);
  } catch (const ConfigError& e) {
    outcome.exit_code = kExitInvalidConfig;
    outcome.message = e.what();
    log << "error: " << e.what() << "\n";
    return outcome;
  }
  const NormSpec& spec = v->spec;

  try {
    ArtifactWriter writer(config.out, spec_slug(spec) + "_" + shortest(config.p));
    std::vector<Stage> stages;
    switch (config.command) {
      case Command::Criterion:
        stages.push_back(run_criterion(config, spec, writer, nullptr));
        break;
      case Command::Levy:
        stages.push_back(run_levy(config, spec, v->levels, writer, nullptr));
        break;
      case Command::Posdef:
        stages.push_back(run_posdef(config, spec, writer, nullptr));
        break;
      case Command::Demo: {
        std::optional<SphericalMeasure> mu;
        if (is_euclidean(spec)) mu = calibrated_uniform_measure(config.p, 2048);
        stages.push_back(run_demo_stage(config, spec, mu, writer));
        break;
      }
      case Command::All: {
        CriterionReport criterion;
        FeasibilityResult levy;
        PsdWitness witness;
        stages.push_back(run_criterion(config, spec, writer, &criterion));
        stages.push_back(run_levy(config, spec, v->levels, writer, &levy));
        stages.push_back(run_posdef(config, spec, writer, &witness));
        const auto issue = smoothness_issue(spec);
        if (config.p < 1.0 && issue.empty()) {
          std::optional<SphericalMeasure> mu;
          if (is_euclidean(spec)) {
            mu = calibrated_uniform_measure(config.p, 2048);
          } else if (!levy.best_measure.empty()) {
            mu = levy.best_measure;
          }
          stages.push_back(run_demo_stage(config, spec, mu, writer));
        } else {
          stages.push_back({"demo: skipped (" + (issue.empty() ? std::string("needs 0 < p < 1") : issue) + ")",
                            false});
        }

        std::vector<std::string> conflicts;
        const bool feasible = levy.interpretation == Interpretation::FeasibleEvidence;
        if (criterion.verdict == Verdict::Applies && feasible) {
          conflicts.push_back("criterion Applies (no embedding for 0 < p <= 2) but levy reports FeasibleEvidence");
        }
        if (witness.found && feasible) {
          conflicts.push_back("posdef found a witness (no embedding) but levy reports FeasibleEvidence");
        }
        std::string summary;
        summary += report_line("spec", serialize_spec(spec));
        summary += report_line("p", config.p);
        for (const auto& s : stages) summary += report_line("stage", s.summary);
        if (!conflicts.empty()) {
          std::string banner = "CONFLICT: ";
          for (std::size_t i = 0; i < conflicts.size(); ++i) banner += (i ? "; " : "") + conflicts[i];
          summary = "==== " + banner + " ====\n" + summary;
          outcome.message = banner;
        }
        summary += report_line("consistency", conflicts.empty() ? "consistent" : "CONFLICT");
        writer.write("all", "txt", summary);
        if (!conflicts.empty()) {
          for (const auto& s : stages) log << s.summary << "\n";
          log << outcome.message << "\n";
          writer.write_manifest(serialize_config(config));
          outcome.artifacts = writer.paths();
          outcome.exit_code = kExitNumerical;
          return outcome;
        }
        break;
      }
    }

    for (const auto& s : stages) {
      log << s.summary << "\n";
      if (s.numerical_failure) {
        outcome.exit_code = kExitNumerical;
        outcome.message = "numerical non-convergence: " + s.summary;
      }
    }
    writer.write_manifest(serialize_config(config));
    outcome.artifacts = writer.paths();
  } catch (const ConfigError& e) {
    outcome.exit_code = kExitInvalidConfig;
    outcome.message = e.what();
    log << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    outcome.exit_code = kExitInvalidConfig;
    outcome.message = e.what();
    log << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    outcome.exit_code = kExitNumerical;
    outcome.message = e.what();
    log << "error: " << e.what() << "\n";
  }
  return outcome;
}

}  // namespace levylab
