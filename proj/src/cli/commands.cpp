#include "edgeguard/cli/commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "edgeguard/cli/family_file.hpp"
#include "edgeguard/cli/report.hpp"
#include "edgeguard/manipulator.hpp"
#include "edgeguard/margin.hpp"

namespace edgeguard::cli {
namespace {

using nlohmann::json;

/// Errors that map to the input-error exit code.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string path;
  std::string set = "minimal";
  std::string method = "grid";
  int grid = 33;
  int freq_points = 512;
  double freq_max = 0.0;
  std::size_t jobs = 0;
  double band = 0.0;
  int oracle_points = 3;
  std::uint64_t oracle_budget = 10'000'000;
  std::string output = "table";
  bool no_timing = false;

  std::string valueset_path;
  std::uint64_t valueset_problem = 0;

  double tol = 1e-3;
  double eps_lo = 0.0;
  double eps_hi = 1.0;

  std::string example;
  double epsilon = 0.0;
  std::string emit_path;
  bool analyze = false;
};

std::size_t default_jobs() {
  const char* env = std::getenv("EDGEGUARD_JOBS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) throw UsageError(fmt::format("EDGEGUARD_JOBS must be a positive integer, got \"{}\"", env));
  return static_cast<std::size_t>(v);
}

CheckConfig config_from(const Options& o) {
  CheckConfig cfg;
  cfg.grid_points_per_axis = o.grid;
  cfg.freq_points = o.freq_points;
  if (o.freq_max > 0.0) cfg.freq_max = o.freq_max;
  cfg.method = o.method == "grid" ? Method::kGrid
                                  : (o.method == "zero-exclusion" ? Method::kZeroExclusion : Method::kBoth);
  cfg.jobs = o.jobs == 0 ? default_jobs() : o.jobs;
  cfg.borderline_band = o.band;
  cfg.oracle_budget = o.oracle_budget;
  return cfg;
}

SetChoice set_choice(const std::string& s) { return s == "kd" ? SetChoice::kKamalDahleh : SetChoice::kMinimal; }

void add_output(CLI::App* cmd, Options& o) {
  cmd->add_option("--output", o.output, "Report format")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
  cmd->add_flag("--no-timing", o.no_timing, "Omit wall time from JSON reports");
}

void add_check_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--method", o.method, "Decision method")
      ->check(CLI::IsMember({"grid", "zero-exclusion", "both"}))
      ->capture_default_str();
  cmd->add_option("--grid", o.grid, "Samples per lambda axis, endpoints included")
      ->check(CLI::Range(2, 1 << 20))
      ->capture_default_str();
  cmd->add_option("--freq-points", o.freq_points, "Frequency samples for zero exclusion")
      ->check(CLI::Range(2, 1 << 24))
      ->capture_default_str();
  cmd->add_option("--freq-max", o.freq_max, "Upper end of the frequency sweep (default: root bound)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--jobs", o.jobs, "Worker threads (default: EDGEGUARD_JOBS, else 1)")->check(CLI::Range(1, 4096));
  cmd->add_option("--band", o.band, "Borderline band: roots this close to the axis make the verdict marginal")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--oracle-points", o.oracle_points, "Oracle values per uncertain coefficient")
      ->check(CLI::Range(2, 1000))
      ->capture_default_str();
  cmd->add_option("--oracle-budget", o.oracle_budget, "Largest oracle member count")->capture_default_str();
  add_output(cmd, o);
}

void add_set_option(CLI::App* cmd, Options& o) {
  cmd->add_option("--set", o.set, "Testing set")
      ->check(CLI::IsMember({"minimal", "kd", "oracle"}))
      ->capture_default_str();
}

Verdict run_check(const UncertainFamily& fam, const Options& o) {
  const CheckConfig cfg = config_from(o);
  if (o.set == "oracle") return oracle_family(fam, cfg, o.oracle_points);
  return check_family(fam, cfg, set_choice(o.set));
}

void write_valueset(const UncertainFamily& fam, const Options& o) {
  const TestingSet set = TestingSet::Build(fam, o.set == "kd" ? SetChoice::kKamalDahleh : SetChoice::kMinimal);
  if (o.valueset_problem >= set.problem_count()) {
    throw UsageError(fmt::format("--valueset-problem {} is out of range (set has {} problems)", o.valueset_problem,
                                 set.problem_count()));
  }
  const TestProblem tp = set.problem(o.valueset_problem);
  const auto samples = sample_value_set(tp, fam, config_from(o));
  std::ofstream csv(o.valueset_path);
  if (!csv) throw UsageError("cannot write " + o.valueset_path);
  csv << "problem,omega";
  for (std::size_t i = 0; i < tp.dimension(); ++i) csv << ",lambda" << i + 1;
  csv << ",re,im\n";
  for (const auto& s : samples) {
    csv << tp.id() << ',' << fmt::format("{:.17g}", s.omega);
    for (double l : s.lambdas) csv << ',' << fmt::format("{:.17g}", l);
    csv << ',' << fmt::format("{:.17g}", s.value.real()) << ',' << fmt::format("{:.17g}", s.value.imag()) << '\n';
  }
}

int report_verdict(const Verdict& v, const Options& o, std::ostream& out) {
  if (o.output == "json") {
    out << verdict_json(v, !o.no_timing).dump(2) << '\n';
  } else {
    out << verdict_table(v);
  }
  return exit_code_for(v.status);
}

int analyze_family(const UncertainFamily& fam, const Options& o, std::ostream& out) {
  if (!o.valueset_path.empty()) write_valueset(fam, o);
  return report_verdict(run_check(fam, o), o, out);
}

int cmd_analyze(const Options& o, std::ostream& out) { return analyze_family(read_family_file(o.path).family, o, out); }

int cmd_margin(const Options& o, std::ostream& out, std::ostream& err) {
  const FamilyFile file = read_family_file(o.path);
  if (!file.scaled) throw UsageError(o.path + ": margin mode needs a \"scale\" record");
  const CheckConfig cfg = config_from(o);
  MarginResult r;
  try {
    if (o.set == "oracle") {
      r = margin_bisect_oracle(*file.scaled, cfg, o.oracle_points, o.eps_lo, o.eps_hi, o.tol);
    } else {
      r = margin_bisect(*file.scaled, cfg, set_choice(o.set), o.eps_lo, o.eps_hi, o.tol);
    }
  } catch (const std::domain_error& e) {
    err << "edgeguard: " << e.what() << " (epsilon = " << o.eps_lo << ")\n";
    return kExitUnstable;
  }
  if (o.output == "json") {
    out << margin_json(r, o.set).dump(2) << '\n';
  } else {
    out << margin_table(r, o.set);
  }
  return kExitStable;
}

int cmd_kharitonov(const Options& o, std::ostream& out) {
  std::string text = o.path;
  std::error_code ec;
  if (std::filesystem::is_regular_file(o.path, ec)) {
    std::ifstream in(o.path);
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  const IntervalPolynomial ip = parse_interval_polynomial(text);

  json vertices = json::array();
  std::string table = "vertices\n";
  std::vector<Polynomial> seen;
  for (int i = 0; i < 4; ++i) {
    const Polynomial v = kharitonov_vertex(ip, i);
    int dup = 0;
    for (int j = 0; j < i; ++j) {
      if (seen[static_cast<std::size_t>(j)] == v) {
        dup = j + 1;
        break;
      }
    }
    seen.push_back(v);
    json e;
    e["label"] = fmt::format("r{}", i + 1);
    e["coefficients"] = v.coeffs();
    e["duplicate_of"] = dup ? json(fmt::format("r{}", dup)) : json(nullptr);
    vertices.push_back(e);
    table += dup ? fmt::format("  r{}  = r{}\n", i + 1, dup) : fmt::format("  r{}  {}\n", i + 1, polynomial_text(v));
  }

  json edges = json::array();
  table += "edges\n";
  const auto es = kharitonov_edges(ip);
  for (const auto& e : es) {
    json j;
    j["pair"] = {e.pair_tag.first, e.pair_tag.second};
    j["endpoint_a"] = e.endpoint_a.coeffs();
    j["endpoint_b"] = e.endpoint_b.coeffs();
    edges.push_back(j);
    table += fmt::format("  ({},{})  r{} -- r{}\n", e.pair_tag.first, e.pair_tag.second, e.pair_tag.first,
                         e.pair_tag.second);
  }
  if (es.empty()) table += "  none\n";

  if (o.output == "json") {
    out << json{{"vertices", vertices}, {"edges", edges}}.dump(2) << '\n';
  } else {
    out << table;
  }
  return kExitStable;
}

int cmd_example(const Options& o, std::ostream& out) {
  if (o.example != "manipulator") throw UsageError("unknown example \"" + o.example + "\" (available: manipulator)");
  if (!(o.epsilon >= 0.0 && o.epsilon <= 1.0)) throw UsageError("--epsilon must lie in [0, 1]");
  FamilyFile file;
  file.family = manipulator_family(o.epsilon);
  file.scaled = manipulator_template();
  file.epsilon = o.epsilon;
  const std::string text = emit_family_file(file);
  if (!o.emit_path.empty()) {
    std::ofstream f(o.emit_path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + o.emit_path);
    f << text;
  }
  if (o.analyze) return analyze_family(file.family, o, out);
  if (o.emit_path.empty()) out << text;
  return kExitStable;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const UncertainFamily fam = read_family_file(o.path).family;
  const CheckConfig cfg = config_from(o);
  std::vector<CompareRow> rows;
  for (SetChoice choice : {SetChoice::kMinimal, SetChoice::kKamalDahleh}) {
    CompareRow row;
    row.set = std::string(set_name(choice));
    const std::size_t dim = TestingSet::Build(fam, choice).max_dimension();
    if (dim > 4) {
      row.skipped_reason = fmt::format("dimension {} exceeds 4", dim);
    } else {
      row.verdict = check_family(fam, cfg, choice);
    }
    rows.push_back(std::move(row));
  }
  CompareRow oracle{"oracle", std::nullopt, ""};
  const double members = oracle_member_count(fam, o.oracle_points);
  if (members > static_cast<double>(cfg.oracle_budget)) {
    oracle.skipped_reason = fmt::format("{:.3g} members exceed the budget", members);
  } else {
    oracle.verdict = oracle_family(fam, cfg, o.oracle_points);
  }
  rows.push_back(std::move(oracle));

  const CompareReport report = summarize_comparison(std::move(rows));
  if (o.output == "json") {
    out << compare_json(report).dump(2) << '\n';
  } else {
    out << compare_table(report);
  }
  return report.agree ? exit_code_for(*report.common_status) : kExitMarginal;
}

int cmd_counts(const Options& o, std::ostream& out) {
  const CountsReport r = counts_report(read_family_file(o.path).family);
  if (o.output == "json") {
    out << counts_json(r).dump(2) << '\n';
  } else {
    out << counts_table(r);
  }
  return kExitStable;
}

void print_assumption_a(const AssumptionAViolation& e, std::ostream& err) {
  const AssumptionAReport& r = e.report();
  err << "edgeguard: " << e.what() << '\n';
  if (r.witness) {
    err << "  witness:";
    for (std::size_t i = 0; i < r.parameters.size(); ++i) {
      const auto& p = r.parameters[i];
      err << fmt::format(" {}({},{})[s^{}]={:.6g}", tag_letter(p.tag), p.row + 1, p.col + 1, p.power, (*r.witness)[i]);
    }
    err << fmt::format("  det = {:.6g}\n", r.witness_determinant);
  }
}

}  // namespace

int exit_code_for(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::kStable:
      return kExitStable;
    case VerdictStatus::kUnstable:
      return kExitUnstable;
    case VerdictStatus::kMarginal:
      break;
  }
  return kExitMarginal;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robust Hurwitz stability of interval polynomial-matrix families", "edgeguard"};
  app.require_subcommand(1);
  Options o;

  auto* analyze = app.add_subcommand("analyze", "Check a family file with a testing set or the oracle");
  analyze->add_option("path", o.path, "Family file")->required();
  add_set_option(analyze, o);
  add_check_options(analyze, o);
  analyze->add_option("--emit-valueset", o.valueset_path, "Write the sampled value set of one problem as CSV");
  analyze->add_option("--valueset-problem", o.valueset_problem, "Problem index for --emit-valueset")
      ->capture_default_str();

  auto* margin = app.add_subcommand("margin", "Bisect the robustness margin of a scaled family");
  margin->add_option("path", o.path, "Family file with a scale record")->required();
  add_set_option(margin, o);
  add_check_options(margin, o);
  margin->add_option("--tol", o.tol, "Bisection tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  margin->add_option("--eps-lo", o.eps_lo, "Lower end of the bracket")->check(CLI::NonNegativeNumber)->capture_default_str();
  margin->add_option("--eps-hi", o.eps_hi, "Upper end of the bracket")->check(CLI::NonNegativeNumber)->capture_default_str();

  auto* kharitonov = app.add_subcommand("kharitonov", "Print the Kharitonov vertices and edges");
  kharitonov->add_option("input", o.path, "Interval polynomial file or inline JSON, e.g. '[[1,2],[3,4]]'")->required();
  add_output(kharitonov, o);

  auto* example = app.add_subcommand("example", "Built-in datasets");
  example->add_option("name", o.example, "Dataset name (manipulator)")->required();
  example->add_option("--epsilon", o.epsilon, "Uncertainty scale in [0, 1]")->capture_default_str();
  example->add_option("--emit", o.emit_path, "Write the family file here");
  example->add_flag("--analyze", o.analyze, "Analyze the dataset");
  add_set_option(example, o);
  add_check_options(example, o);

  auto* compare = app.add_subcommand("compare", "Run the minimal set, the Kamal-Dahleh set and the oracle");
  compare->add_option("path", o.path, "Family file")->required();
  add_check_options(compare, o);

  auto* counts = app.add_subcommand("counts", "Testing-set sizes");
  counts->add_option("path", o.path, "Family file")->required();
  add_output(counts, o);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitStable;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitStable;
  } catch (const CLI::ParseError& e) {
    err << "edgeguard: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(o, out);
    if (margin->parsed()) return cmd_margin(o, out, err);
    if (kharitonov->parsed()) return cmd_kharitonov(o, out);
    if (example->parsed()) return cmd_example(o, out);
    if (compare->parsed()) return cmd_compare(o, out);
    if (counts->parsed()) return cmd_counts(o, out);
  } catch (const FileError& e) {
    err << "edgeguard: " << (o.path.empty() ? "" : o.path + ": ") << e.what() << '\n';
  } catch (const AssumptionAViolation& e) {
    print_assumption_a(e, err);
  } catch (const std::exception& e) {
    err << "edgeguard: " << e.what() << '\n';
  }
  return kExitInputError;
}

}  // namespace edgeguard::cli
