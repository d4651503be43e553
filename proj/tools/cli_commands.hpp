#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "varchenko/oracle.hpp"
#include "varchenko/varchenko.hpp"

namespace varchenko::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kValidation = 3,
  kVerification = 4,
  kNumberingNotFound = 5,
};

inline constexpr std::uint64_t kDefaultSeed = 7;

struct InputOptions {
  std::string path;
  bool topes = false;
  bool wiring = false;
  std::string weights;
};

struct Input {
  std::optional<WiringDiagram> diagram;
  std::vector<Tope> topes;
  WeightAssignment weights;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// A file is a wiring diagram when its first token is `wires`.
inline bool looks_like_wiring(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto tokens = detail::tokenize_line(line);
    if (!tokens.empty()) return tokens[0].text == "wires";
  }
  return false;
}

inline WeightAssignment parse_weights(const std::string& spec, std::size_t lines) {
  if (spec.empty()) return WeightAssignment::identity(lines);
  std::vector<VariableId> vars;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("--weights expects comma-separated variable indices");
    vars.push_back(VariableId{static_cast<std::uint32_t>(std::stoul(item))});
  }
  if (vars.size() != lines) throw UsageError("--weights needs one variable per line");
  return WeightAssignment(std::move(vars));
}

inline Input load_input(const InputOptions& opt) {
  std::string text = read_file(opt.path);
  bool wiring = opt.wiring || (!opt.topes && looks_like_wiring(text));
  Input in;
  if (wiring) {
    in.diagram = parse_wiring_diagram(text);
    in.topes = ArrangementGeometry(*in.diagram).topes();
  } else {
    in.topes = topes_from_file(text);
  }
  in.weights = parse_weights(opt.weights, in.topes.front().size());
  return in;
}

inline std::map<PointId, ConeChoice> parse_cones(const std::vector<std::string>& specs) {
  std::map<PointId, ConeChoice> out;
  for (const auto& spec : specs) {
    std::vector<std::string> parts;
    std::stringstream in(spec);
    std::string item;
    while (std::getline(in, item, ':')) parts.push_back(item);
    bool ok = (parts.size() == 2 || (parts.size() == 3 && parts[2] == "r"));
    for (std::size_t i = 0; ok && i < 2; ++i) ok = !parts[i].empty() && parts[i].find_first_not_of("0123456789") == std::string::npos;
    if (!ok || std::stoul(parts[0]) == 0) throw UsageError("--cone expects POINT:SECTOR or POINT:SECTOR:r, got '" + spec + "'");
    out[std::stoul(parts[0]) - 1] = ConeChoice{std::stoul(parts[1]), parts.size() == 3};
  }
  return out;
}

inline std::uint64_t seed_from(std::uint64_t flag_value, bool flag_given) {
  if (flag_given) return flag_value;
  if (const char* env = std::getenv("VARCHENKO_SEED")) {
    std::string s(env);
    if (!s.empty() && s.find_first_not_of("0123456789") == std::string::npos) return std::stoull(s);
    throw UsageError("VARCHENKO_SEED must be a nonnegative integer");
  }
  return kDefaultSeed;
}

inline WiringDiagram require_diagram(const Input& in, const std::string& command) {
  if (!in.diagram) throw ValidationError(command + " needs a wiring diagram; tope sets carry no geometry");
  return *in.diagram;
}

inline int cmd_matrix(const InputOptions& input, const std::string& format, std::ostream& out) {
  Input in = load_input(input);
  auto v = varchenko_matrix(in.topes, in.weights);
  out << (format == "grid" ? format_grid(v.entries) : format_entries(v.entries));
  return kOk;
}

struct ReduceOptions {
  bool verify = false;
  std::string report_path;
  std::vector<std::string> cones;
  bool search = false;
  std::size_t search_limit = NumberingOptions{}.search_limit;
  std::uint64_t seed = kDefaultSeed;
};

inline int cmd_reduce(const InputOptions& input, const ReduceOptions& opt, std::ostream& out) {
  Input in = load_input(input);
  WiringDiagram w = require_diagram(in, "reduce");
  NumberingOptions numbering;
  numbering.cones = parse_cones(opt.cones);
  numbering.force_search = opt.search;
  numbering.search_limit = opt.search_limit;
  Reduction red = reduce(w, in.weights, numbering);
  out << format_blocks(red.form, red.geometry);
  if (!opt.verify) return kOk;
  auto report = verify_block_form(red.form, red.matrix, red.geometry.poset(), red.weights, opt.seed);
  if (opt.report_path.empty()) {
    out << report.to_text();
  } else {
    std::ofstream f(opt.report_path);
    if (!f) throw UsageError("cannot write " + opt.report_path);
    f << report.to_text();
  }
  return report.all_passed() ? kOk : kVerification;
}

inline int cmd_det(const InputOptions& input, std::optional<std::uint64_t> evaluate_seed, std::ostream& out) {
  Input in = load_input(input);
  WiringDiagram w = require_diagram(in, "det");
  ArrangementGeometry geo(w);
  auto v = varchenko_matrix(geo.topes(), in.weights);
  bool equal = false;
  if (evaluate_seed) {
    auto at = oracle::random_assignment(in.weights.variables(), *evaluate_seed, singular_factors(geo.poset(), in.weights));
    Rational formula = varchenko_determinant_formula_at(geo.poset(), in.weights, at);
    Rational brute = oracle::brute_determinant(v.entries, at);
    out << "point";
    for (const auto& [var, value] : at) out << " x" << var.index << "=" << value.str();
    out << "\nformula " << formula.str() << "\nbrute-force " << brute.str() << '\n';
    equal = formula == brute;
  } else {
    Polynomial formula = varchenko_determinant_formula(geo.poset(), in.weights);
    Polynomial brute = oracle::symbolic_bareiss_determinant(v.entries);
    out << "factored " << format_factored(varchenko_determinant_factors(geo.poset(), in.weights)) << '\n';
    out << "formula " << to_string(formula) << "\nbrute-force " << to_string(brute) << '\n';
    equal = formula == brute;
  }
  out << (equal ? "equal" : "MISMATCH") << '\n';
  return equal ? kOk : kVerification;
}

struct CorpusRow {
  std::string events;
  std::size_t regions = 0;
  std::string pattern;
  bool passed = false;
  std::string failure;
};

// Full reduction, verification and a determinant spot check at three points.
inline CorpusRow check_corpus_diagram(const WiringDiagram& w, std::uint64_t seed) {
  CorpusRow row;
  for (const auto& e : w.events()) row.events += (row.events.empty() ? "" : ",") + std::to_string(e.bottom) + ":" + std::to_string(e.size);
  if (row.events.empty()) row.events = "-";
  std::vector<std::size_t> sizes;
  for (PointId k : w.degenerate_events()) sizes.push_back(w.events()[k].size);
  std::sort(sizes.begin(), sizes.end());
  for (auto s : sizes) row.pattern += (row.pattern.empty() ? "" : "+") + std::to_string(s);
  if (row.pattern.empty()) row.pattern = "semigeneral";
  try {
    Reduction red = reduce(w);
    row.regions = red.geometry.region_count();
    auto report = verify_block_form(red.form, red.matrix, red.geometry.poset(), red.weights, seed);
    row.passed = report.all_passed();
    if (!row.passed) row.failure = report.to_text();
    auto avoid = singular_factors(red.geometry.poset(), red.weights);
    for (std::uint64_t i = 0; i < 3 && row.passed; ++i) {
      auto at = oracle::random_assignment(red.weights.variables(), seed + 7919 * i, avoid);
      if (oracle::brute_determinant(red.matrix.entries, at) != varchenko_determinant_formula_at(red.geometry.poset(), red.weights, at)) {
        row.passed = false;
        row.failure = "determinant differs from the formula";
      }
    }
  } catch (const std::exception& e) {
    row.passed = false;
    row.failure = e.what();
  }
  return row;
}

template <class F>
void parallel_for(std::size_t count, unsigned jobs, F&& body) {
  jobs = std::max(1u, jobs);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  for (auto& th : pool) th.join();
}

inline int cmd_corpus(std::size_t n, bool degenerate, unsigned jobs, std::uint64_t seed, std::ostream& out) {
  if (n == 0 || n > 6) throw UsageError("corpus supports 1 to 6 wires");
  auto diagrams = oracle::full_corpus(n, degenerate);
  std::vector<CorpusRow> rows(diagrams.size());
  parallel_for(diagrams.size(), jobs, [&](std::size_t i) { rows[i] = check_corpus_diagram(diagrams[i], seed); });
  out << "# id regions pattern verdict events\n";
  std::map<std::string, std::pair<std::size_t, std::size_t>> summary;
  bool all = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out << i + 1 << ' ' << r.regions << ' ' << r.pattern << ' ' << (r.passed ? "PASS" : "FAIL") << ' ' << r.events << '\n';
    if (!r.passed) out << "#   " << r.failure << '\n';
    auto& s = summary[r.pattern];
    ++s.first;
    if (r.passed) ++s.second;
    all = all && r.passed;
  }
  out << "# pattern diagrams passed\n";
  for (const auto& [pattern, counts] : summary) out << "summary " << pattern << ' ' << counts.first << ' ' << counts.second << '\n';
  out << "total " << rows.size() << ' ' << (all ? "PASS" : "FAIL") << '\n';
  return all ? kOk : kVerification;
}

inline int cmd_leftover(std::size_t n, const std::string& vars_spec, const std::string& format, std::ostream& out) {
  if (n < 3 || n > Monomial::kMaxVariables) throw UsageError("leftover needs 3 <= n <= 16");
  WeightAssignment w = parse_weights(vars_spec, n);
  auto L = leftover_matrix(w.variables());
  out << (format == "grid" ? format_grid(L.entries) : format_entries(L.entries));
  Polynomial det = leftover_determinant(w.variables());
  out << "determinant " << to_string(det) << '\n';
  if (n <= 7) {
    bool equal = oracle::symbolic_determinant(L.entries) == det;
    out << "cofactor-check " << (equal ? "equal" : "MISMATCH") << '\n';
    if (!equal) return kVerification;
  }
  return kOk;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Varchenko matrices of pseudoline arrangements and their block diagonal forms"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "varchenko 1.0");

  InputOptions input;
  std::string format = "entries";
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", input.path, "wiring diagram or tope file")->required();
    auto* t = sub->add_flag("--topes", input.topes, "read the input as a tope set");
    auto* w = sub->add_flag("--wiring", input.wiring, "read the input as a wiring diagram");
    t->excludes(w);
    sub->add_option("--weights", input.weights, "weight variable index per line, e.g. 2,3,1");
  };

  auto* matrix = app.add_subcommand("matrix", "print the Varchenko matrix");
  add_input(matrix);
  matrix->add_option("--format", format, "grid or entries")->check(CLI::IsMember({"grid", "entries"}));

  ReduceOptions reduce_opt;
  std::uint64_t seed_flag = kDefaultSeed;
  auto* reduce_cmd = app.add_subcommand("reduce", "compute a block diagonal form");
  add_input(reduce_cmd);
  reduce_cmd->add_flag("--verify", reduce_opt.verify, "run the five verification checks");
  reduce_cmd->add_option("--report", reduce_opt.report_path, "write the verification report to a file");
  reduce_cmd->add_option("--cone", reduce_opt.cones, "cone at a degenerate point: POINT:SECTOR[:r]");
  reduce_cmd->add_flag("--search", reduce_opt.search, "find the numbering by search instead of construction");
  reduce_cmd->add_option("--search-limit", reduce_opt.search_limit, "give up after this many search steps");
  auto* reduce_seed = reduce_cmd->add_option("--seed", seed_flag, "seed for random evaluation points");

  std::uint64_t evaluate_seed = 0;
  auto* det = app.add_subcommand("det", "compare det(V) with the determinant formula");
  add_input(det);
  auto* symbolic = det->add_flag("--symbolic", "compare symbolically (default)");
  auto* evaluate = det->add_option("--evaluate", evaluate_seed, "compare at a seeded rational point");
  symbolic->excludes(evaluate);

  std::size_t corpus_n = 0;
  bool corpus_degenerate = false;
  unsigned jobs = 1;
  auto* corpus = app.add_subcommand("corpus", "reduce and verify every diagram on n wires");
  corpus->add_option("n", corpus_n, "number of wires")->required();
  corpus->add_flag("--degenerate", corpus_degenerate, "include degenerate diagrams");
  corpus->add_option("--jobs", jobs, "worker threads");
  auto* corpus_seed = corpus->add_option("--seed", seed_flag, "seed for random evaluation points");

  std::size_t leftover_n = 0;
  std::string leftover_vars;
  auto* leftover = app.add_subcommand("leftover", "print the leftover matrix L^n and its determinant");
  leftover->add_option("n", leftover_n, "number of concurrent lines")->required();
  leftover->add_option("--vars", leftover_vars, "variable order, e.g. 4,2,5");
  leftover->add_option("--format", format, "grid or entries")->check(CLI::IsMember({"grid", "entries"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*matrix) return cmd_matrix(input, format, out);
    if (*reduce_cmd) {
      reduce_opt.seed = seed_from(seed_flag, reduce_seed->count() > 0);
      return cmd_reduce(input, reduce_opt, out);
    }
    if (*det) return cmd_det(input, evaluate->count() ? std::optional<std::uint64_t>(evaluate_seed) : std::nullopt, out);
    if (*corpus) return cmd_corpus(corpus_n, corpus_degenerate, jobs, seed_from(seed_flag, corpus_seed->count() > 0), out);
    if (*leftover) return cmd_leftover(leftover_n, leftover_vars, format, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kValidation;
  } catch (const NumberingNotFound& e) {
    err << "no numbering: " << e.what() << '\n';
    return kNumberingNotFound;
  } catch (const EliminationError& e) {
    err << "elimination failed: " << e.what() << '\n';
    return kVerification;
  } catch (const SplitError& e) {
    err << "splitting failed: " << e.what() << '\n';
    return kVerification;
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace varchenko::cli
