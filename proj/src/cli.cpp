#include "detlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <variant>

#include "detlab/analysis.hpp"
#include "detlab/determinize.hpp"
#include "detlab/gen.hpp"
#include "detlab/monoid.hpp"
#include "detlab/text_format.hpp"

namespace detlab::cli {

namespace {

// Raised for problems the user has to fix: unreadable files, bad flags,
// unsupported input kinds. Reported on the error stream with exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot read '" + path + "'");
  buf << file.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& data, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << data;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + path + "'");
  file << data;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string format_word(const std::vector<std::string>& alphabet, const Word& w) {
  if (w.empty()) return std::string(kEpsilonToken);
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += alphabet[w[i]];
  }
  return s;
}

template <class K>
std::string format_matrix(const Matrix<K>& m) {
  std::string s;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    if (i) s += '/';
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (j) s += ',';
      s += K::format(m.at(i, j));
    }
  }
  return s;
}

Fuel fuel_from(std::optional<std::size_t> flag, Fuel fallback) { return flag ? Fuel::of(*flag) : fallback; }

// --- determinize -----------------------------------------------------------

struct DeterminizeArgs {
  std::string input;
  std::optional<std::size_t> fuel;
  std::string out_path;
  bool stats = false;
  bool strict = false;
};

int cmd_determinize(const DeterminizeArgs& args, bool verbose, std::istream& in, std::ostream& out,
                    std::ostream& err) {
  const AnyAutomaton parsed = parse_automaton(read_input(args.input, in));
  Stopwatch clock;
  std::size_t steps = 0, states = 0, considered = 0;
  bool terminated = true;
  std::string text;
  if (const auto* a = std::get_if<Automaton>(&parsed)) {
    const Automaton nfa = remove_epsilon(*a);
    const DetResult r = determinize(nfa, fuel_from(args.fuel, Fuel::default_unweighted(nfa.num_states())));
    steps = r.steps;
    states = r.det.num_states();
    considered = r.transitions_considered;
    terminated = r.terminated;
    text = serialize_automaton(r.det);
  } else {
    const auto& w = std::get<TropicalAutomaton>(parsed);
    if (w.has_epsilon()) throw UsageError("epsilon transitions are not supported in weighted input");
    const auto r = determinize_weighted(w, fuel_from(args.fuel, Fuel::default_weighted()));
    steps = r.steps;
    states = r.det.num_states();
    considered = r.transitions_considered;
    terminated = r.terminated;
    text = serialize_automaton(r.det);
  }
  if (verbose) err << "elapsed_ms=" << clock.ms() << '\n';
  if (args.stats) {
    out << "steps=" << steps << '\n'
        << "states=" << states << '\n'
        << "transitions_considered=" << considered << '\n'
        << "terminated=" << (terminated ? "true" : "false") << '\n';
  }
  if (!args.out_path.empty() || !args.stats) write_output(args.out_path, text, out);
  if (!terminated) {
    err << "fuel exhausted after " << states << " power states; output is partial\n";
    if (args.strict) return kFuelExhausted;
  }
  return kOk;
}

// --- analyze / verify ------------------------------------------------------

struct AnalyzeArgs {
  std::string input;
  bool verify = false;
  std::optional<std::size_t> fuel;
  std::string format = "tsv";
  bool strict = false;
};

void add_fixture_rows(AnalysisReport& report, const Fixtures& fixtures) {
  if (!fixtures.max_det_states) return;
  BoundRow row{"fixture", true, BigInt(*fixtures.max_det_states), "max_det_states", {}};
  if (report.actual_det_states) row.pass = *fixtures.max_det_states >= *report.actual_det_states;
  report.predicted_bounds.push_back(row);
}

AnalysisReport analyze_text(const std::string& text, bool verify, std::optional<std::size_t> fuel) {
  const AnyAutomaton parsed = parse_automaton(text);
  const auto* a = std::get_if<Automaton>(&parsed);
  if (!a) throw UsageError("analysis needs an unweighted automaton");
  const Automaton nfa = remove_epsilon(*a);
  if (!verify) return predict_bounds(nfa);
  AnalysisReport report = verify_bounds(nfa, fuel_from(fuel, Fuel::default_unweighted(nfa.num_states())));
  add_fixture_rows(report, parse_fixtures(text));
  return report;
}

int cmd_analyze(const AnalyzeArgs& args, bool fail_on_bound, bool verbose, std::istream& in, std::ostream& out,
                std::ostream& err) {
  if (args.format != "tsv" && args.format != "text") throw UsageError("unknown format '" + args.format + "'");
  Stopwatch clock;
  const AnalysisReport report = analyze_text(read_input(args.input, in), args.verify, args.fuel);
  if (verbose) err << "elapsed_ms=" << clock.ms() << '\n';
  out << (args.format == "tsv" ? format_report_tsv(report) : format_report_text(report));
  if (args.verify && !report.det_terminated) {
    err << "fuel exhausted; bounds left unverified\n";
    if (args.strict) return kFuelExhausted;
  }
  if (fail_on_bound && !report.all_pass()) return kBoundFailed;
  return kOk;
}

// --- monoid ----------------------------------------------------------------

struct MonoidArgs {
  std::string input;
  std::optional<std::size_t> fuel;
  bool witnesses = false;
  bool strict = false;
};

int cmd_monoid(const MonoidArgs& args, bool verbose, std::istream& in, std::ostream& out, std::ostream& err) {
  if (args.fuel && *args.fuel == 0) throw UsageError("fuel must be at least 1");
  const AnyAutomaton parsed = parse_automaton(read_input(args.input, in));
  Stopwatch clock;
  bool complete = true;
  std::ostringstream body;
  if (const auto* a = std::get_if<Automaton>(&parsed)) {
    const Automaton nfa = remove_epsilon(*a);
    const auto closure = monoid_closure(nfa, args.fuel.value_or(default_monoid_fuel(nfa.num_states())));
    complete = closure.complete;
    out << "size=" << closure.size() << '\n' << "complete=" << (complete ? "true" : "false") << '\n';
    if (args.witnesses)
      for (std::size_t i = 0; i < closure.size(); ++i)
        body << i << '\t' << format_word(nfa.alphabet(), closure.word(i)) << '\t' << closure.elements[i].to_string()
             << '\n';
  } else {
    const auto& w = std::get<TropicalAutomaton>(parsed);
    if (w.has_epsilon()) throw UsageError("epsilon transitions are not supported in weighted input");
    const auto closure = weighted_monoid_closure(w, args.fuel.value_or(Fuel::default_weighted().max_power_states.value()));
    complete = closure.complete;
    out << "size=" << closure.size() << '\n' << "complete=" << (complete ? "true" : "false") << '\n';
    if (args.witnesses)
      for (std::size_t i = 0; i < closure.size(); ++i)
        body << i << '\t' << format_word(w.alphabet(), closure.word(i)) << '\t'
             << format_matrix(closure.elements[i]) << '\n';
  }
  out << body.str();
  if (verbose) err << "elapsed_ms=" << clock.ms() << '\n';
  if (!complete) {
    err << "fuel exhausted; closure is incomplete\n";
    if (args.strict) return kFuelExhausted;
  }
  return kOk;
}

// --- gen -------------------------------------------------------------------

struct GenArgs {
  std::string family;
  GenSpec spec;
  std::string out_path;
};

int cmd_gen(GenArgs args, std::ostream& out) {
  const auto family = parse_family(args.family);
  if (!family) throw UsageError("unknown family '" + args.family + "'");
  args.spec.family = *family;
  write_output(args.out_path, serialize_automaton(generate(args.spec)), out);
  return kOk;
}

// --- batch -----------------------------------------------------------------

struct BatchArgs {
  std::string dir;
  std::optional<std::size_t> fuel;
  std::size_t jobs = 1;
  bool strict = false;
};

struct BatchItem {
  std::string name;
  std::optional<AnalysisReport> report;
  std::string error;
};

int cmd_batch(const BatchArgs& args, bool verbose, std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(args.dir, ec)) throw UsageError("not a directory: '" + args.dir + "'");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(args.dir))
    if (entry.is_regular_file() && entry.path().extension() == ".fsa") files.push_back(entry.path());
  std::sort(files.begin(), files.end(), [](const fs::path& x, const fs::path& y) {
    return x.filename().string() < y.filename().string();
  });

  std::vector<BatchItem> items(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      items[i].name = files[i].filename().string();
      try {
        std::istringstream none;
        items[i].report = analyze_text(read_input(files[i].string(), none), true, args.fuel);
      } catch (const std::exception& e) {
        items[i].error = e.what();
      }
    }
  };
  Stopwatch clock;
  const std::size_t jobs = std::max<std::size_t>(1, std::min(args.jobs, files.size()));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::size_t passed = 0, failed = 0, unverified = 0, errors = 0, exhausted = 0;
  out << "file\trule\tapplicable\tbound\tactual\tpass\n";
  for (const auto& item : items) {
    if (!item.report) {
      ++errors;
      err << item.name << ": " << item.error << '\n';
      out << item.name << "\terror\t-\t-\t-\t-\n";
      continue;
    }
    const auto& report = *item.report;
    if (!report.det_terminated) ++exhausted;
    std::istringstream rows(format_report_tsv(report));
    std::string line;
    std::getline(rows, line);  // header
    while (std::getline(rows, line)) out << item.name << '\t' << line << '\n';
    for (const auto& row : report.predicted_bounds) {
      if (!row.applicable) continue;
      if (!row.pass)
        ++unverified;
      else if (*row.pass)
        ++passed;
      else
        ++failed;
    }
  }
  out << "summary\tfiles=" << items.size() << "\terrors=" << errors << "\tpass=" << passed << "\tfail=" << failed
      << "\tunverified=" << unverified << '\n';
  if (verbose) err << "elapsed_ms=" << clock.ms() << '\n';
  if (failed > 0) return kBoundFailed;
  if (exhausted > 0 && args.strict) return kFuelExhausted;
  return kOk;
}

}  // namespace

Fixtures parse_fixtures(std::string_view text) {
  Fixtures f;
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream tokens(line);
    std::string tag, key;
    tokens >> tag >> key;
    if (tag != "#@") continue;
    if (key == "max_det_states") {
      std::size_t value;
      if (tokens >> value) f.max_det_states = value;
    }
  }
  return f;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"On-the-fly determinization and state-complexity analysis of finite-state automata", "detlab"};
  app.set_version_flag("--version", "detlab " + std::string(kVersion));
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("--verbose", verbose, "Print timing to the error stream")->configurable(false);

  DeterminizeArgs det;
  auto* det_cmd = app.add_subcommand("determinize", "Determinize an automaton (epsilon moves removed first)");
  det_cmd->add_option("input", det.input, "Automaton file, - for stdin")->required();
  det_cmd->add_option("--fuel", det.fuel, "Maximum number of power states")->check(CLI::PositiveNumber);
  det_cmd->add_option("--out", det.out_path, "Write the result here, - for stdout");
  det_cmd->add_flag("--stats", det.stats, "Print exploration statistics");
  det_cmd->add_flag("--strict", det.strict, "Exit 3 when the fuel runs out");

  AnalyzeArgs ana;
  auto* ana_cmd = app.add_subcommand("analyze", "Report structural properties and predicted state bounds");
  ana_cmd->add_option("input", ana.input, "Automaton file, - for stdin")->required();
  ana_cmd->add_flag("--verify", ana.verify, "Also determinize and check every applicable bound");
  ana_cmd->add_option("--fuel", ana.fuel, "Maximum number of power states when verifying")->check(CLI::PositiveNumber);
  ana_cmd->add_option("--format", ana.format, "tsv or text")->check(CLI::IsMember({"tsv", "text"}));
  ana_cmd->add_flag("--strict", ana.strict, "Exit 3 when the fuel runs out");

  AnalyzeArgs ver;
  ver.verify = true;
  auto* ver_cmd = app.add_subcommand("verify", "Check predicted bounds against an actual determinization");
  ver_cmd->add_option("input", ver.input, "Automaton file, - for stdin")->required();
  ver_cmd->add_option("--fuel", ver.fuel, "Maximum number of power states")->check(CLI::PositiveNumber);
  ver_cmd->add_option("--format", ver.format, "tsv or text")->check(CLI::IsMember({"tsv", "text"}));
  ver_cmd->add_flag("--strict", ver.strict, "Exit 3 when the fuel runs out");

  MonoidArgs mon;
  auto* mon_cmd = app.add_subcommand("monoid", "Enumerate the transition monoid");
  mon_cmd->add_option("input", mon.input, "Automaton file, - for stdin")->required();
  mon_cmd->add_option("--fuel", mon.fuel, "Maximum number of elements")->check(CLI::PositiveNumber);
  mon_cmd->add_flag("--witnesses", mon.witnesses, "List every element with its shortlex-least word");
  mon_cmd->add_flag("--strict", mon.strict, "Exit 3 when the fuel runs out");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an automaton from a family");
  gen_cmd->add_option("family", gen.family, "moore, one_letter_irreducible, commutative, indecomposable, dense, finite_tw")
      ->required();
  gen_cmd->add_option("--n", gen.spec.n, "Number of states")->required();
  gen_cmd->add_option("--sigma", gen.spec.sigma, "Alphabet size");
  gen_cmd->add_option("--d", gen.spec.d, "Density divisor (dense)");
  gen_cmd->add_option("--r", gen.spec.r, "Indecomposability target (indecomposable)");
  gen_cmd->add_option("--k", gen.spec.k, "Tree width (finite_tw)");
  gen_cmd->add_option("--seed", gen.spec.seed, "Random seed");
  gen_cmd->add_option("--max-tries", gen.spec.max_tries, "Rejection sampling budget (indecomposable)");
  gen_cmd->add_flag("--correlated", gen.spec.correlated, "Share one matrix across symbols (dense)");
  gen_cmd->add_option("--out", gen.out_path, "Write the automaton here, - for stdout");

  BatchArgs bat;
  auto* bat_cmd = app.add_subcommand("batch", "Verify bounds for every .fsa file in a directory");
  bat_cmd->add_option("dir", bat.dir, "Directory")->required();
  bat_cmd->add_option("--fuel", bat.fuel, "Maximum number of power states per file")->check(CLI::PositiveNumber);
  bat_cmd->add_option("--jobs", bat.jobs, "Worker threads")->check(CLI::PositiveNumber);
  bat_cmd->add_flag("--strict", bat.strict, "Exit 3 when any file runs out of fuel");

  std::vector<std::string> argv_storage{"detlab"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (det_cmd->parsed()) return cmd_determinize(det, verbose, in, out, err);
    if (ana_cmd->parsed()) return cmd_analyze(ana, false, verbose, in, out, err);
    if (ver_cmd->parsed()) return cmd_analyze(ver, true, verbose, in, out, err);
    if (mon_cmd->parsed()) return cmd_monoid(mon, verbose, in, out, err);
    if (gen_cmd->parsed()) return cmd_gen(gen, out);
    if (bat_cmd->parsed()) return cmd_batch(bat, verbose, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace detlab::cli
