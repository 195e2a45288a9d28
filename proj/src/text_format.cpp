#include "detlab/text_format.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace detlab {

namespace {

struct Directive {
  std::size_t line;
  std::vector<std::string_view> args;
};

std::vector<std::string_view> tokenize(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

std::size_t parse_count(std::string_view token, std::size_t line, const char* what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError(line, std::string("expected ") + what + ", got '" + std::string(token) + "'");
  return value;
}

struct RawFile {
  std::optional<std::size_t> declared_states;
  std::string semiring = "bool";
  std::vector<std::string> alphabet;
  bool has_alphabet = false;
  std::vector<Directive> init, final, trans;
};

RawFile scan(std::string_view text) {
  RawFile raw;
  bool seen_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto tokens = tokenize(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto keyword = tokens.front();
    std::vector<std::string_view> args(tokens.begin() + 1, tokens.end());
    if (keyword == "fsa") {
      if (seen_header) throw ParseError(line_no, "duplicate 'fsa' header");
      if (args.size() != 2) throw ParseError(line_no, "expected 'fsa <n_states> <semiring>'");
      raw.declared_states = parse_count(args[0], line_no, "state count");
      raw.semiring = std::string(args[1]);
      if (raw.semiring != "bool" && raw.semiring != "tropical")
        throw ParseError(line_no, "unknown semiring '" + raw.semiring + "'");
      seen_header = true;
    } else if (keyword == "alphabet") {
      raw.has_alphabet = true;
      for (auto s : args) {
        if (!is_valid_symbol(s)) throw ParseError(line_no, "invalid symbol '" + std::string(s) + "'");
        raw.alphabet.emplace_back(s);
      }
    } else if (keyword == "init") {
      raw.init.push_back({line_no, std::move(args)});
    } else if (keyword == "final") {
      raw.final.push_back({line_no, std::move(args)});
    } else if (keyword == "trans") {
      raw.trans.push_back({line_no, std::move(args)});
    } else {
      throw ParseError(line_no, "unknown directive '" + std::string(keyword) + "'");
    }
    if (end == text.size()) break;
  }
  return raw;
}

class Builder {
 public:
  explicit Builder(RawFile& raw) : raw_(raw), weighted_(raw.semiring != "bool") {}

  bool weighted() const { return weighted_; }

  void check_arity(const Directive& d, std::size_t bool_arity, const char* form) const {
    const std::size_t expected = bool_arity + (weighted_ ? 1 : 0);
    if (d.args.size() != expected) throw ParseError(d.line, std::string("expected '") + form + "'");
  }

  StateId state(std::string_view token, std::size_t line) {
    const std::size_t q = parse_count(token, line, "state index");
    if (raw_.declared_states && q >= *raw_.declared_states)
      throw ParseError(line, "unknown state " + std::string(token) + " (automaton declares " +
                                 std::to_string(*raw_.declared_states) + " states)");
    max_state_ = std::max(max_state_, q + 1);
    return static_cast<StateId>(q);
  }

  LabelId label(std::string_view token, std::size_t line) {
    if (token == kEpsilonToken) return kEpsilon;
    if (!is_valid_symbol(token)) throw ParseError(line, "invalid label '" + std::string(token) + "'");
    auto it = std::find(raw_.alphabet.begin(), raw_.alphabet.end(), token);
    if (it != raw_.alphabet.end()) return static_cast<LabelId>(it - raw_.alphabet.begin());
    if (raw_.has_alphabet) throw ParseError(line, "label '" + std::string(token) + "' is not in the alphabet");
    raw_.alphabet.emplace_back(token);
    return static_cast<LabelId>(raw_.alphabet.size() - 1);
  }

  TropicalWeight weight(std::string_view token, std::size_t line) {
    try {
      return TropicalSemifield::parse(token);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line, e.what());
    }
  }

  std::size_t num_states() const { return raw_.declared_states.value_or(max_state_); }

 private:
  RawFile& raw_;
  bool weighted_;
  std::size_t max_state_ = 0;
};

Automaton build_unweighted(RawFile& raw) {
  Builder b(raw);
  std::vector<StateId> initial, finals;
  std::vector<Transition> transitions;
  for (const auto& d : raw.init) {
    b.check_arity(d, 1, "init <state>");
    initial.push_back(b.state(d.args[0], d.line));
  }
  for (const auto& d : raw.final) {
    b.check_arity(d, 1, "final <state>");
    finals.push_back(b.state(d.args[0], d.line));
  }
  for (const auto& d : raw.trans) {
    b.check_arity(d, 3, "trans <src> <label> <dst>");
    const StateId src = b.state(d.args[0], d.line);
    const LabelId label = b.label(d.args[1], d.line);
    const StateId dst = b.state(d.args[2], d.line);
    transitions.push_back({src, label, dst});
  }
  return Automaton(raw.alphabet, b.num_states(), initial, finals, std::move(transitions));
}

TropicalAutomaton build_tropical(RawFile& raw) {
  Builder b(raw);
  using Entry = TropicalAutomaton::Entry;
  std::vector<Entry> initial, finals;
  std::vector<WeightedTransition<TropicalSemifield>> transitions;
  std::map<StateId, std::size_t> init_lines, final_lines;
  std::map<std::tuple<StateId, std::string, StateId>, std::size_t> trans_lines;
  for (const auto& d : raw.init) {
    b.check_arity(d, 1, "init <state> <weight>");
    const StateId q = b.state(d.args[0], d.line);
    if (!init_lines.emplace(q, d.line).second) throw ParseError(d.line, "duplicate initial weight for state " + std::to_string(q));
    initial.emplace_back(q, b.weight(d.args[1], d.line));
  }
  for (const auto& d : raw.final) {
    b.check_arity(d, 1, "final <state> <weight>");
    const StateId q = b.state(d.args[0], d.line);
    if (!final_lines.emplace(q, d.line).second) throw ParseError(d.line, "duplicate final weight for state " + std::to_string(q));
    finals.emplace_back(q, b.weight(d.args[1], d.line));
  }
  for (const auto& d : raw.trans) {
    b.check_arity(d, 3, "trans <src> <label> <weight> <dst>");
    const StateId src = b.state(d.args[0], d.line);
    const LabelId label = b.label(d.args[1], d.line);
    auto w = b.weight(d.args[2], d.line);
    const StateId dst = b.state(d.args[3], d.line);
    if (!trans_lines.emplace(std::make_tuple(src, std::string(d.args[1]), dst), d.line).second)
      throw ParseError(d.line, "duplicate weighted transition " + std::to_string(src) + " " + std::string(d.args[1]) +
                                   " " + std::to_string(dst));
    transitions.push_back({src, label, dst, std::move(w)});
  }
  return TropicalAutomaton(raw.alphabet, b.num_states(), std::move(initial), std::move(finals), std::move(transitions));
}

void write_alphabet(std::ostringstream& out, const std::vector<std::string>& alphabet) {
  out << "alphabet";
  for (const auto& s : alphabet) out << ' ' << s;
  out << '\n';
}

}  // namespace

AnyAutomaton parse_automaton(std::string_view text) {
  RawFile raw = scan(text);
  try {
    if (raw.semiring == "bool") return build_unweighted(raw);
    return build_tropical(raw);
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  }
}

Automaton parse_unweighted(std::string_view text) {
  auto any = parse_automaton(text);
  if (auto* a = std::get_if<Automaton>(&any)) return std::move(*a);
  throw ParseError(1, "expected an unweighted (bool) automaton");
}

TropicalAutomaton parse_tropical(std::string_view text) {
  auto any = parse_automaton(text);
  if (auto* a = std::get_if<TropicalAutomaton>(&any)) return std::move(*a);
  throw ParseError(1, "expected a tropical automaton");
}

std::string serialize_automaton(const Automaton& a) {
  std::ostringstream out;
  out << "fsa " << a.num_states() << " bool\n";
  write_alphabet(out, a.alphabet());
  a.initial().for_each([&](StateId q) { out << "init " << q << '\n'; });
  a.final_states().for_each([&](StateId q) { out << "final " << q << '\n'; });
  for (const auto& t : a.transitions()) out << "trans " << t.src << ' ' << a.label_name(t.label) << ' ' << t.dst << '\n';
  return out.str();
}

std::string serialize_automaton(const TropicalAutomaton& a) {
  using K = TropicalSemifield;
  std::ostringstream out;
  out << "fsa " << a.num_states() << " tropical\n";
  write_alphabet(out, a.alphabet());
  for (const auto& [q, w] : a.initial_weights()) out << "init " << q << ' ' << K::format(w) << '\n';
  for (const auto& [q, w] : a.final_weights()) out << "final " << q << ' ' << K::format(w) << '\n';
  for (const auto& t : a.transitions())
    out << "trans " << t.src << ' ' << a.label_name(t.label) << ' ' << K::format(t.weight) << ' ' << t.dst << '\n';
  return out.str();
}

std::string serialize_automaton(const AnyAutomaton& a) {
  return std::visit([](const auto& x) { return serialize_automaton(x); }, a);
}

}  // namespace detlab
