#include "narql/jfa.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "narql/error.hpp"

namespace narql::jfa {

namespace {

template <typename T>
std::vector<T> unique_in_order(std::vector<T> items) {
  std::vector<T> out;
  out.reserve(items.size());
  for (auto& item : items)
    if (std::find(out.begin(), out.end(), item) == out.end()) out.push_back(std::move(item));
  return out;
}

std::string join(const Word& word) {
  std::string out;
  for (const auto& s : word) {
    if (!out.empty()) out += ' ';
    out += s;
  }
  return out;
}

// Depth-first search over (state, remaining multiset). Positions never
// matter for acceptance, so the memo only records dead multisets per state.
class MultisetSearch {
 public:
  MultisetSearch(const Machine& machine, const Word& word) {
    const auto& states = machine.states();
    std::unordered_map<State, std::size_t> state_index;
    for (std::size_t i = 0; i < states.size(); ++i) state_index.emplace(states[i], i);

    std::unordered_map<Symbol, std::size_t> symbol_index;
    for (const auto& s : word) {
      auto [it, inserted] = symbol_index.emplace(s, counts_.size());
      if (inserted) counts_.push_back(0);
      ++counts_[it->second];
    }
    remaining_ = word.size();

    outgoing_.resize(states.size());
    final_.resize(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) final_[i] = machine.is_final(states[i]);
    for (std::size_t r = 0; r < machine.rules().size(); ++r) {
      const auto& rule = machine.rules()[r];
      auto sym = symbol_index.find(rule.symbol);
      if (sym == symbol_index.end()) continue;  // symbol absent from the word
      outgoing_[state_index.at(rule.from)].push_back(
          Edge{r, sym->second, state_index.at(rule.to)});
    }
    start_ = state_index.at(machine.start());
  }

  /// On success `path` (if given) holds the applied rule indices in order.
  bool run(std::vector<std::size_t>* path) { return visit(start_, remaining_, path); }

 private:
  struct Edge {
    std::size_t rule;
    std::size_t symbol;
    std::size_t to;
  };

  bool visit(std::size_t state, std::size_t remaining, std::vector<std::size_t>* path) {
    if (remaining == 0) return final_[state];
    std::vector<std::size_t> key = counts_;
    key.push_back(state);
    if (dead_.contains(key)) return false;
    for (const auto& edge : outgoing_[state]) {
      if (counts_[edge.symbol] == 0) continue;
      --counts_[edge.symbol];
      if (path) path->push_back(edge.rule);
      if (visit(edge.to, remaining - 1, path)) return true;
      if (path) path->pop_back();
      ++counts_[edge.symbol];
    }
    dead_.insert(std::move(key));
    return false;
  }

  std::vector<std::size_t> counts_;
  std::size_t remaining_ = 0;
  std::size_t start_ = 0;
  std::vector<std::vector<Edge>> outgoing_;
  std::vector<bool> final_;
  std::set<std::vector<std::size_t>> dead_;
};

}  // namespace

std::string to_string(const Rule& rule) {
  return rule.from + " " + rule.symbol + " -> " + rule.to;
}

std::string to_string(const Configuration& config) {
  std::string out = join(config.left);
  if (!out.empty()) out += ' ';
  out += '[' + config.state + ']';
  if (!config.right.empty()) out += ' ' + join(config.right);
  return out;
}

Machine::Machine(std::vector<State> states, std::vector<Symbol> alphabet,
                 std::vector<Rule> rules, State start, std::vector<State> finals)
    : states_(unique_in_order(std::move(states))),
      alphabet_(unique_in_order(std::move(alphabet))),
      rules_(unique_in_order(std::move(rules))),
      start_(std::move(start)),
      finals_(unique_in_order(std::move(finals))) {
  if (states_.empty()) throw Error(ErrorCode::InvalidMachine, "machine has no states");
  if (!has_state(start_))
    throw Error(ErrorCode::InvalidMachine, "start state '" + start_ + "' is not in Q");
  for (const auto& f : finals_)
    if (!has_state(f))
      throw Error(ErrorCode::InvalidMachine, "final state '" + f + "' is not in Q");
  for (const auto& r : rules_) {
    if (!has_state(r.from) || !has_state(r.to))
      throw Error(ErrorCode::InvalidMachine, "rule '" + to_string(r) + "' uses an unknown state");
    if (std::find(alphabet_.begin(), alphabet_.end(), r.symbol) == alphabet_.end())
      throw Error(ErrorCode::InvalidMachine,
                  "rule '" + to_string(r) + "' uses a symbol outside the alphabet");
  }
}

bool Machine::has_state(const State& q) const {
  return std::find(states_.begin(), states_.end(), q) != states_.end();
}

bool Machine::is_final(const State& q) const {
  return std::find(finals_.begin(), finals_.end(), q) != finals_.end();
}

State chain_state_name(std::size_t index) {
  if (index < 18) return State(1, static_cast<char>('I' + index));
  return "S" + std::to_string(index);
}

Machine chain_machine(std::span<const Symbol> required) {
  if (required.empty())
    throw Error(ErrorCode::InvalidMachine, "a chain machine needs at least one symbol");
  std::vector<State> states;
  std::vector<Rule> rules;
  for (std::size_t i = 0; i < required.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (required[j] == required[i])
        throw Error(ErrorCode::DuplicateSymbol,
                    "symbol '" + required[i] + "' appears twice in the chain", {j, i});
    states.push_back(chain_state_name(i));
    rules.push_back(Rule{chain_state_name(i), required[i], chain_state_name(i + 1)});
  }
  states.push_back(chain_state_name(required.size()));
  return Machine(states, std::vector<Symbol>(required.begin(), required.end()),
                 std::move(rules), states.front(), {states.back()});
}

std::vector<Move> jump_step(const Machine& machine, const Configuration& config) {
  std::vector<Move> moves;
  Word input = config.left;
  input.insert(input.end(), config.right.begin(), config.right.end());
  for (const auto& rule : machine.rules()) {
    if (rule.from != config.state) continue;
    for (std::size_t k = 0; k < input.size(); ++k) {
      if (input[k] != rule.symbol) continue;
      Word rest = input;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
      for (std::size_t split = 0; split <= rest.size(); ++split) {
        auto mid = rest.begin() + static_cast<std::ptrdiff_t>(split);
        Move move{Configuration{Word(rest.begin(), mid), rule.to, Word(mid, rest.end())}, rule};
        if (std::find(moves.begin(), moves.end(), move) == moves.end())
          moves.push_back(std::move(move));
      }
    }
  }
  return moves;
}

bool accepts(const Machine& machine, const Word& word) {
  return MultisetSearch(machine, word).run(nullptr);
}

DerivationTrace derive(const Machine& machine, const Word& word) {
  std::vector<std::size_t> path;
  if (!MultisetSearch(machine, word).run(&path))
    throw Error(ErrorCode::NoDerivation, "the machine rejects '" + join(word) + "'");

  DerivationTrace trace;
  trace.initial = Configuration{{}, machine.start(), word};
  Word input = word;
  for (auto r : path) {
    const auto& rule = machine.rules()[r];
    auto at = std::find(input.begin(), input.end(), rule.symbol);
    auto k = at - input.begin();
    input.erase(at);
    trace.steps.push_back(DerivationStep{
        rule, Configuration{Word(input.begin(), input.begin() + k), rule.to,
                            Word(input.begin() + k, input.end())}});
  }
  return trace;
}

ParikhVector parikh_vector(const Word& word) {
  ParikhVector counts;
  for (const auto& s : word) ++counts[s];
  return counts;
}

namespace {

bool enumerate_paths(const Machine& machine, const State& state, std::size_t steps_left,
                     ParikhVector& path_counts, const ParikhVector& target) {
  if (steps_left == 0) return machine.is_final(state) && path_counts == target;
  for (const auto& rule : machine.rules()) {
    if (rule.from != state) continue;
    auto want = target.find(rule.symbol);
    if (want == target.end()) continue;
    auto& have = path_counts[rule.symbol];
    if (have == want->second) continue;
    ++have;
    bool ok = enumerate_paths(machine, rule.to, steps_left - 1, path_counts, target);
    --path_counts[rule.symbol];
    if (path_counts[rule.symbol] == 0) path_counts.erase(rule.symbol);
    if (ok) return true;
  }
  return false;
}

}  // namespace

bool parikh_accepts(const Machine& machine, const Word& word) {
  ParikhVector path_counts;
  return enumerate_paths(machine, machine.start(), word.size(), path_counts,
                         parikh_vector(word));
}

std::string to_dot(const Machine& machine) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + '"';
  };
  std::string out = "digraph jfa {\n  rankdir=LR;\n  __start [shape=point];\n";
  for (const auto& q : machine.states())
    out += "  " + quote(q) + " [shape=" + (machine.is_final(q) ? "doublecircle" : "circle") +
           "];\n";
  out += "  __start -> " + quote(machine.start()) + ";\n";
  for (const auto& r : machine.rules())
    out += "  " + quote(r.from) + " -> " + quote(r.to) + " [label=" + quote(r.symbol) + "];\n";
  out += "}\n";
  return out;
}

}  // namespace narql::jfa
