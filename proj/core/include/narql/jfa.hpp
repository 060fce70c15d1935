#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

/// Jumping finite automata: a machine reads its input in any order, jumping
/// to an arbitrary position after each consumed symbol.
namespace narql::jfa {

using State = std::string;
using Symbol = std::string;
using Word = std::vector<Symbol>;

/// p y -> q : in state p, consume one occurrence of y anywhere, enter q.
struct Rule {
  State from;
  Symbol symbol;
  State to;

  auto operator<=>(const Rule&) const = default;
};

std::string to_string(const Rule& rule);  // "I b23 -> J"

/// The five-tuple (Q, Sigma, R, s, F). Immutable once built.
class Machine {
 public:
  /// Throws Error(InvalidMachine) when Q is empty, s or F reference unknown
  /// states, or a rule references an unknown state or symbol. Duplicate
  /// states, symbols, rules and finals are collapsed keeping first order.
  Machine(std::vector<State> states, std::vector<Symbol> alphabet,
          std::vector<Rule> rules, State start, std::vector<State> finals);

  const std::vector<State>& states() const noexcept { return states_; }
  const std::vector<Symbol>& alphabet() const noexcept { return alphabet_; }
  const std::vector<Rule>& rules() const noexcept { return rules_; }
  const State& start() const noexcept { return start_; }
  const std::vector<State>& finals() const noexcept { return finals_; }

  bool has_state(const State& q) const;
  bool is_final(const State& q) const;

  bool operator==(const Machine&) const = default;

 private:
  std::vector<State> states_;
  std::vector<Symbol> alphabet_;
  std::vector<Rule> rules_;
  State start_;
  std::vector<State> finals_;
};

/// Input to the left of the head, current state, input to the right.
struct Configuration {
  Word left;
  State state;
  Word right;

  bool operator==(const Configuration&) const = default;
};

std::string to_string(const Configuration& config);  // "b23 c2 [I] a12"

struct Move {
  Configuration config;
  Rule rule;

  bool operator==(const Move&) const = default;
};

struct DerivationStep {
  Rule rule;
  Configuration config;  ///< configuration after applying `rule`
};

struct DerivationTrace {
  Configuration initial;
  std::vector<DerivationStep> steps;
};

using ParikhVector = std::map<Symbol, std::size_t>;

/// Name of the i-th chain state: I, J, K, ... Z, then S18, S19, ...
State chain_state_name(std::size_t index);

/// Single path start -> ... -> final with one rule per required symbol.
/// Throws Error(DuplicateSymbol) on repeats and Error(InvalidMachine) when
/// `required` is empty.
Machine chain_machine(std::span<const Symbol> required);

/// Every positional successor of `config`: each applicable rule, each
/// occurrence of its symbol, each head position in the remaining input.
std::vector<Move> jump_step(const Machine& machine, const Configuration& config);

/// True iff some sequence of jumping moves consumes the whole word and ends
/// in a final state. Memoised over (state, remaining multiset).
bool accepts(const Machine& machine, const Word& word);

/// One witness derivation from (empty, s, word). Each step removes the
/// leftmost occurrence of the rule symbol and leaves the head where it was.
/// Throws Error(NoDerivation) when the word is rejected.
DerivationTrace derive(const Machine& machine, const Word& word);

ParikhVector parikh_vector(const Word& word);

/// Acceptance decided from symbol counts alone: enumerates rule paths from
/// the start state of length |word| and compares their Parikh vectors with
/// the word's. Does not simulate jumping moves.
bool parikh_accepts(const Machine& machine, const Word& word);

/// Graphviz rendering: states as circles, finals double-circled, an
/// invisible entry arrow into the start state, rules as labelled edges.
std::string to_dot(const Machine& machine);

}  // namespace narql::jfa
