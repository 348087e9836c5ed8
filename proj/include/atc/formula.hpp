#pragma once

#include <bitset>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace atc {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SignatureError : public Error {
 public:
  using Error::Error;
};

// A valuation stores atom i at bit i.
using Val = std::uint32_t;

inline constexpr int kMaxAtoms = 10;

// Set of valuations indexed by their bit pattern.
using ValSet = std::bitset<(1u << kMaxAtoms)>;

class Signature {
 public:
  Signature() = default;
  Signature(std::vector<std::string> atoms, std::vector<std::string> actions);

  [[nodiscard]] const std::vector<std::string>& atoms() const { return atoms_; }
  [[nodiscard]] const std::vector<std::string>& actions() const { return actions_; }
  [[nodiscard]] int num_atoms() const { return static_cast<int>(atoms_.size()); }
  [[nodiscard]] int num_actions() const { return static_cast<int>(actions_.size()); }
  [[nodiscard]] Val num_valuations() const { return Val{1} << atoms_.size(); }

  [[nodiscard]] std::optional<int> atom_index(std::string_view name) const;
  [[nodiscard]] std::optional<int> action_index(std::string_view name) const;
  // Throws SignatureError when the name is not declared.
  [[nodiscard]] int require_atom(std::string_view name) const;
  [[nodiscard]] int require_action(std::string_view name) const;

  // All valuations of the signature.
  [[nodiscard]] ValSet all() const;

  bool operator==(const Signature&) const = default;

 private:
  std::vector<std::string> atoms_;
  std::vector<std::string> actions_;
};

struct Literal {
  int atom = 0;
  bool positive = true;

  [[nodiscard]] Literal negated() const { return {atom, !positive}; }
  [[nodiscard]] bool holds(Val v) const { return (((v >> atom) & 1u) != 0) == positive; }
  bool operator==(const Literal&) const = default;
};

// Consistent conjunction of literals. `care` marks the atoms mentioned and
// `pol` their polarity. The empty term denotes true.
struct Term {
  std::uint32_t care = 0;
  std::uint32_t pol = 0;

  static Term full(Val v, int num_atoms);
  static Term of(const std::vector<Literal>& lits);

  [[nodiscard]] int size() const;
  [[nodiscard]] bool empty() const { return care == 0; }
  [[nodiscard]] bool contains(Literal l) const;
  [[nodiscard]] bool satisfied_by(Val v) const { return (v & care) == pol; }
  // True when every literal of this term also occurs in `other`.
  [[nodiscard]] bool subset_of(const Term& other) const;
  [[nodiscard]] std::vector<Literal> literals() const;
  [[nodiscard]] ValSet models(int num_atoms) const;

  bool operator==(const Term&) const = default;
};

// Canonical term order: by size, then literal by literal in atom order with
// the positive literal first.
bool term_less(const Term& a, const Term& b);

class Formula {
 public:
  enum class Kind { Top, Bot, Atom, Not, And, Or, Xor, Imp, Iff };

  Formula();  // true

  static Formula top();
  static Formula bot();
  static Formula atom(int index);
  static Formula literal(Literal l);
  static Formula term(const Term& t);
  static Formula unary(Kind k, Formula a);
  static Formula binary(Kind k, Formula a, Formula b);

  [[nodiscard]] Kind kind() const;
  [[nodiscard]] int atom_index() const;
  [[nodiscard]] const Formula& lhs() const;
  [[nodiscard]] const Formula& rhs() const;

  [[nodiscard]] bool eval(Val v) const;
  [[nodiscard]] ValSet truth_table(int num_atoms) const;
  // Largest atom index mentioned, or -1.
  [[nodiscard]] int max_atom() const;
  [[nodiscard]] std::uint32_t atoms_mask() const;

  [[nodiscard]] std::string to_string(const Signature& sig) const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator<(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n);
  std::shared_ptr<const Node> node_;
};

Formula operator!(const Formula& a);
Formula operator&&(const Formula& a, const Formula& b);
Formula operator||(const Formula& a, const Formula& b);
Formula implies(const Formula& a, const Formula& b);
Formula iff(const Formula& a, const Formula& b);
Formula exclusive_or(const Formula& a, const Formula& b);
Formula conjunction(const std::vector<Formula>& fs);
Formula disjunction(const std::vector<Formula>& fs);
Formula dnf(const std::vector<Term>& terms);

// Throws SignatureError if the formula mentions an atom outside `sig`.
void check_signature(const Formula& f, const Signature& sig);

[[nodiscard]] ValSet models_set(const std::vector<Formula>& gamma, const Signature& sig);
[[nodiscard]] std::vector<Val> models_of(const Formula& f, const Signature& sig);
[[nodiscard]] std::vector<Val> models_of(const std::vector<Formula>& gamma, const Signature& sig);
[[nodiscard]] std::vector<Val> to_vector(const ValSet& s, const Signature& sig);
[[nodiscard]] bool entails_cpl(const std::vector<Formula>& gamma, const Formula& f,
                               const Signature& sig);
[[nodiscard]] bool equivalent_cpl(const Formula& a, const Formula& b, const Signature& sig);

[[nodiscard]] std::vector<int> essential_atoms(const Formula& f, const Signature& sig);
[[nodiscard]] Formula essential_reduct(const Formula& f, const Signature& sig);

[[nodiscard]] std::vector<Term> prime_implicants(const ValSet& on, int num_atoms);
[[nodiscard]] std::vector<Term> prime_implicants(const Formula& f, const Signature& sig);

// Literal reading of prime subvaluations modulo a world set.
[[nodiscard]] std::vector<Term> prime_subvaluations(const Formula& f, const ValSet& worlds,
                                                    const Signature& sig);

// Short DNF for a function given by its on-set and don't-care set.
[[nodiscard]] Formula minimal_dnf(const ValSet& on, const ValSet& dont_care, int num_atoms);
// Formula true exactly outside `excluded` (modulo `dont_care`), written as the
// negation of a short DNF of the excluded valuations.
[[nodiscard]] Formula negated_dnf(const ValSet& excluded, const ValSet& dont_care, int num_atoms);

struct StaticContraction {
  std::vector<Formula> statics;
  std::optional<Val> added;  // the admitted valuation, empty under preservation
};

// Model-based maxichoice contraction of a set of static laws.
class ClassicalContraction {
 public:
  virtual ~ClassicalContraction() = default;
  [[nodiscard]] virtual std::vector<StaticContraction> contract(
      const std::vector<Formula>& statics, const Formula& f, const Signature& sig) const;
};

[[nodiscard]] std::vector<StaticContraction> classical_contract(
    const std::vector<Formula>& statics, const Formula& f, const Signature& sig);

[[nodiscard]] std::string term_to_string(const Term& t, const Signature& sig);
[[nodiscard]] std::string valuation_to_string(Val v, const Signature& sig);

}  // namespace atc
