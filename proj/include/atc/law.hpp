#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "atc/formula.hpp"

namespace atc {

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column);
  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Raised when a query leaves the law fragment (nested modalities and the like).
class UnsupportedQuery : public Error {
 public:
  using Error::Error;
};

struct Law {
  enum class Kind { Static, Effect, Exec };

  Kind kind = Kind::Static;
  Formula pre;     // the static formula itself for static laws
  int action = -1;
  Formula post;    // effect consequent; unused otherwise

  static Law static_law(Formula f) { return {Kind::Static, std::move(f), -1, Formula::top()}; }
  static Law effect(Formula pre, int action, Formula post) {
    return {Kind::Effect, std::move(pre), action, std::move(post)};
  }
  static Law exec(Formula pre, int action) {
    return {Kind::Exec, std::move(pre), action, Formula::top()};
  }

  [[nodiscard]] bool is_inexecutability() const {
    return kind == Kind::Effect && post.kind() == Formula::Kind::Bot;
  }

  friend bool operator==(const Law& a, const Law& b);
  friend bool operator<(const Law& a, const Law& b);
};

class ActionTheory {
 public:
  ActionTheory() = default;
  ActionTheory(std::string name, Signature sig) : name_(std::move(name)), sig_(std::move(sig)) {}

  [[nodiscard]] const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  [[nodiscard]] const Signature& sig() const { return sig_; }

  [[nodiscard]] const std::vector<Formula>& statics() const { return statics_; }
  [[nodiscard]] const std::vector<Law>& effects() const { return effects_; }
  [[nodiscard]] const std::vector<Law>& execs() const { return execs_; }

  // Inserts a law unless a structurally equal one is present. Returns true
  // when the law was new.
  bool add(const Law& law);
  bool remove(const Law& law);
  [[nodiscard]] bool contains(const Law& law) const;
  void clear_statics() { statics_.clear(); }

  // All laws in canonical order: statics, then effects by action, then
  // executability laws by action.
  [[nodiscard]] std::vector<Law> laws() const;
  [[nodiscard]] std::size_t size() const { return statics_.size() + effects_.size() + execs_.size(); }

  [[nodiscard]] std::vector<Law> effects_for(int action) const;
  [[nodiscard]] std::vector<Law> execs_for(int action) const;
  // Actions with at least one effect or executability law, in signature order.
  [[nodiscard]] std::vector<int> actions_with_laws() const;

  // Structural equality up to law order.
  [[nodiscard]] bool same_laws(const ActionTheory& other) const;

 private:
  std::string name_;
  Signature sig_;
  std::vector<Formula> statics_;
  std::vector<Law> effects_;
  std::vector<Law> execs_;
};

// Effect and executability laws about one action.
struct ActionLaws {
  std::vector<Law> effects;
  std::vector<Law> execs;
};

[[nodiscard]] ActionLaws laws_for_action(const ActionTheory& t, int action);
[[nodiscard]] ActionLaws laws_for_action(const ActionTheory& t, std::string_view action);

// A single law or a non-empty conjunction of laws.
using Query = std::vector<Law>;

struct ParseResult {
  ActionTheory theory;
  std::vector<std::string> warnings;
};

[[nodiscard]] ParseResult parse_theory_with_warnings(std::string_view text);
[[nodiscard]] ActionTheory parse_theory(std::string_view text);
[[nodiscard]] Formula parse_formula(std::string_view text, const Signature& sig);
[[nodiscard]] Law parse_law(std::string_view text, const Signature& sig);
// Laws separated by ';'.
[[nodiscard]] Query parse_query(std::string_view text, const Signature& sig);

[[nodiscard]] std::string render_law(const Law& law, const Signature& sig);
[[nodiscard]] std::string render_theory(const ActionTheory& t);

}  // namespace atc
