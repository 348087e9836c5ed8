#pragma once

#include <compare>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "atc/formula.hpp"
#include "atc/law.hpp"

namespace atc {

struct Arrow {
  int action = 0;
  Val from = 0;
  Val to = 0;
  auto operator<=>(const Arrow&) const = default;
};

// Worlds are valuations, so inserting a valuation twice is a no-op.
class KripkeModel {
 public:
  KripkeModel() = default;
  explicit KripkeModel(std::set<Val> worlds) : worlds_(std::move(worlds)) {}

  [[nodiscard]] const std::set<Val>& worlds() const { return worlds_; }
  [[nodiscard]] const std::set<Arrow>& arrows() const { return arrows_; }
  [[nodiscard]] bool has_world(Val v) const { return worlds_.count(v) != 0; }
  [[nodiscard]] bool has_arrow(int a, Val from, Val to) const { return arrows_.count({a, from, to}) != 0; }
  [[nodiscard]] std::vector<Val> successors(int a, Val w) const;
  [[nodiscard]] bool has_successor(int a, Val w) const;
  [[nodiscard]] ValSet world_set() const;

  void add_world(Val v) { worlds_.insert(v); }
  // Removes the world together with its incident arrows.
  void remove_world(Val v);
  // Throws Error when an endpoint is not a world of the model.
  void add_arrow(int a, Val from, Val to);
  void remove_arrow(int a, Val from, Val to) { arrows_.erase({a, from, to}); }
  void remove_arrows_from(int a, Val from);

  auto operator<=>(const KripkeModel&) const = default;
  bool operator==(const KripkeModel&) const = default;

 private:
  std::set<Val> worlds_;
  std::set<Arrow> arrows_;
};

using ModelSet = std::set<KripkeModel>;

// Modal formulas for model checking. The entailment engine only handles the
// law fragment, but evaluation supports arbitrary nesting.
class Modal {
 public:
  enum class Kind { Prop, Not, And, Or, Imp, Box, Diamond };

  static Modal prop(Formula f);
  static Modal negation(Modal m);
  static Modal both(Modal a, Modal b);
  static Modal either(Modal a, Modal b);
  static Modal implies(Modal a, Modal b);
  static Modal box(int action, Modal m);
  static Modal diamond(int action, Modal m);
  static Modal of_law(const Law& law);

  [[nodiscard]] Kind kind() const { return node_->kind; }

 private:
  struct Node {
    Kind kind = Kind::Prop;
    Formula prop;
    int action = -1;
    std::vector<Modal> kids;
  };
  explicit Modal(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;

  friend bool eval(const KripkeModel& m, Val w, const Modal& f);
};

// Throws Error when w is not a world of m.
[[nodiscard]] bool eval(const KripkeModel& m, Val w, const Modal& f);
[[nodiscard]] bool holds_globally(const KripkeModel& m, const Modal& f);
[[nodiscard]] bool satisfies_law(const KripkeModel& m, const Law& law);
// Worlds of m at which the law fails.
[[nodiscard]] std::vector<Val> violations(const KripkeModel& m, const Law& law);
[[nodiscard]] bool is_model_of(const KripkeModel& m, const ActionTheory& t);

// Maximal accessibility over val(S) compatible with the effect laws.
[[nodiscard]] KripkeModel canonical_frame(const ActionTheory& t);
// Maximal relation on the given world set.
[[nodiscard]] KripkeModel maximal_frame(const ActionTheory& t, const std::set<Val>& worlds);

enum class Closeness { SubsetLex, CardinalityLex };
enum class Order { Closer, Farther, Equal, Incomparable };

struct Comparator {
  Closeness kind = Closeness::SubsetLex;
  KripkeModel base;
};

[[nodiscard]] Order compare(const Comparator& cmp, const KripkeModel& m1, const KripkeModel& m2);
[[nodiscard]] std::vector<KripkeModel> minimal_under(const std::vector<KripkeModel>& candidates,
                                                     const Comparator& cmp);

[[nodiscard]] std::string to_dot(const KripkeModel& m, const Signature& sig);
[[nodiscard]] std::string order_name(Order o);

}  // namespace atc
