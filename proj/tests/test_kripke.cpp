#include <doctest.h>

#include <random>

#include "atc/kripke.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace atc;

namespace {

// Bits: p1 = 1, p2 = 2.
constexpr Val P1P2 = 0b11, P1N2 = 0b01, N1P2 = 0b10, N1N2 = 0b00;

}  // namespace

TEST_CASE("two-action model from the introduction") {
  const Signature sig({"p1", "p2"}, {"a1", "a2"});
  KripkeModel m({P1P2, P1N2, N1P2});
  m.add_arrow(0, P1P2, P1N2);
  m.add_arrow(0, P1P2, N1P2);
  m.add_arrow(0, P1N2, P1N2);
  m.add_arrow(0, P1N2, N1P2);
  m.add_arrow(1, P1P2, N1P2);
  m.add_arrow(1, N1P2, N1P2);
  CHECK(satisfies_law(m, parse_law("effect p1 => [a2] p2", sig)));
  CHECK(satisfies_law(m, parse_law("static p1 | p2", sig)));
  CHECK_FALSE(satisfies_law(m, parse_law("exec p1 => <a2>", sig)));
  CHECK(violations(m, parse_law("exec p1 => <a2>", sig)) == std::vector<Val>{P1N2});
}

TEST_CASE("boxes are vacuous at dead ends") {
  const Signature sig({"p"}, {"a"});
  const KripkeModel m({0b1});
  CHECK(eval(m, 0b1, Modal::box(0, Modal::prop(Formula::bot()))));
  CHECK_FALSE(eval(m, 0b1, Modal::diamond(0, Modal::prop(Formula::top()))));
  CHECK_THROWS_AS((void)eval(m, 0b0, Modal::prop(Formula::top())), Error);
  CHECK(is_model_of(KripkeModel{}, testing::load("coffee")));
}

TEST_CASE("canonical coffee frame") {
  const ActionTheory t = testing::load("coffee");
  const KripkeModel m = canonical_frame(t);
  CHECK(m.worlds().size() == 6);
  CHECK(m.arrows().size() == 3);
  const Val nt_c_h = 0b110;  // token bit 0, coffee bit 1, hot bit 2
  for (const auto& a : m.arrows()) {
    CHECK((a.from & 1u) == 1u);
    CHECK(a.to == nt_c_h);
  }
  CHECK(is_model_of(m, t));
  CHECK(eval(m, 0b111, Modal::box(0, Modal::prop(parse_formula("~token", t.sig())))));
}

TEST_CASE("canonical frame can fail its own theory") {
  const ActionTheory t = testing::load("canonical_counter");
  const KripkeModel m = canonical_frame(t);
  CHECK(m.worlds() == std::set<Val>{0, 1});
  CHECK(m.successors(0, 1).empty());
  CHECK_FALSE(is_model_of(m, t));
  CHECK(violations(m, t.execs()[0]) == std::vector<Val>{1});
}

TEST_CASE("theory without effect laws has a total canonical relation") {
  const ActionTheory t = parse_theory("theory free\natoms p, q\nactions a\nstatic p | q\n");
  const KripkeModel m = canonical_frame(t);
  CHECK(m.worlds().size() == 3);
  CHECK(m.arrows().size() == 9);
}

TEST_CASE("canonical frame is maximal") {
  std::mt19937 rng(5);
  const Signature sig({"p", "q", "r"}, {"a", "b"});
  for (int i = 0; i < 50; ++i) {
    ActionTheory t("rand", sig);
    for (int k = 0; k < 5; ++k) t.add(oracle::random_law(rng, 3, 2));
    const KripkeModel m = canonical_frame(t);
    for (int a = 0; a < 2; ++a) {
      for (Val x : m.worlds()) {
        for (Val y : m.worlds()) {
          if (m.has_arrow(a, x, y)) continue;
          KripkeModel bigger = m;
          bigger.add_arrow(a, x, y);
          bool broken = false;
          for (const auto& e : t.effects_for(a)) broken = broken || !satisfies_law(bigger, e);
          CHECK(broken);
        }
      }
    }
  }
}

TEST_CASE("duplicate worlds are a no-op") {
  KripkeModel m({1, 2});
  m.add_world(1);
  CHECK(m.worlds().size() == 2);
  m.add_arrow(0, 1, 2);
  m.add_arrow(0, 1, 2);
  CHECK(m.arrows().size() == 1);
  m.remove_world(2);
  CHECK(m.arrows().empty());
}

TEST_CASE("closeness: reflexive, equal, incomparable and cardinality") {
  KripkeModel base({P1P2, P1N2, N1N2});
  base.add_arrow(0, P1P2, N1N2);
  base.add_arrow(0, P1N2, P1P2);
  base.add_arrow(0, P1N2, N1N2);
  KripkeModel one = base;
  one.remove_arrows_from(0, P1P2);
  KripkeModel two = base;
  two.remove_arrows_from(0, P1N2);

  const Comparator sub{Closeness::SubsetLex, base};
  const Comparator card{Closeness::CardinalityLex, base};
  CHECK(compare(sub, base, one) == Order::Closer);
  CHECK(compare(sub, one, one) == Order::Equal);
  CHECK(compare(sub, one, two) == Order::Incomparable);
  CHECK(compare(card, one, two) == Order::Closer);
  CHECK(compare(card, two, one) == Order::Farther);

  const auto sub_min = minimal_under({one, two}, sub);
  CHECK(sub_min.size() == 2);
  const auto card_min = minimal_under({one, two}, card);
  REQUIRE(card_min.size() == 1);
  CHECK(card_min[0] == one);
  CHECK(minimal_under({one}, sub) == std::vector<KripkeModel>{one});
}

TEST_CASE("a chain keeps only its least element") {
  const KripkeModel base({0, 1, 2, 3});
  KripkeModel a = base, b = base, c = base;
  b.add_world(4);
  c.add_world(4);
  c.add_world(5);
  a.add_arrow(0, 0, 1);
  const auto m = minimal_under({c, b, a}, Comparator{Closeness::SubsetLex, base});
  REQUIRE(m.size() == 1);
  CHECK(m[0] == a);
}

TEST_CASE("subset closeness is a preorder and matches the oracle") {
  std::mt19937 rng(9);
  for (int i = 0; i < 300; ++i) {
    const KripkeModel base = oracle::random_model(rng, 2, 4, 1, 0.4);
    const KripkeModel x = oracle::random_model(rng, 2, 4, 1, 0.4);
    const KripkeModel y = oracle::random_model(rng, 2, 4, 1, 0.4);
    const KripkeModel z = oracle::random_model(rng, 2, 4, 1, 0.4);
    const Comparator cmp{Closeness::SubsetLex, base};
    CHECK(compare(cmp, x, x) == Order::Equal);
    CHECK((compare(cmp, x, y) == Order::Closer) == oracle::strictly_closer(base, x, y));
    const auto le = [&](const KripkeModel& u, const KripkeModel& v) {
      const Order o = compare(cmp, u, v);
      return o == Order::Closer || o == Order::Equal;
    };
    if (le(x, y) && le(y, z)) CHECK(le(x, z));
  }
}

TEST_CASE("dot output lists every world and arrow") {
  const ActionTheory t = testing::load("coffee");
  const std::string dot = to_dot(canonical_frame(t), t.sig());
  CHECK(dot.rfind("digraph", 0) == 0);
  std::size_t arrows = 0;
  for (std::size_t p = dot.find("->"); p != std::string::npos; p = dot.find("->", p + 2)) ++arrows;
  CHECK(arrows == 3);
}
