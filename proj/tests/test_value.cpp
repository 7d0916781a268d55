#include <catch2/catch_amalgamated.hpp>

#include "lcsim/value.hpp"

using namespace lcsim;

TEST_CASE("label order is total and deterministic") {
  Value a = v_sym("a"), b = v_sym("b");
  CHECK(a < b);
  CHECK(v_num(-3) < v_num(2));
  CHECK(v_num(7) < a);  // kind rank: ints before symbols
  CHECK(a < v_tup({a}));
  CHECK(v_tup({a}) < v_set({a}));

  // Tuples: lexicographic, shorter prefix first.
  CHECK(v_tup({v_num(2)}) < v_tup({v_num(2), v_num(1)}));
  CHECK(v_tup({v_num(1), v_num(9)}) < v_tup({v_num(2)}));

  // Sets compare as sorted sequences regardless of construction order.
  Value s1 = v_set({b, a});
  Value s2 = v_set({a, b});
  CHECK(s1 == s2);
  CHECK(v_set({a}) < v_set({a, b}));
}

TEST_CASE("sets deduplicate and support membership") {
  Value s = v_set({v_num(1), v_num(1), v_num(2)});
  CHECK(s.size() == 2);
  CHECK(s.set_contains(v_num(2)));
  CHECK_FALSE(s.set_contains(v_num(3)));
  CHECK(s.set_insert(v_num(2)) == s);
  CHECK(s.set_insert(v_num(3)).size() == 3);
  CHECK(s.set_union(v_set({v_num(2), v_num(4)})).size() == 3);
}

TEST_CASE("text form round-trips") {
  Value v = v_tup({v_sym("pair"), v_num(-4),
                   v_set({v_tup({v_num(1), v_sym("x")}), v_num(0)}),
                   v_tup({})});
  std::string text = v.to_text();
  CHECK(Value::parse(text) == v);
  CHECK(Value::parse(text).to_text() == text);

  CHECK(Value::parse("(a 1 {2 3})").to_text() == "(a 1 {2 3})");
  CHECK(Value::parse("{3 2 2 1}").to_text() == "{1 2 3}");  // canonical set order
  CHECK(Value::parse("Non-Elect") == v_sym("Non-Elect"));
  CHECK(Value::parse("-17") == v_num(-17));
  CHECK_THROWS_AS(Value::parse("(unclosed"), Error);
  CHECK_THROWS_AS(Value::parse("a b"), Error);
}

TEST_CASE("hash shortcut never breaks equality") {
  // Structural equality must agree with compare() == 0 across shapes.
  std::vector<Value> pool{v_num(0), v_num(1), v_sym("e"), v_sym("f"),
                          v_tup({v_num(0)}), v_tup({v_num(0), v_num(0)}),
                          v_set({v_num(0)}), v_set({})};
  for (const auto& x : pool)
    for (const auto& y : pool) {
      CHECK((x == y) == (compare(x, y) == 0));
      CHECK((x < y) == (compare(x, y) < 0));
    }
}
