#pragma once

#include <string>
#include <vector>

#include "umbral/workspace.hpp"

namespace corpus {

/// a, b, g with every moment nonzero (so a^.-1 exists) and a_1 != 0.
inline umbral::Workspace workspace() {
  using umbral::Poly;
  umbral::Workspace ws(6, {"x", "y"});
  ws.define_umbra("a", {Poly(1), Poly(2), Poly::parse("3/2"), Poly(-1), Poly(4), Poly::parse("1/2"), Poly(5)});
  ws.define_umbra("b", {Poly(1), Poly(-1), Poly(2), Poly(1), Poly(3), Poly(1), Poly(-2)});
  ws.define_umbra("g", {Poly(1), Poly::parse("1/2"), Poly(1), Poly(-3), Poly(2), Poly(1), Poly(1)});
  return ws;
}

/// Expressions written the way the identities are displayed.
inline const std::vector<std::string>& expressions() {
  static const std::vector<std::string> list{
      "E[(3.u)^2]",
      "E[(bell)^3]",
      "E[(a + 2.b)^3]",
      "a + a'",
      "3.a",
      "(x + y).a",
      "x.a + y.a'",
      "x.(y.a)",
      "(x*y).a",
      "2.(a + b)",
      "2.a + 2.b",
      "(a + b).g",
      "a.g + b.g'",
      "g.(a + b)",
      "a + inv(a)",
      "2.a - 2.a'",
      "(-2).a",
      "a^.3",
      "a^.-1",
      "(a^.2)^.3",
      "x.bell",
      "bell(x)",
      "bell.a",
      "part(a)",
      "part(a, x)",
      "x.bell.a",
      "(x + y).bell.a",
      "x.bell.a + y.bell.a'",
      "comp(g, a)",
      "g.(bell.a)",
      "(g.bell).a",
      "bar(a)",
      "a*(a - 2.g)^2",
      "E[(bell + u)^3]",
      "E[x*(x.bell + u)^3]",
      "E[a'*(bell.a + a')^3]",
      "inv(inv(a))",
      "(1/2).a + x*b",
  };
  return list;
}

struct Pair {
  std::string lhs;
  std::string rhs;
};

/// Sides of displayed identities; each pair must be similar.
inline const std::vector<Pair>& similar_pairs() {
  static const std::vector<Pair> list{
      {"(x + y).a", "x.a + y.a'"},
      {"x.(y.a)", "(x*y).a"},
      {"2.(a + b)", "2.a + 2.b"},
      {"(a + b).g", "a.g + b.g'"},
      {"a + inv(a)", "eps"},
      {"2.a - 2.a'", "eps"},
      {"(-2).a", "2.inv(a)"},
      {"(a^.2)^.3", "a^.6"},
      {"x.bell", "bell(x)"},
      {"bell.a", "part(a)"},
      {"part(a, x)", "x.bell.a"},
      {"(x + y).bell.a", "x.bell.a + y.bell.a'"},
      {"comp(g, a)", "g.(bell.a)"},
      {"g.(bell.a)", "(g.bell).a"},
      {"part(u)", "bell"},
      {"bell.u", "bell"},
      {"0.a", "eps"},
      {"a^.0", "u"},
      {"inv(inv(a))", "a"},
      {"E[bell^4]", "E[(bell + u)^3]"},
      {"E[(x.bell)^4]", "E[x*(x.bell + u)^3]"},
      {"E[(bell.a)^4]", "E[a'*(bell.a + a')^3]"},
  };
  return list;
}

}  // namespace corpus
