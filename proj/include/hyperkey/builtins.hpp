#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperkey/hypergraph.hpp"
#include "hyperkey/scheme.hpp"

namespace hyperkey {

// Bundled reference sources and discussion schemes used by the CLI and the
// test suites. Names are part of the CLI surface.

inline Hypergraph builtin_source(const std::string& name) {
  auto unit = [](std::string label, std::vector<int> verts) {
    return RawEdge{std::move(label), std::move(verts), Rational(1)};
  };
  if (name == "example_3_1") {
    return Hypergraph::validate(
        3, {unit("a", {1, 2}), unit("b", {2, 3}), unit("c", {2, 3})});
  }
  if (name == "triangle") {
    return Hypergraph::validate(
        3, {unit("a", {1, 2}), unit("b", {2, 3}), unit("c", {1, 3})});
  }
  if (name == "receptacle") {
    return Hypergraph::validate(5, {unit("a", {1, 2, 3}), unit("b", {1, 3, 4}),
                                    unit("c", {1, 2, 4}), unit("d", {1, 5})});
  }
  if (name == "scoop") {
    return Hypergraph::validate(5, {unit("a", {1, 2, 3}), unit("b", {1, 3, 4}),
                                    unit("c", {1, 2, 4}), unit("d", {2, 5})});
  }
  if (name.rfind("complete_pin_", 0) == 0) {
    int m = 0;
    try {
      m = std::stoi(name.substr(13));
    } catch (...) {
      throw std::invalid_argument("unknown builtin source '" + name + "'");
    }
    if (m < 3 || m > kMaxVertices)
      throw std::invalid_argument("complete_pin_<m> needs 3 <= m <= 30");
    std::vector<RawEdge> edges;
    for (int i = 1; i <= m; ++i)
      for (int j = i + 1; j <= m; ++j)
        edges.push_back(unit("e" + std::to_string(i) + "_" + std::to_string(j),
                             {i, j}));
    return Hypergraph::validate(m, edges);
  }
  throw std::invalid_argument("unknown builtin source '" + name + "'");
}

struct BuiltinExample {
  std::string name;
  Hypergraph source;
  LinearScheme scheme;
  SchemeVerdict expected;
};

namespace detail {

inline SchemeVerdict expect_verified(long key_bits, long discussion_bits, int n) {
  SchemeVerdict v;
  v.recoverable = true;
  v.secret = true;
  v.key_bits = key_bits;
  v.discussion_bits = discussion_bits;
  v.key_rate = Rational(key_bits, n);
  v.discussion_rate = Rational(discussion_bits, n);
  return v;
}

}  // namespace detail

// The three hand-specified schemes; each verifies as recoverable and secret.
inline std::vector<BuiltinExample> builtin_examples() {
  std::vector<BuiltinExample> out;
  {
    // one user-2 broadcast turns the pairwise bit 'a' into a shared key
    Hypergraph hg = builtin_source("example_3_1");
    BitSource src = BitSource::create(hg, 1);
    std::vector<MessageSpec> messages{
        MessageSpec{2, {Term{0, 0, 0}, Term{1, 0, 0}}}};  // a + b
    std::vector<std::vector<Term>> keys{{Term{0, 0, 0}}};  // a
    out.push_back(BuiltinExample{"example_3_1", hg,
                                 LinearScheme::build(src, messages, keys),
                                 detail::expect_verified(1, 1, 1)});
  }
  {
    // user 1 reveals three XORs over two time units; both 'd' bits stay secret
    Hypergraph hg = builtin_source("receptacle");
    BitSource src = BitSource::create(hg, 2);
    std::vector<MessageSpec> messages{
        MessageSpec{1, {Term{0, 0, 0}, Term{3, 0, 0}}},                // a1 + d1
        MessageSpec{1, {Term{2, 0, 0}, Term{3, 0, 1}}},                // c1 + d2
        MessageSpec{1, {Term{0, 0, 0}, Term{1, 0, 0}, Term{3, 0, 1}}}  // a1+b1+d2
    };
    std::vector<std::vector<Term>> keys{{Term{3, 0, 0}}, {Term{3, 0, 1}}};
    out.push_back(BuiltinExample{"example_4_5", hg,
                                 LinearScheme::build(src, messages, keys),
                                 detail::expect_verified(2, 3, 2)});
  }
  {
    // users 1 and 2 split the discussion; both 'd' bits become the key
    Hypergraph hg = builtin_source("scoop");
    BitSource src = BitSource::create(hg, 2);
    std::vector<MessageSpec> messages{
        MessageSpec{1, {Term{0, 0, 0}, Term{1, 0, 0}, Term{2, 0, 0}}},  // a1+b1+c1
        MessageSpec{2, {Term{0, 0, 0}, Term{3, 0, 1}}},                 // a1 + d2
        MessageSpec{2, {Term{2, 0, 0}, Term{3, 0, 0}}}                  // c1 + d1
    };
    std::vector<std::vector<Term>> keys{{Term{3, 0, 0}}, {Term{3, 0, 1}}};
    out.push_back(BuiltinExample{"example_4_8", hg,
                                 LinearScheme::build(src, messages, keys),
                                 detail::expect_verified(2, 3, 2)});
  }
  return out;
}

inline BuiltinExample builtin_example(const std::string& name) {
  for (BuiltinExample& ex : builtin_examples())
    if (ex.name == name) return ex;
  throw std::invalid_argument("unknown builtin example '" + name + "'");
}

}  // namespace hyperkey
