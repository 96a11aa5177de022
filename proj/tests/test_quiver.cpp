#include <random>

#include "doctest.h"
#include "greenseq/greenseq.hpp"
#include "helpers.hpp"

using namespace greenseq;

TEST_CASE("quiver of the three-vertex worked example") {
  ExchangeMatrix B = square_matrix({{0, 2, -1}, {-2, 0, 1}, {1, -1, 0}});
  ValuedIceQuiver Q = to_quiver(B);
  REQUIRE(Q.arrows().size() == 3);
  const ValuedArrow* a12 = Q.arrow_between(1, 2);
  REQUIRE(a12 != nullptr);
  CHECK(a12->src == 1);
  CHECK(a12->v_fwd == 2);
  CHECK(a12->v_back == 2);
  CHECK(Q.arrow_between(3, 1)->src == 3);
  CHECK(Q.arrow_between(2, 3)->src == 2);
  CHECK(Q.arrow_between(3, 1)->simple());
}

TEST_CASE("quiver mutation matches the matrix route on the worked example") {
  ExchangeMatrix B = square_matrix({{0, 2, -1}, {-2, 0, 1}, {1, -1, 0}});
  ValuedIceQuiver Q = mutate_quiver(to_quiver(B), 3);
  CHECK(Q == to_quiver(B.mutate(3)));
  CHECK(Q.arrow_between(1, 2)->src == 1);
  CHECK(Q.arrow_between(1, 3)->src == 1);
  CHECK(Q.arrow_between(3, 2)->src == 3);
  for (const ValuedArrow& a : Q.arrows()) CHECK(a.simple());
}

TEST_CASE("encoding is a bijection on random principal parts") {
  std::mt19937_64 rng(31337);
  for (int iter = 0; iter < 500; ++iter) {
    int n = std::uniform_int_distribution<int>(1, 7)(rng);
    ExchangeMatrix B = testutil::random_principal(rng, n);
    CHECK(to_matrix(to_quiver(B)) == B);
  }
}

TEST_CASE("encoding round-trips through JSON and frozen rows") {
  ExchangeMatrix B = frame(testutil::chain_matrix(3)).bhat();
  ValuedIceQuiver Q = to_quiver(B);
  CHECK(to_matrix(Q) == B);
  CHECK(ValuedIceQuiver::from_json(Q.to_json()) == Q);
}

TEST_CASE("mutation transports along the encoding") {
  std::mt19937_64 rng(4242);
  for (int iter = 0; iter < 300; ++iter) {
    int n = std::uniform_int_distribution<int>(2, 6)(rng);
    ExchangeMatrix B = testutil::random_principal(rng, n);
    FramedState s = frame(B);
    ValuedIceQuiver Q = to_quiver(s.bhat());
    int len = std::uniform_int_distribution<int>(1, 6)(rng);
    for (int i = 0; i < len; ++i) {
      int k = std::uniform_int_distribution<int>(1, n)(rng);
      s = s.mutate(k);
      Q = mutate_quiver(Q, k);
      CHECK(Q == to_quiver(s.bhat()));
    }
    CHECK(to_matrix(Q) == s.bhat());
  }
}

TEST_CASE("mutated quivers never grow loops or opposite arrow pairs") {
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 200; ++iter) {
    int n = std::uniform_int_distribution<int>(2, 6)(rng);
    ValuedIceQuiver Q = to_quiver(testutil::random_principal(rng, n));
    for (int i = 0; i < 5; ++i) {
      Q = mutate_quiver(Q, std::uniform_int_distribution<int>(1, n)(rng));
    }
    for (std::size_t a = 0; a < Q.arrows().size(); ++a) {
      CHECK(Q.arrows()[a].src != Q.arrows()[a].dst);
      for (std::size_t b = a + 1; b < Q.arrows().size(); ++b) {
        bool same_pair =
            (Q.arrows()[a].src == Q.arrows()[b].dst &&
             Q.arrows()[a].dst == Q.arrows()[b].src) ||
            (Q.arrows()[a].src == Q.arrows()[b].src &&
             Q.arrows()[a].dst == Q.arrows()[b].dst);
        CHECK_FALSE(same_pair);
      }
    }
  }
}

TEST_CASE("quiver validation rejects malformed input") {
  CHECK_THROWS_AS(ValuedIceQuiver({1, 2}, {}, {{1, 1, 1, 1}}), InvalidQuiver);
  CHECK_THROWS_AS(ValuedIceQuiver({1, 2}, {}, {{1, 2, 1, 1}, {2, 1, 1, 1}}),
                  InvalidQuiver);
  CHECK_THROWS_AS(ValuedIceQuiver({1, 2}, {}, {{1, 2, 0, 1}}), InvalidQuiver);
  CHECK_THROWS_AS(ValuedIceQuiver({1, 3}, {}, {{1, 2, 1, 1}}), InvalidQuiver);
  CHECK_THROWS_AS(ValuedIceQuiver({1}, {2}, {{1, 2, 2, 1}}), InvalidQuiver);
}

TEST_CASE("frozen-frozen arrows are dropped, not rejected") {
  bool dropped = false;
  ValuedIceQuiver Q({1}, {2, 3}, {{2, 3, 1, 1}, {1, 2, 1, 1}}, &dropped);
  CHECK(dropped);
  CHECK(Q.arrows().size() == 1);
}

TEST_CASE("labels that admit no symmetrizer are rejected by to_matrix") {
  // b_12 = 1, b_21 = 2 would need a negative ratio
  std::vector<ValuedArrow> arrows{{1, 2, 1, -2}};
  CHECK_THROWS_AS(ValuedIceQuiver({1, 2}, {}, std::move(arrows)), InvalidQuiver);
}

TEST_CASE("quiver mutation at a frozen or unknown vertex throws") {
  ValuedIceQuiver Q = to_quiver(frame(testutil::chain_matrix(2)).bhat());
  CHECK_THROWS_AS(mutate_quiver(Q, primed(1)), FrozenMutation);
  CHECK_THROWS_AS(mutate_quiver(Q, 9), InvalidIndex);
}

TEST_CASE("truncation keeps one level plus its primed copies") {
  Layering eta({{1, 0}, {2, 0}, {3, 1}}, LayeringMode::ExchangeOnly);
  ValuedIceQuiver framed_q = to_quiver(frame(testutil::chain_matrix(3)).bhat());
  ValuedIceQuiver t0 = truncate(framed_q, eta, 0);
  CHECK(t0.ex() == std::vector<int>{1, 2});
  CHECK(t0.fr() == std::vector<int>{primed(1), primed(2)});
  // chain arrow 2 -> 1 plus the two framing arrows
  CHECK(t0.arrows().size() == 3);
  ValuedIceQuiver t1 = truncate(framed_q, eta, 1);
  CHECK(t1.ex() == std::vector<int>{3});
  CHECK(t1.arrows().size() == 1);
  CHECK_THROWS_AS(truncate(framed_q, eta, 7), UnknownLevel);
}

TEST_CASE("DOT export is deterministic and marks structure") {
  ValuedIceQuiver Q = to_quiver(frame(testutil::chain_matrix(2)).bhat());
  std::string a = export_dot(Q), b = export_dot(Q);
  CHECK(a == b);
  CHECK(a.find("v1 [label=\"1\", shape=circle]") != std::string::npos);
  CHECK(a.find("v1p [label=\"1'\", shape=box]") != std::string::npos);
  CHECK(a.find("v1 -> v1p") != std::string::npos);
  CHECK(a.find("v2 -> v1") != std::string::npos);

  Layering eta({{1, 0}, {2, 1}}, LayeringMode::ExchangeOnly);
  std::string c = export_dot(Q, eta);
  CHECK(c.find("rank=same") != std::string::npos);

  ValuedIceQuiver V({1, 2}, {}, {{1, 2, 2, 1}});
  CHECK(export_dot(V).find("label=\"(2,1)\"") != std::string::npos);
}

TEST_CASE("quiver JSON rejects malformed documents") {
  CHECK_THROWS_AS(ValuedIceQuiver::from_json(nlohmann::json{{"ex", {1}}}),
                  ParseError);
  nlohmann::json bad{{"ex", {1, 2}},
                     {"arrows", {{{"src", 1}, {"dst", 2}, {"v", {1}}}}}};
  CHECK_THROWS_AS(ValuedIceQuiver::from_json(bad), ParseError);
}
