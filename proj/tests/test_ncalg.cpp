#include "doctest.h"
#include "qdiff/ncalg.hpp"

#include <random>

using namespace qdiff;

namespace {

const ScalarField Q = ScalarField::rational_q();

Presentation two_gen(const std::vector<std::string>& rel_strings = {}) {
  Presentation p;
  p.field = Q;
  p.add_generator("b");
  p.add_generator("t");
  for (const auto& s : rel_strings) p.add_relation(p.parse_poly(s));
  return p;
}

Presentation mq2() {
  Presentation p;
  p.field = Q;
  p.add_generator("a");
  p.add_generator("b");
  p.add_generator("c");
  p.add_generator("d");
  for (const char* s : {"b*a-q*a*b", "c*a-q*a*c", "d*b-q*b*d", "d*c-q*c*d",
                        "c*b-b*c", "a*d-d*a-(q^-1-q)*b*c"})
    p.add_relation(p.parse_poly(s));
  return p;
}

}  // namespace

TEST_CASE("free product is noncommutative and bilinear") {
  Presentation p = two_gen();
  NCPoly b = p.gen(0), t = p.gen(1), one = NCPoly::unit(Q);
  CHECK(nc_mul(b, t) == p.parse_poly("b*t"));
  CHECK(nc_mul(one + t, one - t) == p.parse_poly("1-t^2"));
  CHECK(nc_mul(b + t, b + t) == p.parse_poly("b^2+b*t+t*b+t^2"));
  CHECK(p.parse_poly("b*t") != p.parse_poly("t*b"));
}

TEST_CASE("slice of a free algebra on one generator") {
  Presentation p;
  p.field = Q;
  p.add_generator("t");
  auto [basis, rank] = slice_basis(p, 3);
  CHECK(rank == 0);
  REQUIRE(basis.size() == 4);
  CHECK(basis[0] == Word{});
  CHECK(basis[1] == Word{0});
  CHECK(basis[2] == Word{0, 0});
  CHECK(basis[3] == Word{0, 0, 0});
}

TEST_CASE("slice of the fermionic relations") {
  Presentation p = two_gen({"b^2", "b*t+t*b"});
  auto [basis, rank] = slice_basis(p, 2);
  CHECK(rank == 2);
  REQUIRE(basis.size() == 5);
  std::vector<std::string> names;
  for (const auto& w : basis) names.push_back(p.word_string(w));
  CHECK(names == std::vector<std::string>{"1", "b", "t", "b*t", "t^2"});
}

TEST_CASE("quantum matrix slice has the PBW dimension") {
  Presentation p = mq2();
  auto [basis, rank] = slice_basis(p, 2);
  CHECK(rank == 6);
  CHECK(basis.size() == 15);
}

TEST_CASE("reduce_mod_ideal normal forms") {
  Presentation p = two_gen({"b^2", "b*t+t*b"});
  CHECK(reduce_mod_ideal(p.parse_poly("b*t+t*b"), p, 2).is_zero());
  Presentation p2 = two_gen({"b*t+t*b"});
  CHECK(reduce_mod_ideal(p2.parse_poly("t*b"), p2, 2) == p2.parse_poly("-b*t"));
  Presentation m = mq2();
  CHECK(reduce_mod_ideal(m.parse_poly("a*d-d*a-(q^-1-q)*b*c"), m, 2).is_zero());
}

TEST_CASE("reduction is idempotent, linear, and kills padded relations") {
  Presentation p = two_gen({"b^2-t", "b*t+t*b"});
  Slice s(p, 4);
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-2, 2);
  auto random_poly = [&] {
    NCPoly out(Q);
    for (const Word& w : s.words())
      if (coef(rng) == 1) out.add_term(w, Scalar::integer(Q, coef(rng)));
    return out;
  };
  for (int trial = 0; trial < 10; ++trial) {
    NCPoly x = random_poly(), y = random_poly();
    CHECK(s.reduce(s.reduce(x)) == s.reduce(x));
    CHECK(s.reduce(x + y) == s.reduce(x) + s.reduce(y));
  }
  for (const NCPoly& r : p.relations) {
    CHECK(s.reduce(p.gen(0) * r).is_zero());
    CHECK(s.reduce(r * p.gen(1)).is_zero());
    CHECK(s.reduce(p.gen(1) * r * p.gen(0)).is_zero());
  }
}

TEST_CASE("quotient slice dimension shrinks as relations are added") {
  Presentation p = two_gen();
  size_t prev = slice_basis(p, 3).basis.size();
  for (const char* rel : {"b*t+t*b", "b^2"}) {
    p.add_relation(p.parse_poly(rel));
    size_t dim = slice_basis(p, 3).basis.size();
    CHECK(dim <= prev);
    prev = dim;
  }
}

TEST_CASE("commutative quotients match classical monomial counts") {
  auto binom = [](int n, int k) {
    long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
  };
  for (int n = 1; n <= 3; ++n) {
    Presentation p;
    p.field = Q;
    for (int i = 0; i < n; ++i) p.add_generator("x" + std::to_string(i));
    for (uint32_t i = 0; i < static_cast<uint32_t>(n); ++i)
      for (uint32_t j = i + 1; j < static_cast<uint32_t>(n); ++j)
        p.add_relation(p.gen(j) * p.gen(i) - p.gen(i) * p.gen(j));
    for (int L = 0; L <= 4; ++L) {
      size_t expect = 0;
      for (int d = 0; d <= L; ++d) expect += static_cast<size_t>(binom(n + d - 1, d));
      CHECK(slice_basis(p, L).basis.size() == expect);
    }
  }
}

TEST_CASE("tensor_reduce detects membership in I(x)F + F(x)I") {
  Presentation p = two_gen({"b^2", "b*t+t*b"});
  NCPoly r = p.parse_poly("b*t+t*b"), t = p.gen(1), b = p.gen(0);
  CHECK(tensor_reduce(TensorElement::of(r, t * t), p, p, 2).is_zero());
  CHECK(tensor_reduce(TensorElement::of(t, r), p, p, 2).is_zero());
  // coproduct of b*t + t*b for the fermionic M: Delta b = 1(x)b + b(x)t, Delta t = t(x)t
  TensorElement db = TensorElement::of(NCPoly::unit(Q), b) + TensorElement::of(b, t);
  TensorElement dt = TensorElement::of(t, t);
  CHECK(tensor_reduce(db * dt + dt * db, p, p, 2).is_zero());
  CHECK(tensor_reduce(TensorElement::of(t, t) - TensorElement::of(t, t), p, p, 2).is_zero());
  CHECK(!tensor_reduce(TensorElement::of(t, t), p, p, 2).is_zero());
}

TEST_CASE("determinism of slices") {
  Presentation p = mq2();
  Slice s1(p, 2), s2(p, 2);
  CHECK(s1.words() == s2.words());
  CHECK(s1.basis() == s2.basis());
  NCPoly x = p.parse_poly("d*a+q*c*b-2*a*d");
  CHECK(s1.reduce(x) == s2.reduce(x));
  CHECK(p.poly_string(s1.reduce(x)) == p.poly_string(s2.reduce(x)));
}

TEST_CASE("word cap fails loudly") {
  Presentation p = mq2();
  SliceOptions opt;
  opt.max_words = 10;
  CHECK_THROWS_AS(Slice(p, 3, opt), slice_limit_error);
}

TEST_CASE("weight overflow in reduce is an error") {
  Presentation p = two_gen({"b^2"});
  Slice s(p, 2);
  CHECK_THROWS_AS(s.reduce(p.parse_poly("b*t*b")), error);
}

TEST_CASE("substitution") {
  Presentation p = two_gen();
  NCPoly b = p.gen(0), t = p.gen(1);
  // b -> t*t, t -> t
  std::vector<NCPoly> images{t * t, t};
  CHECK((b * t - t * b).substitute(images) == t * t * t - t * t * t);
  CHECK((b + t).substitute(images) == t * t + t);
}

TEST_CASE("polynomial parse and print round trip") {
  Presentation p = mq2();
  for (const char* s : {"a*d - d*a + b*c", "1 - q*a^2", "(1+q)*b*c - 3*d",
                        "a*b*a*b", "q^2*a - a"}) {
    NCPoly poly = p.parse_poly(s);
    CHECK(p.parse_poly(p.poly_string(poly)) == poly);
  }
  CHECK(p.poly_string(p.parse_poly("0")) == "0");
  CHECK_THROWS_AS(p.parse_poly("a*z"), error);
  CHECK_THROWS_AS(p.parse_poly("a/(b)"), error);
}

TEST_CASE("weighted generators bound slices by weight") {
  Presentation p;
  p.field = Q;
  p.add_generator("u", 1);
  p.add_generator("v", 2);
  auto words = enumerate_words(p, 2);
  // 1, u, v, uu
  CHECK(words.size() == 4);
  CHECK(p.weight(Word{1}) == 2);
}
