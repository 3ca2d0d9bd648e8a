#include "doctest.h"
#include "qdiff/graded.hpp"

#include <random>

using namespace qdiff;

namespace {

const ScalarField Q = ScalarField::rational_q();
const Scalar qs = Scalar::q(Q);

Presentation free_gens(const std::vector<std::string>& names) {
  Presentation p;
  p.field = Q;
  for (const auto& n : names) p.add_generator(n);
  return p;
}

}  // namespace

TEST_CASE("convolution of delta sequences") {
  Presentation p = free_gens({"u", "v"});
  IndexedSequence s, t;
  s[{1, 0}] = p.gen(0);
  t[{0, 1}] = p.gen(1);
  IndexedSequence st = convolve(s, t, 3);
  REQUIRE(st.size() == 1);
  CHECK(st.at({1, 1}) == p.gen(0) * p.gen(1));
}

TEST_CASE("E*E spells out the projector convolution rows") {
  // sequence of abstract E_i on the line; (E*E)_i = sum_{m+n=i} E_m E_n
  Presentation p = free_gens({"E0", "E1", "E2"});
  IndexedSequence e;
  for (int i = 0; i <= 2; ++i) e[{i, 0}] = p.gen(static_cast<uint32_t>(i));
  IndexedSequence ee = convolve(e, e, 2);
  CHECK(ee.at({0, 0}) == p.gen(0) * p.gen(0));
  CHECK(ee.at({1, 0}) == p.gen(0) * p.gen(1) + p.gen(1) * p.gen(0));
  CHECK(ee.at({2, 0}) ==
        p.gen(0) * p.gen(2) + p.gen(1) * p.gen(1) + p.gen(2) * p.gen(0));
}

TEST_CASE("q-convolution expansion and the q = 1 degeneration") {
  Presentation p = free_gens({"u", "v", "w", "z"});
  IndexedSequence s, t;
  s[{1, 0}] = p.gen(0);
  s[{0, 1}] = p.gen(1);
  t[{1, 0}] = p.gen(2);
  t[{0, 1}] = p.gen(3);
  IndexedSequence st = q_convolve(s, t, qs, 2);
  // (s *_q t)_(1,1) = s_(1,0) t_(0,1) + q s_(0,1) t_(1,0)
  CHECK(st.at({1, 1}) == p.gen(0) * p.gen(3) + (p.gen(1) * p.gen(2)) * qs);

  std::mt19937 rng(3);
  std::uniform_int_distribution<int> coin(0, 2);
  for (int trial = 0; trial < 5; ++trial) {
    IndexedSequence a, b;
    for (int d = 0; d <= 2; ++d)
      for (int x = 0; x <= d; ++x) {
        if (coin(rng)) a[{x, d - x}] = p.gen(static_cast<uint32_t>(coin(rng)));
        if (coin(rng)) b[{x, d - x}] = p.gen(static_cast<uint32_t>(coin(rng)));
      }
    CHECK(q_convolve(a, b, Scalar::one(Q), 2) == convolve(a, b, 2));
  }
}

TEST_CASE("q-convolution is associative (exhaustive deltas, D <= 3)") {
  Presentation p = free_gens({"u", "v", "w"});
  std::vector<MultiIndex> idx;
  for (int d = 0; d <= 3; ++d)
    for (int a = d; a >= 0; --a) idx.push_back({a, d - a});
  for (const auto& i1 : idx)
    for (const auto& i2 : idx)
      for (const auto& i3 : idx) {
        IndexedSequence r, s, t;
        r[i1] = p.gen(0);
        s[i2] = p.gen(1);
        t[i3] = p.gen(2);
        CHECK(q_convolve(q_convolve(r, s, qs, 3), t, qs, 3) ==
              q_convolve(r, q_convolve(s, t, qs, 3), qs, 3));
      }
}

TEST_CASE("comeasuring of the line at truncation") {
  TruncatedGradedPresentation tg = build_M0_line(Q, 4);
  CHECK(tg.pres.base.relations.empty());
  auto t = [&](int i) { return tg.pres.base.gen(tg.t_gen.at({i, 0})); };
  CHECK(tg.derived_at({3, 0}, {2, 0}) == t(1) * t(2) + t(2) * t(1));
  CHECK(tg.derived_at({1, 0}, {2, 0}).is_zero());  // t^i_j = 0 for j > i
  CHECK(tg.derived_at({2, 0}, {2, 0}) == t(1) * t(1));
  CHECK(tg.pres.coproduct[tg.t_gen.at({2, 0})] ==
        TensorElement::of(t(2), t(1)) + TensorElement::of(t(1) * t(1), t(2)));
  CHECK(verify_bialgebra(tg.pres, 4).pass());
  CHECK(qplane_coaction_check(tg).pass());
}

TEST_CASE("quantum plane M0 relations at low degree") {
  TruncatedGradedPresentation tg = build_M0_qplane(qs, 2);
  const Presentation& P = tg.pres.base;
  // degree-1 generator block in the (qmatst) layout
  NCPoly a = P.gen(tg.s_gen.at({1, 0})), b = P.gen(tg.t_gen.at({1, 0}));
  NCPoly c = P.gen(tg.s_gen.at({0, 1})), d = P.gen(tg.t_gen.at({0, 1}));
  CHECK(tg.derived_at({1, 0}, {1, 0}) == a);
  CHECK(tg.derived_at({0, 1}, {0, 1}) == d);
  CHECK(tg.derived_at({1, 0}, {1, 1}).is_zero());  // 0 unless i+j >= k+l

  // the degree-2 targets give exactly dc = qcd, ba = qab, ad-da = q^-1 bc - q cb
  std::vector<NCPoly> deg2;
  for (const NCPoly& r : P.relations) {
    bool block_only = true;
    for (const auto& [w, cc] : r.terms())
      for (uint32_t g : w)
        if (P.generators[g].weight != 1) block_only = false;
    if (block_only && P.weight(r) == 2) deg2.push_back(r);
  }
  CHECK(deg2.size() == 3);
  Presentation gold;
  gold.field = Q;
  gold.generators = P.generators;
  gold.add_relation(d * c - (c * d) * qs);
  gold.add_relation(b * a - (a * b) * qs);
  gold.add_relation(a * d - d * a - (b * c) * qs.inverse() + (c * b) * qs);
  Slice sg(gold, 2);
  for (const NCPoly& r : deg2) CHECK(sg.reduce(r).is_zero());
  Presentation built;
  built.field = Q;
  built.generators = P.generators;
  built.relations = deg2;
  Slice sb(built, 2);
  for (const NCPoly& r : gold.relations) CHECK(sb.reduce(r).is_zero());

  CHECK(verify_bialgebra(tg.pres, 3).pass());
  CHECK(qplane_coaction_check(tg).pass());
}

TEST_CASE("quantum plane M0 at D = 1 is free on a,b,c,d modulo the three relations") {
  TruncatedGradedPresentation tg = build_M0_qplane(qs, 1);
  CHECK(tg.pres.base.generators.size() == 4);
  CHECK(tg.pres.base.relations.size() == 3);
}

TEST_CASE("M variant of the quantum plane restricted to M0 indices") {
  TruncatedGradedPresentation tg = build_M_qplane(qs, 2);
  const Presentation& P = tg.pres.base;
  CHECK(tg.coproduct_formal);
  std::vector<NCPoly> kill(P.generators.size(), NCPoly(Q));
  for (uint32_t g = 0; g < P.generators.size(); ++g) kill[g] = P.gen(g);
  kill[tg.s_gen.at({0, 0})] = NCPoly(Q);
  kill[tg.t_gen.at({0, 0})] = NCPoly(Q);
  NCPoly a = P.gen(tg.s_gen.at({1, 0})), b = P.gen(tg.t_gen.at({1, 0}));
  NCPoly c = P.gen(tg.s_gen.at({0, 1})), d = P.gen(tg.t_gen.at({0, 1}));
  // restricted (2,0), (0,2) and (1,1) relations
  NCPoly r20, r02, r11;
  for (const NCPoly& r : P.relations) {
    NCPoly res = r.substitute(kill);
    if (res.is_zero()) continue;
    if (res.coeff(Word{tg.t_gen.at({1, 0}), tg.s_gen.at({1, 0})}) != Scalar::zero(Q)) r20 = res;
    if (res.coeff(Word{tg.t_gen.at({0, 1}), tg.s_gen.at({0, 1})}) != Scalar::zero(Q)) r02 = res;
    if (res.coeff(Word{tg.t_gen.at({0, 1}), tg.s_gen.at({1, 0})}) != Scalar::zero(Q)) r11 = res;
  }
  CHECK(!r20.is_zero());
  CHECK(r20 * r20.coeff(Word{tg.t_gen.at({1, 0}), tg.s_gen.at({1, 0})}).inverse() ==
        b * a - (a * b) * qs);
  CHECK(r02 * r02.coeff(Word{tg.t_gen.at({0, 1}), tg.s_gen.at({0, 1})}).inverse() ==
        d * c - (c * d) * qs);
  NCPoly expect11 = a * d - d * a - (b * c) * qs.inverse() + (c * b) * qs;
  CHECK(r11 == expect11 * (-qs));
}

TEST_CASE("q = 1 plane relations are symmetric convolution differences") {
  TruncatedGradedPresentation tg = build_M_qplane(Scalar::one(Q), 2);
  const Presentation& P = tg.pres.base;
  // swapping s and t negates every relation at q = 1
  std::vector<NCPoly> swap(P.generators.size(), NCPoly(Q));
  for (const auto& [m, id] : tg.s_gen) swap[id] = P.gen(tg.t_gen.at(m));
  for (const auto& [m, id] : tg.t_gen) swap[id] = P.gen(tg.s_gen.at(m));
  for (const NCPoly& r : P.relations) CHECK(r.substitute(swap) == -r);
}

TEST_CASE("truncation coherence for the quantum plane") {
  TruncatedGradedPresentation t2 = build_M0_qplane(qs, 2);
  TruncatedGradedPresentation t3 = build_M0_qplane(qs, 3);
  // remap D=2 generators into the D=3 presentation by name
  std::vector<NCPoly> remap(t2.pres.base.generators.size(), NCPoly(Q));
  for (uint32_t g = 0; g < t2.pres.base.generators.size(); ++g)
    remap[g] = t3.pres.base.gen(*t3.pres.base.find_generator(t2.pres.base.generators[g].name));
  for (const NCPoly& r : t2.pres.base.relations) {
    bool found = false;
    NCPoly image = r.substitute(remap);
    for (const NCPoly& r3 : t3.pres.base.relations)
      if (r3 == image) found = true;
    CHECK(found);
  }
  for (const auto& [key, v] : t2.derived) {
    CHECK(t3.derived_at(key.first, key.second) == v.substitute(remap));
  }
  // every relation is homogeneous in source degree
  for (const NCPoly& r : t3.pres.base.relations) {
    int w = -1;
    for (const auto& [word, c] : r.terms()) {
      int tw = t3.pres.base.weight(word);
      if (w < 0) w = tw;
      CHECK(w == tw);
    }
  }
}

TEST_CASE("coaddition tensor is coassociative at D <= 3") {
  for (int D = 1; D <= 3; ++D) {
    std::vector<MultiIndex> labels;
    for (int d = 0; d <= D; ++d)
      for (int a = d; a >= 0; --a) labels.push_back({a, d - a});
    CoalgebraSpec cd = coaddition_tensor(qs, labels);
    size_t n = labels.size();
    for (size_t i = 0; i < n; ++i)
      for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
          for (size_t c = 0; c < n; ++c) {
            Scalar lhs = Scalar::zero(Q), rhs = Scalar::zero(Q);
            for (size_t m = 0; m < n; ++m) {
              lhs += cd.get(i, m, c, Q) * cd.get(m, a, b, Q);
              rhs += cd.get(i, a, m, Q) * cd.get(m, b, c, Q);
            }
            CHECK(lhs == rhs);
          }
  }
}

TEST_CASE("M_q(2) from the coaddition quotient") {
  BialgebraPresentation mq2 = build_Mq2(qs);
  REQUIRE(mq2.base.generators.size() == 4);
  auto [basis, rank] = slice_basis(mq2.base, 2);
  CHECK(rank == 6);
  CHECK(basis.size() == 15);

  Presentation gold;
  gold.field = Q;
  gold.generators = mq2.base.generators;
  for (const char* s : {"b*a-q*a*b", "c*a-q*a*c", "d*b-q*b*d", "d*c-q*c*d",
                        "c*b-b*c", "a*d-d*a-(q^-1-q)*b*c"})
    gold.add_relation(gold.parse_poly(s));
  CHECK(compare_ideals(mq2.base, gold, 2).equal);
  CHECK(verify_bialgebra(mq2, 3).pass());
  CHECK(mq2_coaction_check(mq2, qs).pass());

  CHECK_THROWS_AS(build_Mq2(Scalar::q(ScalarField::cyclotomic(3))), error);
}

TEST_CASE("grading of the coaddition quotient at D = 3") {
  TruncatedGradedPresentation tg = build_M0_qplane(qs, 3);
  CoalgebraSpec d = coaddition_tensor(qs, tg.labels);
  BialgebraPresentation quot = quotient_coproduct_preserving(tg.pres, d);
  Slice s(quot.base, 3);
  // t^(i,j)_(k,l) = 0 in the quotient unless i+j = k+l
  for (const auto& [key, v] : tg.derived) {
    if (key.first.degree() == key.second.degree()) continue;
    if (quot.base.weight(v) > 3) continue;
    CHECK(s.reduce(v).is_zero());
  }
}

TEST_CASE("M_q(2) at q = 1 degenerates to the commutative bialgebra") {
  ScalarField R = ScalarField::rationals();
  BialgebraPresentation m = build_Mq2(Scalar::one(R));
  Presentation gold;
  gold.field = R;
  gold.generators = m.base.generators;
  const char* names = "abcd";
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      std::string x(1, names[i]), y(1, names[j]);
      gold.add_relation(gold.parse_poly(y + "*" + x + "-" + x + "*" + y));
    }
  CHECK(compare_ideals(m.base, gold, 2).equal);
}
