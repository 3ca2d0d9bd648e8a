#include "qdiff/graded.hpp"

#include <algorithm>

namespace qdiff {

namespace {

std::vector<MultiIndex> window_labels(int D, bool line_only) {
  std::vector<MultiIndex> out;
  for (int d = 0; d <= D; ++d) {
    if (line_only) {
      out.push_back({d, 0});
    } else {
      for (int a = d; a >= 0; --a) out.push_back({a, d - a});
    }
  }
  return out;
}

IndexedSequence delta_seq(const MultiIndex& at, const NCPoly& v) {
  IndexedSequence s;
  if (!v.is_zero()) s.emplace(at, v);
  return s;
}

}  // namespace

IndexedSequence convolve(const IndexedSequence& s, const IndexedSequence& t, int D) {
  IndexedSequence out;
  for (const auto& [i1, v1] : s)
    for (const auto& [i2, v2] : t) {
      MultiIndex sum = i1 + i2;
      if (sum.degree() > D) continue;
      auto it = out.find(sum);
      if (it == out.end()) {
        out.emplace(sum, v1 * v2);
      } else {
        it->second += v1 * v2;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  return out;
}

IndexedSequence q_convolve(const IndexedSequence& s, const IndexedSequence& t,
                           const Scalar& q, int D) {
  IndexedSequence out;
  for (const auto& [i1, v1] : s)
    for (const auto& [i2, v2] : t) {
      MultiIndex sum = i1 + i2;
      if (sum.degree() > D) continue;
      NCPoly term = (v1 * v2) * q.pow(static_cast<long>(i1.b) * i2.a);
      auto it = out.find(sum);
      if (it == out.end()) {
        if (!term.is_zero()) out.emplace(sum, std::move(term));
      } else {
        it->second += term;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  return out;
}

NCPoly TruncatedGradedPresentation::derived_at(const MultiIndex& row,
                                               const MultiIndex& col) const {
  auto it = derived.find({row, col});
  return it == derived.end() ? NCPoly(pres.base.field) : it->second;
}

size_t TruncatedGradedPresentation::label_pos(const MultiIndex& m) const {
  for (size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == m) return i;
  throw error("label out of window: " + m.str());
}

TruncatedGradedPresentation build_M0_line(ScalarField f, int D) {
  if (D < 1) throw error("truncation must be >= 1");
  TruncatedGradedPresentation tg;
  tg.D = D;
  tg.q = Scalar::one(f);
  tg.labels = window_labels(D, true);
  tg.pres.variant = Variant::M0;
  tg.pres.label = "line:" + std::to_string(D);
  tg.pres.base.field = f;
  for (int i = 1; i <= D; ++i)
    tg.t_gen[{i, 0}] = tg.pres.base.add_generator(
        "t" + std::to_string(i), static_cast<uint32_t>(i), "t_" + std::to_string(i));

  // t^i_j = (t * ... * t)_i, j-fold
  IndexedSequence tseq;
  for (int i = 1; i <= D; ++i) tseq.emplace(MultiIndex{i, 0}, tg.pres.base.gen(tg.t_gen[{i, 0}]));
  tg.derived[{MultiIndex{0, 0}, MultiIndex{0, 0}}] = NCPoly::unit(f);
  IndexedSequence power = delta_seq({0, 0}, NCPoly::unit(f));
  for (int j = 1; j <= D; ++j) {
    power = convolve(power, tseq, D);
    for (const auto& [idx, v] : power) tg.derived[{idx, MultiIndex{j, 0}}] = v;
  }

  size_t gc = tg.pres.base.generators.size();
  tg.pres.coproduct.assign(gc, TensorElement(f));
  tg.pres.counit.assign(gc, Scalar::zero(f));
  for (int i = 1; i <= D; ++i) {
    TensorElement d(f);
    for (int j = 1; j <= i; ++j)
      d += TensorElement::of(tg.derived_at({i, 0}, {j, 0}), tg.pres.base.gen(tg.t_gen[{j, 0}]));
    tg.pres.coproduct[tg.t_gen[{i, 0}]] = d;
    tg.pres.counit[tg.t_gen[{i, 0}]] = i == 1 ? Scalar::one(f) : Scalar::zero(f);
  }

  size_t n = tg.labels.size();
  tg.pres.coaction.emplace(n, std::vector<NCPoly>(n, NCPoly(f)));
  tg.pres.gen_matrix.assign(n, std::vector<NCPoly>(n, NCPoly(f)));
  for (size_t a = 0; a < n; ++a)
    for (size_t j = 0; j < n; ++j) {
      NCPoly v = tg.derived_at(tg.labels[a], tg.labels[j]);
      (*tg.pres.coaction)[a][j] = v;
      tg.pres.gen_matrix[a][j] = v;
    }
  return tg;
}

namespace {

TruncatedGradedPresentation build_qplane(const Scalar& q, int D, bool with_zero_level) {
  if (D < 1) throw error("truncation must be >= 1");
  if (q.is_zero()) throw error("the quantum plane needs q != 0");
  ScalarField f = q.field();
  TruncatedGradedPresentation tg;
  tg.D = D;
  tg.q = q;
  tg.labels = window_labels(D, false);
  tg.coproduct_formal = with_zero_level;
  tg.pres.variant = with_zero_level ? Variant::M : Variant::M0;
  tg.pres.label = std::string(with_zero_level ? "qplane:M:" : "qplane:M0:") + std::to_string(D);
  tg.pres.base.field = f;

  for (const MultiIndex& m : tg.labels) {
    if (m.degree() == 0 && !with_zero_level) continue;
    uint32_t w = static_cast<uint32_t>(std::max(1, m.degree()));
    std::string suffix = std::to_string(m.a) + "_" + std::to_string(m.b);
    tg.s_gen[m] = tg.pres.base.add_generator("s_" + suffix, w, "s_" + m.str());
    tg.t_gen[m] = tg.pres.base.add_generator("t_" + suffix, w, "t_" + m.str());
  }

  IndexedSequence sseq, tseq;
  for (const auto& [m, id] : tg.s_gen) sseq.emplace(m, tg.pres.base.gen(id));
  for (const auto& [m, id] : tg.t_gen) tseq.emplace(m, tg.pres.base.gen(id));

  // relations: q (s *_q t)_(i,j) = (t *_q s)_(i,j), emitted for every target
  // whose terms all stay inside the window (one degree beyond D when the
  // (0,0) level is absent, with no term dropped)
  int rel_bound = with_zero_level ? D : D + 1;
  IndexedSequence st = q_convolve(sseq, tseq, q, rel_bound);
  IndexedSequence ts = q_convolve(tseq, sseq, q, rel_bound);
  for (const MultiIndex& m : window_labels(rel_bound, false)) {
    NCPoly r(f);
    auto it = st.find(m);
    if (it != st.end()) r += it->second * q;
    it = ts.find(m);
    if (it != ts.end()) r -= it->second;
    tg.pres.base.add_relation(r);
  }
  tg.pres.base.canonicalize_relations();

  // derived table: t^(i,j)_(k,l) = (s^{*k} *_q t^{*l})_(i,j)
  std::vector<IndexedSequence> spow{delta_seq({0, 0}, NCPoly::unit(f))};
  std::vector<IndexedSequence> tpow{delta_seq({0, 0}, NCPoly::unit(f))};
  for (int k = 1; k <= D; ++k) {
    spow.push_back(q_convolve(spow.back(), sseq, q, D));
    tpow.push_back(q_convolve(tpow.back(), tseq, q, D));
  }
  for (const MultiIndex& col : tg.labels) {
    IndexedSequence table = q_convolve(spow[static_cast<size_t>(col.a)],
                                       tpow[static_cast<size_t>(col.b)], q, D);
    for (const auto& [row, v] : table) tg.derived[{row, col}] = v;
  }

  size_t gc = tg.pres.base.generators.size();
  tg.pres.coproduct.assign(gc, TensorElement(f));
  tg.pres.counit.assign(gc, Scalar::zero(f));
  for (const auto& [m, id] : tg.s_gen)
    tg.pres.counit[id] = (m == MultiIndex{1, 0}) ? Scalar::one(f) : Scalar::zero(f);
  for (const auto& [m, id] : tg.t_gen)
    tg.pres.counit[id] = (m == MultiIndex{0, 1}) ? Scalar::one(f) : Scalar::zero(f);
  if (!with_zero_level) {
    // Delta s_(i,j) = sum_(a,b) t^(i,j)_(a,b) (x) s_(a,b), a finite sum here
    for (const auto& [m, id] : tg.s_gen) {
      TensorElement d(f);
      for (const auto& [ab, sid] : tg.s_gen)
        d += TensorElement::of(tg.derived_at(m, ab), tg.pres.base.gen(sid));
      tg.pres.coproduct[id] = d;
    }
    for (const auto& [m, id] : tg.t_gen) {
      TensorElement d(f);
      for (const auto& [ab, tid] : tg.t_gen)
        d += TensorElement::of(tg.derived_at(m, ab), tg.pres.base.gen(tid));
      tg.pres.coproduct[id] = d;
    }
  }

  size_t n = tg.labels.size();
  tg.pres.coaction.emplace(n, std::vector<NCPoly>(n, NCPoly(f)));
  tg.pres.gen_matrix.assign(n, std::vector<NCPoly>(n, NCPoly(f)));
  for (size_t a = 0; a < n; ++a)
    for (size_t j = 0; j < n; ++j) {
      NCPoly v = tg.derived_at(tg.labels[a], tg.labels[j]);
      (*tg.pres.coaction)[a][j] = v;
      tg.pres.gen_matrix[a][j] = v;
    }
  return tg;
}

}  // namespace

TruncatedGradedPresentation build_M_qplane(const Scalar& q, int D) {
  return build_qplane(q, D, true);
}

TruncatedGradedPresentation build_M0_qplane(const Scalar& q, int D) {
  return build_qplane(q, D, false);
}

CoalgebraSpec coaddition_tensor(const Scalar& q, const std::vector<MultiIndex>& labels) {
  CoalgebraSpec d;
  d.dim = labels.size();
  for (const MultiIndex& m : labels) {
    d.label_degree.push_back(m.degree());
    d.max_degree = std::max(d.max_degree, m.degree());
  }
  ScalarField f = q.field();
  Scalar q2 = q * q;
  auto pos = [&](const MultiIndex& m) -> std::optional<size_t> {
    for (size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == m) return i;
    return std::nullopt;
  };
  for (size_t mi = 0; mi < labels.size(); ++mi) {
    MultiIndex mn = labels[mi];
    for (int i = 0; i <= mn.a; ++i)
      for (int j = 0; j <= mn.b; ++j) {
        MultiIndex left{i, j}, right{mn.a - i, mn.b - j};
        auto lp = pos(left), rp = pos(right);
        if (!lp || !rp) continue;
        Scalar v = q_binomial(static_cast<unsigned>(mn.a), static_cast<unsigned>(i), q2) *
                   q_binomial(static_cast<unsigned>(mn.b), static_cast<unsigned>(j), q2) *
                   q.pow(static_cast<long>(j) * right.a);
        d.set(mi, *lp, *rp, v);
      }
  }
  return d;
}

Report qplane_coaction_check(const TruncatedGradedPresentation& tg, SliceOptions opt) {
  Report rep;
  rep.title = "qplane coaction (windowed)";
  ScalarField f = tg.pres.base.field;
  Slice s(tg.pres.base, tg.D, opt);
  for (const MultiIndex& c1 : tg.labels)
    for (const MultiIndex& c2 : tg.labels) {
      if ((c1 + c2).degree() > tg.D) continue;
      bool ok = true;
      for (const MultiIndex& row : tg.labels) {
        NCPoly lhs(f);
        for (const MultiIndex& r1 : tg.labels) {
          MultiIndex r2{row.a - r1.a, row.b - r1.b};
          if (r2.a < 0 || r2.b < 0) continue;
          NCPoly u = tg.derived_at(r1, c1), v = tg.derived_at(r2, c2);
          if (u.is_zero() || v.is_zero()) continue;
          lhs += (u * v) * tg.q.pow(static_cast<long>(r1.b) * r2.a);
        }
        NCPoly rhs = tg.derived_at(row, c1 + c2) * tg.q.pow(static_cast<long>(c1.b) * c2.a);
        if (!s.reduce(lhs - rhs).is_zero()) {
          ok = false;
          break;
        }
      }
      rep.add("beta multiplicative at " + c1.str() + "," + c2.str(), ok);
    }
  return rep;
}

std::vector<NCPoly> ideal_intersection(const Presentation& big, int L,
                                       const std::vector<bool>& allowed, SliceOptions opt) {
  std::vector<Word> words = enumerate_words(big, L, opt);
  auto word_allowed = [&](const Word& w) {
    for (uint32_t g : w)
      if (!allowed[g]) return false;
    return true;
  };
  // column order: disallowed words first (largest), then allowed words
  std::vector<Word> order;
  for (auto it = words.rbegin(); it != words.rend(); ++it)
    if (!word_allowed(*it)) order.push_back(*it);
  size_t first_allowed = order.size();
  for (auto it = words.rbegin(); it != words.rend(); ++it)
    if (word_allowed(*it)) order.push_back(*it);
  std::map<Word, size_t> col;
  for (size_t i = 0; i < order.size(); ++i) col[order[i]] = i;

  using Row = std::vector<std::pair<size_t, Scalar>>;
  std::map<size_t, Row> pivots;
  auto axpy = [](Row& row, const Scalar& c, const Row& other) {
    Row out;
    size_t i = 0, j = 0;
    while (i < row.size() || j < other.size()) {
      if (j == other.size() || (i < row.size() && row[i].first < other[j].first)) {
        out.push_back(row[i++]);
      } else if (i == row.size() || other[j].first < row[i].first) {
        out.emplace_back(other[j].first, -(c * other[j].second));
        ++j;
      } else {
        Scalar v = row[i].second - c * other[j].second;
        if (!v.is_zero()) out.emplace_back(row[i].first, v);
        ++i;
        ++j;
      }
    }
    row = std::move(out);
  };
  auto add_row = [&](Row row) {
    size_t i = 0;
    while (i < row.size()) {
      auto it = pivots.find(row[i].first);
      if (it == pivots.end()) {
        ++i;
        continue;
      }
      axpy(row, row[i].second, it->second);
    }
    if (row.empty()) return;
    Scalar lead = row.front().second;
    if (!lead.is_one())
      for (auto& [cc, v] : row) v /= lead;
    size_t pcol = row.front().first;
    for (auto& [cc, prow] : pivots)
      for (size_t k = 0; k < prow.size(); ++k) {
        if (prow[k].first == pcol) {
          axpy(prow, prow[k].second, row);
          break;
        }
        if (prow[k].first > pcol) break;
      }
    pivots.emplace(pcol, std::move(row));
  };

  std::vector<int> wt;
  wt.reserve(words.size());
  for (const Word& w : words) wt.push_back(big.weight(w));
  for (const NCPoly& r : big.relations) {
    if (r.is_zero()) continue;
    int rw = big.weight(r);
    if (rw > L) continue;
    for (size_t i1 = 0; i1 < words.size(); ++i1) {
      if (wt[i1] + rw > L) break;
      for (size_t i2 = 0; i2 < words.size(); ++i2) {
        if (wt[i1] + rw + wt[i2] > L) break;
        NCPoly p = NCPoly::monomial(words[i1], Scalar::one(big.field)) * r *
                   NCPoly::monomial(words[i2], Scalar::one(big.field));
        Row row;
        for (const auto& [w, c] : p.terms()) row.emplace_back(col.at(w), c);
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        add_row(std::move(row));
      }
    }
  }

  std::vector<NCPoly> out;
  for (const auto& [pcol, row] : pivots) {
    if (pcol < first_allowed) continue;
    NCPoly p(big.field);
    for (const auto& [cc, v] : row) p.add_term(order[cc], v);
    out.push_back(std::move(p));
  }
  return out;
}

BialgebraPresentation build_Mq2(const Scalar& q) {
  if (q.field().kind == FieldKind::cyclotomic)
    throw error("M_q(2) derivation needs generic q (q-integers must be invertible)");
  ScalarField f = q.field();
  TruncatedGradedPresentation tg = build_M0_qplane(q, 2);
  // the Prop-3.2 rescaling of the derived generators is trivial on the
  // degree-1 block ([1]! = [0]! = 1), which is all that survives below
  CoalgebraSpec d = coaddition_tensor(q, tg.labels);
  BialgebraPresentation quotient = quotient_coproduct_preserving(tg.pres, d);

  std::vector<bool> allowed(quotient.base.generators.size(), false);
  std::vector<uint32_t> block{tg.s_gen.at({1, 0}), tg.t_gen.at({1, 0}),
                              tg.s_gen.at({0, 1}), tg.t_gen.at({0, 1})};
  for (uint32_t g : block) allowed[g] = true;
  std::vector<NCPoly> rels = ideal_intersection(quotient.base, 2, allowed);

  BialgebraPresentation out;
  out.variant = Variant::Quotient;
  out.label = "mq2";
  out.base.field = f;
  // (qmatst): (a b; c d) = (s_(1,0) t_(1,0); s_(0,1) t_(0,1))
  uint32_t a = out.base.add_generator("a");
  uint32_t b = out.base.add_generator("b");
  uint32_t c = out.base.add_generator("c");
  uint32_t dd = out.base.add_generator("d");
  std::vector<NCPoly> remap(quotient.base.generators.size(), NCPoly(f));
  remap[block[0]] = out.base.gen(a);
  remap[block[1]] = out.base.gen(b);
  remap[block[2]] = out.base.gen(c);
  remap[block[3]] = out.base.gen(dd);
  for (const auto& r : rels) out.base.add_relation(r.substitute(remap));
  out.base.canonicalize_relations();

  out.coproduct = {
      TensorElement::of(out.base.gen(a), out.base.gen(a)) +
          TensorElement::of(out.base.gen(b), out.base.gen(c)),
      TensorElement::of(out.base.gen(a), out.base.gen(b)) +
          TensorElement::of(out.base.gen(b), out.base.gen(dd)),
      TensorElement::of(out.base.gen(c), out.base.gen(a)) +
          TensorElement::of(out.base.gen(dd), out.base.gen(c)),
      TensorElement::of(out.base.gen(c), out.base.gen(b)) +
          TensorElement::of(out.base.gen(dd), out.base.gen(dd))};
  out.counit = {Scalar::one(f), Scalar::zero(f), Scalar::zero(f), Scalar::one(f)};

  // coaction window over 1, x, y: beta(x) = x (x) a + y (x) c
  out.coaction.emplace(3, std::vector<NCPoly>(3, NCPoly(f)));
  (*out.coaction)[0][0] = NCPoly::unit(f);
  (*out.coaction)[1][1] = out.base.gen(a);
  (*out.coaction)[2][1] = out.base.gen(c);
  (*out.coaction)[1][2] = out.base.gen(b);
  (*out.coaction)[2][2] = out.base.gen(dd);
  out.gen_matrix = *out.coaction;
  return out;
}

Report mq2_coaction_check(const BialgebraPresentation& mq2, const Scalar& q,
                          SliceOptions opt) {
  Report rep;
  rep.title = "mq2 coaction";
  ScalarField f = mq2.base.field;
  const auto& B = *mq2.coaction;
  Slice s(mq2.base, 2, opt);
  // beta extends to yx = qxy iff beta(y) beta(x) = q beta(x) beta(y)
  // coefficients on the normally ordered window x^2, xy, y^2
  NCPoly zero(f);
  auto coeff = [&](size_t u, size_t v, int which) {
    // beta(e_u) beta(e_v) with e-products reordered to x^a y^b
    // which: 0 -> x^2, 1 -> xy, 2 -> y^2
    NCPoly acc(f);
    if (which == 0) acc = B[1][u] * B[1][v];
    if (which == 2) acc = B[2][u] * B[2][v];
    if (which == 1) acc = B[1][u] * B[2][v] + (B[2][u] * B[1][v]) * q;
    return acc;
  };
  for (int which = 0; which < 3; ++which) {
    NCPoly diff = coeff(2, 1, which) - coeff(1, 2, which) * q;
    rep.add("yx = q xy component " + std::to_string(which), s.reduce(diff).is_zero());
  }
  return rep;
}

}  // namespace qdiff
