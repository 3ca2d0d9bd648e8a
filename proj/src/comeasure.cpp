#include "qdiff/comeasure.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace qdiff {

namespace {

NCPoly scalar_poly(ScalarField f, const Scalar& s) { return NCPoly::monomial(Word{}, s); }

std::string idx2(const std::string& base, size_t i, size_t j) {
  return base + std::to_string(i) + "_" + std::to_string(j);
}

// Moves the unit basis element to index 0, keeping the relative order of the
// other elements (Prop-2.3 index convention; output reported in this order).
AlgebraSpec unit_first(const AlgebraSpec& spec) {
  if (!spec.unit_index) throw error("variant requires a designated unit");
  size_t u = *spec.unit_index;
  if (u == 0) return spec;
  std::vector<size_t> perm;  // perm[new] = old
  perm.push_back(u);
  for (size_t i = 0; i < spec.dim; ++i)
    if (i != u) perm.push_back(i);
  AlgebraSpec out = AlgebraSpec::make(spec.field, spec.dim, 0);
  std::vector<size_t> inv(spec.dim);
  for (size_t a = 0; a < spec.dim; ++a) inv[perm[a]] = a;
  for (size_t i = 0; i < spec.dim; ++i)
    for (size_t j = 0; j < spec.dim; ++j)
      for (size_t k = 0; k < spec.dim; ++k)
        out.cref(i, j, inv[k]) = spec.cval(perm[i], perm[j], k);
  return out;
}

void require_valid(const AlgebraSpec& spec, bool need_unit) {
  Report r = validate_algebra(spec);
  for (const auto& item : r.items) {
    if (item.name == "associative" && !item.pass)
      throw error("non-associative algebra spec rejected: " + item.witness);
    if (need_unit && item.name == "unit" && !item.pass)
      throw error("unit axioms fail: " + item.witness);
  }
}

}  // namespace

AlgebraSpec AlgebraSpec::make(ScalarField f, size_t dim, std::optional<size_t> unit) {
  AlgebraSpec s;
  s.field = f;
  s.dim = dim;
  s.c.assign(dim * dim * dim, Scalar::zero(f));
  s.unit_index = unit;
  return s;
}

Report validate_algebra(const AlgebraSpec& spec) {
  Report rep;
  rep.title = "validate_algebra";
  size_t n = spec.dim;
  bool assoc = true;
  std::string assoc_witness;
  for (size_t i = 0; i < n && assoc; ++i)
    for (size_t j = 0; j < n && assoc; ++j)
      for (size_t k = 0; k < n && assoc; ++k)
        for (size_t l = 0; l < n; ++l) {
          Scalar lhs = Scalar::zero(spec.field), rhs = lhs;
          for (size_t a = 0; a < n; ++a) {
            lhs += spec.cval(i, j, a) * spec.cval(a, k, l);
            rhs += spec.cval(i, a, l) * spec.cval(j, k, a);
          }
          if (lhs != rhs) {
            assoc = false;
            assoc_witness = "(i,j,k,l)=(" + std::to_string(i) + "," + std::to_string(j) +
                            "," + std::to_string(k) + "," + std::to_string(l) + ")";
            break;
          }
        }
  rep.add("associative", assoc, assoc_witness);
  if (spec.unit_index) {
    size_t u = *spec.unit_index;
    bool ok = u < n;
    std::string w;
    for (size_t j = 0; ok && j < n; ++j)
      for (size_t k = 0; k < n; ++k) {
        Scalar expect = (j == k) ? Scalar::one(spec.field) : Scalar::zero(spec.field);
        if (spec.cval(u, j, k) != expect || spec.cval(j, u, k) != expect) {
          ok = false;
          w = "(j,k)=(" + std::to_string(j) + "," + std::to_string(k) + ")";
          break;
        }
      }
    rep.add("unit", ok, w);
  }
  return rep;
}

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::M1: return "m1";
    case Variant::M: return "m";
    case Variant::M0: return "m0";
    case Variant::Quotient: return "quotient";
  }
  return "?";
}

TensorElement BialgebraPresentation::coproduct_of_word(const Word& w) const {
  TensorElement acc = TensorElement::of(NCPoly::unit(base.field), NCPoly::unit(base.field));
  for (uint32_t id : w) acc = acc * coproduct.at(id);
  return acc;
}

TensorElement BialgebraPresentation::coproduct_of(const NCPoly& p) const {
  TensorElement out(base.field);
  for (const auto& [w, c] : p.terms()) out += coproduct_of_word(w) * c;
  return out;
}

Scalar BialgebraPresentation::counit_of_word(const Word& w) const {
  Scalar acc = Scalar::one(base.field);
  for (uint32_t id : w) acc *= counit.at(id);
  return acc;
}

Scalar BialgebraPresentation::counit_of(const NCPoly& p) const {
  Scalar acc = Scalar::zero(base.field);
  for (const auto& [w, c] : p.terms()) acc += counit_of_word(w) * c;
  return acc;
}

BialgebraPresentation build_M1(const AlgebraSpec& spec) {
  require_valid(spec, false);
  size_t n = spec.dim;
  ScalarField f = spec.field;
  BialgebraPresentation p;
  p.variant = Variant::M1;
  p.base.field = f;
  auto id = [n](size_t i, size_t j) { return static_cast<uint32_t>(i * n + j); };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      p.base.add_generator(idx2("t", i, j), 1, "t^" + std::to_string(i) + "_" + std::to_string(j));

  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) {
        NCPoly r(f);
        for (size_t a = 0; a < n; ++a)
          r += p.base.gen(id(k, a)) * spec.cval(i, j, a);
        for (size_t a = 0; a < n; ++a)
          for (size_t b = 0; b < n; ++b)
            r -= p.base.gen(id(a, i)) * p.base.gen(id(b, j)) * spec.cval(a, b, k);
        p.base.add_relation(r);
      }

  p.coproduct.assign(n * n, TensorElement(f));
  p.counit.assign(n * n, Scalar::zero(f));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      TensorElement d(f);
      for (size_t a = 0; a < n; ++a)
        d += TensorElement::of(p.base.gen(id(i, a)), p.base.gen(id(a, j)));
      p.coproduct[id(i, j)] = d;
      p.counit[id(i, j)] = i == j ? Scalar::one(f) : Scalar::zero(f);
    }

  p.coaction.emplace(n, std::vector<NCPoly>(n, NCPoly(f)));
  for (size_t a = 0; a < n; ++a)
    for (size_t j = 0; j < n; ++j)
      (*p.coaction)[a][j] = p.base.gen(id(a, j));

  p.gen_matrix.assign(n, std::vector<NCPoly>(n, NCPoly(f)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      p.gen_matrix[i][j] = p.base.gen(id(i, j));
  return p;
}

namespace {

// shared construction for the M (with b generators) and M0 variants
BialgebraPresentation build_M_or_M0(const AlgebraSpec& raw, bool with_b) {
  AlgebraSpec spec = unit_first(raw);
  require_valid(spec, true);
  size_t n = spec.dim;
  size_t m = n - 1;
  ScalarField f = spec.field;
  BialgebraPresentation p;
  p.variant = with_b ? Variant::M : Variant::M0;
  p.base.field = f;
  auto tid = [m](size_t i, size_t j) {  // i, j in 1..m
    return static_cast<uint32_t>((i - 1) * m + (j - 1));
  };
  auto bid = [m](size_t i) { return static_cast<uint32_t>(m * m + (i - 1)); };
  for (size_t i = 1; i <= m; ++i)
    for (size_t j = 1; j <= m; ++j)
      p.base.add_generator(idx2("t", i, j), 1, "t^" + std::to_string(i) + "_" + std::to_string(j));
  if (with_b)
    for (size_t i = 1; i <= m; ++i)
      p.base.add_generator("b" + std::to_string(i), 1, "b_" + std::to_string(i));

  NCPoly zero(f);
  auto bgen = [&](size_t i) { return with_b ? p.base.gen(bid(i)) : zero; };

  for (size_t i = 1; i <= m; ++i)
    for (size_t j = 1; j <= m; ++j) {
      // c_ij^a t^k_a = c_ab^k t^a_i t^b_j + b_i t^k_j + t^k_i b_j
      for (size_t k = 1; k <= m; ++k) {
        NCPoly r(f);
        for (size_t a = 1; a <= m; ++a)
          r += p.base.gen(tid(k, a)) * spec.cval(i, j, a);
        for (size_t a = 1; a <= m; ++a)
          for (size_t b = 1; b <= m; ++b)
            r -= p.base.gen(tid(a, i)) * p.base.gen(tid(b, j)) * spec.cval(a, b, k);
        if (with_b) {
          r -= bgen(i) * p.base.gen(tid(k, j));
          r -= p.base.gen(tid(k, i)) * bgen(j);
        }
        p.base.add_relation(r);
      }
      // c_ij^0 + c_ij^a b_a = c_ab^0 t^a_i t^b_j + b_i b_j
      NCPoly r = scalar_poly(f, spec.cval(i, j, 0));
      if (with_b)
        for (size_t a = 1; a <= m; ++a)
          r += bgen(a) * spec.cval(i, j, a);
      for (size_t a = 1; a <= m; ++a)
        for (size_t b = 1; b <= m; ++b)
          r -= p.base.gen(tid(a, i)) * p.base.gen(tid(b, j)) * spec.cval(a, b, 0);
      if (with_b) r -= bgen(i) * bgen(j);
      p.base.add_relation(r);
    }

  size_t gen_count = p.base.generators.size();
  p.coproduct.assign(gen_count, TensorElement(f));
  p.counit.assign(gen_count, Scalar::zero(f));
  for (size_t i = 1; i <= m; ++i)
    for (size_t j = 1; j <= m; ++j) {
      TensorElement d(f);
      for (size_t a = 1; a <= m; ++a)
        d += TensorElement::of(p.base.gen(tid(i, a)), p.base.gen(tid(a, j)));
      p.coproduct[tid(i, j)] = d;
      p.counit[tid(i, j)] = i == j ? Scalar::one(f) : Scalar::zero(f);
    }
  if (with_b)
    for (size_t j = 1; j <= m; ++j) {
      TensorElement d = TensorElement::of(NCPoly::unit(f), p.base.gen(bid(j)));
      for (size_t a = 1; a <= m; ++a)
        d += TensorElement::of(p.base.gen(bid(a)), p.base.gen(tid(a, j)));
      p.coproduct[bid(j)] = d;
      p.counit[bid(j)] = Scalar::zero(f);
    }

  p.coaction.emplace(n, std::vector<NCPoly>(n, NCPoly(f)));
  (*p.coaction)[0][0] = NCPoly::unit(f);
  for (size_t j = 1; j <= m; ++j) {
    (*p.coaction)[0][j] = bgen(j);
    for (size_t a = 1; a <= m; ++a)
      (*p.coaction)[a][j] = p.base.gen(tid(a, j));
  }

  p.gen_matrix.assign(n, std::vector<NCPoly>(n, NCPoly(f)));
  p.gen_matrix[0][0] = NCPoly::unit(f);
  for (size_t j = 1; j <= m; ++j) {
    p.gen_matrix[0][j] = bgen(j);
    for (size_t i = 1; i <= m; ++i)
      p.gen_matrix[i][j] = p.base.gen(tid(i, j));
  }
  return p;
}

}  // namespace

BialgebraPresentation build_M(const AlgebraSpec& spec) { return build_M_or_M0(spec, true); }
BialgebraPresentation build_M0(const AlgebraSpec& spec) { return build_M_or_M0(spec, false); }

BialgebraPresentation eliminate_generators(const BialgebraPresentation& pres,
                                           const std::set<std::string>& keep) {
  size_t gen_count = pres.base.generators.size();
  ScalarField f = pres.base.field;
  std::vector<NCPoly> images;  // original id -> polynomial over original ids
  for (uint32_t g = 0; g < gen_count; ++g) images.push_back(pres.base.gen(g));
  std::vector<bool> eliminated(gen_count, false);
  std::vector<NCPoly> rels = pres.base.relations;

  for (;;) {
    bool progress = false;
    for (size_t ri = 0; ri < rels.size() && !progress; ++ri) {
      const NCPoly& r = rels[ri];
      for (const auto& [w, c] : r.terms()) {
        if (w.size() != 1) continue;
        uint32_t g = w[0];
        if (keep.count(pres.base.generators[g].name)) continue;
        NCPoly rest = r - NCPoly::monomial(w, c);
        if (rest.uses_generator(g)) continue;
        // r says c*g + rest = 0, so g = -rest/c
        NCPoly value = rest * (-(c.inverse()));
        std::vector<NCPoly> step;
        for (uint32_t h = 0; h < gen_count; ++h)
          step.push_back(h == g ? value : pres.base.gen(h));
        for (auto& rel : rels) rel = rel.substitute(step);
        for (auto& img : images) img = img.substitute(step);
        eliminated[g] = true;
        progress = true;
        break;
      }
    }
    if (!progress) break;
  }

  BialgebraPresentation out;
  out.variant = pres.variant;
  out.label = pres.label;
  out.base.field = f;
  std::vector<uint32_t> newid(gen_count, UINT32_MAX);
  for (uint32_t g = 0; g < gen_count; ++g) {
    if (eliminated[g]) continue;
    const Generator& gen = pres.base.generators[g];
    newid[g] = out.base.add_generator(gen.name, gen.weight, gen.display);
  }
  std::vector<NCPoly> compact;  // original id -> poly over new ids
  for (uint32_t g = 0; g < gen_count; ++g) {
    NCPoly img(f);
    for (const auto& [w, c] : images[g].terms()) {
      Word nw;
      for (uint32_t h : w) {
        if (newid[h] == UINT32_MAX) throw error("elimination left a dangling generator");
        nw.push_back(newid[h]);
      }
      img.add_term(nw, c);
    }
    compact.push_back(img);
  }

  for (const auto& r : rels)
    out.base.add_relation(r.substitute(compact));
  out.base.canonicalize_relations();

  out.coproduct.assign(out.base.generators.size(), TensorElement(f));
  out.counit.assign(out.base.generators.size(), Scalar::zero(f));
  for (uint32_t g = 0; g < gen_count; ++g) {
    if (eliminated[g]) continue;
    out.coproduct[newid[g]] = pres.coproduct[g].substitute(compact, compact);
    out.counit[newid[g]] = pres.counit[g];
  }
  if (pres.coaction) {
    out.coaction.emplace();
    for (const auto& row : *pres.coaction) {
      out.coaction->emplace_back();
      for (const auto& entry : row) out.coaction->back().push_back(entry.substitute(compact));
    }
  }
  for (const auto& row : pres.gen_matrix) {
    out.gen_matrix.emplace_back();
    for (const auto& entry : row) out.gen_matrix.back().push_back(entry.substitute(compact));
  }
  return out;
}

void rename_generator(BialgebraPresentation& pres, const std::string& old_name,
                      const std::string& name, const std::string& display) {
  auto id = pres.base.find_generator(old_name);
  if (!id) throw error("no generator named " + old_name);
  pres.base.generators[*id].name = name;
  pres.base.generators[*id].display = display.empty() ? name : display;
}

namespace {

// lazily built slices of one presentation at several bounds
struct SliceCache {
  const Presentation& pres;
  SliceOptions opt;
  std::map<int, Slice> cache;
  const Slice& at(int L) {
    auto it = cache.find(L);
    if (it == cache.end()) it = cache.emplace(L, Slice(pres, L, opt)).first;
    return it->second;
  }
};

int max_left_weight(const Presentation& p, const TensorElement& t) {
  int m = 0;
  for (const auto& [k, c] : t.terms()) m = std::max(m, p.weight(k.first));
  return m;
}

int max_right_weight(const Presentation& p, const TensorElement& t) {
  int m = 0;
  for (const auto& [k, c] : t.terms()) m = std::max(m, p.weight(k.second));
  return m;
}

}  // namespace

// Drops candidates already inside the ideal generated by the base relations
// plus the candidates kept so far; the generated ideal is unchanged.
std::vector<NCPoly> prune_redundant(const Presentation& base,
                                    std::vector<NCPoly> candidates, SliceOptions opt) {
  int lmax = 1;
  for (const auto& r : candidates) lmax = std::max(lmax, base.weight(r));
  std::sort(candidates.begin(), candidates.end(), [&](const NCPoly& a, const NCPoly& b) {
    if (base.weight(a) != base.weight(b)) return base.weight(a) < base.weight(b);
    return a < b;
  });
  Slice s(base, lmax, opt);
  std::vector<NCPoly> kept;
  for (const auto& r : candidates) {
    if (s.reduce(r).is_zero()) continue;
    kept.push_back(r);
    s.extend(r);
  }
  return kept;
}

namespace {

// Delta r in I(x)F + F(x)I for each given polynomial. A polynomial lying in
// the ideal spanned by strictly lower-weight relations inherits the property
// from them (the verdict is only meaningful layer by layer, which the full
// report covers). Items are appended to rep when given.
bool check_biideal(const BialgebraPresentation& pres, const std::vector<NCPoly>& polys,
                   SliceOptions opt, Report* rep, const std::string& prefix) {
  const Presentation& P = pres.base;
  SliceCache slices{P, opt, {}};
  std::map<int, Slice> below;
  auto below_slice = [&](int w) -> const Slice& {
    auto it = below.find(w);
    if (it == below.end()) {
      Presentation sub;
      sub.field = P.field;
      sub.generators = P.generators;
      for (const NCPoly& r : P.relations)
        if (P.weight(r) < w) sub.relations.push_back(r);
      it = below.emplace(w, Slice(sub, w, opt)).first;
    }
    return it->second;
  };
  bool all_ok = true;
  for (size_t ri = 0; ri < polys.size(); ++ri) {
    const NCPoly& r = polys[ri];
    int w = P.weight(r);
    if (below_slice(w).reduce(r).is_zero()) {
      if (rep)
        rep->add(prefix + std::to_string(ri) + " (consequence of lower weight)", true);
      continue;
    }
    TensorElement dr = pres.coproduct_of(r);
    int ll = std::max(max_left_weight(P, dr), 1);
    int lr = std::max(max_right_weight(P, dr), 1);
    bool ok = tensor_reduce(dr, slices.at(ll), slices.at(lr)).is_zero();
    if (!ok) all_ok = false;
    if (rep) rep->add(prefix + std::to_string(ri), ok, ok ? "" : P.poly_string(r));
  }
  return all_ok;
}

using Triple = std::map<std::tuple<Word, Word, Word>, Scalar>;

void triple_add(Triple& t, const Word& a, const Word& b, const Word& c, const Scalar& v) {
  if (v.is_zero()) return;
  auto key = std::make_tuple(a, b, c);
  auto it = t.find(key);
  if (it == t.end()) {
    t.emplace(key, v);
  } else {
    it->second += v;
    if (it->second.is_zero()) t.erase(it);
  }
}

// legwise reduction of a triple tensor
Triple triple_reduce(const Triple& t, const Slice& s) {
  Triple out;
  for (const auto& [key, v] : t) {
    const auto& [a, b, c] = key;
    NCPoly ra = s.reduce(NCPoly::monomial(a, Scalar::one(v.field())));
    NCPoly rb = s.reduce(NCPoly::monomial(b, Scalar::one(v.field())));
    NCPoly rc = s.reduce(NCPoly::monomial(c, Scalar::one(v.field())));
    for (const auto& [wa, ca] : ra.terms())
      for (const auto& [wb, cb] : rb.terms())
        for (const auto& [wc, cc] : rc.terms())
          triple_add(out, wa, wb, wc, v * ca * cb * cc);
  }
  return out;
}

}  // namespace

Report verify_bialgebra(const BialgebraPresentation& pres, int L, SliceOptions opt) {
  Report rep;
  rep.title = "verify_bialgebra(" + variant_name(pres.variant) +
              (pres.label.empty() ? "" : ", " + pres.label) + ", L=" + std::to_string(L) + ")";
  const Presentation& P = pres.base;
  SliceCache slices{P, opt, {}};

  // (i) Delta maps each relation into I(x)F + F(x)I; slices grow as needed
  check_biideal(pres, P.relations, opt, &rep, "coproduct biideal: relation ");

  // (ii) coassociativity on generators, modulo the ideal legwise
  for (uint32_t g = 0; g < P.generators.size(); ++g) {
    Triple left, right;
    for (const auto& [k, c] : pres.coproduct[g].terms()) {
      TensorElement d1 = pres.coproduct_of_word(k.first);
      for (const auto& [k2, c2] : d1.terms())
        triple_add(left, k2.first, k2.second, k.second, c * c2);
      TensorElement d2 = pres.coproduct_of_word(k.second);
      for (const auto& [k2, c2] : d2.terms())
        triple_add(right, k.first, k2.first, k2.second, c * c2);
    }
    int need = 1;
    for (const auto& [key, v] : left)
      need = std::max({need, P.weight(std::get<0>(key)), P.weight(std::get<1>(key)),
                       P.weight(std::get<2>(key))});
    for (const auto& [key, v] : right)
      need = std::max({need, P.weight(std::get<0>(key)), P.weight(std::get<1>(key)),
                       P.weight(std::get<2>(key))});
    const Slice& s = slices.at(need);
    bool ok = triple_reduce(left, s) == triple_reduce(right, s);
    rep.add("coassociativity: " + P.generators[g].name, ok);
  }

  // (iii) counit axioms on generators
  for (uint32_t g = 0; g < P.generators.size(); ++g) {
    NCPoly lhs(P.field), rhs(P.field);
    for (const auto& [k, c] : pres.coproduct[g].terms()) {
      lhs += NCPoly::monomial(k.second, c * pres.counit_of_word(k.first));
      rhs += NCPoly::monomial(k.first, c * pres.counit_of_word(k.second));
    }
    NCPoly gpoly = P.gen(g);
    int need = std::max({P.weight(lhs), P.weight(rhs), P.weight(gpoly), 1});
    const Slice& s = slices.at(need);
    bool ok = s.reduce(lhs - gpoly).is_zero() && s.reduce(rhs - gpoly).is_zero();
    rep.add("counit axiom: " + P.generators[g].name, ok);
  }

  // (iv) counit kills relations exactly
  for (size_t ri = 0; ri < P.relations.size(); ++ri) {
    Scalar v = pres.counit_of(P.relations[ri]);
    rep.add("counit of relation " + std::to_string(ri), v.is_zero(),
            v.is_zero() ? "" : v.to_string());
  }
  return rep;
}

Report verify_coaction(const BialgebraPresentation& pres, const AlgebraSpec& raw, int L,
                       SliceOptions opt) {
  Report rep;
  rep.title = "verify_coaction(" + variant_name(pres.variant) + ")";
  if (!pres.coaction) {
    rep.add("coaction table present", false);
    return rep;
  }
  AlgebraSpec spec = (pres.variant == Variant::M || pres.variant == Variant::M0)
                         ? unit_first(raw)
                         : raw;
  const auto& B = *pres.coaction;
  const Presentation& P = pres.base;
  size_t n = spec.dim;
  if (B.size() != n) {
    rep.add("coaction dimensions", false);
    return rep;
  }
  SliceCache slices{P, opt, {}};
  int bw = 1;
  for (const auto& row : B)
    for (const auto& e : row) bw = std::max(bw, P.weight(e));

  // algebra map: beta(e_i) beta(e_j) = c_ij^k beta(e_k)
  const Slice& s2 = slices.at(std::max(2 * bw, L));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      bool ok = true;
      for (size_t k = 0; k < n && ok; ++k) {
        NCPoly lhs(P.field);
        for (size_t a = 0; a < n; ++a)
          for (size_t b = 0; b < n; ++b)
            if (!spec.cval(a, b, k).is_zero()) lhs += (B[a][i] * B[b][j]) * spec.cval(a, b, k);
        NCPoly rhs(P.field);
        for (size_t l = 0; l < n; ++l)
          if (!spec.cval(i, j, l).is_zero()) rhs += B[k][l] * spec.cval(i, j, l);
        ok = s2.reduce(lhs - rhs).is_zero();
      }
      rep.add("coaction algebra map (" + std::to_string(i) + "," + std::to_string(j) + ")", ok);
    }

  // (beta (x) id) beta = (id (x) Delta) beta
  for (size_t i = 0; i < n; ++i) {
    bool ok = true;
    for (size_t b = 0; b < n && ok; ++b) {
      TensorElement lhs(P.field);
      for (size_t a = 0; a < n; ++a) lhs += TensorElement::of(B[b][a], B[a][i]);
      TensorElement rhs = pres.coproduct_of(B[b][i]);
      TensorElement diff = lhs - rhs;
      int ll = std::max(max_left_weight(P, diff), 1);
      int lr = std::max(max_right_weight(P, diff), 1);
      ok = tensor_reduce(diff, slices.at(ll), slices.at(lr)).is_zero();
    }
    rep.add("coaction coassociativity e_" + std::to_string(i), ok);
  }

  // (id (x) eps) beta = id
  for (size_t i = 0; i < n; ++i) {
    bool ok = true;
    for (size_t a = 0; a < n; ++a) {
      Scalar v = pres.counit_of(B[a][i]);
      Scalar expect = (a == i) ? Scalar::one(P.field) : Scalar::zero(P.field);
      if (v != expect) ok = false;
    }
    rep.add("coaction counit e_" + std::to_string(i), ok);
  }
  return rep;
}

UniversalCheckResult universal_check(const AlgebraSpec& raw, Variant variant, int L,
                                     SliceOptions opt) {
  UniversalCheckResult res;
  res.report.title = "universal_check(" + variant_name(variant) + ")";
  BialgebraPresentation built;
  AlgebraSpec spec = raw;
  if (variant == Variant::M1) {
    built = build_M1(raw);
  } else {
    spec = unit_first(raw);
    built = variant == Variant::M ? build_M(raw) : build_M0(raw);
  }

  // oracle presentation: same generators, relations regenerated from scratch
  Presentation oracle;
  oracle.field = spec.field;
  oracle.generators = built.base.generators;
  size_t n = spec.dim;
  ScalarField f = spec.field;

  // beta(e_j) = sum_a e_a (x) beta_entries[a][j], abstract generators
  std::vector<std::vector<NCPoly>> beta(n, std::vector<NCPoly>(n, NCPoly(f)));
  if (variant == Variant::M1) {
    for (size_t a = 0; a < n; ++a)
      for (size_t j = 0; j < n; ++j)
        beta[a][j] = oracle.gen(static_cast<uint32_t>(a * n + j));
  } else {
    size_t m = n - 1;
    beta[0][0] = NCPoly::unit(f);
    for (size_t j = 1; j <= m; ++j) {
      if (variant == Variant::M)
        beta[0][j] = oracle.gen(static_cast<uint32_t>(m * m + (j - 1)));
      for (size_t a = 1; a <= m; ++a)
        beta[a][j] = oracle.gen(static_cast<uint32_t>((a - 1) * m + (j - 1)));
    }
  }

  size_t lo = (variant == Variant::M1) ? 0 : 1;
  for (size_t i = lo; i < n; ++i)
    for (size_t j = lo; j < n; ++j) {
      // coefficients of beta(e_i) beta(e_j) - beta(e_i e_j)
      for (size_t k = 0; k < n; ++k) {
        NCPoly r(f);
        for (size_t a = 0; a < n; ++a)
          for (size_t b = 0; b < n; ++b)
            if (!spec.cval(a, b, k).is_zero()) r += (beta[a][i] * beta[b][j]) * spec.cval(a, b, k);
        for (size_t l = 0; l < n; ++l)
          if (!spec.cval(i, j, l).is_zero()) r -= beta[k][l] * spec.cval(i, j, l);
        oracle.add_relation(r);
      }
    }

  Slice so(oracle, L, opt);
  Slice sb(built.base, L, opt);
  res.ideal_slice_dim = so.ideal_rank();
  bool oracle_in_built = true, built_in_oracle = true;
  for (const auto& r : oracle.relations)
    if (!sb.reduce(r).is_zero()) oracle_in_built = false;
  for (const auto& r : built.base.relations)
    if (!so.reduce(r).is_zero()) built_in_oracle = false;
  bool ranks_equal = so.ideal_rank() == sb.ideal_rank();
  res.match = oracle_in_built && built_in_oracle && ranks_equal;
  res.report.add("oracle relations inside built ideal", oracle_in_built);
  res.report.add("built relations inside oracle ideal", built_in_oracle);
  res.report.add("ideal slice ranks equal (" + std::to_string(so.ideal_rank()) + " vs " +
                     std::to_string(sb.ideal_rank()) + ")",
                 ranks_equal);
  return res;
}

BialgebraPresentation change_basis(const BialgebraPresentation& pres, const BasisChange& bc) {
  ScalarField f = pres.base.field;
  size_t n = pres.gen_matrix.size();
  if (n == 0) throw error("change_basis requires a generator matrix");
  ScalarMatrix Lam = bc.Lambda;
  ScalarMatrix Linv = Lam.inverse();  // throws when singular

  if (pres.variant == Variant::M1) {
    if (Lam.rows != n) throw error("basis change dimension mismatch");
    BialgebraPresentation out;
    out.variant = Variant::M1;
    out.label = pres.label;
    out.base.field = f;
    auto id = [n](size_t i, size_t j) { return static_cast<uint32_t>(i * n + j); };
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        out.base.add_generator(idx2("t", i, j), 1,
                               "t^" + std::to_string(i) + "_" + std::to_string(j));
    // t^i_j = (Lambda t' Lambda^-1)^i_j
    std::vector<NCPoly> images(n * n, NCPoly(f));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        NCPoly img(f);
        for (size_t a = 0; a < n; ++a)
          for (size_t b = 0; b < n; ++b)
            img += out.base.gen(id(a, b)) * (Lam.at(i, a) * Linv.at(b, j));
        images[id(i, j)] = img;
      }
    for (const auto& r : pres.base.relations) out.base.add_relation(r.substitute(images));
    out.base.canonicalize_relations();
    out.coproduct.assign(n * n, TensorElement(f));
    out.counit.assign(n * n, Scalar::zero(f));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        TensorElement d(f);
        for (size_t a = 0; a < n; ++a)
          d += TensorElement::of(out.base.gen(id(i, a)), out.base.gen(id(a, j)));
        out.coproduct[id(i, j)] = d;
        out.counit[id(i, j)] = i == j ? Scalar::one(f) : Scalar::zero(f);
      }
    out.coaction.emplace(n, std::vector<NCPoly>(n, NCPoly(f)));
    for (size_t a = 0; a < n; ++a)
      for (size_t j = 0; j < n; ++j) (*out.coaction)[a][j] = out.base.gen(id(a, j));
    out.gen_matrix.assign(n, std::vector<NCPoly>(n, NCPoly(f)));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) out.gen_matrix[i][j] = out.base.gen(id(i, j));
    return out;
  }

  if (pres.variant != Variant::M && pres.variant != Variant::M0)
    throw error("change_basis supports the m1, m and m0 variants");
  size_t m = n - 1;
  if (Lam.rows != m) throw error("basis change dimension mismatch");
  bool with_b = pres.variant == Variant::M;
  std::vector<Scalar> lam(m, Scalar::zero(f));
  if (bc.lambda) {
    if (!with_b) throw error("lambda is only meaningful for the m variant");
    if (bc.lambda->size() != m) throw error("lambda length mismatch");
    lam = *bc.lambda;
  }

  BialgebraPresentation out;
  out.variant = pres.variant;
  out.label = pres.label;
  out.base.field = f;
  auto tid = [m](size_t i, size_t j) { return static_cast<uint32_t>((i - 1) * m + (j - 1)); };
  auto bid = [m](size_t i) { return static_cast<uint32_t>(m * m + (i - 1)); };
  for (size_t i = 1; i <= m; ++i)
    for (size_t j = 1; j <= m; ++j)
      out.base.add_generator(idx2("t", i, j), 1,
                             "t^" + std::to_string(i) + "_" + std::to_string(j));
  if (with_b)
    for (size_t i = 1; i <= m; ++i)
      out.base.add_generator("b" + std::to_string(i), 1, "b_" + std::to_string(i));

  // t^c_d = (Lambda t' Lambda^-1)^c_d ; b_d = (b'_i - lambda_i) Lambda^-1 i_d
  //          + lambda_c Lambda^-1 c_b (Lambda t' Lambda^-1)^b_d
  std::vector<std::vector<NCPoly>> timg(m + 1, std::vector<NCPoly>(m + 1, NCPoly(f)));
  for (size_t c = 1; c <= m; ++c)
    for (size_t d = 1; d <= m; ++d) {
      NCPoly img(f);
      for (size_t a = 1; a <= m; ++a)
        for (size_t b = 1; b <= m; ++b)
          img += out.base.gen(tid(a, b)) * (Lam.at(c - 1, a - 1) * Linv.at(b - 1, d - 1));
      timg[c][d] = img;
    }
  std::vector<NCPoly> images(pres.base.generators.size(), NCPoly(f));
  for (size_t c = 1; c <= m; ++c)
    for (size_t d = 1; d <= m; ++d) images[tid(c, d)] = timg[c][d];
  if (with_b)
    for (size_t d = 1; d <= m; ++d) {
      NCPoly img(f);
      for (size_t i = 1; i <= m; ++i) {
        img += out.base.gen(bid(i)) * Linv.at(i - 1, d - 1);
        img -= scalar_poly(f, lam[i - 1] * Linv.at(i - 1, d - 1));
      }
      for (size_t c = 1; c <= m; ++c)
        for (size_t b = 1; b <= m; ++b)
          img += timg[b][d] * (lam[c - 1] * Linv.at(c - 1, b - 1));
      images[bid(d)] = img;
    }

  for (const auto& r : pres.base.relations) out.base.add_relation(r.substitute(images));
  out.base.canonicalize_relations();

  size_t gc = out.base.generators.size();
  out.coproduct.assign(gc, TensorElement(f));
  out.counit.assign(gc, Scalar::zero(f));
  for (size_t i = 1; i <= m; ++i)
    for (size_t j = 1; j <= m; ++j) {
      TensorElement d(f);
      for (size_t a = 1; a <= m; ++a)
        d += TensorElement::of(out.base.gen(tid(i, a)), out.base.gen(tid(a, j)));
      out.coproduct[tid(i, j)] = d;
      out.counit[tid(i, j)] = i == j ? Scalar::one(f) : Scalar::zero(f);
    }
  if (with_b)
    for (size_t j = 1; j <= m; ++j) {
      TensorElement d = TensorElement::of(NCPoly::unit(f), out.base.gen(bid(j)));
      for (size_t a = 1; a <= m; ++a)
        d += TensorElement::of(out.base.gen(bid(a)), out.base.gen(tid(a, j)));
      out.coproduct[bid(j)] = d;
    }
  out.coaction.emplace(n, std::vector<NCPoly>(n, NCPoly(f)));
  (*out.coaction)[0][0] = NCPoly::unit(f);
  for (size_t j = 1; j <= m; ++j) {
    if (with_b) (*out.coaction)[0][j] = out.base.gen(bid(j));
    for (size_t a = 1; a <= m; ++a) (*out.coaction)[a][j] = out.base.gen(tid(a, j));
  }
  out.gen_matrix.assign(n, std::vector<NCPoly>(n, NCPoly(f)));
  out.gen_matrix[0][0] = NCPoly::unit(f);
  for (size_t j = 1; j <= m; ++j) {
    if (with_b) out.gen_matrix[0][j] = out.base.gen(bid(j));
    for (size_t i = 1; i <= m; ++i) out.gen_matrix[i][j] = out.base.gen(tid(i, j));
  }
  return out;
}

AlgebraSpec transform_spec(const AlgebraSpec& spec, const BasisChange& bc) {
  ScalarField f = spec.field;
  size_t n = spec.dim;
  ScalarMatrix full(n, n, f);
  if (bc.Lambda.rows == n && !bc.lambda) {
    full = bc.Lambda;
  } else if (bc.Lambda.rows == n - 1) {
    if (spec.unit_index.value_or(1) != 0)
      throw error("affine transform_spec expects the unit at index 0");
    full.at(0, 0) = Scalar::one(f);
    for (size_t j = 1; j < n; ++j) {
      if (bc.lambda) full.at(0, j) = (*bc.lambda)[j - 1];
      for (size_t a = 1; a < n; ++a) full.at(a, j) = bc.Lambda.at(a - 1, j - 1);
    }
  } else {
    throw error("basis change dimension mismatch");
  }
  ScalarMatrix inv = full.inverse();
  AlgebraSpec out = AlgebraSpec::make(f, n, spec.unit_index);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t c = 0; c < n; ++c) {
        Scalar v = Scalar::zero(f);
        for (size_t a = 0; a < n; ++a)
          for (size_t b = 0; b < n; ++b) {
            if (full.at(a, i).is_zero() || full.at(b, j).is_zero()) continue;
            for (size_t k = 0; k < n; ++k)
              v += full.at(a, i) * full.at(b, j) * spec.cval(a, b, k) * inv.at(c, k);
          }
        out.cref(i, j, c) = v;
      }
  return out;
}

void CoalgebraSpec::set(size_t i, size_t j, size_t k, const Scalar& v) {
  if (v.is_zero()) {
    d.erase({i, j, k});
  } else {
    d[{i, j, k}] = v;
  }
}

Scalar CoalgebraSpec::get(size_t i, size_t j, size_t k, ScalarField f) const {
  auto it = d.find({i, j, k});
  return it == d.end() ? Scalar::zero(f) : it->second;
}

std::vector<NCPoly> coalgebra_quotient_relations(
    const CoalgebraSpec& d, const std::function<NCPoly(size_t, size_t)>& t,
    ScalarField field) {
  std::vector<NCPoly> out;
  size_t n = d.dim;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) {
        if (!d.rows_complete(j, k)) continue;
        NCPoly r(field);
        for (size_t a = 0; a < n; ++a) {
          Scalar v = d.get(a, j, k, field);
          if (!v.is_zero()) r += t(a, i) * v;
        }
        for (size_t a = 0; a < n; ++a)
          for (size_t b = 0; b < n; ++b) {
            Scalar v = d.get(i, a, b, field);
            if (!v.is_zero()) r -= (t(j, a) * t(k, b)) * v;
          }
        if (!r.is_zero()) out.push_back(std::move(r));
      }
  return out;
}

BialgebraPresentation quotient_coproduct_preserving(const BialgebraPresentation& pres,
                                                    const CoalgebraSpec& d,
                                                    SliceOptions opt) {
  if (d.dim != pres.gen_matrix.size())
    throw error("coalgebra index range does not match the presentation");
  BialgebraPresentation out = pres;
  auto added = coalgebra_quotient_relations(
      d, [&](size_t i, size_t j) { return pres.gen_matrix[i][j]; }, pres.base.field);
  if (added.empty()) return out;
  std::vector<NCPoly> kept = prune_redundant(pres.base, added, opt);
  for (auto& r : kept) out.base.add_relation(r);
  out.base.canonicalize_relations();
  out.variant = Variant::Quotient;

  // the added relations must still generate a biideal
  if (!check_biideal(out, kept, opt, nullptr, ""))
    throw error("coproduct-preserving quotient is not a biideal");
  return out;
}

BialgebraPresentation quotient_calculus_preserving(const BialgebraPresentation& pres,
                                                   const CalculusSpec& cal,
                                                   SliceOptions opt) {
  size_t n = cal.points;
  if (pres.gen_matrix.size() != n)
    throw error("calculus quotient expects the basepoint-free finite-set comeasuring");
  for (const auto& row : pres.gen_matrix)
    for (const auto& e : row)
      if (e.term_count() != 1 || e.terms().begin()->first.size() != 1)
        throw error("calculus quotient expects a plain generator matrix");
  for (const auto& [i, j] : cal.edges)
    if (i == j || i >= n || j >= n) throw error("calculus edge set contains a diagonal pair");

  BialgebraPresentation out = pres;
  out.variant = Variant::Quotient;
  std::vector<NCPoly> added;
  for (const auto& [i, k] : cal.edges)
    for (size_t j = 0; j < n; ++j)
      for (size_t l = 0; l < n; ++l) {
        if (j == l) continue;
        if (cal.edges.count({j, l})) continue;
        added.push_back(pres.gen_matrix[i][j] * pres.gen_matrix[k][l]);
      }
  std::vector<NCPoly> kept = prune_redundant(pres.base, added, opt);
  for (auto& r : kept) out.base.add_relation(r);
  out.base.canonicalize_relations();

  if (!check_biideal(out, kept, opt, nullptr, ""))
    throw error("calculus quotient failed to stay a bialgebra");
  return out;
}

CoinvariantsResult coinvariants(const BialgebraPresentation& presM,
                                const BialgebraPresentation& quotient,
                                const std::vector<NCPoly>& pi, int L, SliceOptions opt) {
  ScalarField f = presM.base.field;
  if (pi.size() != presM.base.generators.size())
    throw error("pi must map every generator of M");

  // pi must send relations to relations
  int pw = 1;
  for (const auto& img : pi) pw = std::max(pw, quotient.base.weight(img));
  int rmax = 1;
  for (const auto& r : presM.base.relations) rmax = std::max(rmax, presM.base.weight(r));
  Slice sq_check(quotient.base, pw * rmax, opt);
  for (const auto& r : presM.base.relations)
    if (!sq_check.reduce(r.substitute(pi)).is_zero())
      throw error("pi is not a map of presentations: " + presM.base.poly_string(r));

  // Delta_L w = (pi (x) id) Delta w, left leg in the quotient, right leg in M.
  // One consistent reduction slice S covers every right leg that shows up.
  std::map<Word, TensorElement> deltas;
  int lq = 1, lm = L;
  for (const Word& w : enumerate_words(presM.base, L, opt)) {
    TensorElement dw = presM.coproduct_of_word(w);
    TensorElement pid(f);
    for (const auto& [k, c] : dw.terms()) {
      NCPoly left = NCPoly::monomial(k.first, Scalar::one(f)).substitute(pi);
      pid += TensorElement::of(left, NCPoly::monomial(k.second, Scalar::one(f))) * c;
    }
    lq = std::max(lq, max_left_weight(quotient.base, pid));
    lm = std::max(lm, max_right_weight(presM.base, pid));
    deltas.emplace(w, std::move(pid));
  }
  Slice sq(quotient.base, lq, opt);
  Slice sm(presM.base, lm, opt);
  std::vector<Word> basis;  // candidate columns: quotient-slice words of weight <= L
  for (const Word& w : sm.basis())
    if (presM.base.weight(w) <= L) basis.push_back(w);
  size_t m = basis.size();

  // rows indexed by reduced (left, right) word pairs; columns by basis words
  std::map<std::pair<Word, Word>, std::vector<Scalar>> rows;
  auto row_at = [&](const Word& a, const Word& b) -> std::vector<Scalar>& {
    auto it = rows.find({a, b});
    if (it == rows.end())
      it = rows.emplace(std::make_pair(a, b), std::vector<Scalar>(m, Scalar::zero(f))).first;
    return it->second;
  };
  for (size_t col = 0; col < m; ++col) {
    TensorElement resid = tensor_reduce(deltas.at(basis[col]), sq, sm);
    resid -= TensorElement::of(NCPoly::unit(f),
                               NCPoly::monomial(basis[col], Scalar::one(f)));
    for (const auto& [k, c] : resid.terms()) row_at(k.first, k.second)[col] += c;
  }

  // exact nullspace by Gauss-Jordan
  std::vector<std::vector<Scalar>> mat;
  for (auto& [k, row] : rows) mat.push_back(row);
  std::vector<int> pivot_of_col(m, -1);
  size_t rank = 0;
  for (size_t col = 0; col < m && rank < mat.size(); ++col) {
    size_t sel = rank;
    while (sel < mat.size() && mat[sel][col].is_zero()) ++sel;
    if (sel == mat.size()) continue;
    std::swap(mat[rank], mat[sel]);
    Scalar inv = mat[rank][col].inverse();
    for (size_t j = 0; j < m; ++j) mat[rank][j] *= inv;
    for (size_t r = 0; r < mat.size(); ++r) {
      if (r == rank || mat[r][col].is_zero()) continue;
      Scalar c = mat[r][col];
      for (size_t j = 0; j < m; ++j) mat[r][j] -= c * mat[rank][j];
    }
    pivot_of_col[col] = static_cast<int>(rank);
    ++rank;
  }

  CoinvariantsResult res;
  std::vector<std::vector<Scalar>> sols;
  for (size_t freec = 0; freec < m; ++freec) {
    if (pivot_of_col[freec] >= 0) continue;
    std::vector<Scalar> v(m, Scalar::zero(f));
    v[freec] = Scalar::one(f);
    for (size_t col = 0; col < m; ++col)
      if (pivot_of_col[col] >= 0)
        v[col] = -mat[static_cast<size_t>(pivot_of_col[col])][freec];
    NCPoly h(f);
    for (size_t col = 0; col < m; ++col) h.add_term(basis[col], v[col]);
    res.basis.push_back(h);
    sols.push_back(std::move(v));
  }

  // closure under the induced product within the weight bound
  res.product_closed = true;
  // row-reduce the solution matrix once for membership tests
  std::vector<std::vector<Scalar>> smat = sols;
  std::vector<int> spc(m, -1);
  size_t srank = 0;
  for (size_t col = 0; col < m && srank < smat.size(); ++col) {
    size_t sel = srank;
    while (sel < smat.size() && smat[sel][col].is_zero()) ++sel;
    if (sel == smat.size()) continue;
    std::swap(smat[srank], smat[sel]);
    Scalar inv = smat[srank][col].inverse();
    for (size_t j = 0; j < m; ++j) smat[srank][j] *= inv;
    for (size_t r = 0; r < smat.size(); ++r) {
      if (r == srank || smat[r][col].is_zero()) continue;
      Scalar c = smat[r][col];
      for (size_t j = 0; j < m; ++j) smat[r][j] -= c * smat[srank][j];
    }
    spc[col] = static_cast<int>(srank);
    ++srank;
  }
  auto in_span = [&](const NCPoly& p) {
    std::vector<Scalar> v(m, Scalar::zero(f));
    for (const auto& [w, c] : p.terms()) {
      auto it = std::find(basis.begin(), basis.end(), w);
      if (it == basis.end()) return false;
      v[static_cast<size_t>(it - basis.begin())] = c;
    }
    for (size_t col = 0; col < m; ++col) {
      if (v[col].is_zero()) continue;
      if (spc[col] < 0) return false;
      Scalar c = v[col];
      for (size_t j = 0; j < m; ++j) v[j] -= c * smat[static_cast<size_t>(spc[col])][j];
    }
    return true;
  };
  for (const auto& hi : res.basis)
    for (const auto& hj : res.basis) {
      if (presM.base.weight(hi) + presM.base.weight(hj) > L) continue;
      if (!in_span(sm.reduce(hi * hj))) res.product_closed = false;
    }
  return res;
}

IdealComparison compare_ideals(const Presentation& a, const Presentation& b, int L,
                               SliceOptions opt) {
  if (a.generators.size() != b.generators.size())
    throw error("compare_ideals requires identical generator sets");
  IdealComparison out;
  Slice sa(a, L, opt), sb(b, L, opt);
  out.rank_a = sa.ideal_rank();
  out.rank_b = sb.ideal_rank();
  out.a_in_b = true;
  for (const auto& r : a.relations)
    if (a.weight(r) <= L && !sb.reduce(r).is_zero()) out.a_in_b = false;
  out.b_in_a = true;
  for (const auto& r : b.relations)
    if (b.weight(r) <= L && !sa.reduce(r).is_zero()) out.b_in_a = false;
  out.equal = out.a_in_b && out.b_in_a && out.rank_a == out.rank_b;
  return out;
}

Report associativity_consistency(const BialgebraPresentation& m1, const AlgebraSpec& spec,
                                 int L, SliceOptions opt) {
  Report rep;
  rep.title = "associativity consistency";
  size_t n = spec.dim;
  ScalarField f = spec.field;
  const auto& T = m1.gen_matrix;
  Slice s(m1.base, L, opt);
  bool ok = true;
  std::string witness;
  for (size_t i = 0; i < n && ok; ++i)
    for (size_t j = 0; j < n && ok; ++j)
      for (size_t k = 0; k < n && ok; ++k)
        for (size_t l = 0; l < n; ++l) {
          NCPoly cubic(f);
          for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b)
              for (size_t c = 0; c < n; ++c) {
                if (spec.cval(a, b, c).is_zero()) continue;
                for (size_t d = 0; d < n; ++d) {
                  Scalar coef = spec.cval(a, b, c) * spec.cval(c, d, l);
                  if (!coef.is_zero()) cubic += (T[a][i] * T[b][j] * T[d][k]) * coef;
                }
              }
          NCPoly linear(f);
          for (size_t e = 0; e < n; ++e)
            for (size_t d = 0; d < n; ++d) {
              Scalar coef = spec.cval(i, j, e) * spec.cval(e, k, d);
              if (!coef.is_zero()) linear += T[l][d] * coef;
            }
          if (!s.reduce(cubic - linear).is_zero()) {
            ok = false;
            witness = "(i,j,k,l)=(" + std::to_string(i) + "," + std::to_string(j) + "," +
                      std::to_string(k) + "," + std::to_string(l) + ")";
            break;
          }
        }
  rep.add("double contraction agrees modulo the ideal", ok, witness);
  return rep;
}

}  // namespace qdiff
