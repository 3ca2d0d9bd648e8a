#include "qdiff/presets.hpp"

namespace qdiff::presets {

namespace {

// rewrites a presentation on a fresh generating set: new_gens names the new
// generators, expr gives each new generator as a polynomial in the old ones,
// old_in_new inverts that map
BialgebraPresentation change_generators(const BialgebraPresentation& pres,
                                        const std::vector<std::pair<std::string, std::string>>& new_gens,
                                        const std::vector<NCPoly>& expr,
                                        const std::vector<NCPoly>& old_in_new) {
  ScalarField f = pres.base.field;
  BialgebraPresentation out;
  out.variant = pres.variant;
  out.label = pres.label;
  out.base.field = f;
  for (const auto& [name, display] : new_gens) out.base.add_generator(name, 1, display);
  for (const auto& r : pres.base.relations) out.base.add_relation(r.substitute(old_in_new));
  out.base.canonicalize_relations();
  out.coproduct.assign(new_gens.size(), TensorElement(f));
  out.counit.assign(new_gens.size(), Scalar::zero(f));
  for (size_t g = 0; g < new_gens.size(); ++g) {
    out.coproduct[g] = pres.coproduct_of(expr[g]).substitute(old_in_new, old_in_new);
    out.counit[g] = pres.counit_of(expr[g]);
  }
  if (pres.coaction) {
    out.coaction.emplace();
    for (const auto& row : *pres.coaction) {
      out.coaction->emplace_back();
      for (const auto& e : row) out.coaction->back().push_back(e.substitute(old_in_new));
    }
  }
  for (const auto& row : pres.gen_matrix) {
    out.gen_matrix.emplace_back();
    for (const auto& e : row) out.gen_matrix.back().push_back(e.substitute(old_in_new));
  }
  return out;
}

// b, t, s, t3, t4, ... for the reduced line-quotient generators
std::pair<std::string, std::string> series_name(size_t i) {
  switch (i) {
    case 0: return {"b", "b"};
    case 1: return {"t", "t"};
    case 2: return {"s", "s"};
    default: return {"t" + std::to_string(i), "t_" + std::to_string(i)};
  }
}

BialgebraPresentation reduce_line_pres(const AlgebraSpec& spec, Variant v,
                                       const std::string& label) {
  BialgebraPresentation raw = build_variant(spec, v);
  raw.label = label;
  std::set<std::string> keep;
  unsigned N = static_cast<unsigned>(spec.dim);
  if (v == Variant::M1) {
    for (unsigned i = 0; i < N; ++i) keep.insert("t" + std::to_string(i) + "_1");
  } else {
    for (unsigned i = 1; i < N; ++i) keep.insert("t" + std::to_string(i) + "_1");
    if (v == Variant::M) keep.insert("b1");
  }
  BialgebraPresentation red = eliminate_generators(raw, keep);
  if (v == Variant::M1) {
    for (unsigned i = 0; i < N; ++i) {
      auto [name, display] = series_name(i);
      rename_generator(red, "t" + std::to_string(i) + "_1", name, display);
    }
  } else {
    if (v == Variant::M) rename_generator(red, "b1", "b", "b");
    for (unsigned i = 1; i < N; ++i) {
      auto [name, display] = series_name(i);
      rename_generator(red, "t" + std::to_string(i) + "_1", name, display);
    }
  }
  return red;
}

}  // namespace

AlgebraSpec nilpotent_line(ScalarField f, unsigned N) {
  if (N < 2) throw error("nilpotent line needs N >= 2");
  AlgebraSpec s = AlgebraSpec::make(f, N, 0);
  for (size_t i = 0; i < N; ++i)
    for (size_t j = 0; j < N; ++j)
      if (i + j < N) s.cref(i, j, i + j) = Scalar::one(f);
  return s;
}

AlgebraSpec cyclic_line(ScalarField f, unsigned N) {
  if (N < 2) throw error("roots of unity need N >= 2");
  AlgebraSpec s = AlgebraSpec::make(f, N, 0);
  for (size_t i = 0; i < N; ++i)
    for (size_t j = 0; j < N; ++j)
      s.cref(i, j, (i + j) % N) = Scalar::one(f);
  return s;
}

AlgebraSpec finite_set(ScalarField f, size_t n) {
  if (n < 1) throw error("finite set needs n >= 1");
  AlgebraSpec s = AlgebraSpec::make(f, n);
  for (size_t i = 0; i < n; ++i) s.cref(i, i, i) = Scalar::one(f);
  return s;
}

AlgebraSpec finite_set_basepoint(ScalarField f, size_t n) {
  if (n < 2) throw error("basepoint form needs n >= 2");
  AlgebraSpec s = AlgebraSpec::make(f, n, 0);
  for (size_t j = 0; j < n; ++j) {
    s.cref(0, j, j) = Scalar::one(f);
    s.cref(j, 0, j) = Scalar::one(f);
  }
  for (size_t i = 1; i < n; ++i) s.cref(i, i, i) = Scalar::one(f);
  return s;
}

BialgebraPresentation build_variant(const AlgebraSpec& spec, Variant v) {
  switch (v) {
    case Variant::M1: return build_M1(spec);
    case Variant::M: return build_M(spec);
    case Variant::M0: return build_M0(spec);
    default: throw error("build_variant: m1, m or m0 expected");
  }
}

BialgebraPresentation nilpotent_line_pres(ScalarField f, unsigned N, Variant v) {
  std::string label = N == 2 ? "fermion" : "anyon:" + std::to_string(N);
  if (v == Variant::M1 && N == 2) {
    // the paper's 2x2 matrix naming for the fermionic M1
    BialgebraPresentation p = build_M1(nilpotent_line(f, 2));
    p.label = label;
    rename_generator(p, "t0_0", "a", "a");
    rename_generator(p, "t0_1", "b", "b");
    rename_generator(p, "t1_0", "c", "c");
    rename_generator(p, "t1_1", "d", "d");
    return p;
  }
  return reduce_line_pres(nilpotent_line(f, N), v, label);
}

BialgebraPresentation cyclic_line_pres(ScalarField f, unsigned N, Variant v) {
  return reduce_line_pres(cyclic_line(f, N), v, "rootsof1:" + std::to_string(N));
}

BialgebraPresentation finite_set_M1(ScalarField f, size_t n) {
  BialgebraPresentation p = build_M1(finite_set(f, n));
  p.label = "finiteset:" + std::to_string(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      rename_generator(p, "t" + std::to_string(i) + "_" + std::to_string(j),
                       "tau" + std::to_string(i) + "_" + std::to_string(j),
                       "tau^" + std::to_string(i) + "_" + std::to_string(j));
  return p;
}

BialgebraPresentation finite_set_M_free(ScalarField f, size_t n) {
  BialgebraPresentation p = finite_set_M1(f, n);
  p.label = "finiteset:" + std::to_string(n) + ":free";
  p.variant = Variant::Quotient;
  for (size_t i = 0; i < n; ++i) {
    NCPoly row = -NCPoly::unit(f);
    for (size_t j = 0; j < n; ++j) row += p.gen_matrix[i][j];
    p.base.add_relation(row);
  }
  p.base.canonicalize_relations();
  return p;
}

BialgebraPresentation two_point_bundle_M(ScalarField f) {
  BialgebraPresentation m = build_M(finite_set_basepoint(f, 2));
  m.label = "twopoint-bundle";
  // p = b + t and q = b are projectors generating M
  auto t = *m.base.find_generator("t1_1");
  auto b = *m.base.find_generator("b1");
  std::vector<NCPoly> expr(2, NCPoly(f));
  std::vector<std::pair<std::string, std::string>> names{{"p", "p"}, {"q", "q"}};
  expr[0] = m.base.gen(b) + m.base.gen(t);
  expr[1] = m.base.gen(b);
  std::vector<NCPoly> old_in_new(m.base.generators.size(), NCPoly(f));
  Presentation target;
  target.field = f;
  target.add_generator("p");
  target.add_generator("q");
  old_in_new[t] = target.gen(0) - target.gen(1);  // t = p - q
  old_in_new[b] = target.gen(1);                  // b = q
  return change_generators(m, names, expr, old_in_new);
}

BasisChange fourier_change(ScalarField f, unsigned N) {
  Scalar omega = Scalar::zero(f);
  if (N == 2) {
    omega = -Scalar::one(f);
  } else {
    if (f.kind != FieldKind::cyclotomic || f.n != N)
      throw error("fourier_change needs the cyclotomic(" + std::to_string(N) + ") field");
    omega = Scalar::q(f);
  }
  Scalar ninv = Scalar::integer(f, static_cast<long>(N)).inverse();
  BasisChange bc;
  bc.Lambda = ScalarMatrix(N, N, f);
  for (size_t a = 0; a < N; ++a)
    for (size_t j = 0; j < N; ++j)
      bc.Lambda.at(a, j) = omega.pow(-static_cast<long>(a * j)) * ninv;
  return bc;
}

}  // namespace qdiff::presets
