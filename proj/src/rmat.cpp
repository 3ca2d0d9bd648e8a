#include "qdiff/rmat.hpp"

#include <algorithm>
#include <sstream>

namespace qdiff {

namespace {

std::string tuple_str(std::initializer_list<size_t> xs) {
  std::string s = "(";
  bool first = true;
  for (size_t x : xs) {
    if (!first) s += ",";
    s += std::to_string(x);
    first = false;
  }
  return s + ")";
}

}  // namespace

size_t RMatrix::pos(const MultiIndex& m) const {
  for (size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == m) return i;
  throw error("R-matrix label out of range: " + m.str());
}

Scalar RMatrix::at(size_t i, size_t j, size_t k, size_t l) const {
  auto it = entries.find({i, j, k, l});
  return it == entries.end() ? Scalar::zero(field) : it->second;
}

void RMatrix::set(size_t i, size_t j, size_t k, size_t l, const Scalar& v) {
  if (v.is_zero()) {
    entries.erase({i, j, k, l});
    return;
  }
  if (graded && !(labels[i] + labels[k] == labels[j] + labels[l]))
    throw error("graded R-matrix entry violates degree conservation");
  entries[{i, j, k, l}] = v;
}

ScalarMatrix RMatrix::as_matrix() const {
  size_t n = size();
  ScalarMatrix m(n * n, n * n, field);
  for (const auto& [k, v] : entries) m.at(k[0] * n + k[2], k[1] * n + k[3]) = v;
  return m;
}

RMatrix RMatrix::from_matrix(const RMatrix& like, const ScalarMatrix& m) {
  RMatrix out;
  out.field = like.field;
  out.labels = like.labels;
  out.graded = like.graded;
  size_t n = like.size();
  for (size_t r = 0; r < n * n; ++r)
    for (size_t c = 0; c < n * n; ++c)
      if (!m.at(r, c).is_zero()) out.set(r / n, c / n, r % n, c % n, m.at(r, c));
  return out;
}

RMatrix RMatrix::inversed() const { return from_matrix(*this, as_matrix().inverse()); }

RMatrix RMatrix::transpose2() const {
  RMatrix out;
  out.field = field;
  out.labels = labels;
  out.graded = false;  // the transpose usually breaks conservation
  for (const auto& [k, v] : entries) out.entries[{k[0], k[1], k[3], k[2]}] = v;
  return out;
}

RMatrix kronecker_R(ScalarField f, const std::vector<MultiIndex>& labels) {
  RMatrix r;
  r.field = f;
  r.labels = labels;
  for (size_t i = 0; i < labels.size(); ++i)
    for (size_t k = 0; k < labels.size(); ++k)
      r.set(i, i, k, k, Scalar::one(f));
  return r;
}

namespace {

using Key6 = std::array<size_t, 6>;

// sum of A_12 B_13 C_23 over the contracted indices, keyed by (abc|ijk)
std::map<Key6, Scalar> chain_12_13_23(const RMatrix& A, const RMatrix& B, const RMatrix& C) {
  std::map<Key6, Scalar> out;
  std::map<size_t, std::vector<std::array<size_t, 4>>> B_by_u1, C_by_u1;
  for (const auto& [k, v] : B.entries) B_by_u1[k[0]].push_back(k);
  for (const auto& [k, v] : C.entries) C_by_u1[k[0]].push_back(k);
  for (const auto& [ka, va] : A.entries) {
    auto itb = B_by_u1.find(ka[1]);
    if (itb == B_by_u1.end()) continue;
    auto itc = C_by_u1.find(ka[3]);
    if (itc == C_by_u1.end()) continue;
    for (const auto& kb : itb->second)
      for (const auto& kc : itc->second) {
        if (kc[2] != kb[3]) continue;
        Key6 key{ka[0], ka[2], kb[2], kb[1], kc[1], kc[3]};
        Scalar v = va * B.entries.at(kb) * C.entries.at(kc);
        auto it = out.find(key);
        if (it == out.end()) {
          out.emplace(key, v);
        } else {
          it->second += v;
          if (it->second.is_zero()) out.erase(it);
        }
      }
  }
  return out;
}

// sum of X_23 Y_13 Z_12 over the contracted indices, keyed by (abc|ijk)
std::map<Key6, Scalar> chain_23_13_12(const RMatrix& X, const RMatrix& Y, const RMatrix& Z) {
  std::map<Key6, Scalar> out;
  std::map<size_t, std::vector<std::array<size_t, 4>>> Y_by_u2, Z_by_u1;
  for (const auto& [k, v] : Y.entries) Y_by_u2[k[2]].push_back(k);
  for (const auto& [k, v] : Z.entries) Z_by_u1[k[0]].push_back(k);
  for (const auto& [kx, vx] : X.entries) {
    // X^b_q^c_r, Y^a_l^r_k with Y.u2 = r, Z^l_i^q_j with Z.u1 = l, Z.u2 = q
    auto ity = Y_by_u2.find(kx[3]);
    if (ity == Y_by_u2.end()) continue;
    for (const auto& ky : ity->second) {
      auto itz = Z_by_u1.find(ky[1]);
      if (itz == Z_by_u1.end()) continue;
      for (const auto& kz : itz->second) {
        if (kz[2] != kx[1]) continue;
        Key6 key{ky[0], kx[0], kx[2], kz[1], kz[3], ky[3]};
        Scalar v = vx * Y.entries.at(ky) * Z.entries.at(kz);
        auto it = out.find(key);
        if (it == out.end()) {
          out.emplace(key, v);
        } else {
          it->second += v;
          if (it->second.is_zero()) out.erase(it);
        }
      }
    }
  }
  return out;
}

// windows on which a graded check is exact: every contraction stays inside
bool key_in_window(const RMatrix& R, const Key6& key) {
  if (!R.graded) return true;
  int D = 0;
  for (const auto& l : R.labels) D = std::max(D, l.degree());
  int t = R.labels[key[3]].degree() + R.labels[key[4]].degree() + R.labels[key[5]].degree();
  return t <= D;
}

bool maps_equal_on_window(const RMatrix& R, const std::map<Key6, Scalar>& a,
                          const std::map<Key6, Scalar>& b, std::string* witness) {
  auto check = [&](const std::map<Key6, Scalar>& x, const std::map<Key6, Scalar>& y) {
    for (const auto& [k, v] : x) {
      if (!key_in_window(R, k)) continue;
      auto it = y.find(k);
      Scalar other = it == y.end() ? Scalar::zero(R.field) : it->second;
      if (v != other) {
        if (witness)
          *witness = "component " + tuple_str({k[0], k[1], k[2], k[3], k[4], k[5]});
        return false;
      }
    }
    return true;
  };
  return check(a, b) && check(b, a);
}

}  // namespace

Report qybe_check(const RMatrix& R) {
  Report rep;
  rep.title = "qybe_check";
  std::string witness;
  bool ok = maps_equal_on_window(R, chain_12_13_23(R, R, R), chain_23_13_12(R, R, R),
                                 &witness);
  rep.add(R.graded ? "QYBE on degree-compatible windows" : "QYBE", ok, witness);
  return rep;
}

RMatrix biinvert(const RMatrix& R) {
  RMatrix rt2 = R.transpose2();
  RMatrix inv = rt2.inversed();
  ScalarMatrix residual = rt2.as_matrix() * inv.as_matrix();
  if (!(residual == ScalarMatrix::identity(R.size() * R.size(), R.field)))
    throw error("biinvert residual check failed");
  RMatrix out = inv.transpose2();
  out.graded = true;
  for (const auto& [k, v] : out.entries)
    if (!(out.labels[k[0]] + out.labels[k[2]] == out.labels[k[1]] + out.labels[k[3]]))
      out.graded = false;  // keep the entry, drop the conservation claim
  if (!R.graded) out.graded = false;
  return out;
}

Scalar CTensor::at(size_t i, size_t j, size_t k) const {
  auto it = entries.find({i, j, k});
  return it == entries.end() ? Scalar::zero(field) : it->second;
}

void CTensor::set(size_t i, size_t j, size_t k, const Scalar& v) {
  if (v.is_zero()) {
    entries.erase({i, j, k});
  } else {
    entries[{i, j, k}] = v;
  }
}

CTensor CTensor::from_spec(const AlgebraSpec& spec) {
  CTensor c;
  c.field = spec.field;
  for (size_t i = 0; i < spec.dim; ++i) c.labels.push_back({static_cast<int>(i), 0});
  for (size_t i = 0; i < spec.dim; ++i)
    for (size_t j = 0; j < spec.dim; ++j)
      for (size_t k = 0; k < spec.dim; ++k) c.set(i, j, k, spec.cval(i, j, k));
  return c;
}

CTensor CTensor::line(ScalarField f, int D) {
  CTensor c;
  c.field = f;
  c.graded = true;
  for (int i = 0; i <= D; ++i) c.labels.push_back({i, 0});
  for (int i = 0; i <= D; ++i)
    for (int j = 0; i + j <= D; ++j)
      c.set(static_cast<size_t>(i), static_cast<size_t>(j),
            static_cast<size_t>(i + j), Scalar::one(f));
  return c;
}

CTensor CTensor::qplane(const Scalar& q, int D) {
  CTensor c;
  c.field = q.field();
  c.graded = true;
  for (int d = 0; d <= D; ++d)
    for (int a = d; a >= 0; --a) c.labels.push_back({a, d - a});
  auto pos = [&](const MultiIndex& m) {
    for (size_t i = 0; i < c.labels.size(); ++i)
      if (c.labels[i] == m) return i;
    throw error("qplane label");
  };
  for (size_t i = 0; i < c.labels.size(); ++i)
    for (size_t j = 0; j < c.labels.size(); ++j) {
      MultiIndex sum = c.labels[i] + c.labels[j];
      if (sum.degree() > D) continue;
      c.set(i, j, pos(sum), q.pow(static_cast<long>(c.labels[i].b) * c.labels[j].a));
    }
  return c;
}

Report covariance_check(const RMatrix& R, const CTensor& c) {
  Report rep;
  rep.title = "covariance_check";
  size_t n = R.size();
  if (c.labels != R.labels) {
    rep.add("index sets aligned", false);
    return rep;
  }
  int D = 0;
  for (const auto& l : R.labels) D = std::max(D, l.degree());
  bool graded = R.graded || c.graded;
  auto deg = [&](size_t i) { return R.labels[i].degree(); };

  bool ok1 = true;
  std::string w1;
  for (size_t i = 0; i < n && ok1; ++i)
    for (size_t j = 0; j < n && ok1; ++j)
      for (size_t k = 0; k < n && ok1; ++k)
        for (size_t m = 0; m < n && ok1; ++m)
          for (size_t nn = 0; nn < n; ++nn) {
            if (graded && deg(i) + deg(j) + deg(nn) > D) continue;
            Scalar lhs = Scalar::zero(R.field), rhs = lhs;
            for (size_t a = 0; a < n; ++a) lhs += c.at(i, j, a) * R.at(k, a, m, nn);
            for (size_t a = 0; a < n; ++a)
              for (size_t b = 0; b < n; ++b) {
                if (c.at(a, b, k).is_zero()) continue;
                for (size_t cc = 0; cc < n; ++cc)
                  rhs += c.at(a, b, k) * R.at(a, i, m, cc) * R.at(b, j, cc, nn);
              }
            if (lhs != rhs) {
              ok1 = false;
              w1 = tuple_str({i, j, k, m, nn});
              break;
            }
          }
  rep.add("c_ij^a R^k_a^m_n = c_ab^k R^a_i^m_c R^b_j^c_n", ok1, w1);

  bool ok2 = true;
  std::string w2;
  for (size_t i = 0; i < n && ok2; ++i)
    for (size_t j = 0; j < n && ok2; ++j)
      for (size_t k = 0; k < n && ok2; ++k)
        for (size_t m = 0; m < n && ok2; ++m)
          for (size_t nn = 0; nn < n; ++nn) {
            if (graded && deg(nn) + deg(j) + deg(k) > D) continue;
            Scalar lhs = Scalar::zero(R.field), rhs = lhs;
            for (size_t a = 0; a < n; ++a) lhs += c.at(j, k, a) * R.at(m, nn, i, a);
            for (size_t a = 0; a < n; ++a)
              for (size_t b = 0; b < n; ++b) {
                if (c.at(a, b, i).is_zero()) continue;
                for (size_t cc = 0; cc < n; ++cc)
                  rhs += c.at(a, b, i) * R.at(m, cc, b, k) * R.at(cc, nn, a, j);
              }
            if (lhs != rhs) {
              ok2 = false;
              w2 = tuple_str({i, j, k, m, nn});
              break;
            }
          }
  rep.add("c_jk^a R^m_n^i_a = c_ab^i R^m_c^b_k R^c_n^a_j", ok2, w2);
  return rep;
}

Report rprime_check(const RMatrix& R, const RMatrix& Rp, const CTensor& c) {
  Report rep;
  rep.title = "rprime_check";
  std::string w;
  bool mixed1 = maps_equal_on_window(R, chain_12_13_23(Rp, R, R),
                                     chain_23_13_12(R, R, Rp), &w);
  rep.add("R'_12 R_13 R_23 = R_23 R_13 R'_12", mixed1, w);
  std::string w2;
  bool mixed2 = maps_equal_on_window(R, chain_12_13_23(R, R, Rp),
                                     chain_23_13_12(Rp, R, R), &w2);
  rep.add("R_12 R_13 R'_23 = R'_23 R_13 R_12", mixed2, w2);

  size_t n = R.size();
  int D = 0;
  for (const auto& l : R.labels) D = std::max(D, l.degree());
  bool ok = true;
  std::string w3;
  for (size_t i = 0; i < n && ok; ++i)
    for (size_t j = 0; j < n && ok; ++j)
      for (size_t k = 0; k < n; ++k) {
        if ((R.graded || c.graded) &&
            R.labels[i].degree() + R.labels[j].degree() > D)
          continue;
        Scalar rhs = Scalar::zero(R.field);
        for (size_t a = 0; a < n; ++a)
          for (size_t b = 0; b < n; ++b) rhs += c.at(b, a, k) * Rp.at(a, i, b, j);
        if (c.at(i, j, k) != rhs) {
          ok = false;
          w3 = tuple_str({i, j, k});
          break;
        }
      }
  rep.add("braided commutativity c_ij^k = c_ba^k R'^a_i^b_j", ok, w3);
  return rep;
}

RMatrix line_R(const Scalar& q, int D, LineRKind kind) {
  if (D < 1) throw error("line R-matrix needs D >= 1");
  ScalarField f = q.field();
  RMatrix r;
  r.field = f;
  r.graded = true;
  for (int i = 0; i <= D; ++i) r.labels.push_back({i, 0});
  size_t n = r.labels.size();
  if (kind == LineRKind::braided) {
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k < n; ++k)
        r.set(i, i, k, k, q.pow(static_cast<long>(i) * static_cast<long>(k)));
    return r;
  }
  // conformally braided line: delta cases for a lower index 0, and the
  // q-binomial component formula when both lower indices are positive
  for (size_t k = 0; k <= static_cast<size_t>(D); ++k) {
    r.set(0, 0, k, k, Scalar::one(f));  // R^i_0^j_k = delta^i_0 delta^j_k
    if (k > 0) r.set(k, k, 0, 0, Scalar::one(f));  // R^i_j^k_0 = delta^i_j delta^k_0
  }
  for (int j = 1; j <= D; ++j)
    for (int l = 1; l <= D; ++l)
      for (int i = 0; i <= j; ++i) {
        int k = j + l - i;
        if (k < l || k > D) continue;
        // [j choose j-i]_q q^{li} (1-q)^{j-i} [k-1]!/[l-1]!
        Scalar v = q_binomial(static_cast<unsigned>(j), static_cast<unsigned>(j - i), q) *
                   q.pow(static_cast<long>(l) * i) *
                   (Scalar::one(f) - q).pow(j - i);
        for (int m = l; m < k; ++m) v *= q_int(static_cast<unsigned>(m), q);
        r.set(static_cast<size_t>(i), static_cast<size_t>(j), static_cast<size_t>(k),
              static_cast<size_t>(l), v);
      }
  return r;
}

std::vector<std::pair<std::pair<MultiIndex, MultiIndex>, Scalar>> qplane_psi(
    const Scalar& q, const MultiIndex& left, const MultiIndex& right) {
  ScalarField f = q.field();
  using Terms = std::map<std::pair<MultiIndex, MultiIndex>, Scalar>;
  auto add = [&](Terms& t, MultiIndex a, MultiIndex b, const Scalar& v) {
    if (v.is_zero()) return;
    auto key = std::make_pair(a, b);
    auto it = t.find(key);
    if (it == t.end()) {
      t.emplace(key, v);
    } else {
      it->second += v;
      if (it->second.is_zero()) t.erase(it);
    }
  };

  // psi(y^j (x) x^k) by the two displayed recursions, memoized per call
  std::map<std::pair<int, int>, Terms> cache;
  std::function<const Terms&(int, int)> psi_yx = [&](int j, int k) -> const Terms& {
    auto key = std::make_pair(j, k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Terms out;
    if (j == 0) {
      add(out, {k, 0}, {0, 0}, Scalar::one(f));
    } else if (k == 0) {
      add(out, {0, 0}, {0, j}, Scalar::one(f));
    } else {
      for (const auto& [legs, v] : psi_yx(j, k - 1)) {
        // x on the left of the first leg
        add(out, {legs.first.a + 1, legs.first.b}, legs.second,
            v * q.pow(static_cast<long>(j)));
      }
      Scalar coef = (q * q - Scalar::one(f)) *
                    q_int(static_cast<unsigned>(j), q * q) *
                    q.pow(2L * (k - 1));
      for (const auto& [legs, v] : psi_yx(j - 1, k - 1)) {
        // y on the left of the first leg, x on the right of the second
        MultiIndex l1{legs.first.a, legs.first.b + 1};
        Scalar reorder1 = q.pow(static_cast<long>(legs.first.a));
        MultiIndex l2{legs.second.a + 1, legs.second.b};
        Scalar reorder2 = q.pow(static_cast<long>(legs.second.b));
        add(out, l1, l2, v * coef * reorder1 * reorder2);
      }
    }
    return cache.emplace(key, std::move(out)).first->second;
  };

  Terms out;
  if (left == MultiIndex{0, 0}) {
    add(out, right, {0, 0}, Scalar::one(f));
  } else if (right == MultiIndex{0, 0}) {
    add(out, {0, 0}, left, Scalar::one(f));
  } else {
    int i = left.a, j = left.b, k = right.a, l = right.b;
    Scalar pref = q.pow(static_cast<long>(i) * (2 * k + l - j) +
                        static_cast<long>(l) * (2 * j - k));
    for (const auto& [legs, v] : psi_yx(j, k)) {
      // y^l on the left of the first leg, x^i on the right of the second
      MultiIndex l1{legs.first.a, legs.first.b + l};
      Scalar reorder1 = q.pow(static_cast<long>(l) * legs.first.a);
      MultiIndex l2{legs.second.a + i, legs.second.b};
      Scalar reorder2 = q.pow(static_cast<long>(legs.second.b) * i);
      add(out, l1, l2, v * pref * reorder1 * reorder2);
    }
  }
  return {out.begin(), out.end()};
}

RMatrix qplane_braiding(const Scalar& q, int D) {
  if (q.is_zero()) throw error("the quantum plane needs q != 0");
  RMatrix r;
  r.field = q.field();
  r.graded = true;
  for (int d = 0; d <= D; ++d)
    for (int a = d; a >= 0; --a) r.labels.push_back({a, d - a});
  for (size_t i = 0; i < r.labels.size(); ++i)
    for (size_t j = 0; j < r.labels.size(); ++j) {
      if (r.labels[i].degree() + r.labels[j].degree() > D) continue;
      // psi(e_i (x) e_j) = e_b (x) e_a R^a_i^b_j
      for (const auto& [legs, v] : qplane_psi(q, r.labels[i], r.labels[j]))
        r.set(r.pos(legs.second), i, r.pos(legs.first), j, v);
    }
  return r;
}

Scalar DualQTFunctional::pair_words(const BialgebraPresentation& pres, const Word& a,
                                    const Word& b) const {
  auto key = std::make_pair(a, b);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  ScalarField f = pres.base.field;
  Scalar out = Scalar::zero(f);
  if (a.empty()) {
    out = pres.counit_of_word(b);
  } else if (b.empty()) {
    out = pres.counit_of_word(a);
  } else if (b.size() > 1) {
    // R(a, b0 rest) = R(a(1), rest) R(a(2), b0)
    Word b0{b.front()};
    Word rest(b.begin() + 1, b.end());
    TensorElement da = pres.coproduct_of_word(a);
    for (const auto& [legs, c] : da.terms())
      out += c * pair_words(pres, legs.first, rest) * pair_words(pres, legs.second, b0);
  } else if (a.size() > 1) {
    // R(a0 rest, b) = R(a0, b(1)) R(rest, b(2))
    Word a0{a.front()};
    Word rest(a.begin() + 1, a.end());
    TensorElement db = pres.coproduct_of_word(b);
    for (const auto& [legs, c] : db.terms())
      out += c * pair_words(pres, a0, legs.first) * pair_words(pres, rest, legs.second);
  } else {
    auto jt = table.find({a[0], b[0]});
    out = jt == table.end() ? Scalar::zero(f) : jt->second;
  }
  cache.emplace(std::move(key), out);
  return out;
}

Scalar DualQTFunctional::pair(const BialgebraPresentation& pres, const NCPoly& a,
                              const NCPoly& b) const {
  Scalar out = Scalar::zero(pres.base.field);
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) out += ca * cb * pair_words(pres, wa, wb);
  return out;
}

FRTResult build_M1R(const RMatrix& R, const AlgebraSpec& spec, Variant variant,
                    SliceOptions opt) {
  if (R.size() != spec.dim) throw error("R-matrix labels do not match the algebra basis");
  Report q = qybe_check(R);
  if (!q.pass()) throw error("build_M1R precondition failed: QYBE");
  Report cov = covariance_check(R, CTensor::from_spec(spec));
  if (!cov.pass())
    throw error("build_M1R precondition failed: covariance (" +
                cov.first_failure()->witness + ")");

  FRTResult out;
  out.pres = variant == Variant::M1   ? build_M1(spec)
             : variant == Variant::M  ? build_M(spec)
                                      : build_M0(spec);
  out.pres.label = "M1R:" + variant_name(out.pres.variant) + ":" + out.pres.label;
  size_t n = spec.dim;
  ScalarField f = spec.field;
  const auto& T = out.pres.gen_matrix;

  // FRT family mapped through the variant: R^i_a^j_b t^a_k t^b_l = t^j_b t^i_a R^a_k^b_l
  std::vector<NCPoly> frt;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k)
        for (size_t l = 0; l < n; ++l) {
          NCPoly r(f);
          for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b) {
              Scalar v = R.at(i, a, j, b);
              if (!v.is_zero()) r += (T[a][k] * T[b][l]) * v;
              Scalar w = R.at(a, k, b, l);
              if (!w.is_zero()) r -= (T[j][b] * T[i][a]) * w;
            }
          if (!r.is_zero()) frt.push_back(std::move(r));
        }
  for (auto& r : prune_redundant(out.pres.base, frt, opt)) out.pres.base.add_relation(r);
  out.pres.base.canonicalize_relations();

  // pairing table on the generator grid
  std::map<uint32_t, std::pair<size_t, size_t>> grid;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      const NCPoly& e = T[i][j];
      if (e.term_count() == 1 && e.terms().begin()->first.size() == 1 &&
          e.terms().begin()->second.is_one())
        grid[e.terms().begin()->first[0]] = {i, j};
    }
  for (const auto& [g, ij] : grid)
    for (const auto& [h, kl] : grid) {
      Scalar v = R.at(ij.first, ij.second, kl.first, kl.second);
      if (!v.is_zero()) out.pairing.table[{g, h}] = v;
    }
  return out;
}

Report dualqt_verify(const FRTResult& frt, int L, SliceOptions opt) {
  Report rep;
  rep.title = "dualqt_verify(" + frt.pres.label + ", L=" + std::to_string(L) + ")";
  const Presentation& P = frt.pres.base;
  ScalarField f = P.field;

  // (i)+(ii): the pairing kills the ideal in both slots
  std::vector<Word> words = enumerate_words(P, L, opt);
  bool kills = true;
  std::string w1;
  for (size_t ri = 0; ri < P.relations.size() && kills; ++ri) {
    for (const Word& w : words) {
      NCPoly wp = NCPoly::monomial(w, Scalar::one(f));
      if (!frt.pairing.pair(frt.pres, P.relations[ri], wp).is_zero() ||
          !frt.pairing.pair(frt.pres, wp, P.relations[ri]).is_zero()) {
        kills = false;
        w1 = "relation " + std::to_string(ri) + " against " + P.word_string(w);
        break;
      }
    }
  }
  rep.add("pairing vanishes on the ideal (both slots)", kills, w1);

  // (iii) quasi-commutativity on generator pairs
  std::map<int, Slice> slices;
  auto slice_at = [&](int l) -> const Slice& {
    auto it = slices.find(l);
    if (it == slices.end()) it = slices.emplace(l, Slice(P, l, opt)).first;
    return it->second;
  };
  bool qc = true;
  std::string w2;
  for (uint32_t g = 0; g < P.generators.size() && qc; ++g)
    for (uint32_t h = 0; h < P.generators.size(); ++h) {
      TensorElement da = frt.pres.coproduct[g], db = frt.pres.coproduct[h];
      NCPoly diff(f);
      for (const auto& [al, ac] : da.terms())
        for (const auto& [bl, bc] : db.terms()) {
          // b(1) a(1) R(a(2), b(2)) - R(a(1), b(1)) a(2) b(2)
          Word left(bl.first);
          left.insert(left.end(), al.first.begin(), al.first.end());
          diff.add_term(left, ac * bc * frt.pairing.pair_words(frt.pres, al.second, bl.second));
          Word right(al.second);
          right.insert(right.end(), bl.second.begin(), bl.second.end());
          diff.add_term(right, -(ac * bc * frt.pairing.pair_words(frt.pres, al.first, bl.first)));
        }
      int need = std::max(P.weight(diff), 1);
      if (!slice_at(need).reduce(diff).is_zero()) {
        qc = false;
        w2 = "generators " + P.generators[g].name + ", " + P.generators[h].name;
        break;
      }
    }
  rep.add("quasi-commutativity on generator pairs", qc, w2);
  return rep;
}

FRTResult build_M0R_line(const Scalar& q, int D) {
  ScalarField f = q.field();
  TruncatedGradedPresentation tg = build_M0_line(f, D);
  FRTResult out;
  out.pres = tg.pres;
  out.pres.label = "conformal_line:" + std::to_string(D);
  auto t = [&](int i) { return tg.t_gen.at({i, 0}); };

  // q t_j t_i = sum_k [i+k choose k]_q ([j-1]!/[j-k-1]!) q^{i(j-k)} (1-q)^k t_{i+k} t_{j-k}
  for (int i = 1; i <= D; ++i)
    for (int j = 1; j <= D && i + j - 1 <= D; ++j) {
      NCPoly r = (out.pres.base.gen(t(j)) * out.pres.base.gen(t(i))) * q;
      for (int k = 0; k <= j - 1; ++k) {
        Scalar coef = q_binomial(static_cast<unsigned>(i + k), static_cast<unsigned>(k), q) *
                      q.pow(static_cast<long>(i) * (j - k)) *
                      (Scalar::one(f) - q).pow(k);
        for (int m = j - k; m <= j - 1; ++m) coef *= q_int(static_cast<unsigned>(m), q);
        r -= (out.pres.base.gen(t(i + k)) * out.pres.base.gen(t(j - k))) * coef;
      }
      out.pres.base.add_relation(r);
    }
  out.pres.base.canonicalize_relations();

  // R(t_i, t_j) = q delta^i_1 delta^j_1
  out.pairing.table[{t(1), t(1)}] = q;
  return out;
}

TruncatedGradedPresentation build_MR_qplane(const Scalar& q, int D, Variant variant,
                                            SliceOptions opt) {
  TruncatedGradedPresentation tg =
      variant == Variant::M ? build_M_qplane(q, D) : build_M0_qplane(q, D);
  RMatrix R = qplane_braiding(q, D);
  ScalarField f = q.field();
  const Presentation& P0 = tg.pres.base;
  Scalar q2 = q * q;

  auto sgen = [&](const MultiIndex& m) -> NCPoly {
    auto it = tg.s_gen.find(m);
    return it == tg.s_gen.end() ? NCPoly(f) : P0.gen(it->second);
  };
  auto tgen = [&](const MultiIndex& m) -> NCPoly {
    auto it = tg.t_gen.find(m);
    return it == tg.t_gen.end() ? NCPoly(f) : P0.gen(it->second);
  };

  std::vector<NCPoly> added;
  for (const MultiIndex& I : tg.labels)
    for (const MultiIndex& K : tg.labels) {
      if (I.degree() + K.degree() > D) continue;
      if (sgen(I).is_zero() || sgen(K).is_zero()) continue;  // (0,0) absent in M0
      NCPoly f1(f), f2(f), f3(f), f4(f);
      for (const auto& [key, v] : R.entries) {
        if (!(R.labels[key[0]] == I) || !(R.labels[key[2]] == K)) continue;
        const MultiIndex& A = R.labels[key[1]];
        const MultiIndex& C = R.labels[key[3]];
        f1 += (sgen(A) * sgen(C)) * v;
        f2 += (tgen(A) * tgen(C)) * v;
        f3 += (sgen(A) * tgen(C)) * v;
        f4 += (tgen(A) * sgen(C)) * v;
      }
      f1 -= (sgen(K) * sgen(I)) * q2;
      f2 -= (tgen(K) * tgen(I)) * q2;
      f3 -= (tgen(K) * sgen(I)) * q;
      f4 -= (sgen(K) * tgen(I)) * q + (tgen(K) * sgen(I)) * (q2 - Scalar::one(f));
      for (NCPoly* r : {&f1, &f2, &f3, &f4})
        if (!r->is_zero()) added.push_back(*r);
    }
  for (auto& r : prune_redundant(tg.pres.base, added, opt)) tg.pres.base.add_relation(r);
  tg.pres.base.canonicalize_relations();
  tg.pres.label = "MR_qplane:" + variant_name(tg.pres.variant) + ":" + std::to_string(D);
  return tg;
}

Report mq2_surjection_check(const Scalar& q, int D, SliceOptions opt) {
  Report rep;
  rep.title = "mq2_surjection_check(D=" + std::to_string(D) + ")";
  TruncatedGradedPresentation tg = build_MR_qplane(q, D, Variant::M0, opt);
  BialgebraPresentation mq2 = build_Mq2(q);
  ScalarField f = q.field();
  const Presentation& P = tg.pres.base;

  uint32_t a = *mq2.base.find_generator("a"), b = *mq2.base.find_generator("b");
  uint32_t c = *mq2.base.find_generator("c"), d = *mq2.base.find_generator("d");
  std::vector<NCPoly> kill(P.generators.size(), NCPoly(f));
  kill[tg.s_gen.at({1, 0})] = mq2.base.gen(a);
  kill[tg.t_gen.at({1, 0})] = mq2.base.gen(b);
  kill[tg.s_gen.at({0, 1})] = mq2.base.gen(c);
  kill[tg.t_gen.at({0, 1})] = mq2.base.gen(d);

  Slice smq(mq2.base, 2, opt);
  bool surj = true;
  std::string w;
  for (const NCPoly& r : P.relations) {
    NCPoly image = r.substitute(kill);
    if (image.is_zero()) continue;
    if (!smq.reduce(image).is_zero()) {
      surj = false;
      w = P.poly_string(r);
      break;
    }
  }
  rep.add("killing the higher generators maps relations into the M_q(2) ideal", surj, w);

  // the degree-1 subalgebra satisfies exactly the M_q(2) relations at weight 2
  std::vector<bool> allowed(P.generators.size(), false);
  allowed[tg.s_gen.at({1, 0})] = allowed[tg.t_gen.at({1, 0})] = true;
  allowed[tg.s_gen.at({0, 1})] = allowed[tg.t_gen.at({0, 1})] = true;
  std::vector<NCPoly> inter = ideal_intersection(P, 2, allowed, opt);
  Presentation sub;
  sub.field = f;
  sub.generators = mq2.base.generators;
  for (const NCPoly& r : inter) sub.add_relation(r.substitute(kill));
  sub.canonicalize_relations();
  IdealComparison cmp = compare_ideals(sub, mq2.base, 2, opt);
  rep.add("degree-1 subalgebra relations are exactly M_q(2) (rank " +
              std::to_string(cmp.rank_a) + ")",
          cmp.equal);

  // the pairing block on the degree-1 generators is the standard R_su2 block
  RMatrix R = qplane_braiding(q, D);
  size_t x = R.pos({1, 0}), y = R.pos({0, 1});
  bool block = R.at(x, x, x, x) == q * q && R.at(y, y, y, y) == q * q &&
               R.at(x, x, y, y) == q && R.at(y, y, x, x) == q &&
               R.at(x, y, y, x) == q * q - Scalar::one(f);
  size_t nonzero = 0;
  for (const auto& [key, v] : R.entries) {
    bool deg1 = R.labels[key[0]].degree() == 1 && R.labels[key[1]].degree() == 1 &&
                R.labels[key[2]].degree() == 1 && R.labels[key[3]].degree() == 1;
    if (deg1) ++nonzero;
  }
  rep.add("pairing restricted to the degree-1 block is the M_q(2) pairing",
          block && nonzero == 5);
  return rep;
}

}  // namespace qdiff
