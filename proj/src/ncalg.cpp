#include "qdiff/ncalg.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qdiff {

NCPoly NCPoly::monomial(Word w, Scalar c) {
  NCPoly p(c.field());
  if (!c.is_zero()) p.terms_.emplace(std::move(w), std::move(c));
  return p;
}

Scalar NCPoly::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

void NCPoly::add_term(const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

NCPoly NCPoly::operator-() const {
  NCPoly r(field_);
  for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
  return r;
}

NCPoly NCPoly::operator+(const NCPoly& r) const {
  NCPoly out(*this);
  for (const auto& [w, c] : r.terms_) out.add_term(w, c);
  return out;
}

NCPoly NCPoly::operator-(const NCPoly& r) const {
  NCPoly out(*this);
  for (const auto& [w, c] : r.terms_) out.add_term(w, -c);
  return out;
}

NCPoly NCPoly::operator*(const NCPoly& r) const {
  if (field_ != r.field_) throw error("field mismatch in free product");
  NCPoly out(field_);
  for (const auto& [w1, c1] : terms_) {
    for (const auto& [w2, c2] : r.terms_) {
      Word w(w1);
      w.insert(w.end(), w2.begin(), w2.end());
      out.add_term(w, c1 * c2);
    }
  }
  return out;
}

NCPoly NCPoly::operator*(const Scalar& c) const {
  NCPoly out(field_);
  if (c.is_zero()) return out;
  for (const auto& [w, v] : terms_) out.add_term(w, v * c);
  return out;
}

NCPoly NCPoly::substitute(const std::vector<NCPoly>& images) const {
  ScalarField f = images.empty() ? field_ : images.front().field();
  NCPoly out(f);
  for (const auto& [w, c] : terms_) {
    NCPoly prod = NCPoly::monomial(Word{}, Scalar::from_poly(f, c.num(), c.den()));
    for (uint32_t id : w) {
      if (id >= images.size()) throw error("substitute: generator image missing");
      prod = prod * images[id];
    }
    out += prod;
  }
  return out;
}

bool NCPoly::uses_generator(uint32_t id) const {
  for (const auto& [w, c] : terms_)
    for (uint32_t g : w)
      if (g == id) return true;
  return false;
}

uint32_t NCPoly::max_generator_id() const {
  uint32_t m = 0;
  for (const auto& [w, c] : terms_)
    for (uint32_t g : w) m = std::max(m, g);
  return m;
}

NCPoly nc_mul(const NCPoly& p, const NCPoly& r) { return p * r; }

TensorElement TensorElement::of(const NCPoly& left, const NCPoly& right) {
  if (left.field() != right.field()) throw error("field mismatch in tensor");
  TensorElement out(left.field());
  for (const auto& [wl, cl] : left.terms())
    for (const auto& [wr, cr] : right.terms())
      out.add_term(wl, wr, cl * cr);
  return out;
}

void TensorElement::add_term(const Word& l, const Word& r, const Scalar& c) {
  if (c.is_zero()) return;
  auto key = std::make_pair(l, r);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TensorElement TensorElement::operator-() const {
  TensorElement out(field_);
  for (const auto& [k, c] : terms_) out.terms_.emplace(k, -c);
  return out;
}

TensorElement TensorElement::operator+(const TensorElement& r) const {
  TensorElement out(*this);
  for (const auto& [k, c] : r.terms_) out.add_term(k.first, k.second, c);
  return out;
}

TensorElement TensorElement::operator-(const TensorElement& r) const {
  TensorElement out(*this);
  for (const auto& [k, c] : r.terms_) out.add_term(k.first, k.second, -c);
  return out;
}

TensorElement TensorElement::operator*(const TensorElement& r) const {
  TensorElement out(field_);
  for (const auto& [k1, c1] : terms_) {
    for (const auto& [k2, c2] : r.terms_) {
      Word l(k1.first);
      l.insert(l.end(), k2.first.begin(), k2.first.end());
      Word w(k1.second);
      w.insert(w.end(), k2.second.begin(), k2.second.end());
      out.add_term(l, w, c1 * c2);
    }
  }
  return out;
}

TensorElement TensorElement::operator*(const Scalar& c) const {
  TensorElement out(field_);
  if (c.is_zero()) return out;
  for (const auto& [k, v] : terms_) out.add_term(k.first, k.second, v * c);
  return out;
}

TensorElement TensorElement::substitute(const std::vector<NCPoly>& left_images,
                                        const std::vector<NCPoly>& right_images) const {
  ScalarField f = left_images.empty() ? field_ : left_images.front().field();
  TensorElement out(f);
  for (const auto& [k, c] : terms_) {
    NCPoly l = NCPoly::monomial(k.first, Scalar::one(field_)).substitute(left_images);
    NCPoly r = NCPoly::monomial(k.second, Scalar::one(field_)).substitute(right_images);
    out += TensorElement::of(l, r) * Scalar::from_poly(f, c.num(), c.den());
  }
  return out;
}

uint32_t Presentation::add_generator(const std::string& name, uint32_t weight,
                                     const std::string& display) {
  if (weight < 1) throw error("generator weight must be >= 1");
  if (find_generator(name)) throw error("duplicate generator name: " + name);
  generators.push_back({name, display.empty() ? name : display, weight});
  return static_cast<uint32_t>(generators.size() - 1);
}

std::optional<uint32_t> Presentation::find_generator(const std::string& name) const {
  for (size_t i = 0; i < generators.size(); ++i)
    if (generators[i].name == name) return static_cast<uint32_t>(i);
  return std::nullopt;
}

int Presentation::weight(const Word& w) const {
  int total = 0;
  for (uint32_t id : w) {
    if (id >= generators.size()) throw error("word uses undeclared generator");
    total += static_cast<int>(generators[id].weight);
  }
  return total;
}

int Presentation::weight(const NCPoly& p) const {
  int m = 0;
  for (const auto& [w, c] : p.terms()) m = std::max(m, weight(w));
  return m;
}

bool Presentation::word_less(const Word& a, const Word& b) const {
  int wa = weight(a), wb = weight(b);
  if (wa != wb) return wa < wb;
  return a < b;
}

void Presentation::add_relation(NCPoly r) {
  if (r.field() != field) throw error("relation field mismatch");
  if (r.is_zero()) return;
  if (r.max_generator_id() >= generators.size())
    throw error("relation uses undeclared generator");
  relations.push_back(std::move(r));
}

void Presentation::canonicalize_relations() {
  for (auto& r : relations) {
    // scale so the leading (weight-lex largest) word has coefficient 1
    const Word* lead = nullptr;
    for (const auto& [w, c] : r.terms())
      if (!lead || word_less(*lead, w)) lead = &w;
    if (lead) r = r * r.coeff(*lead).inverse();
  }
  std::sort(relations.begin(), relations.end(), [&](const NCPoly& a, const NCPoly& b) {
    if (weight(a) != weight(b)) return weight(a) < weight(b);
    return a < b;
  });
  relations.erase(std::unique(relations.begin(), relations.end()), relations.end());
}

std::string Presentation::word_string(const Word& w, bool display_names) const {
  if (w.empty()) return "1";
  std::ostringstream out;
  size_t i = 0;
  while (i < w.size()) {
    size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (i > 0) out << "*";
    const Generator& g = generators.at(w[i]);
    out << (display_names ? g.display : g.name);
    if (j - i > 1) out << "^" << (j - i);
    i = j;
  }
  return out.str();
}

namespace {

bool scalar_needs_parens(const std::string& s) {
  if (s.find('/') != std::string::npos) return true;
  for (size_t i = 1; i < s.size(); ++i)
    if (s[i] == '+' || s[i] == '-') return true;
  return false;
}

}  // namespace

std::string Presentation::poly_string(const NCPoly& p, bool display_names) const {
  if (p.is_zero()) return "0";
  std::vector<const Word*> order;
  for (const auto& [w, c] : p.terms()) order.push_back(&w);
  std::sort(order.begin(), order.end(),
            [&](const Word* a, const Word* b) { return word_less(*a, *b); });
  std::ostringstream out;
  bool first = true;
  for (const Word* w : order) {
    Scalar c = p.coeff(*w);
    std::string cs = c.to_string();
    bool negated = false;
    if (!first && !cs.empty() && cs[0] == '-' && !scalar_needs_parens(cs.substr(1))) {
      negated = true;
      cs = cs.substr(1);
      c = -c;
    }
    if (!first) out << (negated ? " - " : " + ");
    first = false;
    if (w->empty()) {
      out << (scalar_needs_parens(cs) ? "(" + cs + ")" : cs);
    } else if (c.is_one()) {
      out << word_string(*w, display_names);
    } else if ((-c).is_one()) {
      out << "-" << word_string(*w, display_names);
    } else {
      out << (scalar_needs_parens(cs) ? "(" + cs + ")" : cs) << "*"
          << word_string(*w, display_names);
    }
  }
  return out.str();
}

std::string Presentation::tensor_string(const TensorElement& t, bool display_names) const {
  if (t.is_zero()) return "0";
  std::vector<const std::pair<Word, Word>*> order;
  for (const auto& [k, c] : t.terms()) order.push_back(&k);
  std::sort(order.begin(), order.end(), [&](const auto* a, const auto* b) {
    if (a->first != b->first)
      return word_less(a->first, b->first) ? true : false;
    return word_less(a->second, b->second);
  });
  std::ostringstream out;
  bool first = true;
  for (const auto* k : order) {
    Scalar c = t.terms().at(*k);
    std::string cs = c.to_string();
    if (!first) out << " + ";
    first = false;
    if (!c.is_one()) out << (scalar_needs_parens(cs) ? "(" + cs + ")" : cs) << "*";
    out << word_string(k->first, display_names) << " (x) "
        << word_string(k->second, display_names);
  }
  return out.str();
}

namespace {

struct PolyParser {
  const Presentation& pres;
  const std::string& text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) { ++pos; return true; }
    return false;
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  NCPoly parse_expr() {
    NCPoly v = eat('-') ? -parse_term() : parse_term();
    for (;;) {
      if (eat('+')) v += parse_term();
      else if (eat('-')) v -= parse_term();
      else return v;
    }
  }

  NCPoly parse_term() {
    NCPoly v = parse_factor();
    for (;;) {
      if (eat('*')) {
        v *= parse_factor();
      } else if (eat('/')) {
        NCPoly d = parse_factor();
        Scalar s = as_scalar(d);
        v = v * s.inverse();
      } else {
        return v;
      }
    }
  }

  Scalar as_scalar(const NCPoly& p) const {
    if (p.is_zero()) return Scalar::zero(pres.field);
    if (p.term_count() == 1 && p.terms().begin()->first.empty())
      return p.terms().begin()->second;
    throw error("division by a non-scalar in polynomial: " + text);
  }

  NCPoly parse_factor() {
    if (eat('-')) return -parse_factor();
    NCPoly v = parse_atom();
    if (eat('^')) {
      bool neg = eat('-');
      long e = parse_int();
      if (neg) {
        v = NCPoly::monomial(Word{}, as_scalar(v).pow(-e));
      } else {
        NCPoly acc = NCPoly::unit(pres.field);
        for (long k = 0; k < e; ++k) acc *= v;
        v = acc;
      }
    }
    return v;
  }

  long parse_int() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) throw error("expected integer in polynomial at offset " + std::to_string(pos));
    return std::stol(text.substr(start, pos - start));
  }

  NCPoly parse_atom() {
    char c = peek();
    if (c == '(') {
      ++pos;
      NCPoly v = parse_expr();
      if (!eat(')')) throw error("missing ')' in polynomial: " + text);
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return NCPoly::monomial(Word{}, Scalar::integer(pres.field, parse_int()));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      std::string name = text.substr(start, pos - start);
      if (auto id = pres.find_generator(name)) return pres.gen(*id);
      if (name == "q" && pres.field.has_q())
        return NCPoly::monomial(Word{}, Scalar::q(pres.field));
      throw error("unknown generator '" + name + "' in polynomial: " + text);
    }
    throw error("unexpected character '" + std::string(1, c) + "' in polynomial: " + text);
  }
};

}  // namespace

NCPoly Presentation::parse_poly(const std::string& text) const {
  PolyParser p{*this, text};
  NCPoly v = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) throw error("trailing characters in polynomial: " + text);
  return v;
}

std::vector<Word> enumerate_words(const Presentation& pres, int L, SliceOptions opt) {
  std::vector<Word> out;
  std::vector<std::pair<Word, int>> stack{{Word{}, 0}};
  while (!stack.empty()) {
    auto [w, wt] = stack.back();
    stack.pop_back();
    out.push_back(w);
    if (out.size() > opt.max_words)
      throw slice_limit_error("slice exceeds word cap (" + std::to_string(opt.max_words) + ")");
    for (uint32_t id = static_cast<uint32_t>(pres.generators.size()); id-- > 0;) {
      int nw = wt + static_cast<int>(pres.generators[id].weight);
      if (nw > L) continue;
      Word next(w);
      next.push_back(id);
      stack.emplace_back(std::move(next), nw);
    }
  }
  std::sort(out.begin(), out.end(), [&](const Word& a, const Word& b) {
    return pres.word_less(a, b);
  });
  return out;
}

Slice::Slice(const Presentation& pres, int L, SliceOptions opt)
    : field_(pres.field), L_(L) {
  words_ = enumerate_words(pres, L, opt);
  size_t n = words_.size();
  for (size_t i = 0; i < n; ++i) column_[words_[i]] = n - 1 - i;  // 0 = largest
  weights_.resize(n);
  for (size_t i = 0; i < n; ++i) weights_[i] = pres.weight(words_[i]);
  for (const NCPoly& r : pres.relations) extend(r);
}

void Slice::extend(const NCPoly& r) {
  if (r.is_zero()) return;
  basis_fresh_ = false;
  int rw = 0;
  for (const auto& [w, c] : r.terms()) {
    auto it = column_.find(w);
    if (it == column_.end()) return;  // relation exceeds the bound, no row fits
    rw = std::max(rw, weights_[words_.size() - 1 - it->second]);
  }
  size_t n = words_.size();
  for (size_t i1 = 0; i1 < n; ++i1) {
    if (weights_[i1] + rw > L_) break;  // words sorted by ascending weight
    for (size_t i2 = 0; i2 < n; ++i2) {
      if (weights_[i1] + rw + weights_[i2] > L_) break;
      NCPoly row = NCPoly::monomial(words_[i1], Scalar::one(field_)) * r *
                   NCPoly::monomial(words_[i2], Scalar::one(field_));
      add_row(encode(row));
    }
  }
}

const std::vector<Word>& Slice::basis() const {
  if (!basis_fresh_) {
    basis_.clear();
    for (const Word& w : words_)
      if (!pivots_.count(column_.at(w))) basis_.push_back(w);
    basis_fresh_ = true;
  }
  return basis_;
}

Slice::SparseRow Slice::encode(const NCPoly& p) const {
  SparseRow row;
  for (const auto& [w, c] : p.terms()) {
    auto it = column_.find(w);
    if (it == column_.end())
      throw error("polynomial exceeds slice weight bound " + std::to_string(L_));
    row.emplace_back(it->second, c);
  }
  std::sort(row.begin(), row.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return row;
}

NCPoly Slice::decode(const SparseRow& row) const {
  NCPoly p(field_);
  size_t n = words_.size();
  for (const auto& [col, c] : row) p.add_term(words_[n - 1 - col], c);
  return p;
}

// row -= c * other  (merge of sorted sparse vectors)
static void sparse_axpy(std::vector<std::pair<size_t, Scalar>>& row, const Scalar& c,
                        const std::vector<std::pair<size_t, Scalar>>& other) {
  std::vector<std::pair<size_t, Scalar>> out;
  out.reserve(row.size() + other.size());
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
}

void Slice::reduce_row(SparseRow& row) const {
  size_t i = 0;
  while (i < row.size()) {
    auto it = pivots_.find(row[i].first);
    if (it == pivots_.end()) {
      ++i;
      continue;
    }
    Scalar c = row[i].second;
    sparse_axpy(row, c, it->second);
    // entries before position i are untouched non-pivot columns
  }
}

bool Slice::add_row(SparseRow row) {
  reduce_row(row);
  if (row.empty()) return false;
  Scalar lead = row.front().second;
  if (!lead.is_one())
    for (auto& [col, c] : row) c /= lead;
  size_t pcol = row.front().first;
  // keep the stored rows fully reduced against the new pivot
  for (auto& [col, prow] : pivots_) {
    for (size_t k = 0; k < prow.size(); ++k) {
      if (prow[k].first == pcol) {
        Scalar c = prow[k].second;
        sparse_axpy(prow, c, row);
        break;
      }
      if (prow[k].first > pcol) break;
    }
  }
  pivots_.emplace(pcol, std::move(row));
  ++rank_;
  return true;
}

NCPoly Slice::reduce(const NCPoly& p) const {
  if (p.field() != field_) throw error("field mismatch in reduce");
  SparseRow row = encode(p);
  reduce_row(row);
  return decode(row);
}

std::vector<NCPoly> Slice::ideal_rows() const {
  std::vector<NCPoly> out;
  for (const auto& [col, row] : pivots_) out.push_back(decode(row));
  return out;
}

SliceBasisResult slice_basis(const Presentation& pres, int L, SliceOptions opt) {
  Slice s(pres, L, opt);
  return {s.basis(), s.ideal_rank()};
}

NCPoly reduce_mod_ideal(const NCPoly& p, const Presentation& pres, int L, SliceOptions opt) {
  Slice s(pres, L, opt);
  return s.reduce(p);
}

TensorElement tensor_reduce(const TensorElement& x, const Slice& left, const Slice& right) {
  TensorElement out(x.field());
  for (const auto& [k, c] : x.terms()) {
    NCPoly l = left.reduce(NCPoly::monomial(k.first, Scalar::one(x.field())));
    NCPoly r = right.reduce(NCPoly::monomial(k.second, Scalar::one(x.field())));
    out += TensorElement::of(l, r) * c;
  }
  return out;
}

TensorElement tensor_reduce(const TensorElement& x, const Presentation& left,
                            const Presentation& right, int L, SliceOptions opt) {
  Slice ls(left, L, opt);
  Slice rs(right, L, opt);
  return tensor_reduce(x, ls, rs);
}

}  // namespace qdiff
