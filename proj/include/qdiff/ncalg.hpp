#pragma once

#include "qdiff/scalar.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace qdiff {

struct Generator {
  std::string name;      // parseable identifier
  std::string display;   // paper-style rendering, e.g. "t^1_2"
  uint32_t weight = 1;
};

// A word in the free algebra: a sequence of generator ids; empty = 1.
using Word = std::vector<uint32_t>;

// Element of a free algebra: finite map Word -> Scalar, no zero values.
class NCPoly {
public:
  explicit NCPoly(ScalarField f = ScalarField::rational_q()) : field_(f) {}

  static NCPoly zero(ScalarField f) { return NCPoly(f); }
  static NCPoly unit(ScalarField f) { return monomial(Word{}, Scalar::one(f)); }
  static NCPoly gen(ScalarField f, uint32_t id) { return monomial(Word{id}, Scalar::one(f)); }
  static NCPoly monomial(Word w, Scalar c);

  const ScalarField& field() const { return field_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const std::map<Word, Scalar>& terms() const { return terms_; }
  Scalar coeff(const Word& w) const;

  void add_term(const Word& w, const Scalar& c);

  NCPoly operator-() const;
  NCPoly operator+(const NCPoly& r) const;
  NCPoly operator-(const NCPoly& r) const;
  NCPoly operator*(const NCPoly& r) const;  // free product, word concatenation
  NCPoly operator*(const Scalar& c) const;
  NCPoly& operator+=(const NCPoly& r) { return *this = *this + r; }
  NCPoly& operator-=(const NCPoly& r) { return *this = *this - r; }
  NCPoly& operator*=(const NCPoly& r) { return *this = *this * r; }

  bool operator==(const NCPoly& r) const { return field_ == r.field_ && terms_ == r.terms_; }
  bool operator!=(const NCPoly& r) const { return !(*this == r); }
  bool operator<(const NCPoly& r) const { return terms_ < r.terms_; }

  // replaces generator ids by the given images (complete map, id-indexed)
  NCPoly substitute(const std::vector<NCPoly>& images) const;
  bool uses_generator(uint32_t id) const;
  uint32_t max_generator_id() const;  // polynomials with no generators return 0

private:
  ScalarField field_;
  std::map<Word, Scalar> terms_;
};

NCPoly nc_mul(const NCPoly& p, const NCPoly& r);

// Element of the tensor square of a free algebra.
class TensorElement {
public:
  explicit TensorElement(ScalarField f = ScalarField::rational_q()) : field_(f) {}

  static TensorElement zero(ScalarField f) { return TensorElement(f); }
  static TensorElement of(const NCPoly& left, const NCPoly& right);

  const ScalarField& field() const { return field_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<std::pair<Word, Word>, Scalar>& terms() const { return terms_; }

  void add_term(const Word& l, const Word& r, const Scalar& c);

  TensorElement operator-() const;
  TensorElement operator+(const TensorElement& r) const;
  TensorElement operator-(const TensorElement& r) const;
  TensorElement operator*(const TensorElement& r) const;  // (a(x)b)(c(x)d) = ac (x) bd
  TensorElement operator*(const Scalar& c) const;
  TensorElement& operator+=(const TensorElement& r) { return *this = *this + r; }
  TensorElement& operator-=(const TensorElement& r) { return *this = *this - r; }

  bool operator==(const TensorElement& r) const {
    return field_ == r.field_ && terms_ == r.terms_;
  }
  bool operator!=(const TensorElement& r) const { return !(*this == r); }

  TensorElement substitute(const std::vector<NCPoly>& left_images,
                           const std::vector<NCPoly>& right_images) const;

private:
  ScalarField field_;
  std::map<std::pair<Word, Word>, Scalar> terms_;
};

// Generators plus a list of relations, each read as "= 0".
struct Presentation {
  ScalarField field;
  std::vector<Generator> generators;
  std::vector<NCPoly> relations;

  uint32_t add_generator(const std::string& name, uint32_t weight = 1,
                         const std::string& display = "");
  std::optional<uint32_t> find_generator(const std::string& name) const;
  NCPoly gen(uint32_t id) const { return NCPoly::gen(field, id); }

  int weight(const Word& w) const;
  int weight(const NCPoly& p) const;  // max term weight, 0 for the zero poly
  bool word_less(const Word& a, const Word& b) const;  // weight, then lex

  void add_relation(NCPoly r);        // drops zero relations
  void canonicalize_relations();      // normalize leading coeff, sort, dedupe

  std::string word_string(const Word& w, bool display_names = true) const;
  std::string poly_string(const NCPoly& p, bool display_names = true) const;
  std::string tensor_string(const TensorElement& t, bool display_names = true) const;
  NCPoly parse_poly(const std::string& text) const;
};

struct SliceOptions {
  size_t max_words = 200000;
};

struct slice_limit_error : error {
  using error::error;
};

// Degree slice of a presentation: all words of weight <= L, the row-reduced
// span of { w1 * r * w2 } inside it, and normal forms on the complement.
class Slice {
public:
  Slice(const Presentation& pres, int L, SliceOptions opt = {});

  int bound() const { return L_; }
  const std::vector<Word>& words() const { return words_; }   // ascending weight-lex
  const std::vector<Word>& basis() const;                     // quotient slice basis
  size_t ideal_rank() const { return rank_; }

  NCPoly reduce(const NCPoly& p) const;
  bool contains(const NCPoly& p) const { return reduce(p).is_zero(); }
  std::vector<NCPoly> ideal_rows() const;  // RREF basis of the ideal slice
  // extends the ideal rows by w1 * r * w2 products of one more relation
  void extend(const NCPoly& r);

private:
  using SparseRow = std::vector<std::pair<size_t, Scalar>>;  // sorted by column

  ScalarField field_;
  int L_;
  std::vector<Word> words_;
  std::vector<int> weights_;
  std::map<Word, size_t> column_;     // word -> column, 0 = largest word
  std::map<size_t, SparseRow> pivots_;
  size_t rank_ = 0;
  mutable std::vector<Word> basis_;
  mutable bool basis_fresh_ = false;

  bool add_row(SparseRow row);
  void reduce_row(SparseRow& row) const;
  SparseRow encode(const NCPoly& p) const;
  NCPoly decode(const SparseRow& row) const;
};

struct SliceBasisResult {
  std::vector<Word> basis;
  size_t ideal_rank;
};

SliceBasisResult slice_basis(const Presentation& pres, int L, SliceOptions opt = {});
NCPoly reduce_mod_ideal(const NCPoly& p, const Presentation& pres, int L,
                        SliceOptions opt = {});
// Normal form in the tensor product of the two quotient slices; zero iff the
// element lies in (ideal (x) free) + (free (x) ideal) at the given bounds.
TensorElement tensor_reduce(const TensorElement& x, const Slice& left, const Slice& right);
TensorElement tensor_reduce(const TensorElement& x, const Presentation& left,
                            const Presentation& right, int L, SliceOptions opt = {});

// Enumerates all words of weight <= L (ascending weight-then-lex order).
std::vector<Word> enumerate_words(const Presentation& pres, int L, SliceOptions opt = {});

}  // namespace qdiff
