#pragma once

#include "qdiff/matrix.hpp"
#include "qdiff/ncalg.hpp"
#include "qdiff/report.hpp"

#include <functional>
#include <set>

namespace qdiff {

// Structure constants of an algebra: e_i e_j = sum_k c[i][j][k] e_k.
struct AlgebraSpec {
  ScalarField field;
  size_t dim = 0;
  std::vector<Scalar> c;  // dim^3 entries, (i*dim + j)*dim + k
  std::optional<size_t> unit_index;

  static AlgebraSpec make(ScalarField f, size_t dim, std::optional<size_t> unit = {});
  Scalar& cref(size_t i, size_t j, size_t k) { return c[(i * dim + j) * dim + k]; }
  const Scalar& cval(size_t i, size_t j, size_t k) const { return c[(i * dim + j) * dim + k]; }
};

Report validate_algebra(const AlgebraSpec& spec);

enum class Variant : uint8_t { M1, M, M0, Quotient };
std::string variant_name(Variant v);

struct BialgebraPresentation {
  Presentation base;
  Variant variant = Variant::M1;
  std::string label;

  std::vector<TensorElement> coproduct;  // indexed by generator id
  std::vector<Scalar> counit;            // indexed by generator id

  // beta(e_j) = sum_a e_a (x) coaction[a][j], in the presentation's basis
  // order (unit permuted to index 0 for the M/M0 variants)
  std::optional<std::vector<std::vector<NCPoly>>> coaction;

  // matrix of generators t^i_j as polynomials; for M/M0 row/column 0 holds
  // the unit column (1, 0, ...) and the b row
  std::vector<std::vector<NCPoly>> gen_matrix;

  TensorElement coproduct_of_word(const Word& w) const;
  TensorElement coproduct_of(const NCPoly& p) const;
  Scalar counit_of_word(const Word& w) const;
  Scalar counit_of(const NCPoly& p) const;
};

BialgebraPresentation build_M1(const AlgebraSpec& spec);
BialgebraPresentation build_M(const AlgebraSpec& spec);
BialgebraPresentation build_M0(const AlgebraSpec& spec);

// Tietze elimination: removes every generator not in `keep` that some
// relation expresses as a polynomial in the others; relations, coalgebra
// tables, coaction and the generator matrix are rewritten.
BialgebraPresentation eliminate_generators(const BialgebraPresentation& pres,
                                           const std::set<std::string>& keep);
void rename_generator(BialgebraPresentation& pres, const std::string& old_name,
                      const std::string& name, const std::string& display = "");

Report verify_bialgebra(const BialgebraPresentation& pres, int L, SliceOptions opt = {});
Report verify_coaction(const BialgebraPresentation& pres, const AlgebraSpec& spec, int L,
                       SliceOptions opt = {});

struct UniversalCheckResult {
  size_t ideal_slice_dim = 0;
  bool match = false;
  Report report;
};
// Brute-force oracle: regenerates the relation ideal from "beta is an algebra
// map" on abstract generators and compares degree slices with the builder.
UniversalCheckResult universal_check(const AlgebraSpec& spec, Variant variant, int L,
                                     SliceOptions opt = {});

struct BasisChange {
  ScalarMatrix Lambda;                         // n x n (M1) or (n-1) x (n-1) (M, M0)
  std::optional<std::vector<Scalar>> lambda;   // unit-preserving affine part (M)
};

BialgebraPresentation change_basis(const BialgebraPresentation& pres, const BasisChange& bc);
AlgebraSpec transform_spec(const AlgebraSpec& spec, const BasisChange& bc);

// Coalgebra structure constants Delta e_i = d[i][j][k] e_j (x) e_k; not
// required to be coassociative.
struct CoalgebraSpec {
  size_t dim = 0;
  std::map<std::array<size_t, 3>, Scalar> d;  // (i, j, k) -> coefficient

  // for truncated index sets: the degree of each label and the window bound;
  // relation instances whose left side would reach outside the window are
  // skipped rather than silently truncated (they are consequences of the
  // in-window instances)
  std::vector<int> label_degree;
  int max_degree = 0;

  bool rows_complete(size_t j, size_t k) const {
    return label_degree.empty() ||
           label_degree[j] + label_degree[k] <= max_degree;
  }

  void set(size_t i, size_t j, size_t k, const Scalar& v);
  Scalar get(size_t i, size_t j, size_t k, ScalarField f) const;
};

// Relation family d_a^{jk} t^a_i - d_i^{ab} t^j_a t^k_b over an index set of
// the given size where t(i, j) supplies the generator matrix entries.
std::vector<NCPoly> coalgebra_quotient_relations(
    const CoalgebraSpec& d, const std::function<NCPoly(size_t, size_t)>& t,
    ScalarField field);

// Adds the coproduct-preserving relations and re-checks the biideal property
// of the added relations at the working degree.
BialgebraPresentation quotient_coproduct_preserving(const BialgebraPresentation& pres,
                                                    const CoalgebraSpec& d,
                                                    SliceOptions opt = {});

struct CalculusSpec {
  size_t points = 0;
  std::set<std::pair<size_t, size_t>> edges;  // subset of Sigma x Sigma minus diagonal
};

// Quotient of the basepoint-free finite-set comeasuring by
// tau^i_j tau^k_l = 0 for (i,k) an edge and (j,l) off-diagonal non-edge.
BialgebraPresentation quotient_calculus_preserving(const BialgebraPresentation& pres,
                                                   const CalculusSpec& cal,
                                                   SliceOptions opt = {});

struct CoinvariantsResult {
  std::vector<NCPoly> basis;   // solutions of (pi (x) id) Delta h = 1 (x) h
  bool product_closed = false;
};

// pi maps generators of presM to polynomials of the quotient presentation.
CoinvariantsResult coinvariants(const BialgebraPresentation& presM,
                                const BialgebraPresentation& quotient,
                                const std::vector<NCPoly>& pi, int L,
                                SliceOptions opt = {});

// Drops candidate relations already in the ideal generated by the base
// relations plus the candidates kept so far (the generated ideal is
// unchanged); candidates are processed in ascending weight order.
std::vector<NCPoly> prune_redundant(const Presentation& base, std::vector<NCPoly> candidates,
                                    SliceOptions opt = {});

// --- shared test helpers -------------------------------------------------

struct IdealComparison {
  bool equal = false;
  bool a_in_b = false, b_in_a = false;
  size_t rank_a = 0, rank_b = 0;
};
// Requires both presentations to use the same generator ids.
IdealComparison compare_ideals(const Presentation& a, const Presentation& b, int L,
                               SliceOptions opt = {});

// The section-2 consistency identity: contracting c twice against a cubic
// word reduces to the fully contracted linear form modulo the ideal.
Report associativity_consistency(const BialgebraPresentation& m1,
                                 const AlgebraSpec& spec, int L, SliceOptions opt = {});

}  // namespace qdiff
