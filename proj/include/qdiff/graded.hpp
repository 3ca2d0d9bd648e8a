#pragma once

#include "qdiff/comeasure.hpp"

namespace qdiff {

// bidegree of a monomial x^a y^b (b = 0 for the line)
struct MultiIndex {
  int a = 0, b = 0;
  int degree() const { return a + b; }
  MultiIndex operator+(const MultiIndex& r) const { return {a + r.a, b + r.b}; }
  auto operator<=>(const MultiIndex&) const = default;
  std::string str() const {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
  }
};

// finite map MultiIndex -> polynomial value, supported inside a truncation
using IndexedSequence = std::map<MultiIndex, NCPoly>;

// (s*t)_(i,j) = sum over (a,b)+(c,d) = (i,j) of s_(a,b) t_(c,d), kept to
// total degree <= D
IndexedSequence convolve(const IndexedSequence& s, const IndexedSequence& t, int D);
// q-deformed convolution with the q^{bc} twist
IndexedSequence q_convolve(const IndexedSequence& s, const IndexedSequence& t,
                           const Scalar& q, int D);

struct TruncatedGradedPresentation {
  BialgebraPresentation pres;
  int D = 0;
  Scalar q;
  bool coproduct_formal = false;  // comeasurings with a (0,0) level have formal coproducts

  std::vector<MultiIndex> labels;             // degree <= D, ascending (degree, a desc)
  std::map<MultiIndex, uint32_t> s_gen;       // may be empty (the line has only t's)
  std::map<MultiIndex, uint32_t> t_gen;
  std::map<std::pair<MultiIndex, MultiIndex>, NCPoly> derived;  // t^(i,j)_(k,l)

  NCPoly derived_at(const MultiIndex& row, const MultiIndex& col) const;
  size_t label_pos(const MultiIndex& m) const;
};

// Diff_0-style comeasuring of the line: free on t_1..t_D with the derived
// convolution table and truncated coproduct.
TruncatedGradedPresentation build_M0_line(ScalarField f, int D);

// comeasuring of the quantum plane yx = qxy, generators s_(i,j), t_(i,j);
// the M variant keeps the (0,0) level and its coproducts stay formal
TruncatedGradedPresentation build_M_qplane(const Scalar& q, int D);
TruncatedGradedPresentation build_M0_qplane(const Scalar& q, int D);

// braided coaddition structure constants on the degree-<=D labels
CoalgebraSpec coaddition_tensor(const Scalar& q, const std::vector<MultiIndex>& labels);

// windowed check that the derived table implements the coaction as an
// algebra map on the quantum plane
Report qplane_coaction_check(const TruncatedGradedPresentation& tg, SliceOptions opt = {});

// M_0(C_q^2, Delta_+): the coaddition-preserving quotient collapses to the
// degree-1 block, which is the standard 2x2 quantum matrix bialgebra
BialgebraPresentation build_Mq2(const Scalar& q);

// the three window identities beta(e_u) beta(e_v) = c_uv^k beta(e_k) for the
// matrix coaction on x, y
Report mq2_coaction_check(const BialgebraPresentation& mq2, const Scalar& q,
                          SliceOptions opt = {});

// basis of (ideal slice of big at L) intersected with the span of words in
// the allowed generators
std::vector<NCPoly> ideal_intersection(const Presentation& big, int L,
                                       const std::vector<bool>& allowed,
                                       SliceOptions opt = {});

}  // namespace qdiff
