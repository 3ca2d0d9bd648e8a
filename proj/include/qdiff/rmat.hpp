#pragma once

#include "qdiff/graded.hpp"

namespace qdiff {

// Four-index tensor R^i_j^k_l on a finite label set. Graded families carry
// bidegree conservation: entries vanish unless deg(i)+deg(k) = deg(j)+deg(l)
// componentwise, and windowed checks rely on it.
struct RMatrix {
  ScalarField field;
  std::vector<MultiIndex> labels;
  bool graded = false;
  std::map<std::array<size_t, 4>, Scalar> entries;  // positions into labels

  size_t size() const { return labels.size(); }
  size_t pos(const MultiIndex& m) const;
  Scalar at(size_t i, size_t j, size_t k, size_t l) const;
  void set(size_t i, size_t j, size_t k, size_t l, const Scalar& v);

  // R as a matrix on S (x) S, rows (i,k), columns (j,l)
  ScalarMatrix as_matrix() const;
  static RMatrix from_matrix(const RMatrix& like, const ScalarMatrix& m);
  RMatrix inversed() const;       // matrix inverse on S (x) S
  RMatrix transpose2() const;     // transpose in the second tensor factor
};

RMatrix kronecker_R(ScalarField f, const std::vector<MultiIndex>& labels);

// Quantum Yang-Baxter equation, entrywise; graded tensors are checked on the
// windows with total degree within the label bound, where every contraction
// stays inside the window.
Report qybe_check(const RMatrix& R);

// R~ = ((R^t2)^-1)^t2, with the residual identity verified
RMatrix biinvert(const RMatrix& R);

// structure-constant tensor aligned with an R-matrix label set
struct CTensor {
  ScalarField field;
  std::vector<MultiIndex> labels;
  bool graded = false;
  std::map<std::array<size_t, 3>, Scalar> entries;  // (i, j, k) -> c_ij^k

  Scalar at(size_t i, size_t j, size_t k) const;
  void set(size_t i, size_t j, size_t k, const Scalar& v);
  static CTensor from_spec(const AlgebraSpec& spec);
  // truncated multiplication tensor of C[x] (or of the quantum plane when
  // qplane is set) on the degree window
  static CTensor line(ScalarField f, int D);
  static CTensor qplane(const Scalar& q, int D);
};

// both component identities of the covariance condition between c and R
Report covariance_check(const RMatrix& R, const CTensor& c);

// braided-commutativity data: the two mixed Yang-Baxter identities for
// (R, R') and c_ij^k = c_ba^k R'^a_i^b_j
Report rprime_check(const RMatrix& R, const RMatrix& Rp, const CTensor& c);

// the diagonal braided-line R and the conformally braided line R
enum class LineRKind : uint8_t { braided, conformal };
RMatrix line_R(const Scalar& q, int D, LineRKind kind);

// R-matrix of the quantum-plane braiding on monomials x^i y^j, i+j <= D,
// built from the generator braiding by the functoriality recursions
RMatrix qplane_braiding(const Scalar& q, int D);
// braiding of basis pairs as an element of A (x) A (normally ordered words)
std::vector<std::pair<std::pair<MultiIndex, MultiIndex>, Scalar>> qplane_psi(
    const Scalar& q, const MultiIndex& left, const MultiIndex& right);

// dual-quasitriangular pairing attached to an FRT-type presentation; words
// are paired lazily through the product laws, memoized per word pair
struct DualQTFunctional {
  std::map<std::pair<uint32_t, uint32_t>, Scalar> table;  // generator pairs
  mutable std::map<std::pair<Word, Word>, Scalar> cache;

  Scalar pair_words(const BialgebraPresentation& pres, const Word& a, const Word& b) const;
  Scalar pair(const BialgebraPresentation& pres, const NCPoly& a, const NCPoly& b) const;
};

struct FRTResult {
  BialgebraPresentation pres;
  DualQTFunctional pairing;
};

// M1(R, A) and its M/M0 quotients: FRT relations plus the comeasuring
// relations of the chosen variant, with the pairing R(t^i_j, t^k_l) = R^i_j^k_l
FRTResult build_M1R(const RMatrix& R, const AlgebraSpec& spec, Variant variant,
                    SliceOptions opt = {});

// (i) pairing vanishes on the ideal, (ii) quasi-commutativity
// b(1) a(1) R(a(2), b(2)) = R(a(1), b(1)) a(2) b(2) modulo the ideal
Report dualqt_verify(const FRTResult& frt, int L, SliceOptions opt = {});

// Diff_0-type quotient of the conformally braided line (generators t_1..t_D
// with the q-factorial relation family) and its pairing
FRTResult build_M0R_line(const Scalar& q, int D);

// M(R, C_q^2): the quantum-plane comeasuring plus the four R-relation
// families among the s and t sequences
TruncatedGradedPresentation build_MR_qplane(const Scalar& q, int D, Variant variant,
                                            SliceOptions opt = {});

// Cor 4.4: killing the higher generators of M0(R, C_q^2) is a presentation
// surjection onto M_q(2), and the degree-1 block is exactly M_q(2)
Report mq2_surjection_check(const Scalar& q, int D, SliceOptions opt = {});

}  // namespace qdiff
