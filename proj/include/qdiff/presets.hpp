#pragma once

#include "qdiff/comeasure.hpp"

namespace qdiff::presets {

// --- algebra specs ---------------------------------------------------------

// C[x]/x^N = 0 on basis 1, x, ..., x^(N-1)  (N = 2 is the fermionic case)
AlgebraSpec nilpotent_line(ScalarField f, unsigned N);
// C[x]/x^N = 1 on basis 1, x, ..., x^(N-1)
AlgebraSpec cyclic_line(ScalarField f, unsigned N);
// functions on an n-point set in the delta basis (no basis unit)
AlgebraSpec finite_set(ScalarField f, size_t n);
// same algebra on the basis 1, delta_1, ..., delta_(n-1) (basepoint 0 dropped)
AlgebraSpec finite_set_basepoint(ScalarField f, size_t n);

// --- presentations in the paper's reduced generators ------------------------

BialgebraPresentation build_variant(const AlgebraSpec& spec, Variant v);

// x^N = 0 comeasurings, generators named b, t, s, t3, ... (a,b,c,d for the
// fermionic M1 matrix)
BialgebraPresentation nilpotent_line_pres(ScalarField f, unsigned N, Variant v);
// x^N = 1 comeasurings in the same naming scheme
BialgebraPresentation cyclic_line_pres(ScalarField f, unsigned N, Variant v);

// n-point set: M1 with the projector grid tau^i_j
BialgebraPresentation finite_set_M1(ScalarField f, size_t n);
// basepoint-free M: projector grid plus row sums = 1
BialgebraPresentation finite_set_M_free(ScalarField f, size_t n);
// two-point-set M in the basepoint form, rewritten on the projectors p, q
BialgebraPresentation two_point_bundle_M(ScalarField f);

// discrete Fourier transform x^a -> delta basis; N = 2 works over any field,
// larger N requires cyclotomic(N)
BasisChange fourier_change(ScalarField f, unsigned N);

}  // namespace qdiff::presets
