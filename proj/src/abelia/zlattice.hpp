#pragma once

// Integer matrix utilities for lattice work: saturated kernels, basis
// completion, and the symplectic (Frobenius) normal form of an alternating
// integral matrix.  Everything runs on GMP integers through the shared
// Smith elimination.

#include "abelia/euclid.hpp"
#include "abelia/linalg.hpp"

namespace abelia {

using ZMatrix = Matrix<ZZ>;

// Z-basis of ker(A) as columns; saturated (a primitive sublattice basis).
ZMatrix integer_kernel_basis(const ZMatrix& a);

// Columns completing a primitive n x r basis B to a basis of Z^n.
// Throws when B is not primitive of full column rank.
ZMatrix unimodular_completion(const ZMatrix& b);

// Elementary divisors d_1 | d_2 | ... | d_m of an alternating nondegenerate
// integral matrix of even size 2m, all positive.
std::vector<mpz_class> integer_alternating_divisors(const ZMatrix& e);

std::size_t zrank(const ZMatrix& a);

}  // namespace abelia
