#pragma once

#include <vector>

#include "betamatch/rational.hpp"

namespace betamatch::poly {

// Polynomials are ascending coefficient vectors: p[i] is the coefficient of x^i.
using ZPoly = std::vector<Int>;
using QPoly = std::vector<Rat>;

Rat eval(const ZPoly& p, const Rat& x);
int sign_at(const ZPoly& p, const Rat& x);
ZPoly derivative(const ZPoly& p);

/// Number of distinct real roots in the open interval (a, b).
/// Requires p squarefree and p(a) != 0, p(b) != 0.
int count_real_roots(const ZPoly& p, const Rat& a, const Rat& b);

bool is_squarefree(const ZPoly& p);

/// Irreducibility over Q for a monic integer polynomial. Complete for
/// degree <= 4 (rational-root test plus quadratic-pair search). For degree
/// >= 5, certifies via factor-degree analysis modulo small primes; throws
/// Error("IrreducibilityUnverified") if no certificate is found, so a
/// reducible polynomial is never accepted.
bool is_irreducible_monic(const ZPoly& p);

/// Degrees (with multiplicity) of the irreducible factors of p mod prime,
/// via distinct-degree factorization. Empty when p is not squarefree mod
/// prime or the leading coefficient vanishes.
std::vector<int> factor_degrees_mod_p(const ZPoly& p, unsigned long prime);

}  // namespace betamatch::poly
