#include "betamatch/polynomial.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>

namespace betamatch::poly {

namespace {

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly to_q(const ZPoly& p) {
  QPoly q(p.size());
  for (size_t i = 0; i < p.size(); ++i) q[i] = Rat(p[i]);
  return q;
}

Rat eval_q(const QPoly& p, const Rat& x) {
  Rat v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
  return v;
}

// remainder of a by b over Q (b nonzero)
QPoly rem_q(QPoly a, const QPoly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rat f = a.back() / b.back();
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  return a;
}

int variations(const std::vector<QPoly>& chain, const Rat& x) {
  int count = 0, prev = 0;
  for (const auto& p : chain) {
    Rat v = eval_q(p, x);
    int s = sgn(v);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

std::vector<QPoly> sturm_chain(const ZPoly& p) {
  std::vector<QPoly> chain;
  chain.push_back(to_q(p));
  chain.push_back(to_q(derivative(p)));
  trim(chain.back());
  while (chain.back().size() > 0) {
    QPoly r = rem_q(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return chain;
}

std::vector<Int> divisors(const Int& n_in) {
  Int n = abs(n_in);
  std::vector<Int> out;
  if (n == 0) return out;
  for (Int i = 1; i * i <= n; ++i) {
    if (n % i == 0) {
      out.push_back(i);
      if (i * i != n) out.push_back(n / i);
    }
  }
  return out;
}

bool has_rational_root(const ZPoly& p) {
  // monic: rational roots are integers dividing the constant term
  if (p.front() == 0) return true;  // x divides
  for (const Int& d : divisors(p.front())) {
    for (int s : {1, -1}) {
      Rat x(s > 0 ? d : -d);
      if (eval(p, x) == 0) return true;
    }
  }
  return false;
}

bool quartic_has_quadratic_factor(const ZPoly& p) {
  // monic quartic x^4 + c3 x^3 + c2 x^2 + c1 x + c0
  // as (x^2 + a x + b)(x^2 + c x + d) with integer a,b,c,d
  const Int &c0 = p[0], &c1 = p[1], &c2 = p[2], &c3 = p[3];
  if (c0 == 0) return true;
  std::vector<Int> bs;
  for (const Int& d : divisors(c0)) {
    bs.push_back(d);
    bs.push_back(-d);
  }
  for (const Int& b : bs) {
    if (c0 % b != 0) continue;
    Int d = c0 / b;
    // a + c = c3 ; a*c = c2 - b - d ; a*d + b*c = c1
    Int s = c3, q = c2 - b - d;
    Int disc = s * s - 4 * q;
    if (disc < 0) continue;
    Int r;
    mpz_sqrt(r.get_mpz_t(), disc.get_mpz_t());
    if (r * r != disc) continue;
    for (int pick : {1, -1}) {
      Int two_a = s + pick * r;
      if (two_a % 2 != 0) continue;
      Int a = two_a / 2, c = s - a;
      if (a * d + b * c == c1) return true;
    }
  }
  return false;
}

// ---- arithmetic mod a small prime ----

using Fp = std::uint64_t;

struct FpPoly {
  std::vector<Fp> c;  // ascending
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  size_t deg() const { return c.empty() ? 0 : c.size() - 1; }
  bool is_zero() const { return c.empty(); }
};

Fp mulmod(Fp a, Fp b, Fp p) { return static_cast<Fp>((__uint128_t)a * b % p); }

Fp powmod(Fp a, Fp e, Fp p) {
  Fp r = 1 % p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

FpPoly mul_mod(const FpPoly& a, const FpPoly& b, const FpPoly& m, Fp p) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Fp> prod(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i)
    if (a.c[i])
      for (size_t j = 0; j < b.c.size(); ++j)
        prod[i + j] = (prod[i + j] + (__uint128_t)a.c[i] * b.c[j]) % p;
  // reduce mod m (m monic)
  while (prod.size() >= m.c.size()) {
    Fp lead = prod.back();
    if (lead) {
      size_t shift = prod.size() - m.c.size();
      for (size_t i = 0; i < m.c.size(); ++i) {
        Fp t = mulmod(lead, m.c[i], p);
        prod[shift + i] = (prod[shift + i] + p - t) % p;
      }
    }
    prod.pop_back();
  }
  FpPoly r{std::move(prod)};
  r.trim();
  return r;
}

FpPoly pow_x_mod(const FpPoly& base, Fp e, const FpPoly& m, Fp p) {
  FpPoly r{{1}};
  FpPoly b = base;
  while (e) {
    if (e & 1) r = mul_mod(r, b, m, p);
    b = mul_mod(b, b, m, p);
    e >>= 1;
  }
  return r;
}

FpPoly gcd_fp(FpPoly a, FpPoly b, Fp p) {
  a.trim();
  b.trim();
  while (!b.is_zero()) {
    // a mod b
    Fp inv = powmod(b.c.back(), p - 2, p);
    while (a.c.size() >= b.c.size() && !a.is_zero()) {
      Fp f = mulmod(a.c.back(), inv, p);
      size_t shift = a.c.size() - b.c.size();
      for (size_t i = 0; i < b.c.size(); ++i) {
        Fp t = mulmod(f, b.c[i], p);
        a.c[shift + i] = (a.c[shift + i] + p - t) % p;
      }
      a.trim();
    }
    std::swap(a, b);
  }
  if (!a.is_zero()) {
    Fp inv = powmod(a.c.back(), p - 2, p);
    for (auto& x : a.c) x = mulmod(x, inv, p);
  }
  return a;
}

FpPoly div_exact_fp(const FpPoly& a_in, const FpPoly& b, Fp p) {
  FpPoly a = a_in;
  std::vector<Fp> q(a.c.size() >= b.c.size() ? a.c.size() - b.c.size() + 1 : 0, 0);
  Fp inv = powmod(b.c.back(), p - 2, p);
  while (a.c.size() >= b.c.size() && !a.is_zero()) {
    Fp f = mulmod(a.c.back(), inv, p);
    size_t shift = a.c.size() - b.c.size();
    q[shift] = f;
    for (size_t i = 0; i < b.c.size(); ++i) {
      Fp t = mulmod(f, b.c[i], p);
      a.c[shift + i] = (a.c[shift + i] + p - t) % p;
    }
    a.trim();
  }
  FpPoly r{std::move(q)};
  r.trim();
  return r;
}

}  // namespace

Rat eval(const ZPoly& p, const Rat& x) {
  Rat v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + Rat(*it);
  return v;
}

int sign_at(const ZPoly& p, const Rat& x) { return sgn(eval(p, x)); }

ZPoly derivative(const ZPoly& p) {
  ZPoly d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  return d;
}

int count_real_roots(const ZPoly& p, const Rat& a, const Rat& b) {
  auto chain = sturm_chain(p);
  // V(a) - V(b) counts roots in (a, b]; b is not a root by precondition.
  return variations(chain, a) - variations(chain, b);
}

bool is_squarefree(const ZPoly& p) {
  QPoly a = to_q(p), b = to_q(derivative(p));
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = rem_q(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.size() == 1;
}

std::vector<int> factor_degrees_mod_p(const ZPoly& p, unsigned long prime) {
  Fp pr = prime;
  FpPoly f;
  f.c.resize(p.size());
  for (size_t i = 0; i < p.size(); ++i) {
    Int m = p[i] % Int(static_cast<unsigned long>(pr));
    if (m < 0) m += Int(static_cast<unsigned long>(pr));
    f.c[i] = m.get_ui();
  }
  f.trim();
  if (f.c.size() != p.size()) return {};  // leading coefficient vanished
  // squarefree mod p?
  FpPoly df;
  for (size_t i = 1; i < f.c.size(); ++i)
    df.c.push_back(mulmod(f.c[i], i % pr, pr));
  df.trim();
  if (df.is_zero()) return {};
  if (gcd_fp(f, df, pr).deg() != 0) return {};

  // distinct-degree factorization
  std::vector<int> degs;
  FpPoly rem = f;
  FpPoly x{{0, 1}};
  FpPoly h = x;
  int d = 0;
  while (rem.deg() >= 1) {
    ++d;
    if (2 * static_cast<size_t>(d) > rem.deg()) {
      degs.insert(degs.end(), 1, static_cast<int>(rem.deg()));
      break;
    }
    h = pow_x_mod(h, pr, rem, pr);
    FpPoly hx = h;
    // h - x
    if (hx.c.size() < 2) hx.c.resize(2, 0);
    hx.c[1] = (hx.c[1] + pr - 1) % pr;
    hx.trim();
    FpPoly g = gcd_fp(hx, rem, pr);
    if (g.deg() > 0) {
      for (size_t i = 0; i < g.deg() / d; ++i) degs.push_back(d);
      rem = div_exact_fp(rem, g, pr);
      // keep h reduced mod the new rem
      h = mul_mod(h, FpPoly{{1}}, rem, pr);
    }
  }
  std::sort(degs.begin(), degs.end());
  return degs;
}

bool is_irreducible_monic(const ZPoly& p) {
  size_t deg = p.size() - 1;
  if (deg == 0) return false;
  if (deg == 1) return true;
  if (p.front() == 0) return false;
  if (has_rational_root(p)) return false;
  if (deg <= 3) return true;
  if (deg == 4) return !quartic_has_quadratic_factor(p);

  // Degree >= 5: factor-degree sets mod several primes. A proper factor over
  // Q of degree k would force k to be a subset sum of the mod-p degree
  // multiset for every good prime.
  static const unsigned long primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23,
                                         29, 31, 37, 41, 43, 47, 53, 59, 61,
                                         67, 71, 73, 79, 83, 89, 97};
  std::set<int> feasible;
  for (size_t k = 1; k < deg; ++k) feasible.insert(static_cast<int>(k));
  for (unsigned long pr : primes) {
    auto degs = factor_degrees_mod_p(p, pr);
    if (degs.empty()) continue;
    if (degs.size() == 1) return true;  // irreducible mod pr
    std::vector<char> reach(deg + 1, 0);
    reach[0] = 1;
    for (int d : degs)
      for (int s = static_cast<int>(deg); s >= d; --s)
        if (reach[s - d]) reach[s] = 1;
    for (auto it = feasible.begin(); it != feasible.end();)
      it = reach[*it] ? std::next(it) : feasible.erase(it);
    if (feasible.empty()) return true;
  }
  throw Error("IrreducibilityUnverified",
              "cannot certify irreducibility at this degree");
}

}  // namespace betamatch::poly
