#include <algorithm>
#include <cmath>
#include <complex>

#include "betamatch/numberfield.hpp"

namespace betamatch {

namespace {

bool is_palindromic(const std::vector<Int>& p) {
  size_t n = p.size();
  for (size_t i = 0; i < n; ++i)
    if (p[i] != p[n - 1 - i]) return false;
  return true;
}

// For palindromic f of even degree 2m, f(x) = x^m g(x + 1/x) with g monic of
// degree m. Built from x^i + x^{-i} = P_i(w), P_0 = 2, P_1 = w,
// P_{i+1} = w P_i - P_{i-1}.
poly::ZPoly half_trace_transform(const std::vector<Int>& f) {
  int m = (static_cast<int>(f.size()) - 1) / 2;
  std::vector<poly::ZPoly> P(m + 1);
  P[0] = {2};
  if (m >= 1) P[1] = {0, 1};
  for (int i = 2; i <= m; ++i) {
    poly::ZPoly t(P[i - 1].size() + 1, 0);
    for (size_t j = 0; j < P[i - 1].size(); ++j) t[j + 1] = P[i - 1][j];
    for (size_t j = 0; j < P[i - 2].size(); ++j) t[j] -= P[i - 2][j];
    P[i] = std::move(t);
  }
  poly::ZPoly g(m + 1, 0);
  g[0] = f[m];
  for (int i = 1; i <= m; ++i)
    for (size_t j = 0; j < P[i].size(); ++j) g[j] += f[m + i] * P[i][j];
  return g;
}

// Rational sqrt bounds: lo^2 <= s <= hi^2, relative slack below 2^-120.
// sqrt(n/d) = sqrt(n*d)/d, bracketed by an integer square root at scale 2^t.
std::pair<Rat, Rat> sqrt_bounds(const Rat& s) {
  if (sgn(s) < 0) throw Error("Internal", "sqrt of negative");
  if (s == 0) return {Rat(0), Rat(0)};
  Int m = s.get_num() * s.get_den();
  size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
  unsigned long t = bits >= 256 ? 0 : (256 - bits + 1) / 2;
  Int ms;
  mpz_mul_2exp(ms.get_mpz_t(), m.get_mpz_t(), 2 * t);
  Int r;
  mpz_sqrt(r.get_mpz_t(), ms.get_mpz_t());
  Int den_scaled;
  mpz_mul_2exp(den_scaled.get_mpz_t(), s.get_den().get_mpz_t(), t);
  Rat lo = Rat(r) / Rat(den_scaled);
  Rat hi = Rat(r + 1) / Rat(den_scaled);
  return {lo, hi};
}

struct QC {
  Rat re, im;
  QC operator+(const QC& o) const { return {re + o.re, im + o.im}; }
  QC operator-(const QC& o) const { return {re - o.re, im - o.im}; }
  QC operator*(const QC& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  QC operator/(const QC& o) const {
    Rat n2 = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / n2, (im * o.re - re * o.im) / n2};
  }
  Rat norm2() const { return re * re + im * im; }
  QC rounded(unsigned bits) const {
    return {dyadic_round(re, bits), dyadic_round(im, bits)};
  }
};

QC eval_poly(const std::vector<Int>& p, const QC& z) {
  QC v{Rat(0), Rat(0)};
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    v = v * z;
    v.re += Rat(*it);
  }
  return v;
}

std::vector<std::complex<double>> durand_kerner(const std::vector<Int>& p) {
  int d = static_cast<int>(p.size()) - 1;
  double bound = 1.0;
  for (int i = 0; i < d; ++i)
    bound = std::max(bound, std::abs(p[i].get_d()));
  double radius = 1.0 + bound;
  std::vector<std::complex<double>> z(d);
  std::complex<double> seed(0.4, 0.9);
  std::complex<double> cur = seed;
  for (int i = 0; i < d; ++i) {
    z[i] = radius * cur / std::abs(cur);
    cur *= seed;
  }
  auto evald = [&](std::complex<double> x) {
    std::complex<double> v = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + it->get_d();
    return v;
  };
  for (int iter = 0; iter < 600; ++iter) {
    double moved = 0;
    for (int i = 0; i < d; ++i) {
      std::complex<double> denom = 1;
      for (int j = 0; j < d; ++j)
        if (j != i) denom *= (z[i] - z[j]);
      std::complex<double> delta = evald(z[i]) / denom;
      z[i] -= delta;
      moved = std::max(moved, std::abs(delta));
    }
    if (moved < 1e-14) break;
  }
  return z;
}

struct RootDisk {
  QC center;
  Rat radius;
  std::pair<Rat, Rat> modulus;  // enclosure of |root|
};

// Each disk D(center, radius) with radius = d*|f(z)|/|f'(z)| contains a root;
// if all d disks are pairwise disjoint, each contains exactly one.
std::vector<RootDisk> certified_disks(const std::vector<Int>& f, const Rat& max_radius) {
  const int d = static_cast<int>(f.size()) - 1;
  poly::ZPoly df = poly::derivative(f);
  auto approx = durand_kerner(f);
  std::vector<QC> centers(d);
  for (int i = 0; i < d; ++i)
    centers[i] = QC{dyadic_round(Rat(approx[i].real()), 64),
                    dyadic_round(Rat(approx[i].imag()), 64)}
                     .rounded(64);

  for (unsigned bits = 64; bits <= (1u << 16); bits *= 2) {
    // Newton polish at current precision
    for (int step = 0; step < 3; ++step) {
      for (int i = 0; i < d; ++i) {
        QC fv = eval_poly(f, centers[i]);
        QC dv = eval_poly(df, centers[i]);
        if (dv.norm2() == 0) continue;
        centers[i] = (centers[i] - fv / dv).rounded(bits);
      }
    }
    std::vector<RootDisk> disks(d);
    bool ok = true;
    for (int i = 0; i < d; ++i) {
      QC fv = eval_poly(f, centers[i]);
      QC dv = eval_poly(df, centers[i]);
      if (dv.norm2() == 0) {
        ok = false;
        break;
      }
      Rat up_f = sqrt_bounds(fv.norm2()).second;
      Rat lo_df = sqrt_bounds(dv.norm2()).first;
      if (sgn(lo_df) <= 0) {
        ok = false;
        break;
      }
      Rat r = Rat(d) * up_f / lo_df;
      auto [mlo, mhi] = sqrt_bounds(centers[i].norm2());
      Rat lo = mlo - r;
      if (sgn(lo) < 0) lo = 0;
      disks[i] = RootDisk{centers[i], r, {lo, mhi + r}};
      if (r > max_radius) ok = false;
    }
    if (ok) {
      for (int i = 0; i < d && ok; ++i)
        for (int j = i + 1; j < d && ok; ++j) {
          Rat dist2 = (disks[i].center - disks[j].center).norm2();
          Rat rsum = disks[i].radius + disks[j].radius;
          if (!(dist2 > rsum * rsum)) ok = false;
        }
    }
    if (ok) return disks;
  }
  throw Error("Inconclusive", "root disks did not certify at the refinement cap");
}

// Index of the disk holding the selected real root > 1.
size_t beta_disk(const std::vector<RootDisk>& disks, const NumberField& f) {
  auto [blo, bhi] = f.enclosure_within(Rat(1, 1024));
  for (size_t i = 0; i < disks.size(); ++i) {
    const auto& dk = disks[i];
    if (dk.center.im.get_num() < 0 ? (-dk.center.im > dk.radius)
                                   : (dk.center.im > dk.radius))
      continue;
    if (dk.center.re + dk.radius < blo || dk.center.re - dk.radius > bhi) continue;
    return i;
  }
  throw Error("Inconclusive", "no certified disk matches the selected root");
}

std::pair<Rat, Rat> inverse_beta_enclosure(const NumberField& f) {
  Rat tol = Rat(1);
  mpq_div_2exp(tol.get_mpq_t(), tol.get_mpq_t(), 64);
  auto [lo, hi] = f.enclosure_within(tol);
  return {Rat(1) / hi, Rat(1) / lo};
}

}  // namespace

SlopeClass classify(const NumberField& f) {
  const auto& mp = f.minpoly();
  const int d = f.degree();
  if (d == 1) return {SlopeTag::Pisot, {}};

  Rat tol = Rat(1);
  mpq_div_2exp(tol.get_mpq_t(), tol.get_mpq_t(), 64);

  if (is_palindromic(mp)) {
    if (d == 2) {
      // the only conjugate is 1/beta < 1
      auto [lo, hi] = inverse_beta_enclosure(f);
      return {SlopeTag::Pisot, {{lo, hi}}};
    }
    // d even >= 4 (odd palindromic is divisible by x+1, hence reducible).
    // Roots pair as (z, 1/z); Salem iff all pairs other than (beta, 1/beta)
    // lie on the unit circle, i.e. the transform g has m-1 roots in (-2, 2).
    poly::ZPoly g = half_trace_transform(mp);
    int m = d / 2;
    int inside = poly::count_real_roots(g, Rat(-2), Rat(2));
    if (inside == m - 1) {
      std::vector<ConjugateBound> mods;
      auto [lo, hi] = inverse_beta_enclosure(f);
      mods.push_back({lo, hi});
      for (int i = 0; i < d - 2; ++i) mods.push_back({Rat(1), Rat(1)});
      return {SlopeTag::Salem, mods};
    }
    // Some pair lies off the circle, so a conjugate has modulus > 1: not
    // Salem, and palindromic of degree >= 4 cannot be Pisot. Disks here may
    // legitimately straddle 1 (other pairs can sit on the circle), so only
    // a size cap is requested.
    auto disks = certified_disks(mp, Rat(1, 1024));
    size_t bi = beta_disk(disks, f);
    std::vector<ConjugateBound> mods;
    for (size_t i = 0; i < disks.size(); ++i)
      if (i != bi) mods.push_back({disks[i].modulus.first, disks[i].modulus.second});
    return {SlopeTag::OtherAlgebraic, mods};
  }

  // Not palindromic: no conjugate sits on the unit circle, so refining the
  // disks eventually separates every conjugate modulus from 1.
  for (Rat cap = Rat(1, 1024);; cap /= Rat(1) << 16) {
    auto disks = certified_disks(mp, cap);
    size_t bi = beta_disk(disks, f);
    bool conclusive = true, all_inside = true;
    std::vector<ConjugateBound> mods;
    for (size_t i = 0; i < disks.size(); ++i) {
      if (i == bi) continue;
      const auto& [lo, hi] = disks[i].modulus;
      if (hi < 1) {
        // strictly inside
      } else if (lo > 1) {
        all_inside = false;
      } else {
        conclusive = false;
      }
      mods.push_back({lo, hi});
    }
    if (conclusive)
      return {all_inside ? SlopeTag::Pisot : SlopeTag::OtherAlgebraic, mods};
    Rat width;
    mpq_div_2exp(width.get_mpq_t(), Rat(1).get_mpq_t(), 512);
    if (cap < width)
      throw Error("Inconclusive", "conjugate moduli undecided at the refinement cap");
  }
}

}  // namespace betamatch
