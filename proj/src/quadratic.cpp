#include "betamatch/quadratic.hpp"

#include <algorithm>

namespace betamatch {

QuadraticCase quadratic_case(const NumberField& f) {
  if (f.degree() != 2)
    throw Error("NotPisotQuadratic", "field is not quadratic");
  long k = -f.minpoly()[1].get_si();
  long c0 = f.minpoly()[0].get_si();
  QuadraticCase qc;
  qc.k = k;
  FieldElement beta = f.beta();
  if (c0 > 0) {
    qc.sign = QuadSign::plus_d;
    qc.d = c0;
    if (k < 1 || !(k > qc.d + 1))
      throw Error("NotPisotQuadratic", "x^2-kx+d needs k > d+1");
    qc.gamma = beta - Rat(k - 1);
    qc.circle_length = -beta + Rat(k);
  } else {
    qc.sign = QuadSign::minus_d;
    qc.d = -c0;
    if (k < 1 || !(k > qc.d - 1))
      throw Error("NotPisotQuadratic", "x^2-kx-d needs k > d-1");
    qc.gamma = -beta + Rat(k + 1);
    qc.circle_length = beta - Rat(k);  // 1 - gamma = d/beta
  }
  if (qc.d < 1) throw Error("NotPisotQuadratic", "constant term must be nonzero");
  return qc;
}

namespace {

void check_alpha(const NumberField& f, const FieldElement& alpha) {
  if (alpha.sign() < 0 || compare(alpha, f.one()) > 0)
    throw Error("AlphaOutOfRange", "alpha must lie in [0,1]");
}

// clip [lo, hi) to [dlo, dhi) and append when nonempty
void push_clipped(std::vector<Plateau>& out, FieldElement lo, FieldElement hi,
                  const FieldElement& dlo, const FieldElement& dhi,
                  const FieldElement& value) {
  if (compare(lo, dlo) < 0) lo = dlo;
  if (compare(hi, dhi) > 0) hi = dhi;
  if (compare(lo, hi) < 0) out.push_back({std::move(lo), std::move(hi), value});
}

}  // namespace

PlateauMap plateau_map_f1(const NumberField& f, const QuadraticCase& qc,
                          const FieldElement& alpha) {
  if (qc.sign != QuadSign::minus_d)
    throw Error("WrongRegime", "f1 belongs to the -d construction");
  check_alpha(f, alpha);
  FieldElement beta = f.beta();
  FieldElement regime = -beta + Rat(qc.k + 1);  // k+1-beta
  if (compare(alpha, regime) < 0)
    throw Error("WrongRegime", "alpha < k+1-beta: matching is immediate");
  PlateauMap pm;
  pm.kind = PlateauMap::Kind::minus_d_f1;
  pm.qc = qc;
  pm.alpha = alpha;
  pm.domain_lo = f.zero();
  pm.domain_hi = f.one() - qc.gamma;
  FieldElement inv_beta = beta.inverse();
  // V_i = {x in Delta(i) : x + gamma in Delta(i+k-d)}
  //     = [ (i-alpha)/beta , (i+1+k-d-alpha)/beta - gamma )
  for (long i = 0; i <= qc.d; ++i) {
    FieldElement lo = (alpha * Rat(-1) + Rat(i)) * inv_beta;
    FieldElement hi =
        (alpha * Rat(-1) + Rat(i + 1 + qc.k - qc.d)) * inv_beta - qc.gamma;
    push_clipped(pm.plateaus, std::move(lo), std::move(hi), pm.domain_lo,
                 pm.domain_hi, qc.gamma);
  }
  return pm;
}

PlateauMap plateau_map_f2(const NumberField& f, const QuadraticCase& qc,
                          const FieldElement& alpha) {
  if (qc.sign != QuadSign::minus_d)
    throw Error("WrongRegime", "f2 belongs to the -d construction");
  check_alpha(f, alpha);
  FieldElement beta = f.beta();
  FieldElement regime = -beta + Rat(qc.k + 1);
  if (compare(alpha, regime) < 0)
    throw Error("WrongRegime", "alpha < k+1-beta: matching is immediate");
  PlateauMap pm;
  pm.kind = PlateauMap::Kind::minus_d_f2;
  pm.qc = qc;
  pm.alpha = alpha;
  pm.domain_lo = qc.gamma;
  pm.domain_hi = f.one();
  FieldElement inv_beta = beta.inverse();
  FieldElement value = f.one() - qc.gamma;
  // W_i = [ (i-(k-d)-alpha)/beta + gamma , (i+1-alpha)/beta ), i = k-d+1..k
  for (long i = qc.k - qc.d + 1; i <= qc.k; ++i) {
    FieldElement lo =
        (alpha * Rat(-1) + Rat(i - (qc.k - qc.d))) * inv_beta + qc.gamma;
    FieldElement hi = (alpha * Rat(-1) + Rat(i + 1)) * inv_beta;
    push_clipped(pm.plateaus, std::move(lo), std::move(hi), pm.domain_lo,
                 pm.domain_hi, value);
  }
  return pm;
}

PlateauMap plateau_map(const NumberField& f, const QuadraticCase& qc,
                       const FieldElement& alpha) {
  check_alpha(f, alpha);
  FieldElement beta = f.beta();
  FieldElement inv_beta = beta.inverse();
  if (qc.sign == QuadSign::plus_d) {
    PlateauMap pm;
    pm.kind = PlateauMap::Kind::plus_d_g;
    pm.qc = qc;
    pm.alpha = alpha;
    pm.domain_lo = f.zero();
    pm.domain_hi = qc.circle_length;
    // V_i = [ (i+k-d-alpha)/beta - gamma , (i+1-alpha)/beta )
    for (long i = 0; i <= qc.d; ++i) {
      FieldElement lo =
          (alpha * Rat(-1) + Rat(i + qc.k - qc.d)) * inv_beta - qc.gamma;
      FieldElement hi = (alpha * Rat(-1) + Rat(i + 1)) * inv_beta;
      push_clipped(pm.plateaus, std::move(lo), std::move(hi), pm.domain_lo,
                   pm.domain_hi, qc.circle_length);
    }
    return pm;
  }

  // -d: composition f2 . f1 on [0, 1-gamma], slope beta^2, d + d^2 plateaus
  PlateauMap f1 = plateau_map_f1(f, qc, alpha);
  PlateauMap f2 = plateau_map_f2(f, qc, alpha);
  PlateauMap pm;
  pm.kind = PlateauMap::Kind::minus_d_composition;
  pm.qc = qc;
  pm.alpha = alpha;
  pm.domain_lo = f.zero();
  pm.domain_hi = f1.domain_hi;
  pm.slope_power = 2;

  FieldElement gamma_image = step(f, alpha, {qc.gamma, Side::plus}).point.value;
  for (const auto& v : f1.plateaus)
    pm.plateaus.push_back({v.lo, v.hi, gamma_image});

  // affine segments of f1 between consecutive plateaus (each branch-pure);
  // pull back every W through them
  FieldElement one_minus_gamma = f1.domain_hi;
  std::vector<std::pair<FieldElement, FieldElement>> segments;
  FieldElement cursor = f.zero();
  for (const auto& v : f1.plateaus) {
    if (compare(cursor, v.lo) < 0) segments.emplace_back(cursor, v.lo);
    cursor = v.hi;
  }
  if (compare(cursor, one_minus_gamma) < 0)
    segments.emplace_back(cursor, one_minus_gamma);

  for (const auto& [a, b] : segments) {
    FieldElement ya = beta * a + alpha;
    long dig = ya.is_integer() ? ya.as_rational().get_num().get_si()
                               : ya.floor_long();
    FieldElement ta = ya - Rat(dig);
    FieldElement tb = beta * b + alpha - Rat(dig);  // affine extension
    for (const auto& w : f2.plateaus) {
      FieldElement lo = compare(w.lo, ta) > 0 ? w.lo : ta;
      FieldElement hi = compare(w.hi, tb) < 0 ? w.hi : tb;
      if (compare(lo, hi) < 0)
        pm.plateaus.push_back(
            {a + (lo - ta) * inv_beta, a + (hi - ta) * inv_beta, w.value});
    }
  }
  std::sort(pm.plateaus.begin(), pm.plateaus.end(),
            [](const Plateau& x, const Plateau& y) { return compare(x.lo, y.lo) < 0; });
  return pm;
}

namespace {

bool is_circle(const PlateauMap& pm) {
  return pm.kind == PlateauMap::Kind::plus_d_g ||
         pm.kind == PlateauMap::Kind::minus_d_composition;
}

OneSidedPoint normalize_circle(const PlateauMap& pm, OneSidedPoint x) {
  if (!is_circle(pm)) return x;
  if (x.side == Side::plus && x.value == pm.domain_hi)
    return {x.value.field().zero(), Side::plus};
  if (x.side == Side::minus && x.value.is_zero())
    return {pm.domain_hi, Side::minus};
  return x;
}

}  // namespace

bool in_plateau(const PlateauMap& pm, const OneSidedPoint& x_in) {
  OneSidedPoint x = normalize_circle(pm, x_in);
  for (const auto& p : pm.plateaus) {
    int clo = compare(x.value, p.lo);
    int chi = compare(x.value, p.hi);
    if (clo > 0 && chi < 0) return true;
    if (clo == 0 && x.side == Side::plus) return true;
    if (chi == 0 && x.side == Side::minus) return true;
  }
  return false;
}

OneSidedPoint plateau_eval(const NumberField& f, const PlateauMap& pm,
                           const OneSidedPoint& x_in) {
  OneSidedPoint x = normalize_circle(pm, x_in);
  for (const auto& p : pm.plateaus) {
    int clo = compare(x.value, p.lo);
    int chi = compare(x.value, p.hi);
    bool inside = (clo > 0 && chi < 0) || (clo == 0 && x.side == Side::plus) ||
                  (chi == 0 && x.side == Side::minus);
    if (inside) return normalize_circle(pm, {p.value, Side::plus});
  }
  if (pm.kind == PlateauMap::Kind::minus_d_composition) {
    OneSidedPoint mid = step(f, pm.alpha, x).point;
    return normalize_circle(pm, step(f, pm.alpha, mid).point);
  }
  return normalize_circle(pm, step(f, pm.alpha, x).point);
}

EscapeOutcome escape_depth(const NumberField& f, const PlateauMap& pm,
                           OneSidedPoint x, int bound) {
  for (int n = 0; n < bound; ++n) {
    if (in_plateau(pm, x)) return {true, n};
    x = plateau_eval(f, pm, x);
  }
  return {false, bound};
}

std::vector<CircleArc> cylinder_components(const NumberField& f,
                                           const QuadraticCase& qc,
                                           const FieldElement& alpha,
                                           std::span<const int> word) {
  if (qc.sign != QuadSign::plus_d)
    throw Error("WrongRegime", "cylinder components belong to the +d case");
  check_alpha(f, alpha);
  FieldElement L = qc.circle_length;  // k - beta
  if (compare(alpha, L) >= 0)
    throw Error("WrongRegime", "alpha >= k-beta: matching is immediate");
  if (word.empty()) throw Error("EmptyCylinder", "word must be nonempty");
  for (int e : word)
    if (e < 0 || e >= qc.d)
      throw Error("EmptyCylinder", "letter outside {0..d-1}");

  FieldElement beta = f.beta();
  FieldElement inv_beta = beta.inverse();
  // target arcs C_e = [V_e.hi, V_{e+1 mod d}.lo) of length L/beta
  std::vector<FieldElement> starts(qc.d);
  for (long e = 0; e < qc.d; ++e)
    starts[e] = (alpha * Rat(-1) + Rat(e + 1)) * inv_beta;  // V_e.hi
  FieldElement target_len = L * inv_beta;

  struct Comp {
    FieldElement start, len, img_start;
  };
  std::vector<Comp> comps{{f.zero(), L, f.zero()}};
  FieldElement beta_n = f.one();  // beta^n, n = letters consumed

  auto mod_circle = [&](FieldElement v) {
    if (compare(v, L) >= 0) v = v - L;
    return v;
  };
  auto g_of = [&](const FieldElement& w) {
    FieldElement y = beta * w + alpha;
    long dig = y.is_integer() ? y.as_rational().get_num().get_si() : y.floor_long();
    return y - Rat(dig);
  };

  for (int e : word) {
    const FieldElement& tau = starts[e];
    std::vector<Comp> next;
    for (const auto& c : comps) {
      FieldElement img_len = c.len * beta_n;
      // target relative to the image start
      FieldElement delta = tau - c.img_start;
      if (delta.sign() < 0) delta = delta + L;
      // piece 1: [delta, min(delta+target_len, img_len))
      // piece 2 (wrap): [0, min(delta+target_len-L, img_len))
      auto emit = [&](const FieldElement& off, const FieldElement& end) {
        if (compare(off, end) >= 0) return;
        FieldElement lam = end - off;
        FieldElement w = mod_circle(c.img_start + off);
        Comp nc;
        nc.start = mod_circle(c.start + off / beta_n);
        nc.len = lam / beta_n;
        nc.img_start = g_of(w);
        next.push_back(std::move(nc));
      };
      FieldElement end1 = delta + target_len;
      if (compare(end1, img_len) > 0) end1 = img_len;
      if (compare(delta, img_len) < 0) emit(delta, end1);
      FieldElement wrap_end = delta + target_len - L;
      if (wrap_end.sign() > 0) {
        if (compare(wrap_end, img_len) > 0) wrap_end = img_len;
        emit(f.zero(), wrap_end);
      }
    }
    comps = std::move(next);
    if (comps.empty())
      throw Error("EmptyCylinder", "cylinder vanished (unrealizable word)");
    beta_n = beta_n * beta;
  }

  std::vector<CircleArc> out;
  out.reserve(comps.size());
  for (auto& c : comps) out.push_back({std::move(c.start), std::move(c.len)});
  std::sort(out.begin(), out.end(), [](const CircleArc& a, const CircleArc& b) {
    return compare(a.lo, b.lo) < 0;
  });
  return out;
}

}  // namespace betamatch
