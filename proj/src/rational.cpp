#include "betamatch/rational.hpp"

#include <stdexcept>

namespace betamatch {

Rat parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error("BadRational", "empty rational literal");
  try {
    Rat q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument(s);
    if (q.get_den() == 0) throw std::invalid_argument(s);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw Error("BadRational", "cannot parse rational '" + s + "'");
  }
}

std::string rational_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Int rational_floor(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

Rat dyadic_round(const Rat& q, unsigned bits) {
  Rat scaled = q;
  mpq_mul_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), bits);
  Rat shifted = scaled + Rat(1, 2);
  Rat out(rational_floor(shifted));
  mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), bits);
  return out;
}

std::string rational_decimal(const Rat& q, int digits) {
  if (digits < 1) throw Error("BadDigits", "digits must be >= 1");
  bool neg = sgn(q) < 0;
  Rat a = abs(q);
  Int pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned>(digits));
  // round(|q| * 10^d) with ties away from zero
  Rat scaled = a * Rat(pow10);
  Int n = rational_floor(scaled + Rat(1, 2));
  Int ipart = n / pow10;
  Int fpart = n % pow10;
  std::string frac = fpart.get_str();
  frac.insert(0, static_cast<size_t>(digits) - frac.size(), '0');
  std::string out = ipart.get_str() + "." + frac;
  if (neg && n != 0) out.insert(0, "-");
  return out;
}

}  // namespace betamatch
