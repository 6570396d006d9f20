#include "schedgap/numeric.hpp"

#include <cctype>

#include "schedgap/errors.hpp"

namespace schedgap {

namespace {

bool is_dec_int(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_dec_int(num) || !is_dec_int(den))
      throw ParameterError("malformed rational: '" + s + "'");
    Int d = parse_int(den);
    if (d == 0) throw ParameterError("zero denominator: '" + s + "'");
    return Rat(parse_int(num), d);
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (!is_dec_int(whole) || frac.empty() || !is_dec_int(frac) ||
        frac[0] == '-' || frac[0] == '+')
      throw ParameterError("malformed decimal: '" + s + "'");
    Int scale = pow_int(10, static_cast<unsigned>(frac.size()));
    Int v = parse_int(whole) * scale;
    Int f = parse_int(frac);
    v += neg ? -f : f;
    return Rat(v, scale);
  }
  if (!is_dec_int(s)) throw ParameterError("malformed rational: '" + s + "'");
  return Rat(parse_int(s));
}

std::string format_rat(const Rat& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

Int parse_int(const std::string& s) {
  if (!is_dec_int(s)) throw ParameterError("malformed integer: '" + s + "'");
  return Int(s);
}

Int floor_rat(const Rat& q) {
  Int n = numerator(q), d = denominator(q);  // d > 0 canonical
  Int quot = n / d;                          // truncates toward zero
  if (n < 0 && quot * d != n) --quot;
  return quot;
}

Int ceil_rat(const Rat& q) { return -floor_rat(-q); }

Int pow_int(const Int& base, unsigned exp) {
  return boost::multiprecision::pow(base, exp);
}

std::int64_t to_i64(const Int& v, std::int64_t cap, const char* what) {
  if (v < 0 || v > cap)
    throw BudgetError(std::string(what) + " = " + v.str() +
                      " exceeds cap " + std::to_string(cap));
  return v.convert_to<std::int64_t>();
}

}  // namespace schedgap
