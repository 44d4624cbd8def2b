#include "circlekit/scalar.hpp"

#include <cctype>

#include "circlekit/errors.hpp"

namespace circlekit {

Scalar::Scalar(long num, long den) {
  if (den == 0) throw DegenerateInput("zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw DegenerateInput("division by zero");
  q_ /= o.q_;
  return *this;
}

namespace {

bool valid_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Scalar Scalar::parse(std::string_view text) {
  const auto slash = text.find('/');
  const auto num_part = text.substr(0, slash);
  if (!valid_integer(num_part)) throw ParseError("malformed rational: '" + std::string(text) + "'");
  mpz_class num = parse_integer(num_part);
  mpz_class den = 1;
  if (slash != std::string_view::npos) {
    const auto den_part = text.substr(slash + 1);
    if (!valid_integer(den_part)) throw ParseError("malformed rational: '" + std::string(text) + "'");
    den = parse_integer(den_part);
    if (den == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
  }
  return Scalar(mpq_class(num, den));
}

std::string Scalar::str() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::optional<Scalar> Scalar::exact_sqrt() const {
  if (sign() < 0) return std::nullopt;
  const mpz_class n = q_.get_num();
  const mpz_class d = q_.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return Scalar(mpq_class(rn, rd));
}

std::size_t Scalar::hash() const {
  // Low limbs of numerator and denominator; canonical form makes this well defined.
  const auto* num = q_.get_num_mpz_t();
  const auto* den = q_.get_den_mpz_t();
  std::size_t h = static_cast<std::size_t>(num->_mp_size);
  if (num->_mp_size != 0) h = h * 31 + static_cast<std::size_t>(num->_mp_d[0]);
  h = h * 1000003 + static_cast<std::size_t>(den->_mp_d[0]);
  return h;
}

std::string to_string(const PointN& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ", ";
    const auto& c = p[i];
    out += c.den() == 1 ? c.num().get_str() : c.str();
  }
  return out + ")";
}

}  // namespace circlekit
