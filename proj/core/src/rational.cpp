#include "chabauty/rational.hpp"

#include <cctype>

#include "chabauty/error.hpp"

namespace chabauty {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Precondition:
      return "precondition";
    case ErrorCode::Parse:
      return "parse";
    case ErrorCode::Resource:
      return "resource";
    case ErrorCode::AmbientMismatch:
      return "ambient_mismatch";
  }
  return "unknown";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty()) throw ParseError("malformed rational '" + std::string(whole) + "'");
  for (char ch : digits) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw ParseError("malformed rational '" + std::string(whole) + "'");
    }
  }
  std::string buf(s.front() == '+' ? s.substr(1) : s);
  return Integer(buf, 10);
}

constexpr unsigned kSqrtBits = 40;

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  Integer num = parse_integer(trim(s.substr(0, slash)), text);
  Integer den = 1;
  if (slash != std::string_view::npos) {
    den = parse_integer(trim(s.substr(slash + 1)), text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

std::string to_string(const Integer& z) { return z.get_str(10); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer round_nearest(const Rational& q) { return floor(q + Rational(1, 2)); }

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

namespace {

// floor(sqrt(q) * 2^k) and whether it is exact, for q >= 0.
std::pair<Integer, bool> scaled_isqrt(const Rational& q, Integer& scale) {
  // sqrt(a/b) = sqrt(a*b)/b
  Integer ab = q.get_num() * q.get_den();
  Integer root;
  mpz_sqrt(root.get_mpz_t(), ab.get_mpz_t());
  if (root * root == ab) {
    scale = q.get_den();
    return {root, true};
  }
  Integer shifted = ab << (2 * kSqrtBits);
  mpz_sqrt(root.get_mpz_t(), shifted.get_mpz_t());
  scale = Integer(q.get_den()) << kSqrtBits;
  return {root, false};
}

}  // namespace

Rational sqrt_lower(const Rational& q) {
  if (q <= 0) return 0;
  Integer scale;
  auto [root, exact] = scaled_isqrt(q, scale);
  Rational r(root, scale);
  r.canonicalize();
  return r;
}

Rational sqrt_upper(const Rational& q) {
  if (q <= 0) return 0;
  Integer scale;
  auto [root, exact] = scaled_isqrt(q, scale);
  Rational r(exact ? root : Integer(root + 1), scale);
  r.canonicalize();
  return r;
}

Integer ceil_sqrt(const Rational& q) {
  if (q <= 0) return 0;
  Integer c = ceil(q);
  Integer m;
  mpz_sqrt(m.get_mpz_t(), c.get_mpz_t());
  if (m * m < q) ++m;
  return m;
}

Integer lcm_denominators_of(const Rational& a, const Integer& acc) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), acc.get_mpz_t(), a.get_den_mpz_t());
  return r;
}

}  // namespace chabauty
