#include "hgc/rational.hpp"

#include <cctype>

#include "hgc/graph.hpp"

namespace hgc {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  if (s.empty()) throw UsageError("empty rational");
  const auto slash = s.find('/');
  auto parse_int = [](const std::string& part) {
    BigInt z;
    if (part.empty() || z.set_str(part, 10) != 0) throw UsageError("malformed rational '" + part + "'");
    return z;
  };
  const BigInt num = parse_int(s.substr(0, slash));
  BigInt den = 1;
  if (slash != std::string::npos) den = parse_int(s.substr(slash + 1));
  if (den == 0) throw UsageError("zero denominator in '" + s + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace hgc
