#include "ergosol/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

#include "ergosol/errors.hpp"

namespace ergosol {

namespace {

std::int64_t parse_int(const std::string& s) {
  if (s.empty()) throw ConfigError("empty integer in rational literal");
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw ConfigError("bad integer '" + s + "' in rational literal");
  }
  if (pos != s.size()) throw ConfigError("trailing characters in integer '" + s + "'");
  return v;
}

}  // namespace

Rat parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw ConfigError("empty rational literal");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::int64_t num = parse_int(s.substr(0, slash));
    std::int64_t den = parse_int(s.substr(slash + 1));
    if (den == 0) throw ConfigError("zero denominator in '" + text + "'");
    return Rat(num, den);
  }

  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string head = s.substr(0, dot);
    std::string tail = s.substr(dot + 1);
    if (tail.size() > 15) throw ConfigError("decimal '" + text + "' has too many digits");
    bool neg = !head.empty() && head[0] == '-';
    if (neg || (!head.empty() && head[0] == '+')) head = head.substr(1);
    std::int64_t ip = head.empty() ? 0 : parse_int(head);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < tail.size(); ++i) den *= 10;
    std::int64_t fp = tail.empty() ? 0 : parse_int(tail);
    if (fp < 0) throw ConfigError("malformed decimal '" + text + "'");
    Rat r = Rat(ip) + Rat(fp, den);
    return neg ? -r : r;
  }

  return Rat(parse_int(s));
}

std::string format_rational(const Rat& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << '/' << r.denominator();
  return os.str();
}

std::vector<Rat> parse_rational_list(const std::string& csv) {
  std::vector<Rat> out;
  std::string item;
  std::istringstream is(csv);
  while (std::getline(is, item, ',')) out.push_back(parse_rational(item));
  if (out.empty()) throw ConfigError("empty list '" + csv + "'");
  return out;
}

}  // namespace ergosol
