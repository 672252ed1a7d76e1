#include "mlabe/mlmap.hpp"

#include <charconv>

namespace mlabe {

namespace {

bool is_probable_prime(const mpz_class& p) {
  return mpz_probab_prime_p(p.get_mpz_t(), 40) != 0;
}

// Canonical decimal: digits only, no leading zeros.
bool is_decimal(std::string_view s) {
  if (s.empty() || (s.size() > 1 && s.front() == '0')) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

mpz_class parse_decimal(std::string_view s, const char* what) {
  if (!is_decimal(s)) throw FormatError(std::string("expected decimal ") + what);
  return mpz_class(std::string(s), 10);
}

int parse_small_int(std::string_view s, const char* what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (!is_decimal(s) || ec != std::errc() || ptr != s.data() + s.size())
    throw FormatError(std::string("expected integer ") + what);
  return v;
}

}  // namespace

GroupDescriptor::GroupDescriptor(mpz_class p, int degree) : p_(std::move(p)), k_(degree) {
  if (k_ < 1) throw InvalidArgument("multilinearity degree must be at least 1");
  if (p_ < 3 || !is_probable_prime(p_)) throw InvalidArgument("group order must be a prime >= 3");
}

GroupDescriptor GroupDescriptor::generate(unsigned security_bits, int degree, Rng& rng) {
  if (degree < 1) throw InvalidArgument("multilinearity degree must be at least 1");
  // Start somewhere in [2^bits, 2^(bits+1)) and take the next prime, which is
  // strictly larger than the start.
  mpz_class start = (mpz_class(1) << security_bits) + rng.bits(security_bits);
  if (start < 2) start = 2;
  mpz_class p;
  mpz_nextprime(p.get_mpz_t(), start.get_mpz_t());
  return GroupDescriptor(std::move(p), degree);
}

Scalar::Scalar(const GroupDescriptor& gd, mpz_class value) : v_(std::move(value)) {
  if (v_ < 0 || v_ >= gd.prime()) throw InvalidArgument("scalar out of range [0, p)");
}

Scalar reduce(const GroupDescriptor& gd, const mpz_class& v) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), gd.prime().get_mpz_t());
  return Scalar(std::move(r));
}

Scalar add(const GroupDescriptor& gd, const Scalar& a, const Scalar& b) {
  return reduce(gd, a.value() + b.value());
}

Scalar sub(const GroupDescriptor& gd, const Scalar& a, const Scalar& b) {
  return reduce(gd, a.value() - b.value());
}

Scalar mul(const GroupDescriptor& gd, const Scalar& a, const Scalar& b) {
  return reduce(gd, a.value() * b.value());
}

Scalar neg(const GroupDescriptor& gd, const Scalar& a) { return reduce(gd, -a.value()); }

Scalar random_scalar(const GroupDescriptor& gd, Rng& rng) {
  return Scalar(gd, rng.below(gd.prime()));
}

void ReferenceBackend::check_level(int level) const {
  if (level < 1 || level > gd_.degree())
    throw InvalidArgument("level " + std::to_string(level) + " outside [1, " +
                          std::to_string(gd_.degree()) + "]");
}

LevelledElement ReferenceBackend::encode(const Scalar& a, int level) const {
  check_level(level);
  if (a.value() >= gd_.prime()) throw InvalidArgument("scalar belongs to a different group");
  return LevelledElement(level, a.value());
}

LevelledElement ReferenceBackend::pair(const Element& x, const Element& y) const {
  const int level = x.level_ + y.level_;
  if (level > gd_.degree())
    throw LevelOverflow("pairing levels " + std::to_string(x.level_) + " + " +
                        std::to_string(y.level_) + " exceeds k = " +
                        std::to_string(gd_.degree()));
  return LevelledElement(level, mlabe::mul(gd_, Scalar(gd_, x.exponent_),
                                           Scalar(gd_, y.exponent_)).value());
}

LevelledElement ReferenceBackend::mul(const Element& x, const Element& y) const {
  if (x.level_ != y.level_)
    throw LevelMismatch("group operation across levels " + std::to_string(x.level_) +
                        " and " + std::to_string(y.level_));
  return LevelledElement(x.level_, reduce(gd_, x.exponent_ + y.exponent_).value());
}

LevelledElement ReferenceBackend::inv(const Element& x) const {
  return LevelledElement(x.level_, reduce(gd_, -x.exponent_).value());
}

LevelledElement ReferenceBackend::pow(const Element& x, const Scalar& a) const {
  return LevelledElement(x.level_, reduce(gd_, x.exponent_ * a.value()).value());
}

std::string to_text(const GroupDescriptor& gd) {
  return "GROUP p=" + gd.prime().get_str(10) + " k=" + std::to_string(gd.degree());
}

GroupDescriptor group_from_text(std::string_view line) {
  constexpr std::string_view head = "GROUP p=";
  if (line.substr(0, head.size()) != head) throw FormatError("expected 'GROUP p=<prime> k=<degree>'");
  line.remove_prefix(head.size());
  const auto sep = line.find(" k=");
  if (sep == std::string_view::npos) throw FormatError("GROUP line is missing k=");
  mpz_class p = parse_decimal(line.substr(0, sep), "prime");
  const int k = parse_small_int(line.substr(sep + 3), "degree");
  try {
    return GroupDescriptor(std::move(p), k);
  } catch (const InvalidArgument& e) {
    throw FormatError(e.what());
  }
}

std::string to_text(const LevelledElement& e) {
  return "L" + std::to_string(e.level_) + ":" + e.exponent_.get_str(10);
}

LevelledElement element_from_text(const GroupDescriptor& gd, std::string_view text) {
  if (text.empty() || text.front() != 'L') throw FormatError("element must look like L<level>:<exponent>");
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw FormatError("element is missing ':'");
  const int level = parse_small_int(text.substr(1, colon - 1), "level");
  mpz_class exponent = parse_decimal(text.substr(colon + 1), "exponent");
  if (level < 1 || level > gd.degree()) throw FormatError("element level out of range");
  if (exponent >= gd.prime()) throw FormatError("element exponent not reduced mod p");
  // Reject non-canonical forms such as leading zeros so that parsing and
  // rendering are inverse.
  const std::string canonical = "L" + std::to_string(level) + ":" + exponent.get_str(10);
  if (canonical != text) throw FormatError("element is not in canonical form");
  return LevelledElement(level, std::move(exponent));
}

}  // namespace mlabe
