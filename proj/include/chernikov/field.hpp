#pragma once

// Arithmetic in GF(2^k), k <= 16.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace chernikov {

/// Raw representative of a field element: coefficient i of the residue class in bit i.
using Elem = std::uint32_t;

inline constexpr unsigned kMaxFieldDegree = 16;

class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

inline int bit_degree(std::uint64_t p) {
  int d = -1;
  while (p) {
    ++d;
    p >>= 1;
  }
  return d;
}

inline std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    a <<= 1;
    b >>= 1;
  }
  return r;
}

inline std::uint64_t bit_mod(std::uint64_t a, std::uint64_t m) {
  const int dm = bit_degree(m);
  for (int da = bit_degree(a); da >= dm; da = bit_degree(a)) a ^= m << (da - dm);
  return a;
}

// Irreducibility over GF(2) by trial division; degree <= 16 keeps this instant.
inline bool gf2_irreducible(std::uint64_t p) {
  const int d = bit_degree(p);
  if (d < 1) return false;
  if (d == 1) return true;
  if ((p & 1) == 0) return false;
  for (std::uint64_t q = 2; bit_degree(q) <= d / 2; ++q)
    if (bit_mod(p, q) == 0) return false;
  return true;
}

}  // namespace detail

/// Extension degree k and the irreducible modulus defining GF(2^k).
struct FieldSpec {
  unsigned degree = 1;
  std::uint32_t modulus = 0b11;  // t + 1 placeholder for GF(2)

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
  friend auto operator<=>(const FieldSpec&, const FieldSpec&) = default;

  std::uint32_t size() const { return std::uint32_t{1} << degree; }

  static FieldSpec gf2() { return {}; }

  /// Lexicographically smallest irreducible polynomial of the given degree.
  static FieldSpec with_default_modulus(unsigned k) {
    if (k == 0 || k > kMaxFieldDegree)
      throw usage_error("field degree must be in [1, " + std::to_string(kMaxFieldDegree) + "]");
    if (k == 1) return gf2();
    for (std::uint32_t m = (1u << k) | 1u; m < (2u << k); m += 2)
      if (detail::gf2_irreducible(m)) return {k, m};
    throw std::logic_error("no irreducible polynomial found");
  }

  /// Parses `gf2`, `gf2^k` or `gf2^k:0xMM`.
  static FieldSpec parse(std::string_view text) {
    auto fail = [&] { return usage_error("bad field spec '" + std::string(text) + "'"); };
    if (text == "gf2") return gf2();
    if (text.substr(0, 4) != "gf2^") throw fail();
    auto rest = text.substr(4);
    auto colon = rest.find(':');
    unsigned k = 0;
    try {
      std::size_t used = 0;
      k = static_cast<unsigned>(std::stoul(std::string(rest.substr(0, colon)), &used));
      if (used != rest.substr(0, colon).size()) throw fail();
    } catch (const std::logic_error&) {
      throw fail();
    }
    if (colon == std::string_view::npos) return with_default_modulus(k);
    auto mod_text = std::string(rest.substr(colon + 1));
    std::uint32_t m = 0;
    try {
      std::size_t used = 0;
      m = static_cast<std::uint32_t>(std::stoul(mod_text, &used, 16));
      if (used != mod_text.size()) throw fail();
    } catch (const std::logic_error&) {
      throw fail();
    }
    FieldSpec spec{k, m};
    spec.validate();
    return spec;
  }

  void validate() const {
    if (degree == 0 || degree > kMaxFieldDegree)
      throw usage_error("field degree must be in [1, " + std::to_string(kMaxFieldDegree) + "]");
    if (degree == 1) {
      if (modulus != 0b11) throw usage_error("GF(2) takes no modulus");
      return;
    }
    if (detail::bit_degree(modulus) != static_cast<int>(degree))
      throw usage_error("modulus degree differs from field degree");
    if (!detail::gf2_irreducible(modulus)) throw usage_error("modulus is reducible over GF(2)");
  }

  std::string to_string() const {
    if (degree == 1) return "gf2";
    std::ostringstream os;
    os << "gf2^" << degree << ":0x" << std::hex << modulus;
    return os.str();
  }
};

/// Arithmetic context for one GF(2^k). Instances are interned: obtain them with
/// Field::get, compare them by address, and never destroy them.
class Field {
 public:
  static const Field& get(const FieldSpec& spec) {
    static std::mutex mutex;
    static std::map<FieldSpec, std::unique_ptr<const Field>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[spec];
    if (!slot) {
      spec.validate();
      slot.reset(new Field(spec));
    }
    return *slot;
  }
  static const Field& gf2() { return get(FieldSpec::gf2()); }

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  const FieldSpec& spec() const { return spec_; }
  unsigned degree() const { return spec_.degree; }
  std::uint32_t size() const { return spec_.size(); }
  bool is_gf2() const { return spec_.degree == 1; }

  bool contains(Elem a) const { return a < size(); }

  static Elem add(Elem a, Elem b) { return a ^ b; }

  Elem mul(Elem a, Elem b) const {
    if (is_gf2()) return a & b;
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }

  Elem inv(Elem a) const {
    if (a == 0) throw domain_error("division by zero in " + spec_.to_string());
    if (is_gf2()) return 1;
    return exp_[order() - log_[a]];
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem pow(Elem a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    if (is_gf2()) return 1;
    return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % order())) % order()];
  }

  Elem square(Elem a) const { return mul(a, a); }

  /// Unique square root, the inverse of Frobenius: a^(2^(k-1)).
  Elem sqrt(Elem a) const {
    Elem r = a;
    for (unsigned i = 1; i < degree(); ++i) r = square(r);
    return r;
  }

  /// Absolute trace GF(2^k) -> GF(2).
  Elem trace(Elem a) const {
    Elem t = 0, s = a;
    for (unsigned i = 0; i < degree(); ++i) {
      t ^= s;
      s = square(s);
    }
    return t;
  }

  /// All elements: 0, 1, then increasing bit value.
  std::vector<Elem> enumerate() const {
    std::vector<Elem> out(size());
    for (Elem i = 0; i < size(); ++i) out[i] = i;
    return out;
  }

  /// A generator of the multiplicative group.
  Elem primitive() const { return is_gf2() ? 1 : exp_[1]; }

  std::string format(Elem a) const {
    std::ostringstream os;
    os << std::hex << a;
    return os.str();
  }

  Elem parse(std::string_view text) const {
    std::string s(text);
    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) s = s.substr(2);
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &used, 16);
    } catch (const std::logic_error&) {
      throw usage_error("bad field element '" + std::string(text) + "'");
    }
    if (used != s.size() || v >= size())
      throw usage_error("bad field element '" + std::string(text) + "' for " + spec_.to_string());
    return static_cast<Elem>(v);
  }

 private:
  explicit Field(const FieldSpec& spec) : spec_(spec) {
    if (is_gf2()) return;
    const std::uint32_t q = size();
    // The modulus need not be primitive, so search for a generator.
    std::vector<std::uint32_t> prime_factors;
    {
      std::uint32_t n = q - 1;
      for (std::uint32_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
          prime_factors.push_back(p);
          while (n % p == 0) n /= p;
        }
      if (n > 1) prime_factors.push_back(n);
    }
    auto slow_pow = [&](std::uint64_t a, std::uint64_t e) {
      std::uint64_t r = 1;
      while (e) {
        if (e & 1) r = detail::bit_mod(detail::clmul(r, a), spec_.modulus);
        a = detail::bit_mod(detail::clmul(a, a), spec_.modulus);
        e >>= 1;
      }
      return r;
    };
    std::uint64_t gen = 2;
    for (;; ++gen) {
      bool ok = true;
      for (auto p : prime_factors)
        if (slow_pow(gen, (q - 1) / p) == 1) {
          ok = false;
          break;
        }
      if (ok) break;
    }
    exp_.assign(2 * (q - 1), 0);
    log_.assign(q, 0);
    std::uint64_t x = 1;
    for (std::uint32_t i = 0; i < q - 1; ++i) {
      exp_[i] = static_cast<Elem>(x);
      exp_[i + q - 1] = static_cast<Elem>(x);
      log_[x] = i;
      x = detail::bit_mod(detail::clmul(x, gen), spec_.modulus);
    }
  }

  std::uint32_t order() const { return size() - 1; }

  FieldSpec spec_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
};

/// A field element bound to its field. Mixing fields is a usage error.
class FieldElement {
 public:
  FieldElement(const Field& field, Elem bits) : field_(&field), bits_(bits) {
    if (!field.contains(bits)) throw usage_error("element out of range for " + field.spec().to_string());
  }

  const Field& field() const { return *field_; }
  Elem bits() const { return bits_; }
  bool is_zero() const { return bits_ == 0; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    return {a.same_field(b), Field::add(a.bits_, b.bits_)};
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + b; }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    return {a.same_field(b), a.field_->mul(a.bits_, b.bits_)};
  }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    return {a.same_field(b), a.field_->div(a.bits_, b.bits_)};
  }
  FieldElement inverse() const { return {*field_, field_->inv(bits_)}; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_ == b.field_ && a.bits_ == b.bits_;
  }

 private:
  const Field& same_field(const FieldElement& other) const {
    if (field_ != other.field_)
      throw usage_error("field mismatch: " + field_->spec().to_string() + " vs " + other.field_->spec().to_string());
    return *field_;
  }

  const Field* field_;
  Elem bits_;
};

inline FieldElement field_add(const FieldElement& a, const FieldElement& b) { return a + b; }
inline FieldElement field_mul(const FieldElement& a, const FieldElement& b) { return a * b; }
inline FieldElement field_inv(const FieldElement& a) { return a.inverse(); }

inline std::vector<FieldElement> field_enumerate(const FieldSpec& spec) {
  const Field& f = Field::get(spec);
  std::vector<FieldElement> out;
  out.reserve(f.size());
  for (Elem e : f.enumerate()) out.emplace_back(f, e);
  return out;
}

}  // namespace chernikov
