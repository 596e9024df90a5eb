#pragma once

// Exact coefficient fields: arbitrary-precision rationals (Rat) and prime
// fields with runtime modulus (Fp).  Everything downstream is templated on
// the field type F, which must provide the small interface exercised here:
//   F(), F(long), from_mpq, +,-,*,/, ==, is_zero, inv, characteristic,
//   to_string, name.

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace mocklie {

// Rationals in lowest terms with positive denominator.  mpq_class does not
// canonicalize values built from a num/den pair (mpq_class(2,6) compares
// unequal to 1/3), so every constructor that could produce a non-canonical
// value calls canonicalize().
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}
  Rat(long num, unsigned long den) : v_(num, den) {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    v_.canonicalize();
  }
  explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  static Rat from_mpq(const mpq_class& q) { return Rat(q); }
  static constexpr unsigned long characteristic() { return 0; }
  static std::string name() { return "Q"; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }

  Rat operator-() const { return wrap(-v_); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("Rat: division by zero");
    v_ /= o.v_;
    return *this;
  }
  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }

  Rat inv() const {
    if (is_zero()) throw std::domain_error("Rat: inverse of zero");
    return wrap(1 / v_);
  }

  // "3", "-3", "2/7"
  std::string to_string() const { return v_.get_str(); }
  const mpq_class& mpq() const { return v_; }

 private:
  static Rat wrap(mpq_class q) {
    Rat r;
    r.v_ = std::move(q);  // arithmetic on canonical operands stays canonical
    return r;
  }
  mpq_class v_;
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a % n, d, n);
    if (x <= 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) { witness = false; break; }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace detail

// Prime field with a process-wide runtime modulus.  One modulus is active at
// a time (set_modulus); values created under different moduli must not be
// mixed, which every use here respects by keeping one field per run.
// Characteristics 2 and 3 are rejected: the algebra theory needs 1/2 (and
// several constructions divide by 3).
class Fp {
 public:
  Fp() : v_(0) {}
  Fp(long n) {
    long long r = n % static_cast<long long>(p());
    if (r < 0) r += static_cast<long long>(p());
    v_ = static_cast<std::uint64_t>(r);
  }

  static void set_modulus(std::uint64_t p) {
    if (!detail::is_prime_u64(p)) throw std::domain_error("Fp: modulus must be prime");
    if (p == 2 || p == 3) throw std::domain_error("Fp: characteristic 2 and 3 unsupported");
    if (p > (1ull << 62)) throw std::domain_error("Fp: modulus too large");
    modulus_ref() = p;
  }
  static std::uint64_t characteristic() { return p(); }
  static std::string name() { return "F" + std::to_string(p()); }

  static Fp from_mpq(const mpq_class& q) {
    mpz_class num = q.get_num(), den = q.get_den();
    mpz_class pz(static_cast<unsigned long>(p()));
    mpz_class dm = den % pz;
    if (dm == 0) throw std::domain_error("Fp: denominator divisible by modulus");
    mpz_class nm = num % pz;
    if (nm < 0) nm += pz;
    Fp r = raw(nm.get_ui());
    return r * raw(dm.get_ui()).inv();
  }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Fp operator-() const { return raw(v_ == 0 ? 0 : p() - v_); }
  Fp& operator+=(const Fp& o) {
    v_ += o.v_;
    if (v_ >= p()) v_ -= p();
    return *this;
  }
  Fp& operator-=(const Fp& o) {
    v_ = (v_ >= o.v_) ? v_ - o.v_ : v_ + p() - o.v_;
    return *this;
  }
  Fp& operator*=(const Fp& o) { v_ = detail::mulmod(v_, o.v_, p()); return *this; }
  Fp& operator/=(const Fp& o) { return *this *= o.inv(); }
  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend bool operator==(const Fp& a, const Fp& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Fp& a, const Fp& b) { return a.v_ != b.v_; }

  Fp inv() const {
    if (v_ == 0) throw std::domain_error("Fp: inverse of zero");
    return raw(detail::powmod(v_, p() - 2, p()));
  }

  std::string to_string() const { return std::to_string(v_); }
  std::uint64_t value() const { return v_; }

 private:
  static std::uint64_t& modulus_ref() {
    static std::uint64_t m = 5;  // some valid prime until set_modulus is called
    return m;
  }
  static std::uint64_t p() { return modulus_ref(); }
  static Fp raw(std::uint64_t v) {
    Fp r;
    r.v_ = v;
    return r;
  }
  std::uint64_t v_;
};

// RAII helper for code that runs several primes in one process (tests do).
struct FpScope {
  explicit FpScope(std::uint64_t p) : saved_(Fp::characteristic()) { Fp::set_modulus(p); }
  ~FpScope() { Fp::set_modulus(saved_); }
  FpScope(const FpScope&) = delete;
  FpScope& operator=(const FpScope&) = delete;

 private:
  std::uint64_t saved_;
};

// Parses "n" or "n/m" (optional leading minus) into an exact rational.
inline mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("bad rational literal: " + s);
  q.canonicalize();
  return q;
}

}  // namespace mocklie
