#pragma once

#include <climits>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace goppa {

struct FieldError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Construction-time polynomial scraps over GF(p): digit vectors, low degree
// first.  Only Field::create uses these; everything afterwards runs on the
// exp/log tables.
using Digs = std::vector<unsigned>;

inline void dig_trim(Digs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Digs dig_mod(Digs a, const Digs& mod, unsigned p) {
  // mod is monic
  dig_trim(a);
  while (a.size() >= mod.size()) {
    unsigned lead = a.back();
    std::size_t shift = a.size() - mod.size();
    for (std::size_t i = 0; i < mod.size(); ++i) {
      unsigned sub = (lead * mod[i]) % p;
      a[shift + i] = (a[shift + i] + p - sub) % p;
    }
    dig_trim(a);
  }
  return a;
}

inline Digs dig_mulmod(const Digs& a, const Digs& b, const Digs& mod, unsigned p) {
  if (a.empty() || b.empty()) return {};
  Digs r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  return dig_mod(std::move(r), mod, p);
}

inline std::string dig_str(const Digs& a) {
  std::string s;
  for (unsigned d : a) s += static_cast<char>('0' + d);
  return s.empty() ? "0" : s;
}

}  // namespace detail

// GF(p^m).  An element is an integer in [0, q): its base-p digits are the
// coefficients of the residue polynomial, low degree first, so over GF(2)
// the integer is simply the coefficient bit pattern.  Multiplicative
// structure lives in exp/log tables over a generator that is verified to
// have order exactly q-1: the residue of x when possible, otherwise the
// first element found by an index-order scan.
class Field {
 public:
  // modulus: digits low degree first, length m+1; normalized to monic.
  // Throws FieldError when p is not prime or the modulus is reducible (the
  // message names a factor found by trial division).
  static Field create(unsigned p, unsigned m, std::vector<unsigned> modulus) {
    if (!detail::is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
    if (m < 1) throw FieldError("extension degree must be at least 1");
    if (m > 20) throw FieldError("extension degree too large for table construction");
    for (auto& d : modulus) d %= p;
    detail::dig_trim(modulus);
    if (modulus.size() != m + 1)
      throw FieldError("modulus degree is not " + std::to_string(m));
    if (modulus.back() != 1) {
      // scale to monic
      unsigned lead = modulus.back(), inv = 1;
      while ((lead * inv) % p != 1) ++inv;
      for (auto& d : modulus) d = (d * inv) % p;
    }

    // reducibility by trial division over all monic polys of degree <= m/2;
    // the found factor is reported, which a mere pass/fail test could not do
    if (m >= 2) {
      for (unsigned d = 1; 2 * d <= m; ++d) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < d; ++i) count *= p;
        for (std::uint64_t c = 0; c < count; ++c) {
          detail::Digs h(d + 1, 0);
          std::uint64_t v = c;
          for (unsigned i = 0; i < d; ++i) {
            h[i] = static_cast<unsigned>(v % p);
            v /= p;
          }
          h[d] = 1;
          if (detail::dig_mod(modulus, h, p).empty())
            throw FieldError("modulus reducible: divisible by " + detail::dig_str(h) +
                             " (digits low degree first)");
        }
      }
    }

    Field F;
    F.p_ = p;
    F.m_ = m;
    std::uint64_t q = 1;
    for (unsigned i = 0; i < m; ++i) q *= p;
    if (q > (1u << 20)) throw FieldError("field too large (q > 2^20)");
    F.q_ = static_cast<std::uint32_t>(q);
    F.modulus_.assign(modulus.begin(), modulus.end());

    // residue of x
    detail::Digs xres = detail::dig_mod({0, 1}, modulus, p);
    std::uint32_t xidx = F.pack(xres);
    F.x_ = xidx;

    // generator: x first, then scan element indices in increasing order
    std::vector<std::uint32_t> candidates;
    candidates.push_back(xidx);
    for (std::uint32_t e = 2; e < F.q_; ++e)
      if (e != xidx) candidates.push_back(e);
    if (F.q_ == 2) candidates.assign(1, 1);

    for (std::uint32_t cand : candidates) {
      if (cand == 0 || cand == 1) {
        if (!(F.q_ == 2 && cand == 1)) continue;
      }
      if (F.try_generator(cand)) return F;
    }
    throw FieldError("no generator found (internal error)");  // unreachable: group is cyclic
  }

  static Field prime(unsigned p) { return create(p, 1, {1, 1}); }

  unsigned p() const { return p_; }
  unsigned m() const { return m_; }
  std::uint32_t q() const { return q_; }
  // the residue of x (equals the generator for every primitive modulus)
  std::uint32_t x() const { return x_; }
  std::uint32_t generator() const { return gen_; }
  const std::vector<unsigned>& modulus() const { return modulus_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (p_ == 2) return a ^ b;
    std::uint32_t r = 0, w = 1;
    for (unsigned i = 0; i < m_; ++i) {
      r += ((a % p_ + b % p_) % p_) * w;
      a /= p_;
      b /= p_;
      w *= p_;
    }
    return r;
  }

  std::uint32_t neg(std::uint32_t a) const {
    if (p_ == 2) return a;
    std::uint32_t r = 0, w = 1;
    for (unsigned i = 0; i < m_; ++i) {
      r += ((p_ - a % p_) % p_) * w;
      a /= p_;
      w *= p_;
    }
    return r;
  }

  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[static_cast<std::size_t>(log_[a]) + log_[b]];
  }

  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) throw FieldError("inverse of zero");
    return exp_[q_ - 1 - log_[a]];
  }

  std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }

  // a^e with the exponent taken mod q-1 for nonzero a; 0^0 = 1
  std::uint32_t pow(std::uint32_t a, long long e) const {
    if (a == 0) {
      if (e == 0) return 1;
      if (e < 0) throw FieldError("inverse of zero");
      return 0;
    }
    long long n = q_ - 1;
    long long k = ((static_cast<long long>(log_[a]) * (e % n)) % n + n) % n;
    return exp_[k];
  }

  // alpha^i for any integer i
  std::uint32_t alpha_pow(long long i) const {
    long long n = q_ - 1;
    return exp_[((i % n) + n) % n];
  }

  int log(std::uint32_t a) const {
    if (a == 0) throw FieldError("log of zero");
    return log_[a];
  }

  // prime-subfield constant c as a field element
  std::uint32_t embed(unsigned c) const { return c % p_; }

  std::vector<unsigned> digits(std::uint32_t a) const {
    std::vector<unsigned> d(m_);
    for (unsigned i = 0; i < m_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  }

  std::uint32_t from_digits(const std::vector<unsigned>& d) const {
    std::uint32_t r = 0, w = 1;
    for (unsigned i = 0; i < m_; ++i) {
      r += (i < d.size() ? d[i] % p_ : 0) * w;
      w *= p_;
    }
    return r;
  }

  bool same(const Field& o) const { return this == &o; }

 private:
  Field() = default;

  std::uint32_t pack(const detail::Digs& d) const {
    std::uint32_t r = 0, w = 1;
    for (unsigned i = 0; i < m_; ++i) {
      r += (i < d.size() ? d[i] : 0) * w;
      w *= p_;
    }
    return r;
  }

  detail::Digs unpack(std::uint32_t a) const {
    detail::Digs d(m_);
    for (unsigned i = 0; i < m_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    detail::dig_trim(d);
    return d;
  }

  // Build tables on cand if its order is exactly q-1.
  bool try_generator(std::uint32_t cand) {
    const std::uint32_t n = q_ - 1;
    std::vector<std::uint32_t> powers;
    powers.reserve(n);
    detail::Digs cd = unpack(cand);
    detail::Digs cur{1};
    std::uint32_t idx = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
      powers.push_back(idx);
      cur = detail::dig_mulmod(cur, cd, modulus_, p_);
      idx = pack(cur);
      if (idx == 1 && i + 1 < n) return false;  // order divides i+1 < q-1
    }
    if (idx != 1) return false;
    gen_ = cand;
    exp_.resize(2 * n);
    log_.assign(q_, -1);
    for (std::uint32_t i = 0; i < n; ++i) {
      exp_[i] = powers[i];
      exp_[i + n] = powers[i];
      log_[powers[i]] = static_cast<int>(i);
    }
    return true;
  }

  unsigned p_ = 0, m_ = 0;
  std::uint32_t q_ = 0, gen_ = 0, x_ = 0;
  std::vector<unsigned> modulus_;
  std::vector<std::uint32_t> exp_;
  std::vector<int> log_;
};

}  // namespace goppa
