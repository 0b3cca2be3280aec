#pragma once

#include <initializer_list>
#include <optional>

#include "gf.hpp"
#include "rng.hpp"

namespace goppa {

// Degree of the zero polynomial: a sentinel below every real degree, so
// comparisons against stop degrees and capability bounds stay total.
inline constexpr int kNegInfDegree = INT_MIN;

// Coefficients low degree first, trailing zeros trimmed; empty = zero.
struct Poly {
  std::vector<std::uint32_t> c;

  Poly() = default;
  Poly(std::initializer_list<std::uint32_t> coeffs) : c(coeffs) { trim(); }
  explicit Poly(std::vector<std::uint32_t> coeffs) : c(std::move(coeffs)) { trim(); }

  static Poly zero() { return {}; }
  static Poly one() { return Poly{1}; }
  static Poly z() { return Poly{0, 1}; }

  bool is_zero() const { return c.empty(); }
  int degree() const { return c.empty() ? kNegInfDegree : static_cast<int>(c.size()) - 1; }
  std::uint32_t coeff(std::size_t i) const { return i < c.size() ? c[i] : 0; }
  std::uint32_t lead() const { return c.empty() ? 0 : c.back(); }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  bool operator==(const Poly& o) const { return c == o.c; }
  bool operator!=(const Poly& o) const { return c != o.c; }
};

inline Poly poly_add(const Field& F, const Poly& a, const Poly& b) {
  Poly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = F.add(a.coeff(i), b.coeff(i));
  r.trim();
  return r;
}

inline Poly poly_neg(const Field& F, const Poly& a) {
  Poly r = a;
  for (auto& x : r.c) x = F.neg(x);
  return r;
}

inline Poly poly_sub(const Field& F, const Poly& a, const Poly& b) {
  Poly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = F.sub(a.coeff(i), b.coeff(i));
  r.trim();
  return r;
}

inline Poly poly_scale(const Field& F, const Poly& a, std::uint32_t s) {
  if (s == 0) return {};
  Poly r = a;
  for (auto& x : r.c) x = F.mul(x, s);
  return r;
}

inline Poly poly_mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Poly r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
  }
  r.trim();
  return r;
}

struct PolyDivMod {
  Poly quot, rem;
};

inline PolyDivMod poly_divmod(const Field& F, const Poly& a, const Poly& b) {
  if (b.is_zero()) throw FieldError("polynomial division by zero");
  Poly rem = a, quot;
  const int db = b.degree();
  if (rem.degree() >= db) quot.c.assign(rem.degree() - db + 1, 0);
  const std::uint32_t lead_inv = F.inv(b.lead());
  while (rem.degree() >= db) {
    const int shift = rem.degree() - db;
    const std::uint32_t f = F.mul(rem.lead(), lead_inv);
    quot.c[shift] = f;
    for (int i = 0; i <= db; ++i)
      rem.c[shift + i] = F.sub(rem.c[shift + i], F.mul(f, b.c[i]));
    rem.trim();
  }
  quot.trim();
  return {std::move(quot), std::move(rem)};
}

inline Poly poly_mod(const Field& F, const Poly& a, const Poly& b) {
  return poly_divmod(F, a, b).rem;
}

inline Poly poly_derivative(const Field& F, const Poly& a) {
  Poly r;
  if (a.c.size() <= 1) return r;
  r.c.resize(a.c.size() - 1);
  for (std::size_t i = 1; i < a.c.size(); ++i) {
    std::uint32_t k = F.embed(static_cast<unsigned>(i % F.p()));
    r.c[i - 1] = F.mul(a.c[i], k);
  }
  r.trim();
  return r;
}

inline std::uint32_t poly_eval(const Field& F, const Poly& a, std::uint32_t x) {
  std::uint32_t acc = 0;
  for (std::size_t i = a.c.size(); i-- > 0;) acc = F.add(F.mul(acc, x), a.c[i]);
  return acc;
}

inline Poly poly_monic(const Field& F, const Poly& a) {
  if (a.is_zero() || a.lead() == 1) return a;
  return poly_scale(F, a, F.inv(a.lead()));
}

struct EeaResult {
  Poly u, v, r;  // r = u*f + v*g
};

// Extended Euclid on (f, g).  Without a stop degree: returns the
// monic-normalized gcd with its Bezout pair.  With one: halts at the first
// remainder of degree <= stop_degree, scanning the remainder sequence
// f, g, r2, r3, ...; the cofactor degrees then satisfy the balanced bound
// (for stop = floor(t/2) against deg g = t: deg u <= floor((t-1)/2)).
inline EeaResult poly_eea(const Field& F, const Poly& f, const Poly& g,
                          std::optional<int> stop_degree = std::nullopt) {
  if (g.is_zero() && !stop_degree) throw FieldError("gcd with zero modulus");
  Poly r0 = f, r1 = g;
  Poly u0 = Poly::one(), v0 = Poly::zero();
  Poly u1 = Poly::zero(), v1 = Poly::one();
  if (stop_degree && r0.degree() <= *stop_degree) return {u0, v0, r0};
  while (!r1.is_zero()) {
    if (stop_degree && r1.degree() <= *stop_degree) return {u1, v1, r1};
    auto [q, r2] = poly_divmod(F, r0, r1);
    Poly u2 = poly_sub(F, u0, poly_mul(F, q, u1));
    Poly v2 = poly_sub(F, v0, poly_mul(F, q, v1));
    r0 = std::move(r1);
    u0 = std::move(u1);
    v0 = std::move(v1);
    r1 = std::move(r2);
    u1 = std::move(u2);
    v1 = std::move(v2);
  }
  if (stop_degree) return {u0, v0, r0};  // gcd itself is the first remainder that fits
  const std::uint32_t lead = r0.lead();
  if (lead != 0 && lead != 1) {
    const std::uint32_t s = F.inv(lead);
    r0 = poly_scale(F, r0, s);
    u0 = poly_scale(F, u0, s);
    v0 = poly_scale(F, v0, s);
  }
  return {u0, v0, r0};
}

// Inverse of f modulo g; empty result when gcd(f, g) != 1.
inline std::optional<Poly> poly_inv_mod(const Field& F, const Poly& f, const Poly& g) {
  EeaResult e = poly_eea(F, poly_mod(F, f, g), g);
  if (e.r.degree() != 0) return std::nullopt;
  return poly_mod(F, e.u, g);  // gcd normalized to 1, so u*f = 1 mod g
}

namespace detail {

// One Frobenius step: h -> h^p reduced mod f.  In characteristic p the
// p-th power maps sum(a_i z^i) to sum(a_i^p z^{ip}), so this is a cheap
// coefficient map plus dilation, not a generic exponentiation.
inline Poly frobenius_step(const Field& F, const Poly& h, const Poly& f) {
  if (h.is_zero()) return {};
  Poly d;
  d.c.assign(static_cast<std::size_t>(h.degree()) * F.p() + 1, 0);
  for (std::size_t i = 0; i < h.c.size(); ++i)
    if (h.c[i]) d.c[i * F.p()] = F.pow(h.c[i], F.p());
  d.trim();
  return poly_mod(F, d, f);
}

}  // namespace detail

// Irreducibility over the coefficient field GF(q): true iff f has no factor
// of degree in [1, deg f / 2].  The test walks the Frobenius chain
// z -> z^q -> z^(q^2) -> ... and applies the order/gcd criterion: f of
// degree d is irreducible iff z^(q^d) = z mod f and gcd(z^(q^(d/l)) - z, f)
// is 1 for every prime l dividing d.  Early gcd checks against the first
// few chain points reject polynomials with small factors cheaply.
inline bool poly_is_irreducible(const Field& F, const Poly& f) {
  const int d = f.degree();
  if (d < 1) throw FieldError("irreducibility of a constant");
  if (d == 1) return true;

  std::vector<int> prime_divs;
  int n = d;
  for (int l = 2; l * l <= n; ++l)
    if (n % l == 0) {
      prime_divs.push_back(l);
      while (n % l == 0) n /= l;
    }
  if (n > 1) prime_divs.push_back(n);

  const Poly z = Poly::z();
  const Poly fm = poly_monic(F, f);
  Poly h = poly_mod(F, z, fm);
  for (int j = 1; j <= d; ++j) {
    for (unsigned s = 0; s < F.m(); ++s) h = detail::frobenius_step(F, h, fm);
    const bool checkpoint =
        (j == d) ||
        (j <= 3 && j < d) ||  // cheap small-factor filter, same verdict
        [&] {
          for (int l : prime_divs)
            if (j * l == d) return true;
          return false;
        }();
    if (!checkpoint) continue;
    if (j == d) return poly_sub(F, h, z).is_zero();
    Poly diff = poly_sub(F, h, z);
    if (diff.is_zero()) return false;  // every root already in GF(q^j), j < d
    EeaResult e = poly_eea(F, diff, fm);
    if (e.r.degree() != 0) return false;
  }
  return true;  // unreachable
}

inline Poly poly_random_monic_irreducible(const Field& F, unsigned t, Rng& rng) {
  if (t < 1) throw FieldError("degree must be positive");
  for (;;) {
    Poly g;
    g.c.resize(t + 1);
    for (unsigned i = 0; i < t; ++i) g.c[i] = static_cast<std::uint32_t>(rng.below(F.q()));
    g.c[t] = 1;
    if (poly_is_irreducible(F, g)) return g;
  }
}

// Square root in GF(q)[z]/(g), characteristic 2: squaring is the Frobenius
// automorphism of the residue field of size q^t, so its inverse is raising
// to 2^(m*t - 1); one squaring chain of that length computes it.
inline Poly poly_sqrt_mod(const Field& F, const Poly& f, const Poly& g) {
  if (F.p() != 2) throw FieldError("polynomial square root needs characteristic 2");
  const unsigned steps = F.m() * static_cast<unsigned>(g.degree()) - 1;
  Poly h = poly_mod(F, f, g);
  for (unsigned i = 0; i < steps; ++i) h = poly_mod(F, poly_mul(F, h, h), g);
  return h;
}

}  // namespace goppa
