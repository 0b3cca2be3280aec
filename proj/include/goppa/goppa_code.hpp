#pragma once

#include <memory>

#include "matrix.hpp"
#include "poly.hpp"

namespace goppa {

// Expand a matrix over F_{p^m} to base-field rows: each extension row r
// becomes m rows r*m .. r*m+m-1, row r*m+d holding digit d of the entries
// (the constant digit lands on top).
inline MatGF expand_to_base(const MatGF& H, const Field& base) {
  const Field& F = H.field();
  if (base.q() != F.p()) throw FieldError("expansion target must be the prime subfield");
  const std::size_t m = F.m();
  MatGF B(base, H.rows() * m, H.cols());
  for (std::size_t i = 0; i < H.rows(); ++i)
    for (std::size_t j = 0; j < H.cols(); ++j) {
      std::vector<std::uint32_t> d = F.digits(H.get(i, j));
      for (std::size_t r = 0; r < m; ++r)
        if (d[r]) B.set(i * m + r, j, d[r]);
    }
  return B;
}

struct GoppaCode {
  std::shared_ptr<const Field> ext;   // F_{p^m}
  std::shared_ptr<const Field> base;  // F_p
  std::vector<std::uint32_t> L;       // support, n distinct non-roots of g
  Poly g;                             // monic, degree t
  MatGF h_ext;                        // t×n over ext: entry (i,j) = L_j^i / g(L_j)
  MatGF h_ext_inv;                    // t×n over ext: row i = coeff of z^i in (z-L_j)^-1 mod g
  MatGF h_base;                       // (m·t)×n expansion of h_ext
  MatGF gen;                          // k×n generator, nullspace basis of h_base
  Poly sqrt_z;                        // cached sqrt of z mod g (p=2 only)

  std::size_t n() const { return L.size(); }
  std::size_t t() const { return static_cast<std::size_t>(g.degree()); }
  std::size_t k() const { return gen.rows(); }
};

inline GoppaCode goppa_build(std::shared_ptr<const Field> ext, std::vector<std::uint32_t> L,
                             Poly g) {
  const Field& F = *ext;
  if (g.degree() < 1) throw FieldError("Goppa polynomial must have positive degree");
  g = poly_monic(F, g);
  {
    std::vector<bool> seen(F.q(), false);
    for (std::size_t j = 0; j < L.size(); ++j) {
      if (L[j] >= F.q()) throw FieldError("support element out of range");
      if (seen[L[j]]) throw FieldError("support has a repeated element at index " + std::to_string(j));
      seen[L[j]] = true;
      if (poly_eval(F, g, L[j]) == 0)
        throw FieldError("support element at index " + std::to_string(j) +
                         " is a root of the Goppa polynomial");
    }
  }
  const std::size_t n = L.size();
  const std::size_t t = static_cast<std::size_t>(g.degree());
  auto base = std::make_shared<const Field>(Field::prime(F.p()));

  MatGF h_ext(*ext, t, n);
  MatGF h_inv(*ext, t, n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::uint32_t a = L[j];
    const std::uint32_t gi = F.inv(poly_eval(F, g, a));
    std::uint32_t acc = gi;
    for (std::size_t i = 0; i < t; ++i) {
      h_ext.set(i, j, acc);
      acc = F.mul(acc, a);
    }
    // synthetic division of g by (z - a): q_{t-1} = g_t, q_{r-1} = g_r + a·q_r
    std::uint32_t qr = g.coeff(t);
    for (std::size_t r = t; r-- > 0;) {
      h_inv.set(r, j, F.mul(F.neg(qr), gi));
      if (r > 0) qr = F.add(g.coeff(r), F.mul(a, qr));
    }
  }

  MatGF h_base = expand_to_base(h_ext, *base);
  MatGF gen = nullspace(h_base);

  Poly sz = Poly::zero();
  if (F.p() == 2) sz = poly_sqrt_mod(F, Poly::z(), g);

  return GoppaCode{std::move(ext), std::move(base), std::move(L), std::move(g),
                   std::move(h_ext), std::move(h_inv), std::move(h_base), std::move(gen),
                   std::move(sz)};
}

// Support used by the sealed parameter sets: 0, then ascending powers of
// the field generator.
inline std::vector<std::uint32_t> standard_support(const Field& F, std::size_t n) {
  if (n > F.q()) throw FieldError("support longer than the field");
  std::vector<std::uint32_t> L(n);
  L[0] = 0;
  std::uint32_t p = 1;
  for (std::size_t i = 1; i < n; ++i) {
    L[i] = p;
    p = F.mul(p, F.generator());
  }
  return L;
}

// S(y) = sum y_j / (z - L_j) mod g, coefficients read off h_ext_inv.
inline Poly goppa_syndrome(const GoppaCode& code, const MatGF& y) {
  if (y.rows() != 1 || y.cols() != code.n()) throw FieldError("received word has wrong length");
  const Field& F = *code.ext;
  std::vector<std::uint32_t> s(code.t(), 0);
  for (std::size_t j = 0; j < code.n(); ++j) {
    const std::uint32_t yj = F.embed(y.get(0, j));
    if (!yj) continue;
    for (std::size_t r = 0; r < code.t(); ++r)
      s[r] = F.add(s[r], F.mul(yj, code.h_ext_inv.get(r, j)));
  }
  return Poly(std::move(s));
}

namespace detail {

inline std::optional<MatGF> error_from_locator(const GoppaCode& code, const Poly& sigma,
                                               const Poly& syn) {
  const Field& F = *code.ext;
  MatGF e(*code.base, 1, code.n());
  std::size_t found = 0;
  for (std::size_t j = 0; j < code.n(); ++j)
    if (poly_eval(F, sigma, code.L[j]) == 0) {
      e.set(0, j, 1);
      ++found;
    }
  if (found == 0 || found > code.t()) return std::nullopt;
  if (goppa_syndrome(code, e) != syn) return std::nullopt;
  return e;
}

}  // namespace detail

// Binary decoder good for the full design distance when g is irreducible;
// with a reducible g it still handles whatever the square-root step can
// certify, and reports failure otherwise.
inline std::optional<MatGF> patterson_decode(const GoppaCode& code, const MatGF& y) {
  const Field& F = *code.ext;
  if (F.p() != 2) throw FieldError("patterson_decode requires characteristic 2");
  const std::size_t t = code.t();
  const Poly syn = goppa_syndrome(code, y);
  if (syn.is_zero()) return MatGF(*code.base, 1, code.n());

  auto Tinv = poly_inv_mod(F, syn, code.g);
  if (!Tinv) return std::nullopt;

  Poly sigma = Poly::zero();
  if (*Tinv == Poly::z()) {
    sigma = Poly::z();
  } else {
    Poly h = poly_add(F, *Tinv, Poly::z());
    // sqrt(h) = A + sqrt(z)·B splitting h into even and odd coefficients
    const long long csqrt = 1ll << (F.m() - 1);
    std::vector<std::uint32_t> ac, bc;
    for (int i = 0; i <= h.degree(); ++i) {
      const std::uint32_t root = F.pow(h.coeff(static_cast<std::size_t>(i)), csqrt);
      if (i % 2 == 0)
        ac.push_back(root);
      else
        bc.push_back(root);
    }
    Poly P = poly_mod(F, poly_add(F, Poly(ac), poly_mul(F, Poly(bc), code.sqrt_z)), code.g);
    if (poly_mod(F, poly_mul(F, P, P), code.g) != poly_mod(F, h, code.g)) return std::nullopt;
    EeaResult s = poly_eea(F, P, code.g, static_cast<int>(t / 2));
    sigma = poly_add(F, poly_mul(F, s.r, s.r), poly_mul(F, Poly::z(), poly_mul(F, s.u, s.u)));
    if (sigma.is_zero()) return std::nullopt;
    sigma = poly_monic(F, sigma);
  }
  return detail::error_from_locator(code, sigma, syn);
}

// Decoder for any base field: solves sigma·S = w (mod g) for ascending
// locator degree, then reads error values off w(a)/sigma'(a).
inline std::optional<MatGF> key_equation_decode(const GoppaCode& code, const MatGF& y) {
  const Field& F = *code.ext;
  const std::size_t t = code.t();
  const Poly syn = goppa_syndrome(code, y);
  if (syn.is_zero()) return MatGF(*code.base, 1, code.n());

  // powers[j] = z^j · S mod g
  std::vector<Poly> powers(t / 2 + 1);
  powers[0] = poly_mod(F, syn, code.g);
  for (std::size_t j = 1; j < powers.size(); ++j)
    powers[j] = poly_mod(F, poly_mul(F, powers[j - 1], Poly::z()), code.g);

  for (std::size_t r = 1; r <= t / 2; ++r) {
    MatGF A(F, t, 2 * r, true);
    MatGF b(F, 1, t, true);
    for (std::size_t c = 0; c < t; ++c) {
      for (std::size_t j = 0; j < r; ++j) A.set(c, j, powers[j].coeff(c));
      if (c < r) A.set(c, r + c, F.neg(1));
      b.set(0, c, F.neg(powers[r].coeff(c)));
    }
    auto x = solve_linear(A, b);
    if (!x) continue;

    std::vector<std::uint32_t> sc(r + 1, 0), wc(r, 0);
    for (std::size_t j = 0; j < r; ++j) sc[j] = x->get(0, j);
    sc[r] = 1;
    for (std::size_t j = 0; j < r; ++j) wc[j] = x->get(0, r + j);
    Poly sigma(sc), w(wc);
    Poly dsigma = poly_derivative(F, sigma);

    MatGF e(*code.base, 1, code.n());
    bool ok = true;
    std::size_t found = 0;
    for (std::size_t j = 0; j < code.n() && ok; ++j) {
      if (poly_eval(F, sigma, code.L[j]) != 0) continue;
      const std::uint32_t ds = poly_eval(F, dsigma, code.L[j]);
      if (ds == 0) {
        ok = false;
        break;
      }
      const std::uint32_t val = F.div(poly_eval(F, w, code.L[j]), ds);
      std::vector<std::uint32_t> dg = F.digits(val);
      for (std::size_t d = 1; d < dg.size(); ++d)
        if (dg[d]) ok = false;
      if (!ok || dg[0] == 0) {
        ok = false;
        break;
      }
      e.set(0, j, dg[0]);
      ++found;
    }
    if (!ok || found != r) continue;
    if (goppa_syndrome(code, e) != syn) continue;
    return e;
  }
  return std::nullopt;
}

// Solve m·G = c for the message; empty when c is not in the code.
inline std::optional<MatGF> recover_message(const GoppaCode& code, const MatGF& c) {
  return solve_linear(code.gen.transpose(), c);
}

}  // namespace goppa
