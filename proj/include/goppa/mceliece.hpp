#pragma once

#include "goppa_code.hpp"

namespace goppa {

// Ordered sample of `count` distinct values from [0, range): the first
// `count` steps of a Fisher-Yates pass, kept in draw order.
inline std::vector<std::uint32_t> sample_distinct(std::size_t range, std::size_t count,
                                                  Rng& rng) {
  if (count > range) throw std::invalid_argument("sample larger than range");
  std::vector<std::uint32_t> idx(range);
  std::iota(idx.begin(), idx.end(), 0u);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.below(range - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(count);
  return idx;
}

inline const std::vector<unsigned>& default_modulus(std::size_t m) {
  static const std::vector<std::pair<std::size_t, std::vector<unsigned>>> table = {
      {2, {1, 1, 1}},
      {3, {1, 1, 0, 1}},
      {4, {1, 1, 0, 0, 1}},
      {5, {1, 0, 1, 0, 0, 1}},
      {6, {1, 1, 0, 0, 0, 0, 1}},
      {8, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
      {10, {1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1}},
      {13, {1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
  };
  for (const auto& [deg, digits] : table)
    if (deg == m) return digits;
  throw FieldError("no default modulus for this degree");
}

// Shared key-generation core: irreducible polynomial, then an ordered
// random support.  Retries only in the corner case where the polynomial
// has a root inside the chosen support (possible for t = 1).
inline GoppaCode random_goppa_code(std::size_t m, std::size_t n, std::size_t t, Rng& rng,
                                   const std::vector<unsigned>* modulus = nullptr) {
  auto F = std::make_shared<const Field>(
      Field::create(2, m, modulus ? *modulus : default_modulus(m)));
  if (n > F->q()) throw FieldError("support longer than the field");
  for (;;) {
    Poly g = poly_random_monic_irreducible(*F, t, rng);
    std::vector<std::uint32_t> L = sample_distinct(F->q(), n, rng);
    try {
      return goppa_build(F, std::move(L), std::move(g));
    } catch (const FieldError&) {
      // support hit a root of g; draw again
    }
  }
}

struct McePublicKey {
  MatGF g_hat;  // k×n
  std::size_t t;
};

struct MceSecretKey {
  MatGF s;  // k×k nonsingular
  PermMatrix p;
  GoppaCode code;
};

struct MceKeyPair {
  McePublicKey pub;
  MceSecretKey sec;
};

inline MceKeyPair mce_keygen(std::size_t m, std::size_t n, std::size_t t, std::uint64_t seed,
                             const std::vector<unsigned>* modulus = nullptr) {
  Rng rng(seed);
  GoppaCode code = random_goppa_code(m, n, t, rng, modulus);
  const std::size_t k = code.k();
  if (k < 1) throw FieldError("parameters leave no message space");
  MatGF S = random_nonsingular(*code.base, k, rng);
  PermMatrix P = random_permutation(n, rng);
  MatGF g_hat = P.permute_columns(mat_mul(S, code.gen));
  return {{std::move(g_hat), t}, {std::move(S), std::move(P), std::move(code)}};
}

inline MatGF error_vector(const Field& F, std::size_t n, const std::vector<std::uint32_t>& pos) {
  MatGF e(F, 1, n);
  for (std::uint32_t i : pos) e.set(0, i, 1);
  return e;
}

inline MatGF mce_encrypt(const McePublicKey& pk, const MatGF& msg, const MatGF& err) {
  if (msg.rows() != 1 || msg.cols() != pk.g_hat.rows()) throw FieldError("message has wrong length");
  if (weight(err) != pk.t) throw FieldError("error vector must have weight t");
  return mat_add(vec_mul(msg, pk.g_hat), err);
}

inline MatGF mce_encrypt(const McePublicKey& pk, const MatGF& msg, std::uint64_t seed) {
  Rng rng(seed);
  MatGF e = error_vector(msg.field(), pk.g_hat.cols(), fixed_weight_sample(pk.g_hat.cols(), pk.t, rng));
  return mce_encrypt(pk, msg, e);
}

inline std::optional<MatGF> mce_decrypt(const MceSecretKey& sk, const MatGF& c) {
  if (c.rows() != 1 || c.cols() != sk.code.n()) throw FieldError("ciphertext has wrong length");
  MatGF y = sk.p.apply_row_inverse(c);
  auto e = patterson_decode(sk.code, y);
  if (!e) return std::nullopt;
  MatGF cw = vec_sub(y, *e);
  auto ms = recover_message(sk.code, cw);
  if (!ms) return std::nullopt;
  auto s_inv = invert(sk.s);
  MatGF m = vec_mul(*ms, *s_inv);
  // re-encode before answering: c - m·Ĝ must be the low-weight error
  MatGF g_hat = sk.p.permute_columns(mat_mul(sk.s, sk.code.gen));
  if (weight(vec_sub(c, vec_mul(m, g_hat))) > sk.code.t()) return std::nullopt;
  return m;
}

}  // namespace goppa
