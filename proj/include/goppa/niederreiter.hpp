#pragma once

#include "mceliece.hpp"

namespace goppa {

struct NiePublicKey {
  MatGF k_pub;  // (n-k)×n = S·H·P
  std::size_t t;
};

struct NieSecretKey {
  MatGF s;           // (n-k)×(n-k) nonsingular
  MatGF h_parity;    // the unmasked full-rank parity check used at keygen
  PermMatrix p;
  GoppaCode code;
};

struct NieKeyPair {
  NiePublicKey pub;
  NieSecretKey sec;
};

// Full-rank parity check of the code: the nonzero rows of the reduced
// echelon form of the base-field expansion.
inline MatGF parity_check(const GoppaCode& code) {
  RrefResult e = rref(code.h_base);
  return e.R.select_rows(0, e.rank);
}

inline NieKeyPair nie_keygen(std::size_t m, std::size_t n, std::size_t t, std::uint64_t seed,
                             const std::vector<unsigned>* modulus = nullptr) {
  Rng rng(seed);
  GoppaCode code = random_goppa_code(m, n, t, rng, modulus);
  MatGF H = parity_check(code);
  MatGF S = random_nonsingular(*code.base, H.rows(), rng);
  PermMatrix P = random_permutation(n, rng);
  MatGF k_pub = P.permute_columns(mat_mul(S, H));
  return {{std::move(k_pub), t},
          {std::move(S), std::move(H), std::move(P), std::move(code)}};
}

// The message is a weight-t vector; its syndrome is the ciphertext.
inline MatGF nie_encrypt(const NiePublicKey& pk, const MatGF& msg) {
  if (msg.rows() != 1 || msg.cols() != pk.k_pub.cols()) throw FieldError("message has wrong length");
  if (weight(msg) != pk.t) throw FieldError("message must have weight exactly t");
  return mul_vec(pk.k_pub, msg);
}

inline std::optional<MatGF> nie_decrypt(const NieSecretKey& sk, const MatGF& c) {
  if (c.rows() != 1 || c.cols() != sk.h_parity.rows()) throw FieldError("ciphertext has wrong length");
  auto s_inv = invert(sk.s);
  MatGF syn = mul_vec(*s_inv, c);
  // any z with H·zᵀ = S⁻¹·c differs from the permuted message by a codeword
  auto z = solve_linear(sk.h_parity, syn);
  if (!z) return std::nullopt;
  auto e = patterson_decode(sk.code, *z);
  if (!e || weight(*e) != sk.code.t()) return std::nullopt;
  return sk.p.apply_row(*e);
}

// The parity check an outsider can compute for a McEliece public key.
inline MatGF dual_public(const McePublicKey& pk) { return dual_from_generator(pk.g_hat); }

// McEliece ciphertext -> syndrome under H': strips the codeword part, so
// decoding the result as a Niederreiter instance recovers the error.
inline MatGF mce_ct_to_nie(const MatGF& h_dual, const MatGF& c) { return mul_vec(h_dual, c); }

// Syndrome -> a McEliece-shaped word with that syndrome (free variables
// zero); empty when the system is inconsistent.
inline std::optional<MatGF> nie_to_mce(const MatGF& h_dual, const MatGF& z) {
  return solve_linear(h_dual, z);
}

}  // namespace goppa
