#pragma once

#include <openssl/evp.h>

#include <array>
#include <cstring>

#include "mceliece.hpp"

namespace goppa {

enum class HashKind { shake256, sha256 };

struct HashConfig {
  HashKind kind = HashKind::shake256;

  static HashConfig from_name(const std::string& name) {
    if (name == "shake256") return {HashKind::shake256};
    if (name == "sha256") return {HashKind::sha256};
    throw std::invalid_argument("unknown hash: " + name);
  }
  const char* name() const { return kind == HashKind::shake256 ? "shake256" : "sha256"; }
};

using Hash32 = std::array<std::uint8_t, 32>;

// 32-byte digest of prefix byte || chunks, SHAKE256 by default.
inline Hash32 hash_bytes(const HashConfig& cfg, std::uint8_t prefix,
                         const std::vector<std::vector<std::uint8_t>>& chunks) {
  Hash32 out{};
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx) throw std::runtime_error("hash context allocation failed");
  const EVP_MD* md = cfg.kind == HashKind::shake256 ? EVP_shake256() : EVP_sha256();
  bool ok = EVP_DigestInit_ex(ctx, md, nullptr) == 1 &&
            EVP_DigestUpdate(ctx, &prefix, 1) == 1;
  for (const auto& c : chunks)
    ok = ok && EVP_DigestUpdate(ctx, c.data(), c.size()) == 1;
  if (cfg.kind == HashKind::shake256) {
    ok = ok && EVP_DigestFinalXOF(ctx, out.data(), out.size()) == 1;
  } else {
    unsigned int len = 0;
    ok = ok && EVP_DigestFinal_ex(ctx, out.data(), &len) == 1 && len == out.size();
  }
  EVP_MD_CTX_free(ctx);
  if (!ok) throw std::runtime_error("hash computation failed");
  return out;
}

// Frozen wire rule for hashing bit vectors: bit i lands in byte i/8 at bit
// position i%8 (low bit first).
inline std::vector<std::uint8_t> pack_bits(const MatGF& v) {
  std::vector<std::uint8_t> out((v.cols() + 7) / 8, 0);
  for (std::size_t i = 0; i < v.cols(); ++i)
    if (v.get(0, i)) out[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
  return out;
}

inline MatGF unpack_bits(const Field& F, const std::vector<std::uint8_t>& bytes, std::size_t n) {
  MatGF v(F, 1, n);
  for (std::size_t i = 0; i < n; ++i)
    if ((bytes[i / 8] >> (i % 8)) & 1u) v.set(0, i, 1);
  return v;
}

struct KemParams {
  std::string name;
  std::size_t m, n, t;
  std::vector<unsigned> modulus;

  static KemParams from_name(const std::string& name) {
    if (name == "toy16") return {name, 4, 16, 2, {1, 0, 0, 1, 1}};
    if (name == "mceliece6960119") return {name, 13, 6960, 119, default_modulus(13)};
    if (name == "mceliece8192128") return {name, 13, 8192, 128, default_modulus(13)};
    throw std::invalid_argument("unknown parameter set: " + name);
  }
};

struct KemPublicKey {
  MatGF t_mat;  // (m·t)×(n−m·t)
  std::size_t m, n, t;
};

struct KemSecretKey {
  MatGF s;                    // uniform n-bit string
  GoppaCode code;             // carries g and L
  MatGF t_mat;                // rebuilt alongside the code, (I|T) check needs it
};

struct KemKeyPair {
  KemPublicKey pub;
  KemSecretKey sec;
};

struct KemCiphertext {
  MatGF c0;  // 1×(m·t)
  Hash32 c1;
};

// Build from explicitly given polynomial and support; throws when the
// parity check has no systematic form.
inline KemKeyPair kem_from_parts(std::shared_ptr<const Field> F, Poly g,
                                 std::vector<std::uint32_t> L, MatGF s) {
  const std::size_t m = F->m();
  const std::size_t n = L.size();
  const std::size_t t = static_cast<std::size_t>(g.degree());
  GoppaCode code = goppa_build(std::move(F), std::move(L), std::move(g));
  auto T = systematic_form(code.h_base);
  if (!T) throw FieldError("parity check has no systematic form");
  return {{*T, m, n, t}, {std::move(s), std::move(code), *T}};
}

inline KemKeyPair kem_keygen(const KemParams& p, std::uint64_t seed) {
  Rng rng(seed);
  auto F = std::make_shared<const Field>(Field::create(2, p.m, p.modulus));
  if (p.n > F->q()) throw FieldError("support longer than the field");
  for (std::size_t attempt = 0; attempt < 10000; ++attempt) {
    Poly g = poly_random_monic_irreducible(*F, p.t, rng);
    std::vector<std::uint32_t> L = sample_distinct(F->q(), p.n, rng);
    std::optional<GoppaCode> code;
    try {
      code = goppa_build(F, std::move(L), std::move(g));
    } catch (const FieldError&) {
      continue;  // a support element was a root of g
    }
    auto T = systematic_form(code->h_base);
    if (!T) continue;
    MatGF s(*code->base, 1, p.n);
    for (std::size_t i = 0; i < p.n; ++i) s.set(0, i, rng.bit());
    return {{*T, p.m, p.n, p.t}, {std::move(s), std::move(*code), *T}};
  }
  throw std::runtime_error(
      "key generation failed: no systematic parity check in 10000 attempts");
}

// C0 = (I | T)·eᵀ
inline MatGF kem_syndrome(const MatGF& t_mat, const MatGF& e) {
  const std::size_t mt = t_mat.rows();
  MatGF right = e.select_columns([&] {
    std::vector<std::size_t> idx(e.cols() - mt);
    for (std::size_t j = 0; j < idx.size(); ++j) idx[j] = mt + j;
    return idx;
  }());
  MatGF c0 = mul_vec(t_mat, right);
  for (std::size_t i = 0; i < mt; ++i)
    c0.set(0, i, c0.get(0, i) ^ e.get(0, i));
  return c0;
}

inline std::vector<std::uint8_t> pack_ciphertext(const KemCiphertext& ct) {
  std::vector<std::uint8_t> bytes = pack_bits(ct.c0);
  bytes.insert(bytes.end(), ct.c1.begin(), ct.c1.end());
  return bytes;
}

struct KemEncapsResult {
  Hash32 key;
  KemCiphertext ct;
  MatGF e;  // kept for fixtures and tests; a real sender discards it
};

inline KemEncapsResult kem_encaps(const KemPublicKey& pk, const HashConfig& cfg,
                                  std::uint64_t seed) {
  Rng rng(seed);
  Field f2 = Field::prime(2);
  MatGF e = error_vector(f2, pk.n, fixed_weight_sample(pk.n, pk.t, rng));
  KemCiphertext ct{kem_syndrome(pk.t_mat, e), {}};
  ct.c1 = hash_bytes(cfg, 2, {pack_bits(e)});
  Hash32 key = hash_bytes(cfg, 1, {pack_bits(e), pack_ciphertext(ct)});
  return {key, std::move(ct), std::move(e)};
}

// Implicit-rejection decapsulation: always returns a key, and any failed
// check swaps in the secret string s before the final hash.
inline Hash32 kem_decaps(const KemSecretKey& sk, const KemCiphertext& ct,
                         const HashConfig& cfg) {
  const std::size_t n = sk.code.n();
  const std::size_t mt = sk.t_mat.rows();
  if (ct.c0.cols() != mt) throw FieldError("ciphertext has wrong length");
  std::uint8_t b = 1;
  MatGF v(*sk.code.base, 1, n);
  for (std::size_t i = 0; i < mt; ++i)
    if (ct.c0.get(0, i)) v.set(0, i, 1);
  MatGF e = sk.s;
  auto dec = patterson_decode(sk.code, v);
  if (dec && weight(*dec) == sk.code.t() && kem_syndrome(sk.t_mat, *dec) == ct.c0) {
    e = *dec;
  } else {
    b = 0;
  }
  if (hash_bytes(cfg, 2, {pack_bits(e)}) != ct.c1) {
    e = sk.s;
    b = 0;
  }
  return hash_bytes(cfg, 1, {pack_bits(e), pack_ciphertext(ct)});
}

}  // namespace goppa
