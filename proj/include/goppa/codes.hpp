#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <map>
#include <stdexcept>

#include "matrix.hpp"

namespace goppa {

using BigInt = boost::multiprecision::cpp_int;

inline std::size_t hamming_weight(const MatGF& v) { return weight(v); }

inline std::size_t hamming_distance(const MatGF& a, const MatGF& b) {
  if (a.rows() != 1 || b.rows() != 1 || a.cols() != b.cols())
    throw FieldError("distance needs two row vectors of equal length");
  const Field& F = a.field();
  std::size_t d = 0;
  for (std::size_t j = 0; j < a.cols(); ++j)
    d += F.sub(a.get(0, j), b.get(0, j)) != 0;
  return d;
}

namespace detail {

// Enumeration order used everywhere a vector scan happens: index i counts
// 0,1,2,... and coordinate j holds digit j of i in base q (low digit in
// coordinate 0).
inline MatGF vec_from_counter(const Field& F, std::size_t n, std::uint64_t idx) {
  MatGF v(F, 1, n);
  for (std::size_t j = 0; j < n && idx; ++j) {
    v.set(0, j, static_cast<std::uint32_t>(idx % F.q()));
    idx /= F.q();
  }
  return v;
}

inline void guard_enumeration(std::size_t count_dim, std::size_t q, const char* what) {
  const double bits = static_cast<double>(count_dim) * std::log2(static_cast<double>(q));
  if (bits > 24.0)
    throw std::runtime_error(std::string(what) + ": enumeration of q^" +
                             std::to_string(count_dim) + " vectors exceeds the 2^24 bound");
}

inline std::uint64_t pow_sz(std::size_t q, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= q;
  return r;
}

}  // namespace detail

// Smallest nonzero codeword weight, by scanning all q^k - 1 messages.
inline std::size_t min_distance(const MatGF& G) {
  const Field& F = G.field();
  detail::guard_enumeration(G.rows(), F.q(), "min_distance");
  const std::uint64_t total = detail::pow_sz(F.q(), G.rows());
  std::size_t best = G.cols() + 1;
  for (std::uint64_t i = 1; i < total; ++i) {
    MatGF m = detail::vec_from_counter(F, G.rows(), i);
    best = std::min(best, hamming_weight(vec_mul(m, G)));
  }
  return best;
}

inline BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r *= static_cast<unsigned long>(n - k + i);
    r /= static_cast<unsigned long>(i);
  }
  return r;
}

// Number of length-n vectors within Hamming distance r of a fixed center.
inline BigInt sphere_size(std::size_t n, std::size_t r, std::size_t q) {
  BigInt total = 0;
  BigInt qm1_pow = 1;
  for (std::size_t i = 0; i <= std::min(r, n); ++i) {
    total += binomial(n, i) * qm1_pow;
    qm1_pow *= static_cast<unsigned long>(q - 1);
  }
  return total;
}

// (u | u+v) construction: stacks the two generators into one for the
// doubled length.  The resulting distance is min(2·d1, d2).
inline MatGF plotkin_combine(const MatGF& G1, const MatGF& G2) {
  check_same_field(G1, G2);
  if (G1.cols() != G2.cols()) throw FieldError("plotkin needs equal lengths");
  const std::size_t n = G1.cols();
  MatGF G(G1.field(), G1.rows() + G2.rows(), 2 * n);
  for (std::size_t i = 0; i < G1.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint32_t v = G1.get(i, j);
      if (v) {
        G.set(i, j, v);
        G.set(i, n + j, v);
      }
    }
  for (std::size_t i = 0; i < G2.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint32_t v = G2.get(i, j);
      if (v) G.set(G1.rows() + i, n + j, v);
    }
  return G;
}

inline std::size_t plotkin_distance(std::size_t d1, std::size_t d2) {
  return std::min(2 * d1, d2);
}

// Generator of the even-weight code of length n: (I | all-ones column).
inline MatGF even_weight_code(const Field& F, std::size_t n) {
  if (F.q() != 2) throw FieldError("even-weight code is binary");
  if (n < 2) throw FieldError("even-weight code needs n >= 2");
  MatGF G(F, n - 1, n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    G.set(i, i, 1);
    G.set(i, n - 1, 1);
  }
  return G;
}

// First-order Reed-Muller generator, built by iterating the (u | u+v)
// construction from the even-weight code of length 4 and the repetition
// code, giving parameters [2^m, m+1, 2^(m-1)].
inline MatGF reed_muller_1(const Field& F, std::size_t m) {
  if (F.q() != 2) throw FieldError("reed_muller_1 is binary");
  if (m < 2 || m > 6) throw FieldError("reed_muller_1 supports m in [2,6]");
  MatGF G = even_weight_code(F, 4);
  for (std::size_t step = 3; step <= m; ++step) {
    const std::size_t half = std::size_t{1} << (step - 1);
    MatGF rep(F, 1, half);
    for (std::size_t j = 0; j < half; ++j) rep.set(0, j, 1);
    G = plotkin_combine(G, rep);
  }
  return G;
}

// A linear [n, k] code held as a generator/parity-check pair.  The
// distance is computed on first request and kept.
struct LinearCode {
  MatGF gen;     // k×n, full row rank
  MatGF parity;  // (n-k)×n, gen·parityᵀ = 0
  std::optional<std::size_t> cached_distance;

  std::size_t n() const { return gen.cols(); }
  std::size_t k() const { return gen.rows(); }

  std::size_t distance() {
    if (!cached_distance) cached_distance = min_distance(gen);
    return *cached_distance;
  }
};

inline MatGF dual_from_generator(const MatGF& G);

inline LinearCode code_from_generator(const MatGF& G) {
  if (rref(G).rank != G.rows()) throw FieldError("generator rows are dependent");
  MatGF H = dual_from_generator(G);
  return {G, std::move(H), std::nullopt};
}

// Parity-check from a generator: (I | A) maps to (-Aᵀ | I); anything else
// falls back to a nullspace basis.
inline MatGF dual_from_generator(const MatGF& G) {
  const Field& F = G.field();
  const std::size_t k = G.rows(), n = G.cols();
  bool left_identity = k <= n;
  for (std::size_t i = 0; i < k && left_identity; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (G.get(i, j) != (i == j ? 1u : 0u)) {
        left_identity = false;
        break;
      }
  if (left_identity) {
    MatGF H(F, n - k, n);
    for (std::size_t i = 0; i < n - k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        const std::uint32_t v = G.get(j, k + i);
        if (v) H.set(i, j, F.neg(v));
      }
      H.set(i, k + i, 1);
    }
    return H;
  }
  return nullspace(G);
}

struct DecodeResult {
  MatGF codeword;
  MatGF error;
};

namespace detail {

// Coset-leader table keyed by syndrome, built by scanning vectors in order
// of (weight, enumeration index); the first vector reaching a syndrome is
// its leader, which resolves ties toward the earliest enumerated vector.
inline std::map<std::vector<std::uint32_t>, MatGF> leader_table(const MatGF& H) {
  const Field& F = H.field();
  const std::size_t n = H.cols();
  const std::uint64_t total = pow_sz(F.q(), n);
  const std::uint64_t cosets = pow_sz(F.q(), H.rows());
  std::map<std::vector<std::uint32_t>, MatGF> lead;
  for (std::size_t w = 0; w <= n && lead.size() < cosets; ++w) {
    for (std::uint64_t i = 0; i < total && lead.size() < cosets; ++i) {
      MatGF v = vec_from_counter(F, n, i);
      if (hamming_weight(v) != w) continue;
      MatGF s = mul_vec(H, v);
      std::vector<std::uint32_t> key(s.cols());
      for (std::size_t j = 0; j < s.cols(); ++j) key[j] = s.get(0, j);
      lead.try_emplace(std::move(key), std::move(v));
    }
  }
  return lead;
}

}  // namespace detail

// Coset structure of a code, kept in syndrome-table form: one leader per
// syndrome value.  Small parameters only; the builders guard themselves.
struct StandardArray {
  std::map<std::vector<std::uint32_t>, MatGF> leaders;

  static StandardArray build(const MatGF& H) { return {detail::leader_table(H)}; }

  const MatGF& leader_for(const MatGF& syndrome) const {
    std::vector<std::uint32_t> key(syndrome.cols());
    for (std::size_t j = 0; j < syndrome.cols(); ++j) key[j] = syndrome.get(0, j);
    return leaders.at(key);
  }
};

// Complete nearest-codeword decoding through the full standard array: the
// whole vector space is laid out row by row under coset leaders, and y is
// decoded to the codeword heading its column.
inline DecodeResult standard_array_decode(const MatGF& G, const MatGF& y) {
  const Field& F = G.field();
  detail::guard_enumeration(G.cols(), F.q(), "standard_array_decode");
  MatGF H = dual_from_generator(G);
  auto leaders = detail::leader_table(H);
  MatGF s = mul_vec(H, y);
  std::vector<std::uint32_t> key(s.cols());
  for (std::size_t j = 0; j < s.cols(); ++j) key[j] = s.get(0, j);
  const MatGF& e = leaders.at(key);
  return {vec_sub(y, e), e};
}

// Same decoding rule, but only the q^(n-k) coset leaders are materialized.
inline DecodeResult syndrome_table_decode(const MatGF& G, const MatGF& y) {
  const Field& F = G.field();
  detail::guard_enumeration(G.cols() - G.rows(), F.q(), "syndrome_table_decode");
  MatGF H = dual_from_generator(G);
  auto leaders = detail::leader_table(H);
  MatGF s = mul_vec(H, y);
  std::vector<std::uint32_t> key(s.cols());
  for (std::size_t j = 0; j < s.cols(); ++j) key[j] = s.get(0, j);
  const MatGF& e = leaders.at(key);
  return {vec_sub(y, e), e};
}

inline DecodeResult standard_array_decode(const LinearCode& C, const MatGF& y) {
  return standard_array_decode(C.gen, y);
}

inline DecodeResult syndrome_table_decode(const LinearCode& C, const MatGF& y) {
  return syndrome_table_decode(C.gen, y);
}

}  // namespace goppa
