#pragma once

#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

#include "codes.hpp"
#include "niederreiter.hpp"

namespace goppa {

enum class IsdForm { mceliece, niederreiter };

struct IsdResult {
  bool success = false;
  std::optional<MatGF> e;
  std::optional<MatGF> m;              // only generator-form attacks recover one
  std::size_t iterations = 0;          // column-set draws, singular ones included
  std::size_t invertible = 0;          // draws whose submatrix was invertible
  double elapsed_seconds = 0.0;
  std::vector<std::uint32_t> info_set;
};

namespace detail {

// Advance a size-sz index combination drawn from [0, k); false when exhausted.
inline bool next_combination(std::vector<std::size_t>& sub, std::size_t sz, std::size_t k) {
  std::size_t j = sz;
  while (j-- > 0) {
    if (sub[j] != j + k - sz) {
      ++sub[j];
      for (std::size_t l = j + 1; l < sz; ++l) sub[l] = sub[l - 1] + 1;
      return true;
    }
  }
  return false;
}

struct IsdHit {
  MatGF e;
  std::optional<MatGF> m;
  std::vector<std::uint32_t> info_set;
};

// One information-set draw, generator form: invert G_I, read the candidate
// message off the ciphertext, accept on residual weight t.
inline std::optional<IsdHit> prange_try_mce(const MatGF& G, const MatGF& c, std::size_t t,
                                            Rng& rng, bool& was_invertible) {
  const std::size_t k = G.rows();
  std::vector<std::uint32_t> I = sample_distinct(G.cols(), k, rng);
  std::sort(I.begin(), I.end());
  std::vector<std::size_t> idx(I.begin(), I.end());
  auto gi_inv = invert(G.select_columns(idx));
  was_invertible = gi_inv.has_value();
  if (!gi_inv) return std::nullopt;
  MatGF m = vec_mul(c.select_columns(idx), *gi_inv);
  MatGF e = vec_sub(c, vec_mul(m, G));
  if (weight(e) != t) return std::nullopt;
  return IsdHit{std::move(e), std::move(m), std::move(I)};
}

// Syndrome form: guess the error support's complement, solve for the error
// restricted to the chosen columns.
inline std::optional<IsdHit> prange_try_nie(const MatGF& H, const MatGF& s, std::size_t t,
                                            Rng& rng, bool& was_invertible) {
  const std::size_t r = H.rows();
  std::vector<std::uint32_t> J = sample_distinct(H.cols(), r, rng);
  std::sort(J.begin(), J.end());
  std::vector<std::size_t> idx(J.begin(), J.end());
  auto hj_inv = invert(H.select_columns(idx));
  was_invertible = hj_inv.has_value();
  if (!hj_inv) return std::nullopt;
  MatGF x = mul_vec(*hj_inv, s);
  MatGF e(H.field(), 1, H.cols());
  for (std::size_t j = 0; j < r; ++j)
    if (x.get(0, j)) e.set(0, idx[j], x.get(0, j));
  if (weight(e) != t) return std::nullopt;
  if (mul_vec(H, e) != s) return std::nullopt;
  return IsdHit{std::move(e), std::nullopt, std::move(J)};
}

template <typename TryFn>
IsdResult isd_search(TryFn&& attempt, std::uint64_t seed, std::size_t max_iters,
                     unsigned workers) {
  const auto start = std::chrono::steady_clock::now();
  IsdResult res;
  if (workers <= 1) {
    Rng rng(seed);
    for (std::size_t it = 1; it <= max_iters; ++it) {
      bool inv = false;
      auto hit = attempt(rng, inv);
      res.iterations = it;
      res.invertible += inv;
      if (hit) {
        res.success = true;
        res.e = std::move(hit->e);
        res.m = std::move(hit->m);
        res.info_set = std::move(hit->info_set);
        break;
      }
    }
  } else {
    std::atomic<std::size_t> drawn{0}, invertible{0};
    std::atomic<bool> found{false};
    std::mutex result_mu;
    std::optional<IsdHit> best;
    auto worker = [&](unsigned w) {
      Rng rng = Rng::derive(seed, w);
      while (!found.load(std::memory_order_relaxed)) {
        if (drawn.fetch_add(1, std::memory_order_relaxed) >= max_iters) break;
        bool inv = false;
        auto hit = attempt(rng, inv);
        if (inv) invertible.fetch_add(1, std::memory_order_relaxed);
        if (hit) {
          std::lock_guard<std::mutex> lock(result_mu);
          if (!found.exchange(true)) best = std::move(hit);
          break;
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
    res.iterations = std::min(drawn.load(), max_iters);
    res.invertible = invertible.load();
    if (best) {
      res.success = true;
      res.e = std::move(best->e);
      res.m = std::move(best->m);
      res.info_set = std::move(best->info_set);
    }
  }
  res.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace detail

inline IsdResult isd_prange(const MatGF& pub, const MatGF& c, std::size_t t, IsdForm form,
                            std::uint64_t seed, std::size_t max_iters, unsigned workers = 1) {
  if (form == IsdForm::mceliece) {
    if (c.rows() != 1 || c.cols() != pub.cols()) throw FieldError("ciphertext has wrong length");
    return detail::isd_search(
        [&](Rng& rng, bool& inv) { return detail::prange_try_mce(pub, c, t, rng, inv); }, seed,
        max_iters, workers);
  }
  if (c.rows() != 1 || c.cols() != pub.rows()) throw FieldError("syndrome has wrong length");
  return detail::isd_search(
      [&](Rng& rng, bool& inv) { return detail::prange_try_nie(pub, c, t, rng, inv); }, seed,
      max_iters, workers);
}

// Prange plus a sweep over low-weight patterns inside the information set:
// all subsets of size up to p with all nonzero coefficient choices.
inline IsdResult isd_lee_brickell(const MatGF& G, const MatGF& y, std::size_t t, std::size_t p,
                                  std::uint64_t seed, std::size_t max_iters,
                                  unsigned workers = 1) {
  if (p > 3) throw std::invalid_argument("window parameter supported up to 3");
  const Field& F = G.field();
  const std::size_t k = G.rows();
  auto attempt = [&](Rng& rng, bool& was_invertible) -> std::optional<detail::IsdHit> {
    std::vector<std::uint32_t> I = sample_distinct(G.cols(), k, rng);
    std::sort(I.begin(), I.end());
    std::vector<std::size_t> idx(I.begin(), I.end());
    auto gi_inv = invert(G.select_columns(idx));
    was_invertible = gi_inv.has_value();
    if (!gi_inv) return std::nullopt;
    MatGF gp = mat_mul(*gi_inv, G);
    MatGF yi = y.select_columns(idx);
    MatGF yp = vec_sub(y, vec_mul(yi, gp));

    std::vector<std::size_t> sub(p);
    std::vector<std::uint32_t> coef(p);
    // subset sizes 0..p; size 0 is the plain Prange residual test
    for (std::size_t sz = 0; sz <= p && sz <= k; ++sz) {
      for (std::size_t j = 0; j < sz; ++j) sub[j] = j;
      do {
        for (std::size_t j = 0; j < sz; ++j) coef[j] = 1;
        for (;;) {
          MatGF u(F, 1, k);
          for (std::size_t j = 0; j < sz; ++j) u.set(0, sub[j], coef[j]);
          MatGF ghat = vec_mul(u, gp);
          MatGF e = vec_sub(yp, ghat);
          if (weight(e) == t) {
            MatGF m = vec_mul(vec_add(yi, u), *gi_inv);
            return detail::IsdHit{std::move(e), std::move(m), I};
          }
          // next nonzero coefficient pattern
          std::size_t d = 0;
          while (d < sz && coef[d] == F.q() - 1) {
            coef[d] = 1;
            ++d;
          }
          if (d == sz) break;
          ++coef[d];
        }
      } while (sz > 0 && detail::next_combination(sub, sz, k));
    }
    return std::nullopt;
  };
  if (y.rows() != 1 || y.cols() != G.cols()) throw FieldError("ciphertext has wrong length");
  return detail::isd_search(attempt, seed, max_iters, workers);
}

struct ResendResult {
  bool success = false;
  std::optional<MatGF> m;
  std::size_t l1_size = 0;
  std::size_t iterations = 0;  // draws from the agreeing-position pool
  std::size_t invertible = 0;
};

// Two encryptions of one message leak which positions were garbled by
// neither error; restricting the information-set search to those makes the
// per-guess success probability large.
inline ResendResult message_resend_attack(const MatGF& c1, const MatGF& c2, const MatGF& g_hat,
                                          std::size_t t, std::uint64_t seed,
                                          std::size_t max_iters = 100000) {
  if (c1.cols() != c2.cols() || c1.cols() != g_hat.cols())
    throw FieldError("ciphertext lengths disagree");
  const std::size_t k = g_hat.rows();
  ResendResult res;
  std::vector<std::uint32_t> l0;
  for (std::size_t i = 0; i < c1.cols(); ++i) {
    if (c1.get(0, i) == c2.get(0, i))
      l0.push_back(static_cast<std::uint32_t>(i));
    else
      ++res.l1_size;
  }
  if (l0.size() < k) return res;
  Rng rng(seed);
  for (std::size_t it = 1; it <= max_iters; ++it) {
    res.iterations = it;
    std::vector<std::uint32_t> pick = sample_distinct(l0.size(), k, rng);
    std::vector<std::size_t> idx(k);
    for (std::size_t j = 0; j < k; ++j) idx[j] = l0[pick[j]];
    std::sort(idx.begin(), idx.end());
    auto gi_inv = invert(g_hat.select_columns(idx));
    if (!gi_inv) continue;
    ++res.invertible;
    MatGF m = vec_mul(c1.select_columns(idx), *gi_inv);
    if (weight(vec_sub(c1, vec_mul(m, g_hat))) == t) {
      res.success = true;
      res.m = std::move(m);
      return res;
    }
  }
  return res;
}

struct CcaProbe {
  MatGF modified;
  std::size_t first, second;  // the two flipped positions
};

// Reaction probe: flip one bit, then another; if the first hit an error
// position and the second did not, the result is again a valid weight-t
// ciphertext for the same message.
inline CcaProbe cca_flip_probe(const MatGF& c, std::size_t t, std::size_t n,
                               std::uint64_t seed) {
  (void)t;  // the attack only relies on the weight convention, not its value
  if (c.rows() != 1 || c.cols() != n) throw FieldError("ciphertext has wrong length");
  Rng rng(seed);
  std::size_t i = static_cast<std::size_t>(rng.below(n));
  std::size_t j = static_cast<std::size_t>(rng.below(n - 1));
  if (j >= i) ++j;
  MatGF out = c;
  out.set(0, i, out.get(0, i) ^ 1u);
  out.set(0, j, out.get(0, j) ^ 1u);
  return {std::move(out), i, j};
}

inline double log2_of(const BigInt& x) {
  if (x <= 0) throw std::domain_error("log2 of a non-positive value");
  const unsigned bits = boost::multiprecision::msb(x);
  if (bits <= 52) return std::log2(x.convert_to<double>());
  const BigInt top = x >> (bits - 52);
  return std::log2(top.convert_to<double>()) + static_cast<double>(bits - 52);
}

enum class WfScheme { mce_prange, nie_prange };

inline WfScheme wf_scheme_from_name(const std::string& s) {
  if (s == "mce_prange") return WfScheme::mce_prange;
  if (s == "nie_prange") return WfScheme::nie_prange;
  throw std::invalid_argument("unknown work-factor scheme: " + s +
                              " (stern, ball-collision and DOOM have no cost model here)");
}

struct CostReport {
  std::string formula;
  std::size_t n, k, t;
  BigInt numerator, denominator;  // work factor as an exact ratio
  double log2_value;

  double approx() const { return std::exp2(log2_value); }
};

inline CostReport work_factor(WfScheme scheme, std::size_t n, std::size_t k, std::size_t t) {
  CostReport r;
  r.n = n;
  r.k = k;
  r.t = t;
  if (scheme == WfScheme::mce_prange) {
    r.formula = "k^3 C(n,k) / C(n-t,k)";
    r.numerator = BigInt(k) * k * k * binomial(n, k);
    r.denominator = binomial(n - t, k);
  } else {
    r.formula = "(n-k)^3 C(n,n-k) / C(n-t,n-k-t)";
    const std::size_t nk = n - k;
    r.numerator = BigInt(nk) * nk * nk * binomial(n, nk);
    r.denominator = binomial(n - t, nk - t);
  }
  r.log2_value = log2_of(r.numerator) - log2_of(r.denominator);
  return r;
}

struct ResendStats {
  std::vector<double> p;  // p[i] = probability exactly i positions garbled in both
  double expected_l1;
};

inline ResendStats resend_statistics(std::size_t n, std::size_t k, std::size_t t) {
  (void)k;
  ResendStats st;
  st.p.resize(t + 1);
  st.expected_l1 = 0.0;
  const double den = log2_of(binomial(n, t));
  for (std::size_t i = 0; i <= t; ++i) {
    const BigInt num = binomial(t, i) * binomial(n - t, t - i);
    st.p[i] = num == 0 ? 0.0 : std::exp2(log2_of(num) - den);
    st.expected_l1 += static_cast<double>(2 * (t - i)) * st.p[i];
  }
  return st;
}

enum class KeySizeScheme { mceliece, niederreiter, classic_mceliece };

inline KeySizeScheme key_scheme_from_name(const std::string& s) {
  if (s == "mceliece") return KeySizeScheme::mceliece;
  if (s == "niederreiter") return KeySizeScheme::niederreiter;
  if (s == "classic_mceliece" || s == "classic-mceliece") return KeySizeScheme::classic_mceliece;
  throw std::invalid_argument("unknown key-size scheme: " + s);
}

struct KeySizeReport {
  std::string scheme;
  std::uint64_t public_size, private_size;
  std::string unit;  // bits or bytes
};

inline KeySizeReport key_sizes(KeySizeScheme scheme, std::size_t m, std::size_t n,
                               std::size_t t) {
  const std::uint64_t k = n - m * t;
  switch (scheme) {
    case KeySizeScheme::mceliece:
      return {"mceliece", k * n, k * k + std::uint64_t(n) * n + t * m + n * m, "bits"};
    case KeySizeScheme::niederreiter: {
      const std::uint64_t nk = n - k;
      return {"niederreiter", nk * n, nk * nk + std::uint64_t(n) * n + t * m + n * m, "bits"};
    }
    case KeySizeScheme::classic_mceliece: {
      const std::uint64_t mt = m * t;
      const std::uint64_t pub = mt * ((n - mt + 7) / 8);
      // permutation-network term (2m-1)·2^(m-4), rounded up below m = 4
      const std::uint64_t benes =
          m >= 4 ? (2 * m - 1) * (std::uint64_t(1) << (m - 4))
                 : ((2 * m - 1) + (std::uint64_t(1) << (4 - m)) - 1) >> (4 - m);
      const std::uint64_t priv = (n + 7) / 8 + t * ((m + 7) / 8) + benes;
      return {"classic_mceliece", pub, priv, "bytes"};
    }
  }
  throw std::logic_error("unreachable");
}

struct SecurityRow {
  std::size_t n, t;
  double bits;
};

// Recommended lengths and their security levels, kept as published data
// rather than recomputed estimates.
inline const std::vector<SecurityRow>& security_table() {
  static const std::vector<SecurityRow> rows = {
      {512, 21, 33.0},  {1024, 38, 57.9},  {2048, 69, 103.5},
      {4096, 127, 187.9}, {8192, 234, 344.6}, {16384, 434, 637.4},
  };
  return rows;
}

}  // namespace goppa
