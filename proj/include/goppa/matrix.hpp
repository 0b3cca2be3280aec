#pragma once

#include <algorithm>
#include <bit>
#include <optional>
#include <string>

#include "gf.hpp"
#include "rng.hpp"

namespace goppa {

// Dense matrix over a Field.  Over GF(2) the storage is bit-packed and the
// row operations run word-wide; every other field uses plain element
// storage.  A GF(2) matrix can be forced onto the generic path so the two
// implementations can be checked against each other.
class MatGF {
 public:
  MatGF(const Field& F, std::size_t rows, std::size_t cols, bool force_generic = false)
      : F_(&F), rows_(rows), cols_(cols), packed_(F.q() == 2 && !force_generic) {
    if (packed_) {
      wpr_ = (cols_ + 63) / 64;
      bits_.assign(rows_ * wpr_, 0);
    } else {
      el_.assign(rows_ * cols_, 0);
    }
  }

  static MatGF identity(const Field& F, std::size_t n) {
    MatGF I(F, n, n);
    for (std::size_t i = 0; i < n; ++i) I.set(i, i, 1);
    return I;
  }

  // rows given as digit strings over GF(p), e.g. "010011" or "2101"
  static MatGF from_strings(const Field& F, const std::vector<std::string>& rows) {
    MatGF A(F, rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != A.cols_) throw FieldError("ragged rows");
      for (std::size_t j = 0; j < A.cols_; ++j)
        A.set(i, j, static_cast<std::uint32_t>(rows[i][j] - '0'));
    }
    return A;
  }

  static MatGF row_vector(const Field& F, const std::vector<std::uint32_t>& v) {
    MatGF A(F, 1, v.size());
    for (std::size_t j = 0; j < v.size(); ++j) A.set(0, j, v[j]);
    return A;
  }

  const Field& field() const { return *F_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool packed() const { return packed_; }

  std::uint32_t get(std::size_t i, std::size_t j) const {
    if (packed_) return (bits_[i * wpr_ + (j >> 6)] >> (j & 63)) & 1u;
    return el_[i * cols_ + j];
  }

  void set(std::size_t i, std::size_t j, std::uint32_t v) {
    if (packed_) {
      const std::uint64_t mask = 1ull << (j & 63);
      if (v & 1u)
        bits_[i * wpr_ + (j >> 6)] |= mask;
      else
        bits_[i * wpr_ + (j >> 6)] &= ~mask;
    } else {
      el_[i * cols_ + j] = v;
    }
  }

  bool operator==(const MatGF& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (get(i, j) != o.get(i, j)) return false;
    return true;
  }
  bool operator!=(const MatGF& o) const { return !(*this == o); }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    if (packed_)
      std::swap_ranges(bits_.begin() + a * wpr_, bits_.begin() + (a + 1) * wpr_,
                       bits_.begin() + b * wpr_);
    else
      std::swap_ranges(el_.begin() + a * cols_, el_.begin() + (a + 1) * cols_,
                       el_.begin() + b * cols_);
  }

  // row[dst] += c * row[src]
  void row_addmul(std::size_t dst, std::size_t src, std::uint32_t c) {
    if (c == 0) return;
    if (packed_) {
      const std::uint64_t* s = &bits_[src * wpr_];
      std::uint64_t* d = &bits_[dst * wpr_];
      for (std::size_t w = 0; w < wpr_; ++w) d[w] ^= s[w];
    } else {
      for (std::size_t j = 0; j < cols_; ++j)
        el_[dst * cols_ + j] = F_->add(el_[dst * cols_ + j], F_->mul(c, el_[src * cols_ + j]));
    }
  }

  void scale_row(std::size_t i, std::uint32_t c) {
    if (packed_ || c == 1) return;  // only 1 is a nonzero scalar over GF(2)
    for (std::size_t j = 0; j < cols_; ++j) el_[i * cols_ + j] = F_->mul(el_[i * cols_ + j], c);
  }

  bool row_is_zero(std::size_t i) const {
    if (packed_) {
      for (std::size_t w = 0; w < wpr_; ++w)
        if (bits_[i * wpr_ + w]) return false;
      return true;
    }
    for (std::size_t j = 0; j < cols_; ++j)
      if (el_[i * cols_ + j]) return false;
    return true;
  }

  std::size_t row_weight(std::size_t i) const {
    std::size_t w = 0;
    if (packed_) {
      for (std::size_t k = 0; k < wpr_; ++k) w += std::popcount(bits_[i * wpr_ + k]);
      return w;
    }
    for (std::size_t j = 0; j < cols_; ++j) w += el_[i * cols_ + j] != 0;
    return w;
  }

  MatGF transpose() const {
    MatGF T(*F_, cols_, rows_, !packed_ && F_->q() == 2);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        std::uint32_t v = get(i, j);
        if (v) T.set(j, i, v);
      }
    return T;
  }

  MatGF select_columns(const std::vector<std::size_t>& idx) const {
    MatGF S(*F_, rows_, idx.size(), !packed_ && F_->q() == 2);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) {
        std::uint32_t v = get(i, idx[j]);
        if (v) S.set(i, j, v);
      }
    return S;
  }

  MatGF select_rows(std::size_t first, std::size_t count) const {
    MatGF S(*F_, count, cols_, !packed_ && F_->q() == 2);
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        std::uint32_t v = get(first + i, j);
        if (v) S.set(i, j, v);
      }
    return S;
  }

 private:
  const Field* F_;
  std::size_t rows_, cols_;
  bool packed_;
  std::size_t wpr_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint32_t> el_;

  friend MatGF mat_mul(const MatGF&, const MatGF&);
};

inline void check_same_field(const MatGF& A, const MatGF& B) {
  if (!A.field().same(B.field())) throw FieldError("matrix operands from different fields");
}

inline MatGF mat_add(const MatGF& A, const MatGF& B) {
  check_same_field(A, B);
  if (A.rows() != B.rows() || A.cols() != B.cols()) throw FieldError("dimension mismatch in add");
  MatGF R(A.field(), A.rows(), A.cols(), !A.packed() && A.field().q() == 2);
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j)
      R.set(i, j, A.field().add(A.get(i, j), B.get(i, j)));
  return R;
}

inline MatGF mat_mul(const MatGF& A, const MatGF& B) {
  check_same_field(A, B);
  if (A.cols() != B.rows()) throw FieldError("dimension mismatch in mul");
  const Field& F = A.field();
  MatGF R(F, A.rows(), B.cols(), !(A.packed() && B.packed()) && F.q() == 2);
  if (A.packed() && B.packed()) {
    for (std::size_t i = 0; i < A.rows(); ++i) {
      std::uint64_t* dst = &R.bits_[i * R.wpr_];
      for (std::size_t k = 0; k < A.cols(); ++k) {
        if (!A.get(i, k)) continue;
        const std::uint64_t* src = &B.bits_[k * B.wpr_];
        for (std::size_t w = 0; w < B.wpr_; ++w) dst[w] ^= src[w];
      }
    }
    return R;
  }
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t k = 0; k < A.cols(); ++k) {
      const std::uint32_t a = A.get(i, k);
      if (!a) continue;
      for (std::size_t j = 0; j < B.cols(); ++j) {
        const std::uint32_t b = B.get(k, j);
        if (b) R.set(i, j, F.add(R.get(i, j), F.mul(a, b)));
      }
    }
  return R;
}

// x · A for a row vector x (1×rows(A)) -> 1×cols(A)
inline MatGF vec_mul(const MatGF& x, const MatGF& A) { return mat_mul(x, A); }

// A · xᵀ for a row vector x (1×cols(A)), returned as a row vector 1×rows(A)
inline MatGF mul_vec(const MatGF& A, const MatGF& x) {
  if (x.rows() != 1 || x.cols() != A.cols()) throw FieldError("dimension mismatch in mul_vec");
  const Field& F = A.field();
  MatGF r(F, 1, A.rows());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    std::uint32_t acc = 0;
    for (std::size_t j = 0; j < A.cols(); ++j) {
      const std::uint32_t a = A.get(i, j);
      if (a) acc = F.add(acc, F.mul(a, x.get(0, j)));
    }
    r.set(0, i, acc);
  }
  return r;
}

inline MatGF vec_add(const MatGF& a, const MatGF& b) { return mat_add(a, b); }

inline MatGF vec_sub(const MatGF& a, const MatGF& b) {
  check_same_field(a, b);
  if (a.rows() != 1 || b.rows() != 1 || a.cols() != b.cols())
    throw FieldError("dimension mismatch in vec_sub");
  const Field& F = a.field();
  MatGF r(F, 1, a.cols(), !a.packed() && F.q() == 2);
  for (std::size_t j = 0; j < a.cols(); ++j) r.set(0, j, F.sub(a.get(0, j), b.get(0, j)));
  return r;
}

inline std::size_t weight(const MatGF& v) {
  std::size_t w = 0;
  for (std::size_t i = 0; i < v.rows(); ++i) w += v.row_weight(i);
  return w;
}

struct RrefResult {
  MatGF R;          // reduced row echelon form
  std::size_t rank;
  MatGF transform;  // invertible, transform * A = R
  std::vector<std::size_t> pivots;
};

inline RrefResult rref(const MatGF& A) {
  MatGF R = A;
  MatGF T = MatGF::identity(A.field(), A.rows());
  if (!A.packed()) {
    // keep the transform on the same storage path as the work matrix
    MatGF Tg(A.field(), A.rows(), A.rows(), true);
    for (std::size_t i = 0; i < A.rows(); ++i) Tg.set(i, i, 1);
    T = Tg;
  }
  const Field& F = A.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < A.cols() && r < A.rows(); ++col) {
    std::size_t pr = r;
    while (pr < A.rows() && R.get(pr, col) == 0) ++pr;
    if (pr == A.rows()) continue;
    R.swap_rows(r, pr);
    T.swap_rows(r, pr);
    const std::uint32_t piv = R.get(r, col);
    if (piv != 1) {
      const std::uint32_t s = F.inv(piv);
      R.scale_row(r, s);
      T.scale_row(r, s);
    }
    for (std::size_t i = 0; i < A.rows(); ++i) {
      if (i == r) continue;
      const std::uint32_t c = R.get(i, col);
      if (c) {
        const std::uint32_t k = F.neg(c);
        R.row_addmul(i, r, k);
        T.row_addmul(i, r, k);
      }
    }
    pivots.push_back(col);
    ++r;
  }
  return {std::move(R), r, std::move(T), std::move(pivots)};
}

// Basis of {x : A·xᵀ = 0}, one row per free column, free columns ascending.
inline MatGF nullspace(const MatGF& A) {
  RrefResult e = rref(A);
  const std::size_t n = A.cols();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;
  MatGF N(A.field(), n - e.rank, n);
  std::size_t row = 0;
  for (std::size_t fc = 0; fc < n; ++fc) {
    if (is_pivot[fc]) continue;
    N.set(row, fc, 1);
    for (std::size_t t = 0; t < e.pivots.size(); ++t) {
      const std::uint32_t v = e.R.get(t, fc);
      if (v) N.set(row, e.pivots[t], A.field().neg(v));
    }
    ++row;
  }
  return N;
}

// Gaussian elimination without column swaps: succeeds iff the left
// rows×rows block is invertible, returning the right block T of (I | T).
inline std::optional<MatGF> systematic_form(const MatGF& A) {
  if (A.rows() > A.cols()) throw FieldError("systematic form needs rows <= cols");
  RrefResult e = rref(A);
  if (e.rank != A.rows()) return std::nullopt;
  for (std::size_t i = 0; i < A.rows(); ++i)
    if (e.pivots[i] != i) return std::nullopt;
  std::vector<std::size_t> right(A.cols() - A.rows());
  for (std::size_t j = 0; j < right.size(); ++j) right[j] = A.rows() + j;
  return e.R.select_columns(right);
}

inline std::optional<MatGF> invert(const MatGF& A) {
  if (A.rows() != A.cols()) throw FieldError("inverse of a non-square matrix");
  RrefResult e = rref(A);
  if (e.rank != A.rows()) return std::nullopt;
  return e.transform;
}

inline MatGF random_matrix(const Field& F, std::size_t rows, std::size_t cols, Rng& rng) {
  MatGF A(F, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      A.set(i, j, static_cast<std::uint32_t>(rng.below(F.q())));
  return A;
}

// Rejection-sampled uniform nonsingular matrix; *draws reports how many
// uniform draws were needed (singular ones included).
inline MatGF random_nonsingular(const Field& F, std::size_t k, Rng& rng,
                                std::size_t* draws = nullptr) {
  std::size_t n = 0;
  for (;;) {
    MatGF A = random_matrix(F, k, k, rng);
    ++n;
    if (rref(A).rank == k) {
      if (draws) *draws = n;
      return A;
    }
  }
}

// Permutation stored as an index sequence: position i of the input goes to
// position perm[i] of the output, matching right-multiplication x -> x·P by
// the matrix with P[i][perm[i]] = 1.
struct PermMatrix {
  std::vector<std::uint32_t> perm;

  std::size_t size() const { return perm.size(); }

  PermMatrix inverse() const {
    PermMatrix inv;
    inv.perm.resize(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv.perm[perm[i]] = static_cast<std::uint32_t>(i);
    return inv;
  }

  MatGF apply_row(const MatGF& x) const {
    MatGF y(x.field(), 1, x.cols());
    for (std::size_t i = 0; i < perm.size(); ++i) {
      std::uint32_t v = x.get(0, i);
      if (v) y.set(0, perm[i], v);
    }
    return y;
  }

  MatGF apply_row_inverse(const MatGF& x) const {
    MatGF y(x.field(), 1, x.cols());
    for (std::size_t i = 0; i < perm.size(); ++i) {
      std::uint32_t v = x.get(0, perm[i]);
      if (v) y.set(0, i, v);
    }
    return y;
  }

  // A · P: column j of A lands in column perm[j]
  MatGF permute_columns(const MatGF& A) const {
    MatGF B(A.field(), A.rows(), A.cols(), !A.packed() && A.field().q() == 2);
    for (std::size_t i = 0; i < A.rows(); ++i)
      for (std::size_t j = 0; j < A.cols(); ++j) {
        std::uint32_t v = A.get(i, j);
        if (v) B.set(i, perm[j], v);
      }
    return B;
  }

  MatGF as_matrix(const Field& F) const {
    MatGF P(F, perm.size(), perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) P.set(i, perm[i], 1);
    return P;
  }
};

inline PermMatrix random_permutation(std::size_t n, Rng& rng) {
  PermMatrix P;
  P.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) P.perm[i] = static_cast<std::uint32_t>(i);
  for (std::size_t i = n; i-- > 1;) {
    std::size_t j = static_cast<std::size_t>(rng.below(i + 1));
    std::swap(P.perm[i], P.perm[j]);
  }
  return P;
}

struct FullRankFactorization {
  MatGF B;  // rows×r
  MatGF C;  // r×cols, the nonzero rows of rref(A)
  std::size_t rank;
};

// A = B·C with rank(A) = rank(B) = rank(C).  C comes from the reduced
// echelon form; B is the matching block of the inverse row transform
// (equivalently, the pivot columns of A in order).
inline FullRankFactorization full_rank_factorize(const MatGF& A) {
  RrefResult e = rref(A);
  MatGF C = e.R.select_rows(0, e.rank);
  MatGF Tinv = *invert(e.transform);
  std::vector<std::size_t> first(e.rank);
  for (std::size_t j = 0; j < e.rank; ++j) first[j] = j;
  MatGF B = Tinv.select_columns(first);
  return {std::move(B), std::move(C), e.rank};
}

struct GeneralizedInverse {
  MatGF dagger;
  bool left_symmetric;   // (A·A†)ᵀ = A·A†
  bool right_symmetric;  // (A†·A)ᵀ = A†·A
};

// A† = Cᵀ(CCᵀ)⁻¹(BᵀB)⁻¹Bᵀ from the full-rank factorization.  Guaranteed to
// satisfy A·A†·A = A and A†·A·A† = A†; the two symmetry relations are
// checked and reported, since over GF(2) (transpose standing in for the
// conjugate transpose) they can fail.  Returns nothing when CCᵀ or BᵀB is
// singular.
inline std::optional<GeneralizedInverse> generalized_inverse(const MatGF& A) {
  FullRankFactorization f = full_rank_factorize(A);
  MatGF Ct = f.C.transpose();
  MatGF Bt = f.B.transpose();
  auto cct_inv = invert(mat_mul(f.C, Ct));
  if (!cct_inv) return std::nullopt;
  auto btb_inv = invert(mat_mul(Bt, f.B));
  if (!btb_inv) return std::nullopt;
  MatGF dag = mat_mul(mat_mul(Ct, *cct_inv), mat_mul(*btb_inv, Bt));
  MatGF AD = mat_mul(A, dag);
  MatGF DA = mat_mul(dag, A);
  GeneralizedInverse g{std::move(dag), AD == AD.transpose(), DA == DA.transpose()};
  return g;
}

// Particular solution of A·xᵀ = bᵀ with free variables at zero; empty when
// the system is inconsistent.
inline std::optional<MatGF> solve_linear(const MatGF& A, const MatGF& b) {
  if (b.rows() != 1 || b.cols() != A.rows()) throw FieldError("dimension mismatch in solve");
  RrefResult e = rref(A);
  MatGF rb = mul_vec(e.transform, b);  // transform applied to the right-hand side
  for (std::size_t i = e.rank; i < A.rows(); ++i)
    if (rb.get(0, i)) return std::nullopt;
  MatGF x(A.field(), 1, A.cols());
  for (std::size_t t = 0; t < e.rank; ++t) x.set(0, e.pivots[t], rb.get(0, t));
  return x;
}

inline bool row_space_equal(const MatGF& A, const MatGF& B) {
  if (A.cols() != B.cols()) return false;
  RrefResult ea = rref(A), eb = rref(B);
  if (ea.rank != eb.rank) return false;
  return ea.R.select_rows(0, ea.rank) == eb.R.select_rows(0, eb.rank);
}

}  // namespace goppa
