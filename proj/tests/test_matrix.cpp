#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "fixtures.hpp"
#include "goppa/matrix.hpp"

using goppa::Field;
using goppa::FieldError;
using goppa::MatGF;
using goppa::PermMatrix;
using goppa::Rng;

namespace {

const std::vector<std::string> kExampleH = {
    "010100110110", "111000100100", "010010111001", "101110000111",
    "100001110110", "100110001011", "111010011010", "111010101110"};

const std::vector<std::string> kExampleG = {
    "111101010100", "010011110010", "001010111000", "010100110001"};

const std::vector<std::string> kIsdG = {
    "1010011010000000", "0111010101000000", "1111000000000001", "0111101000010000",
    "1011110000001000", "1010110100000010", "1001111000000100", "0110001100100000"};

const std::vector<std::string> kToyParity = {
    "0001110111101011", "0010110101001101", "1111110111100110", "1100111010010010",
    "0001100001000011", "0000011100011100", "0111101100011011", "0111011010101101"};

const std::vector<std::string> kToyT = {
    "10000111", "01110001", "11111011", "01011101",
    "00011110", "11001110", "10110100", "01100110"};

const std::vector<std::string> kDaggerInput = {"00010", "10000", "01010", "00110"};

const std::vector<std::string> kDaggerOutput = {"0100", "1010", "1001", "1000", "0000"};

MatGF clone_generic(const MatGF& A) {
  MatGF B(A.field(), A.rows(), A.cols(), true);
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) B.set(i, j, A.get(i, j));
  return B;
}

// row-span cardinality by enumeration; the span of a rank-r GF(2) matrix
// has exactly 2^r elements
std::size_t span_size_gf2(const MatGF& A) {
  std::set<std::vector<std::uint32_t>> span;
  for (std::uint64_t mask = 0; mask < (1ull << A.rows()); ++mask) {
    std::vector<std::uint32_t> v(A.cols(), 0);
    for (std::size_t i = 0; i < A.rows(); ++i)
      if ((mask >> i) & 1)
        for (std::size_t j = 0; j < A.cols(); ++j) v[j] ^= A.get(i, j);
    span.insert(v);
  }
  return span.size();
}

}  // namespace

TEST_CASE("vector arithmetic reproduces the worked encoding") {
  Field F2 = Field::prime(2);
  MatGF G = MatGF::from_strings(F2, kIsdG);
  MatGF m(F2, 1, 8);
  m.set(0, 5, 1);
  MatGF e = MatGF::from_strings(F2, {"1010000000000000"});
  MatGF c = goppa::vec_add(goppa::vec_mul(m, G), e);
  REQUIRE(c == MatGF::from_strings(F2, {"0000110100000010"}));
}

TEST_CASE("multiplying by the identity") {
  auto F = fixtures::gf9();
  Rng rng(2);
  MatGF A = goppa::random_matrix(*F, 5, 7, rng);
  REQUIRE(goppa::mat_mul(A, MatGF::identity(*F, 7)) == A);
  REQUIRE(goppa::mat_mul(MatGF::identity(*F, 5), A) == A);
}

TEST_CASE("printed generator annihilates the printed parity check") {
  Field F2 = Field::prime(2);
  MatGF G = MatGF::from_strings(F2, kExampleG);
  MatGF H = MatGF::from_strings(F2, kExampleH);
  MatGF Z = goppa::mat_mul(G, H.transpose());
  for (std::size_t i = 0; i < Z.rows(); ++i) REQUIRE(Z.row_is_zero(i));
}

TEST_CASE("dimension mismatches are rejected") {
  Field F2 = Field::prime(2);
  MatGF A(F2, 2, 3), B(F2, 2, 3);
  REQUIRE_THROWS_AS(goppa::mat_mul(A, B), FieldError);
  MatGF C(F2, 2, 4);
  REQUIRE_THROWS_AS(goppa::mat_add(A, C), FieldError);
}

TEST_CASE("reduced echelon form basics") {
  Field F2 = Field::prime(2);
  MatGF I = MatGF::identity(F2, 6);
  auto e = goppa::rref(I);
  REQUIRE(e.R == I);
  REQUIRE(e.rank == 6);
  REQUIRE(e.transform == I);

  MatGF Z(F2, 3, 5);
  REQUIRE(goppa::rref(Z).rank == 0);
  REQUIRE(goppa::rref(Z).pivots.empty());
}

TEST_CASE("echelon rank matches span enumeration") {
  Field F2 = Field::prime(2);
  MatGF B = MatGF::from_strings(F2, kDaggerInput);
  auto e = goppa::rref(B);
  REQUIRE(e.rank == 4);
  REQUIRE(span_size_gf2(B) == (1u << e.rank));

  Rng rng(14);
  for (int i = 0; i < 50; ++i) {
    MatGF A = goppa::random_matrix(F2, 2 + rng.below(4), 2 + rng.below(5), rng);
    REQUIRE(span_size_gf2(A) == (1ull << goppa::rref(A).rank));
  }
}

TEST_CASE("echelon transform relation and pivot order") {
  for (auto F : {fixtures::f16_a(), fixtures::gf9()}) {
    Rng rng(8);
    for (int i = 0; i < 60; ++i) {
      MatGF A = goppa::random_matrix(*F, 2 + rng.below(5), 2 + rng.below(6), rng);
      auto e = goppa::rref(A);
      REQUIRE(goppa::mat_mul(e.transform, A) == e.R);
      REQUIRE(goppa::invert(e.transform).has_value());
      for (std::size_t t = 1; t < e.pivots.size(); ++t) REQUIRE(e.pivots[t - 1] < e.pivots[t]);
      for (std::size_t t = 0; t < e.pivots.size(); ++t) {
        REQUIRE(e.R.get(t, e.pivots[t]) == 1);
        for (std::size_t r = 0; r < A.rows(); ++r)
          if (r != t) REQUIRE(e.R.get(r, e.pivots[t]) == 0);
      }
    }
  }
}

TEST_CASE("nullspace spans the printed generator") {
  Field F2 = Field::prime(2);
  MatGF H = MatGF::from_strings(F2, kExampleH);
  MatGF N = goppa::nullspace(H);
  REQUIRE(N.rows() == 4);
  REQUIRE(goppa::row_space_equal(N, MatGF::from_strings(F2, kExampleG)));
}

TEST_CASE("nullspace properties") {
  Field F2 = Field::prime(2);
  REQUIRE(goppa::nullspace(MatGF::identity(F2, 4)).rows() == 0);

  for (auto F : {fixtures::f16_a(), fixtures::gf9()}) {
    Rng rng(31);
    for (int i = 0; i < 40; ++i) {
      MatGF A = goppa::random_matrix(*F, 2 + rng.below(4), 3 + rng.below(5), rng);
      MatGF N = goppa::nullspace(A);
      REQUIRE(N.rows() == A.cols() - goppa::rref(A).rank);
      for (std::size_t r = 0; r < N.rows(); ++r) {
        MatGF x(*F, 1, N.cols());
        for (std::size_t j = 0; j < N.cols(); ++j) x.set(0, j, N.get(r, j));
        MatGF s = goppa::mul_vec(A, x);
        REQUIRE(s.row_is_zero(0));
      }
      // the basis rows are independent by construction: one per free column
      REQUIRE(goppa::rref(N).rank == N.rows());
    }
  }
}

TEST_CASE("systematic form of the toy parity check") {
  Field F2 = Field::prime(2);
  MatGF H = MatGF::from_strings(F2, kToyParity);
  auto T = goppa::systematic_form(H);
  REQUIRE(T.has_value());
  REQUIRE(*T == MatGF::from_strings(F2, kToyT));
}

TEST_CASE("systematic form semantics") {
  Field F2 = Field::prime(2);
  Rng rng(40);

  // (I | X) comes back as X
  MatGF X = goppa::random_matrix(F2, 4, 6, rng);
  MatGF IX(F2, 4, 10);
  for (std::size_t i = 0; i < 4; ++i) {
    IX.set(i, i, 1);
    for (std::size_t j = 0; j < 6; ++j) IX.set(i, 4 + j, X.get(i, j));
  }
  auto r = goppa::systematic_form(IX);
  REQUIRE(r.has_value());
  REQUIRE(*r == X);

  // row space is preserved whenever the form exists
  int produced = 0;
  while (produced < 25) {
    MatGF A = goppa::random_matrix(F2, 8, 16, rng);
    auto t = goppa::systematic_form(A);
    if (!t) continue;
    ++produced;
    MatGF IT(F2, 8, 16);
    for (std::size_t i = 0; i < 8; ++i) {
      IT.set(i, i, 1);
      for (std::size_t j = 0; j < 8; ++j) IT.set(i, 8 + j, t->get(i, j));
    }
    REQUIRE(goppa::row_space_equal(IT, A));
  }

  // leftmost block singular: first column identically zero
  MatGF S = MatGF::from_strings(F2, {"0110", "0101"});
  REQUIRE(goppa::rref(S).rank == 2);
  REQUIRE_FALSE(goppa::systematic_form(S).has_value());
}

TEST_CASE("matrix inversion") {
  Field F2 = Field::prime(2);
  MatGF I = MatGF::identity(F2, 5);
  REQUIRE(*goppa::invert(I) == I);

  Rng rng(17);
  PermMatrix P = goppa::random_permutation(9, rng);
  MatGF Pm = P.as_matrix(F2);
  REQUIRE(*goppa::invert(Pm) == Pm.transpose());

  MatGF G = MatGF::from_strings(F2, kExampleG);
  MatGF Gi = G.select_columns({0, 1, 2, 3});
  auto inv = goppa::invert(Gi);
  REQUIRE(inv.has_value());
  REQUIRE(goppa::mat_mul(*inv, Gi) == MatGF::identity(F2, 4));

  MatGF S(F2, 3, 3);  // zero matrix is singular
  REQUIRE_FALSE(goppa::invert(S).has_value());

  auto F9 = fixtures::gf9();
  for (int i = 0; i < 30; ++i) {
    MatGF A = goppa::random_nonsingular(*F9, 4, rng);
    REQUIRE(goppa::mat_mul(A, *goppa::invert(A)) == MatGF::identity(*F9, 4));
  }
}

TEST_CASE("random nonsingular sampling") {
  Field F2 = Field::prime(2);
  Rng rng(23);
  MatGF one = goppa::random_nonsingular(F2, 1, rng);
  REQUIRE(one.get(0, 0) == 1);

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng r(seed);
    MatGF A = goppa::random_nonsingular(F2, 8, r);
    REQUIRE(goppa::invert(A).has_value());
  }
}

TEST_CASE("nonsingular density over GF(2)") {
  Field F2 = Field::prime(2);
  Rng rng(77);
  int hits = 0;
  const int trials = 10000;
  for (int i = 0; i < trials; ++i) {
    MatGF A = goppa::random_matrix(F2, 16, 16, rng);
    if (goppa::rref(A).rank == 16) ++hits;
  }
  double rate = static_cast<double>(hits) / trials;
  REQUIRE(rate > 0.27);
  REQUIRE(rate < 0.31);
}

TEST_CASE("permutations") {
  Field F2 = Field::prime(2);
  Rng rng(5);
  PermMatrix one = goppa::random_permutation(1, rng);
  REQUIRE(one.perm == std::vector<std::uint32_t>{0});

  auto F = fixtures::f16_a();
  for (int i = 0; i < 50; ++i) {
    PermMatrix P = goppa::random_permutation(12, rng);
    MatGF x = goppa::random_matrix(*F, 1, 12, rng);
    REQUIRE(P.apply_row_inverse(P.apply_row(x)) == x);
    REQUIRE(P.inverse().apply_row(P.apply_row(x)) == x);
    // index application agrees with the dense matrix picture
    REQUIRE(P.apply_row(x) == goppa::vec_mul(x, P.as_matrix(*F)));
  }

  MatGF A = goppa::random_matrix(F2, 6, 10, rng);
  PermMatrix P = goppa::random_permutation(10, rng);
  REQUIRE(P.permute_columns(A) == goppa::mat_mul(A, P.as_matrix(F2)));
}

TEST_CASE("permutation images are uniform") {
  Rng rng(101);
  const int draws = 10000;
  int counts[4][4] = {};
  for (int d = 0; d < draws; ++d) {
    PermMatrix P = goppa::random_permutation(4, rng);
    for (int i = 0; i < 4; ++i) ++counts[i][P.perm[i]];
  }
  const double expected = draws / 4.0;
  for (int i = 0; i < 4; ++i) {
    double chi2 = 0;
    for (int v = 0; v < 4; ++v) {
      double diff = counts[i][v] - expected;
      chi2 += diff * diff / expected;
    }
    REQUIRE(chi2 < 16.266);  // dof 3 at the 0.001 level
  }
}

TEST_CASE("full rank factorization") {
  Field F2 = Field::prime(2);
  Rng rng(9);

  MatGF A = goppa::random_nonsingular(F2, 5, rng);
  auto f = goppa::full_rank_factorize(A);
  REQUIRE(f.rank == 5);
  REQUIRE(goppa::mat_mul(f.B, f.C) == A);

  MatGF B = MatGF::from_strings(F2, kDaggerInput);
  auto fb = goppa::full_rank_factorize(B);
  REQUIRE(goppa::mat_mul(fb.B, fb.C) == B);
  REQUIRE(fb.rank == 4);

  // rank-1 outer product
  MatGF u = MatGF::from_strings(F2, {"1011"});
  MatGF v = MatGF::from_strings(F2, {"110"});
  MatGF outer = goppa::mat_mul(u.transpose(), v);
  auto fo = goppa::full_rank_factorize(outer);
  REQUIRE(fo.rank == 1);
  REQUIRE(fo.B.rows() == 4);
  REQUIRE(fo.B.cols() == 1);
  REQUIRE(fo.C.rows() == 1);
  REQUIRE(fo.C.cols() == 3);
  REQUIRE(goppa::mat_mul(fo.B, fo.C) == outer);

  auto F9 = fixtures::gf9();
  for (int i = 0; i < 40; ++i) {
    MatGF M = goppa::random_matrix(*F9, 2 + rng.below(4), 2 + rng.below(5), rng);
    auto fm = goppa::full_rank_factorize(M);
    REQUIRE(goppa::mat_mul(fm.B, fm.C) == M);
    REQUIRE(goppa::rref(fm.B).rank == fm.rank);
    REQUIRE(goppa::rref(fm.C).rank == fm.rank);
  }
}

TEST_CASE("generalized inverse of the worked example") {
  Field F2 = Field::prime(2);
  MatGF B = MatGF::from_strings(F2, kDaggerInput);
  auto g = goppa::generalized_inverse(B);
  REQUIRE(g.has_value());
  REQUIRE(g->dagger == MatGF::from_strings(F2, kDaggerOutput));
  REQUIRE(goppa::mat_mul(goppa::mat_mul(B, g->dagger), B) == B);
  REQUIRE(goppa::mat_mul(goppa::mat_mul(g->dagger, B), g->dagger) == g->dagger);
  REQUIRE(g->left_symmetric);
  REQUIRE(g->right_symmetric);
}

TEST_CASE("generalized inverse properties") {
  Field F2 = Field::prime(2);
  MatGF I = MatGF::identity(F2, 4);
  auto gi = goppa::generalized_inverse(I);
  REQUIRE(gi.has_value());
  REQUIRE(gi->dagger == I);

  Rng rng(113);
  int succeeded = 0;
  for (int i = 0; i < 1000; ++i) {
    MatGF A = goppa::random_matrix(F2, 2 + rng.below(5), 2 + rng.below(5), rng);
    auto g = goppa::generalized_inverse(A);
    if (!g) continue;
    ++succeeded;
    REQUIRE(goppa::mat_mul(goppa::mat_mul(A, g->dagger), A) == A);
    REQUIRE(goppa::mat_mul(goppa::mat_mul(g->dagger, A), g->dagger) == g->dagger);
  }
  REQUIRE(succeeded > 100);  // the failure branch must not dominate
}

TEST_CASE("linear solver") {
  auto F = fixtures::gf9();
  Rng rng(51);
  for (int i = 0; i < 60; ++i) {
    MatGF A = goppa::random_matrix(*F, 3 + rng.below(3), 3 + rng.below(4), rng);
    MatGF x = goppa::random_matrix(*F, 1, A.cols(), rng);
    MatGF b = goppa::mul_vec(A, x);
    auto sol = goppa::solve_linear(A, b);
    REQUIRE(sol.has_value());
    REQUIRE(goppa::mul_vec(A, *sol) == b);
  }

  Field F2 = Field::prime(2);
  MatGF Z(F2, 2, 2);
  MatGF b = MatGF::from_strings(F2, {"10"});
  REQUIRE_FALSE(goppa::solve_linear(Z, b).has_value());
}

TEST_CASE("packed and generic paths agree") {
  Field F2 = Field::prime(2);
  Rng rng(201);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t r = 1 + rng.below(6);
    const std::size_t c = 1 + rng.below(7);
    MatGF A = goppa::random_matrix(F2, r, c, rng);
    MatGF Ag = clone_generic(A);
    REQUIRE(A.packed());
    REQUIRE_FALSE(Ag.packed());

    REQUIRE(A.transpose() == Ag.transpose());

    MatGF B = goppa::random_matrix(F2, c, 1 + rng.below(6), rng);
    REQUIRE(goppa::mat_mul(A, B) == goppa::mat_mul(Ag, clone_generic(B)));

    MatGF C = goppa::random_matrix(F2, r, c, rng);
    REQUIRE(goppa::mat_add(A, C) == goppa::mat_add(Ag, clone_generic(C)));

    auto ep = goppa::rref(A);
    auto eg = goppa::rref(Ag);
    REQUIRE(ep.R == eg.R);
    REQUIRE(ep.rank == eg.rank);
    REQUIRE(ep.pivots == eg.pivots);
    REQUIRE(goppa::mat_mul(eg.transform, Ag) == eg.R);

    REQUIRE(goppa::nullspace(A) == goppa::nullspace(Ag));
  }
}

TEST_CASE("weights") {
  Field F2 = Field::prime(2);
  MatGF v = MatGF::from_strings(F2, {"0110100110110011"});
  REQUIRE(goppa::weight(v) == 9);
  auto F9 = fixtures::gf9();
  MatGF w = MatGF::from_strings(*F9, {"0210012"});
  REQUIRE(goppa::weight(w) == 4);
}
