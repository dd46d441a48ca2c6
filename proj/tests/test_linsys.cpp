#include <doctest.h>

#include <algorithm>
#include <random>

#include "ahnn/linsys.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace ahnn;

namespace {

ErrorKind parse_error_kind(std::string_view text) {
  try {
    parse_system(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a parse error");
  return ErrorKind::invalid_config;
}

}  // namespace

TEST_CASE("parse_system reads the augmented-matrix format") {
  const auto sys = parse_system("2\n4 3 1\n3 5 9\n");
  CHECK(sys.size() == 2);
  CHECK(sys.A(0, 0) == 4);
  CHECK(sys.A(0, 1) == 3);
  CHECK(sys.A(1, 0) == 3);
  CHECK(sys.A(1, 1) == 5);
  CHECK(sys.b(0) == 1);
  CHECK(sys.b(1) == 9);

  const auto one = parse_system("1\n1 0\n");
  CHECK(one.size() == 1);
  CHECK(one.A(0, 0) == 1);
  CHECK(one.b(0) == 0);
}

TEST_CASE("parse_system skips comments and blank lines, accepts scientific notation") {
  const auto sys = parse_system("# header\n\n  # indented comment\n2\n1e0 -2.5E-1 +3\n\n0 1 4e2\n");
  CHECK(sys.A(0, 1) == -0.25);
  CHECK(sys.b(0) == 3);
  CHECK(sys.b(1) == 400);
}

TEST_CASE("parse_system errors carry a kind and a line number") {
  CHECK(parse_error_kind("2\n4 3 1\n3 5\n") == ErrorKind::row_length_mismatch);
  CHECK(parse_error_kind("0\n") == ErrorKind::dimension_zero);
  CHECK(parse_error_kind("# nothing\n") == ErrorKind::dimension_zero);
  CHECK(parse_error_kind("2\n4 x 1\n3 5 9\n") == ErrorKind::malformed_number);
  CHECK(parse_error_kind("2\n4 3 1\n") == ErrorKind::missing_rows);
  CHECK(parse_error_kind("1\n1 2\n3 4\n") == ErrorKind::trailing_data);
  CHECK(parse_error_kind("1\n1 inf\n") == ErrorKind::non_finite);
  CHECK(parse_error_kind("two\n") == ErrorKind::malformed_number);

  try {
    parse_system("# c\n2\n4 3 1\n3 5\n");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.line() == 4);
  }
}

TEST_CASE("render/parse round-trips bit-exactly") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 1 + trial % 6;
    LinearSystemd sys{oracle::random_matrix(rng, n, -1e3, 1e3), oracle::random_vector(rng, n, -1e-3, 1e5)};
    const auto back = parse_system(render_system(sys));
    REQUIRE(back.size() == n);
    CHECK((back.A.array() == sys.A.array()).all());
    CHECK((back.b.array() == sys.b.array()).all());
  }
}

TEST_CASE("lu_solve matches the worked examples") {
  const auto v2 = lu_solve(sys_of({{4, 3}, {3, 5}}, {1, 9}));
  CHECK(v2(0) == doctest::Approx(-2).epsilon(1e-14));
  CHECK(v2(1) == doctest::Approx(3).epsilon(1e-14));

  const auto id = lu_solve(sys_of({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {7, -1, 0}));
  CHECK(id(0) == 7);
  CHECK(id(1) == -1);
  CHECK(id(2) == 0);

  // (1, −2, 2) substitutes exactly: 4−4+2 = 2, 2−14+2 = −10, 3−2+12 = 13.
  const auto v3 = lu_solve(sys_of({{4, 2, 1}, {2, 7, 1}, {3, 1, 6}}, {2, -10, 13}));
  CHECK(v3(0) == doctest::Approx(1).epsilon(1e-14));
  CHECK(v3(1) == doctest::Approx(-2).epsilon(1e-14));
  CHECK(v3(2) == doctest::Approx(2).epsilon(1e-14));
}

TEST_CASE("lu_solve flags singular matrices") {
  CHECK_THROWS_AS(lu_solve(sys_of({{1, 2}, {2, 4}}, {1, 2})), Error);
  CHECK_THROWS_AS(lu_solve(sys_of({{0, 0}, {0, 0}}, {0, 0})), Error);
  try {
    lu_solve(sys_of({{1, 1}, {1, 1 + 1e-15}}, {1, 1}));
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::singular_matrix);
  }
}

TEST_CASE("lu_solve residual bound and agreement with an independent elimination") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = 1 + trial % 20;
    LinearSystemd sys{oracle::random_matrix(rng, n, -10, 10), oracle::random_vector(rng, n, -10, 10)};
    sys.A.diagonal().array() += 5.0;
    VectorX<double> V;
    try {
      V = lu_solve(sys);
    } catch (const Error&) {
      continue;
    }
    const auto r = residual(sys, V);
    const double norm_a = sys.A.cwiseAbs().rowwise().sum().maxCoeff();
    CHECK(r.norm_inf <= 1e-10 * (norm_a * V.cwiseAbs().maxCoeff() + sys.b.cwiseAbs().maxCoeff()));

    std::vector<std::vector<double>> rows(n, std::vector<double>(n));
    std::vector<double> rhs(n);
    for (Index i = 0; i < n; ++i) {
      rhs[i] = sys.b(i);
      for (Index j = 0; j < n; ++j) rows[i][j] = sys.A(i, j);
    }
    const auto ref = oracle::gauss_solve(rows, rhs);
    for (Index i = 0; i < n; ++i) CHECK(V(i) == doctest::Approx(ref[i]).epsilon(1e-8).scale(1));
  }
}

TEST_CASE("residual") {
  const auto sys = sys_of({{4, 3}, {3, 5}}, {1, 9});
  const VectorX<double> exact = (VectorX<double>(2) << -2, 3).finished();
  const auto r0 = residual(sys, exact);
  CHECK(r0.r(0) == 0);
  CHECK(r0.r(1) == 0);
  CHECK(r0.norm_inf == 0);

  const auto rz = residual(sys, VectorX<double>::Zero(2));
  CHECK(rz.r(0) == -1);
  CHECK(rz.r(1) == -9);

  const auto asym = sys_of({{3, 2}, {7, 8}}, {-1, -9});
  const VectorX<double> reported = (VectorX<double>(2) << 1.01, -2.01).finished();
  const auto ra = residual(asym, reported);
  CHECK(ra.r(0) == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(ra.r(1) == doctest::Approx(-0.01).epsilon(1e-12));
  CHECK(ra.norm_inf == doctest::Approx(0.01).epsilon(1e-12));

  CHECK_THROWS_AS(residual(sys, VectorX<double>::Zero(3)), Error);
}

TEST_CASE("diagonal dominance margins") {
  const auto dd = is_diagonally_dominant(sys_of({{4, 2, 1}, {2, 7, 1}, {3, 1, 6}}, {0, 0, 0}));
  CHECK(dd.margins(0) == 1);
  CHECK(dd.margins(1) == 4);
  CHECK(dd.margins(2) == 2);
  CHECK(dd.dominant);

  const auto id = diagonal_dominance(MatrixX<double>::Identity(4, 4));
  CHECK((id.margins.array() == 1).all());
  CHECK(id.dominant);

  const auto swap = diagonal_dominance((MatrixX<double>(2, 2) << 0, 1, 1, 0).finished());
  CHECK(swap.margins(0) == -1);
  CHECK(swap.margins(1) == -1);
  CHECK_FALSE(swap.dominant);
}

TEST_CASE("diagonal dominance is invariant under symmetric permutation") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 2 + trial % 7;
    MatrixX<double> A = oracle::random_matrix(rng, n, -5, 5);
    A.diagonal() = oracle::random_vector(rng, n, -30, 30);
    Eigen::PermutationMatrix<Eigen::Dynamic> P(n);
    P.setIdentity();
    std::shuffle(P.indices().data(), P.indices().data() + n, rng);
    const MatrixX<double> PA = P * A * P.transpose();
    const auto before = diagonal_dominance(A);
    const auto after = diagonal_dominance(PA);
    CHECK(before.dominant == after.dominant);
    const VectorX<double> permuted = P * before.margins;
    CHECK(permuted.isApprox(after.margins, 1e-12));
  }
}

TEST_CASE("validate rejects malformed systems") {
  LinearSystemd bad{MatrixX<double>(2, 3), VectorX<double>(2)};
  CHECK_THROWS_AS(validate(bad), Error);
  LinearSystemd empty;
  CHECK_THROWS_AS(validate(empty), Error);
  auto nan = sys_of({{1}}, {std::nan("")});
  CHECK_THROWS_AS(validate(nan), Error);
}
