#include <doctest.h>

#include <cmath>

#include "hopfcx/quaternion.hpp"
#include "hopfcx/rng.hpp"

using namespace hopfcx;

namespace {

// Independent oracle: multiplication through the structure-constant table
// for the basis (1, i, j, k), no reuse of qmul.
Quaternion table_mul(const Quaternion& a, const Quaternion& b) {
  // table[p][q] = (sign, index) for e_p e_q
  static const int idx[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  const double ca[4] = {a.w, a.x, a.y, a.z};
  const double cb[4] = {b.w, b.x, b.y, b.z};
  double out[4] = {0, 0, 0, 0};
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q) out[idx[p][q]] += sgn[p][q] * ca[p] * cb[q];
  return {out[0], out[1], out[2], out[3]};
}

Quaternion random_quat(Rng& rng) {
  return {rng.next_gaussian(), rng.next_gaussian(), rng.next_gaussian(), rng.next_gaussian()};
}

double qdist(const Quaternion& a, const Quaternion& b) { return qnorm(a - b); }

}  // namespace

TEST_CASE("qmul basis table") {
  auto I = Quaternion::i(), J = Quaternion::j(), K = Quaternion::k();
  CHECK(qdist(qmul(I, J), K) == 0.0);
  CHECK(qdist(qmul(J, K), I) == 0.0);
  CHECK(qdist(qmul(K, I), J) == 0.0);
  CHECK(qdist(qmul(J, I), -K) == 0.0);
  CHECK(qdist(qmul(I, I), -Quaternion::one()) == 0.0);
}

TEST_CASE("qmul unit times conjugate") {
  double s = 1.0 / std::sqrt(2.0);
  Quaternion a{s, 0, s, 0};   // (1+j)/sqrt(2)
  Quaternion b{s, 0, -s, 0};  // (1-j)/sqrt(2)
  CHECK(qdist(qmul(a, b), Quaternion::one()) < 1e-15);
}

TEST_CASE("conj(j) i j = -i, against the table oracle") {
  auto lhs = qmul(qconj(Quaternion::j()), qmul(Quaternion::i(), Quaternion::j()));
  auto oracle = table_mul(qconj(Quaternion::j()), table_mul(Quaternion::i(), Quaternion::j()));
  CHECK(qdist(lhs, -Quaternion::i()) == 0.0);
  CHECK(qdist(lhs, oracle) == 0.0);
}

TEST_CASE("qmul agrees with the table oracle on random inputs") {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    auto a = random_quat(rng), b = random_quat(rng);
    CHECK(qdist(qmul(a, b), table_mul(a, b)) < 1e-13);
  }
}

TEST_CASE("quaternion algebra laws") {
  Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    auto a = random_quat(rng), b = random_quat(rng), c = random_quat(rng);
    // associativity
    CHECK(qdist(qmul(qmul(a, b), c), qmul(a, qmul(b, c))) < 1e-12);
    // norm multiplicative
    CHECK(qnorm(qmul(a, b)) == doctest::Approx(qnorm(a) * qnorm(b)).epsilon(1e-13));
    // conjugation reverses products
    CHECK(qdist(qconj(qmul(a, b)), qmul(qconj(b), qconj(a))) < 1e-13);
  }
}

TEST_CASE("quaternion vector inner product and actions") {
  Rng rng(13);
  QuaternionVector u(3), v(3);
  for (int a = 0; a < 3; ++a) {
    u[a] = random_quat(rng);
    v[a] = random_quat(rng);
  }
  CHECK(qv_dot(u, v) == doctest::Approx(qv_dot(v, u)));
  CHECK(qv_norm_sq(u) == doctest::Approx(qv_dot(u, u)));
  CHECK(qv_norm_sq(u) > 0.0);

  // left and right multiplications commute as linear maps
  auto q = random_quat(rng);
  auto lr = right_mul(left_mul(Quaternion::i(), u), q);
  auto rl = left_mul(Quaternion::i(), right_mul(u, q));
  for (int a = 0; a < 3; ++a) CHECK(qdist(lr[a], rl[a]) < 1e-14);

  // flat round trip
  auto flat = u.flat();
  auto u2 = QuaternionVector::from_flat(flat);
  for (int a = 0; a < 3; ++a) CHECK(qdist(u[a], u2[a]) == 0.0);
}
