#include <gtest/gtest.h>

#include "qzero/orders.hpp"

using namespace qzero;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidInput;
}

// Gram determinant of the trace pairing, straight from the definition.
Rational trace_gram_det(const std::array<Quat, 4>& b, const AlgebraParams& a) {
  RatMatrix g(4, 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) g(r, c) = q_trace(quat_mul(b[r], b[c], a));
  return det(g);
}

}  // namespace

TEST(Orders, StandardOrderDiscriminantGrid) {
  for (long al : {-1, -2, -3, -5}) {
    for (long be : {-1, -2, -3, -5}) {
      const AlgebraParams a(al, be);
      const Order o = Order::standard(a);
      EXPECT_EQ(discriminant(o), Integer(-16 * al * al * be * be));
      EXPECT_EQ(Rational(discriminant(o)), trace_gram_det(o.basis(), a));
      EXPECT_TRUE(integer_sqrt_exact(abs(discriminant(o))).has_value());
      EXPECT_EQ(frakM(o), ExactHeight(1));
    }
  }
}

TEST(Orders, HurwitzInvariants) {
  const AlgebraParams a(-1, -1);
  const Order hu = Order::hurwitz(a);
  EXPECT_EQ(discriminant(hu), -4);
  EXPECT_EQ(Rational(discriminant(hu)), trace_gram_det(hu.basis(), a));
  EXPECT_EQ(frakM(hu), ExactHeight(2));
  EXPECT_TRUE(hu.contains(Quat{Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)}));
  EXPECT_FALSE(hu.contains(Quat{Rational(1, 2), Rational(1, 2), 0, 0}));
}

TEST(Orders, OrderComparisonConstant) {
  const AlgebraParams a(-1, -1);
  const Order od = Order::standard(a);
  EXPECT_EQ(compare_orders(od, od).m_value, ExactHeight(1));
  EXPECT_EQ(compare_orders(od, Order::hurwitz(a)).m_value, ExactHeight(2));
  EXPECT_EQ(compare_orders(Order::hurwitz(a), od).m_value, ExactHeight(2));
}

TEST(Orders, ValidationErrors) {
  const AlgebraParams a(-1, -1);
  EXPECT_EQ(code_of([&] { Order::make(a, {Quat(1), Quat{0, Rational(1, 2), 0, 0}, Quat::j(), Quat::k()}); }),
            ErrorCode::NotClosed);
  EXPECT_EQ(code_of([&] { Order::make(a, {Quat(2), Quat::i(), Quat::j(), Quat::k()}); }), ErrorCode::MissingUnit);
  EXPECT_EQ(code_of([&] { Order::make(a, {Quat(1), Quat::i(), Quat::i(), Quat::k()}); }), ErrorCode::Degenerate);
}

TEST(Orders, NormIdealConstant) {
  const AlgebraParams a(-1, -1);
  const Order o = Order::make(a, {Quat(1), Quat{0, 2, 0, 0}, Quat{0, 0, 2, 0}, Quat{0, 0, 0, 2}});
  EXPECT_EQ(frakN(o), 2);
  EXPECT_EQ(frakN(Order::standard(a)), 1);
}

TEST(Orders, RescaleIntoOrder) {
  const AlgebraParams a(-1, -1);
  const Order od = Order::standard(a);
  EXPECT_EQ(rescale_to_order({QuatVector{Quat(Rational(1, 3)), Quat::i()}}, od), 3);
  EXPECT_EQ(clearing_integer({QuatVector{Quat{Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)}}},
                             Order::hurwitz(a)),
            1);
}
