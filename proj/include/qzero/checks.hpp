#pragma once

// Random instance generators and exact checks of the height comparison
// inequalities, shared by the CLI self-test and the test suites.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qzero/bounds.hpp"
#include "qzero/error.hpp"
#include "qzero/exact_height.hpp"
#include "qzero/exact_linalg.hpp"
#include "qzero/heights.hpp"
#include "qzero/orders.hpp"
#include "qzero/quaternion.hpp"
#include "qzero/trace_form.hpp"

namespace qzero {

// ---------------------------------------------------------------------------
// Generators

class InstanceRng {
 public:
  explicit InstanceRng(std::uint64_t seed) : eng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng_); }
  bool coin() { return integer(0, 1) == 1; }

  /// p/q with |p| <= bound, 1 <= q <= bound.
  Rational rational(long bound) {
    Rational r(integer(-bound, bound), integer(1, bound));
    r.canonicalize();
    return r;
  }

  Rational nonzero_rational(long bound) {
    Rational r;
    do r = rational(bound);
    while (r == 0);
    return r;
  }

  Quat quat(long bound) { return {rational(bound), rational(bound), rational(bound), rational(bound)}; }

  Quat integral_quat(long bound) {
    return {Rational(integer(-bound, bound)), Rational(integer(-bound, bound)), Rational(integer(-bound, bound)),
            Rational(integer(-bound, bound))};
  }

  Quat nonzero_quat(long bound) {
    Quat q;
    do q = quat(bound);
    while (q.is_zero());
    return q;
  }

  /// Integer combination of the order basis.
  Quat order_element(const Order& o, long bound) {
    Quat q;
    for (const auto& w : o.basis()) q += Rational(integer(-bound, bound)) * w;
    return q;
  }

  QuatVector order_vector(const Order& o, std::size_t n, long bound) {
    QuatVector v;
    do {
      v.clear();
      for (std::size_t l = 0; l < n; ++l) v.push_back(order_element(o, bound));
    } while (std::all_of(v.begin(), v.end(), [](const Quat& q) { return q.is_zero(); }));
    return v;
  }

  QuatMatrix quat_matrix(std::size_t rows, std::size_t cols, long bound) {
    QuatMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = quat(bound);
    return m;
  }

  /// A random right D-subspace of dimension l given by a basis.
  SubspaceD subspace(std::size_t n, std::size_t l, const AlgebraParams& a, long bound) {
    while (true) {
      QuatMatrix x = quat_matrix(n, l, bound);
      if (d_rank(x.columns(), a) == l) return SubspaceD::from_basis(x, a);
    }
  }

  /// A random constraint matrix of full left row rank.
  QuatMatrix constraint(std::size_t rows, std::size_t n, const AlgebraParams& a, long bound) {
    while (true) {
      QuatMatrix c = quat_matrix(rows, n, bound);
      if (rows == 0 || reduced_norm(quat_matmul(c, adjoint(c), a), a) != 0) return c;
    }
  }

  /// Nonzero hermitian matrix with rational scalar diagonal and quaternion
  /// entries above it.
  HermitianForm hermitian(std::size_t n, long bound, bool integral) {
    while (true) {
      QuatMatrix m(n, n);
      bool nonzero = false;
      for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = integral ? Quat(Rational(integer(-bound, bound))) : Quat(rational(bound));
        nonzero = nonzero || !m(i, i).is_zero();
        for (std::size_t j = i + 1; j < n; ++j) {
          m(i, j) = integral ? integral_quat(bound) : quat(bound);
          m(j, i) = conj(m(i, j));
          nonzero = nonzero || !m(i, j).is_zero();
        }
      }
      if (nonzero) return HermitianForm(m);
    }
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

/// An integral hermitian form on D^n with nondegenerate trace form and
/// F(p, p) = 0 for a planted p whose coordinates lie in {-1, 0, 1}.
struct PlantedForm {
  HermitianForm form;
  QuatVector zero;
};

inline PlantedForm planted_zero_form(InstanceRng& rng, std::size_t n, const AlgebraParams& a) {
  while (true) {
    HermitianForm f = rng.hermitian(n, 1, true);
    QuatVector p(n);
    for (auto& q : p) q = rng.integral_quat(1);
    if (p[0].is_zero()) continue;
    const Rational r = eval_hermitian(f, p, a);
    const Rational np = q_norm(p[0], a);
    QuatMatrix m = f.matrix();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = np * m(i, j);
    m(0, 0) = m(0, 0) - Quat(r);
    HermitianForm g(m);
    if (eval_hermitian(g, p, a) != 0) continue;
    if (det(build_trace_matrix(g, a).matrix()) == 0) continue;
    return {g, p};
  }
}

/// The form [[0, i + n j], [-i - n j, 0]] over (-1, -1).
inline HermitianForm twisted_hyperbolic_form(long n) {
  const Quat f12(0, 1, n, 0);
  return HermitianForm(QuatMatrix{{Quat(0), f12}, {conj(f12), Quat(0)}});
}

/// Sum of n/2 hyperbolic planes, with a unit square appended when n is odd.
inline HermitianForm hyperbolic_form(std::size_t n) {
  QuatMatrix m(n, n);
  for (std::size_t i = 0; i + 1 < n; i += 2) {
    m(i, i + 1) = Quat(1);
    m(i + 1, i) = Quat(1);
  }
  if (n % 2 == 1) m(n - 1, n - 1) = Quat(1);
  return HermitianForm(m);
}

// ---------------------------------------------------------------------------
// Checks

struct CheckResult {
  std::string name;
  bool ok = false;
  std::string detail;
};

/// t H([x]) <= Hinf(x) <= h(x) <= 2 s h([x]) for x in O^N. The first
/// inequality is proved place by place at infinity and so needs [x] to be
/// integral; for other x the archimedean part of H([x]) is used instead.
inline CheckResult check_vector_heights(const Order& o, const QuatVector& x) {
  const AlgebraParams& a = o.algebra();
  if (!o.contains(x)) throw Error(ErrorCode::CoordinateNotInOrder, "vector not in O^N");
  const auto [s, t] = s_t_constants(a);
  const RatVector flat = coord_map(x);
  const bool integral = std::all_of(flat.begin(), flat.end(), [](const Rational& q) { return is_integer(q); });
  const ExactHeight hx_k = integral ? height_H(flat) : height_inf_K(flat);
  const ExactHeight lhs = t * hx_k;
  const ExactHeight hinf = Hinf_D(x, a);
  const ExactHeight hx = h_D(x, a);
  const ExactHeight rhs = ExactHeight(2) * s * height_h(flat);
  const bool ok = lhs <= hinf && hinf <= hx && hx <= rhs;
  return {integral ? "height comparison on O^N" : "height comparison on O^N (archimedean lower bound)", ok,
          lhs.to_string() + " <= " + hinf.to_string() + " <= " + hx.to_string() + " <= " + rhs.to_string()};
}

/// Both comparisons between the heights of F and of its trace form. The
/// lower one is checked on a F with a clearing O-entries and B-entries.
inline CheckResult check_form_heights(const HermitianForm& f, const Order& o) {
  const AlgebraParams& a = o.algebra();
  const auto [s, t] = s_t_constants(a);
  const TraceFormQ q = build_trace_matrix(f, a);
  const ExactHeight hq = height_H(q.matrix().entries());

  const Integer clear_f = clearing_integer({flatten(f)}, o);
  const Integer clear_b = common_denominator(q.matrix().entries());
  const Integer scale = lcm(clear_f, clear_b);
  QuatMatrix scaled = f.matrix();
  for (std::size_t i = 0; i < f.n(); ++i)
    for (std::size_t j = 0; j < f.n(); ++j) scaled(i, j) = Rational(scale) * scaled(i, j);
  const ExactHeight hinf = Hinf_D(flatten(HermitianForm(scaled)), a);
  const ExactHeight lower = t / (ExactHeight(2) * s * s) * hq;

  const ExactHeight ho = H_O_vector(o, flatten(f));
  const ExactHeight upper = ExactHeight(Rational(4 * abs(Integer(a.alpha() * a.beta())) * frakN(o))) * s * hq;
  const bool ok = lower <= hinf && ho <= upper;
  return {"form height vs trace form height", ok,
          lower.to_string() + " <= " + hinf.to_string() + "; " + ho.to_string() + " <= " + upper.to_string()};
}

/// M^-(N-L) H^O1(Z) <= H^O2(Z) <= M^(N-L) H^O1(Z) with M the given constant.
inline CheckResult check_order_sandwich(const std::string& name, const SubspaceD& z, const Order& o1, const Order& o2,
                                        const ExactHeight& m) {
  const unsigned e = static_cast<unsigned>(z.ambient_n() - z.dim());
  const ExactHeight h1 = height_subspace_D(o1, z);
  const ExactHeight h2 = height_subspace_D(o2, z);
  const ExactHeight me = m.pow_int(e);
  const bool ok = h1 / me <= h2 && h2 <= me * h1;
  return {name, ok, "H1 = " + h1.to_string() + ", H2 = " + h2.to_string() + ", M^(N-L) = " + me.to_string()};
}

inline CheckResult check_two_orders(const SubspaceD& z, const Order& o1, const Order& o2) {
  return check_order_sandwich("two-order comparison", z, o1, o2, compare_orders(o1, o2).m_value);
}

inline CheckResult check_against_od(const SubspaceD& z, const Order& o) {
  return check_order_sandwich("comparison with O_D", z, o, Order::standard(o.algebra()), frakM(o));
}

/// H(V_Z) = H^{O_D}(Z)^4. With H(V_Z) taken in euclidean coordinates this
/// holds when the norm form is the sum of squares, that is alpha = beta = -1.
inline CheckResult check_image_height(const SubspaceD& z, const AlgebraParams& a) {
  const ExactHeight hv = height_subspace_K(subspace_image(z, a));
  const ExactHeight hz4 = height_subspace_D(Order::standard(a), z).pow_int(4);
  return {"image height equals fourth power", hv == hz4, hv.to_string() + " vs " + hz4.to_string()};
}

/// Covolume of V_Z cap Z^{4N} measured with the norm form on each D
/// coordinate, relative to the covolume of O_D^L.
inline ExactHeight norm_metric_image_height(const SubspaceD& z, const AlgebraParams& a) {
  if (z.dim() == 0) return ExactHeight(1);
  const IntMatrix s = saturate(clear_denominators(subspace_image(z, a)).second).basis();
  const RatMatrix sr = to_rational(s);
  const Rational al(a.alpha());
  const Rational be(a.beta());
  const std::array<Rational, 4> weights{Rational(1), -al, -be, al * be};
  RatMatrix gs = sr;
  for (std::size_t i = 0; i < gs.rows(); ++i)
    for (std::size_t j = 0; j < gs.cols(); ++j) gs(i, j) *= weights[i % 4];
  const Rational gram_det = det(RatMatrix(sr.transpose() * gs));
  const Rational od = pow(Rational(al * be * al * be), z.dim());
  return ExactHeight(Rational(gram_det / od), 2);
}

/// The identity behind H(V_Z) = H^{O_D}(Z)^4, valid for every (alpha, beta):
/// the norm-metric height of V_Z equals H^{O_D}(Z)^4.
inline CheckResult check_image_covolume(const SubspaceD& z, const AlgebraParams& a) {
  const ExactHeight hv = norm_metric_image_height(z, a);
  const ExactHeight hz4 = height_subspace_D(Order::standard(a), z).pow_int(4);
  return {"norm-metric image height equals fourth power", hv == hz4, hv.to_string() + " vs " + hz4.to_string()};
}

inline CheckResult check_duality(const SubspaceD& z, const Order& o) {
  const SubspaceD zp = orthogonal_complement(z, o.algebra());
  const ExactHeight h = height_subspace_D(o, z);
  const ExactHeight hp = height_subspace_D(o, zp);
  return {"duality", h == hp, h.to_string() + " vs " + hp.to_string()};
}

inline CheckResult check_cauchy_binet(const QuatMatrix& c, const AlgebraParams& a) {
  const auto both = Hinf_matrix_both(c, a);
  return {"Cauchy-Binet", both.via_product == both.via_minors,
          both.via_product.to_string() + " vs " + both.via_minors.to_string()};
}

/// Finite heights of the twisted hyperbolic form over the Hurwitz order.
struct TwistedReport {
  long n = 0;
  Rational index;          // [O : O(i + n j)]
  ExactHeight hfin_o_f;    // computed from the index
  ExactHeight hfin_b;      // finite height of B over K
  bool closed_forms_ok = false;
};

inline TwistedReport twisted_form_report(long n) {
  const AlgebraParams a(-1, -1);
  const Order o = Order::hurwitz(a);
  const HermitianForm f = twisted_hyperbolic_form(n);
  const TraceFormQ q = build_trace_matrix(f, a);
  std::vector<QuatVector> gens;
  for (const auto& x : flatten(f)) {
    if (x.is_zero()) continue;
    for (const auto& w : o.basis()) gens.push_back({quat_mul(w, x, a)});
  }
  TwistedReport r;
  r.n = n;
  r.index = order_lattice_index(o, gens, 1);
  r.hfin_o_f = Hfin_O(o, flatten(f));
  r.hfin_b = height_fin_K(q.matrix().entries());
  const Rational one_n2(1 + n * n);
  r.closed_forms_ok = r.index == one_n2 * one_n2 && r.hfin_o_f == ExactHeight(Rational(1 / one_n2), 2) &&
                      r.hfin_b == ExactHeight(Rational(1, 2));
  return r;
}

/// Every comparison that applies to one instance.
inline std::vector<CheckResult> check_instance(const HermitianForm& f, const SubspaceD& z, const Order& o,
                                               const std::optional<QuatVector>& x) {
  const AlgebraParams& a = o.algebra();
  const bool unit_squares = a.alpha() == -1 && a.beta() == -1;
  std::vector<CheckResult> out;
  if (x) {
    const Integer c = clearing_integer({*x}, o);
    QuatVector cx(x->size());
    for (std::size_t l = 0; l < x->size(); ++l) cx[l] = Rational(c) * (*x)[l];
    out.push_back(check_vector_heights(o, cx));
  }
  for (const auto& y : z.basis_vectors()) {
    const Integer c = clearing_integer({y}, o);
    QuatVector cy(y.size());
    for (std::size_t l = 0; l < y.size(); ++l) cy[l] = Rational(c) * y[l];
    out.push_back(check_vector_heights(o, cy));
  }
  out.push_back(check_form_heights(f, o));
  out.push_back(check_against_od(z, o));
  if (unit_squares) {
    out.push_back(check_two_orders(z, Order::standard(a), Order::hurwitz(a)));
    out.push_back(check_image_height(z, a));
  }
  out.push_back(check_image_covolume(z, a));
  out.push_back(check_duality(z, o));
  if (z.dim() < z.ambient_n()) out.push_back(check_cauchy_binet(constraint_for(z, a), a));
  return out;
}

struct SelfTestReport {
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::vector<CheckResult> failures;

  void add(const CheckResult& r) {
    if (r.ok) {
      ++passed;
    } else {
      ++failed;
      failures.push_back(r);
    }
  }
};

/// Randomized exact checks of every height comparison, duality, Cauchy-Binet
/// and the twisted form identities.
inline SelfTestReport run_selftest(std::uint64_t seed, std::size_t iters) {
  InstanceRng rng(seed);
  SelfTestReport rep;
  const AlgebraParams h(-1, -1);
  const Order od = Order::standard(h);
  const Order hu = Order::hurwitz(h);
  for (long n = 1; n <= 10; ++n) {
    const TwistedReport t = twisted_form_report(n);
    rep.add({"twisted form n=" + std::to_string(n), t.closed_forms_ok, t.hfin_o_f.to_string()});
  }
  const std::vector<std::pair<long, long>> params{{-1, -1}, {-1, -2}, {-2, -3}, {-3, -5}};
  for (std::size_t it = 0; it < iters; ++it) {
    const auto [al, be] = params[it % params.size()];
    const AlgebraParams a(al, be);
    const Order o = (al == -1 && be == -1 && rng.coin()) ? hu : Order::standard(a);
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 3));
    const std::size_t l = static_cast<std::size_t>(rng.integer(1, static_cast<long>(n)));
    rep.add(check_vector_heights(o, rng.order_vector(o, n, 3)));
    rep.add(check_form_heights(rng.hermitian(n, 5, false), o));
    const SubspaceD z = rng.subspace(n, l, a, 5);
    if (al == -1 && be == -1) rep.add(check_image_height(z, a));
    rep.add(check_image_covolume(z, a));
    rep.add(check_duality(z, o));
    rep.add(check_against_od(z, o));
    if (al == -1 && be == -1) rep.add(check_two_orders(z, od, hu));
    if (l < n) rep.add(check_cauchy_binet(rng.constraint(n - l, n, a, 5), a));
  }
  return rep;
}

}  // namespace qzero
