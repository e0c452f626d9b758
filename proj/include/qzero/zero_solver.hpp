#pragma once

// Zeros of a hermitian form on a subspace Z, found on the rational side:
// a small isotropic vector of Q = Tr F on V_Z, a basis of V_Z made of zeros,
// and a right D-basis of Z extracted from it.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include "qzero/bounds.hpp"
#include "qzero/error.hpp"
#include "qzero/exact_height.hpp"
#include "qzero/exact_linalg.hpp"
#include "qzero/heights.hpp"
#include "qzero/log.hpp"
#include "qzero/orders.hpp"
#include "qzero/quaternion.hpp"
#include "qzero/trace_form.hpp"

namespace qzero {

struct SolverConfig {
  long enumeration_cap = 64;
  bool prefer_minimal_first_vector = true;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

/// Basis of {v in span V : B(v, w) = 0 for all w in span V}.
inline RatMatrix radical(const TraceFormQ& q, const RatMatrix& v) {
  if (v.cols() == 0) return v;
  const RatMatrix gram = v.transpose() * q.matrix() * v;
  const RatMatrix k = kernel_basis(gram);
  if (k.cols() == 0) return RatMatrix(v.rows(), 0);
  return v * k;
}

/// True when z^t G z has constant nonzero sign on nonzero z.
inline bool is_definite(const RatMatrix& g) {
  const std::size_t n = g.rows();
  bool pos = true;
  bool neg = true;
  for (std::size_t k = 1; k <= n && (pos || neg); ++k) {
    RatMatrix lead(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) lead(i, j) = g(i, j);
    const Rational d = det(lead);
    if (d <= 0) pos = false;
    const int want = k % 2 == 1 ? -1 : 1;
    if (sgn(d) != want) neg = false;
  }
  return n > 0 && (pos || neg);
}

/// Negates z when its first nonzero entry is negative.
inline IntVector sign_normalize(IntVector z) {
  for (const auto& x : z) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : z) y = -y;
    break;
  }
  return z;
}

/// Order used to pick among zeros: smaller h, then smaller sum of squares,
/// then lexicographically larger.
inline bool zero_preferred(const IntVector& a, const IntVector& b) {
  Integer ha = 1;
  Integer hb = 1;
  Integer sa = 0;
  Integer sb = 0;
  for (const auto& x : a) {
    ha = std::max(ha, abs(x));
    sa += x * x;
  }
  for (const auto& x : b) {
    hb = std::max(hb, abs(x));
    sb += x * x;
  }
  if (ha != hb) return ha < hb;
  if (sa != sb) return sa < sb;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

namespace detail {

inline std::optional<__int128> exact_sqrt(__int128 n) {
  if (n < 0) return std::nullopt;
  auto s = static_cast<__int128>(std::sqrt(static_cast<long double>(n)));
  while (s > 0 && s * s > n) --s;
  while ((s + 1) * (s + 1) <= n) ++s;
  if (s * s != n) return std::nullopt;
  return s;
}

inline std::optional<Integer> exact_sqrt(const Integer& n) { return integer_sqrt_exact(n); }

inline long to_long(__int128 v) { return static_cast<long>(v); }
inline long to_long(const Integer& v) { return v.get_si(); }

/// Enumerates integer coefficient vectors c with sup-norm exactly r and first
/// nonzero entry positive, with c_0 fixed, and reports those with
/// c^t G c = 0. The last coordinate is solved from a quadratic.
template <class T>
class ShellEnumerator {
 public:
  ShellEnumerator(const std::vector<std::vector<T>>& g, long r) : g_(g), k_(g.size()), r_(r), c_(k_, 0) {
    lin_.assign(k_ + 1, std::vector<T>(k_, T(0)));
    q_.assign(k_ + 1, T(0));
  }

  /// Visits every hit for the given first coordinate; `fn` returns false to
  /// stop early.
  template <class Fn>
  void run(long c0, Fn&& fn) {
    fn_ = [&fn](const std::vector<long>& c) { return fn(c); };
    stop_ = false;
    if (k_ == 1) {
      c_[0] = 0;
      solve_last(0, true, false);
      return;
    }
    if (c0 < 0) return;
    place(0, c0);
    descend(1, c0 == 0, c0 == r_);
  }

 private:
  void place(std::size_t d, long v) {
    c_[d] = v;
    const T tv = T(v);
    for (std::size_t j = d; j < k_; ++j) lin_[d + 1][j] = lin_[d][j] + g_[d][j] * tv;
    q_[d + 1] = q_[d] + T(2) * tv * lin_[d][d] + g_[d][d] * tv * tv;
  }

  void descend(std::size_t d, bool leading_zero, bool on_shell) {
    if (stop_) return;
    if (d == k_ - 1) {
      solve_last(d, leading_zero, on_shell);
      return;
    }
    const long from = leading_zero ? 0 : -r_;
    for (long v = from; v <= r_ && !stop_; ++v) {
      place(d, v);
      descend(d + 1, leading_zero && v == 0, on_shell || v == r_ || v == -r_);
    }
  }

  void solve_last(std::size_t d, bool leading_zero, bool on_shell) {
    const T a = g_[d][d];
    const T b = T(2) * lin_[d][d];
    const T q0 = q_[d];
    auto accept = [&](long t) {
      if (t < -r_ || t > r_) return;
      if (leading_zero && t <= 0) return;
      if (!on_shell && t != r_ && t != -r_) return;
      c_[d] = t;
      if (!fn_(c_)) stop_ = true;
    };
    if (a == 0) {
      if (b == 0) {
        if (q0 != 0) return;
        for (long t = -r_; t <= r_ && !stop_; ++t) accept(t);
        return;
      }
      if (q0 % b == 0) {
        const T t = -q0 / b;
        if (t >= -r_ && t <= r_) accept(to_long(t));
      }
      return;
    }
    const T disc = b * b - T(4) * a * q0;
    if (disc < 0) return;
    auto s = exact_sqrt(disc);
    if (!s) return;
    const T den = T(2) * a;
    long roots[2];
    int nroots = 0;
    for (const T& num : {T(-b - *s), T(-b + *s)}) {
      if (num % den != 0) continue;
      const T t = num / den;
      if (t < -r_ || t > r_) continue;
      const long tl = to_long(t);
      if (nroots == 1 && roots[0] == tl) continue;
      roots[nroots++] = tl;
    }
    std::sort(roots, roots + nroots);
    for (int i = 0; i < nroots && !stop_; ++i) accept(roots[i]);
  }

  const std::vector<std::vector<T>>& g_;
  std::size_t k_;
  long r_;
  std::vector<long> c_;
  std::vector<std::vector<T>> lin_;
  std::vector<T> q_;
  std::function<bool(const std::vector<long>&)> fn_;
  bool stop_ = false;
};

struct ShellHit {
  bool found = false;
  IntVector z;
};

/// Searches the shell of radius r, split into tasks by the first coefficient.
template <class T>
ShellHit search_shell(const std::vector<std::vector<T>>& g, const IntMatrix& s, long r, const SolverConfig& cfg) {
  const std::size_t k = g.size();
  const long tasks = k == 1 ? 1 : r + 1;
  std::vector<ShellHit> results(static_cast<std::size_t>(tasks));

  auto to_ambient = [&](const std::vector<long>& c) {
    IntVector z(s.rows(), 0);
    for (std::size_t i = 0; i < s.rows(); ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (c[j] != 0) z[i] += s(i, j) * c[j];
    return sign_normalize(primitive_vector(z));
  };

  auto run_task = [&](long task) {
    ShellEnumerator<T> en(g, r);
    ShellHit& best = results[static_cast<std::size_t>(task)];
    en.run(task, [&](const std::vector<long>& c) {
      IntVector z = to_ambient(c);
      if (!best.found || (cfg.prefer_minimal_first_vector && zero_preferred(z, best.z))) {
        best.found = true;
        best.z = std::move(z);
      }
      return cfg.prefer_minimal_first_vector;
    });
  };

  // The seed only permutes the schedule; the reduction below is order-free.
  std::vector<long> order(static_cast<std::size_t>(tasks));
  std::iota(order.begin(), order.end(), 0L);
  std::mt19937_64 rng(cfg.seed);
  std::shuffle(order.begin(), order.end(), rng);

  const unsigned workers = std::max(1u, std::min<unsigned>(cfg.workers, static_cast<unsigned>(tasks)));
  if (workers == 1) {
    for (long t : order) run_task(t);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < order.size(); i += workers) run_task(order[i]);
      });
    for (auto& th : pool) th.join();
  }

  ShellHit out;
  for (auto& res : results) {
    if (!res.found) continue;
    if (!out.found) {
      out = res;
      if (!cfg.prefer_minimal_first_vector) break;
    } else if (zero_preferred(res.z, out.z)) {
      out = res;
    }
  }
  return out;
}

}  // namespace detail

/// A nonzero primitive z in the lattice span(V) cap Z^{4N} with Q(z) = 0,
/// from the first sup-norm shell (in coefficients of a reduced basis of that
/// lattice) containing one. Throws CapExceeded past cfg.enumeration_cap.
inline IntVector find_isotropic_vector(const TraceFormQ& q, const RatMatrix& v, const SolverConfig& cfg) {
  if (cfg.enumeration_cap < 1) throw Error(ErrorCode::InvalidInput, "enumeration cap must be at least 1");
  if (v.cols() == 0) throw Error(ErrorCode::InvalidInput, "empty subspace");
  if (v.rows() != q.dim()) throw Error(ErrorCode::DimensionMismatch, "basis length vs form dimension");
  const IntMatrix s = saturate(clear_denominators(v).second).basis();
  const RatMatrix sr = to_rational(s);
  const RatMatrix gram_q = sr.transpose() * q.matrix() * sr;
  if (is_definite(gram_q))
    throw Error(ErrorCode::CapExceeded, "form is definite on the subspace; no zero within cap " +
                                            std::to_string(cfg.enumeration_cap));
  const auto [den, gram] = clear_denominators(gram_q);
  const std::size_t k = gram.rows();

  Integer gmax = 1;
  for (const auto& x : gram.entries()) gmax = std::max(gmax, abs(x));

  std::vector<std::vector<__int128>> g128;
  std::vector<std::vector<Integer>> gbig;

  for (long r = 1; r <= cfg.enumeration_cap; ++r) {
    // |disc| <= 8 k^2 gmax^2 r^2; stay well inside 127 bits.
    const Integer bound = Integer(8) * Integer(k * k) * gmax * gmax * Integer(r) * Integer(r);
    const bool wide_ok = mpz_sizeinbase(bound.get_mpz_t(), 2) < 120;
    detail::ShellHit hit;
    if (wide_ok) {
      if (g128.empty()) {
        g128.assign(k, std::vector<__int128>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) g128[i][j] = gram(i, j).get_si();
      }
      hit = detail::search_shell(g128, s, r, cfg);
    } else {
      if (gbig.empty()) {
        gbig.assign(k, std::vector<Integer>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) gbig[i][j] = gram(i, j);
      }
      hit = detail::search_shell(gbig, s, r, cfg);
    }
    log_debug("enumeration radius " + std::to_string(r) + (hit.found ? ": hit" : ": none"));
    if (hit.found) return hit.z;
  }
  throw Error(ErrorCode::CapExceeded, "no zero found within coefficient radius " + std::to_string(cfg.enumeration_cap));
}

/// A basis x_1 = z1, x_2, ..., of span(V) consisting of zeros of Q, as
/// primitive integer vectors.
inline std::vector<IntVector> isotropic_basis(const TraceFormQ& q, const RatMatrix& v, const IntVector& z1) {
  if (radical(q, v).cols() != 0) throw Error(ErrorCode::DegenerateRestriction, "form is degenerate on the subspace");
  const RatVector z = to_rational(z1);
  if (is_zero_vector(z)) throw Error(ErrorCode::ZeroVector, "isotropic vector is zero");
  if (eval_Q(q, z) != 0) throw Error(ErrorCode::InvalidInput, "vector is not isotropic");

  const std::vector<RatVector> cols = v.columns();
  std::optional<RatVector> u;
  Rational bu;
  for (const auto& c : cols) {
    bu = bilinear_B(q, z, c);
    if (bu != 0) {
      u = c;
      break;
    }
  }
  if (!u) throw Error(ErrorCode::NoHyperbolicPartner, "isotropic vector is orthogonal to the subspace");

  const std::size_t n = z.size();
  const Rational qu = eval_Q(q, *u);
  RatVector y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = (*u)[i] / bu - z[i] * qu / (2 * bu * bu);

  std::vector<RatVector> ws;
  RatMatrix acc = RatMatrix::from_columns({z, y}, n);
  for (const auto& c : cols) {
    if (ws.size() + 2 == cols.size()) break;
    const Rational by = bilinear_B(q, c, y);
    const Rational bz = bilinear_B(q, c, z);
    RatVector w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = c[i] - by * z[i] - bz * y[i];
    std::vector<RatVector> trial = acc.columns();
    trial.push_back(w);
    RatMatrix next = RatMatrix::from_columns(trial, n);
    if (rank(next) != trial.size()) continue;
    acc = std::move(next);
    ws.push_back(std::move(w));
  }
  if (ws.size() + 2 != cols.size()) throw Error(ErrorCode::DegenerateRestriction, "could not complete the basis");

  std::vector<IntVector> out;
  out.push_back(primitive_vector(z));
  out.push_back(primitive_vector(y));
  for (const auto& w : ws) {
    const Rational qw = eval_Q(q, w);
    if (qw == 0) {
      out.push_back(primitive_vector(w));
      continue;
    }
    RatVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = w[i] + z[i] - qw / 2 * y[i];
    out.push_back(primitive_vector(x));
  }
  return out;
}

/// Indices l_1 = 0 < l_2 < ... (0-based) of vectors whose images in D^N form
/// a right D-basis; candidates after the first are scanned by (h, index).
inline std::vector<std::size_t> select_D_basis(const std::vector<IntVector>& xs, const AlgebraParams& a,
                                               std::size_t l) {
  if (xs.empty() || l == 0) throw Error(ErrorCode::SelectionFailed, "nothing to select");
  std::vector<std::size_t> rest(xs.size() - 1);
  std::iota(rest.begin(), rest.end(), std::size_t{1});
  std::vector<ExactHeight> hs;
  for (const auto& x : xs) hs.push_back(height_h(x));
  std::stable_sort(rest.begin(), rest.end(), [&](std::size_t p, std::size_t r) { return hs[p] < hs[r]; });

  std::vector<std::size_t> chosen{0};
  std::vector<QuatVector> vecs{coord_unmap(xs[0])};
  if (d_rank(vecs, a) != 1) throw Error(ErrorCode::SelectionFailed, "first vector is zero");
  for (std::size_t idx : rest) {
    if (chosen.size() == l) break;
    vecs.push_back(coord_unmap(xs[idx]));
    if (d_rank(vecs, a) == vecs.size()) {
      chosen.push_back(idx);
    } else {
      vecs.pop_back();
    }
  }
  if (chosen.size() != l) throw Error(ErrorCode::SelectionFailed, "vectors do not span a space of dimension L");
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

struct ZeroBasisCertificate {
  HermitianForm form;
  SubspaceD subspace;
  Order order;

  RatMatrix trace_matrix;
  RatMatrix v_basis;
  std::vector<IntVector> xs{};
  std::vector<std::size_t> selected{};  // 0-based
  std::vector<QuatVector> ys{};

  std::vector<ExactHeight> h_y{};
  ExactHeight H_O_Z{};
  ExactHeight Hinf_F{};
  ExactHeight H_Q{};
  ExactHeight H_VZ{};

  BoundValue a_k{};
  TheoremBounds rhs{};
  Verdict verdict1 = Verdict::Likely;  // h(y_1) <= rhs1
  Verdict verdict2 = Verdict::Likely;  // h(y_1) h(y_n) <= rhs2 for every n

  VaalerBounds vaaler{};
  Verdict vaaler_verdict1 = Verdict::Likely;  // informational
  Verdict vaaler_verdict2 = Verdict::Likely;  // informational

  bool zeros_verified = false;
  bool rank_verified = false;
};

/// The worse of two verdicts.
inline Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::Violated || b == Verdict::Violated) return Verdict::Violated;
  if (a == Verdict::Likely || b == Verdict::Likely) return Verdict::Likely;
  return Verdict::Certified;
}

/// Recomputes and checks every derived field of a certificate from its
/// inputs and its claimed vectors ys.
inline void evaluate_certificate(ZeroBasisCertificate& c) {
  const AlgebraParams& a = c.order.algebra();
  const std::size_t l = c.subspace.dim();
  const std::size_t n = c.subspace.ambient_n();

  c.zeros_verified = !c.ys.empty();
  for (const auto& y : c.ys) {
    if (y.size() != n || eval_hermitian(c.form, y, a) != 0) c.zeros_verified = false;
  }
  bool inside = c.ys.size() == l;
  if (inside) {
    std::vector<QuatVector> all = c.subspace.basis_vectors();
    const std::size_t base = d_rank(all, a);
    for (const auto& y : c.ys) all.push_back(y);
    inside = d_rank(all, a) == base;
  }
  c.rank_verified = inside && d_rank(c.ys, a) == l;

  c.h_y.clear();
  for (const auto& y : c.ys) c.h_y.push_back(h_D(y, a));
  c.H_O_Z = height_subspace_D(c.order, c.subspace);
  c.Hinf_F = Hinf_D(flatten(c.form), a);
  c.H_Q = height_H(c.trace_matrix.entries());
  c.H_VZ = height_subspace_K(c.v_basis);

  const int li = static_cast<int>(l);
  c.a_k = A_K(static_cast<int>(n), li, a, c.order);
  c.rhs = theorem_bounds(c.a_k, li, c.Hinf_F, c.H_O_Z);
  if (c.ys.empty()) {
    c.verdict1 = c.verdict2 = Verdict::Violated;
  } else {
    c.verdict1 = certify_leq(c.h_y.front(), c.rhs.rhs1);
    c.verdict2 = Verdict::Certified;
    for (const auto& h : c.h_y) c.verdict2 = combine(c.verdict2, certify_leq(c.h_y.front() * h, c.rhs.rhs2));
  }

  c.vaaler = vaaler_bounds(li, static_cast<int>(n), c.H_Q, c.H_VZ);
  if (!c.xs.empty()) {
    const ExactHeight hx1 = height_H(to_rational(c.xs.front()));
    c.vaaler_verdict1 = certify_leq(hx1, c.vaaler.b1);
    c.vaaler_verdict2 = Verdict::Certified;
    for (const auto& x : c.xs)
      c.vaaler_verdict2 = combine(c.vaaler_verdict2, certify_leq(hx1 * height_H(to_rational(x)), c.vaaler.b2));
  }
}

/// Overall verdict: both inequalities and the exact checks.
inline Verdict overall(const ZeroBasisCertificate& c) {
  if (!c.zeros_verified || !c.rank_verified) return Verdict::Violated;
  return combine(c.verdict1, c.verdict2);
}

inline ZeroBasisCertificate solve(const HermitianForm& f, const SubspaceD& z, const Order& o, const SolverConfig& cfg) {
  const AlgebraParams& a = o.algebra();
  if (z.ambient_n() != f.n()) throw Error(ErrorCode::DimensionMismatch, "subspace and form dimensions differ");
  if (z.dim() == 0) throw Error(ErrorCode::InvalidInput, "subspace is zero");
  const TraceFormQ q = build_trace_matrix(f, a);
  const RatMatrix v = subspace_image(z, a);
  const RatMatrix rad = radical(q, v);
  if (rad.cols() != 0)
    throw Error(ErrorCode::DegenerateRestriction,
                "trace form is degenerate on V_Z (radical dimension " + std::to_string(rad.cols()) + ")");
  log_info("searching for an isotropic vector in dimension " + std::to_string(v.cols()));
  const IntVector z1 = find_isotropic_vector(q, v, cfg);
  std::vector<IntVector> xs = isotropic_basis(q, v, z1);
  const std::vector<std::size_t> sel = select_D_basis(xs, a, z.dim());

  ZeroBasisCertificate c{.form = f, .subspace = z, .order = o, .trace_matrix = q.matrix(), .v_basis = v, .xs = std::move(xs), .selected = sel};
  for (std::size_t idx : sel) c.ys.push_back(coord_unmap(c.xs[idx]));
  evaluate_certificate(c);
  return c;
}

}  // namespace qzero
