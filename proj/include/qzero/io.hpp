#pragma once

// JSON instance files and certificates. Rationals are strings ("-3/2"),
// quaternions are 4-element coordinate arrays over 1, i, j, k.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qzero/bounds.hpp"
#include "qzero/error.hpp"
#include "qzero/exact_height.hpp"
#include "qzero/heights.hpp"
#include "qzero/orders.hpp"
#include "qzero/quaternion.hpp"
#include "qzero/zero_solver.hpp"

namespace qzero {

using Json = nlohmann::ordered_json;

inline constexpr const char* kCertificateFormat = "qzero-certificate/1";

// ---------------------------------------------------------------------------
// Scalars

inline Rational parse_rational(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw Error(ErrorCode::InvalidInput, "expected a rational string, got " + j.dump());
  const std::string s = j.get<std::string>();
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0)
    throw Error(ErrorCode::InvalidInput, "malformed rational \"" + s + "\"");
  r.canonicalize();
  return r;
}

inline Integer parse_integer(const Json& j) {
  const Rational r = parse_rational(j);
  if (!is_integer(r)) throw Error(ErrorCode::InvalidInput, "expected an integer, got " + r.get_str());
  return r.get_num();
}

inline Json to_json(const Rational& q) { return q.get_str(); }
inline Json to_json(const Integer& z) { return z.get_str(); }

inline Quat parse_quat(const Json& j) {
  if (!j.is_array() || j.size() != 4) throw Error(ErrorCode::InvalidInput, "quaternion must be 4 coordinates: " + j.dump());
  return {parse_rational(j[0]), parse_rational(j[1]), parse_rational(j[2]), parse_rational(j[3])};
}

inline Json to_json(const Quat& q) { return Json::array({to_json(q.c[0]), to_json(q.c[1]), to_json(q.c[2]), to_json(q.c[3])}); }

inline QuatVector parse_quat_vector(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidInput, "expected a list of quaternions");
  QuatVector v;
  for (const auto& e : j) v.push_back(parse_quat(e));
  return v;
}

inline Json to_json(const QuatVector& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_json(q));
  return out;
}

template <class T>
Json vector_json(const std::vector<T>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

template <class T>
Json matrix_json(const Matrix<T>& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vector_json(m.row(i)));
  return out;
}

inline RatMatrix parse_rat_matrix(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidInput, "expected a matrix");
  std::vector<RatVector> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw Error(ErrorCode::InvalidInput, "expected a matrix row");
    RatVector row;
    for (const auto& e : r) row.push_back(parse_rational(e));
    rows.push_back(std::move(row));
  }
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  return RatMatrix::from_columns(rows, cols).transpose();
}

inline Json to_json(const ExactHeight& h) {
  return Json{{"base", h.base().get_str()}, {"root", h.root()}, {"decimal", h.decimal()}};
}

inline ExactHeight parse_height(const Json& j) {
  return ExactHeight(parse_rational(j.at("base")), j.at("root").get<unsigned>());
}

inline Json to_json(const BoundValue& b) { return Json{{"lo", b.lo}, {"hi", b.hi}}; }

// ---------------------------------------------------------------------------
// Instances

struct Instance {
  AlgebraParams algebra{-1, -1};
  std::optional<Order> order;  // default O_D
  HermitianForm form{QuatMatrix(1, 1)};
  std::optional<SubspaceD> subspace;  // default D^n
  std::optional<QuatVector> vector;

  Order resolved_order() const { return order ? *order : Order::standard(algebra); }
  SubspaceD resolved_subspace() const { return subspace ? *subspace : SubspaceD::full(form.n()); }
};

inline Order parse_order(const Json& j, const AlgebraParams& a) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "standard" || name == "od") return Order::standard(a);
    if (name == "hurwitz") {
      if (!(a.alpha() == -1 && a.beta() == -1)) throw Error(ErrorCode::InvalidInput, "Hurwitz order needs alpha = beta = -1");
      return Order::hurwitz(a);
    }
    throw Error(ErrorCode::InvalidInput, "unknown order name \"" + name + "\"");
  }
  const Json& basis = j.contains("basis") ? j.at("basis") : j;
  if (!basis.is_array() || basis.size() != 4) throw Error(ErrorCode::InvalidInput, "order basis must list 4 quaternions");
  return Order::make(a, {parse_quat(basis[0]), parse_quat(basis[1]), parse_quat(basis[2]), parse_quat(basis[3])});
}

inline Json order_json(const Order& o) {
  Json basis = Json::array();
  for (const auto& w : o.basis()) basis.push_back(to_json(w));
  return Json{{"basis", basis}};
}

inline Instance parse_instance(const Json& j) {
  try {
    Instance in;
    const Json& alg = j.at("algebra");
    in.algebra = AlgebraParams(parse_integer(alg.at("alpha")), parse_integer(alg.at("beta")));
    if (j.contains("order") && !j.at("order").is_null()) in.order = parse_order(j.at("order"), in.algebra);

    const Json& form = j.at("form");
    const std::size_t n = form.at("n").get<std::size_t>();
    if (n == 0) throw Error(ErrorCode::InvalidInput, "form dimension must be positive");
    const Json& entries = form.at("entries");
    if (!entries.is_array() || entries.size() != n) throw Error(ErrorCode::DimensionMismatch, "form must have n rows");
    QuatMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      if (!entries[r].is_array() || entries[r].size() != n) throw Error(ErrorCode::DimensionMismatch, "form row length");
      for (std::size_t c = 0; c < n; ++c) m(r, c) = parse_quat(entries[r][c]);
    }
    in.form = HermitianForm(m);

    if (j.contains("subspace") && !j.at("subspace").is_null()) {
      const Json& sub = j.at("subspace");
      if (sub.contains("constraint_rows")) {
        std::vector<QuatVector> rows;
        for (const auto& row : sub.at("constraint_rows")) {
          rows.push_back(parse_quat_vector(row));
          if (rows.back().size() != n) throw Error(ErrorCode::DimensionMismatch, "constraint row length");
        }
        QuatMatrix c = QuatMatrix::from_columns(rows, n).transpose();
        in.subspace = SubspaceD::from_constraint(c, in.algebra);
      } else if (sub.contains("basis_cols")) {
        std::vector<QuatVector> cols;
        for (const auto& col : sub.at("basis_cols")) {
          cols.push_back(parse_quat_vector(col));
          if (cols.back().size() != n) throw Error(ErrorCode::DimensionMismatch, "subspace column length");
        }
        if (cols.empty()) throw Error(ErrorCode::InvalidInput, "subspace basis is empty");
        in.subspace = SubspaceD::from_columns(cols, n, in.algebra);
      } else {
        throw Error(ErrorCode::InvalidInput, "subspace needs basis_cols or constraint_rows");
      }
    }
    if (j.contains("vector") && !j.at("vector").is_null()) {
      in.vector = parse_quat_vector(j.at("vector"));
      if (in.vector->size() != n) throw Error(ErrorCode::DimensionMismatch, "vector length");
    }
    return in;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("instance structure: ") + e.what());
  }
}

inline Json instance_json(const Instance& in) {
  Json j;
  j["algebra"] = Json{{"alpha", in.algebra.alpha().get_str()}, {"beta", in.algebra.beta().get_str()}};
  j["order"] = order_json(in.resolved_order());
  Json rows = Json::array();
  for (std::size_t r = 0; r < in.form.n(); ++r) rows.push_back(vector_json(in.form.matrix().row(r)));
  j["form"] = Json{{"n", in.form.n()}, {"entries", rows}};
  const SubspaceD z = in.resolved_subspace();
  Json cols = Json::array();
  for (const auto& c : z.basis_vectors()) cols.push_back(to_json(c));
  j["subspace"] = Json{{"basis_cols", cols}};
  if (z.constraint()) {
    Json crow = Json::array();
    for (std::size_t r = 0; r < z.constraint()->rows(); ++r) crow.push_back(vector_json(z.constraint()->row(r)));
    j["subspace"]["constraint_rows"] = crow;
  }
  if (in.vector) j["vector"] = to_json(*in.vector);
  return j;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  try {
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, "malformed JSON in " + path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Certificates

inline Json certificate_json(const ZeroBasisCertificate& c, const Instance& in, const SolverConfig& cfg) {
  Json j;
  j["format"] = kCertificateFormat;
  Instance echo = in;
  echo.order = c.order;
  echo.subspace = c.subspace;
  j["instance"] = instance_json(echo);
  j["config"] = Json{{"cap", cfg.enumeration_cap}, {"seed", cfg.seed}, {"prefer_minimal_first_vector", cfg.prefer_minimal_first_vector}};
  j["trace_matrix"] = matrix_json(c.trace_matrix);
  j["v_basis"] = matrix_json(c.v_basis.transpose());
  Json xs = Json::array();
  for (const auto& x : c.xs) xs.push_back(vector_json(x));
  j["isotropic_basis"] = xs;
  Json sel = Json::array();
  for (auto s : c.selected) sel.push_back(s + 1);
  j["selected_indices"] = sel;
  Json ys = Json::array();
  for (const auto& y : c.ys) ys.push_back(to_json(y));
  j["zero_basis"] = ys;
  j["heights"] = Json{{"h_y", vector_json(c.h_y)},
                      {"H_O_Z", to_json(c.H_O_Z)},
                      {"Hinf_F", to_json(c.Hinf_F)},
                      {"H_Q", to_json(c.H_Q)},
                      {"H_VZ", to_json(c.H_VZ)}};
  j["bounds"] = Json{{"A_K", to_json(c.a_k)},
                     {"rhs1", to_json(c.rhs.rhs1)},
                     {"rhs2", to_json(c.rhs.rhs2)},
                     {"vaaler_b1", to_json(c.vaaler.b1)},
                     {"vaaler_b2", to_json(c.vaaler.b2)}};
  j["verdicts"] = Json{{"zeros_exact", c.zeros_verified},
                       {"rank_exact", c.rank_verified},
                       {"bound1", to_string(c.verdict1)},
                       {"bound2", to_string(c.verdict2)},
                       {"vaaler1_informational", to_string(c.vaaler_verdict1)},
                       {"vaaler2_informational", to_string(c.vaaler_verdict2)},
                       {"overall", to_string(overall(c))}};
  return j;
}

struct VerifyReport {
  bool consistent = false;
  std::vector<std::string> mismatches;
  Verdict overall = Verdict::Violated;
  Json recomputed;
};

/// Rebuilds a certificate from its instance and claimed vectors, recomputes
/// every derived value, and compares with what the file states.
inline VerifyReport verify_certificate(const Json& j) {
  VerifyReport rep;
  if (!j.contains("format") || j.at("format") != kCertificateFormat)
    throw Error(ErrorCode::InvalidInput, "not a certificate file");
  try {
    const Instance in = parse_instance(j.at("instance"));
    const Order o = in.resolved_order();
    const SubspaceD z = in.resolved_subspace();
    const AlgebraParams& a = o.algebra();
    const TraceFormQ q = build_trace_matrix(in.form, a);

    ZeroBasisCertificate c{.form = in.form, .subspace = z, .order = o, .trace_matrix = q.matrix(),
                           .v_basis = subspace_image(z, a)};
    for (const auto& x : j.at("isotropic_basis")) {
      IntVector v;
      for (const auto& e : x) v.push_back(parse_integer(e));
      if (v.size() != q.dim()) throw Error(ErrorCode::DimensionMismatch, "isotropic vector length");
      if (eval_Q(q, to_rational(v)) != 0) rep.mismatches.push_back("isotropic_basis vector is not a zero of Q");
      c.xs.push_back(std::move(v));
    }
    if (!c.xs.empty() && rank(RatMatrix::from_columns([&] {
                                std::vector<RatVector> cols;
                                for (const auto& x : c.xs) cols.push_back(to_rational(x));
                                return cols;
                              }(), q.dim())) != c.v_basis.cols())
      rep.mismatches.push_back("isotropic_basis does not span V_Z");
    for (const auto& s : j.at("selected_indices")) {
      const std::size_t idx = s.get<std::size_t>();
      if (idx == 0 || idx > c.xs.size()) throw Error(ErrorCode::InvalidInput, "selected index out of range");
      c.selected.push_back(idx - 1);
    }
    if (!c.selected.empty() && c.selected.front() != 0) rep.mismatches.push_back("first selected index is not 1");
    for (const auto& y : j.at("zero_basis")) c.ys.push_back(parse_quat_vector(y));
    if (c.ys.size() != c.selected.size()) rep.mismatches.push_back("zero_basis and selected_indices differ in length");
    for (std::size_t n = 0; n < std::min(c.ys.size(), c.selected.size()); ++n)
      if (!(c.ys[n] == coord_unmap(c.xs[c.selected[n]]))) rep.mismatches.push_back("zero_basis entry differs from its isotropic vector");
    evaluate_certificate(c);

    SolverConfig cfg;
    const Json& jc = j.at("config");
    cfg.enumeration_cap = jc.at("cap").get<long>();
    cfg.seed = jc.at("seed").get<std::uint64_t>();
    cfg.prefer_minimal_first_vector = jc.at("prefer_minimal_first_vector").get<bool>();
    rep.recomputed = certificate_json(c, in, cfg);
    for (const char* key : {"trace_matrix", "v_basis", "heights", "bounds", "verdicts"})
      if (rep.recomputed.at(key) != j.at(key)) rep.mismatches.push_back(std::string("recomputed ") + key + " differs");
    rep.overall = overall(c);
    rep.consistent = rep.mismatches.empty();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("certificate structure: ") + e.what());
  }
  return rep;
}

}  // namespace qzero
