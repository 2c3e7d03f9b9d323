#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cyops/n_integral.hpp"
#include "cyops/normal_form.hpp"
#include "cyops/pade.hpp"
#include "cyops/sym_power.hpp"

namespace cyops {

struct PropertyP {
  bool pass = false;
  std::optional<RatFunc> alpha;
  std::string reason;
};

struct PropertyM {
  bool pass = false;
  std::optional<long> r;
  Poly indicial;  ///< monic indicial polynomial at 0
};

struct NIntegralProperty {
  bool pass = false;
  NIntegralWitness witness;
};

struct CYVerdict {
  long order = 0;
  PropertyP property_P;
  PropertyM property_M;
  NIntegralProperty property_N;  ///< on f_0
  NIntegralProperty property_Q;  ///< on q/z
  bool property_S = false;
  std::vector<NIntegralProperty> structure;  ///< one per alpha_i
  /// order 1 only: all exponents in (1/2)Z, so the solution is algebraic of degree <= 2
  std::optional<bool> order_one_algebraic;
  std::string irreducibility = "not checked";
  std::size_t depth = 0;
  unsigned long prime_bound = 0;
  bool overall = false;
};

namespace detail {

inline NIntegralProperty n_property(const Series& f, unsigned long prime_bound, std::size_t depth) {
  NIntegralProperty p;
  p.witness = n_integral_witness(f, prime_bound, depth);
  p.pass = p.witness.N.has_value();
  return p;
}

/// Exponents at every candidate singular point lie in (1/2)Z.
inline bool half_integral_exponents(const ThetaOperator& L) {
  SingularPoints sp = singular_points(L);
  if (sp.residual.degree() > 0) return false;
  for (const auto& p : sp.points) {
    IndicialData ind;
    try {
      ind = indicial(L, p);
    } catch (const Error&) {
      return false;
    }
    if (!ind.all_rational()) return false;
    for (const auto& e : ind.exponents())
      if (!is_integer(e * 2)) return false;
  }
  return true;
}

}  // namespace detail

/// Runs the five property checks. Failures are recorded, never thrown.
inline CYVerdict check_cy_type(const ThetaOperator& L, std::size_t truncation = 50, unsigned long prime_bound = 1000000,
                               std::size_t depth = 200) {
  CYVerdict v;
  v.order = L.order();
  v.depth = depth;
  v.prime_bound = prime_bound;

  SelfDualSearch sd = find_self_dual_witness(to_d_form(L));
  v.property_P.pass = sd.alpha.has_value();
  v.property_P.alpha = sd.alpha;
  v.property_P.reason = sd.reason;

  try {
    v.property_M.indicial = indicial(L, Point::at(0)).polynomial;
  } catch (const Error&) {
  }
  v.property_M.r = mum_exponent(L);
  v.property_M.pass = v.property_M.r.has_value();

  if (v.property_M.pass) {
    const std::size_t len = std::max(truncation, depth) + 1;
    Flag flag = mum_flag(L, len);
    std::vector<Series> F = flag_series(flag);
    v.property_N = detail::n_property(F[0], prime_bound, depth);
    if (v.order >= 2) {
      Series q = q_coordinate(F);
      v.property_Q = detail::n_property(q.shifted(-1), prime_bound, depth);
      v.property_S = true;
      for (const auto& a : structure_series(F)) {
        v.structure.push_back(detail::n_property(a, prime_bound, depth));
        v.property_S = v.property_S && v.structure.back().pass;
      }
    } else {
      // no special coordinate or structure series in order 1
      v.property_Q.pass = true;
      v.property_S = true;
    }
  }
  if (v.order == 1) v.order_one_algebraic = detail::half_integral_exponents(L);

  v.overall = v.property_P.pass && v.property_M.pass && v.property_N.pass && v.property_Q.pass && v.property_S &&
              (v.order != 1 || *v.order_one_algebraic);
  return v;
}

/// Re-checks every pass from the stored witnesses alone.
inline bool reverify(const ThetaOperator& L, const CYVerdict& v) {
  if (v.property_P.pass && !verify_self_dual(to_d_form(L).monic(), *v.property_P.alpha)) return false;
  if (v.property_M.pass) {
    const Poly expected = Poly::linear(Rational(*v.property_M.r)).pow(static_cast<unsigned>(L.order()));
    if (!(indicial(L, Point::at(0)).polynomial == expected)) return false;
  }
  if (!v.property_M.pass) return true;
  Flag flag = mum_flag(L, v.depth + 1);
  std::vector<Series> F = flag_series(flag);
  if (v.property_N.pass && !verify_n_integral(F[0], *v.property_N.witness.N, v.depth)) return false;
  if (v.order >= 2) {
    if (v.property_Q.pass && !verify_n_integral(q_coordinate(F).shifted(-1), *v.property_Q.witness.N, v.depth))
      return false;
    auto alpha = structure_series(F);
    for (std::size_t i = 0; i < v.structure.size(); ++i)
      if (v.structure[i].pass && !verify_n_integral(alpha[i], *v.structure[i].witness.N, v.depth)) return false;
  }
  return true;
}

/// u with twist(A, u) = B (both taken monic), if one exists.
inline std::optional<RatFunc> equal_up_to_twist(const DOperator& A, const DOperator& B) {
  const DOperator a = A.monic(), b = B.monic();
  if (a.order() != b.order() || a.order() < 1) return std::nullopt;
  const std::size_t k = static_cast<std::size_t>(a.order());
  const RatFunc u = (a[k - 1] - b[k - 1]) / RatFunc(static_cast<long>(k));
  if (twist(a, u) == b) return u;
  return std::nullopt;
}

struct SymRoot {
  DOperator P;    ///< monic order 2
  RatFunc twist;  ///< twist(Sym^n P, twist) = L
};

namespace detail {

inline bool all_one(const std::vector<Series>& ys) {
  for (const auto& y : ys)
    if (!y.agrees_with(Series::one(static_cast<std::size_t>(y.precision())))) return false;
  return true;
}

inline RatFunc pade_with_retry(const Series& f, int bound) {
  try {
    return pade_reconstruct(f, bound, bound);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoRationalFit && e.kind() != ErrorKind::InvalidArgument) throw;
  }
  return pade_reconstruct(f, 2 * bound, 2 * bound);
}

}  // namespace detail

/// Order-2 P with Sym^n(P) equal to L up to an exactly verified twist, built
/// from w_0 = f_0^(1/n) and w_1 = w_0 (ln z + f_1/f_0).
inline SymRoot reconstruct_sym_root(const ThetaOperator& L, std::size_t truncation = 50) {
  const long N = L.order();
  if (N < 2) throw Error(ErrorKind::OrderTooSmall, "symmetric root needs order at least 2");
  const DOperator D = to_d_form(L).monic();
  if (N == 2) return {D, RatFunc(0)};
  const unsigned n = static_cast<unsigned>(N - 1);
  // coefficient degrees of L bound those of P; the series must be long enough for Pade
  long deg = 0;
  for (const auto& c : D.coeffs()) deg = std::max({deg, c.num().degree(), c.den().degree()});
  const int bound = static_cast<int>(2 * deg + 4);
  const std::size_t len = std::max<std::size_t>(truncation, static_cast<std::size_t>(4 * bound + 8));

  Flag flag = mum_flag(L, len + 2);
  std::vector<Series> F = flag_series(flag);
  if (N >= 4) {
    NormalFormData d = normal_form(F);
    if (!detail::all_one(d.y_invariants)) throw Error(ErrorKind::NotSymPower, "some Y-invariant differs from 1");
  }
  const Series w0 = nth_root_unit(F[0], n);
  const Series g = F[1] * invert_unit(F[0]);
  // W = w0^2 (w1/w0)' = w0^2 (1/z + g')
  const Series dg = g.derivative();
  const Series W = w0 * w0 * (Series::one(dg.order()).shifted(-1) + dg);
  const Series b1 = -(W.derivative() * invert_unit(W.shifted(1)).shifted(1));
  const Series dw0 = w0.derivative();
  const Series b2 = -((dw0.derivative() + b1 * dw0) * invert_unit(w0));
  const RatFunc B1 = detail::pade_with_retry(b1, bound);
  const RatFunc B2 = detail::pade_with_retry(b2, bound);
  DOperator P({B2, B1, RatFunc(1)});
  const DOperator S = sym_power_order2(P, n);
  auto u = equal_up_to_twist(S, D);
  if (!u) throw Error(ErrorKind::NotSymPower, "Sym^n of the reconstructed operator differs from L beyond a twist");
  return {P, *u};
}

struct Order7Relations {
  RatFunc twist;  ///< u with a_6 of twist(L, u) zero
  std::vector<RatFunc> a;  ///< a_0..a_6 of the normalized operator
  /// consequences of L = L^v once a_6 = 0:
  /// a_4 = 5/2 a_5', a_2 = 3/2 a_3' - 5/2 a_5''', a_0 = 1/2 a_1' - 1/4 a_3''' + 1/2 a_5^(5)
  bool a4 = false, a2 = false, a0 = false;
  bool a3 = false;  ///< a_3 = 3 a_5'' + a_5^2/4
  bool a1 = false;  ///< a_1 relation, which with a_3 gives Y_1 = Y_2 = 1
  bool p_relations() const { return a4 && a2 && a0; }
};

inline Order7Relations order7_relations(const DOperator& L) {
  const DOperator m = L.monic();
  if (m.order() != 7) throw Error(ErrorKind::InvalidArgument, "order-7 relations need an order-7 operator");
  Order7Relations out;
  out.twist = m[6] / RatFunc(7);
  // g with g'/g = a_6/7 need only be algebraic: simple poles with rational residues
  LogDerivativeSolution g = solve_log_derivative(out.twist);
  long covered = 0;
  for (const auto& [res, factor] : g.residues) covered += factor.degree();
  if (!g.alpha && (!g.nonintegral_residue || covered != out.twist.den().degree()))
    throw Error(ErrorKind::CannotNormalize, "a_6/7 is not the log-derivative of an algebraic function");
  const DOperator R = twist(m, out.twist);
  for (std::size_t i = 0; i <= 6; ++i) out.a.push_back(R[i]);
  const auto& a = out.a;
  auto q = [](long p, long d) { return RatFunc(make_rational(p, d)); };
  out.a4 = a[4] == q(5, 2) * a[5].derivative();
  out.a2 = a[2] == q(-5, 2) * a[5].derivative(3) + q(3, 2) * a[3].derivative();
  out.a0 = a[0] == q(1, 2) * a[1].derivative() - q(1, 4) * a[3].derivative(3) + q(1, 2) * a[5].derivative(5);
  out.a3 = a[3] == RatFunc(3) * a[5].derivative(2) + q(1, 4) * a[5] * a[5];
  out.a1 = a[1] == q(5, 7) * a[5].derivative(4) + q(22, 49) * a[5].derivative(2) * a[5] +
                       q(295, 784) * a[5].derivative() * a[5].derivative() + q(9, 686) * a[5] * a[5] * a[5];
  return out;
}

inline Order7Relations order7_relations(const ThetaOperator& L) { return order7_relations(to_d_form(L)); }

enum class GaloisClass { OrderOneAlgebraic, SL2Proven, SL2Criterion, G2Candidate, FullAmbientHeuristic, Undetermined };

struct Evidence {
  std::string criterion;
  std::string result;
};

struct GaloisVerdict {
  long order = 0;
  std::string ambient;  ///< Sp_{n+1} for even order, SO_{n+1} for odd order
  GaloisClass classification = GaloisClass::Undetermined;
  std::optional<SymRoot> root;  ///< set for SL2-proven
  std::optional<std::size_t> sym_square_order;
  std::vector<Evidence> evidence;

  std::string label() const {
    switch (classification) {
      case GaloisClass::OrderOneAlgebraic: return "order-1 algebraic";
      case GaloisClass::SL2Proven: return "SL2-proven";
      case GaloisClass::SL2Criterion: return "SL2-criterion";
      case GaloisClass::G2Candidate: return "G2-candidate";
      case GaloisClass::FullAmbientHeuristic: return ambient + "-heuristic";
      case GaloisClass::Undetermined: return "undetermined";
    }
    return "undetermined";
  }
};

/// Tiered classification; only SL2-proven rests on an exact identity.
inline GaloisVerdict galois_classify(const ThetaOperator& L, std::size_t truncation = 50) {
  GaloisVerdict v;
  v.order = L.order();
  const long N = v.order;
  v.ambient = (N % 2 == 0 ? "Sp" : "SO") + std::to_string(N);
  if (N == 1) {
    const bool alg = detail::half_integral_exponents(L);
    v.evidence.push_back({"exponents in (1/2)Z at all singular points", alg ? "yes" : "no"});
    v.classification = alg ? GaloisClass::OrderOneAlgebraic : GaloisClass::Undetermined;
    return v;
  }
  std::vector<Series> Y;
  if (N >= 4) {
    Y = normal_form(L, truncation).y_invariants;
    for (std::size_t i = 0; i < Y.size(); ++i)
      v.evidence.push_back({"Y_" + std::to_string(i + 1) + " = 1",
                            detail::all_one({Y[i]}) ? "yes" : "no"});
  }
  const bool y1 = Y.size() >= 1 && detail::all_one({Y[0]});
  const bool y2 = Y.size() >= 2 && detail::all_one({Y[1]});
  const bool criterion = N <= 3 || (N % 2 == 0 && y1) || (N % 2 == 1 && N > 5 && y2);
  if (criterion && detail::all_one(Y)) {
    try {
      v.root = reconstruct_sym_root(L, truncation);
      v.evidence.push_back({"symmetric root", "Sym^" + std::to_string(N - 1) + "(" + v.root->P.to_string() + ")"});
      v.classification = GaloisClass::SL2Proven;
      return v;
    } catch (const Error& e) {
      v.evidence.push_back({"symmetric root", e.what()});
    }
  }
  if (N == 7 && y2 && !y1) {
    try {
      auto rel = order7_relations(L);
      v.evidence.push_back({"order-7 (P)-relations", rel.p_relations() ? "hold" : "fail"});
      v.evidence.push_back({"a_3 relation", rel.a3 ? "holds" : "fails"});
      v.evidence.push_back({"a_1 relation", rel.a1 ? "holds" : "fails"});
    } catch (const Error& e) {
      v.evidence.push_back({"order-7 relations", e.what()});
    }
    v.classification = GaloisClass::G2Candidate;
    return v;
  }
  if (criterion && N != 7) {
    v.classification = GaloisClass::SL2Criterion;
    return v;
  }
  if (N == 4) {
    v.sym_square_order = sym_square_order(L, truncation);
    v.evidence.push_back({"order of Sym^2", std::to_string(*v.sym_square_order)});
    bool conifold = false;
    for (const auto& p : singular_points(L).points) {
      if (p.infinity || p.value == 0) continue;
      try {
        for (const auto& c : local_structure(L, p).classes)
          for (int b : c.block_sizes)
            if (b == 2) conifold = true;
      } catch (const Error&) {
      }
    }
    v.evidence.push_back({"Jordan block of size 2 at a finite singularity", conifold ? "yes" : "no"});
    if (*v.sym_square_order == 10 || conifold) {
      v.classification = GaloisClass::FullAmbientHeuristic;
      return v;
    }
  }
  v.classification = GaloisClass::Undetermined;
  return v;
}

}  // namespace cyops
