// Copyright 2026 The syndrome-lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "synlab/planner.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "synlab/ball.hpp"

namespace synlab {
namespace {

namespace mp = boost::multiprecision;
using Real100 = mp::cpp_dec_float_100;
using Real200 = mp::number<mp::cpp_dec_float<200>>;
using Real400 = mp::number<mp::cpp_dec_float<400>>;
using Rational = mp::cpp_rational;

Rational rat(const Ratio& r) { return Rational(BigInt(r.num), BigInt(r.den)); }

template <class T>
T real(const Rational& x) {
  return T(mp::numerator(x)) / T(mp::denominator(x));
}

template <class T>
T real(const Ratio& r) {
  return T(r.num) / T(r.den);
}

BigInt floor_q(const Rational& x) {
  const BigInt n = mp::numerator(x), d = mp::denominator(x);
  BigInt f = n / d;
  if (n < 0 && f * d != n) f -= 1;
  return f;
}

BigInt ceil_q(const Rational& x) { return -floor_q(-x); }

template <class T>
T log2_t(const T& x) {
  return log(x) / log(T(2));
}

[[noreturn]] void inadmissible(const std::string& what) {
  throw Error(ErrorCode::kAdmissibilityViolation, "violated: " + what);
}

template <class T>
struct RoundedT {
  BigInt value;
  T unrounded;
  bool exact = false;
  T margin;
};

template <class T>
T dist_to_int(const T& x) {
  T f = x - floor(x);
  return f < T(1) - f ? f : T(1) - f;
}

template <class T>
RoundedT<T> ceil_real(const T& x) {
  return {ceil(x).template convert_to<BigInt>(), x, false, dist_to_int(x)};
}

template <class T>
RoundedT<T> floor_real(const T& x) {
  return {floor(x).template convert_to<BigInt>(), x, false, dist_to_int(x)};
}

template <class T>
RoundedT<T> ceil_exact(const Rational& x) {
  Rational frac = x - Rational(floor_q(x));
  Rational m = frac < Rational(1) - frac ? frac : Rational(1) - frac;
  return {ceil_q(x), real<T>(x), true, real<T>(m)};
}

template <class T>
RoundedT<T> floor_exact(const Rational& x) {
  RoundedT<T> r = ceil_exact<T>(x);
  r.value = floor_q(x);
  return r;
}

Rational rat_pow(const Rational& base, std::uint64_t e) {
  return Rational(big_pow(mp::numerator(base), e), big_pow(mp::denominator(base), e));
}

template <class T>
struct Core {
  T a, b, delta, exponent, dist_exponent;
  RoundedT<T> iterations;
  RoundedT<T> threshold;
  std::optional<RoundedT<T>> q_entropy, q_simple, d_n;
  std::optional<std::size_t> r, e, eplus;
};

template <class T>
Core<T> compute(const PlanInputs& in) {
  const Rational one(1);
  const Rational R = rat(in.rate), eps = rat(in.eps), rho = rat(in.rho);
  const bool two = in.mode == RadiusMode::kTwoRadius;
  if (in.rate.den == 0 || in.eps.den == 0 || in.rho.den == 0) inadmissible("denominators > 0");
  if (!(R > 0 && R < one)) inadmissible("0 < R < 1");
  if (!(eps > 0)) inadmissible("0 < eps");
  if (!(eps < (one - R) / 2)) inadmissible("eps < (1-R)/2");
  if (!(rho > 0)) inadmissible("0 < rho");
  if (in.degree == 0) inadmissible("degree >= 1");

  Core<T> c;
  const T tR = real<T>(R), te = real<T>(eps), trho = real<T>(rho);
  const T lg = log2_t(T(1) / te);
  c.a = te / lg;
  c.b = te / (T(1) + lg);
  if (two) {
    c.delta = T(1) - tR - c.a;
    if (!(trho < T(1) - tR - te - c.a)) inadmissible("rho < 1 - R - eps - a_eps");
  } else {
    c.delta = real<T>(one - R - eps);
    if (!(rho < one - R - eps)) inadmissible("rho < 1 - R - eps");
    if (!in.n) inadmissible("one-radius plans need n");
  }

  const std::size_t deg = in.degree;
  BigInt it;
  if (in.kind == PlanKind::kLine || (in.kind == PlanKind::kSpace && !two)) {
    it = ceil_q(2 * (one - R) / eps) - 1;
  } else {
    it = ceil_q(Rational(deg + 1) * (one - R) / eps) - deg - (two ? 2 : 1);
  }
  c.iterations = ceil_exact<T>(Rational(it));
  const std::uint64_t itn = it.convert_to<std::uint64_t>();
  const std::uint64_t factor = in.kind == PlanKind::kCurve ? deg : 1;

  if (in.n) {
    const std::size_t n = *in.n;
    c.e = floor_q(rho * n).convert_to<std::size_t>();
    c.eplus = two ? *c.e + ceil_q(eps * n).convert_to<std::size_t>() : *c.e;
    c.r = ceil_q((one - R) * n).convert_to<std::size_t>();
    if (two)
      c.d_n = floor_real(c.delta * T(n));
    else
      c.d_n = floor_exact<T>((one - R - eps) * n);
  }

  if (two) {
    T base = (T(1) + trho / te) * pow(c.delta / (c.delta - trho), T(itn)) * T(factor);
    c.threshold = ceil_real(base);
  } else {
    const BigInt d = c.d_n->value, e(*c.e);
    if (!(d > e)) inadmissible("d_n > E (n too small)");
    Rational v = Rational(factor) * Rational(e + 1) * rat_pow(Rational(d, d - e), itn);
    c.threshold = floor_exact<T>(v);
  }

  // (2/eps)^(1/eps) and the coarser (2/eps)^(2/eps).
  auto alphabet = [&](std::uint64_t mult) {
    Rational ex = Rational(mult) / eps;
    if (mp::denominator(ex) == 1)
      return ceil_exact<T>(rat_pow(Rational(2) / eps, ex.convert_to<std::uint64_t>()));
    return ceil_real(pow(T(2) / te, real<T>(ex)));
  };
  const bool uses_entropy = two || in.kind == PlanKind::kLine;
  if (uses_entropy) c.q_entropy = alphabet(1);
  if (two) c.q_simple = alphabet(2);

  const T slack = trho + (two ? c.b : T(0)) - (T(1) - tR);
  const T itt(itn);
  if (in.kind == PlanKind::kLine || (in.kind == PlanKind::kSpace && !two))
    c.exponent = T(2) * (T(1) - tR) + (itt + 3) * slack;
  else
    c.exponent = T(deg + 1) * (T(1) - tR) + (T(deg) + itt + 2) * slack;
  c.dist_exponent = two ? c.delta + c.b - (T(1) - tR) : -te;
  return c;
}

template <class T>
std::string digits30(const T& x) {
  std::ostringstream os;
  os << std::setprecision(30) << x;
  return os.str();
}

// Integer part must leave at least this many guard digits.
constexpr int kGuardDigits = 15;

template <class T>
bool resolvable(const RoundedT<T>& r, int digits) {
  return r.exact || abs(r.unrounded) < pow(T(10), digits - kGuardDigits);
}

template <class Lo, class Hi>
Rounded finish(const RoundedT<Lo>& lo, const RoundedT<Hi>& hi, int digits) {
  Rounded r;
  r.value = lo.value;
  r.unrounded = digits30(lo.unrounded);
  r.exact = lo.exact;
  r.margin = lo.margin.template convert_to<double>();
  r.near_boundary = !lo.exact && lo.margin < Lo(kBoundaryTolerance);
  r.stable = lo.value == hi.value;
  r.digits = digits;
  return r;
}

Real log_big(const BigInt& x) {
  // Shift very large values into range before converting.
  const std::size_t bits = mp::msb(x) + 1;
  if (bits <= 150) return log(Real(x));
  const std::size_t shift = bits - 150;
  BigInt top = x >> shift;
  return log(Real(top)) + Real(shift) * log(Real(2));
}

}  // namespace

Real binary_entropy(const Real& x) {
  if (x < 0 || x > 1) throw Error(ErrorCode::kDomainError, "H_2 outside [0,1]");
  if (x == 0 || x == 1) return Real(0);
  return -(x * log2_t(x)) - (Real(1) - x) * log2_t(Real(1) - x);
}

Real entropy_q(const Real& x, std::uint32_t q) {
  if (q < 2) throw Error(ErrorCode::kDomainError, "q < 2");
  const Real top = Real(1) - Real(1) / Real(q);
  // Allow the maximiser 1 - 1/q up to rounding of the caller's value.
  if (!(x > 0) || x > top + Real("1e-45"))
    throw Error(ErrorCode::kDomainError, "entropy argument outside (0, 1-1/q]");
  const Real lq = log(Real(q));
  Real h = x * log(Real(q - 1)) / lq - x * log(x) / lq;
  if (x < 1) h -= (Real(1) - x) * log(Real(1) - x) / lq;
  return h;
}

Real entropy_q(const Ratio& x, std::uint32_t q) {
  if (x.den == 0) throw Error(ErrorCode::kDomainError, "zero denominator");
  if (static_cast<unsigned __int128>(x.num) * q >
      static_cast<unsigned __int128>(x.den) * (q - 1))
    throw Error(ErrorCode::kDomainError, "entropy argument outside (0, 1-1/q]");
  return entropy_q(real<Real>(x), q);
}

Real a_eps(const Ratio& eps) {
  const Real e = real<Real>(eps);
  return e / log2_t(Real(1) / e);
}

Real b_eps(const Ratio& eps) {
  const Real e = real<Real>(eps);
  return e / (Real(1) + log2_t(Real(1) / e));
}

EntropyCheck entropy_bound_check(const Ratio& x, std::uint32_t q,
                                 std::optional<Ratio> eps) {
  EntropyCheck c;
  const Real xr = real<Real>(x), tol("1e-40");
  c.hq = entropy_q(x, q);
  const Real h2 = binary_entropy(xr), l2q = log2_t(Real(q));
  c.identity_rhs = xr + (h2 + xr * log2_t(Real(1) - Real(1) / Real(q))) / l2q;
  c.h2_bound = xr + h2 / l2q;
  c.identity_ok = abs(c.hq - c.identity_rhs) < tol;
  c.h2_bound_ok = c.hq <= c.h2_bound + tol;
  if (eps) {
    const Real e = real<Real>(*eps);
    if (Real(q) >= pow(Real(2) / e, Real(1) / e)) {
      c.eps_bound = xr + b_eps(*eps);
      c.eps_bound_ok = c.hq <= xr + b_eps(*eps) * h2 + tol && c.hq <= *c.eps_bound + tol;
    }
  }
  return c;
}

BGamma bexp_gamma(std::size_t e, std::size_t eplus, std::size_t d) {
  if (!(0 < e && e <= eplus && eplus < d))
    throw Error(ErrorCode::kDomainError, "need 0 < E <= E+ < d");
  BGamma g;
  g.b = (eplus + 1) / (eplus - e + 1);
  g.gamma = Ratio{d - e, d};
  if (std::uint64_t k = std::gcd(g.gamma.num, g.gamma.den); k > 1) {
    g.gamma.num /= k;
    g.gamma.den /= k;
  }
  return g;
}

std::string plan_kind_name(PlanKind k) {
  switch (k) {
    case PlanKind::kLine: return "line";
    case PlanKind::kSpace: return "space";
    case PlanKind::kCurve: return "curve";
  }
  return "?";
}

std::string radius_mode_name(RadiusMode m) {
  return m == RadiusMode::kTwoRadius ? "two-radius" : "one-radius";
}

Plan make_plan(const PlanInputs& in) {
  const Core<Real> c50 = compute<Real>(in);
  const Core<Real100> c100 = compute<Real100>(in);
  std::optional<Core<Real200>> c200;
  std::optional<Core<Real400>> c400;
  // Picks the lowest precision that resolves the integer part, checked
  // against twice that precision.
  auto pick = [&](auto get) -> std::optional<Rounded> {
    const auto& a = get(c50);
    if (!a) return std::nullopt;
    if (resolvable(*a, 50)) return finish(*a, *get(c100), 50);
    if (!c200) c200 = compute<Real200>(in);
    if (resolvable(*get(c100), 100)) return finish(*get(c100), *get(*c200), 100);
    if (!c400) c400 = compute<Real400>(in);
    Rounded r = finish(*get(*c200), *get(*c400), 200);
    r.stable = r.stable && resolvable(*get(*c200), 200);
    return r;
  };
  Plan p;
  p.inputs = in;
  p.a_eps = c50.a;
  p.b_eps = c50.b;
  p.delta = c50.delta;
  p.iterations = *pick([](const auto& c) { return std::optional(c.iterations); });
  p.threshold = *pick([](const auto& c) { return std::optional(c.threshold); });
  p.q_entropy = pick([](const auto& c) { return c.q_entropy; });
  p.q_simple = pick([](const auto& c) { return c.q_simple; });
  p.d_n = pick([](const auto& c) { return c.d_n; });
  p.q_min = p.threshold.value + (in.mode == RadiusMode::kTwoRadius ? 1 : 2);
  if (p.q_entropy && p.q_entropy->value > p.q_min) p.q_min = p.q_entropy->value;
  p.r = c50.r;
  p.e = c50.e;
  p.eplus = c50.eplus;
  p.exponent = c50.exponent;
  p.distance_exponent = c50.dist_exponent;
  p.stable = p.iterations.stable && p.threshold.stable &&
             (!p.q_entropy || p.q_entropy->stable) && (!p.q_simple || p.q_simple->stable) &&
             (!p.d_n || p.d_n->stable);
  return p;
}

namespace {

nlohmann::json rounded_json(const Rounded& r) {
  return {{"value", r.value.str()},
          {"unrounded", r.unrounded},
          {"exact", r.exact},
          {"margin", r.margin},
          {"near_boundary", r.near_boundary},
          {"stable", r.stable},
          {"digits", r.digits}};
}

const char* iteration_name(const PlanInputs& in) {
  return in.kind == PlanKind::kLine ||
                 (in.kind == PlanKind::kSpace && in.mode == RadiusMode::kOneRadius)
             ? "l"
             : "lambda";
}

const char* threshold_name(const PlanInputs& in) {
  return in.mode == RadiusMode::kTwoRadius && in.kind != PlanKind::kLine ? "tau" : "K";
}

}  // namespace

nlohmann::json plan_to_json(const Plan& p) {
  nlohmann::json j;
  j["kind"] = plan_kind_name(p.inputs.kind);
  j["mode"] = radius_mode_name(p.inputs.mode);
  j["degree"] = p.inputs.degree;
  j["R"] = p.inputs.rate.to_string();
  j["eps"] = p.inputs.eps.to_string();
  j["rho"] = p.inputs.rho.to_string();
  j["n"] = p.inputs.n ? nlohmann::json(*p.inputs.n) : nlohmann::json();
  j["a_eps"] = digits30(p.a_eps);
  j["b_eps"] = digits30(p.b_eps);
  j["delta"] = digits30(p.delta);
  j[iteration_name(p.inputs)] = rounded_json(p.iterations);
  j[threshold_name(p.inputs)] = rounded_json(p.threshold);
  if (p.q_entropy) j["q_entropy"] = rounded_json(*p.q_entropy);
  if (p.q_simple) j["q_simple"] = rounded_json(*p.q_simple);
  j["q_min"] = p.q_min.str();
  if (p.r) j["r"] = *p.r;
  if (p.e) j["E"] = *p.e;
  if (p.eplus) j["E_plus"] = *p.eplus;
  if (p.d_n) j["d_n"] = rounded_json(*p.d_n);
  j["exponent"] = digits30(p.exponent);
  j["exponent_negative"] = p.exponent_negative();
  j["distance_exponent"] = digits30(p.distance_exponent);
  j["stable"] = p.stable;
  return j;
}

std::string plan_to_text(const Plan& p) {
  std::ostringstream os;
  auto row = [&](const std::string& k, const std::string& v) {
    os << std::left << std::setw(20) << k << v << "\n";
  };
  auto rounded = [&](const std::string& k, const Rounded& r) {
    std::string v = r.value.str() + "  (" + r.unrounded + (r.exact ? ", exact" : "") + ")";
    if (r.near_boundary) v += "  NEAR INTEGER BOUNDARY";
    if (!r.stable) v += "  UNSTABLE";
    row(k, v);
  };
  row("kind", plan_kind_name(p.inputs.kind) + " " + radius_mode_name(p.inputs.mode));
  if (p.inputs.kind != PlanKind::kLine) row("degree", std::to_string(p.inputs.degree));
  row("R", p.inputs.rate.to_string());
  row("eps", p.inputs.eps.to_string());
  row("rho", p.inputs.rho.to_string());
  row("a_eps", digits30(p.a_eps));
  row("b_eps", digits30(p.b_eps));
  row("delta", digits30(p.delta));
  rounded(iteration_name(p.inputs), p.iterations);
  rounded(threshold_name(p.inputs), p.threshold);
  if (p.q_entropy) rounded("(2/eps)^(1/eps)", *p.q_entropy);
  if (p.q_simple) rounded("(2/eps)^(2/eps)", *p.q_simple);
  row("q_min", p.q_min.str());
  if (p.inputs.n) {
    row("n", std::to_string(*p.inputs.n));
    row("r", std::to_string(*p.r));
    row("E", std::to_string(*p.e));
    row("E+", std::to_string(*p.eplus));
    rounded("d_n", *p.d_n);
  }
  row("exponent", digits30(p.exponent) + (p.exponent_negative() ? "  < 0" : "  NOT NEGATIVE"));
  row("distance exponent", digits30(p.distance_exponent));
  row("stable", p.stable ? "yes" : "no");
  return os.str();
}

AuditReport run_exponent_audit(PlanKind kind, RadiusMode mode,
                               const AuditGrid& grid) {
  AuditReport rep;
  const bool two = mode == RadiusMode::kTwoRadius;
  std::vector<std::size_t> degrees = grid.degrees;
  if (kind == PlanKind::kLine || (kind == PlanKind::kSpace && !two)) degrees = {1};
  for (const Ratio& rate : grid.rates) {
    for (const Ratio& eps : grid.epsilons) {
      if (!(rat(eps) < (Rational(1) - rat(rate)) / 2)) {
        ++rep.skipped;
        continue;
      }
      const Real top = Real(1) - real<Real>(rate) - real<Real>(eps) -
                       (two ? a_eps(eps) : Real(0));
      if (!(top > 0)) {
        ++rep.skipped;
        continue;
      }
      for (std::size_t deg : degrees) {
        for (std::size_t i = 1; i <= grid.rho_steps; ++i) {
          const std::uint64_t den = 1'000'000'000;
          Real v = top * Real(den) * Real(i) / Real(grid.rho_steps + 1);
          Ratio rho{floor(v).convert_to<std::uint64_t>(), den};
          if (rho.num == 0) continue;
          PlanInputs in;
          in.kind = kind;
          in.mode = mode;
          in.degree = deg;
          in.rate = rate;
          in.eps = eps;
          in.rho = rho;
          if (!two) in.n = 10'000;
          Plan p = make_plan(in);
          ++rep.checked;
          if (p.exponent > rep.max_exponent) rep.max_exponent = p.exponent;
          if (!p.stable) ++rep.unstable;
          if (!p.exponent_negative() || !(p.distance_exponent < 0) || !(p.a_eps > p.b_eps))
            rep.violations.push_back("R=" + rate.to_string() + " eps=" + eps.to_string() +
                                     " rho=" + rho.to_string() + " degree=" +
                                     std::to_string(deg) + " exponent=" + digits30(p.exponent));
        }
      }
    }
  }
  return rep;
}

UnionBound union_bound(const UnionBoundInputs& in) {
  if (!(0 < in.e && in.e <= in.eplus && in.e < in.d))
    throw Error(ErrorCode::kHypothesisViolation, "need 0 < E <= E+ and E < d");
  if (in.q < 2) throw Error(ErrorCode::kHypothesisViolation, "q >= 2");
  const std::size_t deg = in.degree;
  const BigInt q(in.q);
  const BigInt b((in.eplus + 1) / (in.eplus - in.e + 1));
  BigInt factor = 1;
  if (in.kind == PlanKind::kSpace) factor = big_pow(q, deg - 1);
  if (in.kind == PlanKind::kCurve) factor = deg;
  // K > B factor gamma^-s  <=>  K (d-E)^s > B factor d^s.
  const BigInt lhs = BigInt(in.k) * big_pow(BigInt(in.d - in.e), in.s);
  const BigInt rhs = b * factor * big_pow(BigInt(in.d), in.s);
  if (!(lhs > rhs))
    throw Error(ErrorCode::kHypothesisViolation,
                "K must exceed B * factor * gamma^-s (" + lhs.str() + " <= " + rhs.str() + ")");
  if (in.kind == PlanKind::kLine && in.k < 2)
    throw Error(ErrorCode::kHypothesisViolation, "K >= 2");

  UnionBound ub;
  ub.ball = ball_volume(in.n, in.q, in.e);
  const std::uint64_t k = in.k, s = in.s;
  BigInt mass;
  Real offset;  // multiples of r collected separately
  switch (in.kind) {
    case PlanKind::kLine:
      mass = big_binomial(q, k) * big_binomial(k, s + 3) * big_pow(ub.ball, s + 3);
      offset = Real(2 * in.r) - Real(in.r) * Real(s + 3);
      break;
    case PlanKind::kSpace:
      mass = big_binomial(big_pow(q, deg), k) *
             (big_binomial(k, deg + s + 1) * big_pow(ub.ball, deg + s + 1) +
              big_binomial(k, deg + s + 2) * big_pow(ub.ball, deg + s + 2));
      offset = -Real(in.r) * Real(s + 1);
      break;
    case PlanKind::kCurve: {
      BigInt sum = 0;
      for (std::size_t h = 1; h <= deg + 1; ++h)
        sum += big_pow(q, h * (deg + 1)) * big_binomial(k, h + s + 1) *
               big_pow(ub.ball, h + s + 1);
      mass = big_binomial(q, k) * sum;
      offset = -Real(in.r) * Real(s + 1);
      break;
    }
  }
  if (mass == 0) {
    ub.zero = true;
    return ub;
  }
  ub.log_q = offset + log_big(mass) / log(Real(in.q));
  return ub;
}

VolumeReport volume_vs_entropy(std::size_t n, std::uint32_t q, std::size_t e) {
  if (n == 0 || static_cast<std::uint64_t>(e) * q > static_cast<std::uint64_t>(n) * (q - 1))
    throw Error(ErrorCode::kDomainError, "need E/n <= 1 - 1/q");
  VolumeReport v;
  v.volume = ball_volume(n, q, e);
  v.log_q_volume = log_big(v.volume) / log(Real(q));
  v.entropy_estimate = e == 0 ? Real(0) : entropy_q(Ratio{e, n}, q) * Real(n);
  return v;
}

}  // namespace synlab
