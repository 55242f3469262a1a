#include <cmath>
#include <limits>
#include <string>

#include "prime_race/special_functions.hpp"

namespace prime_race::analytic {

namespace {

// 15-point Kronrod nodes on [-1, 1] (positive half, descending) with the
// embedded 7-point Gauss rule on the odd-indexed nodes and the centre.
constexpr long double kXgk[8] = {
    0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
    0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
    0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
    0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L};
constexpr long double kWgk[8] = {
    0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
    0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
    0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
    0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
constexpr long double kWg[4] = {
    0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
    0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

struct Piece {
  long double integral;
  long double error;
};

template <class F>
Piece kronrod15(const F& f, long double a, long double b) {
  const long double c = 0.5L * (a + b);
  const long double h = 0.5L * (b - a);
  const long double fc = f(c);
  long double k = fc * kWgk[7];
  long double g = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const long double dx = h * kXgk[j];
    const long double pair = f(c - dx) + f(c + dx);
    k += kWgk[j] * pair;
    if (j % 2 == 1) g += kWg[j / 2] * pair;
  }
  return {k * h, std::fabs((k - g) * h)};
}

template <class F>
long double adapt(const F& f, long double a, long double b, const Piece& whole, long double tol,
                  int depth) {
  if (whole.error <= tol) return whole.integral;
  if (depth <= 0) throw NonConvergenceError("quadrature did not reach tolerance");
  const long double m = 0.5L * (a + b);
  const Piece left = kronrod15(f, a, m);
  const Piece right = kronrod15(f, m, b);
  return adapt(f, a, m, left, tol / 2, depth - 1) + adapt(f, m, b, right, tol / 2, depth - 1);
}

// Integral over t in [2, x] of (ln t)^(-power), via u = ln t.
double log_power_integral(double x, int power, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(x) || x < 2.0) {
    throw DomainError("logarithmic integral needs finite x >= 2, got " + std::to_string(x));
  }
  if (x == 2.0) return 0.0;
  const long double a = std::log(2.0L);
  const long double b = std::log(static_cast<long double>(x));
  auto f = [power](long double u) {
    const long double up = power == 1 ? u : u * u;
    return std::exp(u) / up;
  };
  const Piece first = kronrod15(f, a, b);
  const long double floor_tol = 64.0L * std::numeric_limits<double>::epsilon() * std::fabs(first.integral);
  const long double tol = std::max<long double>(cfg.abs_tol, floor_tol);
  return static_cast<double>(adapt(f, a, b, first, tol, cfg.max_depth));
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0)) throw DomainError("abs_tol must be positive");
  if (max_depth < 1) throw DomainError("max_depth must be at least 1");
}

double li(double x, const QuadratureConfig& cfg) { return log_power_integral(x, 1, cfg); }

double li2(double x, const QuadratureConfig& cfg) { return log_power_integral(x, 2, cfg); }

double riemann_prediction(double x, const QuadratureConfig& cfg) {
  if (!std::isfinite(x) || x < 4.0) throw DomainError("riemann_prediction needs x >= 4");
  return li(x, cfg) - 0.5 * li(std::sqrt(x), cfg);
}

std::int64_t apply_rounding(double v, Rounding mode) {
  if (!std::isfinite(v)) throw DomainError("cannot round a non-finite value");
  switch (mode) {
    case Rounding::floor:
      return static_cast<std::int64_t>(std::floor(v));
    case Rounding::nearest:
      return static_cast<std::int64_t>(std::round(v));
    case Rounding::truncate:
      break;
  }
  return static_cast<std::int64_t>(std::trunc(v));
}

}  // namespace prime_race::analytic
