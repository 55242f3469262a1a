#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "prime_race/special_functions.hpp"

namespace prime_race::analytic {

namespace {

using cld = std::complex<long double>;

constexpr long double kPi = 3.141592653589793238462643383279502884L;
const long double kAccelBase = 3.0L + std::sqrt(8.0L);  // 3 + sqrt 8
const long double kLogAccelBase = std::log(3.0L + std::sqrt(8.0L));

// B_{2j} / (2j)!, j = 1..20.
constexpr long double kBernoulliOverFactorial[20] = {
    0.0833333333333333333333333333333333333L,
    -0.00138888888888888888888888888888888889L,
    0.0000330687830687830687830687830687830688L,
    -0.000000826719576719576719576719576719576720L,
    0.0000000208767569878680989792100903212014323L,
    -0.000000000528419013868749318484768220217955668L,
    0.0000000000133825365306846788328269809751291233L,
    -3.38968029632258286683019539124944250e-13L,
    8.58606205627784456413590545042562713e-15L,
    -2.17486869855806187304151642386591790e-16L,
    5.50900282836022951520265260890225488e-18L,
    -1.39544646858125233407076862640635498e-19L,
    3.53470703962946747169322997780379921e-21L,
    -8.95351742703754685040261131811274105e-23L,
    2.26795245233768306031095073886816606e-24L,
    -5.74479066887220244526388198760701840e-26L,
    1.45517247561486490186626486727132934e-27L,
    -3.68599494066531017818178247990866037e-29L,
    9.33673425709504467203255515278562330e-31L,
    -2.36502241570062993455963519636983824e-32L,
};

// Stirling coefficients B_{2k} / (2k (2k - 1)).
constexpr long double kStirling[10] = {
    1.0L / 12, -1.0L / 360, 1.0L / 1260, -1.0L / 1680, 1.0L / 1188,
    -691.0L / 360360, 1.0L / 156, -3617.0L / 122400, 43867.0L / 244188, -174611.0L / 125400,
};

// n^(-s) with a cached ln n.
cld power_minus(long double log_n, cld s) {
  const long double mag = std::exp(-s.real() * log_n);
  const long double ang = -s.imag() * log_n;
  return {mag * std::cos(ang), mag * std::sin(ang)};
}

const std::vector<long double>& log_table() {
  static const std::vector<long double> table = [] {
    std::vector<long double> t(2 * kMaxTerms + 2, 0.0L);
    for (std::size_t k = 1; k < t.size(); ++k) t[k] = std::log(static_cast<long double>(k));
    return t;
  }();
  return table;
}

// sum_{k>=0} (-1)^k a_k with the Chebyshev-weighted acceleration.
template <class Term>
cld accelerated_alternating(int n, const Term& term) {
  long double d = std::pow(kAccelBase, static_cast<long double>(n));
  d = 0.5L * (d + 1.0L / d);
  long double b = -1.0L;
  long double c = -d;
  cld sum = 0.0L;
  for (int k = 0; k < n; ++k) {
    c = b - c;
    sum += c * term(k);
    const long double kk = k;
    b = (kk + n) * (kk - n) * b / ((kk + 0.5L) * (kk + 1.0L));
  }
  return sum / d;
}

int legendre(std::uint64_t n, std::uint32_t q) {
  const std::uint64_t a = n % q;
  if (a == 0) return 0;
  std::uint64_t result = 1, base = a, e = (q - 1) / 2;
  while (e > 0) {
    if (e & 1U) result = result * base % q;
    base = base * base % q;
    e >>= 1;
  }
  return result == 1 ? 1 : -1;
}

// expm1(w) / w, continuous at w = 0.
cld expm1_over(cld w) {
  if (std::abs(w) < 1e-5L) return 1.0L + w * (0.5L + w / 6.0L);
  return (std::exp(w) - 1.0L) / w;
}

cld zeta_value(cld s, int terms) {
  const auto& logs = log_table();
  const cld eta = accelerated_alternating(terms, [&](int k) { return power_minus(logs[k + 1], s); });
  const cld denom = 1.0L - std::exp((1.0L - s) * std::log(2.0L));
  return eta / denom;
}

cld beta4_value(cld s, int terms) {
  const auto& logs = log_table();
  return accelerated_alternating(terms, [&](int k) { return power_minus(logs[2 * k + 1], s); });
}

// Complete periods summed directly, the remaining Hurwitz-type tails
// sum_{m>=M} (mq + a)^(-s) by Euler-Maclaurin.
cld quadratic_value(std::uint32_t q, cld s, int periods) {
  std::vector<int> chi(q);
  for (std::uint32_t a = 0; a < q; ++a) chi[a] = legendre(a, q);
  const std::uint64_t n_direct = static_cast<std::uint64_t>(periods) * q;
  cld sum = 0.0L;
  for (std::uint64_t n = 1; n <= n_direct; ++n) {
    const int c = chi[n % q];
    if (c != 0) sum += static_cast<long double>(c) * power_minus(std::log(static_cast<long double>(n)), s);
  }
  const long double M = static_cast<long double>(periods);
  const long double ql = q;
  for (std::uint32_t a = 1; a < q; ++a) {
    if (chi[a] == 0) continue;
    const long double N = M * ql + a;  // first tail term is at m = M
    const long double logN = std::log(N);
    const cld fN = power_minus(logN, s);
    // integral_M^inf (mq+a)^(-s) dm = N^(1-s) / (q (s-1)); the 1/(s-1)
    // parts cancel across the character, leaving -ln N * expm1(w)/w / q.
    const cld w = (1.0L - s) * logN;
    cld tail = -logN * expm1_over(w) / ql;
    tail += 0.5L * fN;
    // f^(k)(M) = q^k (-s)(-s-1)...(-s-k+1) N^(-s-k)
    cld deriv = fN * (-s) * ql / N;  // k = 1
    for (int j = 1; j <= 20; ++j) {
      tail -= kBernoulliOverFactorial[j - 1] * deriv;
      const long double k = 2 * j - 1;
      deriv *= (-s - k) * (-s - k - 1.0L) * ql * ql / (N * N);
    }
    sum += static_cast<long double>(chi[a]) * tail;
  }
  return sum;
}

void check_argument(ComplexValue s) {
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
    throw DomainError("L-function argument must be finite");
  }
  if (!(s.real() > 0.0)) throw DomainError("L-function evaluation needs Re s > 0");
}

long double log_abs_gamma_ratio(ComplexValue s) {
  // ln( Gamma(sigma) / |Gamma(s)| )
  return std::lgamma(static_cast<long double>(s.real())) -
         log_gamma(cld(s.real(), s.imag())).real();
}

long double quadratic_log_bound(std::uint32_t q, ComplexValue s, int periods) {
  // Size of the first omitted Euler-Maclaurin term (order 42), summed over
  // the q - 1 residues: 2 / (2 pi)^42 * |s (s+1) ... (s+40)| q^41 N^(-sigma-41).
  const long double N = static_cast<long double>(periods) * q + 1.0L;
  long double log_prod = 0.0L;
  for (int k = 0; k <= 40; ++k) log_prod += std::log(std::abs(cld(s.real() + k, s.imag())));
  return std::log(2.0L * (q - 1)) - 42.0L * std::log(2.0L * kPi) + log_prod +
         41.0L * std::log(static_cast<long double>(q)) - (s.real() + 41.0L) * std::log(N);
}

}  // namespace

LFunctionId LFunctionId::quadratic(std::uint32_t q) {
  if (q < 3 || q % 2 == 0 || sieve::prime_divisors(q) != std::vector<std::uint64_t>{q}) {
    throw DomainError("quadratic character needs an odd prime modulus, got " + std::to_string(q));
  }
  return LFunctionId(Kind::quadratic, q);
}

LFunctionId LFunctionId::parse(const std::string& text) {
  if (text == "zeta") return zeta();
  if (text == "beta4") return beta4();
  if (text.rfind("quadratic:", 0) == 0) {
    const std::string digits = text.substr(10);
    if (digits.empty() || digits.size() > 9 ||
        !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw DomainError("bad modulus in '" + text + "'");
    }
    return quadratic(static_cast<std::uint32_t>(std::stoul(digits)));
  }
  throw DomainError("unknown L-function '" + text + "'");
}

std::string LFunctionId::name() const {
  switch (kind_) {
    case Kind::zeta:
      return "zeta";
    case Kind::beta4:
      return "beta4";
    case Kind::quadratic:
      return "quadratic:" + std::to_string(q_);
  }
  return "?";
}

int LFunctionId::character(std::uint64_t n) const {
  switch (kind_) {
    case Kind::zeta:
      return 1;
    case Kind::beta4:
      return n % 2 == 0 ? 0 : (n % 4 == 1 ? 1 : -1);
    case Kind::quadratic:
      return legendre(n, q_);
  }
  return 0;
}

std::complex<long double> log_gamma(std::complex<long double> z) {
  if (!(z.real() > 0.0L)) throw DomainError("log_gamma needs Re z > 0");
  cld shift = 0.0L;
  while (z.real() < 15.0L) {
    shift += std::log(z);
    z += 1.0L;
  }
  const cld inv = 1.0L / z;
  const cld inv2 = inv * inv;
  cld series = 0.0L;
  cld p = inv;
  for (long double c : kStirling) {
    series += c * p;
    p *= inv2;
  }
  return (z - 0.5L) * std::log(z) - z + 0.5L * std::log(2.0L * kPi) + series - shift;
}

double l_error_bound(const LFunctionId& id, ComplexValue s, int terms) {
  check_argument(s);
  if (terms < 1) throw DomainError("terms must be at least 1");
  if (id.kind() == LFunctionId::Kind::quadratic) {
    return static_cast<double>(std::exp(quadratic_log_bound(id.modulus(), s, terms)));
  }
  long double lb = std::log(4.0L) + log_abs_gamma_ratio(s) - terms * kLogAccelBase;
  if (id.kind() == LFunctionId::Kind::zeta) {
    const cld denom = 1.0L - std::exp((1.0L - cld(s.real(), s.imag())) * std::log(2.0L));
    lb -= std::log(std::max(std::abs(denom), 1e-300L));
  }
  return static_cast<double>(std::exp(lb));
}

int default_terms(const LFunctionId& id, ComplexValue s, double tolerance) {
  check_argument(s);
  if (!(tolerance > 0.0)) throw DomainError("tolerance must be positive");
  const long double log_tol = std::log(static_cast<long double>(tolerance));
  if (id.kind() == LFunctionId::Kind::quadratic) {
    const int start = static_cast<int>(std::ceil((std::abs(s) + 40.0) / id.modulus()));
    for (int m = std::max(1, start); m < kMaxTerms; ++m) {
      if (quadratic_log_bound(id.modulus(), s, m) <= log_tol) return m;
    }
    return kMaxTerms;
  }
  long double need = std::log(4.0L) + log_abs_gamma_ratio(s) - log_tol;
  if (id.kind() == LFunctionId::Kind::zeta) {
    const cld denom = 1.0L - std::exp((1.0L - cld(s.real(), s.imag())) * std::log(2.0L));
    need -= std::log(std::max(std::abs(denom), 1e-300L));
  }
  const long double n = std::ceil(need / kLogAccelBase);
  return static_cast<int>(std::clamp<long double>(n, 8.0L, kMaxTerms));
}

ComplexValue evaluate_l(const LFunctionId& id, ComplexValue s, int terms) {
  check_argument(s);
  if (terms < 1) throw DomainError("terms must be at least 1");
  if (id.kind() != LFunctionId::Kind::quadratic && terms > kMaxTerms) {
    throw CapacityError("at most " + std::to_string(kMaxTerms) + " accelerated terms");
  }
  const cld z(s.real(), s.imag());
  switch (id.kind()) {
    case LFunctionId::Kind::zeta: {
      if (s == ComplexValue(1.0, 0.0)) throw PoleError("zeta has a pole at s = 1");
      const cld denom = 1.0L - std::exp((1.0L - z) * std::log(2.0L));
      if (std::abs(denom) < 1e-9L) {
        // removable zero of 1 - 2^(1-s) on Re s = 1: average across it
        const long double h = 1e-5L;
        const cld v = 0.5L * (zeta_value(z + h, terms) + zeta_value(z - h, terms));
        return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
      }
      const cld v = zeta_value(z, terms);
      return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
    }
    case LFunctionId::Kind::beta4: {
      const cld v = beta4_value(z, terms);
      return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
    }
    case LFunctionId::Kind::quadratic: {
      const cld v = quadratic_value(id.modulus(), z, terms);
      return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
    }
  }
  return {};
}

ComplexValue evaluate_l(const LFunctionId& id, ComplexValue s) {
  return evaluate_l(id, s, default_terms(id, s));
}

double theta(const LFunctionId& id, double t) {
  const long double tl = t;
  switch (id.kind()) {
    case LFunctionId::Kind::zeta:
      return static_cast<double>(log_gamma(cld(0.25L, tl / 2)).imag() - tl / 2 * std::log(kPi));
    case LFunctionId::Kind::beta4:
      return static_cast<double>(log_gamma(cld(0.75L, tl / 2)).imag() + tl / 2 * std::log(4.0L / kPi));
    case LFunctionId::Kind::quadratic:
      break;
  }
  throw UnsupportedError("critical-line rotation is only provided for zeta and beta4");
}

double critical_line_z(const LFunctionId& id, double t, int terms) {
  if (id.kind() == LFunctionId::Kind::quadratic) {
    throw UnsupportedError("critical-line rotation is only provided for zeta and beta4");
  }
  const ComplexValue s(0.5, t);
  const int n = terms > 0 ? terms : default_terms(id, s, 1e-13);
  const ComplexValue v = evaluate_l(id, s, n);
  const double th = theta(id, t);
  return std::cos(th) * v.real() - std::sin(th) * v.imag();
}

}  // namespace prime_race::analytic
