#include "maass/specials.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace maass::specials {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

const std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(cplx s) {
  return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

// Principal-branch power x^s for real x ≠ 0.
cplx real_pow(double x, cplx s) {
  if (x > 0) return std::exp(s * std::log(x));
  return std::exp(s * cplx(std::log(-x), kPi));
}

// Principal-branch log x for real x ≠ 0.
cplx real_log(double x) {
  return x > 0 ? cplx(std::log(x), 0.0) : cplx(std::log(-x), kPi);
}

// Lower incomplete gamma γ(s, x) for Re s > 0 by power series.
cplx lower_gamma_series(cplx s, double x) {
  if (x > 0) {
    // γ = x^s e^{-x} Σ x^n / (s)_{n+1}: positive terms for real s.
    cplx term = 1.0 / s;
    cplx sum = term;
    for (int n = 1; n < 100000; ++n) {
      term *= x / (s + double(n));
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return std::exp(s * std::log(x) - x) * sum;
  }
  // x < 0: γ = x^s Σ (-x)^n / (n! (s+n)), all factors (-x)^n/n! positive.
  const double a = -x;
  double fact_term = 1.0;
  cplx sum = 1.0 / s;
  for (int n = 1; n < 100000; ++n) {
    fact_term *= a / n;
    cplx term = fact_term / (s + double(n));
    sum += term;
    if (double(n) > a && std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return real_pow(x, s) * sum;
}

// Γ(s, x) for x > 0 by the Legendre continued fraction (modified Lentz).
cplx upper_gamma_cf(cplx s, double x) {
  const double tiny = 1e-300;
  cplx b = x + 1.0 - s;
  cplx c = 1.0 / tiny;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 1; i < 100000; ++i) {
    cplx an = -double(i) * (double(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    cplx del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  cplx logpre = s * std::log(x) - x;
  if (logpre.real() < -745.0) return 0.0;
  return std::exp(logpre) * h;
}

// E1(x) = Γ(0, x) for 0 < x < 1 by series.
double e1_series(double x) {
  double sum = 0.0, term = 1.0;
  for (int n = 1; n < 200; ++n) {
    term *= -x / n;
    double t = term / n;
    sum += t;
    if (std::abs(t) < 1e-18) break;
  }
  return -kEulerGamma - std::log(x) - sum;
}

// Ei(a) for a > 0.
double ei(double a) {
  if (a < 40.0) {
    double sum = 0.0, term = 1.0;
    for (int n = 1; n < 1000; ++n) {
      term *= a / n;
      double t = term / n;
      sum += t;
      if (t < 1e-17 * sum) break;
    }
    return kEulerGamma + std::log(a) + sum;
  }
  double sum = 1.0, term = 1.0;
  for (int n = 1; n < 40; ++n) {
    double next = term * n / a;
    if (next > term) break;
    term = next;
    sum += term;
    if (term < 1e-17) break;
  }
  return std::exp(a) / a * sum;
}

// Γ(-m, x) for integers m ≥ 0 and real x ≠ 0.
cplx upper_gamma_nonpos_int(long m, double x) {
  if (x > 1.0) return upper_gamma_cf(cplx(-double(m), 0.0), x);
  cplx g = x > 0 ? cplx(e1_series(x), 0.0) : cplx(-ei(-x), -kPi);
  // Γ(j, x) = (Γ(j+1, x) - x^j e^{-x}) / j for j = -1, -2, ...
  const double ex = std::exp(-x);
  double xp = 1.0;
  for (long j = 1; j <= m; ++j) {
    xp /= x;
    g = (xp * ex - g) / double(j);
  }
  return g;
}

}  // namespace

cplx gamma(cplx s) {
  if (is_nonpositive_integer(s)) throw DomainError("gamma: pole at nonpositive integer");
  if (s.real() < 0.5) return kPi / (std::sin(kPi * s) * gamma(1.0 - s));
  if (s.imag() == 0.0 && s.real() < 171.0) return std::tgamma(s.real());
  cplx z = s - 1.0;
  cplx x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + double(i));
  cplx t = z + 7.5;
  return std::sqrt(2 * kPi) * std::exp((z + 0.5) * std::log(t) - t) * x;
}

cplx upper_gamma(cplx s, double x) {
  if (x == 0.0) {
    if (s.real() <= 0.0) throw DomainError("upper_gamma: x = 0 requires Re(s) > 0");
    return gamma(s);
  }
  if (!std::isfinite(x)) throw RangeError("upper_gamma: non-finite x");
  if (x < -700.0) throw RangeError("upper_gamma: |x| beyond exponent range");
  if (is_nonpositive_integer(s)) return upper_gamma_nonpos_int(long(-s.real()), x);
  if (x > 0 && x >= 1.0 && x >= s.real() + 1.0) return upper_gamma_cf(s, x);
  if (x > 700.0) {
    // Far tail with Re s large: still the continued fraction, which converges for any x > 0.
    return upper_gamma_cf(s, x);
  }
  // Γ(s, x) = Γ(s) − γ(s, x) with Re s shifted above 1.
  int shift = 0;
  while (s.real() + shift <= 1.0) ++shift;
  cplx sm = s + double(shift);
  cplx g = gamma(sm) - lower_gamma_series(sm, x);
  // Downward recurrence Γ(s, x) = (Γ(s+1, x) − x^s e^{−x}) / s.
  const cplx lx = real_log(x);
  for (int j = shift - 1; j >= 0; --j) {
    cplx sj = s + double(j);
    g = (g - std::exp(sj * lx - x)) / sj;
  }
  return g;
}

double hyp1f1(double a, double b, double z) {
  if (b <= 0 && b == std::floor(b)) throw DomainError("hyp1f1: b is a nonpositive integer");
  double term = 1.0, sum = 1.0;
  int small_run = 0;
  for (int n = 0; n < 100000; ++n) {
    term *= (a + n) / (b + n) * z / (n + 1);
    sum += term;
    if (term == 0.0) break;
    if (std::abs(term) < 1e-16 * std::abs(sum)) {
      if (++small_run >= 10) break;
    } else {
      small_run = 0;
    }
  }
  return sum;
}

double whittaker_M(double kappa, double mu, double z) {
  const double b = 1.0 + 2.0 * mu;
  if (b <= 0 && b == std::floor(b)) throw DomainError("whittaker_M: 1+2μ is a nonpositive integer");
  if (!(z > 0)) throw DomainError("whittaker_M: z must be positive");
  const double m = hyp1f1(mu - kappa + 0.5, b, z);
  const double logpre = -0.5 * z + (mu + 0.5) * std::log(z);
  return std::exp(logpre) * m;
}

namespace {

double bessel_series(double nu, double x) {
  const double h = 0.5 * x;
  double term = std::exp(nu * std::log(h) - std::lgamma(nu + 1.0));
  double sum = term;
  for (int m = 1; m < 500; ++m) {
    term *= -h * h / (m * (m + nu));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

double bessel_asymptotic(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0, q = 0.0;
  double term = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 60; ++k) {
    term *= (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (k * 8.0 * x);
    if (std::abs(term) > prev) break;
    prev = std::abs(term);
    // Terms alternate between Q (odd k) and P (even k) with sign (-1)^{floor(k/2)}.
    const double signed_term = ((k / 2) % 2 == 0) ? term : -term;
    if (k % 2 == 1)
      q += signed_term;
    else
      p += signed_term;
    if (std::abs(term) < 1e-17) break;
  }
  const double w = x - (0.5 * nu + 0.25) * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(w) - q * std::sin(w));
}

// Miller backward recurrence normalised by (x/2)^ν0 = Σ_k (ν0+2k)Γ(ν0+k)/k! J_{ν0+2k}(x).
double bessel_miller(double nu, double x) {
  const double nu0 = nu - std::floor(nu);
  const long target = long(std::floor(nu));
  const long start = long(std::max(double(target), x)) + 40 + long(std::sqrt(40.0 * std::max(x, 1.0)));
  double jp1 = 0.0, j = 1e-300;
  double result = 0.0, norm = 0.0;
  // r_k = Γ(ν0+k)/(k! Γ(ν0+1)); the Neumann weight is (ν0+2k) r_k, and 1 for k = 0.
  long kk = start / 2;
  double r = std::exp(std::lgamma(nu0 + kk) - std::lgamma(kk + 1.0) - std::lgamma(nu0 + 1.0));
  for (long n = 2 * kk + 1; n >= 0; --n) {
    if (n == target) result = j;
    if (n % 2 == 0) {
      const long k2 = n / 2;
      if (k2 == 0) {
        norm += j;
      } else {
        norm += (nu0 + 2.0 * k2) * r * j;
        r *= k2 / (nu0 + k2 - 1.0);
      }
    }
    if (n == 0) break;
    const double jm1 = 2.0 * (nu0 + n) / x * j - jp1;
    jp1 = j;
    j = jm1;
    if (std::abs(j) > 1e250) {
      j *= 1e-250;
      jp1 *= 1e-250;
      result *= 1e-250;
      norm *= 1e-250;
    }
  }
  const double scale = std::exp(nu0 * std::log(0.5 * x) - std::lgamma(nu0 + 1.0));
  return result / norm * scale;
}

}  // namespace

double bessel_J(double nu, double x) {
  if (nu < 0) throw DomainError("bessel_J: ν must be nonnegative");
  if (x < 0) throw DomainError("bessel_J: x must be nonnegative");
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (x < 8.0 || 0.25 * x * x < nu + 1.0) return bessel_series(nu, x);
  if (x > std::max(40.0, nu * nu)) return bessel_asymptotic(nu, x);
  return bessel_miller(nu, x);
}

int kronecker(long a, long b) {
  static const int tab2[8] = {0, 1, 0, -1, 0, -1, 0, 1};
  if (b == 0) return (a == 1 || a == -1) ? 1 : 0;
  if (a % 2 == 0 && b % 2 == 0) return 0;
  int v = 0;
  while (b % 2 == 0) {
    ++v;
    b /= 2;
  }
  const long amod8 = ((a % 8) + 8) % 8;
  int k = (v % 2 == 0) ? 1 : tab2[amod8];
  if (b < 0) {
    b = -b;
    if (a < 0) k = -k;
  }
  // b odd positive; reduce a to [0, b).
  a = ((a % b) + b) % b;
  while (a != 0) {
    v = 0;
    while (a % 2 == 0) {
      ++v;
      a /= 2;
    }
    if (v % 2 == 1) k *= tab2[b % 8];
    if ((a & b & 2) != 0) k = -k;
    const long r = a;
    a = b % r;
    b = r;
  }
  return b == 1 ? k : 0;
}

cplx epsilon_d(long d) {
  if (d % 2 == 0) throw DomainError("epsilon_d: d must be odd");
  return ((d % 4) + 4) % 4 == 1 ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
}

long gcd(long a, long b) { return std::gcd(a, b); }

long euler_phi(long n) {
  long result = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

cplx root_of_unity(long p, long q) {
  p %= q;
  if (p < 0) p += q;
  if ((4 * p) % q == 0) {
    switch ((4 * p) / q) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double t = 2.0 * kPi * double(p) / double(q);
  return {std::cos(t), std::sin(t)};
}

namespace {

long cap_value = 10000;

long powmod(long b, long e, long m) {
  long r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = (__int128)r * b % m;
    b = (__int128)b * b % m;
    e >>= 1;
  }
  return r;
}

std::vector<std::pair<long, int>> factor(long n) {
  std::vector<std::pair<long, int>> f;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      f.emplace_back(p, e);
    }
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

long primitive_root_prime_power(long p, long q) {
  const long ph = q / p * (p - 1);
  auto pf = factor(ph);
  for (long g = 2; g < q; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (auto [r, e] : pf) {
      if (powmod(g, ph / r, q) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  return 1;
}

}  // namespace

long character_modulus_cap() { return cap_value; }
void set_character_modulus_cap(long cap) { cap_value = cap; }

cplx Character::operator()(long n) const {
  long r = n % modulus_;
  if (r < 0) r += modulus_;
  return values_[r];
}

std::string Character::id() const {
  return std::to_string(modulus_) + ":" + std::to_string(index_);
}

CharacterGroup::CharacterGroup(long D) : D_(D) {
  if (D < 1) throw DomainError("characters: modulus must be positive");
  if (D > cap_value) throw DomainError("characters: modulus exceeds the configured cap");
  for (auto [p, e] : factor(D)) {
    primes_.push_back(p);
    long q = 1;
    for (int i = 0; i < e; ++i) q *= p;
    // Each cyclic factor: generator g mod q with order ord, log table over residues mod D.
    auto add_factor = [&](long ord, auto log_of) {
      std::vector<long> table(D, -1);
      for (long u = 0; u < D; ++u) {
        if (std::gcd(u, D) != 1) continue;
        table[u] = log_of(u % q);
      }
      orders_.push_back(ord);
      logs_.push_back(std::move(table));
    };
    if (p != 2) {
      const long g = primitive_root_prime_power(p, q);
      const long ord = q / p * (p - 1);
      std::vector<long> dlog(q, -1);
      long x = 1;
      for (long i = 0; i < ord; ++i) {
        dlog[x] = i;
        x = x * g % q;
      }
      add_factor(ord, [dlog](long r) { return dlog[r]; });
    } else if (e == 2) {
      add_factor(2, [](long r) { return r == 1 ? 0L : 1L; });
    } else if (e >= 3) {
      const long ord5 = q / 4;
      std::vector<long> dlog5(q, -1);
      long x = 1;
      for (long i = 0; i < ord5; ++i) {
        dlog5[x] = i;
        x = x * 5 % q;
      }
      add_factor(2, [](long r) { return r % 4 == 1 ? 0L : 1L; });
      add_factor(ord5, [dlog5, q](long r) { return dlog5[r % 4 == 1 ? r : q - r]; });
    }
  }
  for (long o : orders_) {
    size_ *= o;
    lcm_ = std::lcm(lcm_, o);
  }
}

std::vector<long> CharacterGroup::digits(long index) const {
  std::vector<long> d(orders_.size());
  for (size_t i = 0; i < orders_.size(); ++i) {
    d[i] = index % orders_[i];
    index /= orders_[i];
  }
  return d;
}

long CharacterGroup::from_digits(const std::vector<long>& d) const {
  long index = 0, radix = 1;
  for (size_t i = 0; i < orders_.size(); ++i) {
    index += (((d[i] % orders_[i]) + orders_[i]) % orders_[i]) * radix;
    radix *= orders_[i];
  }
  return index;
}

Character CharacterGroup::character(long index) const {
  if (index < 0 || index >= size_) throw DomainError("character: index out of range");
  const auto d = digits(index);
  Character chi;
  chi.modulus_ = D_;
  chi.index_ = index;
  chi.exps_.assign(D_, -1);
  chi.values_.assign(D_, cplx(0.0, 0.0));
  long order = 1;
  for (size_t i = 0; i < orders_.size(); ++i) {
    const long o = orders_[i] / std::gcd(orders_[i], d[i]);
    order = std::lcm(order, o);
  }
  chi.order_ = order;
  for (long u = 0; u < D_; ++u) {
    if (std::gcd(u, D_) != 1) continue;
    long e = 0;  // exponent in units of 1/lcm_
    for (size_t i = 0; i < orders_.size(); ++i)
      e = (e + d[i] * logs_[i][u] % orders_[i] * (lcm_ / orders_[i])) % lcm_;
    // Express over the character's own order.
    const long eo = e / (lcm_ / order);
    chi.exps_[u] = eo;
    chi.values_[u] = root_of_unity(eo, order);
  }
  if (D_ == 1) {
    chi.exps_ = {0};
    chi.values_ = {cplx(1.0, 0.0)};
  }
  // Primitive iff for each p | D the character is nontrivial on {u ≡ 1 mod D/p}.
  chi.primitive_ = true;
  for (long p : primes_) {
    const long sub = D_ / p;
    bool trivial_on_kernel = true;
    for (long u = 1; u < D_; u += sub) {
      if (std::gcd(u, D_) != 1) continue;
      if (chi.exps_[u] != 0) {
        trivial_on_kernel = false;
        break;
      }
    }
    if (trivial_on_kernel) {
      chi.primitive_ = false;
      break;
    }
  }
  return chi;
}

std::vector<Character> CharacterGroup::all() const {
  std::vector<Character> out;
  out.reserve(size_);
  for (long i = 0; i < size_; ++i) out.push_back(character(i));
  return out;
}

long CharacterGroup::product_index(long i, long j) const {
  auto a = digits(i), b = digits(j);
  for (size_t t = 0; t < a.size(); ++t) a[t] += b[t];
  return from_digits(a);
}

long CharacterGroup::conj_index(long i) const {
  auto a = digits(i);
  for (auto& x : a) x = -x;
  return from_digits(a);
}

long CharacterGroup::find(const Character& chi) const {
  if (chi.modulus() != D_) return -1;
  // Read the digits off the generators' values.
  std::vector<long> d(orders_.size(), 0);
  for (size_t i = 0; i < orders_.size(); ++i) {
    // Find a unit whose log vector is e_i.
    for (long u = 1; u < D_; ++u) {
      if (logs_[i][u] != 1) continue;
      bool unit_vec = true;
      for (size_t j = 0; j < orders_.size(); ++j)
        if (j != i && logs_[j][u] != 0) unit_vec = false;
      if (!unit_vec) continue;
      const double ang = std::arg(chi.values()[u]) / (2 * kPi) * orders_[i];
      d[i] = long(std::llround(ang));
      break;
    }
  }
  const long idx = from_digits(d);
  const Character cand = character(idx);
  for (long u = 0; u < D_; ++u)
    if (std::abs(cand.values()[u] - chi.values()[u]) > 1e-9) return -1;
  return idx;
}

std::vector<Character> characters_mod(long D) { return CharacterGroup(D).all(); }

Character character(long D, long index) { return CharacterGroup(D).character(index); }

Character trivial_character(long D) { return character(D, 0); }

Character conj(const Character& chi) {
  CharacterGroup grp(chi.modulus());
  return grp.character(grp.conj_index(chi.index()));
}

Character product(const Character& a, const Character& b) {
  if (a.modulus() != b.modulus()) throw DomainError("product: characters have different moduli");
  CharacterGroup grp(a.modulus());
  return grp.character(grp.product_index(a.index(), b.index()));
}

Character quadratic_character(long D) {
  if (D < 1 || D % 2 == 0) throw DomainError("quadratic_character: D must be odd and positive");
  CharacterGroup grp(D);
  // Build the table u ↦ (u | D) and locate it in the enumeration.
  std::vector<cplx> vals(D);
  for (long u = 0; u < D; ++u) vals[u] = double(kronecker(u, D));
  for (long i = 0; i < grp.size(); ++i) {
    Character c = grp.character(i);
    if (c.order() > 2) continue;
    bool match = true;
    for (long u = 0; u < D && match; ++u)
      if (std::abs(c.values()[u] - vals[u]) > 1e-12) match = false;
    if (match) return c;
  }
  throw DomainError("quadratic_character: no matching character");
}

cplx gauss_sum(const Character& chi, long n) {
  const long D = chi.modulus();
  if (D == 1) return 1.0;
  const long order = chi.order();
  // Accumulate exactly-indexed roots of unity.
  cplx sum = 0.0;
  long nm = n % D;
  if (nm < 0) nm += D;
  for (long u = 0; u < D; ++u) {
    const long e = chi.exponents()[u];
    if (e < 0) continue;
    // χ(u) e^{2πi n u / D} = e^{2πi (e·D + nu·order) / (order·D)}
    const long num = (e * D + (nm * u % D) * order) % (order * D);
    sum += root_of_unity(num, order * D);
  }
  return sum;
}

}  // namespace maass::specials
