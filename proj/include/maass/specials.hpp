#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "maass/errors.hpp"

namespace maass::specials {

// Complex Euler gamma function (Lanczos, reflection for Re s < 1/2).
cplx gamma(cplx s);

// Upper incomplete gamma Γ(s, x) for real x ≠ 0. For x < 0 the principal
// branch x^s = exp(s(ln|x| + iπ)) is used.
cplx upper_gamma(cplx s, double x);

// Kummer confluent hypergeometric 1F1(a; b; z) by its power series.
double hyp1f1(double a, double b, double z);

// Whittaker M_{κ,μ}(z), z > 0.
double whittaker_M(double kappa, double mu, double z);

// Bessel function of the first kind J_ν(x), ν ≥ 0, x ≥ 0.
double bessel_J(double nu, double x);

// Kronecker symbol (c | d).
int kronecker(long c, long d);

// ε_d: 1 for d ≡ 1 mod 4, i for d ≡ 3 mod 4.
cplx epsilon_d(long d);

long euler_phi(long n);
long gcd(long a, long b);

// Dirichlet character mod D stored as a dense value table.
class Character {
 public:
  Character() = default;

  long modulus() const { return modulus_; }
  long index() const { return index_; }
  bool is_primitive() const { return primitive_; }
  bool is_trivial() const { return index_ == 0; }
  long order() const { return order_; }
  const std::vector<cplx>& values() const { return values_; }

  // χ(n) for any integer n.
  cplx operator()(long n) const;

  // Exponent table: χ(u) = exp(2πi·exps[u]/order) for units, -1 on non-units.
  const std::vector<long>& exponents() const { return exps_; }

  std::string id() const;

 private:
  friend class CharacterGroup;
  long modulus_ = 1;
  long index_ = 0;
  long order_ = 1;
  bool primitive_ = true;
  std::vector<long> exps_{0};
  std::vector<cplx> values_{cplx(1.0, 0.0)};
};

// The dual group of (Z/D)^* with a mixed-radix enumeration of characters.
class CharacterGroup {
 public:
  explicit CharacterGroup(long D);

  long modulus() const { return D_; }
  long size() const { return size_; }
  Character character(long index) const;
  std::vector<Character> all() const;

  // Index of the pointwise product / conjugate inside this enumeration.
  long product_index(long i, long j) const;
  long conj_index(long i) const;

  // Index of a character given by an exponent table (values on units as
  // multiples of 1/lcm), or -1 when the table is not a character mod D.
  long find(const Character& chi) const;

 private:
  std::vector<long> digits(long index) const;
  long from_digits(const std::vector<long>& d) const;

  long D_;
  long size_ = 1;
  long lcm_ = 1;
  std::vector<long> orders_;             // cyclic factor orders
  std::vector<std::vector<long>> logs_;  // logs_[i][u]: discrete log of u in factor i
  std::vector<long> primes_;
};

// Cap on the modulus of enumerated characters (dense tables).
long character_modulus_cap();
void set_character_modulus_cap(long cap);

std::vector<Character> characters_mod(long D);
Character character(long D, long index);
Character conj(const Character& chi);
Character product(const Character& a, const Character& b);
Character trivial_character(long D);
// ψ_D(n) = (D | n)-style quadratic character used with ε_D: n ↦ kronecker(n, D)
// realised as a character mod D (D odd positive).
Character quadratic_character(long D);

// Generalised Gauss sum τ_χ(n) = Σ_{u mod D} χ(u) e^{2πinu/D}.
cplx gauss_sum(const Character& chi, long n);

// e^{2πi p/q} with exact values at multiples of 1/4.
cplx root_of_unity(long p, long q);

}  // namespace maass::specials
