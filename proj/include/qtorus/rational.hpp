#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>

#include "qtorus/errors.hpp"

namespace qtorus {

using Rational = mpq_class;

// gcd of two rationals: gcd of numerators over lcm of denominators.
// gcd(0,0) = 0. Result is non-negative.
inline Rational rat_gcd(const Rational& a, const Rational& b) {
    if (a == 0) return abs(b);
    if (b == 0) return abs(a);
    mpz_class gn, ld;
    mpz_gcd(gn.get_mpz_t(), a.get_num().get_mpz_t(), b.get_num().get_mpz_t());
    mpz_lcm(ld.get_mpz_t(), a.get_den().get_mpz_t(), b.get_den().get_mpz_t());
    Rational r(gn, ld);
    r.canonicalize();
    return r;
}

inline Rational rat_pow(const Rational& a, long e) {
    if (e == 0) return Rational(1);
    if (a == 0) {
        if (e < 0) throw DegenerateDenominator("0^negative");
        return Rational(0);
    }
    mpz_class num, den;
    unsigned long ae = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(num.get_mpz_t(), a.get_num().get_mpz_t(), ae);
    mpz_pow_ui(den.get_mpz_t(), a.get_den().get_mpz_t(), ae);
    Rational r = (e > 0) ? Rational(num, den) : Rational(den, num);
    r.canonicalize();
    return r;
}

// Element of Q(sqrt2, sqrt3): r + a*sqrt2 + b*sqrt3 + c*sqrt6.
// This is the value field for exact evaluation of expressions containing
// the adjoined square-root symbols s2, s3.
struct Q236 {
    Rational r, a, b, c;

    Q236() : r(0), a(0), b(0), c(0) {}
    Q236(const Rational& q) : r(q), a(0), b(0), c(0) {}
    Q236(Rational rr, Rational aa, Rational bb, Rational cc)
        : r(std::move(rr)), a(std::move(aa)), b(std::move(bb)), c(std::move(cc)) {}

    static Q236 sqrt2() { return Q236(0, 1, 0, 0); }
    static Q236 sqrt3() { return Q236(0, 0, 1, 0); }

    bool is_zero() const { return r == 0 && a == 0 && b == 0 && c == 0; }
    bool is_rational() const { return a == 0 && b == 0 && c == 0; }

    Q236 operator+(const Q236& o) const { return Q236(r + o.r, a + o.a, b + o.b, c + o.c); }
    Q236 operator-(const Q236& o) const { return Q236(r - o.r, a - o.a, b - o.b, c - o.c); }
    Q236 operator-() const { return Q236(-r, -a, -b, -c); }

    Q236 operator*(const Q236& o) const {
        // sqrt2*sqrt3 = sqrt6, sqrt2*sqrt6 = 2 sqrt3, sqrt3*sqrt6 = 3 sqrt2
        return Q236(r * o.r + 2 * a * o.a + 3 * b * o.b + 6 * c * o.c,
                    r * o.a + a * o.r + 3 * (b * o.c + c * o.b),
                    r * o.b + b * o.r + 2 * (a * o.c + c * o.a),
                    r * o.c + c * o.r + a * o.b + b * o.a);
    }

    // Galois conjugates: flip the sign of sqrt2 resp. sqrt3.
    Q236 conj2() const { return Q236(r, -a, b, -c); }
    Q236 conj3() const { return Q236(r, a, -b, -c); }

    Q236 inverse() const {
        if (is_zero()) throw DegenerateDenominator("Q236 inverse of zero");
        Q236 y = conj2() * conj3() * conj2().conj3();
        Q236 n = (*this) * y;  // rational by construction
        return Q236(y.r / n.r, y.a / n.r, y.b / n.r, y.c / n.r);
    }

    Q236 pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        Q236 acc(Rational(1)), base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    bool operator==(const Q236& o) const { return r == o.r && a == o.a && b == o.b && c == o.c; }

    std::string str() const {
        std::string s = r.get_str();
        if (a != 0) s += " + (" + a.get_str() + ")*sqrt2";
        if (b != 0) s += " + (" + b.get_str() + ")*sqrt3";
        if (c != 0) s += " + (" + c.get_str() + ")*sqrt6";
        return s;
    }
};

// Deterministic small-rational sampler for randomized verification.
class RationalSampler {
  public:
    explicit RationalSampler(std::uint64_t seed) : rng_(seed) {}

    // Nonzero rational with small numerator/denominator.
    Rational small_nonzero() {
        std::uniform_int_distribution<int> num(-9, 9);
        std::uniform_int_distribution<int> den(1, 4);
        int n = 0;
        while (n == 0) n = num(rng_);
        Rational r(n, den(rng_));
        r.canonicalize();
        return r;
    }

    // Value suitable for the quantization symbol lambda: avoids 0 and +-1
    // so that no q-power collapses to 1.
    Rational lambda_like() {
        for (;;) {
            Rational r = small_nonzero();
            if (r != 1 && r != -1) return r;
        }
    }

    std::uint64_t raw() { return rng_(); }

  private:
    std::mt19937_64 rng_;
};

}  // namespace qtorus
