#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <iosfwd>
#include <optional>
#include <string>

#include "modflow/errors.hpp"

namespace modflow {

/**
 * Exact arithmetic over rationals and real quadratic surds, closed under the
 * projective action of integer Moebius maps.
 *
 * A value is one of
 *   - a rational p/q in lowest terms (q > 0),
 *   - a surd (p + q*sqrt(d))/r with d squarefree > 1, q != 0, r > 0 and
 *     gcd(p, q, r) = 1,
 *   - the single projective infinity.
 *
 * Canonical forms are unique, so equality is field-by-field comparison and
 * cycle detection on orbits is cheap. All operations are pure; values are
 * immutable after construction.
 */
class ExactReal {
public:
    enum class Kind { rational, surd, infinity };

    struct SurdParts {
        mpz_class p, q, d, r;
    };

    ExactReal() : kind_(Kind::rational), rat_(0) {}

    static ExactReal from_int(long n);
    static ExactReal from_mpz(const mpz_class& n);
    static ExactReal from_mpq(const mpq_class& q);
    static ExactReal from_rational(const mpz_class& num, const mpz_class& den);
    // (p + q*sqrt(d))/r, normalized: square parts of d fold into q, a vanishing
    // radical collapses to a rational. d < 0 is rejected (no complex surds).
    static ExactReal make_surd(mpz_class p, mpz_class q, mpz_class d, mpz_class r);
    static ExactReal sqrt_int(const mpz_class& d);
    static ExactReal inf();

    Kind kind() const { return kind_; }
    bool is_rational() const { return kind_ == Kind::rational; }
    bool is_surd() const { return kind_ == Kind::surd; }
    bool is_infinity() const { return kind_ == Kind::infinity; }
    bool is_zero() const { return kind_ == Kind::rational && rat_ == 0; }
    bool is_integer() const;

    const mpq_class& as_rational() const;
    const SurdParts& parts() const;

    int sign() const;  // infinity has no sign
    mpz_class floor() const;
    ExactReal reciprocal() const;  // reciprocal of 0 raises, of infinity is 0

    ExactReal operator-() const;
    friend ExactReal operator+(const ExactReal& a, const ExactReal& b);
    friend ExactReal operator-(const ExactReal& a, const ExactReal& b);
    friend ExactReal operator*(const ExactReal& a, const ExactReal& b);
    friend ExactReal operator/(const ExactReal& a, const ExactReal& b);

    // Exact total order consistent with the real embedding; works across
    // distinct quadratic fields by sign tracking while squaring. Infinity
    // compares greater than every finite value.
    int compare(const ExactReal& other) const;

    bool operator==(const ExactReal& o) const { return compare(o) == 0; }
    bool operator!=(const ExactReal& o) const { return compare(o) != 0; }
    bool operator<(const ExactReal& o) const { return compare(o) < 0; }
    bool operator<=(const ExactReal& o) const { return compare(o) <= 0; }
    bool operator>(const ExactReal& o) const { return compare(o) > 0; }
    bool operator>=(const ExactReal& o) const { return compare(o) >= 0; }

    std::string str() const;
    double to_double() const;

    // Cheap strict order on canonical forms (kind, then raw fields). Not the
    // real-number order; agrees with == and is the right comparator for
    // orbit/cycle containers.
    struct CanonicalLess {
        bool operator()(const ExactReal& a, const ExactReal& b) const;
    };

private:
    Kind kind_;
    mpq_class rat_;
    SurdParts surd_;

    static ExactReal surd_raw(mpz_class p, mpz_class q, mpz_class d, mpz_class r);
};

std::ostream& operator<<(std::ostream& os, const ExactReal& x);

// Galois conjugation: (p + q*sqrt(d))/r -> (p - q*sqrt(d))/r, rationals fixed.
ExactReal conjugate(const ExactReal& x);

// Coefficients of the minimal polynomial A x^2 + B x + C, gcd-free, A >= 1.
struct MinPoly {
    mpz_class a, b, c;
};
MinPoly minimal_polynomial(const ExactReal& x);

// B^2 - 4AC of the minimal polynomial; surds only.
mpz_class discriminant(const ExactReal& x);

// Exact square root when it exists inside a (possibly quadratic) field:
// every nonnegative rational has one; a surd only if it is a square in its
// own field. Returns nullopt otherwise.
std::optional<ExactReal> exact_sqrt(const ExactReal& x);

// Text syntax accepted everywhere: integer literals, "p/q", "sqrt(d)",
// "(p+q*sqrt(d))/r", "inf", and +,-,*,/ combinations thereof.
ExactReal parse_exact(const std::string& text);

/**
 * Projective integer 2x2 matrix [[a,b],[c,d]] with nonzero determinant,
 * stored in canonical form (entries divided by their gcd, first nonzero
 * entry positive). Composition is matrix product, equality is projective.
 */
class UnimodularMap {
public:
    UnimodularMap() : a_(1), b_(0), c_(0), d_(1) {}
    UnimodularMap(mpz_class a, mpz_class b, mpz_class c, mpz_class d);

    static UnimodularMap identity() { return UnimodularMap(); }
    static UnimodularMap translation(long n) { return UnimodularMap(1, n, 0, 1); }

    const mpz_class& a() const { return a_; }
    const mpz_class& b() const { return b_; }
    const mpz_class& c() const { return c_; }
    const mpz_class& d() const { return d_; }

    mpz_class det() const { return a_ * d_ - b_ * c_; }

    UnimodularMap operator*(const UnimodularMap& o) const;
    UnimodularMap inverse() const;  // adjugate, re-normalized
    UnimodularMap transpose() const { return UnimodularMap(a_, c_, b_, d_); }

    bool operator==(const UnimodularMap& o) const;
    bool operator!=(const UnimodularMap& o) const { return !(*this == o); }

    // Moebius action (a x + b)/(c x + d) with the projective conventions
    // infinity -> a/c and a vanishing denominator -> infinity.
    ExactReal operator()(const ExactReal& x) const;

    std::string str() const;

private:
    mpz_class a_, b_, c_, d_;
    void normalize();
};

std::ostream& operator<<(std::ostream& os, const UnimodularMap& m);

/**
 * Thin RAII wrapper around an mpfr_t at a fixed working precision. Only the
 * handful of operations the geometry needs (field ops, sqrt, log, acosh).
 */
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 128);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    static BigFloat from_exact(const ExactReal& x, mpfr_prec_t prec);
    static BigFloat from_double(double v, mpfr_prec_t prec);
    static BigFloat pow2(long e, mpfr_prec_t prec);  // 2^e

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

    BigFloat operator+(const BigFloat& o) const;
    BigFloat operator-(const BigFloat& o) const;
    BigFloat operator*(const BigFloat& o) const;
    BigFloat operator/(const BigFloat& o) const;
    BigFloat operator-() const;

    BigFloat sqrt() const;
    BigFloat log() const;
    BigFloat acosh() const;
    BigFloat abs() const;

    int compare(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }
    bool operator<(const BigFloat& o) const { return compare(o) < 0; }
    bool operator<=(const BigFloat& o) const { return compare(o) <= 0; }
    bool operator>(const BigFloat& o) const { return compare(o) > 0; }

    bool is_inf() const { return mpfr_inf_p(v_) != 0; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    std::string str(size_t digits = 30) const;

private:
    mpfr_t v_;
};

// Correctly rounded floating approximation at the requested precision
// (>= 53 bits); infinity maps to the signed IEEE infinity for doubles and
// the MPFR infinity otherwise.
BigFloat to_float(const ExactReal& x, mpfr_prec_t precision_bits);

}  // namespace modflow
