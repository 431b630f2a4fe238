#include "modflow/exact.hpp"

#include <cctype>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

namespace modflow {

const char* errc_name(errc code) noexcept {
    switch (code) {
        case errc::invalid_number: return "InvalidNumber";
        case errc::not_same_field: return "NotSameField";
        case errc::parse_error: return "ParseError";
        case errc::out_of_domain: return "OutOfDomain";
        case errc::division_by_zero: return "DivisionByZero";
        case errc::degenerate_denominator: return "DegenerateDenominator";
        case errc::budget_exceeded: return "BudgetExceeded";
        case errc::tail_past_termination: return "TailPastTermination";
        case errc::not_quadratic: return "NotQuadratic";
        case errc::unsupported_head: return "UnsupportedHead";
        case errc::position_out_of_range: return "PositionOutOfRange";
        case errc::no_root_in_range: return "NoRootInRange";
        case errc::not_in_image: return "NotInImage";
        case errc::excluded_geodesic: return "ExcludedGeodesic";
        case errc::degenerate_endpoints: return "DegenerateEndpoints";
        case errc::out_of_window: return "OutOfWindow";
        case errc::invalid_runs: return "InvalidRuns";
        case errc::rational_endpoint_reached: return "RationalEndpointReached";
        case errc::no_intersection: return "NoIntersection";
        case errc::formula_undefined: return "FormulaUndefined";
        case errc::invalid_period: return "InvalidPeriod";
        case errc::dual_verification_failed: return "DualVerificationFailed";
        case errc::unknown_suite: return "UnknownSuite";
    }
    return "UnknownError";
}

namespace {

int sgn(const mpz_class& v) { return mpz_sgn(v.get_mpz_t()); }

// Pull the largest square factor out of d: d = s^2 * rest, rest squarefree.
// Trial division suffices for the magnitudes this library works at; a final
// perfect-square check catches one large square factor beyond the bound.
// Arithmetic inside one quadratic field re-normalizes with the same d over
// and over, so known-squarefree values are cached.
void extract_square_part(mpz_class& d, mpz_class& s) {
    s = 1;
    if (d <= 3) return;
    thread_local std::set<mpz_class> squarefree;
    if (squarefree.count(d)) return;
    mpz_class original = d;
    mpz_class i = 2;
    mpz_class bound = 1000000;
    while (i * i <= d && i <= bound) {
        mpz_class sq = i * i;
        while (d % sq == 0) {
            d /= sq;
            s *= i;
        }
        ++i;
    }
    if (d > 1 && mpz_perfect_square_p(d.get_mpz_t())) {
        mpz_class root;
        mpz_sqrt(root.get_mpz_t(), d.get_mpz_t());
        s *= root;
        d = 1;
    }
    if (s == 1 && squarefree.size() < 4096) squarefree.insert(original);
}

// sign of a + b*sqrt(d) for rational a, b and squarefree d > 1.
int sign_linear_in_sqrt(const mpq_class& a, const mpq_class& b, const mpz_class& d) {
    int sa = mpq_sgn(a.get_mpq_t());
    int sb = mpq_sgn(b.get_mpq_t());
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 with b^2*d
    mpq_class lhs = a * a;
    mpq_class rhs = b * b * d;
    int c = cmp(lhs, rhs);
    if (c == 0) return 0;  // unreachable for squarefree d > 1, kept for safety
    return sa * (c > 0 ? 1 : -1);
}

}  // namespace

ExactReal ExactReal::from_int(long n) {
    ExactReal x;
    x.kind_ = Kind::rational;
    x.rat_ = n;
    return x;
}

ExactReal ExactReal::from_mpz(const mpz_class& n) {
    ExactReal x;
    x.kind_ = Kind::rational;
    x.rat_ = n;
    return x;
}

ExactReal ExactReal::from_mpq(const mpq_class& q) {
    ExactReal x;
    x.kind_ = Kind::rational;
    x.rat_ = q;
    x.rat_.canonicalize();
    return x;
}

ExactReal ExactReal::from_rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) raise(errc::invalid_number, "zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return from_mpq(q);
}

ExactReal ExactReal::inf() {
    ExactReal x;
    x.kind_ = Kind::infinity;
    return x;
}

ExactReal ExactReal::sqrt_int(const mpz_class& d) { return make_surd(0, 1, d, 1); }

ExactReal ExactReal::make_surd(mpz_class p, mpz_class q, mpz_class d, mpz_class r) {
    if (r == 0) raise(errc::invalid_number, "zero denominator in surd");
    if (d < 0) raise(errc::invalid_number, "negative radicand rejected");
    if (r < 0) {
        r = -r;
        p = -p;
        q = -q;
    }
    if (d == 0) q = 0;
    if (q == 0) return from_rational(p, r);
    mpz_class s;
    extract_square_part(d, s);
    q *= s;
    if (d == 1) return from_rational(p + q, r);
    mpz_class g = gcd(gcd(abs(p), abs(q)), r);
    if (g > 1) {
        p /= g;
        q /= g;
        r /= g;
    }
    return surd_raw(std::move(p), std::move(q), std::move(d), std::move(r));
}

ExactReal ExactReal::surd_raw(mpz_class p, mpz_class q, mpz_class d, mpz_class r) {
    ExactReal x;
    x.kind_ = Kind::surd;
    x.surd_ = SurdParts{std::move(p), std::move(q), std::move(d), std::move(r)};
    return x;
}

bool ExactReal::is_integer() const {
    return kind_ == Kind::rational && rat_.get_den() == 1;
}

const mpq_class& ExactReal::as_rational() const {
    if (kind_ != Kind::rational) raise(errc::invalid_number, "not a rational");
    return rat_;
}

const ExactReal::SurdParts& ExactReal::parts() const {
    if (kind_ != Kind::surd) raise(errc::invalid_number, "not a surd");
    return surd_;
}

int ExactReal::sign() const {
    switch (kind_) {
        case Kind::rational: return mpq_sgn(rat_.get_mpq_t());
        case Kind::surd:
            return sign_linear_in_sqrt(mpq_class(surd_.p), mpq_class(surd_.q), surd_.d);
        case Kind::infinity: raise(errc::invalid_number, "sign of infinity");
    }
    return 0;
}

ExactReal ExactReal::operator-() const {
    switch (kind_) {
        case Kind::rational: return from_mpq(mpq_class(-rat_));
        case Kind::surd: return surd_raw(-surd_.p, -surd_.q, surd_.d, surd_.r);
        case Kind::infinity: return inf();
    }
    return ExactReal();
}

ExactReal operator+(const ExactReal& a, const ExactReal& b) {
    using K = ExactReal::Kind;
    if (a.kind_ == K::infinity || b.kind_ == K::infinity)
        raise(errc::invalid_number, "arithmetic with infinity");
    if (a.kind_ == K::rational && b.kind_ == K::rational)
        return ExactReal::from_mpq(mpq_class(a.rat_ + b.rat_));
    if (a.kind_ == K::rational) return b + a;
    const auto& s = a.surd_;
    if (b.kind_ == K::rational) {
        const mpz_class& n = b.rat_.get_num();
        const mpz_class& m = b.rat_.get_den();
        return ExactReal::make_surd(s.p * m + n * s.r, s.q * m, s.d, s.r * m);
    }
    const auto& t = b.surd_;
    if (s.d != t.d) raise(errc::not_same_field, "surds over different radicands");
    return ExactReal::make_surd(s.p * t.r + t.p * s.r, s.q * t.r + t.q * s.r, s.d, s.r * t.r);
}

ExactReal operator-(const ExactReal& a, const ExactReal& b) { return a + (-b); }

ExactReal operator*(const ExactReal& a, const ExactReal& b) {
    using K = ExactReal::Kind;
    if (a.kind_ == K::infinity || b.kind_ == K::infinity)
        raise(errc::invalid_number, "arithmetic with infinity");
    if (a.kind_ == K::rational && b.kind_ == K::rational)
        return ExactReal::from_mpq(mpq_class(a.rat_ * b.rat_));
    if (a.kind_ == K::rational) return b * a;
    const auto& s = a.surd_;
    if (b.kind_ == K::rational) {
        const mpz_class& n = b.rat_.get_num();
        const mpz_class& m = b.rat_.get_den();
        return ExactReal::make_surd(s.p * n, s.q * n, s.d, s.r * m);
    }
    const auto& t = b.surd_;
    if (s.d != t.d) raise(errc::not_same_field, "surds over different radicands");
    return ExactReal::make_surd(s.p * t.p + s.q * t.q * s.d, s.p * t.q + s.q * t.p, s.d,
                                s.r * t.r);
}

ExactReal ExactReal::reciprocal() const {
    switch (kind_) {
        case Kind::infinity: return from_int(0);
        case Kind::rational:
            if (rat_ == 0) raise(errc::division_by_zero, "reciprocal of zero");
            return from_rational(rat_.get_den(), rat_.get_num());
        case Kind::surd: {
            // r/(p + q*sqrt(d)) = r(p - q*sqrt(d))/(p^2 - q^2 d)
            mpz_class norm = surd_.p * surd_.p - surd_.q * surd_.q * surd_.d;
            return make_surd(surd_.r * surd_.p, -surd_.r * surd_.q, surd_.d, norm);
        }
    }
    raise(errc::invalid_number, "bad kind");
}

ExactReal operator/(const ExactReal& a, const ExactReal& b) {
    if (b.is_infinity()) return ExactReal::from_int(0);
    return a * b.reciprocal();
}

int ExactReal::compare(const ExactReal& other) const {
    using K = Kind;
    if (kind_ == K::infinity && other.kind_ == K::infinity) return 0;
    if (kind_ == K::infinity) return 1;
    if (other.kind_ == K::infinity) return -1;
    if (kind_ == K::rational && other.kind_ == K::rational) return cmp(rat_, other.rat_);
    if (kind_ == K::surd && other.kind_ == K::surd && surd_.d != other.surd_.d) {
        // compare (p1 + q1 sqrt(d1))/r1 with (p2 + q2 sqrt(d2))/r2 exactly:
        // sign of U + B sqrt(d1) - D sqrt(d2) with integer U, B, D.
        const auto& s = surd_;
        const auto& t = other.surd_;
        mpz_class U = s.p * t.r - t.p * s.r;
        mpz_class B = s.q * t.r;
        mpz_class D = t.q * s.r;
        int sv;
        if (sgn(B) != sgn(D)) {
            sv = sgn(B) != 0 ? sgn(B) : -sgn(D);
        } else {
            mpz_class lhs = B * B * s.d, rhs = D * D * t.d;
            int c = cmp(lhs, rhs);
            sv = sgn(B) * (c > 0 ? 1 : (c < 0 ? -1 : 0));
        }
        if (U == 0) return sv;
        if (sv == 0) return sgn(U);
        if (sgn(U) == sv) return sv;
        // |U| vs |v| where v = B sqrt(d1) - D sqrt(d2):
        // U^2 - v^2 = (U^2 - B^2 d1 - D^2 d2) + 2BD sqrt(d1 d2)
        mpz_class W = U * U - B * B * s.d - D * D * t.d;
        mpz_class e = s.d * t.d, sq;
        extract_square_part(e, sq);
        mpq_class lin = mpq_class(2 * B * D * sq);
        int diff_sign = sign_linear_in_sqrt(mpq_class(W), lin, e);
        return sgn(U) * diff_sign;
    }
    // same field (or one side rational): sign of the exact difference
    ExactReal diff = *this - other;
    return diff.sign();
}

bool ExactReal::CanonicalLess::operator()(const ExactReal& a, const ExactReal& b) const {
    if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) < static_cast<int>(b.kind_);
    switch (a.kind_) {
        case Kind::infinity: return false;
        case Kind::rational: return cmp(a.rat_, b.rat_) < 0;
        case Kind::surd: {
            int c = cmp(a.surd_.d, b.surd_.d);
            if (c != 0) return c < 0;
            c = cmp(a.surd_.p, b.surd_.p);
            if (c != 0) return c < 0;
            c = cmp(a.surd_.q, b.surd_.q);
            if (c != 0) return c < 0;
            return cmp(a.surd_.r, b.surd_.r) < 0;
        }
    }
    return false;
}

mpz_class ExactReal::floor() const {
    switch (kind_) {
        case Kind::infinity: raise(errc::invalid_number, "floor of infinity");
        case Kind::rational: {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), rat_.get_num().get_mpz_t(), rat_.get_den().get_mpz_t());
            return q;
        }
        case Kind::surd: {
            // bracket q*sqrt(d) between consecutive integers, then fix up
            mpz_class t = surd_.q * surd_.q * surd_.d;
            mpz_class root;
            mpz_sqrt(root.get_mpz_t(), t.get_mpz_t());
            mpz_class lo_num;
            if (sgn(surd_.q) > 0)
                lo_num = surd_.p + root;
            else
                lo_num = surd_.p - root - 1;
            mpz_class k;
            mpz_fdiv_q(k.get_mpz_t(), lo_num.get_mpz_t(), surd_.r.get_mpz_t());
            while (compare(from_mpz(k + 1)) >= 0) ++k;
            while (compare(from_mpz(k)) < 0) --k;
            return k;
        }
    }
    raise(errc::invalid_number, "bad kind");
}

std::string ExactReal::str() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::infinity: os << "inf"; break;
        case Kind::rational:
            os << rat_.get_num();
            if (rat_.get_den() != 1) os << "/" << rat_.get_den();
            break;
        case Kind::surd: {
            mpz_class qa = abs(surd_.q);
            std::string radical =
                (qa == 1 ? "" : qa.get_str() + "*") + "sqrt(" + surd_.d.get_str() + ")";
            if (surd_.p == 0) {
                if (sgn(surd_.q) < 0) os << "-";
                os << radical;
                if (surd_.r != 1) os << "/" << surd_.r;
            } else {
                os << "(" << surd_.p << (sgn(surd_.q) < 0 ? "-" : "+") << radical << ")";
                if (surd_.r != 1) os << "/" << surd_.r;
            }
            break;
        }
    }
    return os.str();
}

double ExactReal::to_double() const {
    return to_float(*this, 64).to_double();
}

std::ostream& operator<<(std::ostream& os, const ExactReal& x) { return os << x.str(); }

ExactReal conjugate(const ExactReal& x) {
    switch (x.kind()) {
        case ExactReal::Kind::rational: return x;
        case ExactReal::Kind::surd: {
            const auto& s = x.parts();
            return ExactReal::make_surd(s.p, -s.q, s.d, s.r);
        }
        case ExactReal::Kind::infinity:
            raise(errc::invalid_number, "conjugate of infinity");
    }
    raise(errc::invalid_number, "bad kind");
}

MinPoly minimal_polynomial(const ExactReal& x) {
    if (!x.is_surd()) raise(errc::invalid_number, "minimal polynomial needs a surd");
    const auto& s = x.parts();
    // r x - p = q sqrt(d)  =>  r^2 x^2 - 2pr x + (p^2 - q^2 d) = 0
    mpz_class a = s.r * s.r;
    mpz_class b = -2 * s.p * s.r;
    mpz_class c = s.p * s.p - s.q * s.q * s.d;
    mpz_class g = gcd(gcd(a, abs(b)), abs(c));
    a /= g;
    b /= g;
    c /= g;
    return MinPoly{a, b, c};
}

mpz_class discriminant(const ExactReal& x) {
    if (!x.is_surd()) raise(errc::invalid_number, "discriminant needs a surd");
    MinPoly m = minimal_polynomial(x);
    return m.b * m.b - 4 * m.a * m.c;
}

std::optional<ExactReal> exact_sqrt(const ExactReal& x) {
    if (x.is_infinity()) return std::nullopt;
    if (x.sign() < 0) return std::nullopt;
    if (x.is_rational()) {
        // sqrt(p/q) = sqrt(p q)/q, exact as a surd (or rational)
        const mpq_class& r = x.as_rational();
        mpz_class t = r.get_num() * r.get_den();
        return ExactReal::make_surd(0, 1, t, r.get_den());
    }
    // sqrt of a + b sqrt(d): u + v sqrt(d) with u^2 + v^2 d = a, 2uv = b.
    // Requires the field norm a^2 - b^2 d to be a rational square, and then
    // u^2 = (a +- sqrt(a^2 - b^2 d))/2 to be a rational square as well.
    const auto& s = x.parts();
    mpq_class a(s.p, s.r);
    mpq_class b(s.q, s.r);
    a.canonicalize();
    b.canonicalize();
    mpq_class norm = a * a - b * b * s.d;
    if (mpq_sgn(norm.get_mpq_t()) < 0) return std::nullopt;
    auto rational_sqrt = [](const mpq_class& v) -> std::optional<mpq_class> {
        if (!mpz_perfect_square_p(v.get_num().get_mpz_t())) return std::nullopt;
        if (!mpz_perfect_square_p(v.get_den().get_mpz_t())) return std::nullopt;
        mpz_class n, d;
        mpz_sqrt(n.get_mpz_t(), v.get_num().get_mpz_t());
        mpz_sqrt(d.get_mpz_t(), v.get_den().get_mpz_t());
        return mpq_class(n, d);
    };
    auto ns = rational_sqrt(norm);
    if (!ns) return std::nullopt;
    for (int branch = 0; branch < 2; ++branch) {
        mpq_class usq = branch == 0 ? mpq_class(a + *ns) : mpq_class(a - *ns);
        usq /= 2;
        if (mpq_sgn(usq.get_mpq_t()) < 0) continue;
        auto u = rational_sqrt(usq);
        if (!u) continue;
        mpq_class v;
        if (*u == 0) {
            // pure radical candidate: v^2 d = a, 2uv = b = 0
            if (b != 0) continue;
            mpq_class vsq = a / s.d;
            auto vv = rational_sqrt(vsq);
            if (!vv) continue;
            v = *vv;
        } else {
            v = b / (2 * (*u));
        }
        ExactReal cand = ExactReal::make_surd(u->get_num() * v.get_den(),
                                              v.get_num() * u->get_den(), s.d,
                                              u->get_den() * v.get_den());
        if (cand.sign() >= 0 && cand * cand == x) return cand;
        ExactReal neg = -cand;
        if (neg.sign() >= 0 && neg * neg == x) return neg;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// parsing

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool eat_word(const char* w) {
        skip_ws();
        size_t n = std::string(w).size();
        if (s.compare(pos, n, w) == 0) {
            pos += n;
            return true;
        }
        return false;
    }

    ExactReal parse_expr() {
        skip_ws();
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        ExactReal v = parse_term();
        if (neg) v = -v;
        for (;;) {
            if (eat('+'))
                v = v + parse_term();
            else if (eat('-'))
                v = v - parse_term();
            else
                break;
        }
        return v;
    }

    ExactReal parse_term() {
        ExactReal v = parse_factor();
        for (;;) {
            if (eat('*'))
                v = v * parse_factor();
            else if (eat('/')) {
                ExactReal w = parse_factor();
                if (w.is_zero()) raise(errc::parse_error, "division by zero in literal");
                v = v / w;
            } else
                break;
        }
        return v;
    }

    ExactReal parse_factor() {
        skip_ws();
        if (pos >= s.size()) raise(errc::parse_error, "unexpected end of input");
        if (eat_word("sqrt")) {
            if (!eat('(')) raise(errc::parse_error, "expected ( after sqrt");
            ExactReal inner = parse_expr();
            if (!eat(')')) raise(errc::parse_error, "expected ) after sqrt argument");
            auto root = exact_sqrt(inner);
            if (!root) raise(errc::parse_error, "sqrt argument has no exact square root here");
            return *root;
        }
        if (eat_word("inf")) return ExactReal::inf();
        if (eat('(')) {
            ExactReal inner = parse_expr();
            if (!eat(')')) raise(errc::parse_error, "expected )");
            return inner;
        }
        if (eat('-')) return -parse_factor();
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) raise(errc::parse_error, "expected a number at position " +
                                                       std::to_string(pos));
        return ExactReal::from_mpz(mpz_class(s.substr(start, pos - start)));
    }
};

}  // namespace

ExactReal parse_exact(const std::string& text) {
    Parser p(text);
    ExactReal v = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size())
        raise(errc::parse_error, "trailing characters at position " + std::to_string(p.pos));
    return v;
}

// ---------------------------------------------------------------------------
// UnimodularMap

UnimodularMap::UnimodularMap(mpz_class a, mpz_class b, mpz_class c, mpz_class d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (a_ * d_ - b_ * c_ == 0) raise(errc::invalid_number, "singular matrix");
    normalize();
}

void UnimodularMap::normalize() {
    mpz_class g = gcd(gcd(abs(a_), abs(b_)), gcd(abs(c_), abs(d_)));
    if (g > 1) {
        a_ /= g;
        b_ /= g;
        c_ /= g;
        d_ /= g;
    }
    const mpz_class* first = nullptr;
    for (const mpz_class* e : {&a_, &b_, &c_, &d_}) {
        if (*e != 0) {
            first = e;
            break;
        }
    }
    if (first && sgn(*first) < 0) {
        a_ = -a_;
        b_ = -b_;
        c_ = -c_;
        d_ = -d_;
    }
}

UnimodularMap UnimodularMap::operator*(const UnimodularMap& o) const {
    return UnimodularMap(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_,
                         c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
}

UnimodularMap UnimodularMap::inverse() const {
    return UnimodularMap(d_, -b_, -c_, a_);
}

bool UnimodularMap::operator==(const UnimodularMap& o) const {
    return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
}

ExactReal UnimodularMap::operator()(const ExactReal& x) const {
    if (x.is_infinity()) {
        if (c_ == 0) return ExactReal::inf();
        return ExactReal::from_rational(a_, c_);
    }
    ExactReal num = x * ExactReal::from_mpz(a_) + ExactReal::from_mpz(b_);
    ExactReal den = x * ExactReal::from_mpz(c_) + ExactReal::from_mpz(d_);
    if (den.is_zero()) return ExactReal::inf();
    return num / den;
}

std::string UnimodularMap::str() const {
    std::ostringstream os;
    os << "[[" << a_ << "," << b_ << "],[" << c_ << "," << d_ << "]]";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const UnimodularMap& m) { return os << m.str(); }

// ---------------------------------------------------------------------------
// BigFloat

BigFloat::BigFloat(mpfr_prec_t prec) { mpfr_init2(v_, prec < MPFR_PREC_MIN ? 53 : prec); mpfr_set_zero(v_, 1); }

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::from_double(double v, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_d(r.v_, v, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::pow2(long e, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::from_exact(const ExactReal& x, mpfr_prec_t prec) {
    BigFloat r(prec);
    switch (x.kind()) {
        case ExactReal::Kind::infinity: mpfr_set_inf(r.v_, 1); break;
        case ExactReal::Kind::rational:
            mpfr_set_q(r.v_, x.as_rational().get_mpq_t(), MPFR_RNDN);
            break;
        case ExactReal::Kind::surd: {
            const auto& s = x.parts();
            mpfr_t tmp;
            mpfr_init2(tmp, prec + 32);
            mpfr_set_z(tmp, s.d.get_mpz_t(), MPFR_RNDN);
            mpfr_sqrt(tmp, tmp, MPFR_RNDN);
            mpfr_mul_z(tmp, tmp, s.q.get_mpz_t(), MPFR_RNDN);
            mpfr_add_z(tmp, tmp, s.p.get_mpz_t(), MPFR_RNDN);
            mpfr_div_z(tmp, tmp, s.r.get_mpz_t(), MPFR_RNDN);
            mpfr_set(r.v_, tmp, MPFR_RNDN);
            mpfr_clear(tmp);
            break;
        }
    }
    return r;
}

#define MF_BIGFLOAT_BINOP(op, fn)                                   \
    BigFloat BigFloat::operator op(const BigFloat& o) const {       \
        BigFloat r(std::max(precision(), o.precision()));           \
        fn(r.v_, v_, o.v_, MPFR_RNDN);                              \
        return r;                                                   \
    }

MF_BIGFLOAT_BINOP(+, mpfr_add)
MF_BIGFLOAT_BINOP(-, mpfr_sub)
MF_BIGFLOAT_BINOP(*, mpfr_mul)
MF_BIGFLOAT_BINOP(/, mpfr_div)
#undef MF_BIGFLOAT_BINOP

BigFloat BigFloat::operator-() const {
    BigFloat r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::sqrt() const {
    BigFloat r(precision());
    mpfr_sqrt(r.v_, v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::log() const {
    BigFloat r(precision());
    mpfr_log(r.v_, v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::acosh() const {
    BigFloat r(precision());
    mpfr_acosh(r.v_, v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::abs() const {
    BigFloat r(precision());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
}

std::string BigFloat::str(size_t digits) const {
    char buf[256];
    std::string fmt = "%." + std::to_string(digits) + "Rg";
    mpfr_snprintf(buf, sizeof buf, fmt.c_str(), v_);
    return buf;
}

BigFloat to_float(const ExactReal& x, mpfr_prec_t precision_bits) {
    if (precision_bits < 53) raise(errc::invalid_number, "precision must be >= 53 bits");
    return BigFloat::from_exact(x, precision_bits);
}

}  // namespace modflow
