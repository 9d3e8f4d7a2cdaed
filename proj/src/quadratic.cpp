#include "xfw/quadratic.hpp"

#include <cctype>
#include <stdexcept>

namespace xfw {

bool is_squarefree(std::int64_t d)
{
    if (d == 0)
        return false;
    std::uint64_t m = d < 0 ? std::uint64_t(0) - std::uint64_t(d) : std::uint64_t(d);
    for (std::uint64_t p = 2; p * p <= m; ++p)
    {
        if (m % (p * p) == 0)
            return false;
        if (m % p == 0)
            m /= p;
    }
    return true;
}

quadratic_field::quadratic_field(std::int64_t d)
    : d_(d)
{
    if (!is_squarefree(d))
        throw std::invalid_argument("field discriminant parameter " + std::to_string(d) + " is not a squarefree nonzero integer");
    if (d == 1)
    {
        t_ = 0;
        n_ = -1;
    }
    else if (((d % 4) + 4) % 4 == 1)
    {
        t_ = 1;
        n_ = (1 - d) / 4;
    }
    else
    {
        t_ = 0;
        n_ = -d;
    }
}

std::int64_t quadratic_field::discriminant() const
{
    if (is_rational())
        return 1;
    return t_ == 1 ? d_ : 4 * d_;
}

quadratic_field common_field(const quadratic_field & x, const quadratic_field & y)
{
    if (x == y || y.is_rational())
        return x;
    if (x.is_rational())
        return y;
    throw std::invalid_argument("elements of Q(sqrt " + std::to_string(x.d()) + ") and Q(sqrt " +
                                std::to_string(y.d()) + ") cannot be combined");
}

quadratic_element::quadratic_element(const quadratic_field & k, bigint a, bigint b, bigint den)
    : k_(k)
    , a_(std::move(a))
    , b_(std::move(b))
    , den_(std::move(den))
{
    if (sgn(den_) == 0)
        throw std::domain_error("zero denominator");
    if (k_.is_rational() && sgn(b_) != 0)
        throw std::invalid_argument("rational field element with an omega component");
    normalize();
}

quadratic_element::quadratic_element(const quadratic_field & k, const rational & q)
    : quadratic_element(k, q.get_num(), 0, q.get_den())
{
}

quadratic_element quadratic_element::sqrt_d(const quadratic_field & k)
{
    if (k.is_rational())
        return {k, 1};
    if (k.omega_trace() == 1)
        return {k, -1, 2};
    return {k, 0, 1};
}

void quadratic_element::normalize()
{
    if (sgn(den_) < 0)
    {
        a_ = -a_;
        b_ = -b_;
        den_ = -den_;
    }
    bigint g;
    mpz_gcd(g.get_mpz_t(), a_.get_mpz_t(), b_.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den_.get_mpz_t());
    if (g != 1)
    {
        mpz_divexact(a_.get_mpz_t(), a_.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(b_.get_mpz_t(), b_.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
}

rational quadratic_element::as_rational() const
{
    if (!is_rational())
        throw std::domain_error(to_string() + " is not rational");
    rational q(a_, den_);
    q.canonicalize();
    return q;
}

quadratic_element quadratic_element::in_field(const quadratic_field & k) const
{
    if (k == k_)
        return *this;
    if (!is_rational())
        throw std::invalid_argument(to_string() + " does not lie in Q(sqrt " + std::to_string(k.d()) + ")");
    return {k, a_, 0, den_};
}

quadratic_element quadratic_element::conjugate() const
{
    // sigma(w) = t - w
    return {k_, a_ + b_ * k_.omega_trace(), -b_, den_};
}

bigint quadratic_element::numerator_norm() const
{
    return a_ * a_ + a_ * b_ * k_.omega_trace() + b_ * b_ * k_.omega_norm();
}

rational quadratic_element::norm() const
{
    if (k_.is_rational())
    {
        rational q(a_, den_);
        q.canonicalize();
        return q;
    }
    rational q(numerator_norm(), den_ * den_);
    q.canonicalize();
    return q;
}

rational quadratic_element::trace() const
{
    if (k_.is_rational())
    {
        rational q(a_, den_);
        q.canonicalize();
        return q;
    }
    rational q(2 * a_ + b_ * k_.omega_trace(), den_);
    q.canonicalize();
    return q;
}

quadratic_element quadratic_element::inverse() const
{
    if (is_zero())
        throw std::domain_error("inverse of zero");
    if (k_.is_rational())
        return {k_, den_, 0, a_};
    // 1/x = den * conj(num) / N(num)
    quadratic_element c = numerator().conjugate();
    return {k_, c.a_ * den_, c.b_ * den_, numerator_norm()};
}

quadratic_element quadratic_element::pow(std::int64_t e) const
{
    quadratic_element base = e < 0 ? inverse() : *this;
    std::uint64_t n = e < 0 ? std::uint64_t(0) - std::uint64_t(e) : std::uint64_t(e);
    quadratic_element r(k_, 1);
    while (n)
    {
        if (n & 1)
            r *= base;
        n >>= 1;
        if (n)
            base *= base;
    }
    return r;
}

quadratic_element operator+(const quadratic_element & x, const quadratic_element & y)
{
    quadratic_field k = common_field(x.k_, y.k_);
    if (x.den_ == y.den_)
        return {k, x.a_ + y.a_, x.b_ + y.b_, x.den_};
    return {k, x.a_ * y.den_ + y.a_ * x.den_, x.b_ * y.den_ + y.b_ * x.den_, x.den_ * y.den_};
}

quadratic_element operator-(const quadratic_element & x, const quadratic_element & y)
{
    return x + (-y);
}

quadratic_element operator*(const quadratic_element & x, const quadratic_element & y)
{
    quadratic_field k = common_field(x.k_, y.k_);
    const bigint bb = x.b_ * y.b_;
    bigint a = x.a_ * y.a_ - bb * k.omega_norm();
    bigint b = x.a_ * y.b_ + x.b_ * y.a_ + bb * k.omega_trace();
    return {k, std::move(a), std::move(b), x.den_ * y.den_};
}

quadratic_element operator/(const quadratic_element & x, const quadratic_element & y)
{
    return x * y.inverse();
}

bool quadratic_element::operator==(const quadratic_element & y) const
{
    if (a_ != y.a_ || b_ != y.b_ || den_ != y.den_)
        return false;
    return k_ == y.k_ || is_rational();
}

std::string quadratic_element::to_string() const
{
    if (is_rational())
    {
        std::string s = xfw::to_string(a_);
        return den_ == 1 ? s : s + "/" + xfw::to_string(den_);
    }
    // in terms of sqrt d: (A + B sqrt d) / C
    bigint A = a_, B = b_, C = den_;
    if (k_.omega_trace() == 1)
    {
        A = 2 * a_ + b_;
        B = b_;
        C = 2 * den_;
    }
    bigint g;
    mpz_gcd(g.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), C.get_mpz_t());
    A /= g;
    B /= g;
    C /= g;
    const std::string root = "sqrt(" + std::to_string(k_.d()) + ")";
    std::string s;
    if (sgn(A) == 0)
    {
        if (B == 1)
            s = root;
        else if (B == -1)
            s = "-" + root;
        else
            s = xfw::to_string(B) + "*" + root;
        return C == 1 ? s : s + "/" + xfw::to_string(C);
    }
    s = xfw::to_string(A);
    if (sgn(B) > 0)
        s += "+";
    else
        s += "-";
    bigint absb = abs(B);
    s += absb == 1 ? root : xfw::to_string(absb) + "*" + root;
    return C == 1 ? s : "(" + s + ")/" + xfw::to_string(C);
}

namespace {

class literal_parser
{
  public:
    literal_parser(std::string_view text, quadratic_field k)
        : text_(text)
        , k_(k)
    {
    }

    quadratic_element run()
    {
        skip_ws();
        if (pos_ == text_.size())
            fail("empty literal");
        quadratic_element x = expr();
        skip_ws();
        if (pos_ != text_.size())
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return x.is_rational() ? x.in_field(k_) : x;
    }

  private:
    [[noreturn]] void fail(const std::string & what) const
    {
        throw std::invalid_argument("malformed literal \"" + std::string(text_) + "\": " + what);
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c)
        {
            ++pos_;
            return true;
        }
        return false;
    }

    quadratic_element expr()
    {
        quadratic_element x = term();
        for (;;)
        {
            if (accept('+'))
                x = x + term();
            else if (accept('-'))
                x = x - term();
            else
                return x;
        }
    }

    quadratic_element term()
    {
        quadratic_element x = unary();
        for (;;)
        {
            if (accept('*'))
                x = x * unary();
            else if (accept('/'))
            {
                quadratic_element y = unary();
                if (y.is_zero())
                    fail("division by zero");
                x = x / y;
            }
            else
                return x;
        }
    }

    quadratic_element unary()
    {
        if (accept('-'))
            return -unary();
        if (accept('+'))
            return unary();
        return primary();
    }

    std::string digits()
    {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected a number");
        return std::string(text_.substr(start, pos_ - start));
    }

    quadratic_element primary()
    {
        if (accept('('))
        {
            quadratic_element x = expr();
            if (!accept(')'))
                fail("missing ')'");
            return x;
        }
        skip_ws();
        if (text_.substr(pos_, 4) == "sqrt")
        {
            pos_ += 4;
            if (!accept('('))
                fail("expected '(' after sqrt");
            bool negative = accept('-');
            std::int64_t d = std::stoll(digits());
            if (negative)
                d = -d;
            if (!accept(')'))
                fail("missing ')' after sqrt argument");
            if (d == 1)
                return {k_, 1};
            if (k_.is_rational())
                k_ = quadratic_field(d);
            else if (k_.d() != d)
                fail("sqrt(" + std::to_string(d) + ") does not belong to Q(sqrt " + std::to_string(k_.d()) + ")");
            return quadratic_element::sqrt_d(k_);
        }
        return {k_, bigint(digits())};
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    quadratic_field k_;
};

} // namespace

quadratic_element quadratic_element::parse(std::string_view text, const quadratic_field & k)
{
    return literal_parser(text, k).run();
}

} // namespace xfw
