#ifndef XFW_QUADRATIC_HPP
#define XFW_QUADRATIC_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include "xfw/bigint.hpp"

namespace xfw {

/// Q(sqrt d) with integral basis (1, w), w^2 = t*w - n, where
/// w = (1 + sqrt d)/2, t = 1, n = (1 - d)/4 when d = 1 mod 4 and
/// w = sqrt d, t = 0, n = -d otherwise. d = 1 stands for the rationals.
class quadratic_field
{
  public:
    quadratic_field() = default;

    /// Throws std::invalid_argument unless d is squarefree and nonzero.
    explicit quadratic_field(std::int64_t d);

    static quadratic_field rationals() { return {}; }

    std::int64_t d() const { return d_; }
    bool is_rational() const { return d_ == 1; }
    int degree() const { return is_rational() ? 1 : 2; }
    bool is_real() const { return d_ > 0; }
    std::int64_t discriminant() const;
    std::int64_t omega_trace() const { return t_; }
    std::int64_t omega_norm() const { return n_; }

    bool operator==(const quadratic_field &) const = default;

  private:
    std::int64_t d_ = 1;
    std::int64_t t_ = 0;
    std::int64_t n_ = -1;
};

bool is_squarefree(std::int64_t d);

/// (a + b*w) / den with den > 0 and gcd(a, b, den) = 1.
class quadratic_element
{
  public:
    quadratic_element() = default;
    quadratic_element(const quadratic_field & k, bigint a, bigint b = 0, bigint den = 1);
    quadratic_element(const quadratic_field & k, const rational & q);
    quadratic_element(const quadratic_field & k, long a) : quadratic_element(k, bigint(a)) {}

    static quadratic_element from_int(std::int64_t a) { return {quadratic_field::rationals(), from_i64(a)}; }
    static quadratic_element omega(const quadratic_field & k) { return {k, 0, 1}; }
    static quadratic_element sqrt_d(const quadratic_field & k);

    /// Parses expressions over integers, sqrt(d), + - * / and parentheses,
    /// e.g. "(1+sqrt(5))/2" or "-1/sqrt(5)". The literal's sqrt(d) must
    /// match k unless k is the rationals, in which case it selects the field.
    static quadratic_element parse(std::string_view text, const quadratic_field & k = {});

    const quadratic_field & field() const { return k_; }
    const bigint & a() const { return a_; }
    const bigint & b() const { return b_; }
    const bigint & den() const { return den_; }

    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
    bool is_integral() const { return den_ == 1; }
    bool is_rational() const { return sgn(b_) == 0; }
    bool is_one() const { return a_ == 1 && sgn(b_) == 0 && den_ == 1; }
    rational as_rational() const;

    /// The same value viewed in field k (rational values only move freely).
    quadratic_element in_field(const quadratic_field & k) const;

    quadratic_element conjugate() const;
    rational norm() const;
    rational trace() const;
    /// Norm of the integral numerator a + b*w.
    bigint numerator_norm() const;
    quadratic_element numerator() const { return {k_, a_, b_, 1}; }

    quadratic_element inverse() const;
    quadratic_element pow(std::int64_t e) const;

    quadratic_element operator-() const { return {k_, -a_, -b_, den_}; }
    friend quadratic_element operator+(const quadratic_element & x, const quadratic_element & y);
    friend quadratic_element operator-(const quadratic_element & x, const quadratic_element & y);
    friend quadratic_element operator*(const quadratic_element & x, const quadratic_element & y);
    friend quadratic_element operator/(const quadratic_element & x, const quadratic_element & y);
    quadratic_element & operator+=(const quadratic_element & y) { return *this = *this + y; }
    quadratic_element & operator-=(const quadratic_element & y) { return *this = *this - y; }
    quadratic_element & operator*=(const quadratic_element & y) { return *this = *this * y; }

    bool operator==(const quadratic_element & y) const;

    /// Canonical literal "(a+b*sqrt(d))/c" form that parse() accepts.
    std::string to_string() const;

  private:
    void normalize();

    quadratic_field k_;
    bigint a_ = 0;
    bigint b_ = 0;
    bigint den_ = 1;
};

quadratic_field common_field(const quadratic_field & x, const quadratic_field & y);

} // namespace xfw

#endif
