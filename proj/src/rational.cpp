#include "opz/rational.hpp"
#include "opz/scalar.hpp"

#include <cctype>
#include <stdexcept>

namespace opz {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

[[noreturn]] void malformed(std::string_view text)
{
    throw std::invalid_argument("malformed rational: \"" + std::string(text) + "\"");
}

Rational parse_integer(std::string_view s, std::string_view whole)
{
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s))
        malformed(whole);
    mpz_class z(std::string(s), 10);
    return Rational(negative ? mpz_class(-z) : z);
}

Rational parse_decimal(std::string_view s, std::string_view whole)
{
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_text = s.substr(e + 1);
        bool exp_negative = false;
        if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
            exp_negative = exp_text.front() == '-';
            exp_text.remove_prefix(1);
        }
        if (!all_digits(exp_text) || exp_text.size() > 6)
            malformed(whole);
        exponent = std::stol(std::string(exp_text));
        if (exp_negative)
            exponent = -exponent;
        s = s.substr(0, e);
    }
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = s.substr(0, dot);
        std::string_view frac_part = s.substr(dot + 1);
        if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
            (!frac_part.empty() && !all_digits(frac_part)))
            malformed(whole);
        digits = std::string(int_part) + std::string(frac_part);
        exponent -= static_cast<long>(frac_part.size());
    } else {
        if (!all_digits(s))
            malformed(whole);
        digits = std::string(s);
    }
    mpz_class mantissa(digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    Rational q = exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    if (s.empty())
        malformed(text);

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Rational num = parse_integer(s.substr(0, slash), text);
        std::string_view den_text = s.substr(slash + 1);
        if (!all_digits(den_text))
            malformed(text);
        mpz_class den(std::string(den_text), 10);
        if (den == 0)
            throw std::invalid_argument("zero denominator in \"" + std::string(text) + "\"");
        Rational q(num.get_num(), den);
        q.canonicalize();
        return q;
    }
    if (s.find_first_of(".eE") != std::string_view::npos)
        return parse_decimal(s, text);
    return parse_integer(s, text);
}

std::string to_string(const Rational& q)
{
    return q.get_str();
}

double to_double(const Rational& q)
{
    return to_scalar<double>(q);
}

Rational from_double(double x)
{
    if (!std::isfinite(x))
        throw std::invalid_argument("non-finite value cannot be represented as a rational");
    return Rational(x);
}

Rational pow(const Rational& base, int exponent)
{
    if (exponent < 0)
        return Rational(1) / pow(base, -exponent);
    Rational result;
    mpz_pow_ui(result.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(result.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    return result;
}

} // namespace opz
